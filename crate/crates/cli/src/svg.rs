//! Bare-bones SVG output: line plots for 1D data and a heatmap for the
//! lattice potential. The CSV files remain the source of truth; these are
//! static displays only.

use circlat::bands::PotentialGrid;

const W: f64 = 860.0;
const H: f64 = 520.0;
const ML: f64 = 70.0;
const MR: f64 = 20.0;
const MT: f64 = 30.0;
const MB: f64 = 50.0;

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn axis_bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        if v.is_finite() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Polyline plot of one or more (x, y) series sharing an axis.
pub fn line_plot(title: &str, x_label: &str, series: &[(&str, &[f64], &[f64])]) -> String {
    let (x_lo, x_hi) = axis_bounds(series.iter().flat_map(|s| s.1.iter().copied()));
    let (y_lo, y_hi) = axis_bounds(series.iter().flat_map(|s| s.2.iter().copied()));
    let sx = |x: f64| ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR);
    let sy = |y: f64| H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n<text x=\"{}\" y=\"20\" text-anchor=\"middle\">{title}</text>\n",
        W / 2.0
    ));
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR,
        H - MB
    ));
    svg.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB
    ));
    for k in 0..=4 {
        let x = x_lo + (x_hi - x_lo) * k as f64 / 4.0;
        let y = y_lo + (y_hi - y_lo) * k as f64 / 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{x:.3}</text>\n",
            sx(x),
            H - MB + 18.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{y:.3}</text>\n",
            ML - 6.0,
            sy(y) + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n",
        (ML + W - MR) / 2.0,
        H - 12.0
    ));
    for (i, (label, xs, ys)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut points = String::new();
        for (x, y) in xs.iter().zip(ys.iter()) {
            points.push_str(&format!("{:.2},{:.2} ", sx(*x), sy(*y)));
        }
        svg.push_str(&format!(
            "<polyline points=\"{points}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.2\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" fill=\"{color}\">{label}</text>\n",
            W - MR - 150.0,
            MT + 16.0 * (i as f64 + 1.0)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Heatmap of the ring potential; NaN cells (outside the annulus) are
/// left white.
pub fn heatmap(title: &str, grid: &PotentialGrid) -> String {
    let n = grid.n_pixels;
    let side = 480.0;
    let cell = side / n as f64;
    let x0 = (W - side) / 2.0;
    let y0 = MT + 4.0;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {}\" font-family=\"sans-serif\" font-size=\"13\">\n",
        side + 70.0
    ));
    svg.push_str(&format!(
        "<rect width=\"{W}\" height=\"{}\" fill=\"white\"/>\n<text x=\"{}\" y=\"20\" text-anchor=\"middle\">{title}</text>\n",
        side + 70.0,
        W / 2.0
    ));
    for iy in 0..n {
        for ix in 0..n {
            let v = grid.value(ix, iy);
            if v.is_nan() {
                continue;
            }
            // v in [-1, 0]: deep wells dark blue, ridges light.
            let t = (-v).clamp(0.0, 1.0);
            let shade = (235.0 - 185.0 * t) as u8;
            svg.push_str(&format!(
                "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{cell:.2}\" height=\"{cell:.2}\" fill=\"rgb({shade},{shade},235)\"/>\n",
                x0 + ix as f64 * cell,
                y0 + (n - 1 - iy) as f64 * cell
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}
