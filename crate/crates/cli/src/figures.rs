//! Regeneration of the data behind the six reference figures. Parameters
//! default to the reference-figure parameters; any config override wins.

use std::f64::consts::PI;
use std::path::Path;

use circlat::angular::{apply_kick_bessel, free_evolve, initial_spectrum, profile_from_spectrum};
use circlat::bands::potential_grid_xy;
use circlat::radial::{field_slices, mean_radius_trace};

use crate::config::SimConfig;
use crate::csvio::{self, write_atomic};
use crate::svg;
use crate::CliError;

pub struct FigOutput {
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

fn emit(path: &Path, bytes: &str, files: &mut Vec<String>) -> Result<(), CliError> {
    write_atomic(path, bytes.as_bytes())?;
    files.push(path.display().to_string());
    Ok(())
}

/// Lattice potential maps, helicity 2 and 4.
pub fn fig1(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<FigOutput, CliError> {
    let mut files = Vec::new();
    for l in [2u32, 4] {
        let grid = potential_grid_xy(l, cfg.fig_pixels, (0.5, 1.25))?;
        emit(
            &out.join(format!("fig1_l{l}.csv")),
            &csvio::grid_csv(&grid),
            &mut files,
        )?;
        if emit_svg {
            let image = svg::heatmap(&format!("lattice potential, l = {l}"), &grid);
            emit(&out.join(format!("fig1_l{l}.svg")), &image, &mut files)?;
        }
    }
    Ok(FigOutput {
        files,
        warnings: Vec::new(),
    })
}

/// Angular-momentum distribution before and after the kick.
pub fn fig2(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<FigOutput, CliError> {
    let params = cfg.kick_params()?;
    let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
    let kicked = apply_kick_bessel(&spec, &params)?;
    // Pad the initial spectrum onto the kicked truncation so the two
    // files share the m axis.
    let padded = initial_spectrum(params.n_loc, kicked.m_max())?;
    let mut files = Vec::new();
    emit(
        &out.join("fig2_initial.csv"),
        &csvio::spectrum_csv(&padded),
        &mut files,
    )?;
    emit(
        &out.join("fig2_kicked.csv"),
        &csvio::spectrum_csv(&kicked),
        &mut files,
    )?;
    if emit_svg {
        let ms: Vec<f64> = (-(kicked.m_max() as i64)..=(kicked.m_max() as i64))
            .map(|m| m as f64)
            .collect();
        let before: Vec<f64> = ms
            .iter()
            .map(|&m| padded.amp(m as i64).norm_sqr())
            .collect();
        let after: Vec<f64> = ms
            .iter()
            .map(|&m| kicked.amp(m as i64).norm_sqr())
            .collect();
        let image = svg::line_plot(
            "momentum distribution before/after the kick",
            "m",
            &[("before", &ms, &before), ("after", &ms, &after)],
        );
        emit(&out.join("fig2.svg"), &image, &mut files)?;
    }
    Ok(FigOutput {
        files,
        warnings: Vec::new(),
    })
}

fn angular_figure(
    cfg: &SimConfig,
    out: &Path,
    emit_svg: bool,
    name: &str,
    xi_t_default: f64,
) -> Result<FigOutput, CliError> {
    let xi_t = if cfg.was_set("xi_t") {
        cfg.xi_t
    } else {
        xi_t_default
    };
    let params = cfg.kick_params()?;
    let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
    let kicked = apply_kick_bessel(&spec, &params)?;
    let evolved = free_evolve(&kicked, params.xi, xi_t / params.xi)?;
    let profile = profile_from_spectrum(&evolved, cfg.n_grid);
    let mut files = Vec::new();
    emit(
        &out.join(format!("{name}_profile.csv")),
        &csvio::profile_csv(&profile),
        &mut files,
    )?;
    if emit_svg {
        let phis: Vec<f64> = (0..profile.n_grid()).map(|j| profile.phi(j)).collect();
        let prob = profile.prob();
        let image = svg::line_plot(
            &format!("angular distribution at xi t = {xi_t:.5}"),
            "phi",
            &[("|Phi|^2", &phis, &prob)],
        );
        emit(&out.join(format!("{name}.svg")), &image, &mut files)?;
    }
    Ok(FigOutput {
        files,
        warnings: Vec::new(),
    })
}

/// Angular distribution before the counterrotating packets cross.
pub fn fig3(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<FigOutput, CliError> {
    angular_figure(cfg, out, emit_svg, "fig3", 3e-3 * PI)
}

/// Angular distribution after the crossing, with interference fringes.
pub fn fig4(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<FigOutput, CliError> {
    angular_figure(cfg, out, emit_svg, "fig4", 6e-3 * PI)
}

/// Mean radius against time for one angular momentum.
pub fn fig5(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<FigOutput, CliError> {
    let bx = cfg.box_params()?;
    let times: Vec<f64> = (0..cfg.n_time)
        .map(|i| cfg.t_max_lambda * i as f64 / (cfg.n_time - 1).max(1) as f64 / cfg.lambda)
        .collect();
    let trace = mean_radius_trace(&bx, cfg.radial_m, &times)?;
    let mut warnings = Vec::new();
    if trace.residual > cfg.residual_target {
        warnings.push(format!(
            "projection residual {:.2e} above target {:.2e}",
            trace.residual, cfg.residual_target
        ));
    }
    if bx.width_warning() {
        warnings.push("packet width exceeds a tenth of the box radius".to_string());
    }
    let mut files = Vec::new();
    emit(
        &out.join("fig5_trace.csv"),
        &csvio::trace_csv(&trace),
        &mut files,
    )?;
    if emit_svg {
        let lambda_t: Vec<f64> = trace.times.iter().map(|t| cfg.lambda * t).collect();
        let image = svg::line_plot(
            &format!("mean radius, m = {}", cfg.radial_m),
            "lambda t",
            &[("<rho>", &lambda_t, &trace.mean_rho)],
        );
        emit(&out.join("fig5.svg"), &image, &mut files)?;
    }
    Ok(FigOutput { files, warnings })
}

/// Field slices at the ring radius before and after the packets meet.
pub fn fig6(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<FigOutput, CliError> {
    let params = cfg.kick_params()?;
    let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
    let kicked = apply_kick_bessel(&spec, &params)?;
    let bx = cfg.box_params()?;
    let times = [1e-3 * PI / cfg.lambda, 2e-3 * PI / cfg.lambda];
    let slices = field_slices(
        &kicked,
        &bx,
        cfg.rho0,
        &times,
        cfg.slice_grid,
        cfg.residual_target,
    )?;
    let mut files = Vec::new();
    for (slice, tag) in slices.iter().zip(["t1", "t2"]) {
        emit(
            &out.join(format!("fig6_{tag}.csv")),
            &csvio::slice_csv(slice),
            &mut files,
        )?;
    }
    if emit_svg {
        let phis: Vec<f64> = (0..cfg.slice_grid).map(|j| slices[0].phi(j)).collect();
        let p1 = slices[0].prob();
        let p2 = slices[1].prob();
        let image = svg::line_plot(
            "field slice at the ring radius",
            "phi",
            &[("lambda t1", &phis, &p1), ("lambda t2", &phis, &p2)],
        );
        emit(&out.join("fig6.svg"), &image, &mut files)?;
    }
    Ok(FigOutput {
        files,
        warnings: Vec::new(),
    })
}

/// Dispatch by figure number.
pub fn figure(
    which: u8,
    cfg: &SimConfig,
    out: &Path,
    emit_svg: bool,
) -> Result<FigOutput, CliError> {
    match which {
        1 => fig1(cfg, out, emit_svg),
        2 => fig2(cfg, out, emit_svg),
        3 => fig3(cfg, out, emit_svg),
        4 => fig4(cfg, out, emit_svg),
        5 => fig5(cfg, out, emit_svg),
        6 => fig6(cfg, out, emit_svg),
        _ => Err(CliError::Config(format!(
            "figure number must be 1..=6, got {which}"
        ))),
    }
}
