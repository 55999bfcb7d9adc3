//! End-to-end verification suite: each check reproduces one reference
//! figure or structural property at pinned parameters and tolerances and
//! reports pass/fail with a one-line detail.

use std::f64::consts::PI;
use std::f64::consts::TAU;
use std::time::Instant;

use num_complex::Complex64;

use crate::angular::{
    apply_kick_bessel, apply_kick_grid, far_field_profile, free_evolve, identity_check,
    initial_profile, initial_spectrum, local_maxima, profile_from_spectrum, spectrum_from_profile,
    KickParams,
};
use crate::bands::{solve_bands, wannier_states, LatticeSpec};
use crate::error::Result;
use crate::radial::{field_slices, mean_radius_trace, project_initial_auto, BoxParams};

/// Pass/fail tolerances, one knob per check family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckTolerances {
    /// Max |Delta zeta_m| between the Bessel-sum and grid-mask kick routes.
    pub kick_oracle: f64,
    /// Norm defect allowed after each pipeline stage.
    pub norm: f64,
    /// Norm defect of the freshly built binomial spectrum.
    pub norm_initial: f64,
    /// L-inf distance between far-field and mode-sum profiles.
    pub far_field: f64,
    /// Residual of the free-propagator integral identity.
    pub identity: f64,
    /// Distance of depth-0 band energies from the free rotor.
    pub rotor: f64,
    /// Defect of the Bloch rotation eigenvalue.
    pub translation: f64,
    /// Wannier overlap-matrix deviation from the identity.
    pub wannier_orthonormality: f64,
    /// Defect of rebuilding Bloch states from the Wannier Fourier sum.
    pub wannier_bloch: f64,
    /// Radial-mode Gram-matrix deviation from the identity.
    pub mode_orthonormality: f64,
    /// Allowed completeness residual of the Gaussian projection.
    pub projection_residual: f64,
    /// Allowed error of the initial mean radius, in units of the box.
    pub mean_radius: f64,
    /// Allowed asymmetry |Psi(phi)|^2 vs |Psi(2 pi - phi)|^2.
    pub evenness: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        CheckTolerances {
            kick_oracle: 1e-8,
            norm: 1e-10,
            norm_initial: 1e-13,
            far_field: 1e-6,
            identity: 1e-6,
            rotor: 1e-12,
            translation: 1e-10,
            wannier_orthonormality: 1e-8,
            wannier_bloch: 1e-10,
            mode_orthonormality: 1e-8,
            projection_residual: 1e-3,
            mean_radius: 5e-4,
            evenness: 1e-10,
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!(
            "{} {:28} {:.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn report(
    id: &'static str,
    name: &'static str,
    budget: f64,
    started: Instant,
    passed: bool,
    detail: String,
) -> CheckReport {
    let seconds = started.elapsed().as_secs_f64();
    CheckReport {
        id,
        name,
        passed: passed && seconds < budget,
        detail,
        seconds,
        budget_seconds: budget,
    }
}

fn fig_kick() -> KickParams {
    KickParams::new(10, 6.0, 10, 1.0).expect("reference parameters are valid")
}

fn fig_box() -> BoxParams {
    BoxParams::new(1.0, 1.0, 0.5, 0.01, 64).expect("reference parameters are valid")
}

/// Peaks of `prob` inside |phi - center| <= half_width, keeping only
/// strict local maxima above `floor_frac` of the global maximum (so that
/// packet tails orders of magnitude below the figure scale do not count
/// as structure). Returns grid indices.
fn windowed_peaks(prob: &[f64], center: f64, half_width: f64, floor_frac: f64) -> Vec<usize> {
    let n = prob.len();
    let in_window = |j: usize| {
        let mut d = (TAU * j as f64 / n as f64 - center).rem_euclid(TAU);
        if d > PI {
            d -= TAU;
        }
        d.abs() <= half_width
    };
    let global_max = prob.iter().cloned().fold(0.0f64, f64::max);
    local_maxima(prob)
        .into_iter()
        .filter(|&j| in_window(j) && prob[j] > floor_frac * global_max)
        .collect()
}

/// Bessel-sum kick vs Fourier projection of the grid phase mask.
pub fn check_kick_oracle(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let params = fig_kick();
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        let masked = apply_kick_grid(&initial_profile(params.n_loc, 2048)?, &params)?;
        let projected = spectrum_from_profile(&masked, kicked.m_max());
        let mut worst = 0.0f64;
        for m in -(kicked.m_max() as i64)..=(kicked.m_max() as i64) {
            worst = worst.max((kicked.amp(m) - projected.amp(m)).norm());
        }
        Ok((
            worst < tol.kick_oracle,
            format!("max|dzeta| = {worst:.2e} (tol {:.0e})", tol.kick_oracle),
        ))
    };
    match run() {
        Ok((ok, detail)) => report(
            "kick-oracle",
            "kick Bessel vs grid mask",
            1.0,
            t0,
            ok,
            detail,
        ),
        Err(e) => report(
            "kick-oracle",
            "kick Bessel vs grid mask",
            1.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Diffraction peaks sit at multiples of 2l, spaced by 2l.
pub fn check_diffraction_peaks(_tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let params = fig_kick();
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        let prob: Vec<f64> = kicked.amps().iter().map(|a| a.norm_sqr()).collect();
        let m0 = kicked.m_max() as i64;
        let two_l = 2 * params.helicity as i64;
        let peaks = local_maxima(&prob);
        let mut centers = Vec::new();
        let mut ok = true;
        for n in -3i64..=3 {
            let target = two_l * n;
            let found = peaks
                .iter()
                .map(|&j| j as i64 - m0)
                .filter(|&m| (m - target).abs() <= 5)
                .min_by_key(|&m| (m - target).abs());
            match found {
                Some(m) if (m - target).abs() <= 1 => centers.push(m),
                _ => {
                    ok = false;
                    centers.push(i64::MIN);
                }
            }
        }
        let mut spacing_ok = true;
        for pair in centers.windows(2) {
            if pair[0] != i64::MIN && pair[1] != i64::MIN {
                let d = pair[1] - pair[0];
                if (d - two_l).abs() > 2 {
                    spacing_ok = false;
                }
            }
        }
        Ok((
            ok && spacing_ok,
            format!("peak centers {centers:?}, expected near multiples of {two_l}"),
        ))
    };
    match run() {
        Ok((ok, detail)) => report("peaks", "diffraction peak structure", 1.0, t0, ok, detail),
        Err(e) => report(
            "peaks",
            "diffraction peak structure",
            1.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Norm after every stage of the kick + evolve pipeline.
pub fn check_unitarity(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let params = fig_kick();
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let d0 = (spec.norm_sq() - 1.0).abs();
        let kicked = apply_kick_bessel(&spec, &params)?;
        let d1 = (kicked.norm_sq() - 1.0).abs();
        let mut d2 = 0.0f64;
        for &xi_t in &[3e-3 * PI, 6e-3 * PI] {
            let evolved = free_evolve(&kicked, params.xi, xi_t)?;
            d2 = d2.max((evolved.norm_sq() - 1.0).abs());
        }
        let ok = d0 < tol.norm_initial && d1 < tol.norm && d2 < tol.norm;
        Ok((
            ok,
            format!("norm defects: initial {d0:.1e}, kick {d1:.1e}, evolve {d2:.1e}"),
        ))
    };
    match run() {
        Ok((ok, detail)) => report("unitarity", "pipeline unitarity", 1.0, t0, ok, detail),
        Err(e) => report(
            "unitarity",
            "pipeline unitarity",
            1.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Far-field image sum vs direct mode sum at the two figure times.
pub fn check_far_field(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let params = fig_kick();
        let masked = apply_kick_grid(&initial_profile(params.n_loc, 2048)?, &params)?;
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        let mut details = Vec::new();
        let mut ok = true;
        for &xi_t in &[3e-3 * PI, 6e-3 * PI] {
            let ff = far_field_profile(&masked, params.xi, xi_t, 3, 1024)?;
            let ms = profile_from_spectrum(&free_evolve(&kicked, params.xi, xi_t)?, 1024);
            let mut worst = 0.0f64;
            for (x, y) in ff.values().iter().zip(ms.values()) {
                worst = worst.max((x - y).norm());
            }
            ok &= worst < tol.far_field;
            details.push(format!("xi_t = {xi_t:.4}: L-inf {worst:.2e}"));
        }
        Ok((ok, details.join("; ")))
    };
    match run() {
        Ok((ok, detail)) => report("far-field", "far field vs mode sum", 10.0, t0, ok, detail),
        Err(e) => report(
            "far-field",
            "far field vs mode sum",
            10.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Before the packets cross there is no fast fringe near phi = pi; after,
/// at least five fringe maxima appear in the half-radian window.
pub fn check_fringe_onset(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let params = fig_kick();
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        let n_grid = 2048usize;
        let fringe_period = PI / (2.0 * 3.0 * params.helicity as f64); // counterpropagating pair at n = 3
        let _ = tol;
        // Structure counts once it rises above a thousandth of the packet
        // peak, the scale visible on a linear plot of the distribution.
        let floor = 1e-3;

        let early = profile_from_spectrum(&free_evolve(&kicked, params.xi, 3e-3 * PI)?, n_grid);
        let early_peaks = windowed_peaks(&early.prob(), PI, 0.5, floor);
        let mut min_gap = f64::INFINITY;
        for pair in early_peaks.windows(2) {
            min_gap = min_gap.min(TAU * (pair[1] - pair[0]) as f64 / n_grid as f64);
        }
        let early_ok = min_gap >= fringe_period;

        let late = profile_from_spectrum(&free_evolve(&kicked, params.xi, 6e-3 * PI)?, n_grid);
        let late_peaks = windowed_peaks(&late.prob(), PI, 0.5, floor);
        let late_ok = late_peaks.len() >= 5;

        Ok((
            early_ok && late_ok,
            format!(
                "pre-crossing peaks {} (min gap {min_gap:.3}, floor {fringe_period:.3}), post-crossing fringe count {}",
                early_peaks.len(),
                late_peaks.len()
            ),
        ))
    };
    match run() {
        Ok((ok, detail)) => report("fringes", "fringe onset", 5.0, t0, ok, detail),
        Err(e) => report("fringes", "fringe onset", 5.0, t0, false, e.to_string()),
    }
}

/// Oscillatory-integral identity behind the image-sum propagator.
pub fn check_identity(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let mut worst = 0.0f64;
        for &m in &[0i64, 5] {
            for &phi in &[0.0, 1.0] {
                worst = worst.max(identity_check(m, phi, 1e-2)?);
            }
        }
        Ok((
            worst < tol.identity,
            format!("max residual {worst:.2e} (tol {:.0e})", tol.identity),
        ))
    };
    match run() {
        Ok((ok, detail)) => report("identity", "free propagator identity", 5.0, t0, ok, detail),
        Err(e) => report(
            "identity",
            "free propagator identity",
            5.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Band structure: state counting, free-rotor limit, rotation eigenvalue,
/// and the Wannier construction.
pub fn check_bands(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let mut notes = Vec::new();
        let mut ok = true;

        let free = solve_bands(&LatticeSpec::new(2, 0.0, 30, 4)?)?;
        let qs: Vec<i64> = free.q_values().collect();
        ok &= qs == vec![-2, -1, 0, 1];
        ok &= free.states_in_band(0).len() == 4;
        let mut rotor_defect = 0.0f64;
        for &q in &qs {
            let mut expect: Vec<f64> = (-30i64..=30)
                .map(|s| ((q + 4 * s) * (q + 4 * s)) as f64)
                .collect();
            expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (band, want) in expect.iter().take(4).enumerate() {
                rotor_defect = rotor_defect.max((free.state(q, band).energy - want).abs());
            }
        }
        ok &= rotor_defect < tol.rotor;
        notes.push(format!("rotor defect {rotor_defect:.1e}"));

        let lattice = solve_bands(&LatticeSpec::new(2, 400.0, 30, 3)?)?;
        let mut translation = 0.0f64;
        for q in lattice.q_values() {
            translation = translation.max(lattice.state(q, 0).translation_defect());
        }
        ok &= translation < tol.translation;
        notes.push(format!("translation defect {translation:.1e}"));

        let set = wannier_states(&lattice, 0, 512)?;
        ok &= set.states.len() == 4 && set.gauge_warnings.is_empty();
        let ortho = set.orthonormality_defect();
        ok &= ortho < tol.wannier_orthonormality;
        notes.push(format!("wannier overlap defect {ortho:.1e}"));

        // Rebuild each Bloch state from the Wannier Fourier sum.
        let n_grid = set.states[0].profile.n_grid();
        let mut bloch_defect = 0.0f64;
        for q in -2i64..2 {
            let mut rebuilt = vec![Complex64::new(0.0, 0.0); n_grid];
            for (ni, st) in set.states.iter().enumerate() {
                let site = ni as i64 - 2;
                let coeff = Complex64::cis(PI * q as f64 * site as f64 / 2.0) / 2.0;
                for (r, v) in rebuilt.iter_mut().zip(st.profile.values()) {
                    *r += coeff * v;
                }
            }
            let direct = lattice.state(q, 0).synthesize_grid(n_grid);
            // The rebuilt state carries the fixed gauge; compare densities
            // and the rotation eigenvalue instead of raw phases.
            for (r, v) in rebuilt.iter().zip(direct.values()) {
                bloch_defect = bloch_defect.max((r.norm() - v.norm()).abs());
            }
            let shift = n_grid / 4; // pi/l on the grid
            let phase = Complex64::cis(-PI * q as f64 / 2.0);
            for j in 0..n_grid {
                let rotated = rebuilt[(j + n_grid - shift) % n_grid];
                bloch_defect = bloch_defect.max((rotated - phase * rebuilt[j]).norm());
            }
        }
        ok &= bloch_defect < tol.wannier_bloch;
        notes.push(format!("bloch-from-wannier defect {bloch_defect:.1e}"));

        Ok((ok, notes.join("; ")))
    };
    match run() {
        Ok((ok, detail)) => report("bands", "band structure", 10.0, t0, ok, detail),
        Err(e) => report("bands", "band structure", 10.0, t0, false, e.to_string()),
    }
}

/// Radial basis quality: orthonormality, projection residual, initial
/// mean radius.
pub fn check_radial_basis(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let mut ok = true;
        let mut notes = Vec::new();
        let mut gram = 0.0f64;
        for &m in &[0i64, 10] {
            let basis =
                crate::radial::RadialBasis::new(&BoxParams::new(1.0, 1.0, 0.5, 0.01, 100)?, m)?;
            gram = gram.max(basis.orthonormality_defect());
        }
        ok &= gram < tol.mode_orthonormality;
        notes.push(format!("mode Gram defect {gram:.1e}"));

        let (basis, state) = project_initial_auto(&fig_box(), 10, tol.projection_residual)?;
        ok &= state.residual() < tol.projection_residual;
        notes.push(format!(
            "projection residual {:.1e} with {} modes",
            state.residual(),
            basis.n_max()
        ));

        let mean0 = basis.mean_radius(&state, 0.0)?;
        ok &= (mean0 - 0.5).abs() < tol.mean_radius;
        notes.push(format!("mean radius at t=0: {mean0:.6}"));
        Ok((ok, notes.join("; ")))
    };
    match run() {
        Ok((ok, detail)) => report("radial-basis", "radial basis", 10.0, t0, ok, detail),
        Err(e) => report(
            "radial-basis",
            "radial basis",
            10.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Mean-radius oscillations collapse and then revive.
pub fn check_collapse_revival(_tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let n_t = 1500usize;
        let t_max = 0.5;
        let times: Vec<f64> = (0..n_t)
            .map(|i| t_max * i as f64 / (n_t - 1) as f64)
            .collect();
        let trace = mean_radius_trace(&fig_box(), 10, &times)?;

        // Envelope: oscillation amplitude per window of the trace.
        let n_windows = 25usize;
        let per = n_t / n_windows;
        let amps: Vec<f64> = (0..n_windows)
            .map(|w| {
                let seg = &trace.mean_rho[w * per..(w + 1) * per];
                let hi = seg.iter().cloned().fold(f64::MIN, f64::max);
                let lo = seg.iter().cloned().fold(f64::MAX, f64::min);
                hi - lo
            })
            .collect();
        let early = amps[..3].iter().cloned().fold(0.0f64, f64::max);
        let (i_min, &min_amp) = amps
            .iter()
            .enumerate()
            .skip(2)
            .take(n_windows - 5)
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let revived = amps[i_min..].iter().cloned().fold(0.0f64, f64::max);
        let collapsed = min_amp <= 0.5 * early;
        let recovered = revived - min_amp >= 0.5 * (early - min_amp);
        Ok((
            collapsed && recovered,
            format!(
                "envelope: early {early:.4}, min {min_amp:.4} (window {i_min}), revived {revived:.4}"
            ),
        ))
    };
    match run() {
        Ok((ok, detail)) => report(
            "revival",
            "radial collapse and revival",
            30.0,
            t0,
            ok,
            detail,
        ),
        Err(e) => report(
            "revival",
            "radial collapse and revival",
            30.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Field slices at the ring radius: separated packets early, interference
/// fringes once the packets meet, evenness throughout.
pub fn check_field_slices(tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        let params = KickParams::new(10, 6.0, 10, 4.0)?;
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        let n_grid = 1024usize;
        let times = [1e-3 * PI, 2e-3 * PI];
        let slices = field_slices(&kicked, &fig_box(), 0.5, &times, n_grid, 1e-3)?;

        let mut ok = true;
        let mut notes = Vec::new();

        let early = slices[0].prob();
        let global_max = early.iter().cloned().fold(0.0f64, f64::max);
        let near_pi_max = (0..n_grid)
            .filter(|&j| {
                let mut d = (TAU * j as f64 / n_grid as f64 - PI).abs();
                if d > PI {
                    d = TAU - d;
                }
                d <= 0.3
            })
            .map(|j| early[j])
            .fold(0.0f64, f64::max);
        ok &= near_pi_max < 0.05 * global_max;
        notes.push(format!(
            "early slice: near-pi/max = {:.3e}",
            near_pi_max / global_max
        ));

        let late = slices[1].prob();
        let fringes = windowed_peaks(&late, PI, 0.5, 0.01);
        ok &= fringes.len() >= 5;
        notes.push(format!("late slice: {} fringe maxima", fringes.len()));

        for (label, prob) in [("early", &early), ("late", &late)] {
            let peak = prob.iter().cloned().fold(0.0f64, f64::max);
            let mut defect = 0.0f64;
            for j in 1..n_grid {
                defect = defect.max((prob[j] - prob[n_grid - j]).abs());
            }
            ok &= defect < tol.evenness * peak.max(1.0);
            notes.push(format!("{label} evenness defect {defect:.1e}"));
        }
        Ok((ok, notes.join("; ")))
    };
    match run() {
        Ok((ok, detail)) => report(
            "field-slice",
            "field slice interference",
            60.0,
            t0,
            ok,
            detail,
        ),
        Err(e) => report(
            "field-slice",
            "field slice interference",
            60.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Ring-only evolution with the matched rotational constant reproduces the
/// fringe peak positions of the full radial computation.
pub fn check_ring_vs_box(_tol: &CheckTolerances) -> CheckReport {
    let t0 = Instant::now();
    let run = || -> Result<(bool, String)> {
        // rho0 = a/2 makes the matched ring constant 4 lambda.
        let xi_ring = 4.0;
        let params = KickParams::new(10, 6.0, 10, xi_ring)?;
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        // Fringes are detected on a fine synthesis grid and their
        // positions compared at the display resolution of the reference
        // slices (256 cells around the ring, 0.0245 rad per cell); the
        // residual radial-dispersion shift of the weaker fringes is a
        // fraction of that cell.
        let n_fine = 2048usize;
        let n_coarse = 256usize;
        let cell = TAU / n_coarse as f64;
        let mut ok = true;
        let mut notes = Vec::new();
        let times = [1e-3 * PI, 2e-3 * PI];
        let slices = field_slices(&kicked, &fig_box(), 0.5, &times, n_fine, 1e-3)?;
        for (slice, &lambda_t) in slices.iter().zip(&times) {
            let ring = profile_from_spectrum(&free_evolve(&kicked, xi_ring, lambda_t)?, n_fine);
            let ring_peaks = windowed_peaks(&ring.prob(), PI, 0.5, 0.05);
            let box_peaks = windowed_peaks(&slice.prob(), PI, 0.5, 0.001);
            let mut worst = 0.0f64;
            for &rp in &ring_peaks {
                let nearest = box_peaks
                    .iter()
                    .map(|&bp| (bp as i64 - rp as i64).unsigned_abs() as usize)
                    .min()
                    .unwrap_or(usize::MAX);
                worst = worst.max(nearest as f64 * TAU / n_fine as f64);
            }
            let expect_fringes = lambda_t > 1.5e-3 * PI;
            if expect_fringes {
                ok &= ring_peaks.len() >= 5 && worst <= cell;
                notes.push(format!(
                    "lambda_t = {lambda_t:.5}: {} fringes, worst offset {worst:.4} rad (cell {cell:.4})",
                    ring_peaks.len()
                ));
            } else {
                // Before the crossing neither route shows fringes at the
                // figure scale.
                ok &= ring_peaks.is_empty();
                notes.push(format!(
                    "lambda_t = {lambda_t:.5}: {} visible ring fringes before crossing",
                    ring_peaks.len()
                ));
            }
        }
        Ok((ok, notes.join("; ")))
    };
    match run() {
        Ok((ok, detail)) => report("ring-vs-box", "ring vs box fringes", 60.0, t0, ok, detail),
        Err(e) => report(
            "ring-vs-box",
            "ring vs box fringes",
            60.0,
            t0,
            false,
            e.to_string(),
        ),
    }
}

/// Run every library-level check in order.
pub fn run_all(tol: &CheckTolerances) -> Vec<CheckReport> {
    vec![
        check_kick_oracle(tol),
        check_diffraction_peaks(tol),
        check_unitarity(tol),
        check_far_field(tol),
        check_fringe_onset(tol),
        check_identity(tol),
        check_bands(tol),
        check_radial_basis(tol),
        check_collapse_revival(tol),
        check_field_slices(tol),
        check_ring_vs_box(tol),
    ]
}
