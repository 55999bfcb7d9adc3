//! The `check` command: the full verification suite plus an output
//! determinism probe, with the figure data regenerated alongside.

use std::path::Path;
use std::time::Instant;

use circlat::angular::{apply_kick_bessel, free_evolve, initial_spectrum, profile_from_spectrum};
use circlat::checks::{self, CheckReport};
use circlat::radial::mean_radius_trace;

use crate::config::SimConfig;
use crate::csvio;
use crate::figures;
use crate::CliError;

/// Regenerate a small cross-section of the outputs twice through
/// independent calls and demand byte-identical CSV renderings.
fn determinism_report(cfg: &SimConfig) -> CheckReport {
    let started = Instant::now();
    let render = || -> Result<(String, String, String), CliError> {
        let params = cfg.kick_params()?;
        let spec = initial_spectrum(params.n_loc, params.n_loc as usize)?;
        let kicked = apply_kick_bessel(&spec, &params)?;
        let spectrum = csvio::spectrum_csv(&kicked);
        let evolved = free_evolve(&kicked, params.xi, 3e-3 * std::f64::consts::PI)?;
        let profile = csvio::profile_csv(&profile_from_spectrum(&evolved, 512));
        let bx = cfg.box_params()?;
        let times: Vec<f64> = (0..64).map(|i| 0.5 * i as f64 / 63.0).collect();
        let trace = csvio::trace_csv(&mean_radius_trace(&bx, cfg.radial_m, &times)?);
        Ok((spectrum, profile, trace))
    };
    let (passed, detail) = match (render(), render()) {
        (Ok(a), Ok(b)) => {
            let same = a == b;
            (
                same,
                if same {
                    "spectrum, profile and trace renderings byte-identical across runs".to_string()
                } else {
                    "regenerated CSV bytes differ between runs".to_string()
                },
            )
        }
        (Err(e), _) | (_, Err(e)) => (false, format!("determinism probe failed: {e}")),
    };
    let seconds = started.elapsed().as_secs_f64();
    CheckReport {
        id: "determinism",
        name: "output determinism",
        passed,
        detail,
        seconds,
        budget_seconds: 120.0,
    }
}

pub struct CheckOutcome {
    pub reports: Vec<CheckReport>,
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

/// Run every check, then refresh the figure data set in `out`.
pub fn run(cfg: &SimConfig, out: &Path, emit_svg: bool) -> Result<CheckOutcome, CliError> {
    let tol = cfg.tolerances();
    let mut reports = checks::run_all(&tol);
    reports.push(determinism_report(cfg));
    for r in &reports {
        println!("{}", r.line());
    }

    let mut files = Vec::new();
    let mut warnings = Vec::new();
    for which in 1..=6u8 {
        let fig = figures::figure(which, cfg, out, emit_svg)?;
        files.extend(fig.files);
        warnings.extend(fig.warnings);
    }
    Ok(CheckOutcome {
        reports,
        files,
        warnings,
    })
}
