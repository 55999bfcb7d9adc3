//! Single pipeline stages with file-based chaining: each stage can read a
//! previous stage's CSV through the `in` config key.

use std::path::Path;

use circlat::angular::{
    apply_kick_bessel, apply_kick_grid, far_field_profile, free_evolve, initial_profile,
    initial_spectrum, profile_from_spectrum, raman_nath_ratio, AngularProfile, AngularSpectrum,
};
use circlat::bands::{solve_bands, LatticeSpec};
use circlat::radial::mean_radius_trace;

use crate::config::SimConfig;
use crate::csvio::{self, write_atomic};
use crate::CliError;

pub struct StageOutput {
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

fn input_spectrum(cfg: &SimConfig) -> Result<AngularSpectrum, CliError> {
    if cfg.in_path.is_empty() {
        Ok(initial_spectrum(cfg.n_loc, cfg.n_loc as usize)?)
    } else {
        csvio::read_spectrum(Path::new(&cfg.in_path))
    }
}

fn input_profile(cfg: &SimConfig) -> Result<AngularProfile, CliError> {
    if cfg.in_path.is_empty() {
        let params = cfg.kick_params()?;
        let prof = initial_profile(cfg.n_loc, cfg.n_grid)?;
        Ok(apply_kick_grid(&prof, &params)?)
    } else {
        csvio::read_profile(Path::new(&cfg.in_path))
    }
}

/// Apply the lattice kick to the input (or freshly built) spectrum.
pub fn kick(cfg: &SimConfig, out: &Path) -> Result<StageOutput, CliError> {
    let params = cfg.kick_params()?;
    let spec = input_spectrum(cfg)?;
    let kicked = apply_kick_bessel(&spec, &params)?;
    let mut warnings = Vec::new();
    if cfg.tau_phys > 0.0 {
        let r = raman_nath_ratio(cfg.xi, cfg.tau_phys, kicked.m_max());
        if r > 0.1 {
            warnings.push(format!(
                "kinetic phase during the pulse is not negligible: xi tau m_max^2 = {r:.3}"
            ));
        }
    }
    let path = out.join("run_kick_spectrum.csv");
    write_atomic(&path, csvio::spectrum_csv(&kicked).as_bytes())?;
    Ok(StageOutput {
        files: vec![path.display().to_string()],
        warnings,
    })
}

/// Free evolution of a spectrum by the phase xi_t m^2; emits both the
/// evolved spectrum and its synthesized profile.
pub fn evolve(cfg: &SimConfig, out: &Path) -> Result<StageOutput, CliError> {
    let spec = if cfg.in_path.is_empty() {
        let params = cfg.kick_params()?;
        apply_kick_bessel(&input_spectrum(cfg)?, &params)?
    } else {
        csvio::read_spectrum(Path::new(&cfg.in_path))?
    };
    let evolved = free_evolve(&spec, cfg.xi, cfg.xi_t / cfg.xi)?;
    let spath = out.join("run_evolve_spectrum.csv");
    write_atomic(&spath, csvio::spectrum_csv(&evolved).as_bytes())?;
    let profile = profile_from_spectrum(&evolved, cfg.n_grid);
    let ppath = out.join("run_evolve_profile.csv");
    write_atomic(&ppath, csvio::profile_csv(&profile).as_bytes())?;
    Ok(StageOutput {
        files: vec![spath.display().to_string(), ppath.display().to_string()],
        warnings: Vec::new(),
    })
}

/// Far-field image-sum propagation of a kicked profile.
pub fn farfield(cfg: &SimConfig, out: &Path) -> Result<StageOutput, CliError> {
    let profile = input_profile(cfg)?;
    let result = far_field_profile(&profile, cfg.xi, cfg.xi_t / cfg.xi, cfg.p_max, cfg.n_grid)?;
    let path = out.join("run_farfield_profile.csv");
    write_atomic(&path, csvio::profile_csv(&result).as_bytes())?;
    Ok(StageOutput {
        files: vec![path.display().to_string()],
        warnings: Vec::new(),
    })
}

/// Band energies of the azimuthal lattice.
pub fn bands(cfg: &SimConfig, out: &Path) -> Result<StageOutput, CliError> {
    let spec = LatticeSpec::new(cfg.l, cfg.depth, cfg.s_max, cfg.n_bands)?;
    let structure = solve_bands(&spec)?;
    let mut warnings = Vec::new();
    if structure.tail_warning() {
        warnings.push(format!(
            "plane-wave tail coefficient {:.2e} above 1e-8; raise s_max",
            structure.tail_max
        ));
    }
    let path = out.join("run_bands.csv");
    write_atomic(&path, csvio::bands_csv(&structure).as_bytes())?;
    Ok(StageOutput {
        files: vec![path.display().to_string()],
        warnings,
    })
}

/// Mean-radius history in the cylindrical box.
pub fn radial(cfg: &SimConfig, out: &Path) -> Result<StageOutput, CliError> {
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
    let path = out.join("run_radial_trace.csv");
    write_atomic(&path, csvio::trace_csv(&trace).as_bytes())?;
    Ok(StageOutput {
        files: vec![path.display().to_string()],
        warnings,
    })
}
