//! Flat key = value configuration with command-line overrides. Unknown
//! keys are rejected so typos fail loudly.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Every tunable of the simulation commands, with the reference-figure
/// parameters as defaults.
#[derive(Debug, Clone)]
pub struct SimConfig {
    // Angular lattice and kick.
    pub l: u32,
    pub n_loc: u32,
    pub pulse_area: f64,
    pub xi: f64,
    pub xi_t: f64,
    pub n_grid: usize,
    pub p_max: u32,
    pub tau_phys: f64,
    // Band structure.
    pub depth: f64,
    pub s_max: usize,
    pub n_bands: usize,
    pub band_grid: usize,
    // Radial box.
    pub lambda: f64,
    pub rho0: f64,
    pub width: f64,
    pub n_radial: usize,
    pub lambda_t: f64,
    pub t_max_lambda: f64,
    pub n_time: usize,
    pub radial_m: i64,
    pub slice_grid: usize,
    pub residual_target: f64,
    // Figures and chaining.
    pub fig_pixels: usize,
    pub in_path: String,
    // Verification tolerances.
    pub tol_kick: f64,
    pub tol_norm: f64,
    pub tol_norm_initial: f64,
    pub tol_far_field: f64,
    pub tol_identity: f64,
    pub tol_rotor: f64,
    pub tol_translation: f64,
    pub tol_wannier_orthonormality: f64,
    pub tol_wannier_bloch: f64,
    pub tol_mode_orthonormality: f64,
    pub tol_projection_residual: f64,
    pub tol_mean_radius: f64,
    pub tol_evenness: f64,

    explicit: BTreeSet<String>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            l: 10,
            n_loc: 10,
            pulse_area: 6.0,
            xi: 1.0,
            xi_t: 3e-3 * PI,
            n_grid: 2048,
            p_max: 3,
            tau_phys: 0.0,
            depth: 400.0,
            s_max: 30,
            n_bands: 5,
            band_grid: 512,
            lambda: 1.0,
            rho0: 0.5,
            width: 0.01,
            n_radial: 64,
            lambda_t: 2e-3 * PI,
            t_max_lambda: 0.5,
            n_time: 1500,
            radial_m: 10,
            slice_grid: 1024,
            residual_target: 1e-3,
            fig_pixels: 256,
            in_path: String::new(),
            tol_kick: 1e-8,
            tol_norm: 1e-10,
            tol_norm_initial: 1e-13,
            tol_far_field: 1e-6,
            tol_identity: 1e-6,
            tol_rotor: 1e-12,
            tol_translation: 1e-10,
            tol_wannier_orthonormality: 1e-8,
            tol_wannier_bloch: 1e-10,
            tol_mode_orthonormality: 1e-8,
            tol_projection_residual: 1e-3,
            tol_mean_radius: 5e-4,
            tol_evenness: 1e-10,
            explicit: BTreeSet::new(),
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("invalid value {value:?} for key {key:?}")))
}

impl SimConfig {
    /// Load `key = value` lines; later assignments win.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = SimConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!(
                    "{}:{}: expected key = value, got {raw:?}",
                    path.display(),
                    lineno + 1
                ))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Apply one `key=value` override (highest precedence).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "l" => self.l = parse(key, value)?,
            "n_loc" => self.n_loc = parse(key, value)?,
            "pulse_area" => self.pulse_area = parse(key, value)?,
            "xi" => self.xi = parse(key, value)?,
            "xi_t" => self.xi_t = parse(key, value)?,
            "n_grid" => self.n_grid = parse(key, value)?,
            "p_max" => self.p_max = parse(key, value)?,
            "tau_phys" => self.tau_phys = parse(key, value)?,
            "depth" => self.depth = parse(key, value)?,
            "s_max" => self.s_max = parse(key, value)?,
            "n_bands" => self.n_bands = parse(key, value)?,
            "band_grid" => self.band_grid = parse(key, value)?,
            "lambda" => self.lambda = parse(key, value)?,
            "rho0" => self.rho0 = parse(key, value)?,
            "width" => self.width = parse(key, value)?,
            "n_radial" => self.n_radial = parse(key, value)?,
            "lambda_t" => self.lambda_t = parse(key, value)?,
            "t_max_lambda" => self.t_max_lambda = parse(key, value)?,
            "n_time" => self.n_time = parse(key, value)?,
            "radial_m" => self.radial_m = parse(key, value)?,
            "slice_grid" => self.slice_grid = parse(key, value)?,
            "residual_target" => self.residual_target = parse(key, value)?,
            "fig_pixels" => self.fig_pixels = parse(key, value)?,
            "in" => self.in_path = value.trim().to_string(),
            "tol_kick" => self.tol_kick = parse(key, value)?,
            "tol_norm" => self.tol_norm = parse(key, value)?,
            "tol_norm_initial" => self.tol_norm_initial = parse(key, value)?,
            "tol_far_field" => self.tol_far_field = parse(key, value)?,
            "tol_identity" => self.tol_identity = parse(key, value)?,
            "tol_rotor" => self.tol_rotor = parse(key, value)?,
            "tol_translation" => self.tol_translation = parse(key, value)?,
            "tol_wannier_orthonormality" => self.tol_wannier_orthonormality = parse(key, value)?,
            "tol_wannier_bloch" => self.tol_wannier_bloch = parse(key, value)?,
            "tol_mode_orthonormality" => self.tol_mode_orthonormality = parse(key, value)?,
            "tol_projection_residual" => self.tol_projection_residual = parse(key, value)?,
            "tol_mean_radius" => self.tol_mean_radius = parse(key, value)?,
            "tol_evenness" => self.tol_evenness = parse(key, value)?,
            _ => return Err(ConfigError(format!("unknown config key {key:?}"))),
        }
        self.explicit.insert(key.to_string());
        Ok(())
    }

    /// Whether the user assigned this key (file or --set).
    pub fn was_set(&self, key: &str) -> bool {
        self.explicit.contains(key)
    }

    /// The fully resolved configuration, for the manifest.
    pub fn resolved(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        put("l", format!("{}", self.l));
        put("n_loc", format!("{}", self.n_loc));
        put("pulse_area", format!("{:?}", self.pulse_area));
        put("xi", format!("{:?}", self.xi));
        put("xi_t", format!("{:?}", self.xi_t));
        put("n_grid", format!("{}", self.n_grid));
        put("p_max", format!("{}", self.p_max));
        put("tau_phys", format!("{:?}", self.tau_phys));
        put("depth", format!("{:?}", self.depth));
        put("s_max", format!("{}", self.s_max));
        put("n_bands", format!("{}", self.n_bands));
        put("band_grid", format!("{}", self.band_grid));
        put("lambda", format!("{:?}", self.lambda));
        put("rho0", format!("{:?}", self.rho0));
        put("width", format!("{:?}", self.width));
        put("n_radial", format!("{}", self.n_radial));
        put("lambda_t", format!("{:?}", self.lambda_t));
        put("t_max_lambda", format!("{:?}", self.t_max_lambda));
        put("n_time", format!("{}", self.n_time));
        put("radial_m", format!("{}", self.radial_m));
        put("slice_grid", format!("{}", self.slice_grid));
        put("residual_target", format!("{:?}", self.residual_target));
        put("fig_pixels", format!("{}", self.fig_pixels));
        put("in", self.in_path.clone());
        put("tol_kick", format!("{:?}", self.tol_kick));
        put("tol_norm", format!("{:?}", self.tol_norm));
        put("tol_norm_initial", format!("{:?}", self.tol_norm_initial));
        put("tol_far_field", format!("{:?}", self.tol_far_field));
        put("tol_identity", format!("{:?}", self.tol_identity));
        put("tol_rotor", format!("{:?}", self.tol_rotor));
        put("tol_translation", format!("{:?}", self.tol_translation));
        put(
            "tol_wannier_orthonormality",
            format!("{:?}", self.tol_wannier_orthonormality),
        );
        put("tol_wannier_bloch", format!("{:?}", self.tol_wannier_bloch));
        put(
            "tol_mode_orthonormality",
            format!("{:?}", self.tol_mode_orthonormality),
        );
        put(
            "tol_projection_residual",
            format!("{:?}", self.tol_projection_residual),
        );
        put("tol_mean_radius", format!("{:?}", self.tol_mean_radius));
        put("tol_evenness", format!("{:?}", self.tol_evenness));
        map
    }

    pub fn tolerances(&self) -> circlat::checks::CheckTolerances {
        circlat::checks::CheckTolerances {
            kick_oracle: self.tol_kick,
            norm: self.tol_norm,
            norm_initial: self.tol_norm_initial,
            far_field: self.tol_far_field,
            identity: self.tol_identity,
            rotor: self.tol_rotor,
            translation: self.tol_translation,
            wannier_orthonormality: self.tol_wannier_orthonormality,
            wannier_bloch: self.tol_wannier_bloch,
            mode_orthonormality: self.tol_mode_orthonormality,
            projection_residual: self.tol_projection_residual,
            mean_radius: self.tol_mean_radius,
            evenness: self.tol_evenness,
        }
    }

    pub fn kick_params(&self) -> circlat::Result<circlat::angular::KickParams> {
        circlat::angular::KickParams::new(self.l, self.pulse_area, self.n_loc, self.xi)
    }

    pub fn box_params(&self) -> circlat::Result<circlat::radial::BoxParams> {
        circlat::radial::BoxParams::new(1.0, self.lambda, self.rho0, self.width, self.n_radial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_resolved_map() {
        let cfg = SimConfig::default();
        let map = cfg.resolved();
        assert_eq!(map["l"], "10");
        assert_eq!(map["pulse_area"], "6.0");
        let mut cfg2 = SimConfig::default();
        for (k, v) in &map {
            cfg2.set(k, v).unwrap();
        }
        assert_eq!(cfg2.resolved(), map);
    }

    #[test]
    fn unknown_key_rejected() {
        let mut cfg = SimConfig::default();
        assert!(cfg.set("no_such_key", "1").is_err());
        assert!(cfg.set("xi", "not a number").is_err());
    }

    #[test]
    fn explicit_tracking() {
        let mut cfg = SimConfig::default();
        assert!(!cfg.was_set("xi_t"));
        cfg.set("xi_t", "0.01").unwrap();
        assert!(cfg.was_set("xi_t"));
        assert_eq!(cfg.xi_t, 0.01);
    }
}
