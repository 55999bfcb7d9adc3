//! One-dimensional azimuthal physics on a ring: localized initial state,
//! Raman-Nath phase-mask kick from the circular lattice, exact free
//! evolution of the angular-momentum amplitudes, and the interferometric
//! diagnostics built on them.
//!
//! States live either in angular-momentum space ([`AngularSpectrum`],
//! amplitudes over integer m) or on a uniform azimuthal grid
//! ([`AngularProfile`]). The two representations are linked by exact
//! discrete Fourier synthesis/analysis, which also serves as the
//! independent cross-check for the Bessel-sum form of the kick.

mod farfield;

pub use farfield::{far_field_profile, identity_check};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::KahanSumC;
use crate::specfun::{bessel_j, log_binomial};

use std::f64::consts::{PI, TAU};

/// Parameters of the diffraction kick and ring evolution.
///
/// `helicity` is the winding number of each beam (the lattice has `2 *
/// helicity` wells), `pulse_area` the dimensionless product of light-shift
/// depth and pulse duration, `n_loc` the localization exponent of the
/// initial packet, and `xi` the rotational constant fixing free-evolution
/// phases `xi * t * m^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickParams {
    pub helicity: u32,
    pub pulse_area: f64,
    pub n_loc: u32,
    pub xi: f64,
}

impl KickParams {
    pub fn new(helicity: u32, pulse_area: f64, n_loc: u32, xi: f64) -> Result<Self> {
        if helicity == 0 {
            return Err(Error::Domain("helicity must be >= 1".to_string()));
        }
        if !pulse_area.is_finite() || pulse_area < 0.0 {
            return Err(Error::Domain(format!(
                "pulse_area must be finite and >= 0, got {pulse_area}"
            )));
        }
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Domain(format!("xi must be positive, got {xi}")));
        }
        Ok(KickParams {
            helicity,
            pulse_area,
            n_loc,
            xi,
        })
    }

    /// Order cutoff of the Bessel sum: terms beyond it are below 1e-30.
    pub fn bessel_cut(&self) -> i64 {
        (0.5 * self.pulse_area).ceil() as i64 + 20
    }

    /// Output truncation for the kicked spectrum.
    pub fn kicked_m_max(&self, input_m_max: usize) -> usize {
        input_m_max + 2 * self.helicity as usize * self.bessel_cut() as usize
    }
}

/// Complex amplitudes over integer angular momentum m in [-m_max, m_max].
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSpectrum {
    m_max: usize,
    amps: Vec<Complex64>,
}

impl AngularSpectrum {
    pub fn from_amps(m_max: usize, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 2 * m_max + 1);
        AngularSpectrum { m_max, amps }
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// Amplitude at angular momentum m; zero outside the truncation.
    pub fn amp(&self, m: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.m_max {
            Complex64::new(0.0, 0.0)
        } else {
            self.amps[(m + self.m_max as i64) as usize]
        }
    }

    /// Amplitudes ordered from m = -m_max to +m_max.
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
        }
        acc
    }

    /// Largest |amps(m) - amps(-m)| over the truncation.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 1..=self.m_max as i64 {
            worst = worst.max((self.amp(m) - self.amp(-m)).norm());
        }
        worst
    }

    /// Total probability carried by |m| > cut.
    pub fn tail_weight(&self, cut: usize) -> f64 {
        let mut acc = 0.0;
        for m in (cut as i64 + 1)..=(self.m_max as i64) {
            acc += self.amp(m).norm_sqr() + self.amp(-m).norm_sqr();
        }
        acc
    }
}

/// Complex wave function on the uniform grid phi_j = 2 pi j / n_grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularProfile {
    values: Vec<Complex64>,
}

impl AngularProfile {
    pub fn from_values(values: Vec<Complex64>) -> Self {
        assert!(!values.is_empty());
        AngularProfile { values }
    }

    pub fn n_grid(&self) -> usize {
        self.values.len()
    }

    pub fn phi(&self, j: usize) -> f64 {
        TAU * j as f64 / self.values.len() as f64
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn prob(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Grid approximation of the L2 norm, (2 pi / n) sum |v|^2.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for v in &self.values {
            acc += v.norm_sqr();
        }
        acc * TAU / self.values.len() as f64
    }
}

/// e^{i 2 pi k / n}, with k reduced exactly so large multiples stay on
/// the unit grid phases.
fn grid_phase(k: i64, n: usize) -> Complex64 {
    let r = k.rem_euclid(n as i64) as f64;
    Complex64::cis(TAU * r / n as f64)
}

fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Angular-momentum amplitudes of the localized packet cos^{2N}(phi/2):
/// binomial weights C(2N, N+m) / sqrt(C(4N, 2N)) on |m| <= N.
///
/// The Vandermonde identity makes the norm exactly one; no explicit
/// renormalization is applied.
pub fn initial_spectrum(n_loc: u32, m_max: usize) -> Result<AngularSpectrum> {
    let n = n_loc as u64;
    if m_max < n_loc as usize {
        return Err(Error::Truncation(format!(
            "m_max {m_max} < n_loc {n_loc}: packet would lose norm"
        )));
    }
    let half_log_norm = 0.5 * log_binomial(4 * n, 2 * n as i64);
    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * m_max + 1];
    for m in 0..=n_loc as i64 {
        let a = (log_binomial(2 * n, n as i64 + m) - half_log_norm).exp();
        amps[(m_max as i64 + m) as usize] = Complex64::new(a, 0.0);
        amps[(m_max as i64 - m) as usize] = Complex64::new(a, 0.0);
    }
    Ok(AngularSpectrum::from_amps(m_max, amps))
}

/// The packet itself on the azimuthal grid: C_N cos^{2N}(phi/2) with
/// C_N = 2^{2N} / sqrt(2 pi C(4N, 2N)).
pub fn initial_profile(n_loc: u32, n_grid: usize) -> Result<AngularProfile> {
    if n_grid <= 4 * n_loc as usize {
        return Err(Error::Truncation(format!(
            "n_grid {n_grid} too coarse for n_loc {n_loc}: need > 4 n_loc"
        )));
    }
    let n = n_loc as u64;
    let c_n = (2.0 * n as f64 * std::f64::consts::LN_2
        - 0.5 * ((TAU).ln() + log_binomial(4 * n, 2 * n as i64)))
    .exp();
    let mut values = vec![Complex64::new(0.0, 0.0); n_grid];
    for j in 0..=n_grid / 2 {
        let phi = TAU * j as f64 / n_grid as f64;
        let v = c_n * (0.5 * phi).cos().powi(2 * n_loc as i32);
        values[j] = Complex64::new(v, 0.0);
        // cos^{2N}((2 pi - phi)/2) = cos^{2N}(phi/2): mirror exactly.
        if j > 0 && j < n_grid - j {
            values[n_grid - j] = Complex64::new(v, 0.0);
        }
    }
    Ok(AngularProfile::from_values(values))
}

/// Project a grid profile onto e^{i m phi}: exact for band-limited data
/// when n_grid > 2 m_max.
pub fn spectrum_from_profile(profile: &AngularProfile, m_max: usize) -> AngularSpectrum {
    let n = profile.n_grid();
    let scale = (TAU).sqrt() / n as f64;
    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * m_max + 1];
    for (idx, a) in amps.iter_mut().enumerate() {
        let m = idx as i64 - m_max as i64;
        let mut acc = KahanSumC::new();
        for (j, v) in profile.values().iter().enumerate() {
            acc.add(v * grid_phase(-m * j as i64, n));
        }
        *a = scale * acc.value();
    }
    AngularSpectrum::from_amps(m_max, amps)
}

/// Synthesize the grid profile (1/sqrt(2 pi)) sum_m a_m e^{i m phi_j}.
pub fn profile_from_spectrum(spec: &AngularSpectrum, n_grid: usize) -> AngularProfile {
    let scale = 1.0 / (TAU).sqrt();
    let mut values = vec![Complex64::new(0.0, 0.0); n_grid];
    for (j, v) in values.iter_mut().enumerate() {
        let mut acc = KahanSumC::new();
        for (idx, a) in spec.amps().iter().enumerate() {
            let m = idx as i64 - spec.m_max() as i64;
            acc.add(a * grid_phase(m * j as i64, n_grid));
        }
        *v = scale * acc.value();
    }
    AngularProfile::from_values(values)
}

/// Raman-Nath kick in momentum space: the phase mask
/// exp(i pulse_area cos^2(l phi)) scatters each amplitude into sidebands
/// spaced by 2l with Bessel weights,
/// zeta_m = e^{i pulse_area/2} sum_n i^n psi_{m-2nl} J_n(pulse_area/2).
pub fn apply_kick_bessel(spec: &AngularSpectrum, params: &KickParams) -> Result<AngularSpectrum> {
    let n_cut = params.bessel_cut();
    let m_out = params.kicked_m_max(spec.m_max());
    let half_area = 0.5 * params.pulse_area;
    let two_l = 2 * params.helicity as i64;

    let mut bessel = Vec::with_capacity(n_cut as usize + 1);
    for n in 0..=n_cut {
        bessel.push(bessel_j(n, half_area)?);
    }
    let global = Complex64::cis(half_area);

    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * m_out + 1];
    for (idx, out) in amps.iter_mut().enumerate() {
        let m = idx as i64 - m_out as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in -n_cut..=n_cut {
            let j = if n >= 0 {
                bessel[n as usize]
            } else if n % 2 == 0 {
                bessel[(-n) as usize]
            } else {
                -bessel[(-n) as usize]
            };
            let src = spec.amp(m - n * two_l);
            if src != Complex64::new(0.0, 0.0) {
                acc += i_pow(n) * src * j;
            }
        }
        *out = global * acc;
    }
    let kicked = AngularSpectrum::from_amps(m_out, amps);
    let defect = (kicked.norm_sq() - spec.norm_sq()).abs();
    if defect > 1e-10 {
        return Err(Error::Truncation(format!(
            "kick lost norm by {defect:.3e}; output m_max {m_out} insufficient"
        )));
    }
    Ok(kicked)
}

/// The same kick applied pointwise on the grid: multiply by the pure
/// phase exp(i pulse_area cos^2(l phi_j)). Moduli are unchanged.
pub fn apply_kick_grid(profile: &AngularProfile, params: &KickParams) -> Result<AngularProfile> {
    let n = profile.n_grid();
    if n < 16 * params.helicity as usize || n <= 4 * params.n_loc as usize {
        return Err(Error::Truncation(format!(
            "n_grid {n} resolves neither mask (l = {}) nor packet (N = {})",
            params.helicity, params.n_loc
        )));
    }
    let l = params.helicity as i64;
    let values = profile
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            // cos(l phi_j) on the exact grid angle.
            let c = grid_phase(l * j as i64, n).re;
            v * Complex64::cis(params.pulse_area * c * c)
        })
        .collect();
    Ok(AngularProfile::from_values(values))
}

/// Free rotor evolution: amps(m) *= exp(-i xi t m^2).
pub fn free_evolve(spec: &AngularSpectrum, xi: f64, t: f64) -> Result<AngularSpectrum> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "evolution time must be >= 0, got {t}"
        )));
    }
    let m_max = spec.m_max();
    let mut amps = spec.amps().to_vec();
    for (idx, a) in amps.iter_mut().enumerate() {
        let m = idx as i64 - m_max as i64;
        let phase = -xi * t * (m * m) as f64;
        *a *= Complex64::cis(phase);
    }
    Ok(AngularSpectrum::from_amps(m_max, amps))
}

/// Index of the strongest diffraction order, n ~ pulse_area / 2.
pub fn dominant_packet_index(params: &KickParams) -> i64 {
    (0.5 * params.pulse_area).round() as i64
}

/// Angular group velocity of the n-th diffraction packet, 4 xi n l.
pub fn group_velocity(n: i64, params: &KickParams) -> f64 {
    4.0 * params.xi * n as f64 * params.helicity as f64
}

/// Meeting time of the strongest counterpropagating packet pair,
/// T = pi / (2 xi pulse_area l).
pub fn meeting_time(params: &KickParams) -> Result<f64> {
    if params.pulse_area <= 0.0 {
        return Err(Error::Domain(
            "meeting time undefined without a kick (pulse_area = 0)".to_string(),
        ));
    }
    Ok(PI / (2.0 * params.xi * params.pulse_area * params.helicity as f64))
}

/// Whether the dominant counterrotating packets have reached overlap at
/// phi = pi: their centers sit within one packet width of the meeting
/// point. Width combines the initial localization sqrt(2/N) with the
/// dispersive spread 2 xi t sqrt(N/2).
pub fn packets_crossed(params: &KickParams, t: f64) -> bool {
    let n_max = dominant_packet_index(params);
    let center = group_velocity(n_max, params) * t;
    let n = params.n_loc.max(1) as f64;
    let width = ((2.0 / n) + (2.0 * params.xi * t).powi(2) * n / 2.0).sqrt();
    PI - center <= width
}

/// Kinetic phase accrued during the physical pulse, xi tau m_max^2.
/// The instantaneous-mask picture needs this to stay small; values above
/// 0.1 mean the kick can no longer be treated as a pure phase mask.
pub fn raman_nath_ratio(xi: f64, tau_phys: f64, m_max: usize) -> f64 {
    xi * tau_phys * (m_max as f64).powi(2)
}

/// Indices of strict local maxima of `values` (interior points only).
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        if values[i] > values[i - 1] && values[i] > values[i + 1] {
            out.push(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_binomial;

    fn default_params() -> KickParams {
        KickParams::new(10, 6.0, 10, 1.0).unwrap()
    }

    #[test]
    fn initial_spectrum_small_and_frozen_values() {
        // N = 1: amps(0) = C(2,1)/sqrt(C(4,2)) = 2/sqrt(6).
        let s = initial_spectrum(1, 4).unwrap();
        assert!((s.amp(0).re - 2.0 / 6.0f64.sqrt()).abs() < 1e-15);
        // N = 10: amps(0) = 184756/sqrt(137846528820).
        let s = initial_spectrum(10, 10).unwrap();
        let want = 184756.0 / 137846528820.0f64.sqrt();
        assert!((s.amp(0).re - want).abs() < 1e-14);
        assert!((s.amp(0).re - 0.49762).abs() < 1e-5);
    }

    #[test]
    fn initial_spectrum_norm_is_exact() {
        // The binomial identity makes the norm one; the exact-integer
        // branch of log_binomial holds 1e-13 through N = 200 and the
        // log-sum branch stays within a few 1e-13 up to N = 1000.
        for &n in &[0u32, 1, 7, 10, 50, 200, 1000] {
            let s = initial_spectrum(n, n as usize + 2).unwrap();
            let tol = if n <= 200 { 1e-13 } else { 5e-13 };
            assert!(
                (s.norm_sq() - 1.0).abs() < tol,
                "N={n}: norm {}",
                s.norm_sq()
            );
            assert_eq!(s.symmetry_defect(), 0.0);
        }
    }

    #[test]
    fn initial_spectrum_truncation_rejected() {
        assert!(initial_spectrum(10, 9).is_err());
    }

    #[test]
    fn initial_spectrum_gaussian_asymptotics() {
        // For large N the weights approach (2/(pi N))^{1/4} exp(-m^2/N).
        let n = 200u32;
        let s = initial_spectrum(n, 220).unwrap();
        let nf = n as f64;
        let m_lim = (nf).sqrt() as i64;
        for m in -m_lim..=m_lim {
            let asym = (2.0 / (PI * nf)).powf(0.25) * (-(m * m) as f64 / nf).exp();
            let rel = (s.amp(m).re - asym).abs() / asym;
            assert!(rel < 0.02, "m={m}: {} vs {asym}", s.amp(m).re);
        }
    }

    #[test]
    fn initial_profile_limits_and_peak() {
        // N = 0: constant 1/sqrt(2 pi).
        let p = initial_profile(0, 16).unwrap();
        for v in p.values() {
            assert!((v.re - 1.0 / TAU.sqrt()).abs() < 1e-15);
        }
        // N = 10: peak value C_10 at phi = 0.
        let p = initial_profile(10, 256).unwrap();
        let c10 = (20.0 * std::f64::consts::LN_2 - 0.5 * (TAU.ln() + log_binomial(40, 20))).exp();
        assert!((p.values()[0].re - c10).abs() < 1e-13);
        let peak = p.values()[0].norm_sqr();
        for v in p.values() {
            assert!(v.norm_sqr() <= peak + 1e-15);
        }
    }

    #[test]
    fn initial_profile_half_width_scaling() {
        // |Phi|^2 falls to half its peak at phi of order sqrt(2/N).
        for &n in &[10u32, 40, 160] {
            let grid = 4096;
            let p = initial_profile(n, grid).unwrap();
            let prob = p.prob();
            let half = 0.5 * prob[0];
            let j_half = (1..grid).find(|&j| prob[j] < half).unwrap();
            let phi_half = TAU * j_half as f64 / grid as f64;
            let scale = (2.0 / n as f64).sqrt();
            assert!(
                phi_half > 0.5 * scale && phi_half < 2.0 * scale,
                "N={n}: half width {phi_half} vs scale {scale}"
            );
        }
    }

    #[test]
    fn initial_profile_matches_fourier_synthesis() {
        let n_loc = 10u32;
        let grid = 256;
        let direct = initial_profile(n_loc, grid).unwrap();
        let synth = profile_from_spectrum(&initial_spectrum(n_loc, n_loc as usize).unwrap(), grid);
        for (a, b) in direct.values().iter().zip(synth.values()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn profile_norm_and_symmetry() {
        let p = initial_profile(10, 128).unwrap();
        assert!((p.norm_sq() - 1.0).abs() < 1e-12);
        let n = p.n_grid();
        for j in 1..n {
            assert_eq!(p.values()[j], p.values()[n - j]);
        }
    }

    #[test]
    fn kick_with_zero_area_is_identity() {
        let spec = initial_spectrum(10, 10).unwrap();
        let params = KickParams::new(10, 0.0, 10, 1.0).unwrap();
        let kicked = apply_kick_bessel(&spec, &params).unwrap();
        for m in -(kicked.m_max() as i64)..=(kicked.m_max() as i64) {
            assert!((kicked.amp(m) - spec.amp(m)).norm() < 1e-15);
        }
        let prof = initial_profile(10, 256).unwrap();
        let kicked_prof = apply_kick_grid(&prof, &params).unwrap();
        for (a, b) in prof.values().iter().zip(kicked_prof.values()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn kick_preserves_norm_and_symmetry() {
        let spec = initial_spectrum(10, 10).unwrap();
        let kicked = apply_kick_bessel(&spec, &default_params()).unwrap();
        assert!((kicked.norm_sq() - 1.0).abs() < 1e-10);
        assert!(kicked.symmetry_defect() < 1e-14);
    }

    #[test]
    fn kick_grid_preserves_modulus_pointwise() {
        let prof = initial_profile(10, 512).unwrap();
        let kicked = apply_kick_grid(&prof, &default_params()).unwrap();
        for (a, b) in prof.values().iter().zip(kicked.values()) {
            assert!((a.norm() - b.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn kick_routes_agree_spot_check() {
        // zeta_0 from the Bessel sum vs Fourier projection of the phase mask.
        let params = default_params();
        let spec = initial_spectrum(10, 10).unwrap();
        let kicked = apply_kick_bessel(&spec, &params).unwrap();
        let prof = initial_profile(10, 2048).unwrap();
        let masked = apply_kick_grid(&prof, &params).unwrap();
        let projected = spectrum_from_profile(&masked, kicked.m_max());
        assert!((kicked.amp(0) - projected.amp(0)).norm() < 1e-8);
    }

    #[test]
    fn kick_populates_high_momenta() {
        // More than half the weight ends up beyond the initial band.
        let spec = initial_spectrum(10, 10).unwrap();
        let kicked = apply_kick_bessel(&spec, &default_params()).unwrap();
        assert!(kicked.tail_weight(10) > 0.5);
    }

    #[test]
    fn kick_peak_positions_spaced_by_twice_helicity() {
        let spec = initial_spectrum(10, 10).unwrap();
        let kicked = apply_kick_bessel(&spec, &default_params()).unwrap();
        let prob: Vec<f64> = kicked.amps().iter().map(|a| a.norm_sqr()).collect();
        let m0 = kicked.m_max() as i64;
        let peaks = local_maxima(&prob);
        for n in -3i64..=3 {
            let expect = 2 * n * 10;
            let hit = peaks.iter().any(|&i| (i as i64 - m0 - expect).abs() <= 1);
            assert!(hit, "no peak within 1 of m = {expect}");
        }
    }

    #[test]
    fn free_evolution_phases() {
        let spec = initial_spectrum(5, 5).unwrap();
        let same = free_evolve(&spec, 1.0, 0.0).unwrap();
        assert_eq!(spec.amps(), same.amps());

        let t = 0.37;
        let evolved = free_evolve(&spec, 1.0, t).unwrap();
        // m = +-1 advances by xi t relative to m = 0.
        let rel = (evolved.amp(1) / evolved.amp(0)) / (spec.amp(1) / spec.amp(0));
        assert!((rel.arg() + t).abs() < 1e-12);
        assert!((evolved.norm_sq() - spec.norm_sq()).abs() < 1e-14);

        // Composition: t1 then t2 equals t1 + t2.
        let a = free_evolve(&free_evolve(&spec, 1.0, 0.004).unwrap(), 1.0, 0.006).unwrap();
        let b = free_evolve(&spec, 1.0, 0.01).unwrap();
        for (x, y) in a.amps().iter().zip(b.amps()) {
            assert!((x - y).norm() < 1e-12);
        }
        assert!(free_evolve(&spec, 1.0, -1.0).is_err());
    }

    #[test]
    fn meeting_time_and_group_velocity() {
        let params = default_params();
        let t = meeting_time(&params).unwrap();
        assert!((t - PI / 120.0).abs() < 1e-15);
        // T scales as 1/l at fixed xi pulse_area.
        let p2 = KickParams::new(20, 6.0, 10, 1.0).unwrap();
        assert!((meeting_time(&p2).unwrap() - t / 2.0).abs() < 1e-15);

        assert_eq!(group_velocity(0, &params), 0.0);
        assert_eq!(group_velocity(1, &params), 40.0);
        assert_eq!(group_velocity(-3, &params), -group_velocity(3, &params));
        assert_eq!(dominant_packet_index(&params), 3);

        let no_kick = KickParams::new(10, 0.0, 10, 1.0).unwrap();
        assert!(meeting_time(&no_kick).is_err());
    }

    #[test]
    fn packet_crossing_brackets_the_meeting_time() {
        let params = default_params();
        let t_meet = meeting_time(&params).unwrap();
        assert!(!packets_crossed(&params, 0.0));
        assert!(!packets_crossed(&params, 0.5 * t_meet));
        // Finite packet width declares the overlap slightly early, and
        // certainly by the center-meeting time.
        assert!(packets_crossed(&params, t_meet));
        assert!(packets_crossed(&params, 2.0 * t_meet));
    }

    #[test]
    fn unitarity_through_full_pipeline() {
        let params = default_params();
        let spec = initial_spectrum(10, 10).unwrap();
        assert!((spec.norm_sq() - 1.0).abs() < 1e-13);
        let kicked = apply_kick_bessel(&spec, &params).unwrap();
        assert!((kicked.norm_sq() - 1.0).abs() < 1e-10);
        let evolved = free_evolve(&kicked, 1.0, 3e-3 * PI).unwrap();
        assert!((evolved.norm_sq() - 1.0).abs() < 1e-10);
        // Parity survives the pipeline.
        assert!(evolved.symmetry_defect() < 1e-13);
        let prof = profile_from_spectrum(&evolved, 512);
        let n = prof.n_grid();
        for j in 1..n {
            let d = (prof.values()[j].norm() - prof.values()[n - j].norm()).abs();
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn projection_inverts_synthesis() {
        let spec = initial_spectrum(7, 9).unwrap();
        let prof = profile_from_spectrum(&spec, 64);
        let back = spectrum_from_profile(&prof, 9);
        for m in -9i64..=9 {
            assert!((spec.amp(m) - back.amp(m)).norm() < 1e-13);
        }
    }

    #[test]
    fn raman_nath_diagnostic_scales() {
        assert_eq!(raman_nath_ratio(1.0, 0.0, 470), 0.0);
        assert!((raman_nath_ratio(1.0, 1e-6, 470) - 0.2209).abs() < 1e-10);
    }
}
