//! Radial dispersion inside the infinitely deep cylindrical box: for each
//! angular momentum m the radial modes are Bessel functions pinned to zero
//! at the wall, R_n(rho) = sqrt(2)/(a |J_{m+1}(alpha_n)|) J_m(alpha_n rho / a)
//! with alpha_n the n-th zero of J_m and energies lambda alpha_n^2. A narrow
//! Gaussian ring is expanded over these modes, evolved by pure phases, and
//! recombined with the angular spectrum into the interference figures.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::angular::AngularSpectrum;
use crate::error::{Error, Result};
use crate::quad::{GaussLegendre, KahanSum};
use crate::specfun::{bessel_j, BesselEvaluator, BesselZeroTable};

/// Amplitudes below this threshold are treated as unpopulated when
/// assembling the two-dimensional field.
pub const POPULATED_EPS: f64 = 1e-10;

/// Geometry and scales of the cylindrical box problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxParams {
    /// Box radius, the unit of length.
    pub radius: f64,
    /// Time-scale constant: mode energies are lambda * alpha^2.
    pub lambda: f64,
    /// Center of the initial Gaussian ring.
    pub rho0: f64,
    /// Width of the initial Gaussian.
    pub width: f64,
    /// Number of radial modes per angular momentum.
    pub n_max: usize,
}

impl BoxParams {
    pub fn new(radius: f64, lambda: f64, rho0: f64, width: f64, n_max: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!(
                "radius must be positive, got {radius}"
            )));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if !(rho0 > 0.0 && rho0 < radius) {
            return Err(Error::Domain(format!(
                "rho0 must lie strictly inside the box, got {rho0} for radius {radius}"
            )));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::Domain(format!(
                "width must be positive, got {width}"
            )));
        }
        if n_max == 0 {
            return Err(Error::Domain("n_max must be >= 1".to_string()));
        }
        Ok(BoxParams {
            radius,
            lambda,
            rho0,
            width,
            n_max,
        })
    }

    /// The packet should be narrow against the box.
    pub fn width_warning(&self) -> bool {
        self.width > self.radius / 10.0
    }
}

/// One box eigenmode at fixed angular momentum.
#[derive(Debug, Clone, Copy)]
pub struct RadialMode {
    /// Radial quantum number, 1-based.
    pub n: usize,
    pub m: i64,
    /// n-th zero of J_|m|.
    pub alpha: f64,
    /// lambda * alpha^2.
    pub energy: f64,
    /// Closed-form normalization sqrt(2) / (a |J_{m+1}(alpha)|).
    pub norm: f64,
}

/// The first n_max modes of one |m| together with a quadrature grid and
/// the mode values on it.
#[derive(Debug, Clone)]
pub struct RadialBasis {
    params: BoxParams,
    m: i64,
    modes: Vec<RadialMode>,
    evaluator: BesselEvaluator,
    quad: GaussLegendre,
    /// Row-major [mode][node] samples of R_n(rho_k).
    values: Vec<f64>,
}

impl RadialBasis {
    /// Build zeros, normalizations and grid samples for angular momentum m.
    /// The quadrature uses at least 4 nodes per mode, enough to resolve the
    /// fastest Bessel oscillation retained.
    pub fn new(params: &BoxParams, m: i64) -> Result<Self> {
        let order = m.unsigned_abs() as u32;
        let a = params.radius;
        let table = BesselZeroTable::new(order, params.n_max)?;
        let alpha_max = table.zero(params.n_max);
        let evaluator = BesselEvaluator::new(order, alpha_max + 1.0);
        let mut modes = Vec::with_capacity(params.n_max);
        for n in 1..=params.n_max {
            let alpha = table.zero(n);
            let edge = bessel_j(order as i64 + 1, alpha)?;
            modes.push(RadialMode {
                n,
                m,
                alpha,
                energy: params.lambda * alpha * alpha,
                norm: std::f64::consts::SQRT_2 / (a * edge.abs()),
            });
        }
        let quad = GaussLegendre::new((4 * params.n_max).max(64), 0.0, a);
        let mut values = vec![0.0; params.n_max * quad.len()];
        for (ni, mode) in modes.iter().enumerate() {
            for (k, &rho) in quad.nodes.iter().enumerate() {
                values[ni * quad.len() + k] = mode.norm * evaluator.eval(mode.alpha * rho / a);
            }
        }
        Ok(RadialBasis {
            params: *params,
            m,
            modes,
            evaluator,
            quad,
            values,
        })
    }

    pub fn params(&self) -> &BoxParams {
        &self.params
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n_max(&self) -> usize {
        self.modes.len()
    }

    pub fn mode(&self, n: usize) -> &RadialMode {
        &self.modes[n - 1]
    }

    /// R_n(rho) evaluated off the grid.
    pub fn eval_mode(&self, n: usize, rho: f64) -> f64 {
        let mode = &self.modes[n - 1];
        mode.norm * self.evaluator.eval(mode.alpha * rho / self.params.radius)
    }

    /// Largest deviation of the mode Gram matrix from the identity under
    /// the basis quadrature.
    pub fn orthonormality_defect(&self) -> f64 {
        let nk = self.quad.len();
        let mut worst = 0.0f64;
        for i in 0..self.modes.len() {
            for j in i..self.modes.len() {
                let mut acc = KahanSum::new();
                for k in 0..nk {
                    acc.add(
                        self.quad.weights[k]
                            * self.quad.nodes[k]
                            * self.values[i * nk + k]
                            * self.values[j * nk + k],
                    );
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc.value() - want).abs());
            }
        }
        worst
    }

    /// The normalized initial Gaussian ring on the quadrature grid.
    fn gaussian_on_grid(&self) -> Vec<f64> {
        let p = &self.params;
        let mut g: Vec<f64> = self
            .quad
            .nodes
            .iter()
            .map(|&rho| (-(rho - p.rho0) * (rho - p.rho0) / (2.0 * p.width * p.width)).exp())
            .collect();
        let mut norm = KahanSum::new();
        for (k, &rho) in self.quad.nodes.iter().enumerate() {
            norm.add(self.quad.weights[k] * rho * g[k] * g[k]);
        }
        let scale = norm.value().sqrt().recip();
        for v in g.iter_mut() {
            *v *= scale;
        }
        g
    }

    /// Expansion coefficients c_n = int Q(rho, 0) R_n(rho) rho drho of the
    /// initial Gaussian; the residual 1 - sum c_n^2 is recorded on the
    /// returned state.
    pub fn project_gaussian(&self) -> RadialState {
        let g = self.gaussian_on_grid();
        let nk = self.quad.len();
        let mut coeffs = Vec::with_capacity(self.modes.len());
        let mut norm_in_basis = KahanSum::new();
        for ni in 0..self.modes.len() {
            let mut acc = KahanSum::new();
            for (k, gk) in g.iter().enumerate() {
                acc.add(self.quad.weights[k] * self.quad.nodes[k] * gk * self.values[ni * nk + k]);
            }
            let c = acc.value();
            norm_in_basis.add(c * c);
            coeffs.push(Complex64::new(c, 0.0));
        }
        RadialState {
            m: self.m,
            coeffs,
            norm_in_basis: norm_in_basis.value(),
        }
    }

    /// Q(rho_k, t) = sum_n c_n R_n(rho_k) e^{-i E_n t} on the grid.
    pub fn evolve_on_grid(&self, state: &RadialState, t: f64) -> Result<Vec<Complex64>> {
        if t < 0.0 {
            return Err(Error::Domain(format!("time must be >= 0, got {t}")));
        }
        let phased = self.phased_coeffs(state, t);
        let nk = self.quad.len();
        let mut out = vec![Complex64::new(0.0, 0.0); nk];
        for (ni, c) in phased.iter().enumerate() {
            for (k, o) in out.iter_mut().enumerate() {
                *o += c * self.values[ni * nk + k];
            }
        }
        Ok(out)
    }

    /// Q(rho, t) at a single radius.
    pub fn evolve_at(&self, state: &RadialState, t: f64, rho: f64) -> Result<Complex64> {
        if t < 0.0 {
            return Err(Error::Domain(format!("time must be >= 0, got {t}")));
        }
        let phased = self.phased_coeffs(state, t);
        let mut acc = Complex64::new(0.0, 0.0);
        for (ni, c) in phased.iter().enumerate() {
            acc += c * self.eval_mode(ni + 1, rho);
        }
        Ok(acc)
    }

    fn phased_coeffs(&self, state: &RadialState, t: f64) -> Vec<Complex64> {
        state
            .coeffs
            .iter()
            .zip(&self.modes)
            .map(|(c, mode)| c * Complex64::cis(-mode.energy * t))
            .collect()
    }

    /// Mean radius <rho(t)> = int |Q|^2 rho^2 drho, renormalized by the
    /// in-basis norm so the completeness residual does not bias it.
    pub fn mean_radius(&self, state: &RadialState, t: f64) -> Result<f64> {
        let q = self.evolve_on_grid(state, t)?;
        let mut acc = KahanSum::new();
        for (k, v) in q.iter().enumerate() {
            acc.add(self.quad.weights[k] * self.quad.nodes[k].powi(2) * v.norm_sqr());
        }
        Ok(acc.value() / state.norm_in_basis)
    }

    /// Mean mode energy sum |c_n|^2 E_n, conserved under evolution.
    pub fn mean_energy(&self, state: &RadialState) -> f64 {
        let mut acc = KahanSum::new();
        for (c, mode) in state.coeffs.iter().zip(&self.modes) {
            acc.add(c.norm_sqr() * mode.energy);
        }
        acc.value() / state.norm_in_basis
    }

    /// Re-project a grid wave function onto the basis.
    pub fn project_grid(&self, q: &[Complex64]) -> Vec<Complex64> {
        let nk = self.quad.len();
        assert_eq!(q.len(), nk);
        let mut out = Vec::with_capacity(self.modes.len());
        for ni in 0..self.modes.len() {
            let mut re = KahanSum::new();
            let mut im = KahanSum::new();
            for (k, qk) in q.iter().enumerate() {
                let w = self.quad.weights[k] * self.quad.nodes[k] * self.values[ni * nk + k];
                re.add(w * qk.re);
                im.add(w * qk.im);
            }
            out.push(Complex64::new(re.value(), im.value()));
        }
        out
    }

    pub fn quad(&self) -> &GaussLegendre {
        &self.quad
    }
}

/// Expansion of the radial wave function of one angular momentum.
#[derive(Debug, Clone)]
pub struct RadialState {
    pub m: i64,
    pub coeffs: Vec<Complex64>,
    /// sum |c_n|^2 captured by the truncated basis.
    pub norm_in_basis: f64,
}

impl RadialState {
    /// Completeness residual 1 - sum |c_n|^2.
    pub fn residual(&self) -> f64 {
        1.0 - self.norm_in_basis
    }
}

/// Build a basis large enough that the Gaussian projection residual drops
/// below `residual_target`, doubling the mode count from the request in
/// `params` (at least 64) up to a hard cap of 1024.
pub fn project_initial_auto(
    params: &BoxParams,
    m: i64,
    residual_target: f64,
) -> Result<(RadialBasis, RadialState)> {
    let mut n_max = params.n_max.max(64);
    loop {
        let attempt = BoxParams { n_max, ..*params };
        let basis = RadialBasis::new(&attempt, m)?;
        let state = basis.project_gaussian();
        if state.residual() < residual_target || n_max >= 1024 {
            return Ok((basis, state));
        }
        n_max *= 2;
    }
}

/// Angular slice of the two-dimensional field at fixed radius.
#[derive(Debug, Clone)]
pub struct FieldSlice {
    pub rho: f64,
    pub time: f64,
    values: Vec<Complex64>,
}

impl FieldSlice {
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
}

/// Combine the angular spectrum with per-|m| radial amplitudes at one
/// radius: Psi(rho, phi) = (1/sqrt(2 pi)) sum_m zeta_m e^{i m phi} Q_|m|.
/// Every populated |m| must appear in `q_slice`.
pub fn assemble_field(
    zeta: &AngularSpectrum,
    q_slice: &BTreeMap<i64, Complex64>,
    rho: f64,
    time: f64,
    n_grid: usize,
) -> Result<FieldSlice> {
    let m_max = zeta.m_max() as i64;
    for m in 0..=m_max {
        let populated = zeta.amp(m).norm() > POPULATED_EPS || zeta.amp(-m).norm() > POPULATED_EPS;
        if populated && !q_slice.contains_key(&m) {
            return Err(Error::MissingState(format!(
                "no radial amplitude for populated angular momentum |m| = {m}"
            )));
        }
    }
    let mut values = vec![Complex64::new(0.0, 0.0); n_grid];
    for (j, v) in values.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in -m_max..=m_max {
            let amp = zeta.amp(m);
            if amp.norm() <= POPULATED_EPS {
                continue;
            }
            let q = q_slice[&m.abs()];
            let r = (m * j as i64).rem_euclid(n_grid as i64) as f64;
            acc += amp * q * Complex64::cis(TAU * r / n_grid as f64);
        }
        *v = acc / TAU.sqrt();
    }
    Ok(FieldSlice { rho, time, values })
}

/// Field slices at several times: projects the Gaussian once per populated
/// |m| (in parallel, m-ordered), evolves to each time at the slice radius,
/// then assembles the angular sums.
pub fn field_slices(
    zeta: &AngularSpectrum,
    params: &BoxParams,
    rho_slice: f64,
    times: &[f64],
    n_grid: usize,
    residual_target: f64,
) -> Result<Vec<FieldSlice>> {
    let m_max = zeta.m_max() as i64;
    let m_list: Vec<i64> = (0..=m_max)
        .filter(|&m| zeta.amp(m).norm() > POPULATED_EPS || zeta.amp(-m).norm() > POPULATED_EPS)
        .collect();
    let per_m: Result<Vec<(i64, Vec<Complex64>)>> = m_list
        .par_iter()
        .map(|&m| {
            let (basis, state) = project_initial_auto(params, m, residual_target)?;
            let mut qs = Vec::with_capacity(times.len());
            for &t in times {
                qs.push(basis.evolve_at(&state, t, rho_slice)?);
            }
            Ok((m, qs))
        })
        .collect();
    let per_m = per_m?;
    let mut out = Vec::with_capacity(times.len());
    for (ti, &t) in times.iter().enumerate() {
        let q_slice: BTreeMap<i64, Complex64> = per_m.iter().map(|(m, qs)| (*m, qs[ti])).collect();
        out.push(assemble_field(zeta, &q_slice, rho_slice, t, n_grid)?);
    }
    Ok(out)
}

/// Mean-radius history of one angular momentum.
#[derive(Debug, Clone)]
pub struct RadialTrace {
    pub times: Vec<f64>,
    pub mean_rho: Vec<f64>,
    pub residual: f64,
}

pub fn mean_radius_trace(params: &BoxParams, m: i64, times: &[f64]) -> Result<RadialTrace> {
    let (basis, state) = project_initial_auto(params, m, 1e-3)?;
    let mean_rho: Result<Vec<f64>> = times
        .par_iter()
        .map(|&t| basis.mean_radius(&state, t))
        .collect();
    Ok(RadialTrace {
        times: times.to_vec(),
        mean_rho: mean_rho?,
        residual: state.residual(),
    })
}
