//! Band structure of the azimuthal lattice -depth cos^2(l phi) on the
//! ring (energies in units of the rotational constant). Rotation by pi/l
//! commutes with the Hamiltonian, so eigenstates carry an integer angular
//! quasimomentum q in [-l, l) and pick up e^{-i pi q / l} under that
//! rotation; each band holds exactly 2l Bloch states, Fourier-dual to 2l
//! localized Wannier states.

mod tridiag;

pub use tridiag::eigen_symmetric_tridiagonal;

use num_complex::Complex64;

use crate::angular::AngularProfile;
use crate::error::{Error, Result};

use std::f64::consts::{PI, TAU};

/// Lattice eigenproblem parameters. `depth` is the potential depth over
/// the rotational constant; `s_max` truncates the plane-wave ladder
/// m = q + 2 l s at |s| <= s_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub helicity: u32,
    pub depth: f64,
    pub s_max: usize,
    pub n_bands: usize,
}

impl LatticeSpec {
    pub fn new(helicity: u32, depth: f64, s_max: usize, n_bands: usize) -> Result<Self> {
        if helicity == 0 {
            return Err(Error::Domain("helicity must be >= 1".to_string()));
        }
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::Domain(format!(
                "depth must be finite and >= 0, got {depth}"
            )));
        }
        if n_bands == 0 || s_max < n_bands + 5 {
            return Err(Error::Domain(format!(
                "need s_max >= n_bands + 5, got s_max = {s_max}, n_bands = {n_bands}"
            )));
        }
        Ok(LatticeSpec {
            helicity,
            depth,
            s_max,
            n_bands,
        })
    }
}

/// Lattice potential profile, -cos^2(l phi), in units of the depth.
pub fn potential(phi: f64, helicity: u32) -> f64 {
    let c = (helicity as f64 * phi).cos();
    -c * c
}

/// One Bloch eigenstate. `coeffs` are real plane-wave amplitudes on
/// m = q + 2 l s for s = -s_max ..= s_max; the energy is in units of the
/// rotational constant.
#[derive(Debug, Clone)]
pub struct BlochState {
    pub q: i64,
    pub band: usize,
    pub energy: f64,
    helicity: u32,
    coeffs: Vec<f64>,
}

impl BlochState {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn s_max(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    /// Plane-wave index m = q + 2 l s for coefficient slot `idx`.
    pub fn m_value(&self, idx: usize) -> i64 {
        let s = idx as i64 - self.s_max() as i64;
        self.q + 2 * self.helicity as i64 * s
    }

    /// Wave function (1/sqrt(2 pi)) sum_s c_s e^{i m_s phi}.
    pub fn synthesize(&self, phi: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &c) in self.coeffs.iter().enumerate() {
            acc += c * Complex64::cis(self.m_value(idx) as f64 * phi);
        }
        acc / TAU.sqrt()
    }

    /// Sample the wave function on the uniform grid of `n_grid` points.
    pub fn synthesize_grid(&self, n_grid: usize) -> AngularProfile {
        let values = (0..n_grid)
            .map(|j| self.synthesize(TAU * j as f64 / n_grid as f64))
            .collect();
        AngularProfile::from_values(values)
    }

    /// Defect of the rotation eigenvalue relation: largest
    /// |psi(phi - pi/l) - e^{-i pi q / l} psi(phi)| over sampled angles.
    pub fn translation_defect(&self) -> f64 {
        let l = self.helicity as f64;
        let bloch_phase = Complex64::cis(-PI * self.q as f64 / l);
        let mut worst = 0.0f64;
        for j in 0..64 {
            let phi = TAU * j as f64 / 64.0;
            let rotated = self.synthesize(phi - PI / l);
            worst = worst.max((rotated - bloch_phase * self.synthesize(phi)).norm());
        }
        worst
    }
}

/// All Bloch states up to `n_bands`, grouped by quasimomentum.
#[derive(Debug, Clone)]
pub struct BandStructure {
    pub spec: LatticeSpec,
    states: Vec<Vec<BlochState>>,
    pub tail_max: f64,
}

impl BandStructure {
    /// Quasimomenta of the first Brillouin zone, -l ..= l-1.
    pub fn q_values(&self) -> impl Iterator<Item = i64> + '_ {
        let l = self.spec.helicity as i64;
        -l..l
    }

    pub fn state(&self, q: i64, band: usize) -> &BlochState {
        let idx = (q + self.spec.helicity as i64) as usize;
        &self.states[idx][band]
    }

    pub fn states_in_band(&self, band: usize) -> Vec<&BlochState> {
        self.states.iter().map(|per_q| &per_q[band]).collect()
    }

    /// True when some kept eigenvector still has weight above 1e-8 on the
    /// outermost plane waves, i.e. s_max should be enlarged.
    pub fn tail_warning(&self) -> bool {
        self.tail_max > 1e-8
    }
}

/// Diagonalize the lattice Hamiltonian per quasimomentum block.
///
/// In the plane-wave ladder m = q + 2 l s the cos^2 potential couples only
/// s <-> s +- 1, giving the tridiagonal block
/// H_{s,s'} = [(q + 2 l s)^2 - depth/2] delta_{s,s'}
///            - (depth/4) (delta_{s,s'+1} + delta_{s,s'-1}).
pub fn solve_bands(spec: &LatticeSpec) -> Result<BandStructure> {
    let l = spec.helicity as i64;
    let dim = 2 * spec.s_max + 1;
    let mut states = Vec::with_capacity(2 * spec.helicity as usize);
    let mut tail_max = 0.0f64;
    for q in -l..l {
        let diag: Vec<f64> = (0..dim)
            .map(|idx| {
                let s = idx as i64 - spec.s_max as i64;
                let m = (q + 2 * l * s) as f64;
                m * m - 0.5 * spec.depth
            })
            .collect();
        let off = vec![-0.25 * spec.depth; dim - 1];
        let (vals, vecs) = eigen_symmetric_tridiagonal(&diag, &off)?;
        let mut per_q = Vec::with_capacity(spec.n_bands);
        for band in 0..spec.n_bands {
            let coeffs: Vec<f64> = (0..dim).map(|i| vecs[i * dim + band]).collect();
            tail_max = tail_max.max(coeffs[0].abs()).max(coeffs[dim - 1].abs());
            per_q.push(BlochState {
                q,
                band,
                energy: vals[band],
                helicity: spec.helicity,
                coeffs,
            });
        }
        states.push(per_q);
    }
    Ok(BandStructure {
        spec: *spec,
        states,
        tail_max,
    })
}

/// The lattice potential sampled on a Cartesian grid for display: values
/// -cos^2(l atan2(y, x)) inside the annulus, NaN sentinel outside.
#[derive(Debug, Clone)]
pub struct PotentialGrid {
    pub n_pixels: usize,
    pub extent: f64,
    pub rho_window: (f64, f64),
    pub values: Vec<f64>,
}

impl PotentialGrid {
    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + (2.0 * self.extent) * (i as f64 + 0.5) / self.n_pixels as f64
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.n_pixels + ix]
    }

    /// Count of angular wells (arcs with V < -1/2) around the mid-annulus
    /// circle, read off the sampled grid.
    pub fn angular_well_count(&self) -> usize {
        let rho = 0.5 * (self.rho_window.0 + self.rho_window.1);
        let samples = 8 * self.n_pixels;
        let mut in_well = Vec::with_capacity(samples);
        for k in 0..samples {
            let phi = TAU * k as f64 / samples as f64;
            let x = rho * phi.cos();
            let y = rho * phi.sin();
            let ix = (((x + self.extent) / (2.0 * self.extent) * self.n_pixels as f64) as usize)
                .min(self.n_pixels - 1);
            let iy = (((y + self.extent) / (2.0 * self.extent) * self.n_pixels as f64) as usize)
                .min(self.n_pixels - 1);
            in_well.push(self.value(ix, iy) < -0.5);
        }
        let mut entries = 0;
        for k in 0..samples {
            let prev = in_well[(k + samples - 1) % samples];
            if in_well[k] && !prev {
                entries += 1;
            }
        }
        entries
    }
}

pub fn potential_grid_xy(
    helicity: u32,
    n_pixels: usize,
    rho_window: (f64, f64),
) -> Result<PotentialGrid> {
    if n_pixels < 64 {
        return Err(Error::Domain(format!(
            "potential grid needs n_pixels >= 64, got {n_pixels}"
        )));
    }
    let (inner, outer) = rho_window;
    if !(0.0 < inner && inner < outer && outer.is_finite()) {
        return Err(Error::Domain(format!(
            "invalid annulus window ({inner}, {outer})"
        )));
    }
    let extent = 1.2 * outer;
    let mut values = Vec::with_capacity(n_pixels * n_pixels);
    for iy in 0..n_pixels {
        let y = -extent + (2.0 * extent) * (iy as f64 + 0.5) / n_pixels as f64;
        for ix in 0..n_pixels {
            let x = -extent + (2.0 * extent) * (ix as f64 + 0.5) / n_pixels as f64;
            let rho = x.hypot(y);
            if rho < inner || rho > outer {
                values.push(f64::NAN);
            } else {
                values.push(potential(y.atan2(x), helicity));
            }
        }
    }
    Ok(PotentialGrid {
        n_pixels,
        extent,
        rho_window,
        values,
    })
}

/// A localized Wannier state on lattice site n (well center at n pi / l).
#[derive(Debug, Clone)]
pub struct WannierState {
    pub site: i64,
    pub profile: AngularProfile,
}

/// The 2l Wannier states of one band plus any gauge diagnostics.
#[derive(Debug, Clone)]
pub struct WannierSet {
    pub band: usize,
    pub helicity: u32,
    pub states: Vec<WannierState>,
    /// Quasimomenta whose gauge could not be fixed unambiguously.
    pub gauge_warnings: Vec<i64>,
}

impl WannierSet {
    /// Largest deviation of the site-overlap matrix from the identity
    /// under the grid inner product.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in &self.states {
            for b in &self.states {
                let n = a.profile.n_grid();
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, y) in a.profile.values().iter().zip(b.profile.values()) {
                    acc += x.conj() * y;
                }
                let dot = acc * TAU / n as f64;
                let want = if a.site == b.site { 1.0 } else { 0.0 };
                worst = worst.max((dot - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest |Theta_{n+1}(phi) - Theta_n(phi - pi/l)| over the grid.
    pub fn translation_defect(&self) -> f64 {
        let l = self.helicity as usize;
        let mut worst = 0.0f64;
        for w in self.states.windows(2) {
            let n_grid = w[0].profile.n_grid();
            let shift = n_grid / (2 * l);
            for j in 0..n_grid {
                let rotated = w[0].profile.values()[(j + n_grid - shift) % n_grid];
                let d = (w[1].profile.values()[j] - rotated).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Probability weight of state `idx` inside its own well,
    /// |phi - site pi/l| <= pi/(2l).
    pub fn well_weight(&self, idx: usize) -> f64 {
        let st = &self.states[idx];
        let n_grid = st.profile.n_grid();
        let l = self.helicity as f64;
        let center = st.site as f64 * PI / l;
        let mut acc = 0.0;
        for (j, v) in st.profile.values().iter().enumerate() {
            let mut d = (TAU * j as f64 / n_grid as f64 - center).rem_euclid(TAU);
            if d > PI {
                d -= TAU;
            }
            if d.abs() <= PI / (2.0 * l) {
                acc += v.norm_sqr();
            }
        }
        acc * TAU / n_grid as f64
    }
}

/// Rotate a wave function's global phase so its value at phi = 0 is real
/// and non-negative; falls back to the discrete derivative at 0 when the
/// state vanishes there. Returns None when both are ambiguous.
fn gauge_phase(profile: &AngularProfile) -> Option<Complex64> {
    let scale = profile.values().iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let at_zero = profile.values()[0];
    if at_zero.norm() > 1e-6 * scale {
        return Some((at_zero / at_zero.norm()).conj());
    }
    let n = profile.n_grid();
    let deriv = profile.values()[1] - profile.values()[n - 1];
    if deriv.norm() > 1e-6 * scale {
        return Some((deriv / deriv.norm()).conj());
    }
    None
}

/// Build the 2l Wannier states of one band by the inverse Fourier sum
/// over gauge-fixed Bloch states,
/// Theta_n = (1/sqrt(2l)) sum_q e^{-i q pi n / l} Psi_q.
///
/// `n_grid` must be divisible by 2l so lattice translations are exact
/// grid shifts; it is enlarged to the plane-wave bandwidth if needed.
pub fn wannier_states(bands: &BandStructure, band: usize, n_grid: usize) -> Result<WannierSet> {
    let l = bands.spec.helicity;
    let two_l = 2 * l as usize;
    if band >= bands.spec.n_bands {
        return Err(Error::MissingState(format!(
            "band {band} not computed (n_bands = {})",
            bands.spec.n_bands
        )));
    }
    let m_span = 2 * l as usize * bands.spec.s_max + l as usize;
    let mut n_grid = n_grid.max(2 * m_span + 2);
    n_grid = n_grid.div_ceil(two_l) * two_l;

    let mut profiles = Vec::with_capacity(two_l);
    let mut gauge_warnings = Vec::new();
    for q in -(l as i64)..l as i64 {
        let state = bands.state(q, band);
        let grid = state.synthesize_grid(n_grid);
        match gauge_phase(&grid) {
            Some(phase) => {
                let values = grid.values().iter().map(|v| v * phase).collect();
                profiles.push(AngularProfile::from_values(values));
            }
            None => {
                gauge_warnings.push(q);
                profiles.push(grid);
            }
        }
    }

    let norm = 1.0 / (two_l as f64).sqrt();
    let mut states = Vec::with_capacity(two_l);
    for site in -(l as i64)..l as i64 {
        let mut values = vec![Complex64::new(0.0, 0.0); n_grid];
        for (qi, q) in (-(l as i64)..l as i64).enumerate() {
            let coeff = norm * Complex64::cis(-PI * q as f64 * site as f64 / l as f64);
            for (v, b) in values.iter_mut().zip(profiles[qi].values()) {
                *v += coeff * b;
            }
        }
        states.push(WannierState {
            site,
            profile: AngularProfile::from_values(values),
        });
    }
    Ok(WannierSet {
        band,
        helicity: l,
        states,
        gauge_warnings,
    })
}
