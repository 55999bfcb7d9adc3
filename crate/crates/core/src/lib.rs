//! Matter-wave optics on a circular lattice formed by two counterrotating
//! Laguerre-Gaussian beams: angular diffraction and free evolution on a
//! ring, band structure of the azimuthal lattice, and radial dispersion
//! inside a hard-wall cylindrical box.
//!
//! All quantities are dimensionless with `hbar = 1`: angular evolution is
//! controlled by the rotational constant `xi` (phases `xi * t * m^2`),
//! radial evolution by the box constant `lambda` (energies
//! `lambda * alpha^2` over Bessel zeros `alpha`), and the lattice kick by
//! the pulse area.

pub mod angular;
pub mod bands;
pub mod checks;
pub mod error;
pub mod quad;
pub mod radial;
pub mod specfun;

pub use error::{Error, Result};
