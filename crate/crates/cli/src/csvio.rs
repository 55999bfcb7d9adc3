//! CSV rendering and parsing with pinned schemas. Numbers are written
//! with 17 significant digits so every double round-trips exactly, and
//! files land atomically (temp file + rename).

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use circlat::angular::{AngularProfile, AngularSpectrum};
use circlat::bands::{BandStructure, PotentialGrid};
use circlat::radial::{FieldSlice, RadialTrace};

use crate::CliError;

pub const SPECTRUM_HEADER: &str = "m,re,im,prob";
pub const PROFILE_HEADER: &str = "phi,re,im,prob";
pub const BANDS_HEADER: &str = "q,band,energy";
pub const TRACE_HEADER: &str = "lambda_t,mean_rho";
pub const SLICE_HEADER: &str = "phi,prob";
pub const GRID_HEADER: &str = "x,y,v";

/// 17 significant digits: exact round trip for f64.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
        f.write_all(bytes)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
        f.sync_all().ok();
    }
    fs::rename(&tmp, path)
        .map_err(|e| CliError::Io(format!("cannot move into place {}: {e}", path.display())))
}

pub fn spectrum_csv(spec: &AngularSpectrum) -> String {
    let mut out = String::with_capacity(64 * (2 * spec.m_max() + 2));
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for m in -(spec.m_max() as i64)..=(spec.m_max() as i64) {
        let a = spec.amp(m);
        out.push_str(&format!(
            "{m},{},{},{}\n",
            fmt(a.re),
            fmt(a.im),
            fmt(a.norm_sqr())
        ));
    }
    out
}

pub fn profile_csv(profile: &AngularProfile) -> String {
    let mut out = String::with_capacity(80 * (profile.n_grid() + 1));
    out.push_str(PROFILE_HEADER);
    out.push('\n');
    for (j, v) in profile.values().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt(profile.phi(j)),
            fmt(v.re),
            fmt(v.im),
            fmt(v.norm_sqr())
        ));
    }
    out
}

pub fn bands_csv(bands: &BandStructure) -> String {
    let mut out = String::new();
    out.push_str(BANDS_HEADER);
    out.push('\n');
    for q in bands.q_values() {
        for band in 0..bands.spec.n_bands {
            out.push_str(&format!(
                "{q},{band},{}\n",
                fmt(bands.state(q, band).energy)
            ));
        }
    }
    out
}

pub fn trace_csv(trace: &RadialTrace) -> String {
    let mut out = String::new();
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for (t, r) in trace.times.iter().zip(&trace.mean_rho) {
        out.push_str(&format!("{},{}\n", fmt(*t), fmt(*r)));
    }
    out
}

pub fn slice_csv(slice: &FieldSlice) -> String {
    let mut out = String::new();
    out.push_str(SLICE_HEADER);
    out.push('\n');
    for (j, p) in slice.prob().iter().enumerate() {
        out.push_str(&format!("{},{}\n", fmt(slice.phi(j)), fmt(*p)));
    }
    out
}

pub fn grid_csv(grid: &PotentialGrid) -> String {
    let mut out = String::with_capacity(48 * grid.values.len());
    out.push_str(GRID_HEADER);
    out.push('\n');
    for iy in 0..grid.n_pixels {
        for ix in 0..grid.n_pixels {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt(grid.coord(ix)),
                fmt(grid.coord(iy)),
                fmt(grid.value(ix, iy))
            ));
        }
    }
    out
}

fn read_rows<'a>(
    path: &Path,
    text: &'a str,
    expected_header: &str,
) -> Result<Vec<&'a str>, CliError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != expected_header {
        return Err(CliError::Schema {
            path: path.display().to_string(),
            expected: expected_header.to_string(),
            found: header.to_string(),
        });
    }
    Ok(lines.filter(|l| !l.trim().is_empty()).collect())
}

fn field(path: &Path, row: &str, idx: usize) -> Result<f64, CliError> {
    row.split(',')
        .nth(idx)
        .and_then(|s| s.trim().parse::<f64>().ok())
        .ok_or_else(|| CliError::Io(format!("{}: malformed numeric row {row:?}", path.display())))
}

/// Read a spectrum file back; rows must cover m = -m_max ..= m_max
/// contiguously.
pub fn read_spectrum(path: &Path) -> Result<AngularSpectrum, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let rows = read_rows(path, &text, SPECTRUM_HEADER)?;
    if rows.len() % 2 == 0 || rows.is_empty() {
        return Err(CliError::Io(format!(
            "{}: spectrum needs an odd number of rows, got {}",
            path.display(),
            rows.len()
        )));
    }
    let m_max = (rows.len() - 1) / 2;
    let mut amps = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let m = field(path, row, 0)? as i64;
        if m != i as i64 - m_max as i64 {
            return Err(CliError::Io(format!(
                "{}: rows must run contiguously from -m_max, found m = {m} at row {i}",
                path.display()
            )));
        }
        amps.push(Complex64::new(field(path, row, 1)?, field(path, row, 2)?));
    }
    Ok(AngularSpectrum::from_amps(m_max, amps))
}

/// Read a profile file back; the phi column must be the uniform grid.
pub fn read_profile(path: &Path) -> Result<AngularProfile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let rows = read_rows(path, &text, PROFILE_HEADER)?;
    if rows.is_empty() {
        return Err(CliError::Io(format!("{}: empty profile", path.display())));
    }
    let n = rows.len();
    let mut values = Vec::with_capacity(n);
    for (j, row) in rows.iter().enumerate() {
        let phi = field(path, row, 0)?;
        let expect = std::f64::consts::TAU * j as f64 / n as f64;
        if (phi - expect).abs() > 1e-12 {
            return Err(CliError::Io(format!(
                "{}: phi column is not the uniform grid at row {j}",
                path.display()
            )));
        }
        values.push(Complex64::new(field(path, row, 1)?, field(path, row, 2)?));
    }
    Ok(AngularProfile::from_values(values))
}
