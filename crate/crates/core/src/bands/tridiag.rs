//! Eigendecomposition of real symmetric tridiagonal matrices by the
//! implicit-shift QL iteration with accumulated rotations. A diagonal
//! input passes through untouched, so exactly representable spectra stay
//! exact.

use crate::error::{Error, Result};

/// Eigenvalues (ascending) and orthonormal eigenvectors of the matrix with
/// diagonal `diag` and off-diagonal `off`.
///
/// Eigenvectors are returned column-major: component i of vector k is
/// `vecs[i * n + k]`. Each vector's largest-magnitude component is made
/// positive so the decomposition is reproducible.
pub fn eigen_symmetric_tridiagonal(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert!(n >= 1);
    assert_eq!(off.len(), n - 1);

    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Look for a negligible subdiagonal element to split at.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Accuracy(
                    "tridiagonal QL failed to converge in 50 iterations".to_string(),
                ));
            }
            // Wilkinson-style shift from the leading 2x2.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort ascending, permuting eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vecs = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        // Fix the overall sign by the largest-|component|.
        let mut big = 0.0f64;
        let mut sign = 1.0f64;
        for i in 0..n {
            let v = z[i * n + old_k];
            if v.abs() > big {
                big = v.abs();
                sign = if v < 0.0 { -1.0 } else { 1.0 };
            }
        }
        for i in 0..n {
            vecs[i * n + new_k] = sign * z[i * n + old_k];
        }
    }
    Ok((values, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(diag: &[f64], off: &[f64], val: f64, vec: &[f64]) -> f64 {
        let n = diag.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut hv = diag[i] * vec[i];
            if i > 0 {
                hv += off[i - 1] * vec[i - 1];
            }
            if i + 1 < n {
                hv += off[i] * vec[i + 1];
            }
            worst = worst.max((hv - val * vec[i]).abs());
        }
        worst
    }

    #[test]
    fn diagonal_matrix_is_exact() {
        let diag = [4.0, 1.0, 9.0, 0.0, 16.0];
        let off = [0.0; 4];
        let (vals, _) = eigen_symmetric_tridiagonal(&diag, &off).unwrap();
        assert_eq!(vals, vec![0.0, 1.0, 4.0, 9.0, 16.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let (vals, vecs) = eigen_symmetric_tridiagonal(&[2.0, 2.0], &[1.0]).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
        let s = 0.5f64.sqrt();
        assert!((vecs[0].abs() - s).abs() < 1e-14);
        assert!((vecs[2].abs() - s).abs() < 1e-14);
    }

    #[test]
    fn free_laplacian_modes() {
        // Dirichlet second-difference matrix: eigenvalues
        // 2 - 2 cos(k pi / (n+1)).
        let n = 24;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let (vals, vecs) = eigen_symmetric_tridiagonal(&diag, &off).unwrap();
        for k in 1..=n {
            let want = 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((vals[k - 1] - want).abs() < 1e-12);
        }
        // Residuals and orthonormality.
        for k in 0..n {
            let vec: Vec<f64> = (0..n).map(|i| vecs[i * n + k]).collect();
            assert!(residual(&diag, &off, vals[k], &vec) < 1e-12);
        }
        for k1 in 0..n {
            for k2 in 0..n {
                let dot: f64 = (0..n).map(|i| vecs[i * n + k1] * vecs[i * n + k2]).sum();
                let want = if k1 == k2 { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn random_like_matrix_reconstructs() {
        // Deterministic pseudo-random entries; verify H = V D V^T.
        let n = 40;
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let diag: Vec<f64> = (0..n).map(|_| 10.0 * next()).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| 4.0 * next()).collect();
        let (vals, vecs) = eigen_symmetric_tridiagonal(&diag, &off).unwrap();
        let scale: f64 = vals.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        for k in 0..n {
            let vec: Vec<f64> = (0..n).map(|i| vecs[i * n + k]).collect();
            assert!(residual(&diag, &off, vals[k], &vec) < 1e-13 * scale.max(1.0));
        }
        let mut prev = f64::NEG_INFINITY;
        for &v in &vals {
            assert!(v >= prev);
            prev = v;
        }
    }
}
