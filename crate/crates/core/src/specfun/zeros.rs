//! Positive zeros of J_m: bracket from an asymptotic estimate, bisect,
//! then polish with Newton using J_m' = J_{m-1} - (m/x) J_m.

use crate::error::{Error, Result};

use super::bessel::jn_nonneg;

/// Ordered table of the first zeros of one Bessel order.
#[derive(Debug, Clone)]
pub struct BesselZeroTable {
    order: u32,
    zeros: Vec<f64>,
}

impl BesselZeroTable {
    /// Compute the first `count` positive zeros of J_order.
    pub fn new(order: u32, count: usize) -> Result<Self> {
        let mut zeros = Vec::with_capacity(count);
        let mut prev = 0.0;
        for i in 0..count {
            let z = if i == 0 {
                first_zero(order)?
            } else {
                next_zero(order, prev)?
            };
            prev = z;
            zeros.push(z);
        }
        Ok(BesselZeroTable { order, zeros })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// The n-th zero, 1-indexed.
    pub fn zero(&self, index: usize) -> f64 {
        self.zeros[index - 1]
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }
}

/// The `index`-th positive zero of J_order (index >= 1).
pub fn bessel_zero(order: u32, index: u32) -> Result<f64> {
    if index == 0 {
        return Err(Error::Domain("bessel_zero: index must be >= 1".to_string()));
    }
    let table = BesselZeroTable::new(order, index as usize)?;
    Ok(table.zero(index as usize))
}

fn first_zero(order: u32) -> Result<f64> {
    let guess = if order == 0 {
        2.404825557695773
    } else {
        let m = order as f64;
        let c = m.cbrt();
        m + 1.855757 * c + 1.033150 / c
    };
    // J_order is positive on (0, j_1), so any start below the estimate works.
    let lo = (guess - 3.0).max(1e-3);
    refine_from(order, lo)
}

fn next_zero(order: u32, prev: f64) -> Result<f64> {
    // Zero spacing exceeds pi for order >= 1 and 3.1 for order 0; early
    // spacings at high order are larger, so march until the sign flips.
    refine_from(order, prev + 0.25)
}

fn refine_from(order: u32, start: f64) -> Result<f64> {
    let f = |x: f64| jn_nonneg(order, x);
    let step = 0.5;
    let mut lo = start;
    let mut flo = f(lo);
    let mut hi = lo;
    let mut found = false;
    for _ in 0..200 {
        hi += step;
        let fhi = f(hi);
        if flo == 0.0 || flo.signum() != fhi.signum() {
            found = true;
            break;
        }
        lo = hi;
        flo = fhi;
    }
    if !found {
        return Err(Error::Accuracy(format!(
            "bessel zero bracket not found for order {order} from {start}"
        )));
    }
    // Bisect to ~1e-8 relative, then let Newton finish quadratically.
    let mut flo = f(lo);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if flo.signum() == fmid.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-8 * hi {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..5 {
        let jm = jn_nonneg(order, x);
        let deriv = if order == 0 {
            -jn_nonneg(1, x)
        } else {
            jn_nonneg(order - 1, x) - order as f64 / x * jm
        };
        let dx = jm / deriv;
        x -= dx;
        if dx.abs() < 1e-15 * x {
            break;
        }
    }
    Ok(x)
}
