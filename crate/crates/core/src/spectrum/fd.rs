//! Finite-difference oracle for the annulus spectrum.
//!
//! With `u = sqrt(r) psi` the radial operator becomes
//! `-u'' + (nu^2 - 1/4) u / r^2`, which central differences turn into a
//! symmetric tridiagonal matrix. Its lowest eigenvalues are isolated by
//! Sturm-sequence bisection; nothing here touches Bessel functions.

use crate::error::{Error, Result};
use crate::specfun::Order;

use super::Annulus;

/// Symmetric tridiagonal matrix with constant off-diagonal.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: f64,
}

impl SymTridiagonal {
    /// Number of eigenvalues strictly below `x` (Sturm count via LDL^T).
    pub fn count_below(&self, x: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            q = if i == 0 { a - x } else { a - x - off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (a.abs() + self.off.abs());
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        if index >= self.diag.len() {
            return Err(Error::param("index", format!("{index} >= dimension {}", self.diag.len())));
        }
        let spread = 2.0 * self.off.abs();
        let mut lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min) - spread;
        let mut hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + spread;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * mid.abs() {
                return Ok(mid);
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NoConvergence { what: "Sturm bisection", iterations: 400 })
    }
}

/// Discretisation with `intervals` uniform cells (so `intervals - 1` unknowns).
pub fn fd_matrix(ann: Annulus, nu: Order, intervals: usize) -> SymTridiagonal {
    let h = ann.width() / intervals as f64;
    let h2 = h * h;
    let c = nu.value() * nu.value() - 0.25;
    let diag = (1..intervals)
        .map(|i| {
            let r = ann.d + i as f64 * h;
            2.0 / h2 + c / (r * r)
        })
        .collect();
    SymTridiagonal { diag, off: -1.0 / h2 }
}

/// Lowest `n_max` eigenvalues on a single grid (second-order accurate).
pub fn fd_eigenvalues(ann: Annulus, nu: Order, intervals: usize, n_max: usize) -> Result<Vec<f64>> {
    if intervals < 64 {
        return Err(Error::param("N", format!("grid needs at least 64 cells, got {intervals}")));
    }
    if n_max == 0 || n_max >= intervals {
        return Err(Error::param("n_max", format!("must be in 1..{intervals}")));
    }
    let m = fd_matrix(ann, nu, intervals);
    (0..n_max).map(|i| m.eigenvalue(i)).collect()
}

/// Richardson-extrapolated eigenvalues from grids `N` and `2N`:
/// `(4 E_{2N} - E_N) / 3`, leaving an `O(h^4)` error.
pub fn fd_spectrum_oracle(ann: Annulus, nu: Order, intervals: usize, n_max: usize) -> Result<Vec<f64>> {
    let coarse = fd_eigenvalues(ann, nu, intervals, n_max)?;
    let fine = fd_eigenvalues(ann, nu, 2 * intervals, n_max)?;
    Ok(coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect())
}
