//! Radial spectrum of an electron confined to the annulus `d <= r <= e`
//! threaded by `F` flux quanta, with hard walls and `hbar = 2m = 1` (so the
//! energy of a level is `k^2`).
//!
//! The analytic route finds the zeros of the `J/Y` cross product; the
//! finite-difference route in [`fd`] is kept independent of it and serves as
//! the oracle.

mod eigenfunction;
pub mod fd;
mod sweep;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{cross_jy, cross_jy_dk, find_positive_roots_with_step, Order};

pub use eigenfunction::{eigenfunction_eval, RadialEigenfunction};
pub use fd::fd_spectrum_oracle;
pub use sweep::{ab_shift_sweep, Level, SpectrumTable};

/// Hard-walled annulus holding the electron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub d: f64,
    pub e: f64,
}

impl Annulus {
    pub fn new(d: f64, e: f64) -> Result<Self> {
        if !(d.is_finite() && e.is_finite() && d > 0.0 && d < e) {
            return Err(Error::Geometry(format!("annulus requires 0 < d < e, got d = {d}, e = {e}")));
        }
        Ok(Annulus { d, e })
    }

    pub fn width(&self) -> f64 {
        self.e - self.d
    }
}

/// One eigenstate `e^{i l phi} psi_n(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub l: i64,
    /// Radial index, 1-based.
    pub n: usize,
    /// Enclosed flux in flux quanta.
    pub flux: f64,
    pub nu: Order,
    pub k: f64,
    pub energy: f64,
    /// `|cross(k)| / (k |d cross / dk|)`, the relative position error of `k`.
    pub residual: f64,
}

impl Mode {
    pub fn relabel(self, l: i64, flux: f64) -> Self {
        Mode { l, flux, ..self }
    }
}

/// `|l + F|`.
pub fn effective_order(l: i64, flux: f64) -> Order {
    Order::new((l as f64 + flux).abs()).expect("|l + F| is a valid order for finite F")
}

/// The `n_max` lowest Dirichlet levels of order `nu` on the annulus.
///
/// Modes come back with `l = 0` and `flux = nu`; callers relabel them.
pub fn annulus_eigenvalues(ann: Annulus, nu: Order, n_max: usize) -> Result<Vec<Mode>> {
    if n_max == 0 {
        return Err(Error::param("n_max", "must be >= 1"));
    }
    let (d, e) = (ann.d, ann.e);
    let spacing = PI / ann.width();
    let step = spacing / 16.0;

    // Comparison bounds on k_1 and k_n from the extremes of (nu^2 - 1/4)/r^2.
    let c = nu.value() * nu.value() - 0.25;
    let (v_min, v_max) = if c >= 0.0 { (c / (e * e), c / (d * d)) } else { (c / (d * d), c / (e * e)) };
    let e_low = spacing * spacing + v_min;
    let k_start = if e_low > 0.0 { 0.5 * e_low.sqrt() } else { 1e-3 * step };
    let mut k_end = 1.05 * ((n_max as f64 * spacing).powi(2) + v_max.max(0.0)).sqrt() + 2.0 * step;

    let f = |k: f64| cross_jy(nu, k, d, e).unwrap_or(f64::NAN);
    let roots = loop {
        match find_positive_roots_with_step(f, k_start, k_end, n_max, step) {
            Ok(list) if list.len() == n_max => break list,
            Ok(_) | Err(Error::NoRootsFound { .. }) => k_end *= 1.5,
            Err(err) => return Err(err),
        }
    };

    roots
        .roots
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let value = cross_jy(nu, k, d, e)?;
            let slope = cross_jy_dk(nu, k, d, e)?;
            Ok(Mode {
                l: 0,
                n: i + 1,
                flux: nu.value(),
                nu,
                k,
                energy: k * k,
                residual: value.abs() / (slope.abs() * k),
            })
        })
        .collect()
}
