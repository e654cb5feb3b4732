//! Real-order Bessel functions and a sign-change root scanner.
//!
//! `J`/`Y` use Temme's series for small arguments and Steed's continued
//! fraction otherwise, tied together by the Wronskian; `I`/`K` use the same
//! split plus Hankel's expansion for large arguments. Derivatives come from
//! the recurrences, so Wronskian identities hold to rounding.

mod ik;
mod jy;
mod roots;
mod temme;

pub use ik::{bessel_ik, bessel_ik_scaled, ModifiedBessel, SCALE_THRESHOLD};
pub use jy::{bessel_j, bessel_jy, bessel_y, cross_jy, cross_jy_dk, BesselJY};
pub use roots::{brent_root, find_positive_roots, find_positive_roots_with_step, RootList};

use crate::error::{Error, Result};

/// Non-negative Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    /// Largest order the evaluators are validated for.
    pub const MAX: f64 = 50.0;

    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::domain("Order::new", format!("order must be finite and >= 0, got {nu}")));
        }
        Ok(Order(nu))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_arg(func: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(func, format!("argument must be finite and > 0, got {x}")));
    }
    Ok(())
}
