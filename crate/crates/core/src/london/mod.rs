//! Magnetostatics of a flux line wrapped in a London superconducting shell.
//!
//! Everything is axisymmetric and uniform along the axis. The primary unknown
//! is the reduced flux function `a(r) = Phi(r) / 2 pi` with fluxes in units of
//! the flux quantum, so `B_z = a'(r) / r`. Inside the shell
//! `d/dr (a'/r) = beta^2 (a - a_q) / r`, where `a_q = Phi_q / 2 pi` carries the
//! trapped quantized flux.

mod approx;
mod currents;
mod decompose;
mod exact;
mod profile;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::Annulus;

pub use approx::solve_london_approx;
pub use currents::{surface_current_summary, SlopeFit, SurfaceCurrentSummary};
pub use decompose::{source_decomposition, SourceDecomposition};
pub use exact::{solve_london_exact, solve_london_exact_with_report, solve_vacuum, MatchingReport};
pub use profile::{flux_within, FieldProfile, FieldSample, Form, Region, Segment, ShellTerm};

/// Radii of the coil `a`, shell `[b, c]`, electron annulus `[d, e]` and the
/// electron sheet `r_e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub r_e: f64,
}

impl Geometry {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, r_e: f64) -> Result<Self> {
        let g = Geometry { a, b, c, d, e, r_e };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let Geometry { a, b, c, d, e, r_e } = *self;
        if ![a, b, c, d, e, r_e].iter().all(|v| v.is_finite()) {
            return Err(Error::Geometry("all radii must be finite".into()));
        }
        if !(0.0 < a && a < b && b < c && c < d && d <= r_e && r_e < e) {
            return Err(Error::Geometry(format!(
                "need 0 < a < b < c < d <= r_e < e, got a={a}, b={b}, c={c}, d={d}, e={e}, r_e={r_e}"
            )));
        }
        Ok(())
    }

    pub fn annulus(&self) -> Annulus {
        Annulus { d: self.d, e: self.e }
    }

    pub fn shell_width(&self) -> f64 {
        self.c - self.b
    }

    pub fn shell_mid(&self) -> f64 {
        0.5 * (self.b + self.c)
    }

    pub(crate) fn boundaries(&self) -> [(f64, f64, Region); 5] {
        [
            (0.0, self.a, Region::Core),
            (self.a, self.b, Region::Gap),
            (self.b, self.c, Region::Shell),
            (self.c, self.r_e, Region::Outer),
            (self.r_e, f64::INFINITY, Region::Exterior),
        ]
    }
}

/// Inverse penetration depth and the derived gap coefficient
/// `alpha = 1 / (2 beta b + (beta b)^2 - (beta a)^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LondonParams {
    pub beta: f64,
    pub alpha: f64,
}

impl LondonParams {
    pub fn new(beta: f64, geom: &Geometry) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::param("beta", format!("must be positive and finite, got {beta}")));
        }
        let bb = beta * geom.b;
        let ba = beta * geom.a;
        let alpha = 1.0 / (2.0 * bb + bb * bb - ba * ba);
        Ok(LondonParams { beta, alpha })
    }

    /// `beta (c - b)`, the shell thickness in penetration depths.
    pub fn thickness(&self, geom: &Geometry) -> f64 {
        self.beta * geom.shell_width()
    }
}

/// Applied coil flux `phi_a` (flux quanta), electron sheet field `b_e` and
/// whether the shell is superconducting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceConfig {
    pub phi_a: f64,
    pub b_e: f64,
    pub include_shield: bool,
}

impl SourceConfig {
    pub fn new(phi_a: f64, b_e: f64, include_shield: bool) -> Result<Self> {
        if !phi_a.is_finite() {
            return Err(Error::param("phi_a", format!("must be finite, got {phi_a}")));
        }
        if !b_e.is_finite() {
            return Err(Error::param("b_e", format!("must be finite, got {b_e}")));
        }
        Ok(SourceConfig { phi_a, b_e, include_shield })
    }
}

/// Trapped flux: `phi_q = l_q / 2` flux quanta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FluxState {
    pub l_q: i64,
}

impl FluxState {
    pub fn new(l_q: i64) -> Self {
        FluxState { l_q }
    }

    pub fn phi_q(&self) -> f64 {
        self.l_q as f64 / 2.0
    }

    /// `phi_q / 2 pi`.
    pub fn reduced(&self) -> f64 {
        self.phi_q() / (2.0 * PI)
    }
}

/// Nearest half-integer flux to `phi_a`; ties go to the smaller `|l|`, then
/// to the smaller `l`.
pub fn quantized_flux(phi_a: f64) -> Result<FluxState> {
    if !phi_a.is_finite() || phi_a.abs() > 1e15 {
        return Err(Error::param("phi_a", format!("must be finite and below 1e15, got {phi_a}")));
    }
    let t = 2.0 * phi_a;
    let lo = t.floor();
    let hi = lo + 1.0;
    let (dlo, dhi) = (t - lo, hi - t);
    let l = if dlo < dhi {
        lo
    } else if dhi < dlo {
        hi
    } else if lo.abs() != hi.abs() {
        if lo.abs() < hi.abs() {
            lo
        } else {
            hi
        }
    } else {
        lo
    };
    Ok(FluxState { l_q: l as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(phi: f64) -> i64 {
        (-8i64..=8)
            .min_by(|&x, &y| {
                let dx = (x as f64 / 2.0 - phi).abs();
                let dy = (y as f64 / 2.0 - phi).abs();
                dx.total_cmp(&dy).then(x.abs().cmp(&y.abs())).then(x.cmp(&y))
            })
            .unwrap()
    }

    #[test]
    fn quantized_flux_examples() {
        assert_eq!(quantized_flux(0.0).unwrap(), FluxState::new(0));
        assert_eq!(quantized_flux(0.6).unwrap().phi_q(), 0.5);
        assert_eq!(quantized_flux(0.25).unwrap().l_q, 0);
        assert_eq!(quantized_flux(-0.25).unwrap().l_q, 0);
        assert_eq!(quantized_flux(0.75).unwrap().l_q, 1);
        assert_eq!(quantized_flux(-0.75).unwrap().l_q, -1);
        assert!(quantized_flux(f64::NAN).is_err());
    }

    #[test]
    fn quantized_flux_matches_brute_force() {
        for i in -150..=150 {
            let phi = i as f64 * 0.025;
            assert_eq!(quantized_flux(phi).unwrap().l_q, brute(phi), "phi = {phi}");
        }
    }

    #[test]
    fn geometry_ordering() {
        assert!(Geometry::new(1.0, 2.0, 3.0, 4.0, 6.0, 5.0).is_ok());
        assert!(Geometry::new(1.0, 2.0, 3.0, 4.0, 6.0, 4.0).is_ok());
        assert!(Geometry::new(1.0, 2.0, 3.0, 4.0, 6.0, 3.5).is_err());
        assert!(Geometry::new(1.0, 2.0, 3.0, 4.0, 4.0, 4.0).is_err());
        assert!(Geometry::new(2.0, 2.0, 3.0, 4.0, 6.0, 5.0).is_err());
    }

    #[test]
    fn alpha_definition() {
        let g = Geometry::new(1.0, 2.0, 3.0, 4.0, 6.0, 5.0).unwrap();
        let lp = LondonParams::new(50.0, &g).unwrap();
        assert_eq!(lp.alpha, 1.0 / (200.0 + 10000.0 - 2500.0));
        assert!(LondonParams::new(0.0, &g).is_err());
        assert_eq!(lp.thickness(&g), 50.0);
    }
}
