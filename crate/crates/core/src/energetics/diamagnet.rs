use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::london::{solve_vacuum, FieldProfile, Form, Geometry, Region, Segment, SourceConfig};

use super::{interaction_energy_aj, interaction_energy_bb, overlap_integral, terms, CurrentDistribution, EnergyLedger};

/// Linear magnetic material of relative permeability `mu` filling `[b, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiamagnetConfig {
    pub mu: f64,
}

impl DiamagnetConfig {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::param("mu", format!("permeability must be positive, got {mu}")));
        }
        Ok(DiamagnetConfig { mu })
    }
}

/// `B` of the electron sheet with the shell filled by the material. `H` is
/// uniform (`b_e`) inside `r_e`, so `B = mu b_e` in the shell.
fn electron_field(geom: &Geometry, mu: f64, b_e: f64) -> FieldProfile {
    let h = 0.5 * b_e;
    let (b, c, r_e) = (geom.b, geom.c, geom.r_e);
    let shell_const = h * (1.0 - mu) * b * b;
    let outer_const = h * (1.0 - mu) * (b * b - c * c);
    let forms = [
        Form::polynomial(0.0, h),
        Form::polynomial(0.0, h),
        Form::polynomial(shell_const, mu * h),
        Form::polynomial(outer_const, h),
        Form::polynomial(outer_const + h * r_e * r_e, 0.0),
    ];
    let segments = geom
        .boundaries()
        .into_iter()
        .zip(forms)
        .map(|((lo, hi, region), form)| Segment { lo, hi, region, form })
        .collect();
    FieldProfile::new(segments)
}

/// Ledger of the electron sheet against the coil's field with a diamagnet in
/// place of the superconductor: `int A . j_e`, `(1/4pi) int B . h_e` and
/// `(1/4pi) int B . b_e`.
pub fn diamagnet_overlap(geom: &Geometry, dc: &DiamagnetConfig, src: &SourceConfig) -> Result<EnergyLedger> {
    geom.validate()?;
    let dc = DiamagnetConfig::new(dc.mu)?;
    let background = solve_vacuum(geom, &SourceConfig::new(src.phi_a, 0.0, false)?)?;
    let electron = electron_field(geom, dc.mu, src.b_e);
    let current = CurrentDistribution::electron(geom.r_e, src.b_e)?;

    let mut bps = background.breakpoints();
    bps.extend(electron.breakpoints());
    let h_overlap = overlap_integral(
        |r| {
            let h = match electron.eval(r) {
                Ok(s) if s.region == Region::Shell => s.b_z / dc.mu,
                Ok(s) => s.b_z,
                Err(_) => f64::NAN,
            };
            0.5 * background.b_z(r).unwrap_or(f64::NAN) * h * r
        },
        0.0,
        geom.r_e,
        &bps,
    )?;

    let aj = interaction_energy_aj(&background, &current)?;
    let mut ledger = EnergyLedger::default();
    ledger.push(terms::A_DOT_JE, aj);
    ledger.push(terms::B_DOT_HE, h_overlap);
    ledger.push(terms::B_DOT_BE, interaction_energy_bb(&background, &electron)?);
    ledger.push(terms::TOTAL, aj);
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::london::flux_within;
    use std::f64::consts::PI;

    fn geom() -> Geometry {
        Geometry::new(1.0, 2.0, 3.0, 4.0, 6.0, 5.0).unwrap()
    }

    #[test]
    fn unit_permeability_is_vacuum() {
        let g = geom();
        let src = SourceConfig::new(0.6, 0.3, false).unwrap();
        let l = diamagnet_overlap(&g, &DiamagnetConfig::new(1.0).unwrap(), &src).unwrap();
        let expect = 0.6 * 0.3 / (4.0 * PI);
        for name in [terms::A_DOT_JE, terms::B_DOT_HE, terms::B_DOT_BE] {
            assert!((l.get(name).unwrap() - expect).abs() <= 1e-12 * expect, "{name}");
        }
    }

    #[test]
    fn perfect_diamagnet_limit_keeps_overlap() {
        let g = geom();
        let src = SourceConfig::new(0.6, 0.3, false).unwrap();
        for mu in [0.5, 1e-4] {
            let l = diamagnet_overlap(&g, &DiamagnetConfig::new(mu).unwrap(), &src).unwrap();
            let aj = l.get(terms::A_DOT_JE).unwrap();
            let bh = l.get(terms::B_DOT_HE).unwrap();
            assert!((aj - bh).abs() <= 1e-8 * aj.abs(), "mu {mu}");
            assert!(aj > 1e-3);
        }
    }

    #[test]
    fn field_continuity() {
        let g = geom();
        let p = electron_field(&g, 0.25, 0.3);
        for r in [2.0, 3.0, 5.0] {
            let lo = p.eval_side(r, true).unwrap().a;
            let hi = p.eval(r).unwrap().a;
            assert!((lo - hi).abs() < 1e-15);
        }
        assert!((p.b_z(2.5).unwrap() - 0.075).abs() < 1e-15);
        let flux = 0.3 * PI * (25.0 - 5.0) + 0.075 * PI * 5.0;
        assert!((flux_within(&p, 7.0).unwrap() - flux).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_positive_mu() {
        assert!(DiamagnetConfig::new(0.0).is_err());
        assert!(DiamagnetConfig::new(-1.0).is_err());
    }
}
