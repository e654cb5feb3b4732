use crate::error::{Error, Result};

use super::exact::{solve_shielded, solve_vacuum};
use super::profile::FieldProfile;
use super::{FluxState, Geometry, LondonParams, SourceConfig};

/// Split of a shielded solution into the coil's field, the electron's vacuum
/// field and the superconductor's response to the electron.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceDecomposition {
    /// Coil plus trapped flux, electron absent.
    pub background: FieldProfile,
    /// The electron sheet alone in vacuum.
    pub electron_vacuum: FieldProfile,
    /// Screening field induced by the electron.
    pub screening: FieldProfile,
}

impl SourceDecomposition {
    /// `background + electron_vacuum + screening`.
    pub fn total(&self) -> Result<FieldProfile> {
        self.background.try_add(&self.electron_vacuum)?.try_add(&self.screening)
    }

    /// `electron_vacuum + screening`, the field attributable to the electron.
    pub fn electron_total(&self) -> Result<FieldProfile> {
        self.electron_vacuum.try_add(&self.screening)
    }
}

/// Decomposes the shielded field at the fixed flux state `fs`.
pub fn source_decomposition(
    geom: &Geometry,
    lp: &LondonParams,
    src: &SourceConfig,
    fs: &FluxState,
) -> Result<SourceDecomposition> {
    if !src.include_shield {
        return Err(Error::param("include_shield", "decomposition needs the superconducting shell"));
    }
    let (background, _) = solve_shielded(geom, lp, src.phi_a, 0.0, fs.reduced())?;
    let (response, _) = solve_shielded(geom, lp, 0.0, src.b_e, 0.0)?;
    let electron_vacuum = solve_vacuum(geom, &SourceConfig::new(0.0, src.b_e, false)?)?;
    let screening = response.try_sub(&electron_vacuum)?;
    Ok(SourceDecomposition { background, electron_vacuum, screening })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::london::{quantized_flux, solve_london_exact};

    fn setup(beta: f64) -> (Geometry, LondonParams) {
        let g = Geometry::new(1.0, 2.0, 2.4, 3.0, 4.0, 3.5).unwrap();
        let lp = LondonParams::new(beta, &g).unwrap();
        (g, lp)
    }

    #[test]
    fn parts_sum_to_full_solution() {
        let (g, lp) = setup(50.0);
        let src = SourceConfig::new(0.6, 0.02, true).unwrap();
        let fs = quantized_flux(0.6).unwrap();
        let dec = source_decomposition(&g, &lp, &src, &fs).unwrap();
        let full = solve_london_exact(&g, &lp, &src, &fs).unwrap();
        let sum = dec.total().unwrap();
        for i in 0..=500 {
            let r = 0.01 + i as f64 * 0.01;
            let (x, y) = (full.eval(r).unwrap(), sum.eval(r).unwrap());
            assert!((x.a - y.a).abs() <= 1e-10 * x.a.abs().max(1e-3), "a at {r}");
            assert!((x.b_z - y.b_z).abs() <= 1e-10 * x.b_z.abs().max(1e-3), "B at {r}");
        }
    }

    #[test]
    fn fields_cancel_in_bulk() {
        let (g, lp) = setup(75.0);
        let b_e = 0.02;
        let src = SourceConfig::new(0.6, b_e, true).unwrap();
        let dec = source_decomposition(&g, &lp, &src, &quantized_flux(0.6).unwrap()).unwrap();
        let mid = g.shell_mid();
        let e = dec.electron_vacuum.b_z(mid).unwrap();
        let s = dec.screening.b_z(mid).unwrap();
        assert_eq!(e, b_e);
        assert!((e + s).abs() <= 1e-6 * b_e);
        assert_eq!(dec.electron_vacuum.b_z(3.2).unwrap(), b_e);
    }

    #[test]
    fn null_electron_gives_null_screening() {
        let (g, lp) = setup(50.0);
        let src = SourceConfig::new(0.6, 0.0, true).unwrap();
        let dec = source_decomposition(&g, &lp, &src, &quantized_flux(0.6).unwrap()).unwrap();
        for i in 0..=100 {
            let s = dec.screening.eval(0.05 * i as f64).unwrap();
            assert_eq!((s.a, s.b_z, s.j_phi), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn shield_required() {
        let (g, lp) = setup(50.0);
        let src = SourceConfig::new(0.6, 0.02, false).unwrap();
        assert!(source_decomposition(&g, &lp, &src, &FluxState::new(1)).is_err());
    }
}
