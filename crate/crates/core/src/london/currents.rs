use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::integrate;

use super::profile::FieldProfile;
use super::{Geometry, LondonParams};

const FIT_POINTS: usize = 9;
const FIT_DEPTHS: f64 = 4.0;

/// Least-squares slope of `ln |j_phi|` over the first few penetration depths
/// from a face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    /// `-beta` at the inner face, `+beta` at the outer.
    pub expected: f64,
    /// `|slope - expected| / beta`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceCurrentSummary {
    /// Current per unit length in `[b, (b+c)/2]`.
    pub inner_sheet: f64,
    /// Current per unit length in `[(b+c)/2, c]`.
    pub outer_sheet: f64,
    pub inner_fit: Option<SlopeFit>,
    pub outer_fit: Option<SlopeFit>,
    /// Why a fit is missing, if one is.
    pub notes: Vec<String>,
}

fn fit(
    profile: &FieldProfile,
    face: f64,
    step: f64,
    expected: f64,
    beta: f64,
) -> Result<std::result::Result<SlopeFit, String>> {
    let mut xs = Vec::with_capacity(FIT_POINTS);
    let mut ys = Vec::with_capacity(FIT_POINTS);
    for i in 0..FIT_POINTS {
        let r = face + step * i as f64;
        // shell side of the outer face
        let j = profile.eval_side(r, step < 0.0)?.j_phi.abs();
        if !(j > 0.0 && j.is_finite()) {
            return Ok(Err(format!("j_phi underflows at r = {r}; no slope fit")));
        }
        xs.push(r);
        ys.push(j.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(Ok(SlopeFit { slope, expected, deviation: (slope - expected).abs() / beta }))
}

/// Integrated supercurrent in each half of the shell and the decay rate of
/// the current density away from each face.
pub fn surface_current_summary(
    profile: &FieldProfile,
    lp: &LondonParams,
    geom: &Geometry,
) -> Result<SurfaceCurrentSummary> {
    let (b, c) = (geom.b, geom.c);
    let mid = geom.shell_mid();
    let j = |r: f64| profile.j_phi(r).unwrap_or(f64::NAN);
    let sheet = |lo: f64, hi: f64| -> Result<f64> {
        let scale = profile.j_phi(lo)?.abs().max(profile.eval_side(hi, true)?.j_phi.abs());
        let q = integrate(j, lo, hi, &[], 1e-10, 1e-14 * scale * (hi - lo))?;
        if !q.value.is_finite() {
            return Err(Error::Quadrature { achieved: f64::INFINITY, requested: 1e-10 });
        }
        Ok(q.value)
    };
    let inner_sheet = sheet(b, mid)?;
    let outer_sheet = sheet(mid, c)?;

    let beta = lp.beta;
    let step = (FIT_DEPTHS / beta).min(0.5 * (mid - b)) / (FIT_POINTS - 1) as f64;
    let mut notes = Vec::new();
    let inner_fit = fit(profile, b, step, -beta, beta)?.map_err(|m| notes.push(m)).ok();
    let outer_fit = fit(profile, c, -step, beta, beta)?.map_err(|m| notes.push(m)).ok();
    Ok(SurfaceCurrentSummary { inner_sheet, outer_sheet, inner_fit, outer_fit, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::london::{quantized_flux, solve_london_exact, FluxState, SourceConfig};

    fn setup() -> (Geometry, LondonParams) {
        let g = Geometry::new(1.0, 2.0, 2.4, 3.0, 4.0, 3.5).unwrap();
        let lp = LondonParams::new(50.0, &g).unwrap();
        (g, lp)
    }

    #[test]
    fn background_only_has_inner_current() {
        let (g, lp) = setup();
        let src = SourceConfig::new(0.6, 0.0, true).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &quantized_flux(0.6).unwrap()).unwrap();
        let s = surface_current_summary(&p, &lp, &g).unwrap();
        assert!(s.inner_sheet.abs() > 1e-4);
        assert!(s.outer_sheet.abs() <= 2.0 * (-10f64).exp() * s.inner_sheet.abs());
        assert!(s.inner_fit.unwrap().deviation < 0.01, "{:?}", s.inner_fit);
    }

    #[test]
    fn electron_only_has_outer_current() {
        let (g, lp) = setup();
        let src = SourceConfig::new(0.0, 0.02, true).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &FluxState::new(0)).unwrap();
        let s = surface_current_summary(&p, &lp, &g).unwrap();
        assert!(s.outer_sheet.abs() > 1e-4);
        assert!(s.inner_sheet.abs() <= 2.0 * (-10f64).exp() * s.outer_sheet.abs());
        assert!(s.outer_fit.unwrap().deviation < 0.01, "{:?}", s.outer_fit);
    }

    #[test]
    fn sheet_current_matches_field_jump() {
        // -(1/4pi) int dB/dr = (B(b) - B(c)) / 4pi
        let (g, lp) = setup();
        let src = SourceConfig::new(0.6, 0.02, true).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &quantized_flux(0.6).unwrap()).unwrap();
        let s = surface_current_summary(&p, &lp, &g).unwrap();
        let jump = (p.b_z(2.0).unwrap() - p.eval_side(2.4, true).unwrap().b_z) / (4.0 * std::f64::consts::PI);
        assert!((s.inner_sheet + s.outer_sheet - jump).abs() <= 1e-9 * jump.abs());
    }

    #[test]
    fn underflow_reported_not_fatal() {
        let (g, lp) = setup();
        let src = SourceConfig::new(0.5, 0.0, true).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &quantized_flux(0.5).unwrap()).unwrap();
        let s = surface_current_summary(&p, &lp, &g).unwrap();
        assert!(s.inner_fit.is_none() && s.outer_fit.is_none());
        assert_eq!(s.notes.len(), 2);
    }
}
