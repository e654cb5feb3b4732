use std::f64::consts::PI;

use crate::error::Result;

use super::exact::solve_vacuum;
use super::profile::{FieldProfile, Form, Segment, ShellTerm};
use super::{FluxState, Geometry, LondonParams, SourceConfig};

/// Below this many penetration depths across the shell the exponential
/// approximation is flagged.
pub const MIN_THICKNESS: f64 = 5.0;

/// Exponential approximation of the shielded profile:
///
/// ```text
/// 2 pi a = Phi_a r^2/a^2                                         r <= a
///        = Phi_a - alpha beta^2 (r^2 - a^2)(Phi_a - Phi_q)       a <= r <= b
///        = Phi_q + 2 alpha beta sqrt(b r)(Phi_a - Phi_q) e^{-beta(r-b)}
///                + (2 pi / beta) sqrt(c r) b_e e^{beta(r-c)}     b <= r <= c
///        = Phi_q + pi b_e (r^2 - c^2 + 2c/beta)                  c <= r <= r_e
///        = Phi_q + pi b_e (r_e^2 - c^2 + 2c/beta)                r >= r_e
/// ```
///
/// A warning is attached when `beta (c - b) < 5`.
pub fn solve_london_approx(
    geom: &Geometry,
    lp: &LondonParams,
    src: &SourceConfig,
    fs: &FluxState,
) -> Result<FieldProfile> {
    if !src.include_shield {
        return solve_vacuum(geom, src);
    }
    geom.validate()?;
    let Geometry { a, b, c, r_e, .. } = *geom;
    let LondonParams { beta, alpha } = *lp;
    let two_pi = 2.0 * PI;
    let phi_q = fs.phi_q();
    let excess = src.phi_a - phi_q;
    let b_e = src.b_e;
    let ab2 = alpha * beta * beta;
    let tail = PI * b_e * (2.0 * c / beta - c * c);

    let forms = [
        Form::polynomial(0.0, src.phi_a / (two_pi * a * a)),
        Form::polynomial((src.phi_a + ab2 * a * a * excess) / two_pi, -ab2 * excess / two_pi),
        Form {
            constant: phi_q / two_pi,
            quad: 0.0,
            terms: vec![
                ShellTerm::Exponential {
                    coeff: 2.0 * alpha * beta * b.sqrt() * excess / two_pi,
                    rate: -beta,
                    r_ref: b,
                },
                ShellTerm::Exponential { coeff: c.sqrt() * b_e / beta, rate: beta, r_ref: c },
            ],
        },
        Form::polynomial((phi_q + tail) / two_pi, 0.5 * b_e),
        Form::polynomial((phi_q + tail + PI * b_e * r_e * r_e) / two_pi, 0.0),
    ];
    let segments = geom
        .boundaries()
        .into_iter()
        .zip(forms)
        .map(|((lo, hi, region), form)| Segment { lo, hi, region, form })
        .collect();
    let profile = FieldProfile::new(segments);
    let thickness = lp.thickness(geom);
    Ok(if thickness < MIN_THICKNESS {
        profile.with_warning(format!(
            "shell is only {thickness:.3} penetration depths thick; exponential approximation degrades below {MIN_THICKNESS}"
        ))
    } else {
        profile
    })
}
