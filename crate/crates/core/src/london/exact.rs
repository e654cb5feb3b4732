use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::profile::{FieldProfile, Form, Segment, ShellTerm};
use super::{FluxState, Geometry, LondonParams, SourceConfig};

const MAX_CONDITION: f64 = 1e12;

/// Diagnostics of the boundary-matching solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingReport {
    /// Infinity-norm condition estimate of the row-equilibrated system.
    pub condition: f64,
    /// Largest mismatch of `a` or `B_z` across `b` and `c`, relative to the
    /// profile's scale.
    pub continuity_residual: f64,
}

/// Gaussian elimination with partial pivoting; returns the solution and a
/// condition estimate.
fn solve_dense<const N: usize>(mut m: [[f64; N]; N], rhs: [f64; N], stage: &'static str) -> Result<([f64; N], f64)> {
    let mut rhs = rhs;
    for i in 0..N {
        let scale = m[i].iter().fold(0.0f64, |s, v| s.max(v.abs()));
        if scale == 0.0 {
            return Err(Error::SingularMatching { stage, condition: f64::INFINITY });
        }
        m[i].iter_mut().for_each(|v| *v /= scale);
        rhs[i] /= scale;
    }
    let norm = m.iter().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);

    let mut lu = m;
    let mut perm: [usize; N] = std::array::from_fn(|i| i);
    for col in 0..N {
        let piv =
            (col..N).max_by(|&x, &y| lu[x][col].abs().total_cmp(&lu[y][col].abs())).expect("non-empty pivot range");
        if lu[piv][col] == 0.0 {
            return Err(Error::SingularMatching { stage, condition: f64::INFINITY });
        }
        lu.swap(col, piv);
        perm.swap(col, piv);
        for row in col + 1..N {
            let f = lu[row][col] / lu[col][col];
            lu[row][col] = f;
            let pivot = lu[col];
            for (x, p) in lu[row][col + 1..].iter_mut().zip(&pivot[col + 1..]) {
                *x -= f * p;
            }
        }
    }
    let apply = |b: [f64; N]| -> [f64; N] {
        let mut y: [f64; N] = std::array::from_fn(|i| b[perm[i]]);
        for i in 0..N {
            for k in 0..i {
                y[i] -= lu[i][k] * y[k];
            }
        }
        for i in (0..N).rev() {
            for k in i + 1..N {
                y[i] -= lu[i][k] * y[k];
            }
            y[i] /= lu[i][i];
        }
        y
    };

    let mut inv_norm: f64 = 0.0;
    let mut row_sums = [0.0; N];
    for j in 0..N {
        let mut e = [0.0; N];
        e[j] = 1.0;
        let col = apply(e);
        for i in 0..N {
            row_sums[i] += col[i].abs();
        }
    }
    for s in row_sums {
        inv_norm = inv_norm.max(s);
    }
    let condition = norm * inv_norm;
    if !(condition.is_finite() && condition < MAX_CONDITION) {
        return Err(Error::SingularMatching { stage, condition });
    }
    Ok((apply(rhs), condition))
}

/// Field with nothing but the coil and the electron sheet in vacuum.
pub fn solve_vacuum(geom: &Geometry, src: &SourceConfig) -> Result<FieldProfile> {
    geom.validate()?;
    let coil = src.phi_a / (2.0 * PI);
    let half_be = 0.5 * src.b_e;
    let forms = [
        Form::polynomial(0.0, coil / (geom.a * geom.a) + half_be),
        Form::polynomial(coil, half_be),
        Form::polynomial(coil, half_be),
        Form::polynomial(coil, half_be),
        Form::polynomial(coil + half_be * geom.r_e * geom.r_e, 0.0),
    ];
    Ok(layout(geom, forms))
}

fn layout(geom: &Geometry, forms: [Form; 5]) -> FieldProfile {
    let segments = geom
        .boundaries()
        .into_iter()
        .zip(forms)
        .map(|((lo, hi, region), form)| Segment { lo, hi, region, form })
        .collect();
    FieldProfile::new(segments)
}

/// Shielded solution for arbitrary (not necessarily quantized) offsets;
/// linear in `(phi_a, b_e, a_q)` jointly.
pub(crate) fn solve_shielded(
    geom: &Geometry,
    lp: &LondonParams,
    phi_a: f64,
    b_e: f64,
    a_q: f64,
) -> Result<(FieldProfile, MatchingReport)> {
    geom.validate()?;
    let Geometry { a, b, c, r_e, .. } = *geom;
    let beta = lp.beta;
    let coil = phi_a / (2.0 * PI);

    let grow = ShellTerm::growing(1.0, beta, c)?;
    let decay = ShellTerm::decaying(1.0, beta, b)?;
    let (gi_b, bi_b, _) = grow.eval(b)?;
    let (_, bi_c, _) = grow.eval(c)?;
    let (gk_b, bk_b, _) = decay.eval(b)?;
    let (_, bk_c, _) = decay.eval(c)?;

    // Unknowns: gap constant P, gap quadratic Q, growing C3, decaying C4.
    let m = [[1.0, a * a, 0.0, 0.0], [1.0, b * b, -gi_b, -gk_b], [0.0, 2.0, -bi_b, -bk_b], [0.0, 0.0, bi_c, bk_c]];
    let rhs = [coil, a_q, 0.0, b_e];
    let ([p, q, c3, c4], condition) = solve_dense(m, rhs, "London shell matching")?;

    let shell = Form {
        constant: a_q,
        quad: 0.0,
        terms: vec![ShellTerm::growing(c3, beta, c)?, ShellTerm::decaying(c4, beta, b)?],
    };
    let (gc, _, _) = grow.eval(c)?;
    let (kc, _, _) = decay.eval(c)?;
    let a_c = a_q + c3 * gc + c4 * kc;
    let outer_const = a_c - 0.5 * b_e * c * c;

    let forms = [
        Form::polynomial(0.0, coil / (a * a)),
        Form::polynomial(p, q),
        shell,
        Form::polynomial(outer_const, 0.5 * b_e),
        Form::polynomial(outer_const + 0.5 * b_e * r_e * r_e, 0.0),
    ];
    let profile = layout(geom, forms);

    let scale = coil.abs().max(a_q.abs()).max(b_e.abs() * c * c).max(f64::MIN_POSITIVE);
    let mut residual: f64 = 0.0;
    for r in [a, b, c, r_e] {
        let below = profile.eval_side(r, true)?;
        let above = profile.eval(r)?;
        residual = residual.max((below.a - above.a).abs() / scale);
    }
    for r in [b, c] {
        let below = profile.eval_side(r, true)?;
        let above = profile.eval(r)?;
        residual = residual.max((below.b_z - above.b_z).abs() * r * r / scale);
    }
    Ok((profile, MatchingReport { condition, continuity_residual: residual }))
}

/// Exact London solution with Bessel functions in the shell. Without the
/// shield the result is the vacuum superposition of coil and electron sheet.
///
/// The trapped flux is taken from `fs` as given, so a state other than
/// `quantized_flux(src.phi_a)` may be imposed deliberately.
pub fn solve_london_exact(
    geom: &Geometry,
    lp: &LondonParams,
    src: &SourceConfig,
    fs: &FluxState,
) -> Result<FieldProfile> {
    if !src.include_shield {
        return solve_vacuum(geom, src);
    }
    Ok(solve_shielded(geom, lp, src.phi_a, src.b_e, fs.reduced())?.0)
}

/// [`solve_london_exact`] together with its matching diagnostics.
pub fn solve_london_exact_with_report(
    geom: &Geometry,
    lp: &LondonParams,
    src: &SourceConfig,
    fs: &FluxState,
) -> Result<(FieldProfile, MatchingReport)> {
    if !src.include_shield {
        return Ok((solve_vacuum(geom, src)?, MatchingReport { condition: 1.0, continuity_residual: 0.0 }));
    }
    solve_shielded(geom, lp, src.phi_a, src.b_e, fs.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::london::{flux_within, quantized_flux};
    use crate::quadrature::integrate;

    fn setup(beta: f64) -> (Geometry, LondonParams) {
        let g = Geometry::new(1.0, 2.0, 2.4, 3.0, 4.0, 3.5).unwrap();
        let lp = LondonParams::new(beta, &g).unwrap();
        (g, lp)
    }

    #[test]
    fn dense_solver_small_system() {
        let ([x, y], cond) = solve_dense([[2.0, 1.0], [1.0, 3.0]], [3.0, 5.0], "test").unwrap();
        assert!((x - 0.8).abs() < 1e-15 && (y - 1.4).abs() < 1e-15);
        assert!(cond > 1.0 && cond < 10.0);
        assert!(matches!(
            solve_dense([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0], "test"),
            Err(Error::SingularMatching { .. })
        ));
    }

    #[test]
    fn already_quantized_needs_no_screening() {
        let (g, lp) = setup(50.0);
        let src = SourceConfig::new(0.5, 0.0, true).unwrap();
        let fs = quantized_flux(0.5).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &fs).unwrap();
        for i in 0..=40 {
            let r = 0.1 + i as f64 * 0.1;
            let s = p.eval(r).unwrap();
            assert!(s.j_phi.abs() < 1e-14, "j at {r}");
            if r > 1.0 {
                assert!(s.b_z.abs() < 1e-14, "B at {r}");
                assert!((flux_within(&p, r).unwrap() - 0.5).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn continuity_and_conditioning() {
        for &beta in &[0.5, 5.0, 50.0, 500.0] {
            let (g, lp) = setup(beta);
            let src = SourceConfig::new(0.6, 0.03, true).unwrap();
            let (_, rep) = solve_london_exact_with_report(&g, &lp, &src, &quantized_flux(0.6).unwrap()).unwrap();
            assert!(rep.continuity_residual <= 1e-10, "beta {beta}: {rep:?}");
            assert!(rep.condition < 1e8, "beta {beta}: {rep:?}");
        }
    }

    #[test]
    fn shell_satisfies_london_equation() {
        let (g, lp) = setup(20.0);
        let src = SourceConfig::new(0.6, 0.05, true).unwrap();
        let fs = quantized_flux(0.6).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &fs).unwrap();
        for &r in &[2.05, 2.2, 2.35] {
            let s = p.eval(r).unwrap();
            let h = 1e-4;
            let db = (p.b_z(r + h).unwrap() - p.b_z(r - h).unwrap()) / (2.0 * h);
            let rhs = lp.beta * lp.beta * (s.a - fs.reduced()) / r;
            assert!((db - rhs).abs() <= 1e-6 * rhs.abs().max(1e-12), "{db} vs {rhs}");
            assert!((s.j_phi + rhs / (4.0 * PI)).abs() <= 1e-12 * rhs.abs().max(1e-12));
        }
    }

    #[test]
    fn flux_matches_field_quadrature() {
        let (g, lp) = setup(50.0);
        let src = SourceConfig::new(0.6, 0.02, true).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &quantized_flux(0.6).unwrap()).unwrap();
        let bps = p.breakpoints();
        for &r in &[0.7, 1.5, 2.2, 2.7, 3.6, 10.0] {
            let q = integrate(|s| p.b_z(s).unwrap() * 2.0 * PI * s, 0.0, r, &bps, 1e-12, 1e-15).unwrap();
            let phi = flux_within(&p, r).unwrap();
            assert!((q.value - phi).abs() <= 1e-8 * phi.abs(), "R = {r}: {} vs {phi}", q.value);
        }
    }

    #[test]
    fn vacuum_total_flux() {
        let (g, lp) = setup(50.0);
        let src = SourceConfig::new(0.6, 0.02, false).unwrap();
        let p = solve_london_exact(&g, &lp, &src, &FluxState::new(1)).unwrap();
        let total = flux_within(&p, 1e3).unwrap();
        assert!((total - (0.6 + PI * 3.5 * 3.5 * 0.02)).abs() < 1e-14);
        let e_only = solve_vacuum(&g, &SourceConfig::new(0.0, 0.02, false).unwrap()).unwrap();
        assert!((flux_within(&e_only, 50.0).unwrap() - PI * 3.5 * 3.5 * 0.02).abs() < 1e-14);
    }

    #[test]
    fn electron_field_screened_in_bulk() {
        let (g, lp) = setup(50.0);
        let b_e = 0.02;
        let p = solve_london_exact(&g, &lp, &SourceConfig::new(0.0, b_e, true).unwrap(), &FluxState::new(0)).unwrap();
        assert!(p.b_z(g.shell_mid()).unwrap().abs() <= (-8f64).exp() * b_e);
        for &r in &[2.5, 3.0, 3.4] {
            assert!((p.b_z(r).unwrap() - b_e).abs() <= 1e-14);
        }
        assert_eq!(p.b_z(4.0).unwrap(), 0.0);
    }
}
