use crate::error::{Error, Result};

const REL_TOL: f64 = 1.0e-12;
const MAX_ITER: usize = 200;

/// Sign-change roots in increasing order, with `|f(root)|` alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct RootList {
    pub roots: Vec<f64>,
    pub residuals: Vec<f64>,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Scans `[x_min, x_max]` with 2000 uniform steps; see
/// [`find_positive_roots_with_step`].
pub fn find_positive_roots<F>(f: F, x_min: f64, x_max: f64, n_max: usize) -> Result<RootList>
where
    F: FnMut(f64) -> f64,
{
    let step = (x_max - x_min) / 2000.0;
    find_positive_roots_with_step(f, x_min, x_max, n_max, step)
}

/// Returns the first `n_max` sign-change roots of `f` in `[x_min, x_max]`.
///
/// Each bracket found by the uniform scan is refined with Brent's method to
/// `|dx| <= 1e-12 x`. Two roots closer than twice `step` are reported as
/// [`Error::PossiblyMissedRoots`], since an even number of crossings could
/// hide in a single step at that density.
pub fn find_positive_roots_with_step<F>(mut f: F, x_min: f64, x_max: f64, n_max: usize, step: f64) -> Result<RootList>
where
    F: FnMut(f64) -> f64,
{
    if !(x_min > 0.0 && x_max > x_min && x_max.is_finite()) {
        return Err(Error::domain(
            "find_positive_roots",
            format!("need 0 < x_min < x_max < inf, got [{x_min}, {x_max}]"),
        ));
    }
    if n_max == 0 {
        return Err(Error::param("n_max", "must be >= 1"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::param("step", format!("must be positive, got {step}")));
    }

    let mut roots = Vec::new();
    let mut residuals = Vec::new();
    let n_steps = ((x_max - x_min) / step).ceil() as usize;
    let mut x_lo = x_min;
    let mut f_lo = f(x_lo);

    for i in 1..=n_steps {
        if roots.len() == n_max {
            break;
        }
        let x_hi = if i == n_steps { x_max } else { x_min + i as f64 * step };
        let f_hi = f(x_hi);
        if !f_lo.is_finite() || !f_hi.is_finite() {
            x_lo = x_hi;
            f_lo = f_hi;
            continue;
        }
        let root = if f_lo == 0.0 {
            // counted at the previous step's right end, or at x_min
            if i == 1 {
                Some(x_lo)
            } else {
                None
            }
        } else if f_hi == 0.0 {
            Some(x_hi)
        } else if f_lo.signum() != f_hi.signum() {
            Some(brent_root(&mut f, x_lo, x_hi, f_lo, f_hi)?)
        } else {
            None
        };
        if let Some(r) = root {
            if let Some(&prev) = roots.last() {
                let spacing = r - prev;
                if spacing < 2.0 * step {
                    return Err(Error::PossiblyMissedRoots { near: r, spacing, step });
                }
            }
            residuals.push(f(r).abs());
            roots.push(r);
        }
        x_lo = x_hi;
        f_lo = f_hi;
    }

    if roots.is_empty() {
        return Err(Error::NoRootsFound { lo: x_min, hi: x_max });
    }
    Ok(RootList { roots, residuals })
}

/// Brent's method on a bracket with `f(a) f(b) < 0`, to `|dx| <= 1e-12 x`.
pub fn brent_root<F>(f: &mut F, a: f64, b: f64, fa: f64, fb: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    if fa.signum() == fb.signum() {
        return Err(Error::domain("brent_root", format!("[{a}, {b}] does not bracket a root")));
    }
    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 0.5 * REL_TOL * b.abs() + f64::MIN_POSITIVE;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(xm) };
        fb = f(b);
    }
    Err(Error::NoConvergence { what: "Brent root refinement", iterations: MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{cross_jy, Order};
    use std::f64::consts::PI;

    #[test]
    fn sine_zeros() {
        let r = find_positive_roots(f64::sin, 0.1, 10.0, 3).unwrap();
        assert_eq!(r.len(), 3);
        for (i, &x) in r.roots.iter().enumerate() {
            let expect = (i + 1) as f64 * PI;
            assert!((x - expect).abs() <= 1e-12 * expect);
        }
    }

    #[test]
    fn half_integer_cross_product_zeros() {
        let nu = Order::new(0.5).unwrap();
        let r = find_positive_roots(|k| cross_jy(nu, k, 1.0, 2.0).unwrap(), 0.1, 20.0, 5).unwrap();
        assert_eq!(r.len(), 5);
        for (i, &x) in r.roots.iter().enumerate() {
            let expect = (i + 1) as f64 * PI;
            assert!((x - expect).abs() <= 1e-11 * expect, "{x} vs {expect}");
        }
    }

    #[test]
    fn no_roots_is_distinct() {
        let err = find_positive_roots(|x| x + 1.0, 0.1, 5.0, 2).unwrap_err();
        assert!(matches!(err, Error::NoRootsFound { .. }));
    }

    #[test]
    fn close_roots_flagged() {
        // roots 0.014 apart, in adjacent steps of width 0.01
        let err =
            find_positive_roots_with_step(|x| (x - 1.003) * (x - 1.017) * (x - 3.0), 0.5, 2.0, 5, 0.01).unwrap_err();
        assert!(matches!(err, Error::PossiblyMissedRoots { .. }), "{err:?}");
    }

    #[test]
    fn exact_zero_on_grid() {
        let r = find_positive_roots_with_step(|x| x - 1.0, 0.5, 2.0, 1, 0.25).unwrap();
        assert_eq!(r.roots, vec![1.0]);
    }
}
