use crate::error::{Error, Result};
use crate::specfun::bessel_jy;

use super::{Annulus, Mode};

/// Normalised radial factor of a [`Mode`], `int_d^e psi^2 r dr = 1`,
/// with `psi'(d) > 0`.
#[derive(Debug, Clone, Copy)]
pub struct RadialEigenfunction {
    mode: Mode,
    ann: Annulus,
    j_inner: f64,
    y_inner: f64,
    norm: f64,
}

impl RadialEigenfunction {
    pub fn new(mode: Mode, ann: Annulus) -> Result<Self> {
        let k = mode.k;
        let inner = bessel_jy(mode.nu, k * ann.d)?;
        let (j_inner, y_inner) = (inner.j, inner.y);

        // Lommel: int r C(kr)^2 dr = r^2/2 [C'^2 + (1 - nu^2/(kr)^2) C^2]
        let lommel = |r: f64| -> Result<f64> {
            let b = bessel_jy(mode.nu, k * r)?;
            let c = b.j * y_inner - b.y * j_inner;
            let cp = b.jp * y_inner - b.yp * j_inner;
            let x = k * r;
            let nu = mode.nu.value();
            Ok(0.5 * r * r * (cp * cp + (1.0 - nu * nu / (x * x)) * c * c))
        };
        let integral = lommel(ann.e)? - lommel(ann.d)?;
        if integral.is_nan() || integral <= 0.0 {
            return Err(Error::domain("RadialEigenfunction::new", "non-positive normalisation integral"));
        }
        // C'(kd) = -2/(pi k d) < 0; flip so psi rises from the inner wall.
        let norm = -1.0 / integral.sqrt();
        Ok(RadialEigenfunction { mode, ann, j_inner, y_inner, norm })
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r >= self.ann.d && r <= self.ann.e) {
            return Err(Error::domain(
                "eigenfunction_eval",
                format!("r = {r} outside [{}, {}]", self.ann.d, self.ann.e),
            ));
        }
        if r == self.ann.d {
            return Ok(0.0);
        }
        let b = bessel_jy(self.mode.nu, self.mode.k * r)?;
        Ok(self.norm * (b.j * self.y_inner - b.y * self.j_inner))
    }
}

/// `psi(r)` for `d <= r <= e`.
pub fn eigenfunction_eval(mode: Mode, ann: Annulus, r: f64) -> Result<f64> {
    RadialEigenfunction::new(mode, ann)?.eval(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use crate::specfun::Order;
    use crate::spectrum::annulus_eigenvalues;
    use std::f64::consts::PI;

    fn ann() -> Annulus {
        Annulus::new(1.0, 2.0).unwrap()
    }

    #[test]
    fn boundary_values() {
        let modes = annulus_eigenvalues(ann(), Order::new(1.7).unwrap(), 3).unwrap();
        for m in modes {
            let psi = RadialEigenfunction::new(m, ann()).unwrap();
            let max = (0..=200).map(|i| psi.eval(1.0 + i as f64 / 200.0).unwrap().abs()).fold(0.0, f64::max);
            assert_eq!(psi.eval(1.0).unwrap(), 0.0);
            assert!(psi.eval(2.0).unwrap().abs() <= 1e-9 * max);
        }
    }

    #[test]
    fn half_integer_ground_state_closed_form() {
        let m = annulus_eigenvalues(ann(), Order::new(0.5).unwrap(), 1).unwrap()[0];
        let v = eigenfunction_eval(m, ann(), 1.5).unwrap();
        let expect = 2f64.sqrt() * (PI * 0.5).sin() / 1.5f64.sqrt();
        assert!((v - expect).abs() < 1e-10);
    }

    #[test]
    fn orthonormal_by_quadrature() {
        let modes = annulus_eigenvalues(ann(), Order::new(2.25).unwrap(), 4).unwrap();
        let fns: Vec<_> = modes.iter().map(|&m| RadialEigenfunction::new(m, ann()).unwrap()).collect();
        for i in 0..4 {
            for j in i..4 {
                let q =
                    integrate(|r| fns[i].eval(r).unwrap() * fns[j].eval(r).unwrap() * r, 1.0, 2.0, &[], 1e-12, 1e-14)
                        .unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((q.value - expect).abs() <= 1e-8, "({i},{j}) -> {}", q.value);
            }
        }
    }

    #[test]
    fn outside_annulus_is_error() {
        let m = annulus_eigenvalues(ann(), Order::new(0.0).unwrap(), 1).unwrap()[0];
        assert!(eigenfunction_eval(m, ann(), 0.99).is_err());
        assert!(eigenfunction_eval(m, ann(), 2.01).is_err());
    }
}
