// Chebyshev fits for the gamma-function combinations in Temme's series:
//   gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu),  gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
// valid for |mu| <= 1/2.

const GAM1_COEFFS: [f64; 7] = [
    -1.142022680371168e0,
    6.5165112670737e-3,
    3.087090173086e-4,
    -3.4706269649e-6,
    6.9437664e-9,
    3.67795e-11,
    -1.356e-13,
];

const GAM2_COEFFS: [f64; 8] = [
    1.843740587300905e0,
    -7.68528408447867e-2,
    1.2719271366546e-3,
    -4.9717367042e-6,
    -3.31261198e-8,
    2.423096e-10,
    -1.702e-13,
    -1.49e-15,
];

/// Clenshaw evaluation of `sum c_k T_k(y) - c_0/2` for `y` in [-1, 1].
fn chebyshev(coeffs: &[f64], y: f64) -> f64 {
    let y2 = 2.0 * y;
    let (mut d, mut dd) = (0.0, 0.0);
    for &c in coeffs[1..].iter().rev() {
        let sv = d;
        d = y2 * d - dd + c;
        dd = sv;
    }
    y * d - dd + 0.5 * coeffs[0]
}

pub(crate) struct GammaTerms {
    pub gam1: f64,
    pub gam2: f64,
    /// 1/G(1+mu)
    pub gampl: f64,
    /// 1/G(1-mu)
    pub gammi: f64,
}

pub(crate) fn gamma_terms(mu: f64) -> GammaTerms {
    let y = 8.0 * mu * mu - 1.0;
    let gam1 = chebyshev(&GAM1_COEFFS, y);
    let gam2 = chebyshev(&GAM2_COEFFS, y);
    GammaTerms { gam1, gam2, gampl: gam2 - mu * gam1, gammi: gam2 + mu * gam1 }
}
