use std::f64::consts::PI;

use super::temme::gamma_terms;
use super::{check_arg, Order};
use crate::error::{Error, Result};

const EPS: f64 = 1.0e-16;
const FPMIN: f64 = 1.0e-300;
const MAX_ITER: usize = 100_000;
const SERIES_SWITCH: f64 = 2.0;
const RESCALE: f64 = 1.0e250;

/// Arguments above this are returned in scaled form by [`bessel_ik`].
pub const SCALE_THRESHOLD: f64 = 700.0;

/// Modified Bessel pair `I_nu`, `K_nu` with derivatives.
///
/// When `scaled` is set the fields hold `I e^{-x}`, `I' e^{-x}`, `K e^{x}`
/// and `K' e^{x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedBessel {
    pub i: f64,
    pub k: f64,
    pub ip: f64,
    pub kp: f64,
    pub scaled: bool,
}

/// `I_nu(x)`, `K_nu(x)` and derivatives; scaled beyond [`SCALE_THRESHOLD`].
pub fn bessel_ik(nu: Order, x: f64) -> Result<ModifiedBessel> {
    let s = bessel_ik_scaled(nu, x)?;
    if x > SCALE_THRESHOLD {
        return Ok(s);
    }
    let up = x.exp();
    let down = (-x).exp();
    Ok(ModifiedBessel { i: s.i * up, ip: s.ip * up, k: s.k * down, kp: s.kp * down, scaled: false })
}

/// Always-scaled pair: `I e^{-x}`, `K e^{x}` (and derivatives scaled alike).
pub fn bessel_ik_scaled(nu: Order, x: f64) -> Result<ModifiedBessel> {
    check_arg("bessel_ik", x)?;
    let nu = nu.value();
    if x >= hankel_switch(nu) {
        return Ok(hankel_ik(nu, x));
    }

    let nl = (nu + 0.5) as i64;
    let mu = nu - nl as f64;
    let mu2 = mu * mu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1 for I'_nu / I_nu.
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "I continued fraction", iterations: MAX_ITER });
    }

    let mut il = 1.0e-30;
    let mut ipl = h * il;
    let mut il_top = il;
    let mut ip_top = ipl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let itemp = fact * il + ipl;
        fact -= xi;
        ipl = fact * itemp + il;
        il = itemp;
        if il.abs() > RESCALE {
            il /= RESCALE;
            ipl /= RESCALE;
            il_top /= RESCALE;
            ip_top /= RESCALE;
        }
    }
    let f = ipl / il;

    // K_mu, K_{mu+1}; scaled by e^{x} in both branches.
    let (kmu, k1) = if x < SERIES_SWITCH {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let g = gamma_terms(mu);
        let mut ff = fact * (g.gam1 * e.cosh() + g.gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / g.gampl;
        let mut q = 0.5 / (e * g.gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut i = 1.0;
        loop {
            ff = (i * ff + p + q) / (i * i - mu2);
            c *= dd / i;
            p /= i - mu;
            q /= i + mu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - i * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                break;
            }
            i += 1.0;
        }
        let up = x.exp();
        (sum * up, sum1 * xi2 * up)
    } else {
        // Steed/Temme CF2 for K.
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            a -= 2.0 * fi;
            c = -a * c / (fi + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { what: "K continued fraction", iterations: MAX_ITER });
        }
        let h = a1 * h;
        let kmu = (PI / (2.0 * x)).sqrt() / s;
        (kmu, kmu * (mu + x + 0.5 - h) * xi)
    };

    let kmup = mu * xi * kmu - k1;
    // Wronskian I K' - I' K = -1/x is invariant under the e^{-x}/e^{x} scaling.
    let imu = xi / (f * kmu - kmup);
    let i = imu * il_top / il;
    let ip = imu * ip_top / il;

    let mut klo = kmu;
    let mut khi = k1;
    for n in 1..=nl {
        let ktemp = (mu + n as f64) * xi2 * khi + klo;
        klo = khi;
        khi = ktemp;
    }
    let k = klo;
    let kp = nu * xi * klo - khi;

    Ok(ModifiedBessel { i, k, ip, kp, scaled: true })
}

fn hankel_switch(nu: f64) -> f64 {
    40.0 + nu * nu
}

/// Hankel's large-argument expansion; the `e^{-2x}` correction to `I` is
/// below double precision once `x >= 40`.
fn hankel_ik(nu: f64, x: f64) -> ModifiedBessel {
    let (sum_i, sum_k) = hankel_sums(nu, x);
    let (sum_i1, sum_k1) = hankel_sums(nu + 1.0, x);
    let i_pref = 1.0 / (2.0 * PI * x).sqrt();
    let k_pref = (PI / (2.0 * x)).sqrt();
    let i = i_pref * sum_i;
    let k = k_pref * sum_k;
    let i1 = i_pref * sum_i1;
    let k1 = k_pref * sum_k1;
    ModifiedBessel { i, k, ip: i1 + nu / x * i, kp: -k1 + nu / x * k, scaled: true }
}

fn hankel_sums(nu: f64, x: f64) -> (f64, f64) {
    let m = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum_k = 1.0;
    let mut sum_i = 1.0;
    let mut k = 1.0;
    loop {
        let odd = 2.0 * k - 1.0;
        let next = term * (m - odd * odd) / (8.0 * k * x);
        if next.abs() >= term.abs() && k > 1.0 {
            break;
        }
        term = next;
        sum_k += term;
        sum_i += if (k as i64) % 2 == 1 { -term } else { term };
        if term.abs() < 1e-17 * sum_k.abs() {
            break;
        }
        k += 1.0;
    }
    (sum_i, sum_k)
}
