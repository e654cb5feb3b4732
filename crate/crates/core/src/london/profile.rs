use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{bessel_ik_scaled, Order};

/// Radial regions of the coaxial arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `r < a`, inside the coil.
    Core,
    /// `a < r < b`.
    Gap,
    /// `b < r < c`, superconducting when the shield is present.
    Shell,
    /// `c < r < r_e`.
    Outer,
    /// `r > r_e`, beyond every source.
    Exterior,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Core => "core",
            Region::Gap => "gap",
            Region::Shell => "shell",
            Region::Outer => "outer",
            Region::Exterior => "exterior",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-polynomial pieces of `a(r)` that appear inside the shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShellTerm {
    /// `coeff * r I_1(beta r) / (r_ref I_1(beta r_ref))`.
    Growing { coeff: f64, beta: f64, r_ref: f64, norm: f64 },
    /// `coeff * r K_1(beta r) / (r_ref K_1(beta r_ref))`.
    Decaying { coeff: f64, beta: f64, r_ref: f64, norm: f64 },
    /// `coeff * sqrt(r) e^{rate (r - r_ref)}`.
    Exponential { coeff: f64, rate: f64, r_ref: f64 },
}

fn order_one() -> Order {
    Order::new(1.0).expect("order 1 is valid")
}

impl ShellTerm {
    pub fn growing(coeff: f64, beta: f64, r_ref: f64) -> Result<Self> {
        let norm = bessel_ik_scaled(order_one(), beta * r_ref)?.i;
        Ok(ShellTerm::Growing { coeff, beta, r_ref, norm })
    }

    pub fn decaying(coeff: f64, beta: f64, r_ref: f64) -> Result<Self> {
        let norm = bessel_ik_scaled(order_one(), beta * r_ref)?.k;
        Ok(ShellTerm::Decaying { coeff, beta, r_ref, norm })
    }

    pub fn coeff(&self) -> f64 {
        match *self {
            ShellTerm::Growing { coeff, .. }
            | ShellTerm::Decaying { coeff, .. }
            | ShellTerm::Exponential { coeff, .. } => coeff,
        }
    }

    fn scaled(self, s: f64) -> Self {
        match self {
            ShellTerm::Growing { coeff, beta, r_ref, norm } => {
                ShellTerm::Growing { coeff: coeff * s, beta, r_ref, norm }
            }
            ShellTerm::Decaying { coeff, beta, r_ref, norm } => {
                ShellTerm::Decaying { coeff: coeff * s, beta, r_ref, norm }
            }
            ShellTerm::Exponential { coeff, rate, r_ref } => ShellTerm::Exponential { coeff: coeff * s, rate, r_ref },
        }
    }

    /// `(a, B, dB/dr)` contributed at `r > 0`.
    pub fn eval(&self, r: f64) -> Result<(f64, f64, f64)> {
        match *self {
            ShellTerm::Growing { coeff, beta, r_ref, norm } => {
                let x = beta * r;
                let m = bessel_ik_scaled(order_one(), x)?;
                let g = coeff * (beta * (r - r_ref)).exp() / (r_ref * norm);
                let i0 = m.ip + m.i / x;
                let a = g * r * m.i;
                Ok((a, g * beta * i0, beta * beta * a / r))
            }
            ShellTerm::Decaying { coeff, beta, r_ref, norm } => {
                let x = beta * r;
                let m = bessel_ik_scaled(order_one(), x)?;
                let g = coeff * (-beta * (r - r_ref)).exp() / (r_ref * norm);
                let k0 = -m.kp - m.k / x;
                let a = g * r * m.k;
                Ok((a, -g * beta * k0, beta * beta * a / r))
            }
            ShellTerm::Exponential { coeff, rate, r_ref } => {
                let ex = coeff * (rate * (r - r_ref)).exp();
                let sr = r.sqrt();
                let a = ex * sr;
                let b = ex * (0.5 / (r * sr) + rate / sr);
                let db = ex * (rate * rate / sr - 0.75 / (r * r * sr));
                Ok((a, b, db))
            }
        }
    }
}

/// `a(r) = constant + quad r^2 + sum(terms)` on one region.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Form {
    pub constant: f64,
    pub quad: f64,
    pub terms: Vec<ShellTerm>,
}

impl Form {
    pub fn polynomial(constant: f64, quad: f64) -> Self {
        Form { constant, quad, terms: Vec::new() }
    }

    fn combine(&self, other: &Form, sign: f64) -> Form {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| t.scaled(sign)));
        Form { constant: self.constant + sign * other.constant, quad: self.quad + sign * other.quad, terms }
    }

    fn eval(&self, r: f64) -> Result<(f64, f64, f64)> {
        let mut a = self.constant + self.quad * r * r;
        let mut b = 2.0 * self.quad;
        let mut db = 0.0;
        for t in &self.terms {
            let (ta, tb, tdb) = t.eval(r)?;
            a += ta;
            b += tb;
            db += tdb;
        }
        Ok((a, b, db))
    }

    fn is_constant(&self) -> bool {
        self.quad == 0.0 && self.terms.iter().all(|t| t.coeff() == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub region: Region,
    pub form: Form,
}

/// Values of a profile at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub r: f64,
    /// Reduced flux `Phi(r) / 2 pi`.
    pub a: f64,
    pub b_z: f64,
    /// Azimuthal volume current density `-(1/4pi) dB_z/dr`; sheet currents at
    /// region boundaries are not included.
    pub j_phi: f64,
    pub region: Region,
}

/// Piecewise closed-form axisymmetric field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile {
    segments: Vec<Segment>,
    warnings: Vec<String>,
}

impl FieldProfile {
    pub(crate) fn new(segments: Vec<Segment>) -> Self {
        debug_assert!(segments.windows(2).all(|w| w[0].hi == w[1].lo));
        debug_assert!(segments.last().is_some_and(|s| s.hi.is_infinite()));
        FieldProfile { segments, warnings: Vec::new() }
    }

    pub(crate) fn with_warning(mut self, msg: String) -> Self {
        self.warnings.push(msg);
        self
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Finite region boundaries, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.lo).collect()
    }

    /// Radius beyond which `a(r)` is constant, if any.
    pub fn decay_radius(&self) -> Option<f64> {
        let last = self.segments.last()?;
        last.form.is_constant().then_some(last.lo)
    }

    /// Segment containing `r`, using half-open `[lo, hi)` intervals.
    pub fn segment_at(&self, r: f64) -> &Segment {
        let idx = self.segments.partition_point(|s| s.hi <= r);
        &self.segments[idx.min(self.segments.len() - 1)]
    }

    pub fn eval(&self, r: f64) -> Result<FieldSample> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::domain("FieldProfile::eval", format!("r = {r}")));
        }
        let seg = self.segment_at(r);
        let (a, b_z, db) = if r == 0.0 { (seg.form.constant, 2.0 * seg.form.quad, 0.0) } else { seg.form.eval(r)? };
        Ok(FieldSample { r, a, b_z, j_phi: -db / (4.0 * PI), region: seg.region })
    }

    pub fn a(&self, r: f64) -> Result<f64> {
        Ok(self.eval(r)?.a)
    }

    pub fn b_z(&self, r: f64) -> Result<f64> {
        Ok(self.eval(r)?.b_z)
    }

    pub fn j_phi(&self, r: f64) -> Result<f64> {
        Ok(self.eval(r)?.j_phi)
    }

    /// Values at `r`, with each field taken from the side below `r` when
    /// `from_below` is set (matters only at a region boundary).
    pub fn eval_side(&self, r: f64, from_below: bool) -> Result<FieldSample> {
        let idx = self.segments.iter().position(|s| s.lo < r && r <= s.hi);
        match (from_below, idx) {
            (true, Some(i)) => {
                let seg = &self.segments[i];
                let (a, b_z, db) = seg.form.eval(r)?;
                Ok(FieldSample { r, a, b_z, j_phi: -db / (4.0 * PI), region: seg.region })
            }
            _ => self.eval(r),
        }
    }

    fn combine(&self, other: &FieldProfile, sign: f64) -> Result<FieldProfile> {
        if self.segments.len() != other.segments.len()
            || self.segments.iter().zip(&other.segments).any(|(x, y)| x.lo != y.lo || x.hi != y.hi)
        {
            return Err(Error::param("profile", "profiles on different region layouts cannot be combined"));
        }
        let segments = self
            .segments
            .iter()
            .zip(&other.segments)
            .map(|(x, y)| Segment { lo: x.lo, hi: x.hi, region: x.region, form: x.form.combine(&y.form, sign) })
            .collect();
        Ok(FieldProfile::new(segments))
    }

    pub fn try_add(&self, other: &FieldProfile) -> Result<FieldProfile> {
        self.combine(other, 1.0)
    }

    pub fn try_sub(&self, other: &FieldProfile) -> Result<FieldProfile> {
        self.combine(other, -1.0)
    }

    /// Samples on a uniform grid over `[r_min, r_max]`, plus every interior
    /// boundary sampled from both sides.
    pub fn sample(&self, r_min: f64, r_max: f64, points: usize) -> Result<Vec<FieldSample>> {
        if !(r_min >= 0.0 && r_max > r_min) || points < 2 {
            return Err(Error::param("profile sampling", format!("[{r_min}, {r_max}] with {points} points")));
        }
        let mut out = Vec::with_capacity(points + 2 * self.segments.len());
        let h = (r_max - r_min) / (points - 1) as f64;
        let bps = self.breakpoints();
        let mut next_bp = bps.iter().copied().filter(|&p| p > r_min && p < r_max).peekable();
        for i in 0..points {
            let r = if i + 1 == points { r_max } else { r_min + i as f64 * h };
            while let Some(&p) = next_bp.peek() {
                if p > r {
                    break;
                }
                out.push(self.eval_side(p, true)?);
                if p < r {
                    out.push(self.eval(p)?);
                }
                next_bp.next();
            }
            out.push(self.eval(r)?);
        }
        Ok(out)
    }
}

/// `Phi(R) = 2 pi a(R)`, in flux quanta.
pub fn flux_within(profile: &FieldProfile, radius: f64) -> Result<f64> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::domain("flux_within", format!("R = {radius} must be positive")));
    }
    Ok(2.0 * PI * profile.a(radius)?)
}
