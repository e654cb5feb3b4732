//! Interaction energies per unit length between axisymmetric sources.
//!
//! Two forms are computed independently: the potential-current form
//! `int A . j` and the field-overlap form `(1/4pi) int B . b`, where `b` is the
//! field generated by `j`. They agree whenever both fields vanish far away.

mod diamagnet;
mod toy;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::london::FluxState;
use crate::london::{source_decomposition, FieldProfile, Form, Geometry, LondonParams, Region, Segment, SourceConfig};
use crate::quadrature::integrate;

pub use diamagnet::{diamagnet_overlap, DiamagnetConfig};
pub use toy::{toy_two_particle, tuned_partner};

const REL_TOL: f64 = 1e-12;

/// Azimuthal current sheet: `K` is current per unit length, so the field
/// inside jumps by `4 pi K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sheet {
    pub radius: f64,
    pub strength: f64,
}

/// Volume current taken from a profile's `j_phi` over `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothCurrent {
    pub profile: FieldProfile,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurrentDistribution {
    sheets: Vec<Sheet>,
    smooth: Option<SmoothCurrent>,
}

impl CurrentDistribution {
    pub fn new(mut sheets: Vec<Sheet>, smooth: Option<SmoothCurrent>) -> Result<Self> {
        if sheets.iter().any(|s| !(s.radius > 0.0 && s.radius.is_finite() && s.strength.is_finite())) {
            return Err(Error::param("sheets", "radii must be positive and strengths finite"));
        }
        sheets.sort_by(|x, y| x.radius.total_cmp(&y.radius));
        if sheets.windows(2).any(|w| w[0].radius == w[1].radius) {
            return Err(Error::param("sheets", "sheet radii must be distinct"));
        }
        if let Some(s) = &smooth {
            if !(0.0 <= s.lo && s.lo < s.hi && s.hi.is_finite()) {
                return Err(Error::param("smooth current", format!("bad support [{}, {}]", s.lo, s.hi)));
            }
        }
        Ok(CurrentDistribution { sheets, smooth })
    }

    pub fn sheet(radius: f64, strength: f64) -> Result<Self> {
        Self::new(vec![Sheet { radius, strength }], None)
    }

    /// The sheet at `r_e` whose interior field is `b_e`.
    pub fn electron(r_e: f64, b_e: f64) -> Result<Self> {
        Self::sheet(r_e, b_e / (4.0 * PI))
    }

    /// Supercurrent of a shielded profile, supported on the shell.
    pub fn supercurrent(profile: FieldProfile, geom: &Geometry) -> Result<Self> {
        Self::new(Vec::new(), Some(SmoothCurrent { profile, lo: geom.b, hi: geom.c }))
    }

    pub fn sheets(&self) -> &[Sheet] {
        &self.sheets
    }

    pub fn smooth(&self) -> Option<&SmoothCurrent> {
        self.smooth.as_ref()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if self.smooth.is_some() {
            return Err(Error::param("current", "scaling a smooth current is not supported"));
        }
        Self::new(self.sheets.iter().map(|s| Sheet { radius: s.radius, strength: s.strength * factor }).collect(), None)
    }

    /// Union of two sheet sets; sheets at a common radius are merged.
    pub fn combined(&self, other: &CurrentDistribution) -> Result<Self> {
        if self.smooth.is_some() || other.smooth.is_some() {
            return Err(Error::param("current", "combining smooth currents is not supported"));
        }
        let mut sheets: Vec<Sheet> = Vec::new();
        for s in self.sheets.iter().chain(&other.sheets) {
            match sheets.iter_mut().find(|t| t.radius == s.radius) {
                Some(t) => t.strength += s.strength,
                None => sheets.push(*s),
            }
        }
        Self::new(sheets, None)
    }
}

/// Vacuum field of a set of sheets, laid out on the geometry's regions and
/// split further at every sheet radius.
pub fn vacuum_field(cur: &CurrentDistribution, geom: &Geometry) -> Result<FieldProfile> {
    if cur.smooth.is_some() {
        return Err(Error::param("current", "vacuum_field takes sheet currents only"));
    }
    let mut cuts: Vec<f64> = geom.boundaries().iter().skip(1).map(|b| b.0).collect();
    cuts.extend(cur.sheets.iter().map(|s| s.radius));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let region_of =
        |r: f64| geom.boundaries().into_iter().find(|&(lo, hi, _)| lo <= r && r < hi).map_or(Region::Exterior, |b| b.2);
    // B inside each sheet is 4 pi K; a(r) = sum 2 pi K min(r, R)^2.
    let form_on = |lo: f64| {
        let mut f = Form::default();
        for s in &cur.sheets {
            let w = 2.0 * PI * s.strength;
            if s.radius > lo {
                f.quad += w;
            } else {
                f.constant += w * s.radius * s.radius;
            }
        }
        f
    };
    let mut segments = Vec::with_capacity(cuts.len() + 1);
    let mut lo = 0.0;
    for hi in cuts.into_iter().chain(std::iter::once(f64::INFINITY)) {
        let probe = if hi.is_finite() { 0.5 * (lo + hi) } else { lo + 1.0 };
        segments.push(Segment { lo, hi, region: region_of(probe), form: form_on(lo) });
        lo = hi;
    }
    Ok(FieldProfile::new(segments))
}

/// `int A . j` per unit length: `sum 2 pi a(R_i) K_i` over sheets plus
/// `int 2 pi a(r) j_phi(r) dr` over any smooth part.
pub fn interaction_energy_aj(profile: &FieldProfile, cur: &CurrentDistribution) -> Result<f64> {
    let mut total = 0.0;
    for s in &cur.sheets {
        total += 2.0 * PI * profile.a(s.radius)? * s.strength;
    }
    if let Some(sm) = &cur.smooth {
        let mut bps = profile.breakpoints();
        bps.extend(sm.profile.breakpoints());
        let f = |r: f64| 2.0 * PI * profile.a(r).unwrap_or(f64::NAN) * sm.profile.j_phi(r).unwrap_or(f64::NAN);
        total += overlap_integral(f, sm.lo, sm.hi, &bps)?;
    }
    Ok(total)
}

/// `(1/4pi) int B_z b_z 2 pi r dr`. Both profiles must be source-free
/// (constant `a`) beyond some radius.
pub fn interaction_energy_bb(profile_b: &FieldProfile, profile_small_b: &FieldProfile) -> Result<f64> {
    let r1 = profile_b.decay_radius().ok_or(Error::NonDecaying)?;
    let r2 = profile_small_b.decay_radius().ok_or(Error::NonDecaying)?;
    let r_max = r1.max(r2);
    let mut bps = profile_b.breakpoints();
    bps.extend(profile_small_b.breakpoints());
    let f = |r: f64| {
        let x = profile_b.b_z(r).unwrap_or(f64::NAN);
        let y = profile_small_b.b_z(r).unwrap_or(f64::NAN);
        0.5 * x * y * r
    };
    overlap_integral(f, 0.0, r_max, &bps)
}

/// Integral with an absolute floor set by the integrand's own magnitude, so
/// exact or near cancellation does not stall the adaptive loop.
pub(crate) fn overlap_integral<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, bps: &[f64]) -> Result<f64> {
    let magnitude = integrate(|r| f(r).abs(), lo, hi, bps, 1e-6, 0.0)?.value;
    if magnitude == 0.0 {
        return Ok(0.0);
    }
    Ok(integrate(&f, lo, hi, bps, REL_TOL, 1e-14 * magnitude)?.value)
}

/// Named interaction-energy terms, in insertion order.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct EnergyLedger {
    pub entries: Vec<(String, f64)>,
}

impl EnergyLedger {
    pub fn push(&mut self, name: &str, value: f64) {
        self.entries.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|e| e.1)
    }
}

pub mod terms {
    pub const A_DOT_JE: &str = "A_dot_je";
    pub const B_DOT_BE: &str = "B_dot_be_over_4pi";
    pub const A_DOT_JQ: &str = "A_dot_jq";
    pub const B_DOT_BQ: &str = "B_dot_bq_over_4pi";
    pub const B_DOT_HE: &str = "B_dot_he_over_4pi";
    pub const TOTAL: &str = "total";
}

/// Ledger for the electron sheet near a shielded flux line: `int A . j_e`
/// with the background's shielded potential against the overlap of the
/// shielded background field with the electron's vacuum field.
pub fn shielded_ledger(geom: &Geometry, lp: &LondonParams, src: &SourceConfig, fs: &FluxState) -> Result<EnergyLedger> {
    let dec = source_decomposition(geom, lp, src, fs)?;
    let electron = CurrentDistribution::electron(geom.r_e, src.b_e)?;
    let aj = interaction_energy_aj(&dec.background, &electron)?;
    let bb = interaction_energy_bb(&dec.background, &dec.electron_vacuum)?;
    let mut ledger = EnergyLedger::default();
    ledger.push(terms::A_DOT_JE, aj);
    ledger.push(terms::B_DOT_BE, bb);
    ledger.push(terms::TOTAL, bb);
    Ok(ledger)
}
