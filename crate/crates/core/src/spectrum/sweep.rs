use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{annulus_eigenvalues, effective_order, Annulus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub l: i64,
    pub n: usize,
    pub energy: f64,
}

/// Energies over a flux grid; rows are sorted by energy within each flux.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub flux_grid: Vec<f64>,
    pub rows: Vec<Vec<Level>>,
    /// `E_min(F) - E_min(0)`.
    pub ground_shift: Vec<f64>,
    /// `E_min(0)`, the reference for `ground_shift`.
    pub reference_energy: f64,
    pub l_range: (i64, i64),
    pub n_max: usize,
    /// Largest relative root residual among all levels.
    pub max_residual: f64,
}

impl SpectrumTable {
    /// Sorted energies at grid index `i` below `cutoff`.
    pub fn energies_below(&self, i: usize, cutoff: f64) -> Vec<f64> {
        self.rows[i].iter().map(|lv| lv.energy).filter(|&e| e < cutoff).collect()
    }
}

struct FluxLevels {
    levels: Vec<Level>,
    ground: Level,
    max_residual: f64,
}

fn levels_at(ann: Annulus, flux: f64, l_range: &RangeInclusive<i64>, n_max: usize) -> Result<FluxLevels> {
    let mut levels = Vec::with_capacity(l_range.clone().count() * n_max);
    let mut max_residual: f64 = 0.0;
    for l in l_range.clone() {
        for m in annulus_eigenvalues(ann, effective_order(l, flux), n_max)? {
            max_residual = max_residual.max(m.residual);
            levels.push(Level { l, n: m.n, energy: m.energy });
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.l.cmp(&b.l)).then(a.n.cmp(&b.n)));
    let ground = levels[0];
    let (lo, hi) = (*l_range.start(), *l_range.end());
    if ground.l == lo || ground.l == hi {
        return Err(Error::LRangeTooNarrow { l: ground.l, lo, hi, flux });
    }
    Ok(FluxLevels { levels, ground, max_residual })
}

/// Sweeps the enclosed flux and records every `(l, n)` level plus the
/// ground-state shift relative to zero flux.
///
/// Grid points are solved in parallel and assembled in grid order.
pub fn ab_shift_sweep(
    ann: Annulus,
    flux_grid: &[f64],
    l_range: RangeInclusive<i64>,
    n_max: usize,
) -> Result<SpectrumTable> {
    if l_range.is_empty() {
        return Err(Error::param("l_range", "empty range"));
    }
    if flux_grid.iter().any(|f| !f.is_finite()) {
        return Err(Error::param("F_grid", "non-finite flux value"));
    }
    let reference = levels_at(ann, 0.0, &l_range, n_max)?;
    let per_flux: Vec<FluxLevels> =
        flux_grid.par_iter().map(|&f| levels_at(ann, f, &l_range, n_max)).collect::<Result<_>>()?;

    let e0 = reference.ground.energy;
    let ground_shift =
        flux_grid.iter().zip(&per_flux).map(|(&f, fl)| if f == 0.0 { 0.0 } else { fl.ground.energy - e0 }).collect();
    let max_residual = per_flux.iter().map(|fl| fl.max_residual).fold(reference.max_residual, f64::max);

    Ok(SpectrumTable {
        flux_grid: flux_grid.to_vec(),
        rows: per_flux.into_iter().map(|fl| fl.levels).collect(),
        ground_shift,
        reference_energy: e0,
        l_range: (*l_range.start(), *l_range.end()),
        n_max,
        max_residual,
    })
}
