use crate::error::{Error, Result};
use crate::london::{FieldProfile, Geometry};

use super::{
    interaction_energy_aj, interaction_energy_bb, terms, vacuum_field, CurrentDistribution, EnergyLedger, Sheet,
};

/// Sheet at `radius` carrying minus the total strength of `e_sheet`, so the
/// two fields cancel inside `radius`.
pub fn tuned_partner(e_sheet: &CurrentDistribution, radius: f64) -> Result<CurrentDistribution> {
    let total: f64 = e_sheet.sheets().iter().map(|s| s.strength).sum();
    CurrentDistribution::new(vec![Sheet { radius, strength: -total }], None)
}

/// Energies of two sheet particles in an unshielded background: each
/// particle's `A . j` and `B . b` terms and the overlap of the background with
/// their summed field.
pub fn toy_two_particle(
    geom: &Geometry,
    q_sheet: &CurrentDistribution,
    e_sheet: &CurrentDistribution,
    background: &FieldProfile,
) -> Result<EnergyLedger> {
    let q_radii: Vec<f64> = q_sheet.sheets().iter().map(|s| s.radius).collect();
    if e_sheet.sheets().iter().any(|s| q_radii.contains(&s.radius)) {
        return Err(Error::param("q_sheet", "particle sheets must sit at distinct radii"));
    }
    let b_e = vacuum_field(e_sheet, geom)?;
    let b_q = vacuum_field(q_sheet, geom)?;
    let both = vacuum_field(&e_sheet.combined(q_sheet)?, geom)?;

    let mut ledger = EnergyLedger::default();
    ledger.push(terms::A_DOT_JE, interaction_energy_aj(background, e_sheet)?);
    ledger.push(terms::B_DOT_BE, interaction_energy_bb(background, &b_e)?);
    ledger.push(terms::A_DOT_JQ, interaction_energy_aj(background, q_sheet)?);
    ledger.push(terms::B_DOT_BQ, interaction_energy_bb(background, &b_q)?);
    ledger.push(terms::TOTAL, interaction_energy_bb(background, &both)?);
    Ok(ledger)
}
