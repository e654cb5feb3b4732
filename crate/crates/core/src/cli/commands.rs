use crate::energetics::{
    diamagnet_overlap, interaction_energy_aj, interaction_energy_bb, toy_two_particle, tuned_partner, vacuum_field,
    CurrentDistribution, DiamagnetConfig, EnergyLedger,
};
use crate::london::{
    flux_within, quantized_flux, solve_london_approx, solve_london_exact_with_report, solve_vacuum,
    source_decomposition, surface_current_summary, FieldProfile, SourceConfig,
};
use crate::spectrum::ab_shift_sweep;

use super::config::{RunConfig, SolverKind};
use super::table::{fmt_float, Cell, ResultTable};
use super::{solver, CliError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn with_echo(mut t: ResultTable, cfg: &RunConfig) -> ResultTable {
    t.meta("version", VERSION);
    for (k, v) in cfg.echo() {
        t.meta(&k, v);
    }
    t
}

pub fn spectrum(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let grid = cfg.flux_grid();
    let s = &cfg.sweep;
    let sweep = ab_shift_sweep(cfg.annulus(), &grid, s.l_min..=s.l_max, s.n_max).map_err(solver("spectrum sweep"))?;
    let mut t = with_echo(ResultTable::new("spectrum", &["F", "l", "n", "E", "delta_E"]), cfg);
    t.meta_float("reference_energy", sweep.reference_energy);
    t.meta_float("max_root_residual", sweep.max_residual);
    for (i, &f) in sweep.flux_grid.iter().enumerate() {
        for lv in &sweep.rows[i] {
            t.push(vec![f.into(), lv.l.into(), lv.n.into(), lv.energy.into(), sweep.ground_shift[i].into()]);
        }
    }
    Ok(t)
}

/// Largest `|a_approx - a_exact|` over `[a, e]` relative to `max |a_exact|`.
pub fn approx_deviation(exact: &FieldProfile, approx: &FieldProfile, lo: f64, hi: f64) -> crate::Result<f64> {
    let n = 2000;
    let mut dev: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..=n {
        let r = lo + (hi - lo) * i as f64 / n as f64;
        let x = exact.a(r)?;
        dev = dev.max((approx.a(r)? - x).abs());
        scale = scale.max(x.abs());
    }
    Ok(if scale > 0.0 { dev / scale } else { dev })
}

fn profile_table(name: &str, profile: &FieldProfile, cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let samples = profile.sample(0.0, cfg.geometry.e, cfg.output.profile_points).map_err(solver("profile sampling"))?;
    let mut t = with_echo(ResultTable::new(name, &["r", "a_r", "B_z", "j_phi", "region"]), cfg);
    for s in samples {
        t.push(vec![s.r.into(), s.a.into(), s.b_z.into(), s.j_phi.into(), s.region.name().into()]);
    }
    Ok(t)
}

/// Summary table plus the sampled profile of the configured solver.
pub fn fields(cfg: &RunConfig) -> Result<Vec<ResultTable>, CliError> {
    let g = &cfg.geometry;
    let lp = cfg.london_params();
    let src = cfg.source();
    let fs = quantized_flux(src.phi_a).map_err(solver("flux quantization"))?;
    let (exact, report) = solve_london_exact_with_report(g, &lp, &src, &fs).map_err(solver("exact London solve"))?;
    let approx = solve_london_approx(g, &lp, &src, &fs).map_err(solver("approximate London solve"))?;
    let chosen = match cfg.london.solver {
        SolverKind::Exact => &exact,
        SolverKind::Approx => &approx,
    };

    let mut t = with_echo(ResultTable::new("fields", &["quantity", "value"]), cfg);
    for w in approx.warnings() {
        t.meta("warning", w.clone());
    }
    let flux = |r: f64| flux_within(chosen, r).map_err(solver("flux_within"));
    t.push(vec!["l_q".into(), fs.l_q.into()]);
    t.push(vec!["phi_q".into(), fs.phi_q().into()]);
    t.push(vec!["flux_within_a".into(), flux(g.a)?.into()]);
    t.push(vec!["flux_within_b".into(), flux(g.b)?.into()]);
    t.push(vec!["flux_within_shell_mid".into(), flux(g.shell_mid())?.into()]);
    t.push(vec!["flux_within_c".into(), flux(g.c)?.into()]);
    t.push(vec!["flux_within_r_e".into(), flux(g.r_e)?.into()]);
    t.push(vec!["flux_within_e".into(), flux(g.e)?.into()]);
    t.push(vec!["shell_thickness_beta".into(), lp.thickness(g).into()]);
    t.push(vec!["matching_condition".into(), report.condition.into()]);
    t.push(vec!["matching_residual".into(), report.continuity_residual.into()]);
    if src.include_shield {
        let dev = approx_deviation(&exact, &approx, g.a, g.e).map_err(solver("approximation comparison"))?;
        t.push(vec!["approx_max_rel_deviation".into(), dev.into()]);
        let sc = surface_current_summary(chosen, &lp, g).map_err(solver("surface current summary"))?;
        t.push(vec!["inner_sheet_current".into(), sc.inner_sheet.into()]);
        t.push(vec!["outer_sheet_current".into(), sc.outer_sheet.into()]);
        if let Some(f) = sc.inner_fit {
            t.push(vec!["inner_log_slope".into(), f.slope.into()]);
        }
        if let Some(f) = sc.outer_fit {
            t.push(vec!["outer_log_slope".into(), f.slope.into()]);
        }
        for n in sc.notes {
            t.meta("note", n);
        }
    }
    let profile = profile_table("fields_profile", chosen, cfg)?;
    Ok(vec![t, profile])
}

fn push_ledger(t: &mut ResultTable, case: &str, ledger: &EnergyLedger) {
    for (name, value) in &ledger.entries {
        t.push(vec![case.into(), name.clone().into(), (*value).into()]);
    }
}

pub fn energy(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let g = &cfg.geometry;
    let src = cfg.source();
    let stage = solver("interaction energy");
    let electron = CurrentDistribution::electron(g.r_e, src.b_e).map_err(&stage)?;
    let e_field = vacuum_field(&electron, g).map_err(&stage)?;
    let mut t = with_echo(ResultTable::new("energy", &["case", "term", "value"]), cfg);

    let bg = solve_vacuum(g, &SourceConfig::new(src.phi_a, 0.0, false).map_err(&stage)?).map_err(&stage)?;
    let mut vac = EnergyLedger::default();
    vac.push("A_dot_je", interaction_energy_aj(&bg, &electron).map_err(&stage)?);
    vac.push("B_dot_be_over_4pi", interaction_energy_bb(&bg, &e_field).map_err(&stage)?);
    push_ledger(&mut t, "vacuum", &vac);

    if src.include_shield {
        let lp = cfg.london_params();
        let fs = quantized_flux(src.phi_a).map_err(&stage)?;
        let dec = source_decomposition(g, &lp, &src, &fs).map_err(solver("source decomposition"))?;
        let e_total = dec.electron_total().map_err(&stage)?;
        let mut sh = EnergyLedger::default();
        sh.push("A_dot_je", interaction_energy_aj(&dec.background, &electron).map_err(&stage)?);
        sh.push("B_dot_be_over_4pi", interaction_energy_bb(&dec.background, &dec.electron_vacuum).map_err(&stage)?);
        sh.push("B_dot_be_plus_bs_over_4pi", interaction_energy_bb(&dec.background, &e_total).map_err(&stage)?);
        push_ledger(&mut t, "shielded", &sh);
    }
    Ok(t)
}

pub fn toy(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    let g = &cfg.geometry;
    let src = cfg.source();
    let stage = solver("toy model");
    let bg = solve_vacuum(g, &SourceConfig::new(src.phi_a, 0.0, false).map_err(&stage)?).map_err(&stage)?;
    let e_sheet = CurrentDistribution::electron(g.r_e, src.b_e).map_err(&stage)?;
    let q_sheet = tuned_partner(&e_sheet, g.shell_mid()).map_err(&stage)?;
    let ledger = toy_two_particle(g, &q_sheet, &e_sheet, &bg).map_err(&stage)?;
    let dia = diamagnet_overlap(g, &DiamagnetConfig::new(cfg.london.mu).map_err(solver("diamagnet"))?, &src)
        .map_err(solver("diamagnet overlap"))?;
    let mut t = with_echo(ResultTable::new("toy", &["case", "term", "value"]), cfg);
    t.meta_float("q_sheet_radius", g.shell_mid());
    push_ledger(&mut t, "two_particle", &ledger);
    push_ledger(&mut t, "diamagnet", &dia);
    Ok(t)
}

pub fn decompose(cfg: &RunConfig) -> Result<ResultTable, CliError> {
    if !cfg.sources.include_shield {
        return Err(CliError::Config {
            key: "sources.include_shield".into(),
            message: "decompose needs the superconducting shell".into(),
        });
    }
    let g = &cfg.geometry;
    let lp = cfg.london_params();
    let src = cfg.source();
    let fs = quantized_flux(src.phi_a).map_err(solver("flux quantization"))?;
    let stage = solver("source decomposition");
    let dec = source_decomposition(g, &lp, &src, &fs).map_err(&stage)?;
    let total = dec.electron_total().map_err(&stage)?;
    let mid = g.shell_mid();
    let residual = total.b_z(mid).map_err(&stage)?;

    let mut t = with_echo(
        ResultTable::new("decompose", &["r", "B_background", "b_e_vac", "b_s", "b_e_plus_b_s", "region"]),
        cfg,
    );
    t.meta("shell_mid_b_e_plus_b_s", fmt_float(residual));
    let sample = |p: &FieldProfile| p.sample(0.0, g.e, cfg.output.profile_points).map_err(&stage);
    let (bg, ev, bs) = (sample(&dec.background)?, sample(&dec.electron_vacuum)?, sample(&dec.screening)?);
    for ((x, y), z) in bg.iter().zip(&ev).zip(&bs) {
        let row: Vec<Cell> =
            vec![x.r.into(), x.b_z.into(), y.b_z.into(), z.b_z.into(), (y.b_z + z.b_z).into(), x.region.name().into()];
        t.push(row);
    }
    Ok(t)
}
