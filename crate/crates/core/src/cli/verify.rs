//! Self-checks run by `abshield verify` against the configured scenario.

use crate::energetics::{
    diamagnet_overlap, interaction_energy_aj, interaction_energy_bb, terms, toy_two_particle, tuned_partner,
    vacuum_field, CurrentDistribution, DiamagnetConfig,
};
use crate::london::{
    flux_within, quantized_flux, solve_london_approx, solve_london_exact, solve_london_exact_with_report, solve_vacuum,
    source_decomposition, surface_current_summary, Geometry, LondonParams, SourceConfig,
};
use crate::specfun::{bessel_ik, bessel_jy, Order};
use crate::spectrum::{ab_shift_sweep, annulus_eigenvalues, effective_order, fd_spectrum_oracle};
use crate::Result;

use super::commands::approx_deviation;
use super::config::RunConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance, pass: value <= tolerance }
    }
}

fn rel(x: f64, y: f64) -> f64 {
    let s = x.abs().max(y.abs());
    if s == 0.0 {
        0.0
    } else {
        (x - y).abs() / s
    }
}

const ORDERS: [f64; 7] = [0.0, 0.25, 0.5, 1.0, 2.25, 5.0, 12.5];

fn arguments() -> impl Iterator<Item = f64> {
    (0..60).map(|i| 0.1 * 500f64.powf(i as f64 / 59.0))
}

fn wronskians(tol: f64) -> Result<Vec<Check>> {
    let (mut jy, mut ik, mut rec) = (0.0f64, 0.0f64, 0.0f64);
    for nu in ORDERS {
        let o = Order::new(nu)?;
        let up = Order::new(nu + 1.0)?;
        for x in arguments() {
            let w = bessel_jy(o, x)?;
            let scale = 2.0 / (std::f64::consts::PI * x);
            jy = jy.max((w.j * w.yp - w.jp * w.y - scale).abs());
            if x <= 50.0 {
                let m = bessel_ik(o, x)?;
                ik = ik.max((m.i * m.kp - m.ip * m.k + 1.0 / x).abs());
            }
            // J_{nu+1} = (nu/x) J_nu - J_nu'
            let j1 = bessel_jy(up, x)?.j;
            let d = w.jp.abs().max(j1.abs()).max(w.j.abs() * nu / x);
            if d > 0.0 {
                rec = rec.max((j1 - (nu / x * w.j - w.jp)).abs() / d);
            }
        }
    }
    Ok(vec![
        Check::at_most("wronskian_jy", jy, tol),
        Check::at_most("wronskian_ik", ik, tol),
        Check::at_most("recurrence_j", rec, tol),
    ])
}

fn spectra(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let ann = cfg.annulus();
    let n = cfg.sweep.n_max.max(5);

    let half = annulus_eigenvalues(ann, Order::new(0.5)?, n)?;
    let mut dev: f64 = 0.0;
    for (i, m) in half.iter().enumerate() {
        let k = (i + 1) as f64 * std::f64::consts::PI / ann.width();
        dev = dev.max(rel(m.energy, k * k));
    }
    let mut out = vec![Check::at_most("half_integer_closed_form", dev, 1e-10)];

    let mut oracle: f64 = 0.0;
    for nu in [0.0, 0.5, 2.25] {
        let o = Order::new(nu)?;
        let modes = annulus_eigenvalues(ann, o, n)?;
        let fd = fd_spectrum_oracle(ann, o, tol.fd_intervals, n)?;
        for (m, e) in modes.iter().zip(&fd) {
            oracle = oracle.max(rel(m.energy, *e));
        }
    }
    out.push(Check::at_most("fd_oracle_agreement", oracle, tol.oracle_rel));

    let mut steps: f64 = f64::INFINITY;
    for level in 0..n {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=30 {
            let e = annulus_eigenvalues(ann, Order::new(0.1 * i as f64)?, n)?[level].energy;
            steps = steps.min(e - prev);
            prev = e;
        }
    }
    out.push(Check { name: "monotone_in_order".into(), value: steps, tolerance: 0.0, pass: steps > 0.0 });

    let grid: Vec<f64> = (0..=40).map(|i| -1.0 + 0.05 * i as f64).collect();
    let s = &cfg.sweep;
    let sweep = ab_shift_sweep(ann, &grid, s.l_min..=s.l_max, s.n_max)?;
    let idx = |f: f64| grid.iter().position(|&g| (g - f).abs() < 1e-12).expect("on grid");
    let period = (sweep.ground_shift[idx(1.0)] - sweep.ground_shift[idx(0.0)]).abs();
    let mut mirror: f64 = 0.0;
    for (i, &f) in grid.iter().enumerate() {
        mirror = mirror.max((sweep.ground_shift[i] - sweep.ground_shift[idx(-f)]).abs());
        if (0.0..=1.0).contains(&f) {
            mirror = mirror.max((sweep.ground_shift[i] - sweep.ground_shift[idx(1.0 - f)]).abs());
        }
    }
    let scale = sweep.reference_energy.abs();
    out.push(Check::at_most("shift_periodic", period / scale, tol.periodicity));
    out.push(Check::at_most("shift_reflection_symmetric", mirror / scale, tol.periodicity));
    let peak = sweep.ground_shift[idx(0.5)];
    let max = sweep.ground_shift.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    out.push(Check {
        name: "shift_peaks_at_half_flux".into(),
        value: peak,
        tolerance: max,
        pass: peak > 0.0 && peak >= max,
    });
    // whole-quantum relabelling keeps the spectrum below the first level that
    // the finite l window may have truncated
    let cut = (s.l_min..=s.l_max)
        .filter(|&l| l == s.l_min || l == s.l_max)
        .map(|l| annulus_eigenvalues(ann, effective_order(l, 0.0), 1).map(|m| m[0].energy))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let (a, b) = (sweep.energies_below(idx(0.0), cut), sweep.energies_below(idx(1.0), cut));
    let relabel =
        if a.len() == b.len() { a.iter().zip(&b).map(|(x, y)| rel(*x, *y)).fold(0.0, f64::max) } else { f64::INFINITY };
    out.push(Check::at_most("spectrum_whole_quantum_relabel", relabel, tol.periodicity));
    Ok(out)
}

fn fields(cfg: &RunConfig) -> Result<Vec<Check>> {
    let g = &cfg.geometry;
    let lp = cfg.london_params();
    let src = cfg.source();
    let fs = quantized_flux(src.phi_a)?;
    let tol = &cfg.tolerances;
    let mut out = Vec::new();
    if !src.include_shield {
        return Ok(out);
    }

    let (exact, report) = solve_london_exact_with_report(g, &lp, &src, &fs)?;
    out.push(Check::at_most("matching_continuity", report.continuity_residual, 1e-10));

    // the plateau is set by the larger of the two sources
    let scale = (src.phi_a - fs.phi_q()).abs().max(std::f64::consts::PI * g.c * g.c * src.b_e.abs());
    let plateau = (flux_within(&exact, g.shell_mid())? - fs.phi_q()).abs();
    let bound = (-8.0f64).exp() * scale;
    out.push(Check { name: "mid_shell_flux_plateau".into(), value: plateau, tolerance: bound, pass: plateau <= bound });

    let approx = solve_london_approx(g, &lp, &src, &fs)?;
    out.push(Check::at_most("approx_vs_exact", approx_deviation(&exact, &approx, g.a, g.e)?, tol.approx_rel));

    let w = lp.thickness(g);
    let decay = 2.0 * (-0.5 * w).exp();
    let bg = solve_london_exact(g, &lp, &SourceConfig::new(src.phi_a, 0.0, true)?, &fs)?;
    let probe_b_e = if src.b_e != 0.0 { src.b_e } else { 0.01 };
    let el = solve_london_exact(g, &lp, &SourceConfig::new(fs.phi_q(), probe_b_e, true)?, &fs)?;
    let bs = surface_current_summary(&bg, &lp, g)?;
    let es = surface_current_summary(&el, &lp, g)?;
    if bs.inner_sheet != 0.0 {
        out.push(Check::at_most("background_current_on_inner_face", (bs.outer_sheet / bs.inner_sheet).abs(), decay));
    }
    out.push(Check::at_most("electron_current_on_outer_face", (es.inner_sheet / es.outer_sheet).abs(), decay));
    if w >= 20.0 {
        if let Some(f) = bs.inner_fit {
            out.push(Check::at_most("inner_face_decay_rate", f.deviation, 0.01));
        }
        if let Some(f) = es.outer_fit {
            out.push(Check::at_most("outer_face_decay_rate", f.deviation, 0.01));
        }
    }

    let probe = SourceConfig::new(src.phi_a, probe_b_e, true)?;
    let dec = source_decomposition(g, &lp, &probe, &fs)?;
    let full = solve_london_exact(g, &lp, &probe, &fs)?;
    let total = dec.total()?;
    let mut sup: f64 = 0.0;
    let mut mag: f64 = 0.0;
    for (x, y) in full.sample(0.0, g.e, 801)?.iter().zip(total.sample(0.0, g.e, 801)?) {
        sup = sup.max((y.b_z - x.b_z).abs());
        mag = mag.max(x.b_z.abs());
    }
    out.push(Check::at_most("superposition", sup / mag, 1e-10));
    let residual = dec.electron_total()?.b_z(g.shell_mid())?.abs() / probe_b_e.abs();
    out.push(Check::at_most("bulk_screening_cancels", residual, 1e-6));

    let mut prev = f64::INFINITY;
    let mut worst: f64 = f64::NEG_INFINITY;
    for bb in [25.0, 50.0, 100.0, 200.0] {
        let lp = LondonParams::new(bb / g.b, g)?;
        let dev = approx_deviation(
            &solve_london_exact(g, &lp, &src, &fs)?,
            &solve_london_approx(g, &lp, &src, &fs)?,
            g.a,
            g.e,
        )?;
        worst = worst.max(dev - prev);
        prev = dev;
    }
    out.push(Check { name: "approx_converges_with_beta".into(), value: worst, tolerance: 0.0, pass: worst < 0.0 });
    Ok(out)
}

fn energies(cfg: &RunConfig) -> Result<Vec<Check>> {
    let g = &cfg.geometry;
    let src = cfg.source();
    let tol = cfg.tolerances.identity_rel;
    let mut out = Vec::new();

    let electron = CurrentDistribution::electron(g.r_e, src.b_e)?;
    let bg = solve_vacuum(g, &SourceConfig::new(src.phi_a, 0.0, false)?)?;
    let aj = interaction_energy_aj(&bg, &electron)?;
    let bb = interaction_energy_bb(&bg, &vacuum_field(&electron, g)?)?;
    out.push(Check::at_most("vacuum_energy_identity", rel(aj, bb), tol));

    if src.include_shield {
        let lp = cfg.london_params();
        let fs = quantized_flux(src.phi_a)?;
        let dec = source_decomposition(g, &lp, &src, &fs)?;
        let aj = interaction_energy_aj(&dec.background, &electron)?;
        let bb = interaction_energy_bb(&dec.background, &dec.electron_vacuum)?;
        out.push(Check::at_most("shielded_energy_identity", rel(aj, bb), 1e-6));
    }

    // unit test sheet so every term is well above the noise floor
    let e_sheet = CurrentDistribution::electron(g.r_e, 1.0)?;
    let q_sheet = tuned_partner(&e_sheet, g.shell_mid())?;
    let unit_bg = solve_vacuum(g, &SourceConfig::new(src.phi_a.max(0.5), 0.0, false)?)?;
    let toy = toy_two_particle(g, &q_sheet, &e_sheet, &unit_bg)?;
    let term = toy.get(terms::A_DOT_JE).unwrap_or(0.0).abs();
    let total = toy.get(terms::TOTAL).unwrap_or(f64::NAN).abs();
    out.push(Check {
        name: "toy_total_cancels".into(),
        value: total,
        tolerance: 1e-10 * term,
        pass: total <= 1e-10 * term && term > 1e-2,
    });

    for (name, mu, limit) in
        [("diamagnet_overlap_config_mu", cfg.london.mu, 1e-8), ("diamagnet_overlap_mu_1e-4", 1e-4, 1e-3)]
    {
        let l = diamagnet_overlap(g, &DiamagnetConfig::new(mu)?, &SourceConfig::new(src.phi_a, 1.0, false)?)?;
        let aj = l.get(terms::A_DOT_JE).unwrap_or(f64::NAN);
        let bh = l.get(terms::B_DOT_HE).unwrap_or(f64::NAN);
        out.push(Check::at_most(name, rel(aj, bh), limit));
    }
    Ok(out)
}

/// Every check for the scenario in `cfg`.
pub fn run_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let geom: &Geometry = &cfg.geometry;
    geom.validate()?;
    let mut out = wronskians(cfg.tolerances.wronskian)?;
    out.extend(spectra(cfg)?);
    out.extend(fields(cfg)?);
    out.extend(energies(cfg)?);
    Ok(out)
}
