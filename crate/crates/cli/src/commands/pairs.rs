//! Binding thresholds, pair energies and the exact-diagonalization oracle.

use std::f64::consts::PI;

use serde_json::{json, Value};

use hhsim::ed_oracle::{extrapolate_energy, ground_energy_sweep, FitModel, Sector};
use hhsim::painted_lattice::PatternKind;
use hhsim::pair_solver::strong_coupling::{lower_branch_curvature, secular_eigenvalues};
use hhsim::pair_solver::{
    inverse_pair_mass, lf_map, pair_dispersion_strong_coupling, pair_energies, pair_energy_sweep, physical_pole,
    threshold_diagonal, threshold_full, threshold_physical, BindingThreshold, LfParams, LfVariant, UvModel, UvVariant,
};
use hhsim::parallel::{self, Execution};
use hhsim::rydberg_coupling::effective_interaction_with;
use hhsim::Result;

use super::optics::PARAMS_N_RYD;
use super::{branch_indices, row};
use crate::config::{axis, PatternName, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{Artifact, Table};

pub(crate) fn threshold_of(model: &UvModel) -> Result<BindingThreshold> {
    match model.variant {
        UvVariant::SingleDiagonal { v } => threshold_diagonal(v, model.t_prime),
        UvVariant::BothDiagonals { v1, v2 } => threshold_full(v1, v2, model.t_prime),
    }
}

fn threshold_record(th: &BindingThreshold) -> Value {
    json!({
        "u_cr": th.u_cr,
        "regime": th.regime,
        "no_solution_for_repulsive_u": th.no_solution_for_repulsive_u,
    })
}

pub(crate) fn diagonal_threshold_table(v_values: &[f64], t_prime: f64) -> CliResult<Table> {
    let th: Vec<BindingThreshold> = v_values
        .iter()
        .map(|&v| threshold_diagonal(v, t_prime))
        .collect::<Result<_>>()
        .map_err(CliError::numeric("single-diagonal threshold"))?;
    let den: Vec<f64> = th.iter().map(|t| t.denominator).collect();
    let mut table = Table::new("binding_diagonal", &["v", "u_cr", "branch", "regime"]);
    for ((&v, t), b) in v_values.iter().zip(&th).zip(branch_indices(&den)) {
        table.push(row![v, t.u_cr, b, format!("{:?}", t.regime)]);
    }
    Ok(table)
}

pub(crate) fn physical_threshold_table(lambda_max: f64, points: usize) -> CliResult<Table> {
    let lambdas = axis(0.0, lambda_max, points);
    let mut table = Table::new("binding_physical", &["lambda", "hopping", "t_prime", "u_cr", "u_fesh_cr", "branch"]);
    for (name, renormalized) in [("renormalized", true), ("bare", false)] {
        let th: Vec<_> = lambdas
            .iter()
            .map(|&l| threshold_physical(l, 1.0, renormalized))
            .collect::<Result<_>>()
            .map_err(CliError::numeric("physical-case threshold"))?;
        let den: Vec<f64> = th.iter().map(|t| t.denominator).collect();
        for (t, b) in th.iter().zip(branch_indices(&den)) {
            table.push(row![t.lambda, name, t.t_prime, t.u_cr, t.u_fesh_cr, b]);
        }
    }
    Ok(table)
}

pub(crate) const MAIN_PATTERNS: [PatternName; 4] =
    [PatternName::HolsteinReference, PatternName::BipartiteParallel, PatternName::Crossed, PatternName::OffsetParallel];

pub(crate) fn pattern_label(kind: &PatternKind) -> &'static str {
    match kind {
        PatternKind::HolsteinReference => "holstein-reference",
        PatternKind::BipartiteParallel => "bipartite-parallel",
        PatternKind::Crossed => "crossed",
        PatternKind::OffsetParallel { .. } => "offset-parallel",
    }
}

/// Critical Feshbach interaction (units of t) against λ for each pattern,
/// with its Φ ratios and ħω_ph = `omega_over_t`·t.
pub(crate) fn main_threshold_table(cfg: &RunConfig, exec: Execution) -> CliResult<(Table, Value)> {
    let a = cfg.lattice.a;
    let b = &cfg.binding;
    let spec = cfg.rydberg.spec(PARAMS_N_RYD, a);
    let lambdas = axis(0.0, b.main_lambda_max, b.main_lambda_points);
    let mut table = Table::new("binding_main", &["pattern", "lambda", "t_prime", "u_fesh_cr", "branch"]);
    let mut patterns = Vec::new();
    for name in MAIN_PATTERNS {
        let mut pc = cfg.pattern.clone();
        pc.kind = Some(name);
        let pattern = pc.build(a, name, cfg.pattern.v0_ph);
        let map = effective_interaction_with(exec, &pattern, &spec, a, 1);
        let (nn, nnn) = (map.nn_ratio(), map.nnn_ratio());
        let rows: Vec<(f64, BindingThreshold)> = parallel::map(exec, &lambdas, |&l| {
            let p = LfParams {
                t_bare: 1.0,
                lambda: l,
                hbar_omega_ph: b.omega_over_t,
                phi_nn_ratio: nn,
                phi_nnn_ratio: nnn,
                u_fesh: 0.0,
            };
            let m = lf_map(&p, LfVariant::MainText)?;
            Ok((m.t_prime, threshold_of(&m)?))
        })
        .into_iter()
        .collect::<Result<_>>()
        .map_err(CliError::numeric("main-text threshold"))?;
        let den: Vec<f64> = rows.iter().map(|r| r.1.denominator).collect();
        let branches = branch_indices(&den);
        let label = pattern_label(&pattern.kind);
        for ((l, (tp, th)), br) in lambdas.iter().zip(&rows).zip(&branches) {
            table.push(row![label, *l, *tp, th.u_cr + 8.0 * l, *br]);
        }
        let first_pole = branches.iter().position(|&x| x > 0).map(|i| 0.5 * (lambdas[i - 1] + lambdas[i]));
        patterns.push(json!({
            "pattern": label,
            "phi_nn_ratio": nn,
            "phi_nnn_ratio": nnn,
            "first_pole_lambda": first_pole,
        }));
    }
    Ok((table, json!(patterns)))
}

pub fn binding(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let b = &cfg.binding;
    let diag = diagonal_threshold_table(&axis(b.v_min, b.v_max, b.v_points), b.t_prime)?;
    let phys = physical_threshold_table(b.lambda_max, b.lambda_points)?;
    let (main, patterns) = main_threshold_table(cfg, exec)?;
    let pole = |r| physical_pole(1.0, r, b.lambda_max).map_err(CliError::numeric("physical pole"));
    let summary = json!({
        "t_prime": b.t_prime,
        "physical_pole_renormalized": pole(true)?,
        "physical_pole_bare": pole(false)?,
        "omega_over_t": b.omega_over_t,
        "patterns": patterns,
        "units": "energies in units of t' (diagonal) or t (physical, main)",
    });
    Ok(vec![
        Artifact::Table(diag),
        Artifact::Table(phys),
        Artifact::Table(main),
        Artifact::record("binding_summary", summary),
    ])
}

/// Bound states for each model; `param` names the swept quantity.
pub(crate) fn pair_energy_table(
    name: &str,
    param: &str,
    values: &[f64],
    models: &[UvModel],
    exec: Execution,
) -> CliResult<Table> {
    let results = pair_energy_sweep(exec, models);
    let mut table = Table::new(name, &[param, "n_bound", "branch", "energy"]);
    for (x, r) in values.iter().zip(results) {
        let states = r.map_err(CliError::numeric(format!("pair energies at {param} = {x}")))?;
        for s in &states {
            table.push(row![*x, states.len(), s.branch, s.energy]);
        }
    }
    Ok(table)
}

/// Γ → X → M → Γ with `n` points per segment.
pub(crate) fn bz_path(n: usize) -> Vec<(&'static str, [f64; 2])> {
    let corners = [("gamma-x", [0.0, 0.0], [PI, 0.0]), ("x-m", [PI, 0.0], [PI, PI]), ("m-gamma", [PI, PI], [0.0, 0.0])];
    let mut out = Vec::new();
    for (seg, p, q) in corners {
        for i in 0..n {
            let s = i as f64 / (n - 1) as f64;
            out.push((seg, [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]));
        }
    }
    out
}

pub(crate) fn dispersion_table(name: &str, u: f64, v: f64, t_prime: f64, n: usize) -> Table {
    let mut table = Table::new(
        name,
        &["index", "segment", "kx", "ky", "e_lower", "e_immobile", "e_upper", "secular_0", "secular_1", "secular_2"],
    );
    for (i, (seg, k)) in bz_path(n).into_iter().enumerate() {
        let c = pair_dispersion_strong_coupling(u, v, t_prime, k);
        let s = secular_eigenvalues(u, v, t_prime, k);
        table.push(row![i, seg, k[0], k[1], c[0].energy, c[1].energy, c[2].energy, s[0], s[1], s[2]]);
    }
    table
}

pub fn pair(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let p = &cfg.pair;
    let us = axis(p.u_min, p.u_max, p.u_points);
    let models: Vec<UvModel> = us.iter().map(|&u| p.model(u)).collect();
    let energies = pair_energy_table("pair_energies", "u", &us, &models, exec)?;
    let dispersion = dispersion_table("pair_dispersion", p.u_dispersion, p.v, p.t_prime, p.k_points);

    let reference = p.model(p.u_dispersion);
    let th = threshold_of(&reference).map_err(CliError::numeric("pair threshold"))?;
    let states = pair_energies(&reference).map_err(CliError::numeric("pair energies"))?;
    let inv_mass = inverse_pair_mass(p.u_dispersion, p.v, p.t_prime);
    let curvature = lower_branch_curvature(p.u_dispersion, p.v, p.t_prime, 1e-3);
    let summary = json!({
        "model": reference,
        "threshold": threshold_record(&th),
        "states_at_u_dispersion": states,
        "inverse_mass_closed_form": inv_mass,
        "lower_branch_curvature": curvature,
        "units": "energies in units of t'; inverse mass in t'·a²/ħ²",
    });
    Ok(vec![Artifact::Table(energies), Artifact::Table(dispersion), Artifact::record("pair_summary", summary)])
}

pub(crate) fn sector_for(model: &UvModel) -> Sector {
    match model.variant {
        UvVariant::SingleDiagonal { .. } => Sector::Symmetric,
        UvVariant::BothDiagonals { .. } => Sector::FullySymmetric,
    }
}

pub(crate) fn oracle_artifacts(
    prefix: &str,
    model: &UvModel,
    sizes: &[usize],
    n_states: usize,
    compare: bool,
    exec: Execution,
) -> CliResult<Vec<Artifact>> {
    let sector = sector_for(model);
    let spectra = ground_energy_sweep(exec, model, sizes, n_states, sector)
        .map_err(CliError::numeric("exact diagonalization"))?;
    let edge = -8.0 * model.t_prime;
    let mut energies = Table::new(&format!("{prefix}_energies"), &["l", "dimension", "state", "energy", "bound"]);
    for s in &spectra {
        let cut = edge - hhsim::ed_oracle::bound_margin(model.t_prime, s.lattice.l);
        for (i, &e) in s.energies.iter().enumerate() {
            energies.push(row![s.lattice.l, s.dimension, i, e, e < cut]);
        }
    }

    let roots = if compare { Some(pair_energies(model).map_err(CliError::numeric("pair energies"))?) } else { None };
    let mut extrap = Table::new(
        &format!("{prefix}_extrapolation"),
        &["state", "e_inf", "error", "fit", "band_edge", "unreliable", "root", "difference"],
    );
    if sizes.len() >= 3 {
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by_key(|&i| sizes[i]);
        let ls: Vec<usize> = order.iter().map(|&i| sizes[i]).collect();
        let n = spectra.iter().map(|s| s.energies.len()).min().unwrap_or(0);
        for b in 0..n {
            let e: Vec<f64> = order.iter().map(|&i| spectra[i].energies[b]).collect();
            let x = extrapolate_energy(&ls, &e, model.t_prime).map_err(CliError::numeric("extrapolation"))?;
            let root = roots.as_ref().and_then(|r| r.get(b)).map_or(f64::NAN, |s| s.energy);
            let fit = match x.model {
                FitModel::InverseSquare => "inverse-square",
                FitModel::Geometric => "geometric",
            };
            extrap.push(row![b, x.e_inf, x.error, fit, x.band_edge, x.unreliable, root, x.e_inf - root]);
        }
    }
    let largest = spectra.iter().max_by_key(|s| s.lattice.l);
    let summary = json!({
        "model": model,
        "sector": sector,
        "sizes": sizes,
        "bound_count_largest": largest.map(|s| s.bound_count),
        "roots": roots,
        "threshold": threshold_of(model).ok().map(|t| threshold_record(&t)),
    });
    Ok(vec![
        Artifact::Table(energies),
        Artifact::Table(extrap),
        Artifact::record(&format!("{prefix}_summary"), summary),
    ])
}

pub fn oracle(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let o = &cfg.oracle;
    oracle_artifacts("oracle", &o.model(), &o.sizes, o.n_states, o.compare, exec)
}
