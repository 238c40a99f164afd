//! Data bundles for the reference figures, one subdirectory per target.

use serde_json::json;

use hhsim::pair_solver::{physical_pole, UvModel};
use hhsim::parallel::Execution;
use hhsim::rydberg_coupling::effective_interaction_with;

use super::optics::{b_sweep, params, phi_summary, phi_table, stark, PARAMS_N_RYD};
use super::pairs::{
    diagonal_threshold_table, dispersion_table, main_threshold_table, oracle_artifacts, pair_energy_table,
    physical_threshold_table,
};
use super::{phase, Bundle};
use crate::args::FigureTarget;
use crate::config::{axis, PatternName, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::Artifact;

/// Φ-map panels: the four named patterns, with the offset pattern at three offsets.
const PANELS: [(&str, PatternName, f64); 6] = [
    ("holstein", PatternName::HolsteinReference, 0.4),
    ("bipartite", PatternName::BipartiteParallel, 0.4),
    ("crossed", PatternName::Crossed, 0.4),
    ("offset_040", PatternName::OffsetParallel, 0.4),
    ("offset_045", PatternName::OffsetParallel, 0.45),
    ("offset_050", PatternName::OffsetParallel, 0.5),
];

fn phi_panels(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let a = cfg.lattice.a;
    let spec = cfg.rydberg.spec(PARAMS_N_RYD, a);
    let mut out = Vec::new();
    let mut summaries = Vec::new();
    for (name, kind, b) in PANELS {
        let mut pc = cfg.pattern.clone();
        pc.kind = Some(kind);
        pc.b_over_a_prime = b;
        let pattern = pc.build(a, kind, cfg.pattern.v0_ph);
        pattern.validate(a).map_err(CliError::numeric(format!("pattern {name}")))?;
        let map = effective_interaction_with(exec, &pattern, &spec, a, cfg.phi_map.range);
        out.push(Artifact::Table(phi_table(&format!("phi_map_{name}"), &map)));
        let mut s = phi_summary(&pattern, spec.n_ryd, &map);
        s["panel"] = json!(name);
        summaries.push(s);
    }
    out.push(Artifact::record("phi_panels", summaries));
    Ok(out)
}

fn offsets(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let (main, patterns) = main_threshold_table(cfg, exec)?;
    Ok(vec![
        Artifact::Table(b_sweep(cfg, exec)),
        Artifact::Table(main),
        Artifact::record("binding_patterns", json!({ "omega_over_t": cfg.binding.omega_over_t, "patterns": patterns })),
    ])
}

fn appendix(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let b = &cfg.binding;
    let mut out = vec![
        Artifact::Table(diagonal_threshold_table(&axis(b.v_min, b.v_max, b.v_points), b.t_prime)?),
        Artifact::Table(physical_threshold_table(b.lambda_max, b.lambda_points)?),
    ];
    let vs = axis(-10.0, 0.0, 101);
    for (name, u) in [("pair_v_sweep_u_m2", -2.0), ("pair_v_sweep_u_m8", -8.0)] {
        let models: Vec<UvModel> = vs.iter().map(|&v| UvModel::single_diagonal(u, v, 1.0)).collect();
        out.push(Artifact::Table(pair_energy_table(name, "v", &vs, &models, exec)?));
    }
    out.push(Artifact::Table(dispersion_table("pair_dispersion_u_m8", -8.0, -8.0, 1.0, cfg.pair.k_points)));
    let model = UvModel::single_diagonal(-8.0, -8.0, 1.0);
    out.extend(oracle_artifacts("oracle_u_m8", &model, &cfg.oracle.sizes, cfg.oracle.n_states, true, exec)?);
    let pole = |r| physical_pole(1.0, r, b.lambda_max).map_err(CliError::numeric("physical pole"));
    out.push(Artifact::record(
        "appendix_summary",
        json!({ "physical_pole_renormalized": pole(true)?, "physical_pole_bare": pole(false)? }),
    ));
    Ok(out)
}

pub fn figures(target: FigureTarget, cfg: &RunConfig, exec: Execution) -> CliResult<Bundle> {
    let all = target == FigureTarget::All;
    let mut bundle: Bundle = Vec::new();
    let mut add = |t: FigureTarget, dir: &str, f: &dyn Fn() -> CliResult<Vec<Artifact>>| -> CliResult<()> {
        if all || target == t {
            bundle.push((Some(dir.to_string()), f()?));
        }
        Ok(())
    };
    add(FigureTarget::Fig2, "fig2", &|| stark(cfg))?;
    add(FigureTarget::Fig3, "fig3", &|| phi_panels(cfg, exec))?;
    add(FigureTarget::Fig4, "fig4", &|| params(cfg, exec))?;
    add(FigureTarget::Fig5, "fig5", &|| offsets(cfg, exec))?;
    add(FigureTarget::Fig6, "fig6", &|| phase(cfg, exec))?;
    add(FigureTarget::Appendix, "appendix", &|| appendix(cfg, exec))?;
    Ok(bundle)
}
