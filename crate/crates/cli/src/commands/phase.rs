//! Pairing and BKT temperatures over the (V0, λ) plane.

use serde_json::json;

use hhsim::parallel::Execution;
use hhsim::phase_diagram::{phase_grid_with, PhaseGrid, PhaseLabel, PhaseSpec};

use super::row;
use crate::config::{axis, PatternName, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{Artifact, Table};

pub const PHASE_N_RYD: u32 = 34;

pub(crate) fn phase_spec(cfg: &RunConfig) -> PhaseSpec {
    let a = cfg.lattice.a;
    let ph = &cfg.phase;
    PhaseSpec {
        lattice: cfg.lattice.spec(),
        // The depth is replaced per point by v0_ph_ratio · V0.
        pattern: cfg.pattern.build(a, PatternName::HolsteinReference, 1.0),
        rydberg: cfg.rydberg.spec(PHASE_N_RYD, a),
        variant: ph.variant.into(),
        temperature: ph.temperature,
        n_b: ph.n_b,
        v0_ph_ratio: cfg.pattern.v0_ph_ratio,
        omega_over_t: (!ph.omega_from_geometry).then_some(ph.omega_over_t),
    }
}

pub(crate) fn grid_artifacts(grid: &PhaseGrid, spec: &PhaseSpec) -> Vec<Artifact> {
    let mut table = Table::new(
        "phase_grid",
        &[
            "v0_nk",
            "lambda",
            "t_hz",
            "t_prime_hz",
            "omega_over_t_geometry",
            "t_pair_nk",
            "t_bkt_nk",
            "delta_t_nk",
            "label",
            "error",
        ],
    );
    for p in grid.points.iter().flatten() {
        table.push(row![
            p.v0,
            p.lambda,
            p.t,
            p.t_prime,
            p.omega_over_t_geometry,
            p.t_pair,
            p.t_bkt,
            p.delta_t(),
            p.label.map_or("", |l| l.as_str()),
            p.error.clone().unwrap_or_default(),
        ]);
    }

    let mut contour = Table::new("phase_contour", &["polyline", "index", "v0_nk", "lambda"]);
    for (k, line) in grid.contour.iter().enumerate() {
        for (i, pt) in line.iter().enumerate() {
            contour.push(row![k, i, pt[0], pt[1]]);
        }
    }

    let points: Vec<_> = grid.points.iter().flatten().collect();
    let counts: serde_json::Map<String, serde_json::Value> = PhaseLabel::ALL
        .iter()
        .map(|l| (l.as_str().to_string(), json!(points.iter().filter(|p| p.label == Some(*l)).count())))
        .collect();
    let max_bkt = points.iter().map(|p| p.t_bkt).filter(|x| x.is_finite()).fold(f64::NAN, f64::max);
    let max_pair = points.iter().map(|p| p.t_pair).filter(|x| x.is_finite()).fold(f64::NAN, f64::max);
    let summary = json!({
        "temperature_nk": spec.temperature,
        "n_b": spec.n_b,
        "variant": spec.variant,
        "pattern": spec.pattern.kind,
        "n_ryd": spec.rydberg.n_ryd,
        "omega_over_t": spec.omega_over_t,
        "phi_nn_ratio": grid.phi_nn_ratio,
        "labels_present": grid.labels_present().iter().map(|l| l.as_str()).collect::<Vec<_>>(),
        "label_counts": counts,
        "failed_points": points.iter().filter(|p| p.error.is_some()).count(),
        "max_t_pair_nk": max_pair,
        "max_t_bkt_nk": max_bkt,
        "contour_polylines": grid.contour.len(),
    });
    vec![Artifact::Table(table), Artifact::Table(contour), Artifact::record("phase_summary", summary)]
}

pub fn phase(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let ph = &cfg.phase;
    let spec = phase_spec(cfg);
    let v0 = axis(ph.v0_min, ph.v0_max, ph.v0_points);
    let lambda = axis(ph.lambda_min, ph.lambda_max, ph.lambda_points);
    let grid = phase_grid_with(exec, &v0, &lambda, &spec).map_err(CliError::numeric("phase grid"))?;
    Ok(grid_artifacts(&grid, &spec))
}
