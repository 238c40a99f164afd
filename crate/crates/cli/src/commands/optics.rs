//! Light shifts, spot patterns, Φ maps and the lattice parameter sweep.

use std::f64::consts::SQRT_2;

use serde_json::{json, Value};

use hhsim::hubbard_params::{self, parameter_sweep_with, SweepGeometry};
use hhsim::painted_lattice::{self, Species, SpotPattern, MASS_K40, MASS_RB87};
use hhsim::parallel::Execution;
use hhsim::rydberg_coupling::{
    c6_table, effective_interaction_with, interpretation, nnn_ratio_estimate, EffectiveInteractionMap,
};
use hhsim::stark_potentials::{find_stark_zero, mutual_trap_check, stark_sweep};
use hhsim::units;

use super::row;
use crate::config::{PatternName, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{Artifact, Table};

pub const PARAMS_N_RYD: u32 = 27;

pub fn stark(cfg: &RunConfig) -> CliResult<Vec<Artifact>> {
    let s = &cfg.stark;
    let atoms = s.atoms();
    let sc = s.stark_config();
    let wavelengths = s.wavelengths();
    let shifts = stark_sweep(&atoms, &wavelengths, &sc);

    let mut table = Table::new("stark", &["species", "wavelength_nm", "v_nk"]);
    for (k, atom) in atoms.iter().enumerate() {
        for (l, v) in wavelengths.iter().zip(&shifts) {
            table.push(row![atom.species_name.as_str(), *l, v[k]]);
        }
    }

    let zeros: Vec<Value> = atoms
        .iter()
        .map(|a| match find_stark_zero(a, &sc) {
            Ok(z) => json!({ "species": a.species_name, "zero_nm": z }),
            Err(e) => json!({ "species": a.species_name, "zero_nm": null, "error": e.to_string() }),
        })
        .collect();
    let mut mutual = Vec::new();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            if let Ok(m) = mutual_trap_check(a, b, &sc) {
                let exclusive = m.is_exclusive();
                mutual.push(json!({ "check": m, "exclusive": exclusive }));
            }
        }
    }
    let summary = json!({ "model": sc.model, "zeros": zeros, "mutual_trapping": mutual });
    Ok(vec![Artifact::Table(table), Artifact::record("stark_zeros", summary)])
}

fn fixed_pattern(cfg: &RunConfig, fallback: PatternName) -> SpotPattern {
    cfg.pattern.build(cfg.lattice.a, fallback, cfg.pattern.v0_ph)
}

pub fn phonon(cfg: &RunConfig) -> CliResult<Vec<Artifact>> {
    let lattice = cfg.lattice.spec();
    let pattern = fixed_pattern(cfg, PatternName::OffsetParallel);
    pattern.validate(lattice.a).map_err(CliError::numeric("phonon pattern"))?;
    let site = pattern.site(lattice.a, 0, 0);
    let [cx, cy] = site.center;

    let mut table =
        Table::new("phonon_cross_section", &["axis", "offset_um", "x_um", "y_um", "v_fermion_nk", "v_phonon_nk"]);
    let n = cfg.phonon.points;
    let ext = cfg.phonon.extent;
    for (axis, dir) in [("x", [1.0, 0.0]), ("y", [0.0, 1.0])] {
        for i in 0..n {
            let s = -ext + 2.0 * ext * i as f64 / (n - 1) as f64;
            let (x, y) = (cx + s * dir[0], cy + s * dir[1]);
            let vf = painted_lattice::painted_potential(&lattice, &pattern, Species::Fermion, [x, y, 0.0]);
            let vp = painted_lattice::painted_potential(&lattice, &pattern, Species::Phonon, [x, y, 0.0]);
            table.push(row![axis, s, x, y, vf, vp]);
        }
    }

    let hessian = painted_lattice::dynamical_matrix(&lattice, &pattern, site.center)
        .map_err(CliError::numeric("dynamical matrix"))?;
    let modes = painted_lattice::phonon_modes(hessian, MASS_RB87).map_err(CliError::numeric("phonon modes"))?;
    let t = hubbard_params::hopping_t(units::nk_to_hz(lattice.v0), hubbard_params::recoil_energy(lattice.a, MASS_K40));
    let mode_records: Vec<Value> = modes
        .iter()
        .map(|m| {
            let hz = units::quantum_hz(m.omega);
            json!({
                "omega_rad_s": m.omega,
                "hbar_omega_hz": hz,
                "hbar_omega_nk": units::hz_to_nk(hz),
                "omega_over_t": hz / t,
                "polarization": m.polarization,
            })
        })
        .collect();
    let closed = (pattern.n_s == 2)
        .then(|| painted_lattice::two_spot_frequency(pattern.v0_ph, pattern.w_ph, pattern.d, MASS_RB87).ok())
        .flatten()
        .map(units::quantum_hz);
    let summary = json!({
        "pattern": pattern,
        "site_center_um": site.center,
        "spots_um": site.spots,
        "hessian_nk_per_um2": hessian,
        "modes": mode_records,
        "two_spot_closed_form_hz": closed,
        "t_hz_at_v0": t,
    });
    Ok(vec![Artifact::Table(table), Artifact::record("phonon_modes", summary)])
}

pub(crate) fn phi_table(name: &str, map: &EffectiveInteractionMap) -> Table {
    let mut table = Table::new(name, &["dx", "dy", "phi_over_phi00", "interpretation"]);
    for (&(dx, dy), &v) in map.displacements.iter().zip(&map.values) {
        let label = if (dx, dy) == (0, 0) { "onsite" } else { interpretation(v) };
        table.push(row![dx, dy, v, label]);
    }
    table
}

pub(crate) fn phi_summary(pattern: &SpotPattern, n_ryd: u32, map: &EffectiveInteractionMap) -> Value {
    json!({
        "pattern": pattern.kind,
        "n_ryd": n_ryd,
        "phi00_mhz2_per_um2": map.phi00,
        "phi_nn_ratio": map.nn_ratio(),
        "phi_nnn_ratio": map.nnn_ratio(),
        "phi_nnn_anti_ratio": map.nnn_anti_ratio(),
        "nn": interpretation(map.nn_ratio()),
        "nnn": interpretation(map.nnn_ratio()),
        "nnn_anti": interpretation(map.nnn_anti_ratio()),
    })
}

/// Numerical NNN ratio of the offset-parallel pattern against its
/// leading-order estimate.
pub(crate) fn b_sweep(cfg: &RunConfig, exec: Execution) -> Table {
    let a = cfg.lattice.a;
    let spec = cfg.rydberg.spec(PARAMS_N_RYD, a);
    let m = &cfg.phi_map;
    let mut table = Table::new(
        "phi_b_sweep",
        &["b_over_a_prime", "b_um", "phi_nnn_ratio", "estimate", "estimate_valid", "relative_difference"],
    );
    for x in crate::config::axis(m.b_min, m.b_max, m.b_points) {
        let b = x * a * SQRT_2;
        let p = SpotPattern::offset_parallel(a, b, cfg.pattern.w_ph, cfg.pattern.d, cfg.pattern.v0_ph)
            .with_rotation(cfg.pattern.rotation_deg.to_radians());
        let num = effective_interaction_with(exec, &p, &spec, a, 1).nnn_ratio();
        let est = nnn_ratio_estimate(b, a, spec.eta);
        table.push(row![x, b, num, est.ratio, est.valid, (num - est.ratio) / est.ratio]);
    }
    table
}

pub fn phi_map(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let a = cfg.lattice.a;
    let pattern = fixed_pattern(cfg, PatternName::OffsetParallel);
    pattern.validate(a).map_err(CliError::numeric("phi-map pattern"))?;
    let spec = cfg.rydberg.spec(PARAMS_N_RYD, a);
    spec.validate().map_err(CliError::numeric("Rydberg spec"))?;
    let map = effective_interaction_with(exec, &pattern, &spec, a, cfg.phi_map.range);
    let mut summary = phi_summary(&pattern, spec.n_ryd, &map);
    summary["c6"] = json!(c6_table(spec.n_ryd));
    Ok(vec![
        Artifact::Table(phi_table("phi_map", &map)),
        Artifact::Table(b_sweep(cfg, exec)),
        Artifact::record("phi_summary", summary),
    ])
}

pub fn params(cfg: &RunConfig, exec: Execution) -> CliResult<Vec<Artifact>> {
    let a = cfg.lattice.a;
    let v0s = crate::config::axis(cfg.params.v0_min, cfg.params.v0_max, cfg.params.v0_points);
    let mut table = Table::new(
        "params",
        &["n_ryd", "v0_nk", "t_hz", "u_fesh_hz", "w_lambda_hz", "hbar_omega_hz", "lambda", "omega_over_t"],
    );
    let mut at_v0 = Vec::new();
    for &n in &cfg.params.n_ryd {
        let geom = SweepGeometry {
            lattice: cfg.lattice.spec(),
            pattern: cfg.pattern.build(a, PatternName::OffsetParallel, 1.0),
            v0_ph_ratio: cfg.pattern.v0_ph_ratio,
            rydberg: cfg.rydberg.spec(n, a),
            a_s: cfg.feshbach.a_s(),
        };
        let rows = parameter_sweep_with(exec, &v0s, &geom)
            .map_err(CliError::numeric(format!("parameter sweep at n_ryd = {n}")))?;
        for r in &rows {
            table.push(row![
                n,
                r.v0,
                r.t,
                r.u_fesh,
                r.w_lambda,
                r.hbar_omega_ph,
                r.w_lambda / (4.0 * r.t),
                r.hbar_omega_ph / r.t
            ]);
        }
        let p = hubbard_params::hamiltonian_params(cfg.lattice.v0, &geom)
            .map_err(CliError::numeric(format!("parameters at V0 = {} nK", cfg.lattice.v0)))?;
        at_v0.push(json!({
            "n_ryd": n,
            "c6": c6_table(n),
            "v0_nk": cfg.lattice.v0,
            "t_hz": p.t,
            "u_fesh_hz": p.u_fesh,
            "w_lambda_hz": p.w_lambda,
            "hbar_omega_hz": p.hbar_omega_ph,
            "lambda": p.w_lambda / (4.0 * p.t),
            "warning": hubbard_params::deep_lattice_warning(units::nk_to_hz(cfg.lattice.v0), p.e_rec),
        }));
    }
    let e_rec = hubbard_params::recoil_energy(a, MASS_K40);
    let summary = json!({
        "recoil_energy_hz": e_rec,
        "a_s_bohr": cfg.feshbach.a_s(),
        "pattern": cfg.pattern.build(a, PatternName::OffsetParallel, 1.0).kind,
        "v0_ph_ratio": cfg.pattern.v0_ph_ratio,
        "at_lattice_v0": at_v0,
    });
    Ok(vec![Artifact::Table(table), Artifact::record("params_summary", summary)])
}
