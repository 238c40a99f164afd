//! Fermionic lattice parameters: recoil energy, hopping, Feshbach-tuned
//! scattering length and Hubbard U, plus the parameter sweep that compares
//! t, U and Wλ as the lattice depth changes.
//!
//! Energies are in Hz (E/h) unless a name says otherwise; `1 Hz ≈ 0.048 nK`.
//! The lattice wavevector in U is `k = π/a`, the same `a` that sets E_rec.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::painted_lattice::{self, LatticeSpec, SpotPattern};
use crate::parallel::{self, Execution};
use crate::rydberg_coupling::{self, RydbergSpec};
use crate::units::{self, BOHR_RADIUS, HBAR, MICRON, PLANCK};

/// Background scattering length of the K-40 mixture, Bohr radii.
pub const DEFAULT_A_S0: f64 = 90.0;

/// ħ²π²/(2Ma²) in Hz for `a` in µm and `mass` in kg.
pub fn recoil_energy(a: f64, mass: f64) -> f64 {
    let a_m = a * MICRON;
    HBAR * HBAR * PI * PI / (2.0 * mass * a_m * a_m) / PLANCK
}

/// Deep-lattice hopping `(4/√π) E_rec^¼ V0^¾ exp(−2√(V0/E_rec))`, in the
/// units of the inputs.
pub fn hopping_t(v0: f64, e_rec: f64) -> f64 {
    4.0 / PI.sqrt() * e_rec.powf(0.25) * v0.powf(0.75) * (-2.0 * (v0 / e_rec).sqrt()).exp()
}

/// The hopping estimate assumes a deep lattice; below one recoil it is
/// only qualitative.
pub fn deep_lattice_warning(v0: f64, e_rec: f64) -> Option<String> {
    (v0 < e_rec).then(|| format!("V0 = {v0} is below E_rec = {e_rec}; deep-lattice hopping estimate is unreliable"))
}

/// Feshbach resonance parameters. Field quantities share whatever unit
/// the caller uses; the form is evaluated as written.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeshbachSpec {
    /// Background scattering length, Bohr radii.
    pub a_s0: f64,
    pub delta_b: f64,
    pub b_res: f64,
    pub gamma_res: f64,
    pub b: f64,
}

/// `a_s0 (1 − ΔB (B − B_res)) / ((B − B_res)² + γ²/4)`, Bohr radii.
pub fn scattering_length(spec: &FeshbachSpec) -> f64 {
    let db = spec.b - spec.b_res;
    spec.a_s0 * (1.0 - spec.delta_b * db) / (db * db + 0.25 * spec.gamma_res * spec.gamma_res)
}

/// π/a in 1/µm.
pub fn lattice_wavevector(a: f64) -> f64 {
    PI / a
}

pub fn bohr_to_um(a_s_bohr: f64) -> f64 {
    a_s_bohr * BOHR_RADIUS / MICRON
}

/// `√8 k a_s E_rec^¼ V0^¾`: `k` in 1/µm, `a_s` in µm, energies in any
/// common unit.
pub fn hubbard_u(k_lat: f64, a_s: f64, e_rec: f64, v0: f64) -> f64 {
    8f64.sqrt() * k_lat * a_s * e_rec.powf(0.25) * v0.powf(0.75)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    pub t: f64,
    pub u_fesh: f64,
    pub w_lambda: f64,
    pub hbar_omega_ph: f64,
    pub e_rec: f64,
    pub k_lat: f64,
}

/// What the sweep holds fixed while V0 varies.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGeometry {
    pub lattice: LatticeSpec,
    /// Phonon pattern; its `v0_ph` is replaced by `v0_ph_ratio · V0`.
    pub pattern: SpotPattern,
    pub v0_ph_ratio: f64,
    pub rydberg: RydbergSpec,
    /// Scattering length, Bohr radii.
    pub a_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// nK.
    pub v0: f64,
    /// Hz.
    pub t: f64,
    /// Hz.
    pub u_fesh: f64,
    /// Hz.
    pub w_lambda: f64,
    /// ħω_ph, Hz.
    pub hbar_omega_ph: f64,
}

/// Full parameter set at one fermion depth `v0` (nK).
pub fn hamiltonian_params(v0: f64, geom: &SweepGeometry) -> Result<HamiltonianParams> {
    let a = geom.lattice.a;
    let e_rec = recoil_energy(a, units::MASS_K40);
    let v0_hz = units::nk_to_hz(v0);
    let t = hopping_t(v0_hz, e_rec);
    let k_lat = lattice_wavevector(a);
    let u_fesh = hubbard_u(k_lat, bohr_to_um(geom.a_s), e_rec, v0_hz);

    let pattern = SpotPattern { v0_ph: geom.v0_ph_ratio * v0, ..geom.pattern.clone() };
    let omega = painted_lattice::numerical_soft_frequency(&geom.lattice, &pattern, units::MASS_RB87)?;
    let map = rydberg_coupling::effective_interaction_with(Execution::Sequential, &pattern, &geom.rydberg, a, 0);
    // Wλ = Φ_00 / (2 M ω²) does not depend on t.
    let w_lambda = units::joule_to_hz(map.phi00_si() / (2.0 * units::MASS_RB87 * omega * omega));
    Ok(HamiltonianParams { t, u_fesh, w_lambda, hbar_omega_ph: units::quantum_hz(omega), e_rec, k_lat })
}

/// One row per depth in `v0_values` (nK).
pub fn parameter_sweep(v0_values: &[f64], geom: &SweepGeometry) -> Result<Vec<SweepRow>> {
    parameter_sweep_with(Execution::default(), v0_values, geom)
}

pub fn parameter_sweep_with(exec: Execution, v0_values: &[f64], geom: &SweepGeometry) -> Result<Vec<SweepRow>> {
    parallel::map(exec, v0_values, |&v0| {
        hamiltonian_params(v0, geom).map(|p| SweepRow {
            v0,
            t: p.t,
            u_fesh: p.u_fesh,
            w_lambda: p.w_lambda,
            hbar_omega_ph: p.hbar_omega_ph,
        })
    })
    .into_iter()
    .collect()
}
