//! Strong-coupling pair dispersion from the three-state trial wavefunction
//! (on-site pair A, bond pairs B and C along the two lattice axes) and the
//! resulting pair mass.
//!
//! Two forms are kept side by side. [`pair_dispersion_strong_coupling`]
//! is the quoted closed form, with `t'²(cos²(kx/2) + cos²(ky/2))` under the
//! root. [`secular_eigenvalues`] diagonalizes the trial-state matrix whose
//! off-diagonal elements are `−t'(1 + e^{±ik·τ})`; its dispersive roots
//! equal the closed form with t' replaced by 2t'. [`inverse_pair_mass`] is
//! the quoted mass formula, which is a factor 4 larger than the curvature
//! of the closed-form dispersion.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::units::{HBAR, MICRON, PLANCK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrongBranch {
    Lower,
    /// E = V: the bond pair that cannot move on its own.
    ImmobileIntersite,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrongPairState {
    pub energy: f64,
    pub k: [f64; 2],
    pub branch: StrongBranch,
}

/// The three closed-form branches at dimensionless momentum `k = (kx a, ky a)`.
pub fn pair_dispersion_strong_coupling(u: f64, v: f64, t_prime: f64, k: [f64; 2]) -> [StrongPairState; 3] {
    let c = (0.5 * k[0]).cos().powi(2) + (0.5 * k[1]).cos().powi(2);
    let root = (0.25 * (u - v) * (u - v) + t_prime * t_prime * c).sqrt();
    let mid = 0.5 * (u + v);
    [
        StrongPairState { energy: mid - root, k, branch: StrongBranch::Lower },
        StrongPairState { energy: v, k, branch: StrongBranch::ImmobileIntersite },
        StrongPairState { energy: mid + root, k, branch: StrongBranch::Upper },
    ]
}

/// `det(H(k) − E)` for the trial-state matrix, with
/// `|h_i|² = |t'(1 + e^{ik·τ_i})|² = 4t'² cos²(k·τ_i/2)`.
pub fn secular_determinant(u: f64, v: f64, t_prime: f64, k: [f64; 2], energy: f64) -> f64 {
    let h1 = 4.0 * t_prime * t_prime * (0.5 * k[0]).cos().powi(2);
    let h2 = 4.0 * t_prime * t_prime * (0.5 * k[1]).cos().powi(2);
    (u - energy) * (v - energy) * (v - energy) - (v - energy) * (h1 + h2)
}

/// Roots of [`secular_determinant`] in ascending order.
pub fn secular_eigenvalues(u: f64, v: f64, t_prime: f64, k: [f64; 2]) -> [f64; 3] {
    let h = 4.0 * t_prime * t_prime * ((0.5 * k[0]).cos().powi(2) + (0.5 * k[1]).cos().powi(2));
    let root = (0.25 * (u - v) * (u - v) + h).sqrt();
    let mid = 0.5 * (u + v);
    let mut e = [mid - root, v, mid + root];
    e.sort_by(f64::total_cmp);
    e
}

/// `1/m** = t'²a²/(ħ²√((U−V)²/4 + 2t'²))` in units of a²·energy/ħ², i.e.
/// the returned value is `t'²/√((U−V)²/4 + 2t'²)` in the energy unit of
/// the inputs.
pub fn inverse_pair_mass(u: f64, v: f64, t_prime: f64) -> f64 {
    t_prime * t_prime / (0.25 * (u - v) * (u - v) + 2.0 * t_prime * t_prime).sqrt()
}

/// The pair mass in kg for energies in Hz and lattice constant `a` in µm.
pub fn pair_mass_kg(u: f64, v: f64, t_prime: f64, a: f64) -> Result<f64> {
    if !(t_prime > 0.0) || !(a > 0.0) {
        return Err(domain(format!("need t' > 0 and a > 0, got t' = {t_prime}, a = {a}")));
    }
    let inv = inverse_pair_mass(u, v, t_prime) * PLANCK;
    let a_m = a * MICRON;
    Ok(HBAR * HBAR / (inv * a_m * a_m))
}

/// Main-text mass for a deeply bound on-site pair,
/// `m** = ħ²√(W²λ² + 2t'²)/(t'²a²)`, in the same reduced units as
/// [`inverse_pair_mass`] (returns `√(W²λ² + 2t'²)/t'²`).
pub fn main_text_pair_mass(w_lambda: f64, t_prime: f64) -> f64 {
    (w_lambda * w_lambda + 2.0 * t_prime * t_prime).sqrt() / (t_prime * t_prime)
}

/// Second derivative of the lower closed-form branch along k_x at k = 0 by
/// central differences with step `h`.
pub fn lower_branch_curvature(u: f64, v: f64, t_prime: f64, h: f64) -> f64 {
    let e = |kx: f64| pair_dispersion_strong_coupling(u, v, t_prime, [kx, 0.0])[0].energy;
    (e(h) - 2.0 * e(0.0) + e(-h)) / (h * h)
}
