//! Two-body bound states at zero pair momentum from the determinant
//! equations, and the closed-form binding thresholds.
//!
//! Two variants of the UV model are covered. `SingleDiagonal` has V on the
//! two sites `±(x + y)` and leads to a 2×2 determinant. `BothDiagonals`
//! has V1 on the four nearest neighbours and V2 on the four diagonal
//! neighbours; its 3×3 determinant describes the fully symmetric (s-wave)
//! channel only.

use serde::{Deserialize, Serialize};

use super::greens::{gamma_constants, greens_c_threshold, GreensIntegrals};
use crate::error::{domain, Result};
use crate::parallel::{self, Execution};
use crate::roots;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum UvVariant {
    SingleDiagonal { v: f64 },
    BothDiagonals { v1: f64, v2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UvModel {
    pub t_prime: f64,
    pub u: f64,
    pub variant: UvVariant,
}

impl UvModel {
    pub fn single_diagonal(u: f64, v: f64, t_prime: f64) -> Self {
        Self { t_prime, u, variant: UvVariant::SingleDiagonal { v } }
    }

    pub fn both_diagonals(u: f64, v1: f64, v2: f64, t_prime: f64) -> Self {
        Self { t_prime, u, variant: UvVariant::BothDiagonals { v1, v2 } }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_prime > 0.0 && self.t_prime.is_finite()) {
            return Err(domain(format!("t' must be positive, got {}", self.t_prime)));
        }
        let finite = match self.variant {
            UvVariant::SingleDiagonal { v } => v.is_finite(),
            UvVariant::BothDiagonals { v1, v2 } => v1.is_finite() && v2.is_finite(),
        };
        if !self.u.is_finite() || !finite {
            return Err(domain("interaction strengths must be finite"));
        }
        Ok(())
    }

    /// Lower bound on any eigenvalue: band bottom plus the most attractive
    /// potential.
    pub fn energy_floor(&self) -> f64 {
        let v = match self.variant {
            UvVariant::SingleDiagonal { v } => v.abs(),
            UvVariant::BothDiagonals { v1, v2 } => v1.abs() + v2.abs(),
        };
        -(self.u.abs() + 8.0 * v + 8.0 * self.t_prime)
    }

    /// The determinant at energy `|E| = 8t'(1 + e^s)`. Tends to 1 far
    /// below the band.
    pub fn determinant_at_s(&self, s: f64) -> Result<f64> {
        let g = GreensIntegrals::from_s(s, self.t_prime)?;
        Ok(self.determinant(&g))
    }

    pub fn determinant(&self, g: &GreensIntegrals) -> f64 {
        let u = self.u;
        let [m00, m10, m11, m20, m21, m22] = g.m;
        match self.variant {
            UvVariant::SingleDiagonal { v } => (u * m00 + 1.0) * (v * (m00 + m22) + 1.0) - 2.0 * v * m11 * u * m11,
            UvVariant::BothDiagonals { v1, v2 } => det3([
                [u * m00 + 1.0, 2.0 * v1 * m10, 2.0 * v2 * m11],
                [2.0 * u * m10, v1 * (m00 + m20 + 2.0 * m11) + 1.0, 2.0 * v2 * (m10 + m21)],
                [2.0 * u * m11, 2.0 * v1 * (m10 + m21), v2 * (m00 + m22 + 2.0 * m20) + 1.0],
            ]),
        }
    }
}

fn det3(a: [[f64; 3]; 3]) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairState {
    pub energy: f64,
    /// `ln(|E| − 8t')`. Near threshold the binding underflows and `energy`
    /// rounds to the band edge, but this stays finite.
    pub ln_binding: f64,
    /// Pair momentum (k_x a, k_y a).
    pub k: [f64; 2],
    /// 0 for the lowest state.
    pub branch: usize,
}

/// Band-edge variable grid: coarse far from the edge in s, fine where the
/// determinant varies on the scale of the binding.
const S_FINE_LO: f64 = -50.0;
const S_FINE_STEP: f64 = 0.01;
const S_EDGE: f64 = -1.0e4;
const S_COARSE_STEP: f64 = 1.0;
const ENERGY_TOL: f64 = 1e-12;

fn s_grid(s_max: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut s = S_EDGE;
    while s < S_FINE_LO {
        grid.push(s);
        s += S_COARSE_STEP;
    }
    let n = ((s_max - S_FINE_LO) / S_FINE_STEP).ceil().max(1.0) as usize;
    grid.extend((0..=n).map(|i| S_FINE_LO + (s_max - S_FINE_LO) * i as f64 / n as f64));
    grid
}

/// All bound states of `model` at K = 0, lowest first.
pub fn pair_energies(model: &UvModel) -> Result<Vec<PairState>> {
    model.validate()?;
    let t = model.t_prime;
    let s_max = ((-model.energy_floor() + t) / (8.0 * t) - 1.0).ln();
    let grid = s_grid(s_max);
    let values = grid.iter().map(|&s| model.determinant_at_s(s)).collect::<Result<Vec<_>>>()?;
    let energy = |s: f64| -8.0 * t * (1.0 + s.exp());
    let mut states = Vec::new();
    for i in roots::sign_changes(&values) {
        let s = roots::bisect_until(
            |s| model.determinant_at_s(s).unwrap_or(f64::NAN),
            grid[i],
            grid[i + 1],
            |a, b| (energy(a) - energy(b)).abs() <= ENERGY_TOL * t,
        )?;
        states.push(s);
    }
    // Lowest energy first is largest s first.
    states.sort_by(|a, b| b.total_cmp(a));
    Ok(states
        .into_iter()
        .enumerate()
        .map(|(branch, s)| PairState { energy: energy(s), ln_binding: s + (8.0 * t).ln(), k: [0.0, 0.0], branch })
        .collect())
}

/// Bound states of the single-diagonal model (2×2 determinant).
pub fn pair_energies_diagonal(u: f64, v: f64, t_prime: f64) -> Result<Vec<PairState>> {
    pair_energies(&UvModel::single_diagonal(u, v, t_prime))
}

/// Bound states of the both-diagonals model in the s-wave channel (3×3).
pub fn pair_energies_full(u: f64, v1: f64, v2: f64, t_prime: f64) -> Result<Vec<PairState>> {
    pair_energies(&UvModel::both_diagonals(u, v1, v2, t_prime))
}

/// Pair energies over many models.
pub fn pair_energy_sweep(exec: Execution, models: &[UvModel]) -> Vec<Result<Vec<PairState>>> {
    parallel::map(exec, models, pair_energies)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdRegime {
    /// At most one bound state; it exists for U < U_cr.
    SingleState,
    /// The attractive V already binds one state; U < U_cr adds a second.
    SecondStatePossible,
    /// The denominator vanishes: U_cr is infinite.
    Pole,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BindingThreshold {
    /// Critical on-site interaction; NaN at a pole.
    pub u_cr: f64,
    pub regime: ThresholdRegime,
    /// True when no repulsive U can bind, i.e. U_cr ≤ 0.
    pub no_solution_for_repulsive_u: bool,
    /// Denominator of the threshold formula; its sign sets the regime.
    pub denominator: f64,
}

impl BindingThreshold {
    /// `scale` is the size of the terms summed into the denominator; a
    /// denominator below 1e-12 of it counts as a pole.
    fn from_ratio(numerator: f64, denominator: f64, scale: f64) -> Self {
        let (u_cr, regime) = if denominator.abs() <= 1e-12 * scale {
            (f64::NAN, ThresholdRegime::Pole)
        } else if denominator > 0.0 {
            (numerator / denominator, ThresholdRegime::SingleState)
        } else {
            (numerator / denominator, ThresholdRegime::SecondStatePossible)
        };
        Self { u_cr, regime, no_solution_for_repulsive_u: !(u_cr > 0.0), denominator }
    }

    /// Number of additional bound states that `u` adds relative to U
    /// just above the threshold: one below U_cr, none above.
    pub fn extra_states(&self, u: f64) -> usize {
        usize::from(u < self.u_cr)
    }
}

/// Single-diagonal threshold `U_cr = −2Vt'/(t' + 4V/3π)`.
pub fn threshold_diagonal(v: f64, t_prime: f64) -> Result<BindingThreshold> {
    check_t(t_prime)?;
    let shift = 4.0 * v / (3.0 * std::f64::consts::PI);
    let den = t_prime + shift;
    Ok(BindingThreshold::from_ratio(-2.0 * v * t_prime, den, t_prime + shift.abs()))
}

/// Both-diagonals threshold from the reduced binding condition
/// `γ1 U V1 V2 + ½t'UV1 + γ2 t'UV2 + γ3 t'V1V2 + t'²(U + 4V1 + 4V2) = 0`.
pub fn threshold_full(v1: f64, v2: f64, t_prime: f64) -> Result<BindingThreshold> {
    check_t(t_prime)?;
    let [g1, g2, g3] = gamma_constants();
    let t = t_prime;
    let terms = [g1 * v1 * v2, 0.5 * t * v1, g2 * t * v2, t * t];
    let den: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|x| x.abs()).sum();
    let num = -(g3 * t * v1 * v2 + 4.0 * t * t * (v1 + v2));
    Ok(BindingThreshold::from_ratio(num, den, scale))
}

/// The reduced binding condition itself (zero on the threshold).
pub fn binding_condition_full(u: f64, v1: f64, v2: f64, t_prime: f64) -> f64 {
    let [g1, g2, g3] = gamma_constants();
    let t = t_prime;
    g1 * u * v1 * v2 + 0.5 * t * u * v1 + g2 * t * u * v2 + g3 * t * v1 * v2 + t * t * (u + 4.0 * v1 + 4.0 * v2)
}

/// The coefficient A of the diverging M_00 in the expanded 3×3
/// determinant, written with the band-edge C_nl constants. Its zero is
/// the binding threshold; `A · t'²` equals [`binding_condition_full`].
pub fn long_form_a(u: f64, v1: f64, v2: f64, t_prime: f64) -> Result<f64> {
    let c = |n, l| greens_c_threshold(n, l, t_prime);
    let (c10, c11, c20, c21, c22) = (c(1, 0)?, c(1, 1)?, c(2, 0)?, c(2, 1)?, c(2, 2)?);
    Ok((u + 4.0 * v1 + 4.0 * v2)
        + u * v1 * (8.0 * c10 - 2.0 * c11 - c20)
        + u * v2 * (8.0 * c11 - 2.0 * c20 - c22)
        + v1 * v2 * (16.0 * c10 - 8.0 * c11 - 12.0 * c20 + 16.0 * c21 - 4.0 * c22)
        + u * v1
            * v2
            * (2.0 * c20 * c20 - 4.0 * c10 * c10 - 32.0 * c11 * c11 - 4.0 * c21 * c21 + 48.0 * c10 * c11
                - 16.0 * c10 * c20
                + 8.0 * c10 * c21
                - 4.0 * c11 * c20
                - 8.0 * c10 * c22
                + 16.0 * c11 * c21
                + 2.0 * c11 * c22
                + c20 * c22))
}

fn check_t(t_prime: f64) -> Result<()> {
    if t_prime > 0.0 && t_prime.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("t' must be positive, got {t_prime}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn determinant_tends_to_one() {
        let m = UvModel::both_diagonals(-3.0, 1.0, -2.0, 1.0);
        assert!((m.determinant_at_s(40.0).unwrap() - 1.0).abs() < 1e-12);
        let d = UvModel::single_diagonal(-3.0, 2.0, 1.0);
        assert!((d.determinant_at_s(40.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn free_particles_do_not_bind() {
        assert!(pair_energies_diagonal(0.0, 0.0, 1.0).unwrap().is_empty());
        assert!(pair_energies_full(0.0, 0.0, 0.0, 1.0).unwrap().is_empty());
    }

    #[test]
    fn pure_hubbard_root() {
        for model in [UvModel::single_diagonal(-6.0, 0.0, 1.0), UvModel::both_diagonals(-6.0, 0.0, 0.0, 1.0)] {
            let states = pair_energies(&model).unwrap();
            assert_eq!(states.len(), 1);
            let g = GreensIntegrals::new(states[0].energy, 1.0).unwrap();
            assert!((-6.0 * g.m00() + 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn one_state_at_u_minus_two() {
        for v in [-8.0, -5.0, -3.0, -1.0, -0.5] {
            assert_eq!(pair_energies_diagonal(-2.0, v, 1.0).unwrap().len(), 1, "V = {v}");
        }
    }

    #[test]
    fn two_branches_on_u_equals_v() {
        let states = pair_energies_diagonal(-8.0, -8.0, 1.0).unwrap();
        assert_eq!(states.len(), 2);
        assert!(states[0].energy < states[1].energy);
        assert_eq!(states[1].branch, 1);
    }

    #[test]
    fn diagonal_threshold_limits() {
        let far = threshold_diagonal(1e6, 1.0).unwrap();
        assert!((far.u_cr + 1.5 * PI).abs() < 1e-3);
        assert_eq!(threshold_diagonal(0.0, 1.0).unwrap().u_cr, 0.0);
        let pole = threshold_diagonal(-3.0 * PI / 4.0, 1.0).unwrap();
        assert_eq!(pole.regime, ThresholdRegime::Pole);
        assert!(pole.u_cr.is_nan());
        assert_eq!(threshold_diagonal(-4.0, 1.0).unwrap().regime, ThresholdRegime::SecondStatePossible);
        assert!(threshold_diagonal(2.0, 1.0).unwrap().no_solution_for_repulsive_u);
    }

    #[test]
    fn diagonal_threshold_matches_root_count() {
        for v in [-2.0, -1.0, 0.5, 1.0, 3.0, 10.0] {
            let th = threshold_diagonal(v, 1.0).unwrap();
            let du = 0.05 * th.u_cr.abs().max(0.2);
            let below = pair_energies_diagonal(th.u_cr - du, v, 1.0).unwrap();
            let above = pair_energies_diagonal(th.u_cr + du, v, 1.0).unwrap();
            assert_eq!(below.len(), above.len() + 1, "V = {v}");
            assert!(below.last().unwrap().energy > -8.0 - 0.5);
        }
    }

    #[test]
    fn full_threshold_formula() {
        assert_eq!(threshold_full(0.0, 0.0, 1.0).unwrap().u_cr, 0.0);
        let th = threshold_full(1.0, 2.0, 1.5).unwrap();
        assert!(binding_condition_full(th.u_cr, 1.0, 2.0, 1.5).abs() < 1e-12);
        assert!(th.u_cr < 0.0);
    }

    #[test]
    fn long_form_reduces() {
        for &(u, v1, v2, t) in &[(1.0, -2.0, 3.0, 1.0), (-4.0, 0.7, -0.2, 0.5), (2.5, 1.5, 1.0, 2.0)] {
            let a = long_form_a(u, v1, v2, t).unwrap();
            assert_relative_eq!(a * t * t, binding_condition_full(u, v1, v2, t), max_relative = 1e-12);
        }
    }

    #[test]
    fn all_repulsive_never_binds() {
        for u in [0.0, 1.0, 5.0] {
            for v in [0.0, 0.5, 4.0] {
                assert!(pair_energies_diagonal(u, v, 1.0).unwrap().is_empty());
                assert!(pair_energies_full(u, v, 2.0 * v, 1.0).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn sweep_matches_single_calls() {
        let models: Vec<_> = (0..4).map(|i| UvModel::single_diagonal(-2.0 - i as f64, -1.0, 1.0)).collect();
        let seq = pair_energy_sweep(Execution::Sequential, &models);
        let par = pair_energy_sweep(Execution::Parallel, &models);
        assert_eq!(seq, par);
    }
}
