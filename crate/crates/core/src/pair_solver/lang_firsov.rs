//! Lang–Firsov maps from the Hubbard–Holstein parameters to an effective
//! UV model, and the pairing thresholds expressed through them.
//!
//! Energies share one unit (usually Hz or units of t). W = 4t is the bare
//! bandwidth, so the phonon-mediated on-site attraction is 2Wλ = 8tλ.

use serde::{Deserialize, Serialize};

use super::determinant::{threshold_diagonal, threshold_full, BindingThreshold, UvModel};
use crate::error::{domain, Result};
use crate::roots;

/// Ratios fixed by the appendix physical case.
pub const APPENDIX_PHI_NN: f64 = 0.16;
pub const APPENDIX_V1_PER_LAMBDA_T: f64 = -0.16;
pub const APPENDIX_V2_PER_LAMBDA_T: f64 = 0.896;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LfVariant {
    /// `t' = t exp[−Wλ(1 − Φ_NN/Φ_00)/ħω]`, `V1 = −2Φ_NN Wλ`,
    /// `V2 = −2Φ_NNN Wλ`, `U = U_Fesh − 2Wλ` (Φ given as ratios to Φ_00).
    MainText,
    /// `t' = t e^{−4(1−0.16)λ}`, `V1 = −0.16λt`, `V2 = 0.896λt`,
    /// `U = U_Fesh − 8tλ`. Φ ratios and ħω are ignored.
    Appendix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LfParams {
    pub t_bare: f64,
    pub lambda: f64,
    pub hbar_omega_ph: f64,
    /// Φ_NN/Φ_00.
    pub phi_nn_ratio: f64,
    /// Φ_NNN/Φ_00.
    pub phi_nnn_ratio: f64,
    pub u_fesh: f64,
}

impl LfParams {
    /// 2Wλ with W = 4t.
    pub fn two_w_lambda(&self) -> f64 {
        8.0 * self.t_bare * self.lambda
    }

    pub fn validate(&self, variant: LfVariant) -> Result<()> {
        if !(self.lambda >= 0.0) {
            return Err(domain(format!("λ must be non-negative, got {}", self.lambda)));
        }
        if !(self.t_bare > 0.0) {
            return Err(domain(format!("t must be positive, got {}", self.t_bare)));
        }
        if variant == LfVariant::MainText && !(self.hbar_omega_ph > 0.0) {
            return Err(domain(format!("ħω_ph must be positive, got {}", self.hbar_omega_ph)));
        }
        Ok(())
    }
}

/// Renormalized hopping for the chosen variant.
pub fn renormalized_hopping(p: &LfParams, variant: LfVariant) -> f64 {
    match variant {
        LfVariant::MainText => {
            let w = 4.0 * p.t_bare;
            p.t_bare * (-w * p.lambda * (1.0 - p.phi_nn_ratio) / p.hbar_omega_ph).exp()
        }
        LfVariant::Appendix => p.t_bare * (-4.0 * (1.0 - APPENDIX_PHI_NN) * p.lambda).exp(),
    }
}

/// Effective both-diagonals UV model.
pub fn lf_map(p: &LfParams, variant: LfVariant) -> Result<UvModel> {
    p.validate(variant)?;
    let t_prime = renormalized_hopping(p, variant);
    let model = match variant {
        LfVariant::MainText => {
            let wl = 4.0 * p.t_bare * p.lambda;
            UvModel::both_diagonals(
                p.u_fesh - 2.0 * wl,
                -2.0 * p.phi_nn_ratio * wl,
                -2.0 * p.phi_nnn_ratio * wl,
                t_prime,
            )
        }
        LfVariant::Appendix => {
            let lt = p.lambda * p.t_bare;
            UvModel::both_diagonals(
                p.u_fesh - 8.0 * lt,
                APPENDIX_V1_PER_LAMBDA_T * lt,
                APPENDIX_V2_PER_LAMBDA_T * lt,
                t_prime,
            )
        }
    };
    Ok(model)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalThreshold {
    pub lambda: f64,
    pub t_prime: f64,
    /// Critical total on-site interaction.
    pub u_cr: f64,
    /// Critical Feshbach interaction, `U_cr + 8tλ`.
    pub u_fesh_cr: f64,
    /// Denominator of the rational form; it changes sign at a pole.
    pub denominator: f64,
}

/// Hopping in the physical case: `t` itself or `t e^{−3.36λ}`.
pub fn physical_t_prime(lambda: f64, t: f64, renormalized: bool) -> f64 {
    if renormalized {
        t * (-4.0 * (1.0 - APPENDIX_PHI_NN) * lambda).exp()
    } else {
        t
    }
}

fn physical_denominator(lambda: f64, t: f64, tp: f64) -> f64 {
    tp * tp + 0.5451 * t * tp * lambda - 0.0142 * t * t * lambda * lambda
}

/// Threshold of the appendix physical case in its printed rational form
/// `(0.1133 t²t'λ² − 2.9440 t t'²λ)/(t'² + 0.5451 t t'λ − 0.0142 t²λ²)`.
pub fn threshold_physical(lambda: f64, t: f64, renormalized: bool) -> Result<PhysicalThreshold> {
    if !(lambda >= 0.0) || !(t > 0.0) {
        return Err(domain(format!("need λ ≥ 0 and t > 0, got λ = {lambda}, t = {t}")));
    }
    let tp = physical_t_prime(lambda, t, renormalized);
    let num = 0.1133 * t * t * tp * lambda * lambda - 2.9440 * t * tp * tp * lambda;
    let den = physical_denominator(lambda, t, tp);
    let u_cr = num / den;
    Ok(PhysicalThreshold { lambda, t_prime: tp, u_cr, u_fesh_cr: u_cr + 8.0 * t * lambda, denominator: den })
}

/// The same threshold from the full γ-constant formula instead of the
/// four-digit rational form.
pub fn threshold_physical_exact(lambda: f64, t: f64, renormalized: bool) -> Result<BindingThreshold> {
    let tp = physical_t_prime(lambda, t, renormalized);
    threshold_full(APPENDIX_V1_PER_LAMBDA_T * lambda * t, APPENDIX_V2_PER_LAMBDA_T * lambda * t, tp)
}

/// First λ in `(0, lambda_max]` where the physical-case denominator
/// vanishes, located by a scan plus bisection to 1e-12.
pub fn physical_pole(t: f64, renormalized: bool, lambda_max: f64) -> Result<Option<f64>> {
    let f = |l: f64| physical_denominator(l, t, physical_t_prime(l, t, renormalized));
    let grid = roots::linspace(0.0, lambda_max, 4001);
    let values: Vec<f64> = grid.iter().map(|&l| f(l)).collect();
    match roots::sign_changes(&values).first() {
        Some(&i) => Ok(Some(roots::bisect(f, grid[i], grid[i + 1], 1e-12)?)),
        None => Ok(None),
    }
}

/// Main-text critical Feshbach interaction with both NN and NNN
/// interactions, `U_cr(V1, V2) + 2Wλ` with `V = −2Φ Wλ`.
pub fn fesh_threshold_main(t_prime: f64, w_lambda: f64, phi_nn_ratio: f64, phi_nnn_ratio: f64) -> Result<f64> {
    let th = threshold_full(-2.0 * phi_nn_ratio * w_lambda, -2.0 * phi_nnn_ratio * w_lambda, t_prime)?;
    Ok(th.u_cr + 2.0 * w_lambda)
}

/// Main-text form for NNN-only coupling,
/// `4WλΦ_NNN t'/(t' − 8WλΦ_NNN/3π) + 2Wλ` (the single-diagonal threshold).
pub fn fesh_threshold_main_nnn(t_prime: f64, w_lambda: f64, phi_nnn_ratio: f64) -> Result<f64> {
    let th = threshold_diagonal(-2.0 * phi_nnn_ratio * w_lambda, t_prime)?;
    Ok(th.u_cr + 2.0 * w_lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_solver::determinant::UvVariant;
    use approx::assert_relative_eq;

    fn params(lambda: f64) -> LfParams {
        LfParams { t_bare: 1.0, lambda, hbar_omega_ph: 1.0, phi_nn_ratio: 0.16, phi_nnn_ratio: -0.1, u_fesh: 3.0 }
    }

    #[test]
    fn lambda_zero_is_bare() {
        for variant in [LfVariant::MainText, LfVariant::Appendix] {
            let m = lf_map(&params(0.0), variant).unwrap();
            assert_eq!(m.t_prime, 1.0);
            assert_eq!(m.u, 3.0);
            assert_eq!(m.variant, UvVariant::BothDiagonals { v1: 0.0, v2: 0.0 });
        }
    }

    #[test]
    fn hopping_variants_coincide_for_unit_omega() {
        // Φ_NN/Φ_00 = 0.16 and ħω = t make the main-text exponent 4·0.84·λ.
        for l in [0.3, 1.0, 2.5] {
            let p = params(l);
            assert_relative_eq!(
                renormalized_hopping(&p, LfVariant::MainText),
                renormalized_hopping(&p, LfVariant::Appendix),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn appendix_ratio() {
        let m = lf_map(&params(1.3), LfVariant::Appendix).unwrap();
        match m.variant {
            UvVariant::BothDiagonals { v1, v2 } => assert_relative_eq!(v2 / v1.abs(), 5.6, max_relative = 1e-12),
            _ => unreachable!(),
        }
        assert_relative_eq!(m.u, 3.0 - 8.0 * 1.3, max_relative = 1e-14);
    }

    #[test]
    fn negative_lambda_rejected() {
        assert!(lf_map(&params(-0.1), LfVariant::Appendix).is_err());
    }

    #[test]
    fn rational_form_tracks_gamma_form() {
        // The printed coefficients carry four digits.
        for l in [0.2, 0.5, 0.8] {
            let a = threshold_physical(l, 1.0, true).unwrap();
            let b = threshold_physical_exact(l, 1.0, true).unwrap();
            assert!((a.u_cr - b.u_cr).abs() < 2e-3 * (1.0 + b.u_cr.abs()), "λ = {l}");
        }
    }

    #[test]
    fn physical_zero_lambda() {
        let th = threshold_physical(0.0, 1.0, true).unwrap();
        assert_eq!(th.u_cr, 0.0);
        assert_eq!(th.u_fesh_cr, 0.0);
    }

    #[test]
    fn poles() {
        let p = physical_pole(1.0, true, 2.0).unwrap().unwrap();
        assert!((p - 1.08).abs() < 0.02, "{p}");
        assert!(physical_pole(1.0, false, 2.0).unwrap().is_none());
        let far = physical_pole(1.0, false, 100.0).unwrap().unwrap();
        assert!((far - 40.1).abs() < 0.1, "{far}");
    }

    #[test]
    fn main_text_nnn_form() {
        let (tp, wl, phi) = (0.7, 2.0, 0.05);
        let printed = 4.0 * wl * phi * tp / (tp - 8.0 * wl * phi / (3.0 * std::f64::consts::PI)) + 2.0 * wl;
        assert_relative_eq!(fesh_threshold_main_nnn(tp, wl, phi).unwrap(), printed, max_relative = 1e-13);
        assert_eq!(fesh_threshold_main(1.0, 0.0, 0.1, 0.2).unwrap(), 0.0);
    }
}
