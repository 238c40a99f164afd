//! Complete elliptic integrals via the arithmetic–geometric mean.
//!
//! **Convention:** the argument is the *modulus* κ, not the parameter
//! m = κ². So `elliptic_k(κ) = ∫₀^{π/2} dθ / √(1 − κ² sin²θ)`. Libraries
//! that take m (Mathematica's `EllipticK[m]`, scipy's `ellipk(m)`) need
//! their argument squared to match.

use std::f64::consts::{LN_2, PI};

use crate::error::{domain, Error, Result};

/// Complete elliptic integral of the first kind K(κ), 0 ≤ κ < 1.
pub fn elliptic_k(kappa: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(if kappa >= 1.0 {
            Error::Domain(format!("K(κ) diverges for κ = {kappa} ≥ 1"))
        } else {
            domain(format!("modulus must be non-negative, got {kappa}"))
        });
    }
    Ok(elliptic_ke(kappa, complement(kappa)).0)
}

/// Complete elliptic integral of the second kind E(κ), 0 ≤ κ ≤ 1.
pub fn elliptic_e(kappa: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(domain(format!("modulus must lie in [0, 1], got {kappa}")));
    }
    if kappa == 1.0 {
        return Ok(1.0);
    }
    Ok(elliptic_ke(kappa, complement(kappa)).1)
}

fn complement(kappa: f64) -> f64 {
    ((1.0 - kappa) * (1.0 + kappa)).sqrt()
}

/// Both K and E from the modulus and its complement κ' = √(1 − κ²).
///
/// Passing κ' separately keeps full precision near κ → 1, where forming
/// 1 − κ² would cancel.
pub fn elliptic_ke(kappa: f64, kappa_prime: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = kappa_prime;
    let mut c = kappa;
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    for _ in 0..64 {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = a_next;
        weight *= 2.0;
        sum += weight * c * c;
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}

/// K and E when only ln κ' is representable.
///
/// Below κ' ≈ 1e-130 the leading asymptotics K = ln(4/κ'), E = 1 are exact
/// to double precision (corrections are O(κ'² ln κ')).
pub fn elliptic_ke_log_complement(kappa: f64, ln_kappa_prime: f64) -> (f64, f64) {
    if ln_kappa_prime < -300.0 {
        (2.0 * LN_2 - ln_kappa_prime, 1.0)
    } else {
        elliptic_ke(kappa, ln_kappa_prime.exp())
    }
}

/// Arithmetic–geometric mean of two non-negative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = a_next;
    }
    a
}
