//! Lattice Green's integrals
//!
//! `M_nl(E) = ∫∫ d²q/(2π)² cos(n qx) cos(l qy) / (|E| − 4t'(cos qx + cos qy))`
//!
//! for the six index pairs that the determinant equations need, and the
//! differences `C_nl = M_00 − M_nl`. Energies are in the same unit as `t'`.
//!
//! Below the band the modulus is `κ = 2W'/|E| = 8t'/|E|`. Near the band
//! edge κ → 1 and M_00 diverges logarithmically, so the natural variable is
//! `s = ln(|E|/8t' − 1)`: both κ and ln κ' follow from s without
//! cancellation, which lets root searches reach bindings far below 1e-100 t'.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special;

/// The index pairs with closed forms, in table order.
pub const INDICES: [(u32, u32); 6] = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)];

/// Above this modulus the closed forms are used; below it the positive
/// walk series, which avoids cancellation in the |E|³/W'⁴ terms.
const SERIES_MAX_KAPPA: f64 = 0.6;

fn slot(n: u32, l: u32) -> Result<usize> {
    // M_nl is symmetric in n and l.
    let (n, l) = if n >= l { (n, l) } else { (l, n) };
    INDICES.iter().position(|&p| p == (n, l)).ok_or(Error::UnsupportedIntegral { n, l })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreensIntegrals {
    /// Pair energy, negative and below −8t'.
    pub energy: f64,
    pub t_prime: f64,
    /// `ln(|E|/8t' − 1)`.
    pub s: f64,
    pub kappa: f64,
    pub ln_kappa_prime: f64,
    /// `4t'`.
    pub w_prime: f64,
    pub k: f64,
    pub e: f64,
    /// M_00, M_10, M_11, M_20, M_21, M_22.
    pub m: [f64; 6],
}

impl GreensIntegrals {
    /// Integrals at energy `energy < −8t'`.
    pub fn new(energy: f64, t_prime: f64) -> Result<Self> {
        check_t(t_prime)?;
        if !(energy < -8.0 * t_prime) {
            return Err(domain(format!("E = {energy} is not below the band bottom −8t' = {}", -8.0 * t_prime)));
        }
        let x = -energy / (8.0 * t_prime) - 1.0;
        Self::from_s(x.ln(), t_prime)
    }

    /// Integrals at `|E| = 8t'(1 + e^s)`.
    pub fn from_s(s: f64, t_prime: f64) -> Result<Self> {
        check_t(t_prime)?;
        if !s.is_finite() {
            return Err(domain(format!("band-edge variable s = {s} must be finite")));
        }
        let x = s.exp();
        let abs_e = 8.0 * t_prime * (1.0 + x);
        let kappa = 1.0 / (1.0 + x);
        let ln_kappa_prime = 0.5 * (s + (2.0 + x).ln()) - x.ln_1p();
        let (k, e) = special::elliptic_ke_log_complement(kappa, ln_kappa_prime);
        let w = 4.0 * t_prime;
        let m = if kappa <= SERIES_MAX_KAPPA {
            INDICES.map(|(n, l)| walk_series(n, l, abs_e, kappa))
        } else {
            closed_forms(abs_e, w, kappa, k, e)
        };
        Ok(Self { energy: -abs_e, t_prime, s, kappa, ln_kappa_prime, w_prime: w, k, e, m })
    }

    pub fn m(&self, n: u32, l: u32) -> Result<f64> {
        Ok(self.m[slot(n, l)?])
    }

    /// `C_nl = M_00 − M_nl`.
    pub fn c(&self, n: u32, l: u32) -> Result<f64> {
        Ok(self.m[0] - self.m(n, l)?)
    }

    pub fn m00(&self) -> f64 {
        self.m[0]
    }
    pub fn m10(&self) -> f64 {
        self.m[1]
    }
    pub fn m11(&self) -> f64 {
        self.m[2]
    }
    pub fn m20(&self) -> f64 {
        self.m[3]
    }
    pub fn m21(&self) -> f64 {
        self.m[4]
    }
    pub fn m22(&self) -> f64 {
        self.m[5]
    }
}

fn check_t(t_prime: f64) -> Result<()> {
    if t_prime > 0.0 && t_prime.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("t' must be positive, got {t_prime}")))
    }
}

fn closed_forms(abs_e: f64, w: f64, kappa: f64, k: f64, e: f64) -> [f64; 6] {
    let w2 = w * w;
    let w3 = w2 * w;
    let w4 = w2 * w2;
    let e2 = abs_e * abs_e;
    let e3 = e2 * abs_e;
    let m00 = 2.0 / (PI * abs_e) * k;
    let m10 = k / (PI * w) - 0.5 / w;
    let m11 = abs_e / (2.0 * PI * w2) * ((2.0 - kappa * kappa) * k - 2.0 * e);
    let m20 = m00 + abs_e / w2 * (2.0 / PI * e - 1.0);
    let m21 = (e2 / (PI * w3) - 3.0 / (PI * w)) * k - e2 / (PI * w3) * e + 0.5 / w;
    let m22 = (2.0 / (PI * abs_e) - 8.0 * abs_e / (3.0 * PI * w2) + 2.0 * e3 / (3.0 * PI * w4)) * k
        + (4.0 * abs_e / (3.0 * PI * w2) - 2.0 * e3 / (3.0 * PI * w4)) * e;
    [m00, m10, m11, m20, m21, m22]
}

/// Expansion of the denominator in powers of `(cos qx + cos qy)`:
/// `M_nl = (1/|E|) Σ_j (κ/4)^j N_j(n, l)`, where `N_j(n, l)` counts j-step
/// nearest-neighbour walks from the origin to (n, l).
fn walk_series(n: u32, l: u32, abs_e: f64, kappa: f64) -> f64 {
    let ratio = 0.25 * kappa;
    let start = n + l;
    let mut sum = 0.0;
    let mut j = start;
    while j < 2000 {
        let term = ratio.powi(j as i32) * walk_count(j, n, l);
        sum += term;
        if term < 1e-18 * sum && j > start + 4 {
            break;
        }
        j += 2;
    }
    sum / abs_e
}

/// `N_j(n, l) = C(j, (j+n+l)/2) · C(j, (j+n−l)/2)` in rotated coordinates.
fn walk_count(j: u32, n: u32, l: u32) -> f64 {
    binomial(j, (j + n + l) / 2) * binomial(j, (j + n - l) / 2)
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `M_nl(E)`.
pub fn greens_m(n: u32, l: u32, energy: f64, t_prime: f64) -> Result<f64> {
    slot(n, l)?;
    GreensIntegrals::new(energy, t_prime)?.m(n, l)
}

/// `C_nl(E) = M_00(E) − M_nl(E)`.
pub fn greens_c(n: u32, l: u32, energy: f64, t_prime: f64) -> Result<f64> {
    slot(n, l)?;
    GreensIntegrals::new(energy, t_prime)?.c(n, l)
}

/// `C_nl` in the limit `E → −8t'` from below, where it stays finite.
pub fn greens_c_threshold(n: u32, l: u32, t_prime: f64) -> Result<f64> {
    check_t(t_prime)?;
    let (n, l) = if n >= l { (n, l) } else { (l, n) };
    let value = match (n, l) {
        (0, 0) => 0.0,
        (1, 0) => 1.0 / 8.0,
        (1, 1) => 1.0 / (2.0 * PI),
        (2, 0) => (PI - 2.0) / (2.0 * PI),
        (2, 1) => (8.0 - PI) / (8.0 * PI),
        (2, 2) => 2.0 / (3.0 * PI),
        _ => return Err(Error::UnsupportedIntegral { n, l }),
    };
    Ok(value / t_prime)
}

/// The three binding-condition constants of the both-diagonals model.
pub fn gamma_constants() -> [f64; 3] {
    [(32.0 - 9.0 * PI) / (12.0 * PI), (16.0 - 3.0 * PI) / (3.0 * PI), (64.0 - 18.0 * PI) / (3.0 * PI)]
}
