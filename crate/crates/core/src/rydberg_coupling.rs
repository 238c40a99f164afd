//! Dressed Rydberg interaction and the phonon-mediated fermion interaction.
//!
//! A dressed pair interacts through the soft-core potential
//! `V(r) = Ṽ / (r_c^η + r^η)` with `Ṽ = ᾱ⁴ C6` and `r_c^η = C6 / 2Δ`.
//! Displacing a phonon atom by `u` along `ζ` shifts a fermion's energy
//! by `f u`, with
//!
//! ```text
//! f_ij = Ṽ η (ζ·r̂) r^(η−1) / (r^η + r_c^η)²,     r̃ = r_i − R_j
//! ```
//!
//! (the phonon wavefunction is taken as a point). Integrating out the
//! oscillators gives the interaction kernel `Φ_ii' = Σ_jν f_ij,ν f_i'j,ν`
//! and the dimensionless coupling `λ = Φ_00 / (2 W M ω²)`.
//!
//! Sign convention: a positive `Φ_xy/Φ_00` is attractive, a negative one is
//! repulsive (the effective UV interaction is `−2 Φ W λ / Φ_00`).
//!
//! Units: lengths µm, C6 in MHz·µm⁶, `Ṽ` in MHz·µm^η (cyclic MHz × h),
//! `f` in MHz/µm and `Φ` in MHz²/µm².

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::painted_lattice::SpotPattern;
use crate::parallel::{self, Execution};
use crate::units::{self, PLANCK};

/// Published C6 endpoints of the usable n_Ryd window (MHz·µm⁶).
pub const C6_N27: f64 = 26.1;
pub const C6_N32: f64 = 153.0;

/// Phonon sites farther than this many lattice constants from either
/// fermion are dropped. With η = 6, f² falls as r⁻¹⁴ and the neglected
/// tail of a 2D lattice sum is O((1/5)¹²) ≈ 4e-9 of Φ_00.
pub const CUTOFF_CELLS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C6Estimate {
    pub n_ryd: u32,
    pub c6: f64,
    /// True outside 27 ≤ n ≤ 32, where the value is extrapolated.
    pub extrapolated: bool,
}

/// C6 by geometric interpolation between n = 27 and n = 32.
pub fn c6_table(n_ryd: u32) -> C6Estimate {
    let x = (n_ryd as f64 - 27.0) / 5.0;
    C6Estimate { n_ryd, c6: C6_N27 * (C6_N32 / C6_N27).powf(x), extrapolated: !(27..=32).contains(&n_ryd) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RydbergSpec {
    pub n_ryd: u32,
    /// MHz·µm⁶ (MHz·µm³ for η = 3).
    pub c6: f64,
    /// Detuning from the Rydberg line, MHz.
    pub delta_2p: f64,
    /// Rabi frequency, MHz.
    pub omega_2p: f64,
    pub alpha_bar: f64,
    pub eta: u32,
    /// Soft-core radius, µm.
    pub r_c: f64,
    /// ᾱ⁴ C6, MHz·µm^η.
    pub v_tilde: f64,
}

impl RydbergSpec {
    /// Build a consistent spec from the soft-core radius: Δ = C6 / 2r_c^η,
    /// Ω = 2ᾱΔ, Ṽ = ᾱ⁴C6.
    pub fn from_cutoff(n_ryd: u32, c6: f64, alpha_bar: f64, eta: u32, r_c: f64) -> Self {
        let delta_2p = c6 / (2.0 * r_c.powi(eta as i32));
        Self {
            n_ryd,
            c6,
            delta_2p,
            omega_2p: 2.0 * alpha_bar * delta_2p,
            alpha_bar,
            eta,
            r_c,
            v_tilde: alpha_bar.powi(4) * c6,
        }
    }

    /// Spec with C6 from [`c6_table`].
    pub fn for_n(n_ryd: u32, alpha_bar: f64, r_c: f64) -> Self {
        Self::from_cutoff(n_ryd, c6_table(n_ryd).c6, alpha_bar, 6, r_c)
    }

    /// Type invariants. ᾱ above 0.2 is reported because perturbation
    /// theory stops being reliable there.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        if !(self.r_c > 0.0) {
            errs.push(format!("r_c = {} must be positive", self.r_c));
        }
        if self.eta != 3 && self.eta != 6 {
            errs.push(format!("eta = {} must be 3 or 6", self.eta));
        }
        if !(self.alpha_bar > 0.0 && self.alpha_bar <= 0.2) {
            errs.push(format!("alpha_bar = {} outside (0, 0.2]", self.alpha_bar));
        }
        let expect = self.alpha_bar.powi(4) * self.c6;
        if (self.v_tilde - expect).abs() > 1e-12 * expect.abs().max(f64::MIN_POSITIVE) {
            errs.push(format!("V_tilde = {} inconsistent with alpha_bar^4 C6 = {}", self.v_tilde, expect));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(domain(errs.join("; ")))
        }
    }
}

/// Dressed pair potential at separation `r` (µm), MHz.
pub fn rydberg_potential(r: f64, spec: &RydbergSpec) -> f64 {
    let eta = spec.eta as i32;
    spec.v_tilde / (spec.r_c.powi(eta) + r.powi(eta))
}

/// Coupling of the fermion at `fermion` to the phonon at `phonon`
/// displaced along `polarization` (MHz/µm).
pub fn coupling_f(fermion: [f64; 2], phonon: [f64; 2], polarization: [f64; 2], spec: &RydbergSpec) -> Result<f64> {
    let d = [fermion[0] - phonon[0], fermion[1] - phonon[1]];
    let r = d[0].hypot(d[1]);
    if !(r > 1e-12) {
        return Err(domain("fermion and phonon sites coincide; coupling direction undefined"));
    }
    let cos = (polarization[0] * d[0] + polarization[1] * d[1]) / r;
    let eta = spec.eta as i32;
    let den = r.powi(eta) + spec.r_c.powi(eta);
    Ok(spec.v_tilde * spec.eta as f64 * cos * r.powi(eta - 1) / (den * den))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveInteractionMap {
    /// Displacements in lattice units.
    pub displacements: Vec<(i64, i64)>,
    /// Φ(0, d) / Φ_00.
    pub values: Vec<f64>,
    /// Φ_00 in MHz²/µm².
    pub phi00: f64,
}

impl EffectiveInteractionMap {
    pub fn value(&self, dx: i64, dy: i64) -> Option<f64> {
        self.displacements.iter().position(|&d| d == (dx, dy)).map(|i| self.values[i])
    }

    /// Φ_NN / Φ_00 along x.
    pub fn nn_ratio(&self) -> f64 {
        self.value(1, 0).unwrap_or(0.0)
    }

    /// Φ_NNN / Φ_00 along the (1,1) diagonal.
    pub fn nnn_ratio(&self) -> f64 {
        self.value(1, 1).unwrap_or(0.0)
    }

    /// Φ_NNN / Φ_00 along the (1,−1) diagonal.
    pub fn nnn_anti_ratio(&self) -> f64 {
        self.value(1, -1).unwrap_or(0.0)
    }

    /// Φ_00 in J²/m².
    pub fn phi00_si(&self) -> f64 {
        let s = PLANCK * 1e6 / units::MICRON;
        self.phi00 * s * s
    }
}

/// "attractive" for positive ratios, "repulsive" for negative ones.
pub fn interpretation(ratio: f64) -> &'static str {
    if ratio > 0.0 {
        "attractive"
    } else if ratio < 0.0 {
        "repulsive"
    } else {
        "none"
    }
}

fn phi_between(
    r_i: [f64; 2],
    r_k: [f64; 2],
    sites: &[crate::painted_lattice::PhononSite],
    spec: &RydbergSpec,
    cutoff: f64,
) -> f64 {
    let mut sum = 0.0;
    for s in sites {
        let di = (s.center[0] - r_i[0]).hypot(s.center[1] - r_i[1]);
        let dk = (s.center[0] - r_k[0]).hypot(s.center[1] - r_k[1]);
        if di > cutoff || dk > cutoff {
            continue;
        }
        for &z in &s.polarizations {
            let fi = coupling_f(r_i, s.center, z, spec).unwrap_or(0.0);
            let fk = coupling_f(r_k, s.center, z, spec).unwrap_or(0.0);
            sum += fi * fk;
        }
    }
    sum
}

/// Φ map relative to the fermion at the origin, for displacements with
/// |dx|, |dy| ≤ `range`.
pub fn effective_interaction(pattern: &SpotPattern, spec: &RydbergSpec, a: f64, range: i64) -> EffectiveInteractionMap {
    effective_interaction_with(Execution::default(), pattern, spec, a, range)
}

pub fn effective_interaction_with(
    exec: Execution,
    pattern: &SpotPattern,
    spec: &RydbergSpec,
    a: f64,
    range: i64,
) -> EffectiveInteractionMap {
    let cutoff = CUTOFF_CELLS * a;
    let window = CUTOFF_CELLS as i64 + range + 2;
    let sites = pattern.sites_in_window(a, window);
    let mut displacements = Vec::new();
    for dx in -range..=range {
        for dy in -range..=range {
            displacements.push((dx, dy));
        }
    }
    let origin = [0.0, 0.0];
    let raw = parallel::map(exec, &displacements, |&(dx, dy)| {
        phi_between(origin, [dx as f64 * a, dy as f64 * a], &sites, spec, cutoff)
    });
    let phi00 = phi_between(origin, origin, &sites, spec, cutoff);
    let values = raw.iter().map(|v| v / phi00).collect();
    EffectiveInteractionMap { displacements, values, phi00 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NnnEstimate {
    pub ratio: f64,
    /// False when `b` is outside `(0, a/√2)`.
    pub valid: bool,
}

/// Leading-order NNN-to-onsite ratio `(b / (a√2 − b))^(η+1)` for an
/// offset-parallel pattern.
pub fn nnn_ratio_estimate(b: f64, a: f64, eta: u32) -> NnnEstimate {
    let ratio = (b / (a * SQRT_2 - b)).powi(eta as i32 + 1);
    NnnEstimate { ratio, valid: b > 0.0 && b < a / SQRT_2 }
}

/// λ = Φ_00 / (2 W M ω²), SI inputs (J²/m², J, kg, rad/s).
pub fn lambda_dimensionless(phi00: f64, w: f64, mass: f64, omega_ph: f64) -> f64 {
    phi00 / (2.0 * w * mass * omega_ph * omega_ph)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSummary {
    pub lambda: f64,
    /// Bandwidth 4t, Hz.
    pub w: f64,
    /// Wλ, Hz.
    pub w_lambda: f64,
}

/// λ and Wλ for hopping `t_hz` and a phonon of mass `mass` at `omega_ph`.
pub fn coupling_summary(map: &EffectiveInteractionMap, t_hz: f64, mass: f64, omega_ph: f64) -> CouplingSummary {
    let w = 4.0 * t_hz;
    let lambda = lambda_dimensionless(map.phi00_si(), units::hz_to_joule(w), mass, omega_ph);
    CouplingSummary { lambda, w, w_lambda: w * lambda }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painted_lattice::{PatternKind, SpotPattern};
    use approx::assert_relative_eq;

    const A: f64 = 1.73;

    fn spec() -> RydbergSpec {
        RydbergSpec::for_n(27, 0.05, 0.1 * A)
    }

    #[test]
    fn potential_plateau_and_half_point() {
        let s = spec();
        let v0 = rydberg_potential(0.0, &s);
        assert_relative_eq!(v0, s.v_tilde / s.r_c.powi(6), max_relative = 1e-15);
        assert_relative_eq!(rydberg_potential(s.r_c, &s), 0.5 * v0, max_relative = 1e-15);
        let r = 3.0 * s.r_c;
        let tail = s.v_tilde / r.powi(6);
        assert!((rydberg_potential(r, &s) - tail).abs() < 0.01 * tail);
    }

    #[test]
    fn spec_is_self_consistent() {
        let s = spec();
        s.validate().unwrap();
        assert_relative_eq!(s.r_c.powi(6), s.c6 / (2.0 * s.delta_2p), max_relative = 1e-14);
        assert_relative_eq!(s.alpha_bar, s.omega_2p / (2.0 * s.delta_2p), max_relative = 1e-14);
        let bad = RydbergSpec { alpha_bar: 0.3, ..s };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn c6_endpoints() {
        assert_relative_eq!(c6_table(27).c6, 26.1, max_relative = 1e-14);
        assert_relative_eq!(c6_table(32).c6, 153.0, max_relative = 1e-14);
        assert!(!c6_table(30).extrapolated);
        assert!(c6_table(34).extrapolated);
        assert!(c6_table(29).c6 > c6_table(28).c6);
    }

    #[test]
    fn coupling_geometry() {
        let s = spec();
        let f = coupling_f([1.0, 0.0], [0.0, 0.0], [0.0, 1.0], &s).unwrap();
        assert_eq!(f, 0.0);
        let f1 = coupling_f([0.7, 0.2], [0.0, 0.0], [0.6, 0.8], &s).unwrap();
        let f2 = coupling_f([-0.7, -0.2], [0.0, 0.0], [0.6, 0.8], &s).unwrap();
        assert_relative_eq!(f1, -f2, max_relative = 1e-15);
        assert!(coupling_f([0.3, 0.3], [0.3, 0.3], [1.0, 0.0], &s).is_err());
    }

    #[test]
    fn map_is_normalised_and_inversion_symmetric() {
        let s = spec();
        for kind in [
            PatternKind::HolsteinReference,
            PatternKind::Crossed,
            PatternKind::BipartiteParallel,
            PatternKind::OffsetParallel { b: 0.4 * A * SQRT_2 },
        ] {
            let p = SpotPattern::new(kind, A, 0.57, 0.2, 1000.0);
            let m = effective_interaction(&p, &s, A, 2);
            assert_eq!(m.value(0, 0), Some(1.0));
            for &(dx, dy) in &m.displacements {
                assert_relative_eq!(
                    m.value(dx, dy).unwrap(),
                    m.value(-dx, -dy).unwrap(),
                    epsilon = 1e-8,
                    max_relative = 1e-9
                );
            }
        }
    }

    #[test]
    fn nnn_estimate_cases() {
        let e = nnn_ratio_estimate(A / SQRT_2, A, 6);
        assert_relative_eq!(e.ratio, 1.0, max_relative = 1e-14);
        let e = nnn_ratio_estimate(A / (2.0 * SQRT_2), A, 6);
        assert_relative_eq!(e.ratio, (1.0f64 / 3.0).powi(7), max_relative = 1e-13);
        assert!(e.ratio < 5e-4);
        assert!(e.valid);
        assert!(!nnn_ratio_estimate(1.3, A, 6).valid);
    }

    #[test]
    fn lambda_scaling() {
        assert_eq!(lambda_dimensionless(0.0, 1.0, 1.0, 1.0), 0.0);
        let l1 = lambda_dimensionless(2.0, 3.0, 5.0, 7.0);
        let l2 = lambda_dimensionless(2.0, 3.0, 5.0, 14.0);
        assert_relative_eq!(l1, 4.0 * l2, max_relative = 1e-15);
    }

    #[test]
    fn crossed_map_is_rotation_invariant() {
        let s = spec();
        let base = SpotPattern::new(PatternKind::Crossed, A, 0.57, 0.2, 1000.0);
        let m45 = effective_interaction(&base.clone().with_rotation(std::f64::consts::FRAC_PI_4), &s, A, 2);
        let m90 = effective_interaction(&base.with_rotation(std::f64::consts::FRAC_PI_2), &s, A, 2);
        for (a, b) in m45.values.iter().zip(&m90.values) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
