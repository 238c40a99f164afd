//! Species-selective AC Stark trap potentials.
//!
//! The light shift of an alkali ground state between its D1 and D2 lines is
//!
//! ```text
//! V = p · [ (Γ1²/δ1 + 2Γ2²/δ2) − g_F m_F √(1−ε²) (Γ1²/δ1 − Γ2²/δ2) ]
//! ```
//!
//! with `p = ħ I / 24 I_sat` the intensity prefactor. Between the two lines
//! the laser is blue of D1 and red of D2, the two terms cancel, and that
//! species sees no potential. Tuning one species' lattice to the other
//! species' zero gives two mutually exclusive lattices.
//!
//! Units: the prefactor is given in nK and the bracket is evaluated with Γ
//! and δ as cyclic frequencies in MHz, so `p = 1 nK` reproduces the usual
//! "prefactor = 1 nK" plots. [`prefactor_from_intensity`] converts a real
//! laser intensity to that prefactor.
//!
//! Detunings are `δ = ω_laser − ω_line`, computed from wavelengths via the
//! vacuum speed of light. Red detuning (δ < 0) is attractive, V < 0.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::roots;
use crate::units::{self, C_LIGHT, HBAR};

/// Bisection tolerance for [`find_stark_zero`], in nm.
pub const ZERO_TOLERANCE_NM: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomLineData {
    pub species_name: String,
    /// Saturation intensity, W/m².
    pub i_sat: f64,
    /// D1 wavelength, nm.
    pub lambda_d1: f64,
    /// D2 wavelength, nm.
    pub lambda_d2: f64,
    /// D1 linewidth, rad/s.
    pub gamma_1: f64,
    /// D2 linewidth, rad/s.
    pub gamma_2: f64,
}

impl AtomLineData {
    /// ⁴⁰K. The published D2 linewidth is labelled Γ₁ (a typo); it is
    /// used here as Γ₂ = 2π × 6.03 MHz.
    pub fn potassium_40() -> Self {
        Self {
            species_name: "K40".into(),
            i_sat: 17.5,
            lambda_d1: 770.1,
            lambda_d2: 766.7,
            gamma_1: 2.0 * std::f64::consts::PI * 5.95e6,
            gamma_2: 2.0 * std::f64::consts::PI * 6.03e6,
        }
    }

    /// ⁸⁷Rb.
    pub fn rubidium_87() -> Self {
        Self {
            species_name: "Rb87".into(),
            i_sat: 16.7,
            lambda_d1: 795.0,
            lambda_d2: 780.2,
            gamma_1: 2.0 * std::f64::consts::PI * 5.74e6,
            gamma_2: 2.0 * std::f64::consts::PI * 6.06e6,
        }
    }

    /// Look up a built-in dataset by name (`K40`, `Rb87`, case-insensitive).
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "k40" | "40k" | "potassium40" => Some(Self::potassium_40()),
            "rb87" | "87rb" | "rubidium87" => Some(Self::rubidium_87()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_d2 < self.lambda_d1) {
            return Err(domain(format!(
                "{}: D2 line ({} nm) must lie below D1 ({} nm)",
                self.species_name, self.lambda_d2, self.lambda_d1
            )));
        }
        if !(self.i_sat > 0.0 && self.gamma_1 > 0.0 && self.gamma_2 > 0.0) {
            return Err(domain(format!("{}: linewidths and saturation intensity must be positive", self.species_name)));
        }
        Ok(())
    }
}

/// How the two-line sum is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarkModel {
    /// Rotating-wave form with one saturation intensity for both lines,
    /// exactly the bracket in the module docs.
    Rwa,
    /// Far-detuned dipole potential: each line weighted by its own
    /// oscillator strength (Γ_i/ω_i³) and including the counter-rotating
    /// term 1/(ω_L + ω_i). Normalised so the D2 weight equals Γ2².
    #[default]
    FullDipole,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkConfig {
    pub g_f: f64,
    pub m_f: f64,
    pub ellipticity: f64,
    /// ħ I / 24 I_sat, nK.
    pub intensity_prefactor: f64,
    #[serde(default)]
    pub model: StarkModel,
}

impl Default for StarkConfig {
    fn default() -> Self {
        Self { g_f: 0.0, m_f: 0.0, ellipticity: 0.0, intensity_prefactor: 1.0, model: StarkModel::default() }
    }
}

impl StarkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.ellipticity.abs() <= 1.0) {
            return Err(domain(format!("ellipticity {} outside [-1, 1]", self.ellipticity)));
        }
        if !(self.intensity_prefactor >= 0.0) {
            return Err(domain(format!("intensity prefactor {} must be non-negative", self.intensity_prefactor)));
        }
        Ok(())
    }
}

/// Prefactor ħI/(24 I_sat) in nK for a laser intensity in W/m², matching
/// the MHz convention of the bracket.
pub fn prefactor_from_intensity(intensity: f64, i_sat: f64) -> f64 {
    units::joule_to_nk(HBAR * intensity / (24.0 * i_sat) * 2.0 * std::f64::consts::PI * 1e6)
}

/// Optical frequency in MHz (cyclic) for a wavelength in nm.
fn nu_mhz(lambda_nm: f64) -> f64 {
    C_LIGHT / (lambda_nm * 1e-9) * 1e-6
}

fn line_terms(atom: &AtomLineData, laser_nm: f64, model: StarkModel) -> Result<(f64, f64)> {
    let nu_l = nu_mhz(laser_nm);
    let nu_1 = nu_mhz(atom.lambda_d1);
    let nu_2 = nu_mhz(atom.lambda_d2);
    let d1 = nu_l - nu_1;
    let d2 = nu_l - nu_2;
    if d1 == 0.0 {
        return Err(Error::OnResonance { line: "D1", wavelength_nm: laser_nm });
    }
    if d2 == 0.0 {
        return Err(Error::OnResonance { line: "D2", wavelength_nm: laser_nm });
    }
    let to_mhz = 1.0 / (2.0 * std::f64::consts::PI * 1e6);
    let g1 = atom.gamma_1 * to_mhz;
    let g2 = atom.gamma_2 * to_mhz;
    Ok(match model {
        StarkModel::Rwa => (g1 * g1 / d1, g2 * g2 / d2),
        StarkModel::FullDipole => {
            let w1 = g1 * g2 * (nu_2 / nu_1).powi(3);
            let w2 = g2 * g2;
            (w1 * (1.0 / d1 - 1.0 / (nu_l + nu_1)), w2 * (1.0 / d2 - 1.0 / (nu_l + nu_2)))
        }
    })
}

/// Trap potential in nK for `atom` in light of wavelength `laser_nm`.
pub fn ac_stark_shift(atom: &AtomLineData, laser_nm: f64, cfg: &StarkConfig) -> Result<f64> {
    if !(laser_nm > 0.0) {
        return Err(domain(format!("laser wavelength must be positive, got {laser_nm}")));
    }
    let (t1, t2) = line_terms(atom, laser_nm, cfg.model)?;
    let scalar = t1 + 2.0 * t2;
    let vector = if cfg.m_f == 0.0 || cfg.g_f == 0.0 {
        0.0
    } else {
        cfg.g_f * cfg.m_f * (1.0 - cfg.ellipticity * cfg.ellipticity).sqrt() * (t1 - t2)
    };
    Ok(cfg.intensity_prefactor * (scalar - vector))
}

/// The wavelength between the D2 and D1 lines where the shift vanishes.
pub fn find_stark_zero(atom: &AtomLineData, cfg: &StarkConfig) -> Result<f64> {
    atom.validate()?;
    cfg.validate()?;
    // Step inside the open interval; the shift diverges with opposite
    // signs at the two lines.
    let eps = 1e-6 * (atom.lambda_d1 - atom.lambda_d2);
    let lo = atom.lambda_d2 + eps;
    let hi = atom.lambda_d1 - eps;
    // Unit prefactor so a zero intensity cannot hide the crossing.
    let probe = StarkConfig { intensity_prefactor: 1.0, ..*cfg };
    let f = |l: f64| ac_stark_shift(atom, l, &probe).unwrap_or(f64::NAN);
    roots::bisect(f, lo, hi, ZERO_TOLERANCE_NM).map_err(|_| Error::NoZeroCrossing { lo_nm: lo, hi_nm: hi })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutualTrapCheck {
    pub species_a: String,
    pub species_b: String,
    pub lambda_zero_a: f64,
    /// Shift of species B at A's zero, nK.
    pub v_b_at_zero_a: f64,
    pub lambda_zero_b: f64,
    /// Shift of species A at B's zero, nK.
    pub v_a_at_zero_b: f64,
}

impl MutualTrapCheck {
    /// Both cross-shifts nonzero: each lattice is seen by exactly one species.
    pub fn is_exclusive(&self) -> bool {
        self.v_b_at_zero_a != 0.0 && self.v_a_at_zero_b != 0.0
    }
}

pub fn mutual_trap_check(a: &AtomLineData, b: &AtomLineData, cfg: &StarkConfig) -> Result<MutualTrapCheck> {
    let lambda_zero_a = find_stark_zero(a, cfg)?;
    let lambda_zero_b = find_stark_zero(b, cfg)?;
    Ok(MutualTrapCheck {
        species_a: a.species_name.clone(),
        species_b: b.species_name.clone(),
        lambda_zero_a,
        v_b_at_zero_a: ac_stark_shift(b, lambda_zero_a, cfg)?,
        lambda_zero_b,
        v_a_at_zero_b: ac_stark_shift(a, lambda_zero_b, cfg)?,
    })
}

/// Tabulate the shift of each species over a wavelength grid. Points on a
/// resonance come back as NaN.
pub fn stark_sweep(atoms: &[AtomLineData], wavelengths: &[f64], cfg: &StarkConfig) -> Vec<Vec<f64>> {
    wavelengths.iter().map(|&l| atoms.iter().map(|a| ac_stark_shift(a, l, cfg).unwrap_or(f64::NAN)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> StarkConfig {
        StarkConfig::default()
    }

    #[test]
    fn potassium_zero_near_768_97() {
        let k = AtomLineData::potassium_40();
        let z = find_stark_zero(&k, &unit()).unwrap();
        assert!((z - 768.97).abs() < 0.05, "{z}");
        assert!(ac_stark_shift(&k, 768.97, &unit()).unwrap().abs() < 0.02);
    }

    #[test]
    fn rubidium_zero_near_790_07() {
        let z = find_stark_zero(&AtomLineData::rubidium_87(), &unit()).unwrap();
        assert!((z - 790.07).abs() < 0.05, "{z}");
    }

    #[test]
    fn vector_term_vanishes_for_zero_mf() {
        let k = AtomLineData::potassium_40();
        let a = StarkConfig { g_f: -0.22, ..unit() };
        let b = StarkConfig { g_f: 0.5, ..unit() };
        assert_eq!(ac_stark_shift(&k, 775.0, &a).unwrap(), ac_stark_shift(&k, 775.0, &b).unwrap());
    }

    #[test]
    fn rwa_zero_for_equal_linewidths() {
        // Γ1 = Γ2, m_F = 0: Γ²/δ1 + 2Γ²/δ2 = 0 ⇒ ω_L = (2ω1 + ω2)/3.
        let atom = AtomLineData {
            species_name: "X".into(),
            i_sat: 1.0,
            lambda_d1: 800.0,
            lambda_d2: 780.0,
            gamma_1: 1e7,
            gamma_2: 1e7,
        };
        let cfg = StarkConfig { model: StarkModel::Rwa, ..unit() };
        let z = find_stark_zero(&atom, &cfg).unwrap();
        let nu = (2.0 / 800.0 + 1.0 / 780.0) / 3.0;
        assert!((z - 1.0 / nu).abs() < ZERO_TOLERANCE_NM);
    }

    #[test]
    fn linear_in_prefactor() {
        let rb = AtomLineData::rubidium_87();
        let one = ac_stark_shift(&rb, 768.97, &unit()).unwrap();
        let two = ac_stark_shift(&rb, 768.97, &StarkConfig { intensity_prefactor: 2.0, ..unit() }).unwrap();
        assert_relative_eq!(two, 2.0 * one, max_relative = 1e-15);
    }

    #[test]
    fn resonance_is_a_domain_error() {
        let k = AtomLineData::potassium_40();
        let err = ac_stark_shift(&k, k.lambda_d1, &unit()).unwrap_err();
        assert!(matches!(err, Error::OnResonance { line: "D1", .. }));
        let err = ac_stark_shift(&k, k.lambda_d2, &unit()).unwrap_err();
        assert!(matches!(err, Error::OnResonance { line: "D2", .. }));
    }

    #[test]
    fn sign_flips_across_each_line() {
        for atom in [AtomLineData::potassium_40(), AtomLineData::rubidium_87()] {
            for line in [atom.lambda_d1, atom.lambda_d2] {
                let below = ac_stark_shift(&atom, line - 0.01, &unit()).unwrap();
                let above = ac_stark_shift(&atom, line + 0.01, &unit()).unwrap();
                assert!(below.signum() != above.signum());
            }
        }
    }

    #[test]
    fn mutual_trap_signs() {
        let m = mutual_trap_check(&AtomLineData::potassium_40(), &AtomLineData::rubidium_87(), &unit()).unwrap();
        assert!(m.v_b_at_zero_a > 0.0);
        assert!(m.v_a_at_zero_b < 0.0);
        assert!(m.is_exclusive());
        let same = mutual_trap_check(&AtomLineData::rubidium_87(), &AtomLineData::rubidium_87(), &unit()).unwrap();
        assert!(same.v_b_at_zero_a.abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = StarkConfig { ellipticity: 1.5, ..unit() };
        assert!(find_stark_zero(&AtomLineData::potassium_40(), &cfg).is_err());
        let mut bad = AtomLineData::potassium_40();
        std::mem::swap(&mut bad.lambda_d1, &mut bad.lambda_d2);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(AtomLineData::builtin("K-40").unwrap().species_name, "K40");
        assert_eq!(AtomLineData::builtin("rb87").unwrap().species_name, "Rb87");
        assert!(AtomLineData::builtin("Cs133").is_none());
    }
}
