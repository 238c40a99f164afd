//! Physical constants and the unit conversions used across the toolkit.
//!
//! Internal conventions: lengths in µm, energies either in nK (temperature
//! units, `E / k_B`) or in Hz (`E / h`), masses in kg. Anything that mixes
//! these goes through the helpers below so the factors live in one place.

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Planck constant (J s).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Speed of light in vacuum (m/s).
pub const C_LIGHT: f64 = 299_792_458.0;
/// Bohr radius (m).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
/// Atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;

/// Mass of a ⁴⁰K atom (kg).
pub const MASS_K40: f64 = 39.963_998_166 * AMU;
/// Mass of an ⁸⁷Rb atom (kg).
pub const MASS_RB87: f64 = 86.909_180_531 * AMU;

/// One micrometre in metres.
pub const MICRON: f64 = 1e-6;

/// `h / k_B` in nK per Hz (≈ 0.048 nK/Hz).
pub const NK_PER_HZ: f64 = PLANCK / K_B * 1e9;

pub fn nk_to_joule(e_nk: f64) -> f64 {
    e_nk * 1e-9 * K_B
}

pub fn joule_to_nk(e: f64) -> f64 {
    e / K_B * 1e9
}

pub fn hz_to_joule(e_hz: f64) -> f64 {
    e_hz * PLANCK
}

pub fn joule_to_hz(e: f64) -> f64 {
    e / PLANCK
}

pub fn nk_to_hz(e_nk: f64) -> f64 {
    e_nk / NK_PER_HZ
}

pub fn hz_to_nk(e_hz: f64) -> f64 {
    e_hz * NK_PER_HZ
}

/// Angular frequency (rad/s) of light with vacuum wavelength `lambda_nm`.
pub fn angular_frequency_from_wavelength(lambda_nm: f64) -> f64 {
    2.0 * std::f64::consts::PI * C_LIGHT / (lambda_nm * 1e-9)
}

/// Energy quantum `ħω` in Hz for an angular frequency in rad/s.
pub fn quantum_hz(omega: f64) -> f64 {
    omega / (2.0 * std::f64::consts::PI)
}
