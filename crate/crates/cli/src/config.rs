//! Run configuration read from TOML.
//!
//! Every key is optional. Unknown keys are rejected with the line and
//! column of the offending text, and validation reports all violations at
//! once rather than stopping at the first.
//!
//! ```toml
//! subcommand = "phase"
//!
//! [lattice]
//! a = 1.73
//!
//! [phase]
//! temperature = 20.0
//! lambda_max = 3.0
//! ```

use std::f64::consts::SQRT_2;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use hhsim::hubbard_params::{self, FeshbachSpec, DEFAULT_A_S0};
use hhsim::painted_lattice::{LatticeSpec, PatternKind, SpotPattern};
use hhsim::pair_solver::{LfVariant, UvModel};
use hhsim::phase_diagram::DEFAULT_PAIR_DENSITY;
use hhsim::rydberg_coupling::{c6_table, RydbergSpec};
use hhsim::stark_potentials::{AtomLineData, StarkConfig, StarkModel};

use crate::output::Format;

pub const DEFAULT_A: f64 = 1.73;
pub const DEFAULT_RC_OVER_A: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid configuration: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

pub const SUBCOMMANDS: [&str; 9] =
    ["stark", "phonon", "phi-map", "params", "binding", "pair", "oracle", "phase", "figures"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PatternName {
    HolsteinReference,
    OffsetParallel,
    Crossed,
    BipartiteParallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    #[default]
    SingleDiagonal,
    BothDiagonals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VariantName {
    #[default]
    MainText,
    Appendix,
}

impl From<VariantName> for LfVariant {
    fn from(v: VariantName) -> Self {
        match v {
            VariantName::MainText => LfVariant::MainText,
            VariantName::Appendix => LfVariant::Appendix,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: Option<String>,
    pub format: Option<Format>,
    pub lattice: LatticeSection,
    pub pattern: PatternSection,
    pub rydberg: RydbergSection,
    pub feshbach: FeshbachSection,
    pub stark: StarkSection,
    pub phonon: PhononSection,
    pub phi_map: PhiMapSection,
    pub params: ParamsSection,
    pub binding: BindingSection,
    pub pair: PairSection,
    pub oracle: OracleSection,
    pub phase: PhaseSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeSection {
    /// µm.
    pub a: f64,
    /// nK.
    pub v0_pan: f64,
    /// µm.
    pub w_pan: f64,
    /// µm.
    pub w_f: f64,
    /// nK.
    pub v0: f64,
}

impl Default for LatticeSection {
    fn default() -> Self {
        let d = LatticeSpec::default();
        Self { a: DEFAULT_A, v0_pan: d.v0_pan, w_pan: d.w_pan, w_f: d.w_f, v0: d.v0 }
    }
}

impl LatticeSection {
    pub fn spec(&self) -> LatticeSpec {
        LatticeSpec { a: self.a, v0_pan: self.v0_pan, w_pan: self.w_pan, w_f: self.w_f, v0: self.v0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PatternSection {
    /// Unset means each subcommand picks its own default.
    pub kind: Option<PatternName>,
    /// Offset of an offset-parallel pattern in units of a√2.
    pub b_over_a_prime: f64,
    /// µm.
    pub w_ph: f64,
    /// µm.
    pub d: f64,
    /// nK; used where a fixed phonon depth is needed.
    pub v0_ph: f64,
    /// Phonon depth as a multiple of V0 in depth sweeps.
    pub v0_ph_ratio: f64,
    pub rotation_deg: f64,
}

impl Default for PatternSection {
    fn default() -> Self {
        Self {
            kind: None,
            b_over_a_prime: 0.4,
            w_ph: 0.57,
            d: 0.2823,
            v0_ph: 1000.0,
            v0_ph_ratio: 2.5,
            rotation_deg: 0.0,
        }
    }
}

impl PatternSection {
    pub fn build(&self, a: f64, fallback: PatternName, v0_ph: f64) -> SpotPattern {
        let kind = match self.kind.unwrap_or(fallback) {
            PatternName::HolsteinReference => PatternKind::HolsteinReference,
            PatternName::Crossed => PatternKind::Crossed,
            PatternName::BipartiteParallel => PatternKind::BipartiteParallel,
            PatternName::OffsetParallel => PatternKind::OffsetParallel { b: self.b_over_a_prime * a * SQRT_2 },
        };
        SpotPattern::new(kind, a, self.w_ph, self.d, v0_ph).with_rotation(self.rotation_deg.to_radians())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RydbergSection {
    /// Unset means each subcommand picks its own default.
    pub n_ryd: Option<u32>,
    pub alpha_bar: f64,
    /// µm; defaults to 0.1a.
    pub r_c: Option<f64>,
    pub eta: u32,
    /// MHz·µm^η; overrides the built-in table.
    pub c6: Option<f64>,
}

impl Default for RydbergSection {
    fn default() -> Self {
        Self { n_ryd: None, alpha_bar: 0.05, r_c: None, eta: 6, c6: None }
    }
}

impl RydbergSection {
    pub fn spec(&self, fallback_n: u32, a: f64) -> RydbergSpec {
        let n = self.n_ryd.unwrap_or(fallback_n);
        let c6 = self.c6.unwrap_or_else(|| c6_table(n).c6);
        let r_c = self.r_c.unwrap_or(DEFAULT_RC_OVER_A * a);
        RydbergSpec::from_cutoff(n, c6, self.alpha_bar, self.eta, r_c)
    }
}

/// With only `a_s0` set, the scattering length is `a_s0`. Setting the
/// resonance parameters evaluates the Feshbach form at field `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeshbachSection {
    /// Bohr radii.
    pub a_s0: f64,
    pub delta_b: Option<f64>,
    pub b_res: Option<f64>,
    pub gamma: Option<f64>,
    pub b: Option<f64>,
}

impl Default for FeshbachSection {
    fn default() -> Self {
        Self { a_s0: DEFAULT_A_S0, delta_b: None, b_res: None, gamma: None, b: None }
    }
}

impl FeshbachSection {
    fn resonance(&self) -> Option<FeshbachSpec> {
        Some(FeshbachSpec {
            a_s0: self.a_s0,
            delta_b: self.delta_b?,
            b_res: self.b_res?,
            gamma_res: self.gamma?,
            b: self.b?,
        })
    }

    /// Scattering length in Bohr radii.
    pub fn a_s(&self) -> f64 {
        self.resonance().map_or(self.a_s0, |s| hubbard_params::scattering_length(&s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StarkSection {
    pub species: Vec<String>,
    /// nm.
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub step: f64,
    pub g_f: f64,
    pub m_f: f64,
    pub ellipticity: f64,
    /// nK.
    pub prefactor: f64,
    pub model: StarkModel,
}

impl Default for StarkSection {
    fn default() -> Self {
        Self {
            species: vec!["K40".into(), "Rb87".into()],
            lambda_min: 760.0,
            lambda_max: 800.0,
            step: 0.05,
            g_f: 0.0,
            m_f: 0.0,
            ellipticity: 0.0,
            prefactor: 1.0,
            model: StarkModel::default(),
        }
    }
}

impl StarkSection {
    pub fn atoms(&self) -> Vec<AtomLineData> {
        self.species.iter().filter_map(|s| AtomLineData::builtin(s)).collect()
    }

    pub fn stark_config(&self) -> StarkConfig {
        StarkConfig {
            g_f: self.g_f,
            m_f: self.m_f,
            ellipticity: self.ellipticity,
            intensity_prefactor: self.prefactor,
            model: self.model,
        }
    }

    pub fn wavelengths(&self) -> Vec<f64> {
        let n = ((self.lambda_max - self.lambda_min) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.lambda_min + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhononSection {
    /// Half-width of the cross-sections, µm.
    pub extent: f64,
    pub points: usize,
}

impl Default for PhononSection {
    fn default() -> Self {
        Self { extent: 1.0, points: 201 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhiMapSection {
    /// Largest |dx|, |dy| in the map.
    pub range: i64,
    /// b/a′ sweep.
    pub b_min: f64,
    pub b_max: f64,
    pub b_points: usize,
}

impl Default for PhiMapSection {
    fn default() -> Self {
        Self { range: 3, b_min: 0.2, b_max: 0.5, b_points: 13 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsSection {
    /// nK.
    pub v0_min: f64,
    pub v0_max: f64,
    pub v0_points: usize,
    pub n_ryd: Vec<u32>,
}

impl Default for ParamsSection {
    fn default() -> Self {
        Self { v0_min: 100.0, v0_max: 1000.0, v0_points: 91, n_ryd: vec![27, 32] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BindingSection {
    pub t_prime: f64,
    /// Single-diagonal threshold sweep in V, units of t'.
    pub v_min: f64,
    pub v_max: f64,
    pub v_points: usize,
    /// Physical-case sweep in λ.
    pub lambda_max: f64,
    pub lambda_points: usize,
    /// Per-pattern Feshbach threshold sweep in λ.
    pub main_lambda_max: f64,
    pub main_lambda_points: usize,
    /// ħω_ph/t used to renormalize the hopping in the per-pattern sweep.
    pub omega_over_t: f64,
}

impl Default for BindingSection {
    fn default() -> Self {
        Self {
            t_prime: 1.0,
            v_min: -10.0,
            v_max: 10.0,
            v_points: 401,
            lambda_max: 2.0,
            lambda_points: 201,
            main_lambda_max: 20.0,
            main_lambda_points: 201,
            omega_over_t: 18.52,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PairSection {
    pub model: ModelName,
    pub t_prime: f64,
    /// V for the single-diagonal model, V1 for both diagonals.
    pub v: f64,
    pub v2: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub u_points: usize,
    /// Points per segment of the Γ–X–M–Γ path.
    pub k_points: usize,
    /// U used for the dispersion table.
    pub u_dispersion: f64,
}

impl Default for PairSection {
    fn default() -> Self {
        Self {
            model: ModelName::SingleDiagonal,
            t_prime: 1.0,
            v: -8.0,
            v2: 0.0,
            u_min: -20.0,
            u_max: 4.0,
            u_points: 241,
            k_points: 41,
            u_dispersion: -8.0,
        }
    }
}

impl PairSection {
    pub fn model(&self, u: f64) -> UvModel {
        build_model(self.model, u, self.v, self.v2, self.t_prime)
    }
}

pub fn build_model(name: ModelName, u: f64, v: f64, v2: f64, t_prime: f64) -> UvModel {
    match name {
        ModelName::SingleDiagonal => UvModel::single_diagonal(u, v, t_prime),
        ModelName::BothDiagonals => UvModel::both_diagonals(u, v, v2, t_prime),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleSection {
    pub model: ModelName,
    pub u: f64,
    pub v: f64,
    pub v2: f64,
    pub t_prime: f64,
    pub sizes: Vec<usize>,
    pub n_states: usize,
    /// Also solve the determinant equation and report the difference.
    pub compare: bool,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self {
            model: ModelName::SingleDiagonal,
            u: -8.0,
            v: -8.0,
            v2: 0.0,
            t_prime: 1.0,
            sizes: vec![16, 24, 32],
            n_states: 3,
            compare: true,
        }
    }
}

impl OracleSection {
    pub fn model(&self) -> UvModel {
        build_model(self.model, self.u, self.v, self.v2, self.t_prime)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhaseSection {
    /// nK.
    pub v0_min: f64,
    pub v0_max: f64,
    pub v0_points: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_points: usize,
    /// nK.
    pub temperature: f64,
    /// Pairs per site.
    pub n_b: f64,
    /// Fixed ħω_ph/t.
    pub omega_over_t: f64,
    /// Use the trap frequency instead of `omega_over_t`.
    pub omega_from_geometry: bool,
    pub variant: VariantName,
}

impl Default for PhaseSection {
    fn default() -> Self {
        Self {
            v0_min: 100.0,
            v0_max: 600.0,
            v0_points: 21,
            lambda_min: 0.0,
            lambda_max: 5.0,
            lambda_points: 41,
            temperature: 20.0,
            n_b: DEFAULT_PAIR_DENSITY,
            omega_over_t: 18.52,
            omega_from_geometry: false,
            variant: VariantName::MainText,
        }
    }
}

/// `n` evenly spaced points from `lo` to `hi`; a single point sits at `lo`.
pub fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

struct Violations(Vec<String>);

impl Violations {
    fn check(&mut self, ok: bool, key: &str, msg: impl std::fmt::Display) {
        if !ok {
            self.0.push(format!("{key}: {msg}"));
        }
    }

    fn positive(&mut self, key: &str, x: f64) {
        self.check(x > 0.0 && x.is_finite(), key, format_args!("must be positive and finite, got {x}"));
    }

    fn finite(&mut self, key: &str, x: f64) {
        self.check(x.is_finite(), key, format_args!("must be finite, got {x}"));
    }

    fn range(&mut self, key: &str, lo: f64, hi: f64, n: usize) {
        self.check(lo.is_finite() && hi.is_finite(), key, format_args!("range [{lo}, {hi}] must be finite"));
        self.check(n >= 1, key, "needs at least one point");
        self.check(n <= 1 || lo < hi, key, format_args!("range [{lo}, {hi}] is empty"));
    }
}

impl RunConfig {
    /// Fill the defaults that depend on other fields.
    pub fn apply_defaults(&mut self) {
        if self.rydberg.r_c.is_none() && self.lattice.a > 0.0 {
            self.rydberg.r_c = Some(DEFAULT_RC_OVER_A * self.lattice.a);
        }
    }

    /// All violations at once.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut v = Violations(Vec::new());
        if let Some(s) = &self.subcommand {
            v.check(SUBCOMMANDS.contains(&s.as_str()), "subcommand", format_args!("unknown subcommand {s:?}"));
        }

        let l = &self.lattice;
        for (k, x) in [
            ("lattice.a", l.a),
            ("lattice.v0_pan", l.v0_pan),
            ("lattice.w_pan", l.w_pan),
            ("lattice.w_f", l.w_f),
            ("lattice.v0", l.v0),
        ] {
            v.positive(k, x);
        }

        let p = &self.pattern;
        v.positive("pattern.w_ph", p.w_ph);
        v.positive("pattern.v0_ph", p.v0_ph);
        v.positive("pattern.v0_ph_ratio", p.v0_ph_ratio);
        v.finite("pattern.rotation_deg", p.rotation_deg);
        v.check(p.d >= 0.0 && p.d <= 0.5 * p.w_ph, "pattern.d", format_args!("must lie in [0, w_ph/2], got {}", p.d));
        v.check(
            p.b_over_a_prime > 0.0 && p.b_over_a_prime < 1.0,
            "pattern.b_over_a_prime",
            format_args!("must lie in (0, 1), got {}", p.b_over_a_prime),
        );

        let r = &self.rydberg;
        v.check(
            r.alpha_bar > 0.0 && r.alpha_bar <= 0.2,
            "rydberg.alpha_bar",
            format_args!("must lie in (0, 0.2], got {}", r.alpha_bar),
        );
        v.check(r.eta == 3 || r.eta == 6, "rydberg.eta", format_args!("must be 3 or 6, got {}", r.eta));
        if let Some(rc) = r.r_c {
            v.positive("rydberg.r_c", rc);
        }
        if let Some(c6) = r.c6 {
            v.positive("rydberg.c6", c6);
        }
        if let Some(n) = r.n_ryd {
            v.check(n >= 1, "rydberg.n_ryd", "must be at least 1");
        }

        let f = &self.feshbach;
        v.finite("feshbach.a_s0", f.a_s0);
        let set = [f.delta_b, f.b_res, f.gamma, f.b].iter().filter(|x| x.is_some()).count();
        v.check(set == 0 || set == 4, "feshbach", "delta_b, b_res, gamma and b must be given together");

        let s = &self.stark;
        v.check(!s.species.is_empty(), "stark.species", "needs at least one species");
        for name in &s.species {
            v.check(
                AtomLineData::builtin(name).is_some(),
                "stark.species",
                format_args!("unknown species {name:?} (built-in: K40, Rb87)"),
            );
        }
        v.range("stark.lambda", s.lambda_min, s.lambda_max, 2);
        v.positive("stark.lambda_min", s.lambda_min);
        v.positive("stark.step", s.step);
        v.check(
            s.ellipticity.abs() <= 1.0,
            "stark.ellipticity",
            format_args!("must lie in [-1, 1], got {}", s.ellipticity),
        );
        v.check(s.prefactor >= 0.0, "stark.prefactor", format_args!("must be non-negative, got {}", s.prefactor));
        v.finite("stark.g_f", s.g_f);
        v.finite("stark.m_f", s.m_f);

        v.positive("phonon.extent", self.phonon.extent);
        v.check(self.phonon.points >= 2, "phonon.points", "needs at least two points");

        let m = &self.phi_map;
        v.check(m.range >= 1 && m.range <= 10, "phi_map.range", format_args!("must lie in [1, 10], got {}", m.range));
        v.range("phi_map.b", m.b_min, m.b_max, m.b_points);
        v.check(m.b_min > 0.0 && m.b_max < 1.0, "phi_map.b", "b/a′ must lie in (0, 1)");

        let pa = &self.params;
        v.range("params.v0", pa.v0_min, pa.v0_max, pa.v0_points);
        v.positive("params.v0_min", pa.v0_min);
        v.check(!pa.n_ryd.is_empty(), "params.n_ryd", "needs at least one value");

        let b = &self.binding;
        v.positive("binding.t_prime", b.t_prime);
        v.range("binding.v", b.v_min, b.v_max, b.v_points);
        v.range("binding.lambda", 0.0, b.lambda_max, b.lambda_points);
        v.range("binding.main_lambda", 0.0, b.main_lambda_max, b.main_lambda_points);
        v.positive("binding.omega_over_t", b.omega_over_t);

        let pr = &self.pair;
        v.positive("pair.t_prime", pr.t_prime);
        v.range("pair.u", pr.u_min, pr.u_max, pr.u_points);
        v.finite("pair.v", pr.v);
        v.finite("pair.v2", pr.v2);
        v.finite("pair.u_dispersion", pr.u_dispersion);
        v.check(pr.k_points >= 2, "pair.k_points", "needs at least two points per segment");

        let o = &self.oracle;
        v.positive("oracle.t_prime", o.t_prime);
        for (k, x) in [("oracle.u", o.u), ("oracle.v", o.v), ("oracle.v2", o.v2)] {
            v.finite(k, x);
        }
        v.check(!o.sizes.is_empty(), "oracle.sizes", "needs at least one lattice size");
        for &l in &o.sizes {
            v.check(l >= 8 && l % 2 == 0, "oracle.sizes", format_args!("size {l} must be even and at least 8"));
        }
        v.check(o.n_states >= 1, "oracle.n_states", "must be at least 1");

        let ph = &self.phase;
        v.range("phase.v0", ph.v0_min, ph.v0_max, ph.v0_points);
        v.positive("phase.v0_min", ph.v0_min);
        v.range("phase.lambda", ph.lambda_min, ph.lambda_max, ph.lambda_points);
        v.check(ph.lambda_min >= 0.0, "phase.lambda_min", "must be non-negative");
        v.check(ph.temperature >= 0.0 && ph.temperature.is_finite(), "phase.temperature", "must be non-negative");
        v.check(ph.n_b > 0.0 && ph.n_b < 1.0, "phase.n_b", format_args!("must lie in (0, 1), got {}", ph.n_b));
        v.positive("phase.omega_over_t", ph.omega_over_t);

        if v.0.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(v.0))
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

/// Parse, fill defaults and validate.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg: RunConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
        ConfigError::Parse { line, column, message: e.message().trim().to_string() }
    })?;
    cfg.apply_defaults();
    cfg.validate()?;
    Ok(cfg)
}

/// Defaults with their rationale, for `--explain-defaults`.
pub fn explain_defaults() -> String {
    let d = RunConfig::default();
    let lines = [
        ("lattice.a", format!("{} µm", d.lattice.a), "lattice spacing of the reference simulator design"),
        ("lattice.v0", format!("{} nK", d.lattice.v0), "fermion spot depth where t, U and Wλ are compared"),
        (
            "lattice.v0_pan / w_pan / w_f",
            format!("{} nK / {} µm / {} µm", d.lattice.v0_pan, d.lattice.w_pan, d.lattice.w_f),
            "illustrative trap shape; only cross-sections depend on it",
        ),
        ("rydberg.r_c", "0.1 a".to_string(), "soft-core radius of the dressed interaction maps"),
        (
            "rydberg.alpha_bar",
            format!("{}", d.rydberg.alpha_bar),
            "weak dressing, well inside the perturbative range ᾱ ≤ 0.2",
        ),
        ("rydberg.eta", format!("{}", d.rydberg.eta), "van der Waals interaction"),
        (
            "rydberg.c6",
            "table".to_string(),
            "26.1 MHz·µm⁶ at n = 27 to 153 MHz·µm⁶ at n = 32, geometric in between; extrapolated outside",
        ),
        (
            "rydberg.n_ryd",
            "27 (params, phi-map), 34 (phase)".to_string(),
            "Rydberg levels of the depth sweep and of the phase map",
        ),
        (
            "feshbach.a_s0",
            format!("{} a0", d.feshbach.a_s0),
            "background scattering length used as a_s when no resonance is given",
        ),
        (
            "pattern.w_ph",
            format!("{} µm", d.pattern.w_ph),
            "phonon spot waist (not fixed by the design; chosen so the two-spot mode is soft but stable)",
        ),
        ("pattern.d", format!("{} µm", d.pattern.d), "spot half-separation of the phase-map family"),
        (
            "pattern.v0_ph_ratio",
            format!("{}", d.pattern.v0_ph_ratio),
            "phonon depth relative to the fermion depth in depth sweeps",
        ),
        (
            "pattern.b_over_a_prime",
            format!("{}", d.pattern.b_over_a_prime),
            "offset-parallel pattern offset in units of a√2",
        ),
        (
            "pattern.kind",
            "offset-parallel (params, phonon, phi-map), holstein-reference (phase)".to_string(),
            "pattern used when none is configured",
        ),
        ("phase.temperature", format!("{} nK", d.phase.temperature), "temperature of the phase map"),
        ("phase.n_b", format!("{}", d.phase.n_b), "dilute pair density for the BKT estimate"),
        (
            "phase.omega_over_t",
            format!("{}", d.phase.omega_over_t),
            "fixed phonon energy for the phase-map family; set omega_from_geometry to use the trap value",
        ),
        (
            "stark.model",
            "full-dipole".to_string(),
            "oscillator-strength weighted two-line sum with counter-rotating terms",
        ),
        ("oracle.sizes", format!("{:?}", d.oracle.sizes), "lattice sizes for the L → ∞ extrapolation"),
    ];
    let width = lines.iter().map(|l| l.0.len()).max().unwrap_or(0);
    let vwidth = lines.iter().map(|l| l.1.chars().count()).max().unwrap_or(0);
    let mut out = String::from("Physical defaults:\n");
    for (k, val, why) in lines {
        let pad = vwidth - val.chars().count();
        out.push_str(&format!("  {k:<width$}  {val}{}  {why}\n", " ".repeat(pad)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gets_documented_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c.lattice.a, 1.73);
        assert!((c.rydberg.r_c.unwrap() - 0.173).abs() < 1e-15);
        assert_eq!(c.phase.n_b, 0.01);
        assert_eq!(c.feshbach.a_s(), 90.0);
    }

    #[test]
    fn minimal_config_with_subcommand() {
        let c = parse_config("subcommand = \"phase\"\n").unwrap();
        assert_eq!(c.subcommand.as_deref(), Some("phase"));
        assert_eq!(c.phase, PhaseSection::default());
    }

    #[test]
    fn r_c_follows_lattice_constant() {
        let c = parse_config("[lattice]\na = 2.0\n").unwrap();
        assert_eq!(c.rydberg.r_c, Some(0.2));
        let c = parse_config("[lattice]\na = 2.0\n[rydberg]\nr_c = 0.5\n").unwrap();
        assert_eq!(c.rydberg.r_c, Some(0.5));
    }

    #[test]
    fn parse_error_has_position() {
        match parse_config("[lattice]\na = 1.73\nbogus = 3\n") {
            Err(ConfigError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 1)),
            other => panic!("{other:?}"),
        }
        match parse_config("[phase]\ntemperature = \"hot\"\n") {
            Err(ConfigError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 15)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_violations_are_listed() {
        let text = "[lattice]\na = -1.0\n[phase]\nn_b = 2.0\n[oracle]\nsizes = [7, 16]\n";
        match parse_config(text) {
            Err(ConfigError::Invalid(v)) => {
                assert!(v.iter().any(|s| s.starts_with("lattice.a")));
                assert!(v.iter().any(|s| s.starts_with("phase.n_b")));
                assert!(v.iter().any(|s| s.starts_with("oracle.sizes")));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn feshbach_all_or_nothing() {
        assert!(parse_config("[feshbach]\nb = 200.0\n").is_err());
        let c = parse_config("[feshbach]\ndelta_b = 0.0\nb_res = 200.0\ngamma = 0.0\nb = 201.0\n").unwrap();
        assert_eq!(c.feshbach.a_s(), 90.0);
    }

    #[test]
    fn axis_endpoints() {
        assert_eq!(axis(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert_eq!(axis(4.0, 9.0, 1), vec![4.0]);
    }

    #[test]
    fn explanation_has_no_gaps() {
        let text = explain_defaults();
        assert!(text.contains("lattice.a") && text.contains("1.73 µm"));
        assert!(text.contains("0.1 a"));
    }
}
