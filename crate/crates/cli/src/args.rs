//! Command-line surface. Subcommand flags override the matching config keys.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{ModelName, PatternName, RunConfig, VariantName};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "hhsim", version, about = "Cold-atom Hubbard–Holstein simulator design toolkit")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "hhsim-out")]
    pub out: PathBuf,
    /// Table format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Print the physical defaults with their rationale and exit.
    #[arg(long, global = true)]
    pub explain_defaults: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Light shifts of each species against wavelength and their zero crossings.
    Stark(StarkArgs),
    /// Phonon-trap cross-sections and normal modes.
    Phonon(PhononArgs),
    /// Effective interaction map and the NNN ratio against spot offset.
    PhiMap(PhiMapArgs),
    /// Hopping, Hubbard U and Wλ against lattice depth.
    Params(ParamsArgs),
    /// Binding thresholds.
    Binding(BindingArgs),
    /// Pair energies against U and the strong-coupling dispersion.
    Pair(PairArgs),
    /// Exact diagonalization of the two-body problem.
    Oracle(OracleArgs),
    /// Pairing and BKT temperatures over a (V0, λ) grid.
    Phase(PhaseArgs),
    /// Data bundles for the reference figures.
    Figures(FiguresArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stark(_) => "stark",
            Command::Phonon(_) => "phonon",
            Command::PhiMap(_) => "phi-map",
            Command::Params(_) => "params",
            Command::Binding(_) => "binding",
            Command::Pair(_) => "pair",
            Command::Oracle(_) => "oracle",
            Command::Phase(_) => "phase",
            Command::Figures(_) => "figures",
        }
    }

    /// The command named in a config file, with no flag overrides.
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "stark" => Command::Stark(StarkArgs::default()),
            "phonon" => Command::Phonon(PhononArgs::default()),
            "phi-map" => Command::PhiMap(PhiMapArgs::default()),
            "params" => Command::Params(ParamsArgs::default()),
            "binding" => Command::Binding(BindingArgs::default()),
            "pair" => Command::Pair(PairArgs::default()),
            "oracle" => Command::Oracle(OracleArgs::default()),
            "phase" => Command::Phase(PhaseArgs::default()),
            "figures" => Command::Figures(FiguresArgs { target: FigureTarget::All }),
            _ => return None,
        })
    }

    /// Write flag values into the config.
    pub fn apply(&self, c: &mut RunConfig) {
        fn set<T: Clone>(dst: &mut T, src: &Option<T>) {
            if let Some(v) = src {
                *dst = v.clone();
            }
        }
        match self {
            Command::Stark(a) => {
                if !a.species.is_empty() {
                    c.stark.species = a.species.clone();
                }
                set(&mut c.stark.lambda_min, &a.lambda_min);
                set(&mut c.stark.lambda_max, &a.lambda_max);
                set(&mut c.stark.step, &a.step);
                set(&mut c.stark.g_f, &a.g_f);
                set(&mut c.stark.m_f, &a.m_f);
                set(&mut c.stark.ellipticity, &a.ellipticity);
                set(&mut c.stark.prefactor, &a.prefactor);
            }
            Command::Phonon(a) => {
                a.pattern.apply(c);
                set(&mut c.phonon.extent, &a.extent);
                set(&mut c.phonon.points, &a.points);
            }
            Command::PhiMap(a) => {
                a.pattern.apply(c);
                if a.n_ryd.is_some() {
                    c.rydberg.n_ryd = a.n_ryd;
                }
                set(&mut c.phi_map.range, &a.range);
            }
            Command::Params(a) => {
                a.pattern.apply(c);
                set(&mut c.params.v0_min, &a.v0_min);
                set(&mut c.params.v0_max, &a.v0_max);
                set(&mut c.params.v0_points, &a.v0_points);
                if !a.n_ryd.is_empty() {
                    c.params.n_ryd = a.n_ryd.clone();
                }
            }
            Command::Binding(a) => {
                set(&mut c.binding.t_prime, &a.t_prime);
                set(&mut c.binding.lambda_max, &a.lambda_max);
                set(&mut c.binding.omega_over_t, &a.omega_over_t);
            }
            Command::Pair(a) => {
                set(&mut c.pair.model, &a.model);
                set(&mut c.pair.t_prime, &a.t_prime);
                set(&mut c.pair.v, &a.v);
                set(&mut c.pair.v2, &a.v2);
                set(&mut c.pair.u_min, &a.u_min);
                set(&mut c.pair.u_max, &a.u_max);
                set(&mut c.pair.u_points, &a.u_points);
                set(&mut c.pair.u_dispersion, &a.u_dispersion);
            }
            Command::Oracle(a) => {
                set(&mut c.oracle.model, &a.model);
                set(&mut c.oracle.u, &a.u);
                set(&mut c.oracle.v, &a.v);
                set(&mut c.oracle.v2, &a.v2);
                set(&mut c.oracle.t_prime, &a.t_prime);
                if !a.sizes.is_empty() {
                    c.oracle.sizes = a.sizes.clone();
                }
                set(&mut c.oracle.n_states, &a.n_states);
                if a.no_compare {
                    c.oracle.compare = false;
                }
            }
            Command::Phase(a) => {
                a.pattern.apply(c);
                set(&mut c.phase.temperature, &a.temperature);
                set(&mut c.phase.v0_min, &a.v0_min);
                set(&mut c.phase.v0_max, &a.v0_max);
                set(&mut c.phase.v0_points, &a.v0_points);
                set(&mut c.phase.lambda_min, &a.lambda_min);
                set(&mut c.phase.lambda_max, &a.lambda_max);
                set(&mut c.phase.lambda_points, &a.lambda_points);
                set(&mut c.phase.n_b, &a.n_b);
                set(&mut c.phase.omega_over_t, &a.omega_over_t);
                set(&mut c.phase.variant, &a.variant);
                if a.omega_from_geometry {
                    c.phase.omega_from_geometry = true;
                }
                if a.n_ryd.is_some() {
                    c.rydberg.n_ryd = a.n_ryd;
                }
            }
            Command::Figures(_) => {}
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct PatternArgs {
    /// Phonon spot pattern.
    #[arg(long, value_enum)]
    pub pattern: Option<PatternName>,
    /// Offset of an offset-parallel pattern, units of a√2.
    #[arg(long)]
    pub b_over_a_prime: Option<f64>,
    /// Phonon spot waist, µm.
    #[arg(long)]
    pub w_ph: Option<f64>,
    /// Spot half-separation, µm.
    #[arg(long)]
    pub d: Option<f64>,
    /// Phonon site depth, nK.
    #[arg(long)]
    pub v0_ph: Option<f64>,
}

impl PatternArgs {
    fn apply(&self, c: &mut RunConfig) {
        if self.pattern.is_some() {
            c.pattern.kind = self.pattern;
        }
        if let Some(x) = self.b_over_a_prime {
            c.pattern.b_over_a_prime = x;
        }
        if let Some(x) = self.w_ph {
            c.pattern.w_ph = x;
        }
        if let Some(x) = self.d {
            c.pattern.d = x;
        }
        if let Some(x) = self.v0_ph {
            c.pattern.v0_ph = x;
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct StarkArgs {
    /// Species (K40, Rb87); repeat for several.
    #[arg(long = "species")]
    pub species: Vec<String>,
    /// nm.
    #[arg(long)]
    pub lambda_min: Option<f64>,
    /// nm.
    #[arg(long)]
    pub lambda_max: Option<f64>,
    /// nm.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub g_f: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m_f: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ellipticity: Option<f64>,
    /// Intensity prefactor, nK.
    #[arg(long)]
    pub prefactor: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PhononArgs {
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// Half-width of the cross-sections, µm.
    #[arg(long)]
    pub extent: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PhiMapArgs {
    #[command(flatten)]
    pub pattern: PatternArgs,
    #[arg(long)]
    pub n_ryd: Option<u32>,
    /// Largest |dx|, |dy| of the map.
    #[arg(long)]
    pub range: Option<i64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// nK.
    #[arg(long)]
    pub v0_min: Option<f64>,
    /// nK.
    #[arg(long)]
    pub v0_max: Option<f64>,
    #[arg(long)]
    pub v0_points: Option<usize>,
    /// Rydberg level; repeat for several.
    #[arg(long = "n-ryd")]
    pub n_ryd: Vec<u32>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct BindingArgs {
    #[arg(long)]
    pub t_prime: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub omega_over_t: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct PairArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    #[arg(long)]
    pub t_prime: Option<f64>,
    /// V, or V1 for both diagonals.
    #[arg(long)]
    pub v: Option<f64>,
    #[arg(long)]
    pub v2: Option<f64>,
    #[arg(long)]
    pub u_min: Option<f64>,
    #[arg(long)]
    pub u_max: Option<f64>,
    #[arg(long)]
    pub u_points: Option<usize>,
    #[arg(long)]
    pub u_dispersion: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long)]
    pub v: Option<f64>,
    #[arg(long)]
    pub v2: Option<f64>,
    #[arg(long)]
    pub t_prime: Option<f64>,
    /// Lattice sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub n_states: Option<usize>,
    /// Skip the determinant comparison.
    #[arg(long)]
    pub no_compare: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// nK.
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub v0_min: Option<f64>,
    #[arg(long)]
    pub v0_max: Option<f64>,
    #[arg(long)]
    pub v0_points: Option<usize>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub lambda_points: Option<usize>,
    /// Pairs per site.
    #[arg(long)]
    pub n_b: Option<f64>,
    /// Fixed ħω_ph/t.
    #[arg(long)]
    pub omega_over_t: Option<f64>,
    /// Use the trap frequency instead of a fixed ħω_ph/t.
    #[arg(long)]
    pub omega_from_geometry: bool,
    #[arg(long, value_enum)]
    pub variant: Option<VariantName>,
    #[arg(long)]
    pub n_ryd: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureTarget {
    All,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Appendix,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    #[arg(value_enum, default_value = "all")]
    pub target: FigureTarget,
}
