//! One function per subcommand. Each returns the artifacts it produced and
//! leaves writing to the caller.

mod figures;
mod optics;
mod pairs;
mod phase;

use hhsim::parallel::Execution;

use crate::args::Command;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::Artifact;

pub use figures::figures;
pub use optics::{params, phi_map, phonon, stark};
pub use pairs::{binding, oracle, pair};
pub use phase::phase;

/// Build a table row from mixed values.
macro_rules! row {
    ($($x:expr),* $(,)?) => {
        vec![$($crate::output::Cell::from($x)),*]
    };
}
pub(crate) use row;

/// Artifacts grouped by output subdirectory (`None` is the root).
pub type Bundle = Vec<(Option<String>, Vec<Artifact>)>;

pub fn execute(cmd: &Command, cfg: &RunConfig) -> CliResult<Bundle> {
    let exec = Execution::default();
    let flat = |a: CliResult<Vec<Artifact>>| a.map(|a| vec![(None, a)]);
    match cmd {
        Command::Stark(_) => flat(stark(cfg)),
        Command::Phonon(_) => flat(phonon(cfg)),
        Command::PhiMap(_) => flat(phi_map(cfg, exec)),
        Command::Params(_) => flat(params(cfg, exec)),
        Command::Binding(_) => flat(binding(cfg, exec)),
        Command::Pair(_) => flat(pair(cfg, exec)),
        Command::Oracle(_) => flat(oracle(cfg, exec)),
        Command::Phase(_) => flat(phase(cfg, exec)),
        Command::Figures(a) => figures(a.target, cfg, exec),
    }
}

/// Contiguous runs where `den` keeps one sign; a sign change marks a pole.
pub(crate) fn branch_indices(den: &[f64]) -> Vec<usize> {
    let mut branch = 0;
    let mut out = Vec::with_capacity(den.len());
    for (i, d) in den.iter().enumerate() {
        if i > 0 && d.signum() != den[i - 1].signum() && d.is_finite() && den[i - 1].is_finite() {
            branch += 1;
        }
        out.push(branch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches_split_at_sign_changes() {
        assert_eq!(branch_indices(&[1.0, 0.5, -0.1, -2.0, 3.0]), vec![0, 0, 1, 1, 2]);
        assert!(branch_indices(&[]).is_empty());
    }
}
