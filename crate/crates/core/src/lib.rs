//! Design and analysis numerics for a two-species cold-atom
//! Hubbard–Holstein quantum simulator.
//!
//! The crate follows the simulator from the optics down to the phase map:
//!
//! * [`stark_potentials`]: species-selective AC Stark trap potentials and their zero crossings.
//! * [`painted_lattice`]: painted Gaussian spot patterns, dynamical matrices and phonon modes.
//! * [`rydberg_coupling`]: dressed Rydberg potential, fermion–phonon couplings, the Φ map and λ.
//! * [`hubbard_params`]: recoil energy, hopping, Feshbach scattering length and Hubbard U.
//! * [`pair_solver`]: lattice Green's integrals, two-body determinant equations, binding
//!   thresholds, Lang–Firsov maps and the strong-coupling pair mass.
//! * [`ed_oracle`]: exact diagonalization of the two-body problem, used to cross-check
//!   [`pair_solver`].
//! * [`phase_diagram`]: pairing and BKT temperatures and the labelled phase grid.
//!
//! Sweeps run through [`parallel`], which uses rayon when the `parallel`
//! feature is enabled (the default) and plain iteration otherwise.

// Negated comparisons are NaN guards; index loops mirror the matrix algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod ed_oracle;
pub mod error;
pub mod hubbard_params;
pub mod painted_lattice;
pub mod pair_solver;
pub mod parallel;
pub mod phase_diagram;
pub mod quadrature;
pub mod roots;
pub mod rydberg_coupling;
pub mod special;
pub mod stark_potentials;
pub mod units;

pub use error::{Error, Result};
