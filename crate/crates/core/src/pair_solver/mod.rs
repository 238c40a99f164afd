//! Two-body problem of the effective UV models.
//!
//! - [`greens`]: lattice Green's integrals M_nl, C_nl.
//! - [`determinant`]: bound-state energies at K = 0 and binding thresholds.
//! - [`lang_firsov`]: Hubbard–Holstein to UV parameter maps.
//! - [`strong_coupling`]: trial-state pair dispersion and pair mass.

pub mod determinant;
pub mod greens;
pub mod lang_firsov;
pub mod strong_coupling;

pub use determinant::{
    binding_condition_full, long_form_a, pair_energies, pair_energies_diagonal, pair_energies_full, pair_energy_sweep,
    threshold_diagonal, threshold_full, BindingThreshold, PairState, ThresholdRegime, UvModel, UvVariant,
};
pub use greens::{gamma_constants, greens_c, greens_c_threshold, greens_m, GreensIntegrals};
pub use lang_firsov::{
    fesh_threshold_main, fesh_threshold_main_nnn, lf_map, physical_pole, threshold_physical, LfParams, LfVariant,
    PhysicalThreshold,
};
pub use strong_coupling::{
    inverse_pair_mass, main_text_pair_mass, pair_dispersion_strong_coupling, pair_mass_kg, secular_eigenvalues,
    StrongBranch, StrongPairState,
};
