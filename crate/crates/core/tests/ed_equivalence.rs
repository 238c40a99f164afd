//! The reduced-sector ED against a dense diagonalization of the full
//! relative-coordinate Hamiltonian and against the determinant roots.

use nalgebra::{DMatrix, SymmetricEigen};

use hhsim::ed_oracle::{
    brute_force_k0_spectrum, extrapolate_energy, ground_energies, potential, relative_hamiltonian, FiniteLattice,
    Sector,
};
use hhsim::pair_solver::{pair_energies, UvModel};

/// All L² relative positions, hopping −2t' to each neighbour.
fn dense_spectrum(model: &UvModel, l: usize) -> Vec<f64> {
    let n = l * l;
    let min_image = |c: usize| {
        let c = c as i64;
        let l = l as i64;
        if c > l / 2 {
            c - l
        } else {
            c
        }
    };
    let mut h = DMatrix::<f64>::zeros(n, n);
    for y in 0..l {
        for x in 0..l {
            let i = x + l * y;
            h[(i, i)] += potential(model, min_image(x), min_image(y));
            for (dx, dy) in [(1, 0), (l - 1, 0), (0, 1), (0, l - 1)] {
                let j = (x + dx) % l + l * ((y + dy) % l);
                h[(i, j)] += -2.0 * model.t_prime;
            }
        }
    }
    let mut e: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

fn models() -> Vec<(UvModel, Sector)> {
    vec![
        (UvModel::single_diagonal(-3.0, -1.5, 1.0), Sector::Symmetric),
        (UvModel::single_diagonal(4.0, -6.0, 0.7), Sector::Symmetric),
        (UvModel::both_diagonals(-5.0, 1.0, -0.5, 1.0), Sector::FullySymmetric),
        (UvModel::both_diagonals(-5.0, 1.0, -0.5, 1.0), Sector::Symmetric),
        (UvModel::both_diagonals(2.0, -3.0, -1.0, 1.3), Sector::FullySymmetric),
    ]
}

#[test]
fn sector_ground_state_is_global_ground_state() {
    for (model, sector) in models() {
        for l in [8, 10] {
            let dense = dense_spectrum(&model, l);
            let ed = ground_energies(&model, FiniteLattice::new(l).unwrap(), 2, sector).unwrap();
            assert!((ed.energies[0] - dense[0]).abs() < 1e-9, "{model:?} L={l}: {} vs {}", ed.energies[0], dense[0]);
        }
    }
}

#[test]
fn sector_spectrum_is_subset_of_full_spectrum() {
    for (model, sector) in models() {
        let l = 8;
        let dense = dense_spectrum(&model, l);
        let h = relative_hamiltonian(&model, FiniteLattice::new(l).unwrap(), sector).unwrap();
        let reduced = SymmetricEigen::new(DMatrix::from_fn(h.dim, h.dim, |i, j| h.get(i, j))).eigenvalues;
        for e in reduced.iter() {
            let nearest = dense.iter().map(|d| (d - e).abs()).fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-9, "{model:?}: sector eigenvalue {e} missing from full spectrum");
        }
    }
}

#[test]
fn brute_force_matches_dense_relative_problem() {
    // On an L×L torus the K = 0 block of the two-particle problem is the
    // relative problem with the same L.
    let model = UvModel::single_diagonal(-4.0, -2.0, 1.0);
    for l in [4, 6] {
        let bf = brute_force_k0_spectrum(&model, l, Sector::Symmetric).unwrap();
        let dense = dense_spectrum(&model, l);
        assert!((bf[0] - dense[0]).abs() < 1e-9, "L={l}: {} vs {}", bf[0], dense[0]);
    }
}

#[test]
fn extrapolated_ed_matches_roots() {
    let sizes = [16, 24, 32];
    for (model, sector) in [
        (UvModel::single_diagonal(-4.0, -2.0, 1.0), Sector::Symmetric),
        (UvModel::both_diagonals(-6.0, -1.0, 0.5, 1.0), Sector::FullySymmetric),
    ] {
        let roots = pair_energies(&model).unwrap();
        let e: Vec<f64> = sizes
            .iter()
            .map(|&l| ground_energies(&model, FiniteLattice::new(l).unwrap(), 1, sector).unwrap().energies[0])
            .collect();
        let x = extrapolate_energy(&sizes, &e, 1.0).unwrap();
        assert!((x.e_inf - roots[0].energy).abs() < 1e-3, "{model:?}: {} vs {}", x.e_inf, roots[0].energy);
    }
}
