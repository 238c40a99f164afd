//! Grid-level checks of the phase diagram.

use hhsim::painted_lattice::{LatticeSpec, PatternKind, SpotPattern};
use hhsim::pair_solver::LfVariant;
use hhsim::parallel::Execution;
use hhsim::phase_diagram::{phase_grid_with, zero_segments, PhaseSpec, DEFAULT_PAIR_DENSITY};
use hhsim::rydberg_coupling::RydbergSpec;

fn spec(omega_over_t: Option<f64>) -> PhaseSpec {
    let lattice = LatticeSpec::default();
    let a = lattice.a;
    PhaseSpec {
        pattern: SpotPattern::new(PatternKind::HolsteinReference, a, 0.57, 0.2823, 1.0),
        rydberg: RydbergSpec::for_n(34, 0.05, 0.1 * a),
        lattice,
        variant: LfVariant::MainText,
        temperature: 20.0,
        n_b: DEFAULT_PAIR_DENSITY,
        v0_ph_ratio: 2.5,
        omega_over_t,
    }
}

fn axes() -> (Vec<f64>, Vec<f64>) {
    ((0..8).map(|i| 150.0 + 50.0 * i as f64).collect(), (0..25).map(|i| 0.125 * i as f64).collect())
}

#[test]
fn parallel_grid_equals_sequential_grid() {
    let (v0, lambda) = axes();
    let s = spec(Some(18.52));
    let a = phase_grid_with(Execution::Sequential, &v0, &lambda, &s).unwrap();
    let b = phase_grid_with(Execution::Parallel, &v0, &lambda, &s).unwrap();
    assert_eq!(a, b);
}

#[test]
fn pair_temperature_monotone_and_contour_on_sign_changes() {
    let (v0, lambda) = axes();
    for omega in [Some(18.52), None] {
        let g = phase_grid_with(Execution::default(), &v0, &lambda, &spec(omega)).unwrap();
        for row in &g.points {
            assert!(row.windows(2).all(|w| w[1].t_pair >= w[0].t_pair));
            assert!(row.iter().all(|p| p.t_bkt > 0.0 && p.label.is_some()));
        }
        let delta: Vec<Vec<f64>> = g.points.iter().map(|r| r.iter().map(|p| p.delta_t()).collect()).collect();
        let segments = zero_segments(&v0, &lambda, &delta);
        assert!(!segments.is_empty());
        for seg in segments {
            for edge in seg {
                let [(i0, j0), (i1, j1)] = edge.corners();
                assert_ne!(delta[i0][j0] >= 0.0, delta[i1][j1] >= 0.0);
            }
        }
        let vertices: usize = g.contour.iter().map(Vec::len).sum();
        assert!(vertices >= 2);
    }
}

#[test]
fn geometric_frequency_is_reported() {
    let g = phase_grid_with(Execution::Sequential, &[300.0], &[1.0], &spec(None)).unwrap();
    let p = &g.points[0][0];
    assert!(p.omega_over_t_geometry.is_finite() && p.omega_over_t_geometry > 0.0);
}

#[test]
fn bad_points_are_marked_not_fatal() {
    let g = phase_grid_with(Execution::Sequential, &[-50.0, 300.0], &[0.5, 1.0], &spec(Some(18.52))).unwrap();
    assert!(g.points[0].iter().all(|p| p.error.is_some() && p.label.is_none()));
    assert!(g.points[1].iter().all(|p| p.error.is_none() && p.label.is_some()));
}
