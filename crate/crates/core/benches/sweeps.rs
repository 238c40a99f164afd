//! Sequential against parallel execution of the main sweeps.

use std::f64::consts::SQRT_2;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hhsim::ed_oracle::{ground_energy_sweep, Sector};
use hhsim::painted_lattice::{LatticeSpec, PatternKind, SpotPattern};
use hhsim::pair_solver::{pair_energy_sweep, LfVariant, UvModel};
use hhsim::parallel::Execution;
use hhsim::phase_diagram::{phase_grid_with, PhaseSpec, DEFAULT_PAIR_DENSITY};
use hhsim::rydberg_coupling::{effective_interaction_with, RydbergSpec};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn pair_sweep(c: &mut Criterion) {
    let models: Vec<UvModel> =
        (0..64).map(|i| UvModel::both_diagonals(-12.0 + 0.2 * i as f64, -1.0, 0.5, 1.0)).collect();
    let mut g = c.benchmark_group("pair_energy_sweep");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| pair_energy_sweep(exec, black_box(&models))));
    }
    g.finish();
}

fn phi_map(c: &mut Criterion) {
    let a = 1.73;
    let pattern = SpotPattern::new(PatternKind::OffsetParallel { b: 0.4 * a * SQRT_2 }, a, 0.57, 0.2823, 1000.0);
    let spec = RydbergSpec::for_n(27, 0.05, 0.1 * a);
    let mut g = c.benchmark_group("phi_map");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| effective_interaction_with(exec, black_box(&pattern), &spec, a, 3))
        });
    }
    g.finish();
}

fn ed_sweep(c: &mut Criterion) {
    let model = UvModel::single_diagonal(-2.0, -1.0, 1.0);
    let sizes = [16, 24, 32, 40];
    let mut g = c.benchmark_group("ed_sweep");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| ground_energy_sweep(exec, black_box(&model), &sizes, 2, Sector::Symmetric))
        });
    }
    g.finish();
}

fn phase(c: &mut Criterion) {
    let lattice = LatticeSpec::default();
    let a = lattice.a;
    let spec = PhaseSpec {
        pattern: SpotPattern::new(PatternKind::HolsteinReference, a, 0.57, 0.2823, 1.0),
        rydberg: RydbergSpec::for_n(34, 0.05, 0.1 * a),
        lattice,
        variant: LfVariant::MainText,
        temperature: 20.0,
        n_b: DEFAULT_PAIR_DENSITY,
        v0_ph_ratio: 2.5,
        omega_over_t: None,
    };
    let v0: Vec<f64> = (0..40).map(|i| 100.0 + 12.5 * i as f64).collect();
    let lambda: Vec<f64> = (0..40).map(|i| 0.075 * i as f64).collect();
    let mut g = c.benchmark_group("phase_grid");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| phase_grid_with(exec, black_box(&v0), &lambda, &spec))
        });
    }
    g.finish();
}

criterion_group!(benches, pair_sweep, phi_map, ed_sweep, phase);
criterion_main!(benches);
