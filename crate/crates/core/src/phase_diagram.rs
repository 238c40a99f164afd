//! Pairing and BKT temperatures over a (V0, λ) grid, the four-region
//! classification at a given temperature, and the ΔT = T_BKT − T_pair = 0
//! contour.
//!
//! Per grid point: t from the lattice depth, ħω_ph from the phonon trap
//! (or a fixed multiple of t), t' from the Lang–Firsov map, the pair mass
//! for a deeply bound on-site pair (V = 0, U = −2Wλ), then
//!
//! - `T_pair = max(0, 2Wλ − 8t')`
//! - `T_BKT = 4πħ² n_B / (a² k_B · 2m** · ln ln(4/n_B))`
//!
//! All temperatures are in nK.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::hubbard_params;
use crate::painted_lattice::{self, LatticeSpec, SpotPattern};
use crate::pair_solver::{lf_map, pair_mass_kg, LfParams, LfVariant};
use crate::parallel::{self, Execution};
use crate::rydberg_coupling::{self, RydbergSpec};
use crate::units::{self, HBAR, K_B, MICRON};

pub const DEFAULT_PAIR_DENSITY: f64 = 0.01;

/// `max(0, 2Wλ − 8t')`; `w` and `t_prime` in nK give the result in nK.
pub fn t_pair(w: f64, lambda: f64, t_prime: f64) -> f64 {
    (2.0 * w * lambda - 8.0 * t_prime).max(0.0)
}

/// Low-density BKT estimate in nK for pair density `n_b` per site, pair
/// mass in kg and lattice constant in µm.
pub fn t_bkt(n_b: f64, m_star_star: f64, a: f64) -> Result<f64> {
    if !(n_b > 0.0 && n_b < 1.0) {
        return Err(domain(format!("pair density must lie in (0, 1), got {n_b}")));
    }
    if !(m_star_star > 0.0) {
        return Err(domain(format!("pair mass must be positive, got {m_star_star}")));
    }
    let inner = (4.0 / n_b).ln();
    if inner <= 1.0 {
        return Err(domain(format!("ln(4/n_B) = {inner} ≤ 1 makes ln ln(4/n_B) non-positive")));
    }
    let a_m = a * MICRON;
    let kelvin = 4.0 * PI * HBAR * HBAR * n_b / (a_m * a_m * K_B * 2.0 * m_star_star * inner.ln());
    Ok(kelvin * 1e9)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhaseLabel {
    Normal,
    PreformedPairs,
    BKTCondensedPairs,
    BKTRegime,
}

impl PhaseLabel {
    pub const ALL: [PhaseLabel; 4] =
        [PhaseLabel::Normal, PhaseLabel::PreformedPairs, PhaseLabel::BKTCondensedPairs, PhaseLabel::BKTRegime];

    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::Normal => "normal",
            PhaseLabel::PreformedPairs => "preformed_pairs",
            PhaseLabel::BKTCondensedPairs => "bkt_condensed_pairs",
            PhaseLabel::BKTRegime => "bkt_regime",
        }
    }
}

/// Region at temperature `t`. Inequalities are strict; exact ties fall
/// through to `Normal`.
pub fn classify(t: f64, t_pair: f64, t_bkt: f64) -> PhaseLabel {
    if t < t_bkt && t_bkt <= t_pair {
        PhaseLabel::BKTCondensedPairs
    } else if t < t_bkt && t_pair < t_bkt {
        PhaseLabel::BKTRegime
    } else if t_bkt < t && t < t_pair {
        PhaseLabel::PreformedPairs
    } else {
        PhaseLabel::Normal
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpec {
    pub lattice: LatticeSpec,
    /// Phonon pattern; sets Φ_NN/Φ_00 and, with `v0_ph_ratio`, ω_ph.
    pub pattern: SpotPattern,
    pub rydberg: RydbergSpec,
    pub variant: LfVariant,
    /// nK.
    pub temperature: f64,
    pub n_b: f64,
    /// Phonon trap depth as a multiple of the fermion depth.
    pub v0_ph_ratio: f64,
    /// If set, ħω_ph = ratio · t instead of the trap value.
    pub omega_over_t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    /// nK.
    pub v0: f64,
    pub lambda: f64,
    pub temperature: f64,
    /// Hz.
    pub t: f64,
    /// Hz.
    pub t_prime: f64,
    /// ħω_ph/t from the trap geometry, whether or not it was used.
    pub omega_over_t_geometry: f64,
    /// nK.
    pub t_pair: f64,
    /// nK.
    pub t_bkt: f64,
    pub label: Option<PhaseLabel>,
    pub error: Option<String>,
}

impl PhasePoint {
    pub fn delta_t(&self) -> f64 {
        self.t_bkt - self.t_pair
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub v0_values: Vec<f64>,
    pub lambda_values: Vec<f64>,
    pub phi_nn_ratio: f64,
    /// `points[i][j]` is at `v0_values[i]`, `lambda_values[j]`.
    pub points: Vec<Vec<PhasePoint>>,
    /// ΔT = 0 polylines in (V0, λ).
    pub contour: Vec<Vec<[f64; 2]>>,
}

impl PhaseGrid {
    pub fn labels_present(&self) -> Vec<PhaseLabel> {
        let mut labels: Vec<PhaseLabel> = self.points.iter().flatten().filter_map(|p| p.label).collect();
        labels.sort();
        labels.dedup();
        labels
    }
}

/// Depth-only quantities at one V0, shared by every λ.
struct DepthRow {
    t_hz: f64,
    hbar_omega_geometry: f64,
}

fn depth_row(v0: f64, spec: &PhaseSpec) -> Result<DepthRow> {
    let e_rec = hubbard_params::recoil_energy(spec.lattice.a, units::MASS_K40);
    let t_hz = hubbard_params::hopping_t(units::nk_to_hz(v0), e_rec);
    let pattern = SpotPattern { v0_ph: spec.v0_ph_ratio * v0, ..spec.pattern.clone() };
    let omega = painted_lattice::numerical_soft_frequency(&spec.lattice, &pattern, units::MASS_RB87)?;
    Ok(DepthRow { t_hz, hbar_omega_geometry: units::quantum_hz(omega) })
}

fn point(v0: f64, lambda: f64, row: &Result<DepthRow>, phi_nn: f64, phi_nnn: f64, spec: &PhaseSpec) -> PhasePoint {
    let mut p = PhasePoint {
        v0,
        lambda,
        temperature: spec.temperature,
        t: f64::NAN,
        t_prime: f64::NAN,
        omega_over_t_geometry: f64::NAN,
        t_pair: f64::NAN,
        t_bkt: f64::NAN,
        label: None,
        error: None,
    };
    let result = (|| -> Result<()> {
        let row = row.as_ref().map_err(Clone::clone)?;
        p.t = row.t_hz;
        p.omega_over_t_geometry = row.hbar_omega_geometry / row.t_hz;
        let hbar_omega = spec.omega_over_t.map_or(row.hbar_omega_geometry, |r| r * row.t_hz);
        let lf = LfParams {
            t_bare: row.t_hz,
            lambda,
            hbar_omega_ph: hbar_omega,
            phi_nn_ratio: phi_nn,
            phi_nnn_ratio: phi_nnn,
            u_fesh: 0.0,
        };
        let tp = lf_map(&lf, spec.variant)?.t_prime;
        p.t_prime = tp;
        let w = 4.0 * row.t_hz;
        let mass = pair_mass_kg(-2.0 * w * lambda, 0.0, tp, spec.lattice.a)?;
        p.t_pair = t_pair(units::hz_to_nk(w), lambda, units::hz_to_nk(tp));
        p.t_bkt = t_bkt(spec.n_b, mass, spec.lattice.a)?;
        p.label = Some(classify(spec.temperature, p.t_pair, p.t_bkt));
        Ok(())
    })();
    if let Err(e) = result {
        p.error = Some(e.to_string());
    }
    p
}

pub fn phase_grid(v0_values: &[f64], lambda_values: &[f64], spec: &PhaseSpec) -> Result<PhaseGrid> {
    phase_grid_with(Execution::default(), v0_values, lambda_values, spec)
}

/// Evaluate the grid. Failures at single points are recorded on the point
/// and leave the rest of the grid intact.
pub fn phase_grid_with(
    exec: Execution,
    v0_values: &[f64],
    lambda_values: &[f64],
    spec: &PhaseSpec,
) -> Result<PhaseGrid> {
    if v0_values.is_empty() || lambda_values.is_empty() {
        return Err(domain("phase grid axes must be non-empty"));
    }
    if v0_values.iter().chain(lambda_values).any(|x| !x.is_finite()) {
        return Err(domain("phase grid axes must be finite"));
    }
    let map = rydberg_coupling::effective_interaction(&spec.pattern, &spec.rydberg, spec.lattice.a, 1);
    let (phi_nn, phi_nnn) = (map.nn_ratio(), map.nnn_ratio());
    let rows = parallel::map(exec, v0_values, |&v0| depth_row(v0, spec));
    let n_l = lambda_values.len();
    let flat = parallel::map_range(exec, v0_values.len() * n_l, |k| {
        let (i, j) = (k / n_l, k % n_l);
        point(v0_values[i], lambda_values[j], &rows[i], phi_nn, phi_nnn, spec)
    });
    let points: Vec<Vec<PhasePoint>> = flat.chunks(n_l).map(|c| c.to_vec()).collect();
    let delta: Vec<Vec<f64>> = points.iter().map(|r| r.iter().map(PhasePoint::delta_t).collect()).collect();
    let contour = zero_contour(v0_values, lambda_values, &delta);
    Ok(PhaseGrid {
        v0_values: v0_values.to_vec(),
        lambda_values: lambda_values.to_vec(),
        phi_nn_ratio: phi_nn,
        points,
        contour,
    })
}

/// A grid edge, named by its lower-left corner and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// From (i, j) to (i + 1, j).
    AlongX(usize, usize),
    /// From (i, j) to (i, j + 1).
    AlongY(usize, usize),
}

impl Edge {
    pub fn corners(self) -> [(usize, usize); 2] {
        match self {
            Edge::AlongX(i, j) => [(i, j), (i + 1, j)],
            Edge::AlongY(i, j) => [(i, j), (i, j + 1)],
        }
    }
}

/// Marching-squares segments of the zero level of `f[i][j]` sampled at
/// `(x[i], y[j])`. Cells touching a NaN are skipped. Values ≥ 0 count as
/// positive; saddles are resolved with the cell-centre average.
pub fn zero_segments(x: &[f64], y: &[f64], f: &[Vec<f64>]) -> Vec<[Edge; 2]> {
    let mut segments = Vec::new();
    if x.len() < 2 || y.len() < 2 {
        return segments;
    }
    let pos = |v: f64| v >= 0.0;
    for i in 0..x.len() - 1 {
        for j in 0..y.len() - 1 {
            let c = [f[i][j], f[i + 1][j], f[i + 1][j + 1], f[i][j + 1]];
            if c.iter().any(|v| v.is_nan()) {
                continue;
            }
            // Edges in order bottom, right, top, left; corner k sits
            // between edges k − 1 and k.
            let edges = [Edge::AlongX(i, j), Edge::AlongY(i + 1, j), Edge::AlongX(i, j + 1), Edge::AlongY(i, j)];
            let crossed: Vec<Edge> = (0..4).filter(|&k| pos(c[k]) != pos(c[(k + 1) % 4])).map(|k| edges[k]).collect();
            match crossed.len() {
                2 => segments.push([crossed[0], crossed[1]]),
                4 => {
                    let centre = pos(c.iter().sum::<f64>() / 4.0);
                    for k in 0..4 {
                        if pos(c[k]) != centre {
                            segments.push([edges[(k + 3) % 4], edges[k]]);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

/// Linear-interpolated zero on an edge.
pub fn edge_point(edge: Edge, x: &[f64], y: &[f64], f: &[Vec<f64>]) -> [f64; 2] {
    let [(i0, j0), (i1, j1)] = edge.corners();
    let (f0, f1) = (f[i0][j0], f[i1][j1]);
    let s = f0 / (f0 - f1);
    [x[i0] + s * (x[i1] - x[i0]), y[j0] + s * (y[j1] - y[j0])]
}

/// Zero level as polylines: segments sharing an edge are chained.
pub fn zero_contour(x: &[f64], y: &[f64], f: &[Vec<f64>]) -> Vec<Vec<[f64; 2]>> {
    let segments = zero_segments(x, y, f);
    let mut at_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, s) in segments.iter().enumerate() {
        for e in s {
            at_edge.entry(*e).or_default().push(k);
        }
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    // Open chains first (start at an edge used once), then closed loops.
    let starts: Vec<(usize, Edge)> = segments
        .iter()
        .enumerate()
        .flat_map(|(k, s)| s.iter().map(move |e| (k, *e)))
        .filter(|(_, e)| at_edge[e].len() == 1)
        .chain(segments.iter().enumerate().map(|(k, s)| (k, s[0])))
        .collect();
    for (k0, e0) in starts {
        if used[k0] {
            continue;
        }
        let mut chain = vec![e0];
        let (mut k, mut e) = (k0, e0);
        loop {
            used[k] = true;
            let s = segments[k];
            let next = if s[0] == e { s[1] } else { s[0] };
            chain.push(next);
            match at_edge[&next].iter().find(|&&m| !used[m]) {
                Some(&m) => {
                    k = m;
                    e = next;
                }
                None => break,
            }
        }
        lines.push(chain.into_iter().map(|e| edge_point(e, x, y, f)).collect());
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painted_lattice::PatternKind;

    #[test]
    fn pairing_temperature() {
        assert_eq!(t_pair(2.0, 2.0, 1.0), 0.0);
        assert_eq!(t_pair(2.0, 0.0, 1.0), 0.0);
        assert_eq!(t_pair(4.0, 2.0, 1.0), 8.0);
    }

    #[test]
    fn bkt_scaling_and_domain() {
        let m = 1e-25;
        let a = t_bkt(0.01, m, 1.73).unwrap();
        let b = t_bkt(0.01, 2.0 * m, 1.73).unwrap();
        assert!((a / b - 2.0).abs() < 1e-14);
        assert!(t_bkt(0.99, m, 1.73).is_ok());
        assert!(t_bkt(1.0, m, 1.73).is_err());
        assert!(t_bkt(0.0, m, 1.73).is_err());
        assert!(t_bkt(0.01, 0.0, 1.73).is_err());
    }

    #[test]
    fn classification_rules() {
        assert_eq!(classify(0.0, 5.0, 1.0), PhaseLabel::BKTCondensedPairs);
        assert_eq!(classify(0.0, 1.0, 5.0), PhaseLabel::BKTRegime);
        assert_eq!(classify(3.0, 5.0, 1.0), PhaseLabel::PreformedPairs);
        assert_eq!(classify(6.0, 5.0, 1.0), PhaseLabel::Normal);
        assert_eq!(classify(2.0, 2.0, 2.0), PhaseLabel::Normal);
    }

    fn spec() -> PhaseSpec {
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
            omega_over_t: Some(18.52),
        }
    }

    #[test]
    fn single_point_grid() {
        let g = phase_grid(&[150.0], &[2.0], &spec()).unwrap();
        assert_eq!(g.points.len(), 1);
        assert!(g.points[0][0].label.is_some());
        assert!(g.contour.is_empty());
    }

    #[test]
    fn pair_temperature_grows_with_lambda() {
        let lambdas: Vec<f64> = (0..=20).map(|i| i as f64 * 0.25).collect();
        let g = phase_grid(&[150.0, 300.0], &lambdas, &spec()).unwrap();
        for row in &g.points {
            assert!(row.windows(2).all(|w| w[1].t_pair >= w[0].t_pair));
            assert!(row.iter().all(|p| p.label.is_some()));
        }
    }

    #[test]
    fn marching_squares_circle() {
        let xs: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
        let f: Vec<Vec<f64>> = xs.iter().map(|&x| xs.iter().map(|&y| x * x + y * y - 0.5).collect()).collect();
        let lines = zero_contour(&xs, &xs, &f);
        assert_eq!(lines.len(), 1);
        let ring = &lines[0];
        assert_eq!(ring.first(), ring.last());
        for p in ring {
            assert!(((p[0] * p[0] + p[1] * p[1]).sqrt() - 0.5f64.sqrt()).abs() < 0.02);
        }
        for [a, b] in zero_segments(&xs, &xs, &f) {
            for e in [a, b] {
                let [(i0, j0), (i1, j1)] = e.corners();
                assert_ne!(f[i0][j0] >= 0.0, f[i1][j1] >= 0.0);
            }
        }
    }

    #[test]
    fn open_line_and_saddle() {
        let xs = [0.0, 1.0, 2.0];
        let f = vec![vec![-1.0, -1.0, 1.0], vec![-1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]];
        let lines = zero_contour(&xs, &xs, &f);
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].len(), 4);
        let saddle = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        assert_eq!(zero_segments(&xs[..2], &xs[..2], &saddle).len(), 2);
    }
}
