//! Exact two-body spectra of the UV models on a periodic L×L lattice.
//!
//! At zero total momentum the pair wavefunction depends only on the
//! relative coordinate r = r↑ − r↓, and each particle's hop moves r by one
//! lattice vector. Both particles contribute, so the relative problem has
//! hopping −2t' to each neighbour and band bottom −8t'. The potential is U
//! at r = 0 and V, V1, V2 on the model's neighbour shells.
//!
//! Spatially symmetric (singlet) states are selected by working in a basis
//! of symmetry orbits:
//!
//! - [`Sector::Symmetric`]: even under r → −r, valid for both variants.
//! - [`Sector::FullySymmetric`]: invariant under the full square symmetry
//!   group. This is the s-wave channel that the 3×3 determinant describes;
//!   the symmetric sector of the both-diagonals model also holds d-wave
//!   states that the determinant does not see.
//!
//! Lowest eigenvalues come from Lanczos with full reorthogonalization. A
//! brute-force builder projects the full two-particle Hamiltonian onto
//! K = 0 on lattices up to 6×6, which checks the factor of two in the
//! relative hopping.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::pair_solver::{UvModel, UvVariant};
use crate::parallel::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteLattice {
    /// Linear size; the lattice is periodic in both directions.
    pub l: usize,
}

impl FiniteLattice {
    pub fn new(l: usize) -> Result<Self> {
        if l < 8 || !l.is_multiple_of(2) {
            return Err(domain(format!("lattice size must be even and at least 8, got {l}")));
        }
        Ok(Self { l })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Sector {
    #[default]
    Symmetric,
    FullySymmetric,
}

/// Symmetric matrix in compressed-row form.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetric {
    pub dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymmetric {
    fn from_upper(dim: usize, upper: &BTreeMap<(usize, usize), f64>) -> Self {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
        for (&(i, j), &v) in upper {
            rows[i].push((j, v));
            if i != j {
                rows[j].push((i, v));
            }
        }
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for mut row in rows {
            row.sort_by_key(|&(j, _)| j);
            for (j, v) in row {
                cols.push(j);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self { dim, row_ptr, cols, vals }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        row.binary_search(&j).map_or(0.0, |k| self.vals[self.row_ptr[i] + k])
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (self.row_ptr[i]..self.row_ptr[i + 1]).map(|k| self.vals[k] * x[self.cols[k]]).sum();
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.dim]; self.dim];
        for (i, row) in m.iter_mut().enumerate() {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                row[self.cols[k]] = self.vals[k];
            }
        }
        m
    }

    /// Exact (bitwise) symmetry of the stored entries.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (self.row_ptr[i]..self.row_ptr[i + 1]).all(|k| self.get(self.cols[k], i) == self.vals[k]))
    }
}

fn wrap(d: i64, l: usize) -> usize {
    d.rem_euclid(l as i64) as usize
}

/// Displacement in (−L/2, L/2].
fn minimal_image(c: usize, l: usize) -> i64 {
    let c = c as i64;
    let l = l as i64;
    if c > l / 2 {
        c - l
    } else {
        c
    }
}

/// Interaction at relative displacement (dx, dy).
pub fn potential(model: &UvModel, dx: i64, dy: i64) -> f64 {
    match (dx.abs(), dy.abs(), model.variant) {
        (0, 0, _) => model.u,
        (1, 1, UvVariant::SingleDiagonal { v }) if dx == dy => v,
        (1, 0, UvVariant::BothDiagonals { v1, .. }) | (0, 1, UvVariant::BothDiagonals { v1, .. }) => v1,
        (1, 1, UvVariant::BothDiagonals { v2, .. }) => v2,
        _ => 0.0,
    }
}

fn site_potential(model: &UvModel, site: usize, l: usize) -> f64 {
    potential(model, minimal_image(site % l, l), minimal_image(site / l, l))
}

/// Orbits of the relative sites under the sector's symmetry group.
#[derive(Debug, Clone)]
struct Orbits {
    members: Vec<Vec<usize>>,
    of_site: Vec<usize>,
}

fn orbits(l: usize, sector: Sector) -> Orbits {
    let n = l * l;
    let mut of_site = vec![usize::MAX; n];
    let mut members = Vec::new();
    for site in 0..n {
        if of_site[site] != usize::MAX {
            continue;
        }
        let (x, y) = ((site % l) as i64, (site / l) as i64);
        let images: Vec<(i64, i64)> = match sector {
            Sector::Symmetric => vec![(x, y), (-x, -y)],
            Sector::FullySymmetric => vec![(x, y), (-x, y), (x, -y), (-x, -y), (y, x), (-y, x), (y, -x), (-y, -x)],
        };
        let mut orbit: Vec<usize> = images.iter().map(|&(a, b)| wrap(a, l) + l * wrap(b, l)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &s in &orbit {
            of_site[s] = members.len();
        }
        members.push(orbit);
    }
    Orbits { members, of_site }
}

fn check_sector(model: &UvModel, sector: Sector) -> Result<()> {
    if sector == Sector::FullySymmetric {
        if let UvVariant::SingleDiagonal { v } = model.variant {
            if v != 0.0 {
                return Err(domain("the single-diagonal model is not symmetric under 90° rotations"));
            }
        }
    }
    Ok(())
}

/// Relative-coordinate Hamiltonian at K = 0 in the chosen sector.
pub fn relative_hamiltonian(model: &UvModel, lattice: FiniteLattice, sector: Sector) -> Result<SparseSymmetric> {
    model.validate()?;
    check_sector(model, sector)?;
    Ok(build_relative(model, lattice.l, sector))
}

fn build_relative(model: &UvModel, l: usize, sector: Sector) -> SparseSymmetric {
    let orb = orbits(l, sector);
    let hop = -2.0 * model.t_prime;
    let mut upper = BTreeMap::new();
    for (a, members) in orb.members.iter().enumerate() {
        let mut column: BTreeMap<usize, f64> = BTreeMap::new();
        for &site in members {
            *column.entry(a).or_default() += site_potential(model, site, l);
            let (x, y) = ((site % l) as i64, (site / l) as i64);
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let to = wrap(x + dx, l) + l * wrap(y + dy, l);
                *column.entry(orb.of_site[to]).or_default() += hop;
            }
        }
        for (b, sum) in column {
            if b >= a && sum != 0.0 {
                let norm = ((members.len() * orb.members[b].len()) as f64).sqrt();
                upper.insert((a, b), sum / norm);
            }
        }
    }
    SparseSymmetric::from_upper(orb.members.len(), &upper)
}

/// Eigenvalues and last eigenvector components of a symmetric tridiagonal
/// matrix (implicit QL with Wilkinson shifts). `diag` has n entries and
/// `off` n − 1; results are returned unsorted.
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    // Only the last row of the eigenvector matrix is needed; rotations act
    // on rows independently.
    let mut z = vec![0.0; n];
    z[n - 1] = 1.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::EigenNoConvergence { iterations, residual: e[l].abs() });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Residual bound on each requested Ritz pair, absolute.
    pub tol: f64,
    pub max_iterations: usize,
}

/// Lowest `n_states` eigenvalues of `op`, ascending.
///
/// Uses a single positive start vector, so each eigenvalue is found once
/// even if degenerate. Converges when every requested Ritz pair has
/// residual below `opts.tol`, or when the Krylov space is exhausted.
pub fn lanczos_lowest(op: &SparseSymmetric, n_states: usize, opts: LanczosOptions) -> Result<Vec<f64>> {
    let n = op.dim;
    if n == 0 || n_states == 0 {
        return Ok(Vec::new());
    }
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i * 7919) % 101) as f64 / 101.0).collect();
    normalize(&mut v);
    let mut basis: Vec<Vec<f64>> = vec![v];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let max_iter = opts.max_iterations.min(n);
    let mut last_residual = f64::INFINITY;
    for j in 0..max_iter {
        op.apply(&basis[j], &mut w);
        let a = dot(&basis[j], &w);
        alpha.push(a);
        for (wi, vi) in w.iter_mut().zip(&basis[j]) {
            *wi -= a * vi;
        }
        if j > 0 {
            let b = beta[j - 1];
            for (wi, vi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= b * vi;
            }
        }
        for _ in 0..2 {
            for q in &basis {
                let h = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= h * qi;
                }
            }
        }
        let b = norm(&w);
        let exhausted = b <= 1e-13 * alpha.iter().fold(1.0f64, |m, x| m.max(x.abs())) || j + 1 == n;
        let check = exhausted || j + 1 >= n_states && (j % 5 == 4 || j + 1 == max_iter);
        if check {
            let (theta, z) = tridiagonal_eigen(&alpha, &beta)?;
            let mut order: Vec<usize> = (0..theta.len()).collect();
            order.sort_by(|&x, &y| theta[x].total_cmp(&theta[y]));
            let k = n_states.min(theta.len());
            let residual = order[..k].iter().map(|&i| (b * z[i]).abs()).fold(0.0, f64::max);
            last_residual = residual;
            if exhausted || residual <= opts.tol {
                return Ok(order[..k].iter().map(|&i| theta[i]).collect());
            }
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
    Err(Error::EigenNoConvergence { iterations: max_iter, residual: last_residual })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: &mut [f64]) {
    let s = norm(a);
    a.iter_mut().for_each(|x| *x /= s);
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoBodySpectrum {
    pub lattice: FiniteLattice,
    pub sector: Sector,
    pub model: UvModel,
    /// Lowest eigenvalues, ascending.
    pub energies: Vec<f64>,
    /// States below `−8t' − 5t'/L²`.
    pub bound_count: usize,
    pub dimension: usize,
}

/// Finite-size margin below the band bottom for a state to count as bound.
pub fn bound_margin(t_prime: f64, l: usize) -> f64 {
    5.0 * t_prime / (l * l) as f64
}

pub fn ground_energies(
    model: &UvModel,
    lattice: FiniteLattice,
    n_states: usize,
    sector: Sector,
) -> Result<TwoBodySpectrum> {
    let h = relative_hamiltonian(model, lattice, sector)?;
    let opts = LanczosOptions { tol: 1e-10 * model.t_prime, max_iterations: h.dim };
    let energies = lanczos_lowest(&h, n_states, opts)?;
    let edge = -8.0 * model.t_prime - bound_margin(model.t_prime, lattice.l);
    let bound_count = energies.iter().filter(|&&e| e < edge).count();
    Ok(TwoBodySpectrum { lattice, sector, model: *model, energies, bound_count, dimension: h.dim })
}

/// Spectra for several lattice sizes, one task per size.
pub fn ground_energy_sweep(
    exec: Execution,
    model: &UvModel,
    sizes: &[usize],
    n_states: usize,
    sector: Sector,
) -> Result<Vec<TwoBodySpectrum>> {
    parallel::map(exec, sizes, |&l| ground_energies(model, FiniteLattice::new(l)?, n_states, sector))
        .into_iter()
        .collect()
}

/// K = 0 spectrum in the given sector built from the full two-particle
/// Hamiltonian (↑ and ↓ on an L×L torus, dimension L⁴) by explicit
/// projection. For 3 ≤ L ≤ 6.
pub fn brute_force_k0_spectrum(model: &UvModel, l: usize, sector: Sector) -> Result<Vec<f64>> {
    model.validate()?;
    check_sector(model, sector)?;
    if !(3..=6).contains(&l) {
        return Err(domain(format!("brute-force builder supports 3 ≤ L ≤ 6, got {l}")));
    }
    let n1 = l * l;
    let idx = |up: usize, dn: usize| up * n1 + dn;
    let site = |x: i64, y: i64| wrap(x, l) + l * wrap(y, l);
    let t = model.t_prime;
    let full_apply = |psi: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n1 * n1];
        for up in 0..n1 {
            for dn in 0..n1 {
                let amp = psi[idx(up, dn)];
                if amp == 0.0 {
                    continue;
                }
                let (ux, uy) = ((up % l) as i64, (up / l) as i64);
                let (dx, dy) = ((dn % l) as i64, (dn / l) as i64);
                let rel = site(ux - dx, uy - dy);
                out[idx(up, dn)] += site_potential(model, rel, l) * amp;
                for (ex, ey) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    out[idx(site(ux + ex, uy + ey), dn)] -= t * amp;
                    out[idx(up, site(dx + ex, dy + ey))] -= t * amp;
                }
            }
        }
        out
    };
    // |φ_r⟩ = L⁻¹ Σ_R |R + r, R⟩
    let phi = |r: usize| -> Vec<f64> {
        let (rx, ry) = ((r % l) as i64, (r / l) as i64);
        let mut v = vec![0.0; n1 * n1];
        for big in 0..n1 {
            let (x, y) = ((big % l) as i64, (big / l) as i64);
            v[idx(site(x + rx, y + ry), big)] = 1.0 / l as f64;
        }
        v
    };
    let phis: Vec<Vec<f64>> = (0..n1).map(phi).collect();
    let h_phis: Vec<Vec<f64>> = phis.iter().map(|p| full_apply(p)).collect();
    let orb = orbits(l, sector);
    let k = orb.members.len();
    let mut m = vec![vec![0.0; k]; k];
    for a in 0..k {
        for b in a..k {
            let mut sum = 0.0;
            for &ra in &orb.members[a] {
                for &rb in &orb.members[b] {
                    sum += dot(&phis[rb], &h_phis[ra]);
                }
            }
            let value = sum / ((orb.members[a].len() * orb.members[b].len()) as f64).sqrt();
            m[a][b] = value;
            m[b][a] = value;
        }
    }
    Ok(jacobi_eigenvalues(m))
}

/// All eigenvalues of a small dense symmetric matrix by cyclic Jacobi
/// rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitModel {
    /// Least squares in `E∞ + c/L²`.
    InverseSquare,
    /// Aitken Δ² on the three largest sizes, for bound states whose
    /// finite-size error decays exponentially in L.
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub e_inf: f64,
    /// For the 1/L² fit: residual plus the spread to the two-largest-sizes
    /// estimate. For the geometric model: the last correction applied.
    pub error: f64,
    /// Coefficient of 1/L² from the least-squares fit.
    pub slope: f64,
    pub model: FitModel,
    /// The limit sits at the band edge, where convergence is logarithmic
    /// and neither form is reliable.
    pub band_edge: bool,
    /// Energies are not monotone in L.
    pub unreliable: bool,
}

/// Extrapolate per-size energies to L → ∞.
///
/// The default is a least-squares fit of `E(L) = E∞ + c/L²`. When the
/// successive differences of the three largest sizes shrink faster than a
/// 1/L² law allows, the state is localized and its error is exponential in
/// L; the 1/L² fit would then overshoot, so Aitken's Δ² is used instead.
pub fn extrapolate_energy(sizes: &[usize], energies: &[f64], t_prime: f64) -> Result<Extrapolation> {
    if sizes.len() != energies.len() || sizes.len() < 3 {
        return Err(domain("extrapolation needs at least three (L, E) pairs"));
    }
    let mut pts: Vec<(f64, f64, usize)> =
        sizes.iter().zip(energies).map(|(&l, &e)| (1.0 / (l * l) as f64, e, l)).collect();
    pts.sort_by_key(|p| p.2);
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(domain("extrapolation needs distinct lattice sizes"));
    }
    let slope = sxy / sxx;
    let ls = my - slope * mx;
    let residual = pts.iter().map(|p| (p.1 - ls - slope * p.0).abs()).fold(0.0, f64::max);
    let k = pts.len();
    let (p1, p2, p3) = (pts[k - 3], pts[k - 2], pts[k - 1]);
    let two_point = p3.1 - (p2.1 - p3.1) / (p2.0 - p3.0) * p3.0;

    let d1 = p2.1 - p1.1;
    let d2 = p3.1 - p2.1;
    let power_law_ratio = (p3.0 - p2.0) / (p2.0 - p1.0);
    let geometric = d1 != 0.0 && d2 / d1 >= 0.0 && d2 / d1 < 0.5 * power_law_ratio;
    let (e_inf, error, model) = if d1 == 0.0 && d2 == 0.0 {
        (p3.1, 0.0, FitModel::InverseSquare)
    } else if geometric {
        let correction = d2 * d2 / (d2 - d1);
        (p3.1 - correction, correction.abs(), FitModel::Geometric)
    } else {
        (ls, residual + (two_point - ls).abs(), FitModel::InverseSquare)
    };

    let diffs: Vec<f64> = pts.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let unreliable = diffs.iter().any(|&d| d > 0.0) && diffs.iter().any(|&d| d < 0.0);
    let band_edge = e_inf >= -8.0 * t_prime - bound_margin(t_prime, p3.2);
    Ok(Extrapolation { e_inf, error, slope, model, band_edge, unreliable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(l: usize) -> FiniteLattice {
        FiniteLattice::new(l).unwrap()
    }

    #[test]
    fn lattice_validation() {
        assert!(FiniteLattice::new(6).is_err());
        assert!(FiniteLattice::new(9).is_err());
        assert!(FiniteLattice::new(8).is_ok());
    }

    #[test]
    fn coordination_counts() {
        let full = UvModel::both_diagonals(1.0, 2.0, 3.0, 1.0);
        let diag = UvModel::single_diagonal(1.0, 2.0, 1.0);
        let l = 10;
        let count = |m: &UvModel, v: f64| (0..l * l).filter(|&s| site_potential(m, s, l) == v).count();
        assert_eq!(count(&full, 1.0), 1);
        assert_eq!(count(&full, 2.0), 4);
        assert_eq!(count(&full, 3.0), 4);
        assert_eq!(count(&diag, 2.0), 2);
    }

    #[test]
    fn symmetric_construction() {
        let m = UvModel::both_diagonals(-3.0, 0.4, -1.1, 0.9);
        for sector in [Sector::Symmetric, Sector::FullySymmetric] {
            let h = relative_hamiltonian(&m, lattice(12), sector).unwrap();
            assert!(h.is_symmetric());
        }
    }

    #[test]
    fn sector_dimensions() {
        let m = UvModel::both_diagonals(0.0, 0.0, 0.0, 1.0);
        // (L² + 4)/2 inversion orbits for even L.
        assert_eq!(relative_hamiltonian(&m, lattice(8), Sector::Symmetric).unwrap().dim, 34);
        assert_eq!(relative_hamiltonian(&m, lattice(8), Sector::FullySymmetric).unwrap().dim, 15);
        assert!(
            relative_hamiltonian(&UvModel::single_diagonal(0.0, 1.0, 1.0), lattice(8), Sector::FullySymmetric).is_err()
        );
    }

    #[test]
    fn free_ground_state_is_band_bottom() {
        let m = UvModel::both_diagonals(0.0, 0.0, 0.0, 1.0);
        let s = ground_energies(&m, lattice(16), 2, Sector::Symmetric).unwrap();
        assert!((s.energies[0] + 8.0).abs() < 1e-10);
        assert_eq!(s.bound_count, 0);
    }

    #[test]
    fn lanczos_matches_dense_jacobi() {
        let m = UvModel::both_diagonals(-4.0, 0.7, -1.3, 1.0);
        let h = relative_hamiltonian(&m, lattice(8), Sector::Symmetric).unwrap();
        let dense = jacobi_eigenvalues(h.to_dense());
        let opts = LanczosOptions { tol: 1e-11, max_iterations: h.dim };
        let lz = lanczos_lowest(&h, 3, opts).unwrap();
        for (a, b) in lz.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn relative_reduction_matches_brute_force() {
        for l in [4, 5, 6] {
            for (model, sector) in [
                (UvModel::single_diagonal(-3.0, -1.5, 1.0), Sector::Symmetric),
                (UvModel::both_diagonals(-2.0, 0.5, -1.0, 0.8), Sector::Symmetric),
                (UvModel::both_diagonals(-2.0, 0.5, -1.0, 0.8), Sector::FullySymmetric),
            ] {
                let brute = brute_force_k0_spectrum(&model, l, sector).unwrap();
                let relative = jacobi_eigenvalues(build_relative(&model, l, sector).to_dense());
                assert_eq!(brute.len(), relative.len());
                for (a, b) in brute.iter().zip(&relative) {
                    assert!((a - b).abs() < 1e-11, "L = {l}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn deep_on_site_limit() {
        let m = UvModel::both_diagonals(-200.0, 0.0, 0.0, 1.0);
        let s = ground_energies(&m, lattice(8), 1, Sector::Symmetric).unwrap();
        // Second-order shift: −4·(2t')²/|U|·... stays within 1% of U.
        assert!((s.energies[0] / -200.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn tridiagonal_solver() {
        // Free chain: eigenvalues 2cos(kπ/(n+1)).
        let n = 12;
        let (mut d, _) = tridiagonal_eigen(&vec![0.0; n], &vec![1.0; n - 1]).unwrap();
        d.sort_by(f64::total_cmp);
        for (i, e) in d.iter().enumerate() {
            let exact = -2.0 * ((i + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn extrapolation_cases() {
        let c = extrapolate_energy(&[16, 24, 32], &[-9.5; 3], 1.0).unwrap();
        assert_eq!(c.e_inf, -9.5);
        assert_eq!(c.error, 0.0);
        assert!(!c.band_edge && !c.unreliable);
        let e: Vec<f64> = [16usize, 24, 32].iter().map(|&l| -10.0 + 3.0 / (l * l) as f64).collect();
        let fit = extrapolate_energy(&[16, 24, 32], &e, 1.0).unwrap();
        assert!((fit.e_inf + 10.0).abs() < 1e-12 && (fit.slope - 3.0).abs() < 1e-9);
        assert_eq!(fit.model, FitModel::InverseSquare);
        let e: Vec<f64> = [16usize, 24, 32].iter().map(|&l| -10.0 + (-(l as f64) / 3.0).exp()).collect();
        let geo = extrapolate_energy(&[16, 24, 32], &e, 1.0).unwrap();
        assert_eq!(geo.model, FitModel::Geometric);
        assert!((geo.e_inf + 10.0).abs() < 1e-12);
        let bad = extrapolate_energy(&[16, 24, 32], &[-9.0, -9.2, -9.1], 1.0).unwrap();
        assert!(bad.unreliable);
        let edge = extrapolate_energy(&[16, 24, 32], &[-7.95, -7.98, -7.99], 1.0).unwrap();
        assert!(edge.band_edge);
        assert!(extrapolate_energy(&[16, 24], &[-9.0, -9.0], 1.0).is_err());
    }
}
