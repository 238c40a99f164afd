//! Painted spot lattices and their phonon modes.
//!
//! Fermions sit in single Gaussian spots on a square lattice of constant
//! `a` (sites at integer multiples of `a`). Each phonon site is painted from
//! `N_S` spots displaced by `D_j` from the site centre; each spot carries
//! depth `V0_ph / N_S`, so a compact multi-spot site is as deep as a single
//! spot. Everything sits in a pancake `−V0_pan exp(−2z²/w_pan²)`.
//!
//! Pattern geometries (a′ = a√2 is the diagonal):
//!
//! * `OffsetParallel(b)`: one two-spot phonon site per fermion, displaced by
//!   `b` along the (1,1) diagonal, spots split along that diagonal. Only the
//!   soft mode along the spot axis is kept.
//! * `HolsteinReference`: `OffsetParallel` with a small offset `b = 0.1a′`,
//!   so each fermion couples essentially to its own oscillator.
//! * `Crossed`: four-spot sites at plaquette centres, spots on both
//!   diagonals; two degenerate modes along the diagonals.
//! * `BipartiteParallel`: two-spot sites at every plaquette centre, spot
//!   axis alternating between x and y in a checkerboard.
//!
//! `rotation` turns each site's spot basis and polarizations about the site
//! centre. Lengths are µm, energies nK, masses kg, frequencies rad/s.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::units;

pub use crate::units::{MASS_K40, MASS_RB87};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    /// Lattice constant, µm.
    pub a: f64,
    /// Pancake depth, nK.
    pub v0_pan: f64,
    /// Pancake waist, µm.
    pub w_pan: f64,
    /// Fermion spot waist, µm.
    pub w_f: f64,
    /// Fermion spot depth, nK.
    pub v0: f64,
}

impl Default for LatticeSpec {
    fn default() -> Self {
        Self { a: 1.73, v0_pan: 100.0, w_pan: 1.0, w_f: 0.6, v0: 400.0 }
    }
}

impl LatticeSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.a, self.v0_pan, self.w_pan, self.w_f, self.v0].iter().all(|&x| x > 0.0);
        if ok {
            Ok(())
        } else {
            Err(domain("lattice lengths and depths must be positive"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PatternKind {
    HolsteinReference,
    BipartiteParallel,
    Crossed,
    /// Offset `b` in µm along the (1,1) diagonal.
    OffsetParallel {
        b: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpotPattern {
    pub kind: PatternKind,
    /// Phonon spot waist, µm.
    pub w_ph: f64,
    /// Phonon site depth, nK.
    pub v0_ph: f64,
    /// Half the separation of paired spots, µm.
    pub d: f64,
    /// Offset of the phonon site from its fermion, µm.
    pub b: f64,
    /// Rotation of the spot basis about the site centre, rad.
    pub rotation: f64,
    /// Spot displacements of a reference site (site `(0, 0)`), µm.
    pub basis_displacements: Vec<[f64; 2]>,
    pub n_s: usize,
}

/// One phonon site: centre, spot positions and the polarizations of the
/// modes that couple to fermions.
#[derive(Debug, Clone, PartialEq)]
pub struct PhononSite {
    pub cell: (i64, i64),
    pub center: [f64; 2],
    pub spots: Vec<[f64; 2]>,
    pub polarizations: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhononMode {
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Unit polarization vector.
    pub polarization: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Species {
    Fermion,
    Phonon,
}

fn rotate(v: [f64; 2], theta: f64) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

const DIAG: [f64; 2] = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
const ANTI: [f64; 2] = [-FRAC_1_SQRT_2, FRAC_1_SQRT_2];

impl SpotPattern {
    pub fn new(kind: PatternKind, a: f64, w_ph: f64, d: f64, v0_ph: f64) -> Self {
        let b = match kind {
            PatternKind::HolsteinReference => 0.1 * a * SQRT_2,
            PatternKind::OffsetParallel { b } => b,
            PatternKind::Crossed | PatternKind::BipartiteParallel => 0.5 * a * SQRT_2,
        };
        let mut p = Self { kind, w_ph, v0_ph, d, b, rotation: 0.0, basis_displacements: Vec::new(), n_s: 0 };
        p.basis_displacements = p.site_frame(0, 0).0;
        p.n_s = p.basis_displacements.len();
        p
    }

    pub fn offset_parallel(a: f64, b: f64, w_ph: f64, d: f64, v0_ph: f64) -> Self {
        Self::new(PatternKind::OffsetParallel { b }, a, w_ph, d, v0_ph)
    }

    pub fn with_rotation(mut self, rotation: f64) -> Self {
        self.rotation = rotation;
        self.basis_displacements = self.site_frame(0, 0).0;
        self
    }

    pub fn validate(&self, a: f64) -> Result<()> {
        let mut errs = Vec::new();
        if !(self.w_ph > 0.0 && self.v0_ph > 0.0) {
            errs.push("phonon waist and depth must be positive".to_string());
        }
        if !(self.d >= 0.0 && self.d <= 0.5 * self.w_ph) {
            errs.push(format!("spot half-separation D = {} must lie in [0, w_ph/2 = {}]", self.d, 0.5 * self.w_ph));
        }
        if !(self.b > 0.0 && self.b < a * SQRT_2) {
            errs.push(format!("offset b = {} must lie in (0, a√2)", self.b));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(domain(errs.join("; ")))
        }
    }

    /// Offset of phonon-site centres from the fermion at the cell origin, in
    /// units of µm.
    fn center_offset(&self, a: f64) -> [f64; 2] {
        match self.kind {
            PatternKind::OffsetParallel { .. } | PatternKind::HolsteinReference => {
                [self.b * FRAC_1_SQRT_2, self.b * FRAC_1_SQRT_2]
            }
            PatternKind::Crossed | PatternKind::BipartiteParallel => [0.5 * a, 0.5 * a],
        }
    }

    /// Spot displacements and mode polarizations of site `(m, n)`.
    fn site_frame(&self, m: i64, n: i64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
        let axes: Vec<[f64; 2]> = match self.kind {
            PatternKind::OffsetParallel { .. } | PatternKind::HolsteinReference => vec![DIAG],
            PatternKind::Crossed => vec![DIAG, ANTI],
            PatternKind::BipartiteParallel => {
                if (m + n).rem_euclid(2) == 0 {
                    vec![[1.0, 0.0]]
                } else {
                    vec![[0.0, 1.0]]
                }
            }
        };
        let axes: Vec<[f64; 2]> = axes.into_iter().map(|v| rotate(v, self.rotation)).collect();
        let spots = if self.d == 0.0 {
            vec![[0.0, 0.0]]
        } else {
            axes.iter().flat_map(|v| [[self.d * v[0], self.d * v[1]], [-self.d * v[0], -self.d * v[1]]]).collect()
        };
        (spots, axes)
    }

    pub fn site(&self, a: f64, m: i64, n: i64) -> PhononSite {
        let off = self.center_offset(a);
        let center = [m as f64 * a + off[0], n as f64 * a + off[1]];
        let (disp, polarizations) = self.site_frame(m, n);
        let spots = disp.iter().map(|d| [center[0] + d[0], center[1] + d[1]]).collect();
        PhononSite { cell: (m, n), center, spots, polarizations }
    }

    /// All phonon sites whose cell index lies within `range` cells of the
    /// origin (a square window), in a fixed deterministic order.
    pub fn sites_in_window(&self, a: f64, range: i64) -> Vec<PhononSite> {
        let mut out = Vec::with_capacity(((2 * range + 1) * (2 * range + 1)) as usize);
        for m in -range..=range {
            for n in -range..=range {
                out.push(self.site(a, m, n));
            }
        }
        out
    }
}

fn gaussian(depth: f64, w: f64, dx: f64, dy: f64) -> f64 {
    -depth * (-2.0 * (dx * dx + dy * dy) / (w * w)).exp()
}

fn pancake(spec: &LatticeSpec, z: f64) -> f64 {
    -spec.v0_pan * (-2.0 * z * z / (spec.w_pan * spec.w_pan)).exp()
}

/// Number of neighbouring cells that can contribute above ~e⁻⁷² of a spot depth.
fn cell_reach(a: f64, w: f64) -> i64 {
    (6.0 * w / a).ceil() as i64 + 1
}

/// Total in-plane plus pancake potential seen by `species` at `position`
/// (x, y, z in µm), nK.
pub fn painted_potential(spec: &LatticeSpec, pattern: &SpotPattern, species: Species, position: [f64; 3]) -> f64 {
    let [x, y, z] = position;
    let a = spec.a;
    let in_plane = match species {
        Species::Fermion => {
            let reach = cell_reach(a, spec.w_f);
            let (m0, n0) = ((x / a).round() as i64, (y / a).round() as i64);
            let mut v = 0.0;
            for m in m0 - reach..=m0 + reach {
                for n in n0 - reach..=n0 + reach {
                    v += gaussian(spec.v0, spec.w_f, x - m as f64 * a, y - n as f64 * a);
                }
            }
            v
        }
        Species::Phonon => {
            let reach = cell_reach(a, pattern.w_ph + pattern.d) + 1;
            let (m0, n0) = ((x / a).floor() as i64, (y / a).floor() as i64);
            let mut v = 0.0;
            for m in m0 - reach..=m0 + reach {
                for n in n0 - reach..=n0 + reach {
                    v += site_potential(pattern, &pattern.site(a, m, n), x, y);
                }
            }
            v
        }
    };
    in_plane + pancake(spec, z)
}

fn site_potential(pattern: &SpotPattern, site: &PhononSite, x: f64, y: f64) -> f64 {
    let depth = pattern.v0_ph / site.spots.len() as f64;
    site.spots.iter().map(|s| gaussian(depth, pattern.w_ph, x - s[0], y - s[1])).sum()
}

fn nearest_site(spec: &LatticeSpec, pattern: &SpotPattern, p: [f64; 2]) -> PhononSite {
    let a = spec.a;
    let (m0, n0) = ((p[0] / a).floor() as i64, (p[1] / a).floor() as i64);
    let mut best: Option<(f64, PhononSite)> = None;
    for m in m0 - 2..=m0 + 2 {
        for n in n0 - 2..=n0 + 2 {
            let s = pattern.site(a, m, n);
            let d2 = (s.center[0] - p[0]).powi(2) + (s.center[1] - p[1]).powi(2);
            if best.as_ref().is_none_or(|(bd, _)| d2 < *bd) {
                best = Some((d2, s));
            }
        }
    }
    best.expect("window is non-empty").1
}

/// Hessian (nK/µm²) of the phonon potential of the isolated site centred
/// nearest to `site_center`, by Richardson-extrapolated central differences
/// with step `h = 1e-3 w_ph`.
///
/// Neighbouring sites are excluded: at typical spacings their tails shift
/// the curvature by ~e⁻¹⁸ relative, which is below any physical relevance
/// but would blur the comparison with the closed-form frequency.
pub fn dynamical_matrix(spec: &LatticeSpec, pattern: &SpotPattern, site_center: [f64; 2]) -> Result<[[f64; 2]; 2]> {
    let site = nearest_site(spec, pattern, site_center);
    let f = |x: f64, y: f64| site_potential(pattern, &site, x, y);
    let [x0, y0] = site_center;
    let h = 1e-3 * pattern.w_ph;

    let gx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2.0 * h);
    let gy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2.0 * h);
    let grad = gx.hypot(gy);
    // A displaced centre produces a gradient of order V0_ph·δ/w²; h² error is far below this.
    if grad > 1e-6 * pattern.v0_ph / pattern.w_ph {
        return Err(Error::NotAMinimum { gradient: grad });
    }

    let hess = |h: f64| {
        let f0 = f(x0, y0);
        let xx = (f(x0 + h, y0) - 2.0 * f0 + f(x0 - h, y0)) / (h * h);
        let yy = (f(x0, y0 + h) - 2.0 * f0 + f(x0, y0 - h)) / (h * h);
        let xy = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) / (4.0 * h * h);
        [xx, xy, yy]
    };
    let coarse = hess(h);
    let fine = hess(0.5 * h);
    let r: Vec<f64> = (0..3).map(|i| (4.0 * fine[i] - coarse[i]) / 3.0).collect();
    Ok([[r[0], r[1]], [r[1], r[2]]])
}

/// Convert a curvature in nK/µm² to J/m².
pub fn curvature_si(k_nk_per_um2: f64) -> f64 {
    units::nk_to_joule(k_nk_per_um2) / (units::MICRON * units::MICRON)
}

/// Normal modes of a 2×2 dynamical matrix (nK/µm²) for an atom of mass
/// `mass` (kg), sorted by descending frequency.
pub fn phonon_modes(matrix: [[f64; 2]; 2], mass: f64) -> Result<Vec<PhononMode>> {
    let a = matrix[0][0];
    let d = matrix[1][1];
    let b = 0.5 * (matrix[0][1] + matrix[1][0]);
    let mean = 0.5 * (a + d);
    let half = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    let (hi, lo) = (mean + half, mean - half);
    let tol = 1e-9 * hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE);

    // Eigenvector of the larger eigenvalue; degenerate case picks x.
    let v_hi = if half <= 1e-14 * mean.abs() {
        [1.0, 0.0]
    } else if a >= d {
        let v = [a - lo, b];
        let n = v[0].hypot(v[1]);
        [v[0] / n, v[1] / n]
    } else {
        let v = [b, d - lo];
        let n = v[0].hypot(v[1]);
        [v[0] / n, v[1] / n]
    };
    let v_lo = [-v_hi[1], v_hi[0]];

    let mut modes = Vec::with_capacity(2);
    for (ev, pol) in [(hi, v_hi), (lo, v_lo)] {
        if ev < -tol {
            return Err(Error::UnstableSite { eigenvalue: ev });
        }
        let k = curvature_si(ev.max(0.0));
        modes.push(PhononMode { omega: (k / mass).sqrt(), polarization: pol });
    }
    Ok(modes)
}

/// Closed-form frequency (rad/s) of the soft mode of two spots a distance
/// `2D` apart: `2 exp(−D²/w²) √(V0 (w² − 4D²) / (M w⁴))`.
pub fn two_spot_frequency(v0_ph: f64, w_ph: f64, d: f64, mass: f64) -> Result<f64> {
    if !(d >= 0.0 && d <= 0.5 * w_ph) {
        return Err(domain(format!("D = {d} µm outside [0, w_ph/2 = {} µm]", 0.5 * w_ph)));
    }
    let v0 = units::nk_to_joule(v0_ph);
    let w = w_ph * units::MICRON;
    let dd = d * units::MICRON;
    let arg = (v0 * (w * w - 4.0 * dd * dd) / (mass * w.powi(4))).max(0.0);
    Ok(2.0 * (-dd * dd / (w * w)).exp() * arg.sqrt())
}

/// Soft-mode frequency from the numerical Hessian of site `(0, 0)`.
pub fn numerical_soft_frequency(spec: &LatticeSpec, pattern: &SpotPattern, mass: f64) -> Result<f64> {
    let site = pattern.site(spec.a, 0, 0);
    let m = dynamical_matrix(spec, pattern, site.center)?;
    let modes = phonon_modes(m, mass)?;
    Ok(modes.last().expect("two modes").omega)
}
