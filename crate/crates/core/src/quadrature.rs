//! Adaptive Gauss–Kronrod (7/15) quadrature in one and two dimensions.
//!
//! Used as the independent check on the closed-form lattice Green's
//! integrals, so it deliberately shares no code with them.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 0.0, rel: 1e-12, max_intervals: 2000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration of `f` over `[a, b]`: the interval with
/// the largest error estimate is bisected until the total error is below
/// `max(tol.abs, tol.rel·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Estimate {
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut intervals = 1;
    loop {
        let target = tol.abs.max(tol.rel * total.abs());
        if total_err <= target {
            return Estimate { value: total, error: total_err, intervals, converged: true };
        }
        if intervals >= tol.max_intervals {
            return Estimate { value: total, error: total_err, intervals, converged: false };
        }
        let worst = heap.pop().expect("heap never empty");
        let m = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&f, worst.a, m);
        let (v2, e2) = gk15(&f, m, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: m, value: v1, error: e1 });
        heap.push(Piece { a: m, b: worst.b, value: v2, error: e2 });
        intervals += 1;
    }
}

/// Iterated integral `∫_a^b dx ∫_c^d dy f(x, y)`, adaptive in both directions.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (a, b): (f64, f64),
    (c, d): (f64, f64),
    outer: Tolerance,
    inner: Tolerance,
) -> Estimate {
    let mut all_converged = true;
    let cell = std::cell::Cell::new(true);
    let est = integrate(
        |x| {
            let e = integrate(|y| f(x, y), c, d, inner);
            if !e.converged {
                cell.set(false);
            }
            e.value
        },
        a,
        b,
        outer,
    );
    all_converged &= cell.get();
    Estimate { converged: est.converged && all_converged, ..est }
}
