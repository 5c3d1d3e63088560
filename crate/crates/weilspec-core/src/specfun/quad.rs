//! Adaptive Gauss-Kronrod quadrature with caller-supplied phase nodes.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Outcome of a quadrature: value, a conservative error estimate, and the
/// number of integrand evaluations spent.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const MAX_PANELS: usize = 4000;

// 15-point Kronrod extension of 7-point Gauss (positive abscissae).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

// 15-point Gauss-Legendre (positive abscissae), used for fixed panel grids.
const XGL15: [f64; 8] = [
    0.987_992_518_020_485_4,
    0.937_273_392_400_706,
    0.848_206_583_410_427_2,
    0.724_417_731_360_17,
    0.570_972_172_608_538_8,
    0.394_151_347_077_563_4,
    0.201_194_093_997_434_5,
    0.0,
];
const WGL15: [f64; 8] = [
    0.030_753_241_996_117_27,
    0.070_366_047_488_108_12,
    0.107_159_220_467_171_9,
    0.139_570_677_926_154_3,
    0.166_269_205_816_993_9,
    0.186_161_000_015_562_2,
    0.198_431_485_327_111_6,
    0.202_578_241_925_561_3,
];

/// Fixed 15-point Gauss-Legendre rule on `[a, b]`.
pub fn integrate_gl15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = WGL15[7] * f(c);
    for i in 0..7 {
        let d = h * XGL15[i];
        sum += WGL15[i] * (f(c - d) + f(c + d));
    }
    sum * h
}

/// Scaled GL15 nodes and weights on `[0, 1]`, ascending in the node.
pub(crate) fn gl15_unit() -> [(f64, f64); 15] {
    let mut out = [(0.0, 0.0); 15];
    for i in 0..7 {
        out[i] = (0.5 * (1.0 - XGL15[i]), 0.5 * WGL15[i]);
        out[14 - i] = (0.5 * (1.0 + XGL15[i]), 0.5 * WGL15[i]);
    }
    out[7] = (0.5, 0.5 * WGL15[7]);
    out
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let d = h * XGK[i];
        let pair = f(c - d) + f(c + d);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * h;
    // |K - G| can round to exactly zero when both rules are polynomial-exact
    // on the panel; floor the estimate at the roundoff of the panel value.
    let error = ((kronrod - gauss).abs() * h.abs()).max(0.5 * f64::EPSILON * value.abs());
    (value, error)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_adaptive(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_adaptive_with_nodes(&mut f, a, b, tol, &[])
}

/// Adaptive integration with the initial panels split at the given interior
/// nodes. For oscillatory weights, pass the phase nodes of the integrand:
/// starting panels that straddle a sign lobe defeat the error estimator.
pub fn integrate_adaptive_with_nodes(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    nodes: &[f64],
) -> Result<QuadratureResult> {
    assert!(a < b, "need a < b");
    assert!(tol > 0.0, "need tol > 0");
    let mut cuts = vec![a];
    cuts.extend(nodes.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for w in cuts.windows(2) {
        let (value, error) = gk15(f, w[0], w[1]);
        evaluations += 15;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    // The split budget is on refinement beyond the caller-supplied panels.
    let panel_cap = cuts.len() - 1 + MAX_PANELS;
    loop {
        let total_error: f64 = heap.iter().map(|p| p.error).sum();
        if total_error <= tol {
            break;
        }
        if heap.len() >= panel_cap {
            let value = heap.iter().map(|p| p.value).sum();
            return Err(Error::QuadratureNonConvergence {
                value,
                error_estimate: total_error,
                panels: heap.len(),
                tol,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel narrower than f64 resolution; keep it as is.
            let mut kept = worst;
            kept.error = 0.0;
            heap.push(kept);
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(f, lo, hi);
            evaluations += 15;
            heap.push(Panel {
                a: lo,
                b: hi,
                value,
                error,
            });
        }
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    // Deterministic low-to-high summation order.
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(QuadratureResult {
        value: panels.iter().map(|p| p.value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        evaluations,
    })
}
