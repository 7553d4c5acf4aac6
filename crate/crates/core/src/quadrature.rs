//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The integration range is seeded with caller-supplied panels; the panel with
//! the largest embedded error estimate is bisected until the summed estimate
//! meets the tolerance. The final sum runs over panels in left-to-right order,
//! so results do not depend on refinement history beyond the panel set.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

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
    0.063_092_092_629_978_55,
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

const ROUNDING_FLOOR: f64 = 100.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadTolerance {
    pub abs: f64,
    pub rel: f64,
    /// Maximum number of panels before giving up.
    pub max_panels: usize,
}

impl QuadTolerance {
    pub fn relative(rel: f64) -> Self {
        Self {
            abs: 0.0,
            rel,
            max_panels: 200_000,
        }
    }

    pub fn with_abs(mut self, abs: f64) -> Self {
        self.abs = abs;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
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
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// One Gauss–Kronrod 15-point rule on [lo, hi]; returns (K15, |K15 − G7|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// The embedded 7-point Gauss rule alone, for panels known to be resolved.
pub fn gauss7<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut sum = f(center) * WG[3];
    for j in 0..3 {
        let dx = half * XGK[2 * j + 1];
        sum += WG[j] * (f(center - dx) + f(center + dx));
    }
    sum * half
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Integrate `f` over `[breaks[0], breaks[last]]`, seeded with the panels
/// delimited by `breaks` (which must be strictly increasing).
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: QuadTolerance) -> Result<Integral> {
    if breaks.len() < 2 {
        return Err(Error::invalid("quadrature needs at least two breakpoints"));
    }
    let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
    for w in breaks.windows(2) {
        if w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::invalid("quadrature breakpoints must increase"));
        }
        let (value, error) = gk15(&f, w[0], w[1]);
        heap.push(Panel {
            lo: w[0],
            hi: w[1],
            value,
            error,
        });
    }

    loop {
        let total = neumaier_sum(heap.iter().map(|p| p.value));
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if !total.is_finite() {
            return Err(Error::NumericFailure {
                message: "non-finite integrand".into(),
                lower: breaks[0],
                upper: breaks[breaks.len() - 1],
                error_estimate: error,
            });
        }
        // errors below the rounding level of the panel sums cannot be resolved
        let floor = ROUNDING_FLOOR * heap.iter().map(|p| p.value.abs()).sum::<f64>();
        if error <= tol.abs.max(tol.rel * total.abs()).max(floor) {
            let mut panels = heap.into_vec();
            panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
            return Ok(Integral {
                value: neumaier_sum(panels.iter().map(|p| p.value)),
                error,
                panels: panels.len(),
            });
        }
        if heap.len() >= tol.max_panels {
            let worst = heap.peek().copied().expect("non-empty heap");
            return Err(Error::NumericFailure {
                message: format!(
                    "adaptive quadrature did not converge within {} panels (total error {error:e})",
                    tol.max_panels
                ),
                lower: worst.lo,
                upper: worst.hi,
                error_estimate: worst.error,
            });
        }
        // Re-split the worst panels in batches to amortize the summation above.
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let worst = heap.pop().expect("non-empty heap");
            let mid = 0.5 * (worst.lo + worst.hi);
            if !(mid > worst.lo && mid < worst.hi) {
                return Err(Error::NumericFailure {
                    message: "panel width reached machine resolution".into(),
                    lower: worst.lo,
                    upper: worst.hi,
                    error_estimate: worst.error,
                });
            }
            for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
                let (value, error) = gk15(&f, lo, hi);
                heap.push(Panel { lo, hi, value, error });
            }
        }
    }
}

/// Integrate over a single interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: QuadTolerance) -> Result<Integral> {
    integrate_panels(f, &[lo, hi], tol)
}

/// Breakpoints splitting `[lo, hi]` into panels of at most `width`.
pub fn uniform_breaks(lo: f64, hi: f64, width: f64) -> Vec<f64> {
    let n = ((hi - lo) / width).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        // K15 is exact for degree ≤ 22
        let r = integrate(|x| x.powi(10), 0.0, 1.0, QuadTolerance::relative(1e-14)).unwrap();
        assert!((r.value - 1.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_panels() {
        let breaks = uniform_breaks(0.0, 100.0, PI);
        let r = integrate_panels(|x| x.sin() * x.sin(), &breaks, QuadTolerance::relative(1e-13)).unwrap();
        let exact = 50.0 - (200.0f64).sin() / 4.0;
        assert!((r.value - exact).abs() < 1e-11);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, QuadTolerance::relative(1e-10)).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn gauss7_is_exact_to_degree_13() {
        let v = gauss7(&|x: f64| x.powi(13) + x.powi(12), 0.0, 1.0);
        assert!((v - (1.0 / 14.0 + 1.0 / 13.0)).abs() < 1e-15);
    }

    #[test]
    fn non_convergence_reports_failure() {
        let tol = QuadTolerance {
            abs: 0.0,
            rel: 1e-15,
            max_panels: 4,
        };
        let err = integrate(|x: f64| (1.0 / x.max(1e-300)).sin(), 0.0, 1.0, tol).unwrap_err();
        assert!(matches!(err, Error::NumericFailure { .. }));
    }
}
