//! Special functions used by the weight-function and Fourier routes.

use std::f64::consts::{FRAC_PI_4, PI};

/// Argument above which Bessel functions switch from the power series to
/// Hankel's asymptotic expansion.
pub const BESSEL_SPLIT: f64 = 12.0;

const BALL_SERIES_CUTOFF: f64 = 0.5;

/// `(sin x − x cos x) / x³`, the normalized Fourier transform of a ball
/// indicator (`4π R³` times this at `x = kR` is the transform itself).
///
/// Uses the Taylor series below `|x| = 0.5` where the closed form cancels.
pub fn ball_ratio(x: f64) -> f64 {
    let x = x.abs();
    if x < BALL_SERIES_CUTOFF {
        // Σ_{n≥1} (−1)^{n+1} 2n x^{2n−2} / (2n+1)!
        let x2 = x * x;
        let mut power = 1.0;
        let mut factorial = 6.0; // (2n+1)! at n = 1
        let mut sum = 0.0;
        for n in 1..20 {
            let term = 2.0 * n as f64 * power / factorial;
            sum += if n % 2 == 1 { term } else { -term };
            if term < 1e-18 * sum.abs() {
                break;
            }
            power *= x2;
            let m = 2.0 * n as f64;
            factorial *= (m + 2.0) * (m + 3.0);
        }
        sum
    } else {
        (x.sin() - x * x.cos()) / (x * x * x)
    }
}

/// `sin x / x`, continuous at zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Coefficients a_k(ν) of Hankel's expansion,
/// a_k = Π_{i=1..k} (4ν² − (2i−1)²) / (k! 8^k).
pub fn hankel_coefficients(order: u32, count: usize) -> Vec<f64> {
    let mu = 4.0 * f64::from(order * order);
    let mut a = Vec::with_capacity(count);
    let mut current = 1.0;
    for k in 0..count {
        a.push(current);
        let odd = (2 * k + 1) as f64;
        current *= (mu - odd * odd) / ((k + 1) as f64 * 8.0);
    }
    a
}

fn bessel_series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=order {
        term *= half / f64::from(k);
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..200u32 {
        term *= q / (f64::from(k) * f64::from(k + order));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn bessel_asymptotic(order: u32, x: f64) -> f64 {
    let a = hankel_coefficients(order, 60);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut last = f64::INFINITY;
    let mut power = 1.0;
    for (k, &coef) in a.iter().enumerate() {
        let term = coef * power;
        // asymptotic series: stop at the smallest term
        if term.abs() > last {
            break;
        }
        last = term.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if last < 1e-17 {
            break;
        }
        power /= x;
    }
    let phase = x - f64::from(order) * 0.5 * PI - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}

/// Bessel function of the first kind, order 0.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < BESSEL_SPLIT {
        bessel_series(0, ax)
    } else {
        bessel_asymptotic(0, ax)
    }
}

/// Bessel function of the first kind, order 1.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax < BESSEL_SPLIT {
        bessel_series(1, ax)
    } else {
        bessel_asymptotic(1, ax)
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// `J1(x) / x`, continuous at zero (value 1/2), the normalized Fourier
/// transform of a disk indicator.
pub fn disk_ratio(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-8 {
        0.5 - ax * ax / 16.0
    } else {
        bessel_j1(ax) / ax
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 40-digit evaluation.
    const J0_REF: [(f64, f64); 5] = [
        (0.5, 0.938_469_807_240_813),
        (2.404_825_557_695_773, 0.0),
        (10.0, -0.245_935_764_451_348_3),
        (12.5, 0.146_884_054_700_421_1),
        (40.0, 0.007_366_890_584_237_29),
    ];
    const J1_REF: [(f64, f64); 5] = [
        (0.5, 0.242_268_457_674_873_9),
        (3.831_705_970_207_512, 0.0),
        (10.0, 0.043_472_746_168_861_44),
        (12.5, -0.165_483_804_614_759_7),
        (40.0, 0.126_038_318_037_585),
    ];

    #[test]
    fn bessel_reference_values() {
        for (x, want) in J0_REF {
            assert!((bessel_j0(x) - want).abs() < 2e-12, "J0({x})");
        }
        for (x, want) in J1_REF {
            assert!((bessel_j1(x) - want).abs() < 2e-12, "J1({x})");
        }
    }

    #[test]
    fn bessel_continuous_across_split() {
        for order in [0, 1] {
            let gap = bessel_series(order, BESSEL_SPLIT) - bessel_asymptotic(order, BESSEL_SPLIT);
            assert!(gap.abs() < 2e-12, "order {order}: {gap:e}");
        }
    }

    #[test]
    fn ball_ratio_series_matches_closed_form() {
        for x in [0.3f64, 0.49, 0.5, 0.51] {
            let closed = (x.sin() - x * x.cos()) / (x * x * x);
            assert!((ball_ratio(x) - closed).abs() < 1e-13, "x = {x}");
        }
        assert_eq!(ball_ratio(0.0), 1.0 / 3.0);
    }

    #[test]
    fn disk_ratio_limit() {
        assert!((disk_ratio(0.0) - 0.5).abs() < 1e-15);
        assert!((disk_ratio(1e-3) - bessel_j1(1e-3) / 1e-3).abs() < 1e-14);
    }
}
