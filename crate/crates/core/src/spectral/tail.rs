//! Tails `∫_X^∞ g(x) dx` of integrands that are, for large x, finite sums
//! of `x^{−p} e^{inx}` terms.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::special::hankel_coefficients;

/// Σ c · x^{−p} e^{inx}, keyed by (2p, n); real-valued by construction.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct OscSeries {
    terms: BTreeMap<(i32, i32), Complex64>,
}

impl OscSeries {
    fn single(twice_p: i32, n: i32, c: Complex64) -> Self {
        let mut s = Self::default();
        s.add(twice_p, n, c);
        s
    }

    fn add(&mut self, twice_p: i32, n: i32, c: Complex64) {
        *self.terms.entry((twice_p, n)).or_default() += c;
    }

    pub(crate) fn mul(&self, other: &Self, max_twice_p: i32) -> Self {
        let mut out = Self::default();
        for (&(pa, na), &ca) in &self.terms {
            for (&(pb, nb), &cb) in &other.terms {
                if pa + pb <= max_twice_p {
                    out.add(pa + pb, na + nb, ca * cb);
                }
            }
        }
        out
    }

    pub(crate) fn pow(&self, m: u32, max_twice_p: i32) -> Self {
        let mut out = Self::single(0, 0, Complex64::new(1.0, 0.0));
        for _ in 0..m {
            out = out.mul(self, max_twice_p);
        }
        out
    }

    /// Multiply by x^{power}.
    pub(crate) fn times_power(&self, power: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(p, n), &c)| ((p - 2 * power, n), c)).collect(),
        }
    }

    #[cfg(test)]
    pub(crate) fn eval(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(p, n), &c)| (c * Complex64::from_polar(x.powf(-0.5 * f64::from(p)), f64::from(n) * x)).re)
            .sum()
    }

    /// ∫_X^∞ of the series.
    pub(crate) fn tail(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(p, n), &c)| (c * power_exp_tail(0.5 * f64::from(p), n, x)).re)
            .sum()
    }
}

/// ∫_X^∞ x^{−p} e^{inx} dx for p > 1, via repeated integration by parts
/// (stopped at the smallest term when n ≠ 0).
fn power_exp_tail(p: f64, n: i32, x: f64) -> Complex64 {
    if n == 0 {
        return Complex64::new(x.powf(1.0 - p) / (p - 1.0), 0.0);
    }
    let i_n = Complex64::new(0.0, f64::from(n));
    let mut term = Complex64::new(x.powf(-p), 0.0) / i_n;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut previous = f64::INFINITY;
    for k in 0..200 {
        let size = term.norm();
        if size >= previous {
            break;
        }
        sum += term;
        if size <= 1e-18 * sum.norm() {
            break;
        }
        previous = size;
        term *= (p + f64::from(k)) / (i_n * x);
    }
    -Complex64::from_polar(1.0, f64::from(n) * x) * sum
}

/// Large-x expansion of (sin x − x cos x)/x³.
pub(crate) fn ball_ratio_series() -> OscSeries {
    let mut s = OscSeries::default();
    // sin x / x³, sin x = (e^{ix} − e^{−ix})/(2i)
    s.add(6, 1, Complex64::new(0.0, -0.5));
    s.add(6, -1, Complex64::new(0.0, 0.5));
    // −cos x / x²
    s.add(4, 1, Complex64::new(-0.5, 0.0));
    s.add(4, -1, Complex64::new(-0.5, 0.0));
    s
}

/// Hankel expansion of J1(x)/x truncated after `count` terms.
pub(crate) fn disk_ratio_series(count: usize) -> OscSeries {
    let a = hankel_coefficients(1, count);
    let amp = (2.0 / PI).sqrt();
    let phase = Complex64::from_polar(1.0, -0.75 * PI);
    let mut s = OscSeries::default();
    for (t, &at) in a.iter().enumerate() {
        // P cos ω − Q sin ω with P = Σ (−1)^j a_{2j} x^{−2j}, Q = Σ (−1)^j a_{2j+1} x^{−2j−1}
        let sign = if (t / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let (cos_c, sin_c) = if t % 2 == 0 { (sign * at, 0.0) } else { (0.0, -sign * at) };
        // cos ω = (e^{iω} + e^{−iω})/2, sin ω = (e^{iω} − e^{−iω})/(2i)
        let plus = Complex64::new(0.5 * cos_c, -0.5 * sin_c) * phase * amp;
        let minus = Complex64::new(0.5 * cos_c, 0.5 * sin_c) * phase.conj() * amp;
        // x^{−1/2 − t} · x^{−1}
        let twice_p = 3 + 2 * t as i32;
        s.add(twice_p, 1, plus);
        s.add(twice_p, -1, minus);
    }
    s
}
