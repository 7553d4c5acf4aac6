//! Fixed identity checks across the three routes, with the contract
//! tolerances from [`crate::tolerances`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::clusters::{boundary_expand, enumerate_stars, ClusterGraph};
use crate::geometry::Shape;
use crate::measures::{curvature_measure, curvature_measure_mc, f_decomposition_residual, kinematic_b2, CurvaturePolynomial};
use crate::montecarlo::{cluster_integral_box, cluster_integral_mc, virial_coefficient_mc, SamplerConfig};
use crate::spectral::{f_fourier, ring_integral, LoopAssignment, SpectralKernel};
use crate::tolerances::{B3_RATIO_REL, CLOSED_FORM, MC_SIGMAS, QUADRATURE_REL};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Decomposition,
    GaussBonnet,
    Parseval,
    Boundary,
    CrossRoute,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Decomposition,
        Suite::GaussBonnet,
        Suite::Parseval,
        Suite::Boundary,
        Suite::CrossRoute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Decomposition => "decomposition",
            Suite::GaussBonnet => "gauss-bonnet",
            Suite::Parseval => "parseval",
            Suite::Boundary => "boundary",
            Suite::CrossRoute => "cross-route",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parse(0, s, "unknown suite"))
    }
}

/// How `tolerance` is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// |value − expected| ≤ tolerance
    Absolute,
    /// |value − expected| ≤ tolerance · |expected|
    Relative,
    /// |value − expected| ≤ tolerance · stderr
    Sigmas,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub criterion: Criterion,
    pub pass: bool,
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self { suite, checks: Vec::new() }
    }

    fn push(&mut self, name: String, value: f64, expected: f64, tolerance: f64, criterion: Criterion, pass: bool) {
        self.checks.push(Check {
            suite: self.suite,
            name,
            value,
            expected,
            tolerance,
            criterion,
            pass,
        });
    }

    fn absolute(&mut self, name: impl Into<String>, value: f64, expected: f64, tol: f64) {
        let pass = (value - expected).abs() <= tol;
        self.push(name.into(), value, expected, tol, Criterion::Absolute, pass);
    }

    fn relative(&mut self, name: impl Into<String>, value: f64, expected: f64, tol: f64) {
        let pass = (value - expected).abs() <= tol * expected.abs();
        self.push(name.into(), value, expected, tol, Criterion::Relative, pass);
    }

    fn sigmas(&mut self, name: impl Into<String>, est: &crate::montecarlo::MCEstimate, expected: f64) {
        let pass = est.consistent_with(expected, MC_SIGMAS);
        self.push(name.into(), est.mean, expected, MC_SIGMAS, Criterion::Sigmas, pass);
    }
}

/// Run one suite (or all of them, in a fixed order).
pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s)?);
            }
            Ok(all)
        }
        Suite::Decomposition => decomposition(),
        Suite::GaussBonnet => gauss_bonnet(),
        Suite::Parseval => parseval(),
        Suite::Boundary => boundary(),
        Suite::CrossRoute => cross_route(),
    }
}

/// 512 log-spaced wavenumbers in [1e−3, 100].
pub fn decomposition_grid() -> Vec<f64> {
    (0..512).map(|i| 1e-3 * 1e5f64.powf(i as f64 / 511.0)).collect()
}

pub const DECOMPOSITION_PAIRS: [(f64, f64); 3] = [(0.5, 0.5), (0.3, 0.7), (1.0, 2.0)];

fn decomposition() -> Result<Vec<Check>> {
    let mut r = Recorder::new(Suite::Decomposition);
    for (r1, r2) in DECOMPOSITION_PAIRS {
        let f0 = 4.0 * PI / 3.0 * (r1 + r2).powi(3);
        let mut worst = 0.0f64;
        for k in decomposition_grid() {
            worst = worst.max(f_decomposition_residual(r1, r2, k)? / f0);
        }
        r.absolute(format!("max residual / |f(0)|, R1={r1}, R2={r2}"), worst, 0.0, CLOSED_FORM);
    }
    Ok(r.checks)
}

fn gauss_bonnet() -> Result<Vec<Check>> {
    let mut r = Recorder::new(Suite::GaussBonnet);
    let mut shapes = vec![Shape::ball(1.0)?];
    for (rad, len) in [(0.25, 1.0), (0.5, 1.0), (1.0, 3.0)] {
        shapes.push(Shape::spherocylinder(rad, len)?);
    }
    for (i, shape) in shapes.iter().enumerate() {
        let closed = curvature_measure(shape, CurvaturePolynomial::Gauss)?;
        r.absolute(format!("closed form, {shape}"), closed, 4.0 * PI, CLOSED_FORM);
        let cfg = SamplerConfig::new(1000 + i as u64, 100_000);
        let est = curvature_measure_mc(shape, CurvaturePolynomial::Gauss, &cfg)?;
        r.sigmas(format!("surface sampling, {shape}"), &est, 4.0 * PI);
    }
    Ok(r.checks)
}

fn parseval() -> Result<Vec<Check>> {
    let mut r = Recorder::new(Suite::Parseval);
    for sigma in [0.5, 1.0, 2.0] {
        let v = ring_integral(2, &SpectralKernel::spheres(sigma)?)?;
        r.relative(format!("ring 2, sigma={sigma}"), v, 4.0 * PI / 3.0 * sigma.powi(3), QUADRATURE_REL);
    }
    let mut graphs = vec![ClusterGraph::ring_with_diagonal()];
    for order in 3..=5 {
        graphs.extend(enumerate_stars(order)?.into_iter().map(|s| s.graph));
    }
    let violations = graphs
        .iter()
        .map(|g| LoopAssignment::new(g).map(|a| a.node_sums().iter().flatten().filter(|&&s| s != 0).count()))
        .sum::<Result<usize>>()?;
    r.absolute(
        format!("nonzero node sums over {} loop assignments", graphs.len()),
        violations as f64,
        0.0,
        0.0,
    );
    Ok(r.checks)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn boundary() -> Result<Vec<Check>> {
    let mut r = Recorder::new(Suite::Boundary);
    for n in 2..=5 {
        for k in 1..=6 {
            let count = boundary_expand(k, n)?.len();
            let expected: usize = (1..=k.min(n)).map(|j| binomial(k, j)).sum();
            r.absolute(format!("terms k={k}, n={n}"), count as f64, expected as f64, 0.0);
        }
    }
    let two: Vec<String> = boundary_expand(2, 3)?.iter().map(ToString::to_string).collect();
    let literal = two == ["Σ1∩D2", "D1∩Σ2", "Σ1∩Σ2"];
    r.push("k=2, n=3 literal terms".into(), f64::from(u8::from(literal)), 1.0, 0.0, Criterion::Absolute, literal);
    Ok(r.checks)
}

fn cross_route() -> Result<Vec<Check>> {
    let mut r = Recorder::new(Suite::CrossRoute);
    let ball = Shape::ball(0.5)?;
    let kernel = SpectralKernel::spheres(1.0)?;
    let b2 = 2.0 * PI / 3.0;
    r.absolute("B2 kinematic", kinematic_b2(&ball, &ball)?, b2, CLOSED_FORM);
    r.absolute("B2 from -f(0)/2", -0.5 * f_fourier(&kernel, 0.0)?, b2, CLOSED_FORM);
    let edge = ClusterGraph::path(2)?;
    let boxed = cluster_integral_box(&edge, &ball, &SamplerConfig::new(21, 200_000), 2.5)?;
    r.sigmas("B2 hit-or-miss", &boxed.scaled(-0.5), b2);

    let cfg = SamplerConfig::new(22, 1_000_000);
    let b3 = virial_coefficient_mc(3, &ball, &cfg)?;
    r.relative("B3/B2^2 spheres", b3.mean / (b2 * b2), 0.625, B3_RATIO_REL);
    let triangle = cluster_integral_mc(&ClusterGraph::ring(3)?, &ball, &cfg)?;
    r.sigmas("triangle MC vs ring 3", &triangle, ring_integral(3, &kernel)?);

    let disk = Shape::disk(0.5)?;
    let b3 = virial_coefficient_mc(3, &disk, &cfg)?;
    let b2 = PI / 2.0;
    r.relative("B3/B2^2 disks", b3.mean / (b2 * b2), 4.0 / 3.0 - 3f64.sqrt() / PI, B3_RATIO_REL);
    Ok(r.checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes() {
        for s in Suite::EACH {
            for c in run_suite(s).unwrap() {
                assert!(c.pass, "{c:?}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
    }
}
