//! Diagrams with one or two independent loops, evaluated with one
//! wavevector per loop.

use std::cell::RefCell;
use std::f64::consts::PI;

use super::{ring_integral_with_tol, SpectralKernel, RING_REL_TOL};
use crate::clusters::{cycle_basis, ClusterGraph};
use crate::quadrature::{gauss7, gk15, integrate_panels, uniform_breaks, QuadTolerance};
use crate::special::{ball_ratio, sinc};
use crate::tolerances::K_MAX_SIGMA;
use crate::{Error, Result};

/// Wavevector bookkeeping of a diagram: every edge (oriented from its lower
/// to its higher node) carries an integer combination of the loop
/// wavevectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopAssignment {
    pub graph: ClusterGraph,
    pub independent_wavevectors: usize,
    /// `edge_map[e][l]`: coefficient of loop wavevector `l` on edge `e`.
    pub edge_map: Vec<Vec<i32>>,
}

impl LoopAssignment {
    pub fn new(g: &ClusterGraph) -> Result<Self> {
        let basis = cycle_basis(g)?;
        Ok(Self {
            graph: g.clone(),
            independent_wavevectors: basis.loops.len(),
            edge_map: basis.edge_coefficients(g),
        })
    }

    /// Net outgoing wavevector coefficients at each node (index 0 is node 1).
    pub fn node_sums(&self) -> Vec<Vec<i32>> {
        let mut sums = vec![vec![0; self.independent_wavevectors]; self.graph.order()];
        for (&(a, b), coeff) in self.graph.edges().iter().zip(&self.edge_map) {
            for (l, &c) in coeff.iter().enumerate() {
                sums[a - 1][l] += c;
                sums[b - 1][l] -= c;
            }
        }
        sums
    }

    pub fn is_conserved(&self) -> bool {
        self.node_sums().iter().flatten().all(|&s| s == 0)
    }
}

/// Edge counts per wavevector class of a two-loop diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct TwoLoopClasses {
    first: usize,
    second: usize,
    shared: usize,
    bridges: usize,
}

fn classify(assignment: &LoopAssignment) -> Result<TwoLoopClasses> {
    let mut classes = TwoLoopClasses {
        first: 0,
        second: 0,
        shared: 0,
        bridges: 0,
    };
    let mut shared_kind = None;
    for c in &assignment.edge_map {
        match (c[0], c[1]) {
            (0, 0) => classes.bridges += 1,
            (a, 0) if a.abs() == 1 => classes.first += 1,
            (0, b) if b.abs() == 1 => classes.second += 1,
            (a, b) if a.abs() == 1 && b.abs() == 1 => {
                let kind = a * b;
                if shared_kind.is_some_and(|k| k != kind) {
                    return Err(Error::UnsupportedGraph(
                        "loops share edges with opposite relative orientation".into(),
                    ));
                }
                shared_kind = Some(kind);
                classes.shared += 1;
            }
            _ => {
                return Err(Error::UnsupportedGraph(format!(
                    "edge carries wavevector combination {c:?}"
                )))
            }
        }
    }
    Ok(classes)
}

/// Evaluate a diagram with one or two independent loops.
pub fn loop_evaluate(g: &ClusterGraph, kernel: &SpectralKernel) -> Result<f64> {
    loop_evaluate_with_tol(g, kernel, RING_REL_TOL)
}

pub fn loop_evaluate_with_tol(g: &ClusterGraph, kernel: &SpectralKernel, rel: f64) -> Result<f64> {
    let assignment = LoopAssignment::new(g)?;
    let unit = SpectralKernel::new(1.0, kernel.dim())?;
    let f0 = unit.unit_transform(0.0);
    let bridges_of = |loop_edges: usize| (g.edge_count() - loop_edges) as i32;
    let value = match assignment.independent_wavevectors {
        0 => {
            return Err(Error::UnsupportedGraph(
                "tree diagrams have no loop; they factor into single-bond integrals".into(),
            ))
        }
        1 => {
            let len = assignment.edge_map.iter().filter(|c| c[0] != 0).count();
            ring_integral_with_tol(len, &unit, rel)? * f0.powi(bridges_of(len))
        }
        2 => {
            let c = classify(&assignment)?;
            let rest = f0.powi(c.bridges as i32);
            if c.shared == 0 {
                ring_integral_with_tol(c.first, &unit, rel)? * ring_integral_with_tol(c.second, &unit, rel)? * rest
            } else if kernel.dim() == 3 {
                theta_unit(c.first, c.second, c.shared, rel)? * rest
            } else {
                return Err(Error::UnsupportedGraph(
                    "two loops sharing edges are only reduced for 3D kernels".into(),
                ));
            }
        }
        n => {
            return Err(Error::UnsupportedGraph(format!(
                "{n} independent loops; at most 2 are supported"
            )))
        }
    };
    Ok(value * kernel.diagram_scale(g.order()))
}

fn unit_f(x: f64) -> f64 {
    -4.0 * PI * ball_ratio(x)
}

/// `Φ_c(q) = ∫_0^q x f̃(x)^c dx` at σ = 1.
enum Antiderivative {
    /// c = 1: `−4π (1 − sin q / q)`.
    Single,
    /// Prefix sums of Gauss–Kronrod panels of width `h`.
    Table { power: i32, h: f64, prefix: Vec<f64> },
}

impl Antiderivative {
    fn new(power: usize, max: f64) -> Self {
        if power == 1 {
            return Self::Single;
        }
        let power = power as i32;
        let h = 0.25;
        let n = (max / h).ceil() as usize + 1;
        let f = |x: f64| x * unit_f(x).powi(power);
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for i in 0..n {
            acc += gk15(&f, i as f64 * h, (i + 1) as f64 * h).0;
            prefix.push(acc);
        }
        Self::Table { power, h, prefix }
    }

    /// An upper bound of |Φ_c| over the tabulated range.
    fn bound(&self) -> f64 {
        match self {
            // |1 − sin q / q| < 1.22
            Self::Single => 4.0 * PI * 1.22,
            Self::Table { prefix, .. } => prefix.iter().fold(0.0f64, |m, v| m.max(v.abs())) * 1.01,
        }
    }

    fn eval(&self, q: f64) -> f64 {
        match self {
            Self::Single => -4.0 * PI * (1.0 - sinc(q)),
            Self::Table { power, h, prefix } => {
                let i = ((q / h) as usize).min(prefix.len() - 2);
                let lo = i as f64 * h;
                if q <= lo {
                    return prefix[i];
                }
                let f = |x: f64| x * unit_f(x).powi(*power);
                prefix[i] + gauss7(&f, lo, q)
            }
        }
    }
}

/// Theta diagram at σ = 1: three bond chains of lengths `a`, `b`, `c`
/// between two nodes. With the angle between the loop wavevectors
/// integrated out,
/// `(8π² / (2π)⁶) ∫∫ x y f̃(x)^a f̃(y)^b [Φ_c(x + y) − Φ_c(|x − y|)] dx dy`.
fn theta_unit(a: usize, b: usize, c: usize, rel: f64) -> Result<f64> {
    // the chains are interchangeable; keep the shortest under Φ
    let mut lens = [a, b, c];
    lens.sort_unstable();
    let [c, a, b] = lens;
    let phi = Antiderivative::new(c, 2.0 * K_MAX_SIGMA);
    let failure = RefCell::new(None);
    // the inner integral crosses zero, so its accuracy is set against a bound
    // of its magnitude rather than its value
    let breaks = uniform_breaks(0.0, K_MAX_SIGMA, 1.0);
    let envelope = integrate_panels(
        |y: f64| y * unit_f(y).abs().powi(b as i32),
        &breaks,
        QuadTolerance::relative(1e-6),
    )?;
    let inner_tol = QuadTolerance::relative(0.0).with_abs(0.01 * rel * envelope.value * 2.0 * phi.bound());

    let inner = |x: f64| -> f64 {
        let mut breaks = breaks.clone();
        if x > 0.0 && x < K_MAX_SIGMA {
            breaks.push(x);
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
        }
        let integrand = |y: f64| y * unit_f(y).powi(b as i32) * (phi.eval(x + y) - phi.eval((x - y).abs()));
        match integrate_panels(integrand, &breaks, inner_tol) {
            Ok(v) => v.value,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let outer = integrate_panels(
        |x: f64| x * unit_f(x).powi(a as i32) * inner(x),
        &breaks,
        QuadTolerance::relative(rel).with_abs(1e-300),
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(8.0 * PI * PI / (2.0 * PI).powi(6) * outer?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ring_integral;

    const FIG1: f64 = -17.35421852644294;

    fn spheres() -> SpectralKernel {
        SpectralKernel::spheres(1.0).unwrap()
    }

    #[test]
    fn assignments_conserve_at_every_node() {
        let graphs = [
            ClusterGraph::ring(3).unwrap(),
            ClusterGraph::ring_with_diagonal(),
            ClusterGraph::complete(4).unwrap(),
            ClusterGraph::complete(5).unwrap(),
            ClusterGraph::path(4).unwrap(),
        ];
        for g in graphs {
            let a = LoopAssignment::new(&g).unwrap();
            assert_eq!(a.independent_wavevectors, g.cyclomatic_number());
            assert!(a.is_conserved(), "{g}");
        }
    }

    #[test]
    fn single_loops_reduce_to_rings() {
        let k = spheres();
        let tri = loop_evaluate(&ClusterGraph::ring(3).unwrap(), &k).unwrap();
        assert_eq!(tri, ring_integral(3, &k).unwrap());
        // a pendant bond multiplies by f̃(0)
        let tadpole = ClusterGraph::new(4, [(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let v = loop_evaluate(&tadpole, &k).unwrap();
        assert!((v / (tri * (-4.0 * PI / 3.0)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unsupported_diagrams() {
        let k = spheres();
        assert!(matches!(
            loop_evaluate(&ClusterGraph::path(4).unwrap(), &k),
            Err(Error::UnsupportedGraph(_))
        ));
        assert!(matches!(
            loop_evaluate(&ClusterGraph::complete(4).unwrap(), &k),
            Err(Error::UnsupportedGraph(_))
        ));
        let disks = SpectralKernel::disks(1.0).unwrap();
        assert!(matches!(
            loop_evaluate(&ClusterGraph::ring_with_diagonal(), &disks),
            Err(Error::UnsupportedGraph(_))
        ));
    }

    #[test]
    fn figure_eight_factorizes() {
        let k = spheres();
        let bowtie = ClusterGraph::new(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let v = loop_evaluate(&bowtie, &k).unwrap();
        let r3 = ring_integral(3, &k).unwrap();
        assert!((v / (r3 * r3) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fig1_diagram_value() {
        let v = loop_evaluate(&ClusterGraph::ring_with_diagonal(), &spheres()).unwrap();
        assert!((v / FIG1 - 1.0).abs() < 1e-8, "{v}");
        let half = loop_evaluate(&ClusterGraph::ring_with_diagonal(), &SpectralKernel::spheres(0.5).unwrap()).unwrap();
        assert!((half / (FIG1 * 0.5f64.powi(9)) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn tabulated_antiderivative_matches_closed_form_path() {
        // Φ_2 against direct quadrature
        let phi = Antiderivative::new(2, 50.0);
        for q in [0.1, 1.0, 7.3, 49.9] {
            let direct = crate::quadrature::integrate(
                |x| x * unit_f(x).powi(2),
                0.0,
                q,
                QuadTolerance::relative(1e-14).with_abs(1e-300),
            )
            .unwrap()
            .value;
            assert!((phi.eval(q) - direct).abs() < 1e-12 * direct.abs().max(1.0), "q={q}");
        }
    }
}
