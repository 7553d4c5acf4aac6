use std::f64::consts::PI;

use nalgebra::{UnitQuaternion, Vector3};
use rand::Rng;

use super::{estimate_mean_with, MCEstimate, SamplerConfig};
use crate::clusters::{enumerate_stars, spanning_tree, ClusterGraph};
use crate::geometry::{random_orientation, segment_distance_sq, Point, Shape};
use crate::{Error, Result};

/// Volume of the dim-ball of the given radius.
pub fn ball_volume(dim: u8, radius: f64) -> f64 {
    match dim {
        2 => PI * radius * radius,
        _ => 4.0 / 3.0 * PI * radius * radius * radius,
    }
}

fn uniform_in_ball<R: Rng + ?Sized>(dim: u8, radius: f64, rng: &mut R) -> Point {
    loop {
        let x = 2.0 * rng.random::<f64>() - 1.0;
        let y = 2.0 * rng.random::<f64>() - 1.0;
        let z = if dim == 2 { 0.0 } else { 2.0 * rng.random::<f64>() - 1.0 };
        if x * x + y * y + z * z < 1.0 {
            return Vector3::new(x, y, z) * radius;
        }
    }
}

/// One sampled cluster configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub positions: Vec<Point>,
    pub orientations: Vec<UnitQuaternion<f64>>,
}

#[derive(Debug, Clone, Copy)]
struct TreeStep {
    parent: usize,
    child: usize,
    radius: f64,
}

/// Spanning-tree importance sampler for a connected diagram.
///
/// Particle 1 sits at the origin. Every other particle is placed uniformly
/// in the exclusion ball of its tree parent (radius = sum of bounding radii),
/// so each tree bond contributes −V_ball on its support and every sample
/// carries the weight (−1)^{|edges|} Π V_ball times the indicator that all
/// bonds overlap.
#[derive(Debug, Clone)]
pub struct ClusterSampler {
    dim: u8,
    shapes: Vec<Shape>,
    steps: Vec<TreeStep>,
    /// Bonds to test, zero-based, non-tree bonds first.
    checks: Vec<(usize, usize)>,
    weight: f64,
}

impl ClusterSampler {
    /// `shapes[i]` is the body of node i + 1.
    pub fn new(g: &ClusterGraph, shapes: &[Shape]) -> Result<Self> {
        if shapes.len() != g.order() {
            return Err(Error::invalid(format!(
                "{} shapes given for a graph of order {}",
                shapes.len(),
                g.order()
            )));
        }
        let dim = shapes[0].dim();
        if let Some(s) = shapes.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, s.dim()));
        }
        let tree = spanning_tree(g)?;
        let steps: Vec<TreeStep> = tree
            .edges()
            .into_iter()
            .map(|(p, c)| TreeStep {
                parent: p - 1,
                child: c - 1,
                radius: shapes[p - 1].bounding_radius() + shapes[c - 1].bounding_radius(),
            })
            .collect();

        let mut checks: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|&&(a, b)| !tree.contains(a, b))
            .map(|&(a, b)| (a - 1, b - 1))
            .collect();
        // tree bonds of round pairs overlap by construction
        checks.extend(
            steps
                .iter()
                .filter(|s| !(shapes[s.parent].is_round() && shapes[s.child].is_round()))
                .map(|s| (s.parent, s.child)),
        );

        let sign = if g.edge_count() & 1 == 0 { 1.0 } else { -1.0 };
        let weight = sign * steps.iter().map(|s| ball_volume(dim, s.radius)).product::<f64>();
        Ok(Self {
            dim,
            shapes: shapes.to_vec(),
            steps,
            checks,
            weight,
        })
    }

    /// Weight of a sample in which every bond overlaps.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn order(&self) -> usize {
        self.shapes.len()
    }

    pub fn empty_configuration(&self) -> Configuration {
        Configuration {
            positions: vec![Vector3::zeros(); self.shapes.len()],
            orientations: vec![UnitQuaternion::identity(); self.shapes.len()],
        }
    }

    /// Draw a configuration into `conf`; returns whether all bonds overlap.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, conf: &mut Configuration) -> bool {
        for (i, shape) in self.shapes.iter().enumerate() {
            if shape.is_anisotropic() {
                conf.orientations[i] = random_orientation(self.dim, rng);
            }
        }
        conf.positions[0] = Vector3::zeros();
        for s in &self.steps {
            conf.positions[s.child] = conf.positions[s.parent] + uniform_in_ball(self.dim, s.radius, rng);
        }
        self.all_bonds_overlap(conf)
    }

    fn all_bonds_overlap(&self, conf: &Configuration) -> bool {
        self.checks.iter().all(|&(a, b)| {
            let (sa, sb) = (&self.shapes[a], &self.shapes[b]);
            let contact = sa.radius() + sb.radius();
            let (pa, pb) = (conf.positions[a], conf.positions[b]);
            if sa.is_round() && sb.is_round() {
                (pa - pb).norm_squared() < contact * contact
            } else {
                let axis = |s: &Shape, q: &UnitQuaternion<f64>| q * Vector3::new(0.0, 0.0, 0.5 * s.length());
                let ha = axis(sa, &conf.orientations[a]);
                let hb = axis(sb, &conf.orientations[b]);
                segment_distance_sq(&(pa - ha), &(pa + ha), &(pb - hb), &(pb + hb)) < contact * contact
            }
        })
    }

    /// Integrand value of one fresh sample.
    pub fn sample_value<R: Rng + ?Sized>(&self, rng: &mut R, conf: &mut Configuration) -> f64 {
        if self.sample(rng, conf) {
            self.weight
        } else {
            0.0
        }
    }
}

/// Hit-or-miss sampler: particles 2..n uniform in a cube of side `side`
/// centered on particle 1. Kept as an independent oracle for the tree
/// sampler; the cube must contain every configuration the diagram connects.
#[derive(Debug, Clone)]
pub struct BoxSampler {
    dim: u8,
    graph: ClusterGraph,
    shapes: Vec<Shape>,
    side: f64,
    weight: f64,
}

impl BoxSampler {
    pub fn new(g: &ClusterGraph, shapes: &[Shape], side: f64) -> Result<Self> {
        if shapes.len() != g.order() {
            return Err(Error::invalid("one shape per node required"));
        }
        let dim = shapes[0].dim();
        let tree = spanning_tree(g)?;
        let reach = shapes.iter().map(|s| 2.0 * s.bounding_radius()).fold(0.0, f64::max);
        let depth = *tree.depth.iter().max().expect("non-empty");
        if 0.5 * side < depth as f64 * reach {
            return Err(Error::invalid(format!(
                "box side {side} does not cover the diagram extent {}",
                2.0 * depth as f64 * reach
            )));
        }
        let sign = if g.edge_count() & 1 == 0 { 1.0 } else { -1.0 };
        let weight = sign * side.powi(i32::from(dim) * (g.order() as i32 - 1));
        Ok(Self {
            dim,
            graph: g.clone(),
            shapes: shapes.to_vec(),
            side,
            weight,
        })
    }

    pub fn sample_value<R: Rng + ?Sized>(&self, rng: &mut R, conf: &mut Configuration) -> f64 {
        for (i, pos) in conf.positions.iter_mut().enumerate() {
            if i == 0 {
                *pos = Vector3::zeros();
                continue;
            }
            let mut coord = || (rng.random::<f64>() - 0.5) * self.side;
            let x = coord();
            let y = coord();
            let z = if self.dim == 2 { 0.0 } else { coord() };
            *pos = Vector3::new(x, y, z);
        }
        for (i, shape) in self.shapes.iter().enumerate() {
            if shape.is_anisotropic() {
                conf.orientations[i] = random_orientation(self.dim, rng);
            }
        }
        let hit = self.graph.edges().iter().all(|&(a, b)| {
            let (a, b) = (a - 1, b - 1);
            let pose = |i: usize| crate::geometry::Pose::new(conf.positions[i], conf.orientations[i]);
            crate::geometry::overlap(&self.shapes[a], &pose(a), &self.shapes[b], &pose(b)).unwrap_or(false)
        });
        if hit {
            self.weight
        } else {
            0.0
        }
    }
}

fn graph_stream(index: u64) -> u64 {
    index << 32
}

/// Cluster integral of `g` with every node carrying `shape`.
pub fn cluster_integral_mc(g: &ClusterGraph, shape: &Shape, cfg: &SamplerConfig) -> Result<MCEstimate> {
    cluster_integral_mc_mixed(g, &vec![*shape; g.order()], cfg)
}

/// Cluster integral with one shape per node (`shapes[i]` for node i + 1).
pub fn cluster_integral_mc_mixed(g: &ClusterGraph, shapes: &[Shape], cfg: &SamplerConfig) -> Result<MCEstimate> {
    cluster_integral_stream(g, shapes, cfg, 0)
}

fn cluster_integral_stream(g: &ClusterGraph, shapes: &[Shape], cfg: &SamplerConfig, stream: u64) -> Result<MCEstimate> {
    cfg.validate()?;
    let sampler = ClusterSampler::new(g, shapes)?;
    estimate_mean_with(cfg, stream, || sampler.empty_configuration(), |conf, rng| {
        sampler.sample_value(rng, conf)
    })
}

/// Hit-or-miss box estimate of the same integral as [`cluster_integral_mc`].
pub fn cluster_integral_box(g: &ClusterGraph, shape: &Shape, cfg: &SamplerConfig, side: f64) -> Result<MCEstimate> {
    cfg.validate()?;
    let shapes = vec![*shape; g.order()];
    let sampler = BoxSampler::new(g, &shapes, side)?;
    let template = Configuration {
        positions: vec![Vector3::zeros(); g.order()],
        orientations: vec![UnitQuaternion::identity(); g.order()],
    };
    estimate_mean_with(cfg, 0, || template.clone(), |conf, rng| sampler.sample_value(rng, conf))
}

/// One star diagram's share of a virial coefficient.
#[derive(Debug, Clone)]
pub struct StarContribution {
    pub graph: ClusterGraph,
    pub labeled_count: usize,
    pub integral: MCEstimate,
}

/// A virial coefficient together with its per-diagram integrals.
#[derive(Debug, Clone)]
pub struct VirialEstimate {
    pub order: usize,
    pub coefficient: MCEstimate,
    pub stars: Vec<StarContribution>,
}

/// B_order from the labeled star integrals; the sample budget is split
/// evenly across star diagrams, each on its own stream family.
pub fn virial_coefficient_mc(order: usize, shape: &Shape, cfg: &SamplerConfig) -> Result<MCEstimate> {
    virial_coefficient_mc_detailed(order, shape, cfg).map(|v| v.coefficient)
}

pub fn virial_coefficient_mc_detailed(order: usize, shape: &Shape, cfg: &SamplerConfig) -> Result<VirialEstimate> {
    if !(2..=5).contains(&order) {
        return Err(Error::UnsupportedOrder { order, min: 2, max: 5 });
    }
    cfg.validate()?;
    let stars = enumerate_stars(order)?;
    let per_star = (cfg.samples / stars.len() as u64).max(1);
    let star_cfg = SamplerConfig {
        samples: per_star,
        batch: cfg.batch.min(per_star),
        ..*cfg
    };
    let shapes = vec![*shape; order];
    let factorial: f64 = (1..=order).map(|i| i as f64).product();
    let prefactor = -((order - 1) as f64) / factorial;

    let mut mean = 0.0;
    let mut var = 0.0;
    let mut contributions = Vec::with_capacity(stars.len());
    for (index, star) in stars.into_iter().enumerate() {
        let integral = cluster_integral_stream(&star.graph, &shapes, &star_cfg, graph_stream(index as u64))?;
        let w = prefactor * star.labeled_count as f64;
        mean += w * integral.mean;
        var += (w * integral.stderr).powi(2);
        contributions.push(StarContribution {
            graph: star.graph,
            labeled_count: star.labeled_count,
            integral,
        });
    }
    Ok(VirialEstimate {
        order,
        coefficient: MCEstimate {
            mean,
            stderr: var.sqrt(),
            samples: per_star * contributions.len() as u64,
            seed: cfg.seed,
            workers: cfg.workers,
        },
        stars: contributions,
    })
}
