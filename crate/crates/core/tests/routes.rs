//! Agreement between the Monte Carlo, kinematic and wavevector routes.

use std::f64::consts::PI;

use mayer_core::clusters::ClusterGraph;
use mayer_core::geometry::Shape;
use mayer_core::measures::kinematic_b2;
use mayer_core::montecarlo::{cluster_integral_mc, cluster_integral_mc_mixed, SamplerConfig};
use mayer_core::spectral::{f_fourier, loop_evaluate, ring_integral, SpectralKernel};

fn ball() -> Shape {
    Shape::ball(0.5).unwrap()
}

#[test]
fn rings_match_monte_carlo() {
    let kernel = SpectralKernel::spheres(1.0).unwrap();
    for (m, seed) in [(4, 41), (5, 51)] {
        let g = ClusterGraph::ring(m).unwrap();
        let mc = cluster_integral_mc(&g, &ball(), &SamplerConfig::new(seed, 2_000_000)).unwrap();
        let ring = ring_integral(m, &kernel).unwrap();
        assert!(mc.consistent_with(ring, 3.0), "m={m}: {mc:?} vs {ring}");
    }
}

#[test]
fn disk_rings_match_monte_carlo() {
    let kernel = SpectralKernel::disks(1.0).unwrap();
    let disk = Shape::disk(0.5).unwrap();
    for (m, seed) in [(3, 31), (4, 42)] {
        let g = ClusterGraph::ring(m).unwrap();
        let mc = cluster_integral_mc(&g, &disk, &SamplerConfig::new(seed, 2_000_000)).unwrap();
        let ring = ring_integral(m, &kernel).unwrap();
        assert!(mc.consistent_with(ring, 3.0), "m={m}: {mc:?} vs {ring}");
    }
}

#[test]
fn theta_with_equal_chains_matches_monte_carlo() {
    // K_{2,3}: three two-bond chains between nodes 1 and 2
    let g = ClusterGraph::new(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
    let spectral = loop_evaluate(&g, &SpectralKernel::spheres(1.0).unwrap()).unwrap();
    let mc = cluster_integral_mc(&g, &ball(), &SamplerConfig::new(23, 2_000_000)).unwrap();
    assert!(mc.consistent_with(spectral, 3.0), "{mc:?} vs {spectral}");
}

#[test]
fn kinematic_matches_monte_carlo_for_sphere_pairs() {
    for (i, (ra, rb)) in [(0.5, 0.5), (0.3, 0.7), (1.0, 2.0)].into_iter().enumerate() {
        let a = Shape::ball(ra).unwrap();
        let b = Shape::ball(rb).unwrap();
        let edge = ClusterGraph::path(2).unwrap();
        let mc = cluster_integral_mc_mixed(&edge, &[a, b], &SamplerConfig::new(i as u64, 10_000))
            .unwrap()
            .scaled(-0.5);
        let kin = kinematic_b2(&a, &b).unwrap();
        assert!(mc.consistent_with(kin, 3.0), "{mc:?} vs {kin}");
        let fourier = -0.5 * f_fourier(&SpectralKernel::spheres(ra + rb).unwrap(), 0.0).unwrap();
        assert!((fourier - kin).abs() < 1e-10);
    }
}

#[test]
fn mixed_rod_and_ball_pair_matches_kinematic_formula() {
    let rod = Shape::spherocylinder(0.3, 2.0).unwrap();
    let ball = Shape::ball(0.4).unwrap();
    let edge = ClusterGraph::path(2).unwrap();
    let mc = cluster_integral_mc_mixed(&edge, &[rod, ball], &SamplerConfig::new(77, 1_000_000))
        .unwrap()
        .scaled(-0.5);
    let kin = kinematic_b2(&rod, &ball).unwrap();
    assert!(mc.consistent_with(kin, 3.0), "{mc:?} vs {kin}");
}

#[test]
fn triangle_of_rods_has_negative_sign_and_ring_of_rods_positive() {
    let rod = Shape::spherocylinder(0.5, 1.0).unwrap();
    let cfg = SamplerConfig::new(5, 200_000);
    let tri = cluster_integral_mc(&ClusterGraph::ring(3).unwrap(), &rod, &cfg).unwrap();
    let sq = cluster_integral_mc(&ClusterGraph::ring(4).unwrap(), &rod, &cfg).unwrap();
    assert!(tri.mean < 0.0 && sq.mean > 0.0);
    // isotropic limit: at l = 0 the rod is a ball of the same radius
    let stub = Shape::spherocylinder(0.5, 0.0).unwrap();
    let a = cluster_integral_mc(&ClusterGraph::ring(3).unwrap(), &stub, &cfg).unwrap();
    assert!(a.consistent_with(-5.0 * PI * PI / 6.0, 3.0));
}
