//! Integral-geometry route: curvature measures, the kinematic formula for
//! the second virial coefficient, and the weight-function deconvolution of
//! the hard-sphere Mayer bond.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::geometry::{minkowski_functionals, principal_curvatures, surface_sample, Shape};
use crate::montecarlo::{estimate_mean, MCEstimate, SamplerConfig};
use crate::special::{ball_ratio, sinc};
use crate::{Error, Result};

/// Labels of the scalar and vector hard-sphere weight functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightLabel {
    W0,
    W1,
    W2,
    W3,
    WV1,
    WV2,
}

impl WeightLabel {
    pub const ALL: [WeightLabel; 6] = [Self::W0, Self::W1, Self::W2, Self::W3, Self::WV1, Self::WV2];

    pub fn rank(self) -> u8 {
        match self {
            Self::WV1 | Self::WV2 => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::W0 => "w0",
            Self::W1 => "w1",
            Self::W2 => "w2",
            Self::W3 => "w3",
            Self::WV1 => "wv1",
            Self::WV2 => "wv2",
        }
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::parse(0, s, "unknown weight label"))
    }
}

/// A weight function of a sphere of radius `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction {
    label: WeightLabel,
    radius: f64,
}

impl WeightFunction {
    pub fn new(label: WeightLabel, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid(format!("weight radius must be > 0, got {radius}")));
        }
        Ok(Self { label, radius })
    }

    pub fn label(&self) -> WeightLabel {
        self.label
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn rank(&self) -> u8 {
        self.label.rank()
    }
}

/// Fourier transform of a weight function at wavenumber `k`.
///
/// Scalar weights are real. Vector weights return their component along the
/// wavevector, `−i k w̃3` for wv2 and that over 4πR for wv1.
pub fn weight_fourier(w: &WeightFunction, k: f64) -> Result<Complex64> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::invalid(format!("wavenumber must be finite and >= 0, got {k}")));
    }
    let r = w.radius;
    let x = k * r;
    let w3 = 4.0 * PI * r * r * r * ball_ratio(x);
    let w2 = 4.0 * PI * r * r * sinc(x);
    let real = |v: f64| Complex64::new(v, 0.0);
    Ok(match w.label {
        WeightLabel::W3 => real(w3),
        WeightLabel::W2 => real(w2),
        WeightLabel::W1 => real(w2 / (4.0 * PI * r)),
        WeightLabel::W0 => real(w2 / (4.0 * PI * r * r)),
        WeightLabel::WV2 => Complex64::new(0.0, -k * w3),
        WeightLabel::WV1 => Complex64::new(0.0, -k * w3 / (4.0 * PI * r)),
    })
}

/// Pairing of two transforms: plain product for scalars, dot product with
/// conjugation of the first factor for vectors.
fn pair(a: Complex64, b: Complex64) -> f64 {
    (a.conj() * b).re
}

/// Fourier transform of the hard-sphere Mayer bond at contact distance sigma.
pub(crate) fn hard_sphere_f(sigma: f64, k: f64) -> f64 {
    -4.0 * PI * sigma.powi(3) * ball_ratio(k * sigma)
}

/// `|−f̃(k) − Σ pairs|` for spheres of radii `r1`, `r2`.
pub fn f_decomposition_residual(r1: f64, r2: f64, k: f64) -> Result<f64> {
    let t = |label, r| weight_fourier(&WeightFunction::new(label, r)?, k);
    use WeightLabel::*;
    let rhs = pair(t(W0, r1)?, t(W3, r2)?)
        + pair(t(W3, r1)?, t(W0, r2)?)
        + pair(t(W1, r1)?, t(W2, r2)?)
        + pair(t(W2, r1)?, t(W1, r2)?)
        - pair(t(WV1, r1)?, t(WV2, r2)?)
        - pair(t(WV2, r1)?, t(WV1, r2)?);
    Ok((-hard_sphere_f(r1 + r2, k) - rhs).abs())
}

/// Integrand of a surface curvature measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvaturePolynomial {
    /// 1
    Unit,
    /// (κ1 + κ2)/2
    Mean,
    /// κ1 κ2
    Gauss,
}

impl CurvaturePolynomial {
    pub fn evaluate(self, kappa: &[f64]) -> f64 {
        match self {
            Self::Unit => 1.0,
            Self::Mean => 0.5 * (kappa[0] + kappa[1]),
            Self::Gauss => kappa[0] * kappa[1],
        }
    }
}

fn require_3d(shape: &Shape) -> Result<()> {
    if shape.dim() != 3 {
        return Err(Error::invalid(format!(
            "curvature measures are defined for 3D bodies, got {}",
            shape.kind().name()
        )));
    }
    Ok(())
}

/// ∫ p(κ1, κ2) dA over the body surface, closed form.
pub fn curvature_measure(shape: &Shape, p: CurvaturePolynomial) -> Result<f64> {
    require_3d(shape)?;
    let m = minkowski_functionals(shape);
    Ok(match p {
        CurvaturePolynomial::Unit => m.surface,
        CurvaturePolynomial::Mean => m.mean_curvature_integral.expect("3D body"),
        // only the caps carry Gaussian curvature: a full sphere's worth, 1/r² over 4πr²
        CurvaturePolynomial::Gauss => 4.0 * PI,
    })
}

/// The same measure by area-uniform surface sampling.
pub fn curvature_measure_mc(shape: &Shape, p: CurvaturePolynomial, cfg: &SamplerConfig) -> Result<MCEstimate> {
    require_3d(shape)?;
    let shape = *shape;
    estimate_mean(cfg, 0, move |rng| {
        let s = surface_sample(&shape, rng);
        let kappa = principal_curvatures(&shape, &s.point).expect("sampled point lies on the surface");
        p.evaluate(&kappa) * s.total_measure
    })
}

/// Orientation-averaged excluded volume from the kinematic formula.
pub fn excluded_volume(a: &Shape, b: &Shape) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let (ma, mb) = (minkowski_functionals(a), minkowski_functionals(b));
    Ok(match (ma.mean_curvature_integral, mb.mean_curvature_integral) {
        (Some(ha), Some(hb)) => ma.volume + mb.volume + (ma.surface * hb + mb.surface * ha) / (4.0 * PI),
        _ => ma.volume + mb.volume + ma.surface * mb.surface / (2.0 * PI),
    })
}

/// Second virial coefficient `½ V_excl`.
pub fn kinematic_b2(a: &Shape, b: &Shape) -> Result<f64> {
    excluded_volume(a, b).map(|v| 0.5 * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(label: WeightLabel, r: f64, k: f64) -> Complex64 {
        weight_fourier(&WeightFunction::new(label, r).unwrap(), k).unwrap()
    }

    #[test]
    fn weight_limits_and_values() {
        assert!((w(WeightLabel::W3, 1.0, 0.0).re - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((w(WeightLabel::W3, 1.0, 1e-9).re - 4.0 * PI / 3.0).abs() < 1e-14);
        for r in [0.1, 1.0, 7.0] {
            assert_eq!(w(WeightLabel::W0, r, 0.0).re, 1.0);
        }
        assert!(w(WeightLabel::W2, 1.0, PI).re.abs() < 1e-14);
        assert_eq!(w(WeightLabel::WV2, 1.0, 0.0), Complex64::new(0.0, 0.0));
        assert!(weight_fourier(&WeightFunction::new(WeightLabel::W0, 1.0).unwrap(), -1.0).is_err());
        assert!(WeightFunction::new(WeightLabel::W0, 0.0).is_err());
    }

    #[test]
    fn fixed_weight_ratios() {
        for (r, k) in [(0.5, 0.0), (0.3, 2.0), (2.0, 17.5)] {
            let w2 = w(WeightLabel::W2, r, k);
            assert!((w(WeightLabel::W1, r, k) - w2 / (4.0 * PI * r)).norm() < 1e-15);
            assert!((w(WeightLabel::W0, r, k) - w2 / (4.0 * PI * r * r)).norm() < 1e-15);
            let wv2 = w(WeightLabel::WV2, r, k);
            assert!((w(WeightLabel::WV1, r, k) - wv2 / (4.0 * PI * r)).norm() < 1e-15);
            assert!((wv2.norm() - k * w(WeightLabel::W3, r, k).re.abs()).abs() < 1e-13);
        }
        assert_eq!(WeightLabel::WV1.rank(), 1);
        assert_eq!(WeightLabel::W3.rank(), 0);
        assert_eq!("wv2".parse::<WeightLabel>().unwrap(), WeightLabel::WV2);
    }

    #[test]
    fn decomposition_examples() {
        assert!(f_decomposition_residual(0.5, 0.5, 0.0).unwrap() < 1e-14);
        let scale = 4.0 * PI / 3.0;
        assert!(f_decomposition_residual(0.3, 0.7, 2.0).unwrap() <= 1e-10 * scale);
        assert!(f_decomposition_residual(0.5, 0.5, 50.0).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn decomposition_on_log_grid() {
        for (r1, r2) in [(0.5, 0.5), (0.3, 0.7), (1.0, 2.0)] {
            let f0 = hard_sphere_f(r1 + r2, 0.0).abs();
            for i in 0..512 {
                let k = 1e-3 * 1e5f64.powf(i as f64 / 511.0);
                assert!(f_decomposition_residual(r1, r2, k).unwrap() <= 1e-10 * f0, "k={k}");
            }
        }
    }

    #[test]
    fn curvature_examples() {
        let ball = Shape::ball(1.0).unwrap();
        let rod = Shape::spherocylinder(0.5, 1.0).unwrap();
        assert!((curvature_measure(&ball, CurvaturePolynomial::Gauss).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!((curvature_measure(&rod, CurvaturePolynomial::Gauss).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!((curvature_measure(&rod, CurvaturePolynomial::Mean).unwrap() - 3.0 * PI).abs() < 1e-12);
        assert!(curvature_measure(&Shape::disk(1.0).unwrap(), CurvaturePolynomial::Unit).is_err());
    }

    #[test]
    fn gauss_bonnet_sweep_and_basis_consistency() {
        for r in [0.25, 0.5, 1.0] {
            for l in [0.0, 1.0, 3.0] {
                let s = Shape::spherocylinder(r, l).unwrap();
                let m = minkowski_functionals(&s);
                assert!((curvature_measure(&s, CurvaturePolynomial::Gauss).unwrap() - 4.0 * PI).abs() < 1e-10);
                assert!((curvature_measure(&s, CurvaturePolynomial::Unit).unwrap() - m.surface).abs() < 1e-12);
                let mean = curvature_measure(&s, CurvaturePolynomial::Mean).unwrap();
                assert!((mean - m.mean_curvature_integral.unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampled_curvature_measures() {
        let rod = Shape::spherocylinder(0.5, 1.0).unwrap();
        let cfg = SamplerConfig::new(3, 200_000);
        let gauss = curvature_measure_mc(&rod, CurvaturePolynomial::Gauss, &cfg).unwrap();
        assert!(gauss.sigmas_from(4.0 * PI) < 3.0, "{gauss:?}");
        let mean = curvature_measure_mc(&rod, CurvaturePolynomial::Mean, &cfg).unwrap();
        assert!(mean.sigmas_from(3.0 * PI) < 3.0, "{mean:?}");
        let unit = curvature_measure_mc(&rod, CurvaturePolynomial::Unit, &cfg).unwrap();
        assert!((unit.mean / (2.0 * PI) - 1.0).abs() < 1e-12);
        let ball = curvature_measure_mc(&Shape::ball(2.0).unwrap(), CurvaturePolynomial::Gauss, &cfg).unwrap();
        assert!((ball.mean - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn kinematic_examples() {
        let ball = Shape::ball(0.5).unwrap();
        assert!((kinematic_b2(&ball, &ball).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);
        let disk = Shape::disk(1.0).unwrap();
        assert!((kinematic_b2(&disk, &disk).unwrap() - 2.0 * PI).abs() < 1e-12);
        let rod = Shape::spherocylinder(0.5, 1.0).unwrap();
        assert!((kinematic_b2(&rod, &rod).unwrap() - 6.02139).abs() < 5e-6);
        assert!(matches!(kinematic_b2(&ball, &disk), Err(Error::DimensionMismatch(3, 2))));
    }

    #[test]
    fn kinematic_matches_contact_ball_for_sphere_pairs() {
        for (ra, rb) in [(0.5, 0.5), (0.3, 0.7), (1.0, 2.0)] {
            let a = Shape::ball(ra).unwrap();
            let b = Shape::ball(rb).unwrap();
            let expected = 2.0 * PI / 3.0 * (ra + rb) * (ra + rb) * (ra + rb);
            assert!((kinematic_b2(&a, &b).unwrap() / expected - 1.0).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn decomposition_holds(r1 in 0.05f64..3.0, r2 in 0.05f64..3.0, k in 0.0f64..100.0) {
            let f0 = hard_sphere_f(r1 + r2, 0.0).abs();
            prop_assert!(f_decomposition_residual(r1, r2, k).unwrap() <= 1e-10 * f0);
        }

        #[test]
        fn kinematic_is_symmetric_and_homogeneous(
            r1 in 0.05f64..2.0, l1 in 0.0f64..3.0, r2 in 0.05f64..2.0, l2 in 0.0f64..3.0, lambda in 0.2f64..5.0
        ) {
            let a = Shape::spherocylinder(r1, l1).unwrap();
            let b = Shape::spherocylinder(r2, l2).unwrap();
            let ab = kinematic_b2(&a, &b).unwrap();
            prop_assert!((ab - kinematic_b2(&b, &a).unwrap()).abs() <= 1e-12 * ab);
            let scaled = kinematic_b2(&a.scaled(lambda).unwrap(), &b.scaled(lambda).unwrap()).unwrap();
            prop_assert!((scaled / (ab * lambda.powi(3)) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn gauss_measure_is_topological(r in 0.01f64..10.0, l in 0.0f64..20.0) {
            let s = Shape::spherocylinder(r, l).unwrap();
            prop_assert!((curvature_measure(&s, CurvaturePolynomial::Gauss).unwrap() - 4.0 * PI).abs() < 1e-10);
        }
    }
}
