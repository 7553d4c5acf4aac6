//! Fourier and Radon route: transforms of the hard-pair Mayer bond and ring
//! and two-loop diagrams evaluated in wavevector space.

mod loops;
mod tail;

use std::f64::consts::PI;

use crate::quadrature::{integrate_panels, uniform_breaks, QuadTolerance};
use crate::special::{ball_ratio, disk_ratio};
use crate::tolerances::K_MAX_SIGMA;
use crate::{Error, Result};

pub use loops::{loop_evaluate, loop_evaluate_with_tol, LoopAssignment};

/// Hard-pair Mayer bond of contact distance `sigma` in `dim` dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralKernel {
    sigma: f64,
    dim: u8,
}

impl SpectralKernel {
    pub fn new(sigma: f64, dim: u8) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::invalid(format!("contact distance must be > 0, got {sigma}")));
        }
        if dim != 2 && dim != 3 {
            return Err(Error::invalid(format!("dimension must be 2 or 3, got {dim}")));
        }
        Ok(Self { sigma, dim })
    }

    pub fn spheres(sigma: f64) -> Result<Self> {
        Self::new(sigma, 3)
    }

    pub fn disks(sigma: f64) -> Result<Self> {
        Self::new(sigma, 2)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Transform at σ = 1 as a function of x = kσ.
    fn unit_transform(&self, x: f64) -> f64 {
        match self.dim {
            2 => -2.0 * PI * disk_ratio(x),
            _ => -4.0 * PI * ball_ratio(x),
        }
    }

    /// `σ^{dim (nodes − 1)}`, the scale of a connected diagram on `nodes` particles.
    fn diagram_scale(&self, nodes: usize) -> f64 {
        self.sigma.powi(i32::from(self.dim) * (nodes as i32 - 1))
    }
}

/// Fourier transform of the Mayer bond: `−4π(sin kσ − kσ cos kσ)/k³` in 3D,
/// `−2πσ J1(kσ)/k` in 2D.
pub fn f_fourier(kernel: &SpectralKernel, k: f64) -> Result<f64> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::invalid(format!("wavenumber must be finite and >= 0, got {k}")));
    }
    Ok(kernel.unit_transform(k * kernel.sigma) * kernel.diagram_scale(2))
}

/// Integral of the Mayer bond over the hyperplane (line in 2D) at signed
/// distance `p` from the origin.
pub fn radon_profile(kernel: &SpectralKernel, p: f64) -> f64 {
    let s2 = kernel.sigma * kernel.sigma - p * p;
    if s2 <= 0.0 {
        return 0.0;
    }
    match kernel.dim {
        2 => -2.0 * s2.sqrt(),
        _ => -PI * s2,
    }
}

/// Default relative tolerance of the wavenumber quadratures; tighter than
/// the contract so that callers keep a margin.
pub const RING_REL_TOL: f64 = 1e-11;

fn ring_unit(m: usize, dim: u8, rel: f64) -> Result<f64> {
    let kernel = SpectralKernel { sigma: 1.0, dim };
    let m32 = m as u32;
    let jacobian = i32::from(dim) - 1;
    let integrand = |x: f64| kernel.unit_transform(x).powi(m as i32) * x.powi(jacobian);
    let body = integrate_panels(
        integrand,
        &uniform_breaks(0.0, K_MAX_SIGMA, 1.0),
        QuadTolerance::relative(rel).with_abs(1e-300),
    )?;
    let (series, prefactor) = match dim {
        2 => (tail::disk_ratio_series(12).pow(m32, 3 * m as i32 + 24), -2.0 * PI),
        _ => (tail::ball_ratio_series().pow(m32, i32::MAX), -4.0 * PI),
    };
    let tail = prefactor.powi(m as i32) * series.times_power(jacobian).tail(K_MAX_SIGMA);
    let angular = match dim {
        2 => 2.0 * PI / (2.0 * PI).powi(2),
        _ => 4.0 * PI / (2.0 * PI).powi(3),
    };
    Ok(angular * (body.value + tail))
}

/// Value of the m-ring diagram from the radial wavenumber integral of f̃^m.
///
/// The quadrature runs to kσ = 400; the remaining oscillatory tail is added
/// from the large-argument expansion of the transform.
pub fn ring_integral(m: usize, kernel: &SpectralKernel) -> Result<f64> {
    ring_integral_with_tol(m, kernel, RING_REL_TOL)
}

pub fn ring_integral_with_tol(m: usize, kernel: &SpectralKernel, rel: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::invalid(format!("ring size must be >= 2, got {m}")));
    }
    Ok(ring_unit(m, kernel.dim, rel)? * kernel.diagram_scale(m))
}
