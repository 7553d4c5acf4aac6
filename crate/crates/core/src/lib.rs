//! Mayer cluster integrals and virial coefficients of hard convex particles.
//!
//! Three independent routes are provided and cross-checked against each other:
//!
//! * [`montecarlo`]: direct sampling of cluster integrals over positions and
//!   orientations, assembled into virial coefficients from star diagrams.
//! * [`measures`]: integral geometry. Curvature measures, the kinematic
//!   formula for the second virial coefficient and the weight-function
//!   deconvolution of the hard-sphere Mayer bond.
//! * [`spectral`]: Fourier and Radon transforms of the Mayer bond, used to
//!   evaluate ring and two-loop diagrams under per-loop wavevector conservation.
//!
//! [`geometry`] and [`clusters`] supply the shapes and diagrams all three
//! routes operate on.

pub mod clusters;
pub mod error;
pub mod geometry;
pub mod measures;
pub mod montecarlo;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod spectral;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
