//! Pass/fail thresholds shared by the test suites and the `verify` command.
//!
//! These are contract values: `verify` always uses [`Tolerances::CONTRACT`],
//! exploratory CLI runs may override the quadrature tolerance.

/// Identities that hold exactly in closed form (B2 cross-routes, Gauss–Bonnet,
/// weight-function deconvolution relative to |f̃(0)|).
pub const CLOSED_FORM: f64 = 1e-10;

/// Scaling homogeneity and curvature-basis consistency of closed forms.
pub const HOMOGENEITY: f64 = 1e-12;

/// Relative tolerance of adaptive radial quadratures (ring integrals,
/// transform consistency, Parseval).
pub const QUADRATURE_REL: f64 = 1e-8;

/// Stochastic agreement is judged in units of the (combined) standard error.
pub const MC_SIGMAS: f64 = 3.0;

/// Absolute surface-membership tolerance, in units of the shape radius.
pub const SURFACE: f64 = 1e-9;

/// Relative tolerance for MC virial ratios B3/B2².
pub const B3_RATIO_REL: f64 = 0.01;

/// Relative tolerance for MC virial ratio B4/B2³.
pub const B4_RATIO_REL: f64 = 0.02;

/// Upper cutoff of radial wavenumber quadratures, in units of 1/σ.
pub const K_MAX_SIGMA: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub closed_form: f64,
    pub homogeneity: f64,
    pub quadrature_rel: f64,
    pub mc_sigmas: f64,
}

impl Tolerances {
    pub const CONTRACT: Tolerances = Tolerances {
        closed_form: CLOSED_FORM,
        homogeneity: HOMOGENEITY,
        quadrature_rel: QUADRATURE_REL,
        mc_sigmas: MC_SIGMAS,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::CONTRACT
    }
}
