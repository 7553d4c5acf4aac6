//! Monte Carlo evaluation of cluster integrals and virial coefficients.

mod estimate;
mod sampler;

pub use estimate::{estimate_mean, estimate_mean_with, merge_estimates, MCEstimate, SamplerConfig};
pub use sampler::{
    ball_volume, cluster_integral_box, cluster_integral_mc, cluster_integral_mc_mixed, virial_coefficient_mc,
    virial_coefficient_mc_detailed, BoxSampler, ClusterSampler, Configuration, StarContribution, VirialEstimate,
};
