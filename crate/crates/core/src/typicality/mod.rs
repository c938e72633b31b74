//! Typicality of uniqueness: the hyperplane arrangement that covers every
//! non-unique potential, Monte Carlo tie frequencies, perturbation to
//! uniqueness, and the stability of critical graphs under small
//! perturbations.

mod hyperplanes;
mod sampling;

pub use hyperplanes::{build_hyperplanes, covering_check, enumerate_cycle_measures, Arrangement, Hyperplane};
pub use sampling::{
    monte_carlo, perturb_to_unique, sample_potential, uniform_perturbation, usc_inclusion_check, usc_inclusion_for,
    MonteCarloReport, Perturbation, PERTURB_RETRY_BUDGET,
};
