//! Exact ergodic optimization on edge shifts of finite directed graphs.
//!
//! The dynamical system is the shift on bi-infinite edge paths of a
//! [`Graph`]; potentials depend on the current edge only, so every invariant
//! measure is seen through its edge-frequency vector, a point of the flow
//! polytope. All decisions (uniqueness, differentiability, hyperplane
//! membership) use exact rationals.
//!
//! Module map:
//!
//! * [`graph`], [`measure`], [`rational`], [`recode`]: data model.
//! * [`cycles`], [`optimize`]: maximum cycle mean, critical graph, the
//!   brute-force oracle.
//! * [`convexity`]: directional derivatives of the maximum ergodic average.
//! * [`typicality`]: hyperplane arrangement, Monte Carlo, perturbation and
//!   stability experiments.
//! * [`cli`]: instance files and the command-line front end.

pub mod cli;
pub mod convexity;
pub mod cycles;
pub mod error;
pub mod graph;
pub mod measure;
pub mod optimize;
pub mod rational;
pub mod recode;
pub mod typicality;

pub use error::{Error, Result};
pub use graph::{build_graph, Edge, Graph};
pub use measure::{cycle_to_measure, integrate, sup_norm, validate_measure, CycleMeasure, Measure, Potential};
pub use rational::Rational;
