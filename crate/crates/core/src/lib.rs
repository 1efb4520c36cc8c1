//! Hypergraph Lagrangians, the 5-uniform constructions used to exhibit
//! non-jumping densities, a locally sparse random hypergraph builder, and a
//! verifier for the analytic maxima and sign claims behind those constructions.

pub mod constructions;
pub mod error;
pub mod hyg;
pub mod hypergraph;
pub mod lagrangian;
pub mod poly;
pub mod rational;
pub mod sparse;
pub mod verifier;

pub use constructions::{ConstructionParams, FamilyChoice};
pub use error::{Error, Result};
pub use hypergraph::{BlowupVector, Hypergraph};
pub use lagrangian::{
    brute_force_lagrangian, evaluate, gradient, kkt_residual, maximize, OptResult, OptimizerConfig,
    WeightVector,
};
pub use poly::{CompiledPolynomial, Polynomial};
pub use rational::Rational;
pub use sparse::{SparseBuild, SparseParams, SparsityReport};
pub use verifier::{Budget, ClaimReport, VerificationReport};
