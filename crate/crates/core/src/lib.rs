//! High-order immersed finite volume methods for one-dimensional elliptic
//! interface problems.

// `!(a < b)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod meshing;
pub mod polykit;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub use num_rational::BigRational;

pub type Poly64 = polykit::Poly<f64>;
/// Polynomial with exact rational coefficients.
pub type ExactPoly = polykit::Poly<BigRational>;
pub type PiecewisePoly64 = polykit::PiecewisePoly<f64>;
pub type ExactPiecewisePoly = polykit::PiecewisePoly<BigRational>;
pub type RefInterface64 = polykit::RefInterface<f64>;
pub type ExactRefInterface = polykit::RefInterface<BigRational>;
pub type Mesh64 = meshing::Mesh<f64>;
pub type MeshPair64 = meshing::MeshPair<f64>;
pub type InterfaceProblem64 = solver::InterfaceProblem<f64>;
pub type SolutionField64 = solver::SolutionField<f64>;
pub type ExactSolution64 = analysis::ExactSolution<f64>;
