//! IFVM and reference IFEM assembly, banded direct solve, and side-aware
//! evaluation of the discrete solution.

mod assemble;
mod banded;
mod field;
mod problem;

pub use assemble::{
    assemble_ifem, assemble_ifem_on, assemble_ifvm, assemble_ifvm_on, solve, DofMap, LinearSystem,
};
pub use banded::{BandedLu, BandedMatrix};
pub use field::{conservation_residual, EvalSide, SolutionField};
pub use problem::{InterfaceProblem, Source};
