//! Manufactured solutions, the Gauss–Lobatto projection, error norms,
//! discrete norms and convergence-rate regression.

mod discrete;
mod exact;
mod field;
mod norms;
mod projection;

pub use discrete::{discrete_norms, gauss_norms, pi_h, DiscreteNorms, DualField};
pub use exact::{manufactured, ExactSolution, ManufacturedParams, SolutionKind};
pub use field::{Difference, FluxField};
pub use norms::{
    error_report, error_report_between, fit_rate, fit_rates, max_sampled, sample_points,
    sobolev_norms, ErrorReport, Norm, RateFit, Rates, ROUNDOFF_FLOOR,
};
pub use projection::gl_projection;
