//! Polynomial and piecewise-polynomial toolkit on the reference interval.

mod orthogonal;
mod piecewise;
mod poly;
mod quadrature;
mod roots;

pub use orthogonal::{
    gen_legendre, gen_legendre_family, gen_lobatto, gen_lobatto_family, legendre, lobatto_std,
    weighted_inner, RefInterface,
};
pub use piecewise::{PiecewisePoly, Side};
pub use poly::Poly;
pub use quadrature::{
    cardinal, gauss_legendre, gauss_rule, integrate_split, integrate_split_with, QuadRule,
};
pub use roots::roots_in;
