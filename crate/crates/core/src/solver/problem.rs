use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polykit::Side;
use crate::scalar::Real;

/// Right-hand side `f(x)`; the side flag selects the one-sided limit at `α`.
pub type Source<T> = Arc<dyn Fn(T, Side) -> T + Send + Sync>;

/// `-(β u')' + γ u' + c u = f` on `(a, b)` with `β = β⁻` left of `α` and `β⁺`
/// right of it, continuity of `u` and `β u'` at `α`, and Dirichlet data.
#[derive(Clone)]
pub struct InterfaceProblem<T> {
    beta_minus: T,
    beta_plus: T,
    alpha: T,
    gamma: T,
    c: T,
    source: Source<T>,
    domain: (T, T),
    boundary: (T, T),
}

impl<T: Real> InterfaceProblem<T> {
    /// Pure diffusion problem with zero source and homogeneous data.
    pub fn new(beta_minus: T, beta_plus: T, alpha: T, domain: (T, T)) -> Result<Self> {
        for (name, b) in [("beta_minus", beta_minus), ("beta_plus", beta_plus)] {
            if !(b > T::zero()) || !b.is_finite() {
                return Err(Error::InvalidCoefficient(format!(
                    "{name} must be positive, got {b}"
                )));
            }
        }
        let (a, b) = domain;
        if !(a < b) {
            return Err(Error::InvalidMesh("empty domain".into()));
        }
        if !(alpha > a && alpha < b) {
            return Err(Error::AlphaOutsideDomain {
                alpha: alpha.approx(),
                a: a.approx(),
                b: b.approx(),
            });
        }
        Ok(InterfaceProblem {
            beta_minus,
            beta_plus,
            alpha,
            gamma: T::zero(),
            c: T::zero(),
            source: Arc::new(|_, _| T::zero()),
            domain,
            boundary: (T::zero(), T::zero()),
        })
    }

    /// Convection `γ` and reaction `c` coefficients.
    pub fn with_lower_order(mut self, gamma: T, c: T) -> Self {
        self.gamma = gamma;
        self.c = c;
        self
    }

    pub fn with_source(mut self, f: impl Fn(T, Side) -> T + Send + Sync + 'static) -> Self {
        self.source = Arc::new(f);
        self
    }

    /// Dirichlet values `u(a)`, `u(b)`.
    pub fn with_boundary(mut self, u_a: T, u_b: T) -> Self {
        self.boundary = (u_a, u_b);
        self
    }

    pub fn beta_minus(&self) -> T {
        self.beta_minus
    }

    pub fn beta_plus(&self) -> T {
        self.beta_plus
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn domain(&self) -> (T, T) {
        self.domain
    }

    pub fn boundary(&self) -> (T, T) {
        self.boundary
    }

    /// `f(x)`; off the interface the side is implied by `x`.
    pub fn source(&self, x: T, side: Side) -> T {
        (self.source)(x, self.side_of(x, side))
    }

    /// `β(x)`; `side` decides at `x = α`.
    pub fn beta(&self, x: T, side: Side) -> T {
        match self.side_of(x, side) {
            Side::Left => self.beta_minus,
            Side::Right => self.beta_plus,
        }
    }

    fn side_of(&self, x: T, side: Side) -> Side {
        if x < self.alpha {
            Side::Left
        } else if x > self.alpha {
            Side::Right
        } else {
            side
        }
    }
}

impl<T: Real> fmt::Debug for InterfaceProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InterfaceProblem")
            .field("beta_minus", &self.beta_minus)
            .field("beta_plus", &self.beta_plus)
            .field("alpha", &self.alpha)
            .field("gamma", &self.gamma)
            .field("c", &self.c)
            .field("domain", &self.domain)
            .field("boundary", &self.boundary)
            .finish_non_exhaustive()
    }
}
