use crate::analysis::FluxField;
use crate::error::{Error, Result};
use crate::polykit::Side;
use crate::scalar::Real;
use crate::solver::InterfaceProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// `cos(x)/β⁻` left of `α`, `cos(x)/β⁺ + (1/β⁻ - 1/β⁺) cos α` right of it.
    Smooth,
    /// The smooth solution plus `(x - α)^m / β⁺` right of `α`.
    Nonsmooth { m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedParams<T> {
    pub beta_minus: T,
    pub beta_plus: T,
    pub alpha: T,
    pub gamma: T,
    pub c: T,
    pub domain: (T, T),
}

impl<T: Real> ManufacturedParams<T> {
    /// Pure diffusion on `(0, 1)`.
    pub fn diffusion(beta_minus: T, beta_plus: T, alpha: T) -> Self {
        ManufacturedParams {
            beta_minus,
            beta_plus,
            alpha,
            gamma: T::zero(),
            c: T::zero(),
            domain: (T::zero(), T::one()),
        }
    }

    pub fn with_lower_order(mut self, gamma: T, c: T) -> Self {
        self.gamma = gamma;
        self.c = c;
        self
    }
}

/// Closed-form solution with its flux and the matching source term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSolution<T> {
    kind: SolutionKind,
    params: ManufacturedParams<T>,
}

pub fn manufactured<T: Real>(
    kind: SolutionKind,
    params: ManufacturedParams<T>,
) -> Result<ExactSolution<T>> {
    if !(params.beta_minus > T::zero() && params.beta_plus > T::zero()) {
        return Err(Error::InvalidCoefficient("beta must be positive".into()));
    }
    let (a, b) = params.domain;
    if !(params.alpha > a && params.alpha < b) {
        return Err(Error::AlphaOutsideDomain {
            alpha: params.alpha.approx(),
            a: a.approx(),
            b: b.approx(),
        });
    }
    if let SolutionKind::Nonsmooth { m } = kind {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "nonsmooth exponent must be >= 2, got {m}"
            )));
        }
    }
    Ok(ExactSolution { kind, params })
}

impl<T: Real> ExactSolution<T> {
    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn params(&self) -> &ManufacturedParams<T> {
        &self.params
    }

    fn side(&self, x: T, side: Side) -> Side {
        if x < self.params.alpha {
            Side::Left
        } else if x > self.params.alpha {
            Side::Right
        } else {
            side
        }
    }

    pub fn beta(&self, x: T, side: Side) -> T {
        match self.side(x, side) {
            Side::Left => self.params.beta_minus,
            Side::Right => self.params.beta_plus,
        }
    }

    /// `j`-th derivative of the extra term `(x - α)^m / β⁺`.
    fn extra(&self, x: T, j: u32) -> T {
        match self.kind {
            SolutionKind::Smooth => T::zero(),
            SolutionKind::Nonsmooth { m } if j > m => T::zero(),
            SolutionKind::Nonsmooth { m } => {
                let falling = (0..j).fold(1.0, |acc, k| acc * f64::from(m - k));
                T::lit(falling) * (x - self.params.alpha).powi((m - j) as i32)
                    / self.params.beta_plus
            }
        }
    }

    /// `j`-th derivative of `u` for `j ≤ 2`.
    fn nth(&self, x: T, side: Side, j: u32) -> T {
        let ManufacturedParams {
            beta_minus: bm,
            beta_plus: bp,
            alpha,
            ..
        } = self.params;
        let trig = match j {
            0 => x.cos(),
            1 => -x.sin(),
            _ => -x.cos(),
        };
        match self.side(x, side) {
            Side::Left => trig / bm,
            Side::Right => {
                let shift = if j == 0 {
                    (T::one() / bm - T::one() / bp) * alpha.cos()
                } else {
                    T::zero()
                };
                trig / bp + shift + self.extra(x, j)
            }
        }
    }

    pub fn value(&self, x: T, side: Side) -> T {
        self.nth(x, side, 0)
    }

    pub fn derivative(&self, x: T, side: Side) -> T {
        self.nth(x, side, 1)
    }

    pub fn second_derivative(&self, x: T, side: Side) -> T {
        self.nth(x, side, 2)
    }

    pub fn flux(&self, x: T, side: Side) -> T {
        self.beta(x, side) * self.derivative(x, side)
    }

    /// `f = -(β u')' + γ u' + c u`.
    pub fn source(&self, x: T, side: Side) -> T {
        -self.beta(x, side) * self.second_derivative(x, side)
            + self.params.gamma * self.derivative(x, side)
            + self.params.c * self.value(x, side)
    }

    /// `⟦β u^{(j)}(α)⟧` for `j ≤ 2`.
    pub fn flux_jump(&self, j: u32) -> T {
        let a = self.params.alpha;
        self.beta(a, Side::Right) * self.nth(a, Side::Right, j)
            - self.beta(a, Side::Left) * self.nth(a, Side::Left, j)
    }

    /// The boundary value problem this function solves.
    pub fn problem(&self) -> Result<InterfaceProblem<T>> {
        let p = self.params;
        let (a, b) = p.domain;
        let me = *self;
        Ok(
            InterfaceProblem::new(p.beta_minus, p.beta_plus, p.alpha, p.domain)?
                .with_lower_order(p.gamma, p.c)
                .with_source(move |x, s| me.source(x, s))
                .with_boundary(self.value(a, Side::Right), self.value(b, Side::Left)),
        )
    }
}

impl<T: Real> FluxField<T> for ExactSolution<T> {
    fn value(&self, _elem: usize, x: T, side: Side) -> T {
        ExactSolution::value(self, x, side)
    }

    fn derivative(&self, _elem: usize, x: T, side: Side) -> T {
        ExactSolution::derivative(self, x, side)
    }

    fn flux(&self, _elem: usize, x: T, side: Side) -> T {
        ExactSolution::flux(self, x, side)
    }
}
