use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Polynomial in the monomial basis, coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list and [`Poly::degree`] is `None` for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * ξ^n`.
    pub fn monomial(n: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `ξ`.
    pub fn x() -> Self {
        Self::monomial(1, T::one())
    }

    /// `ξ - r`.
    pub fn linear_factor(r: T) -> Self {
        Self::new(vec![T::zero() - r, T::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `ξ^n` (zero beyond the degree).
    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.clone() * T::from_int(n as i64))
            .collect();
        Self::new(coeffs)
    }

    /// `j`-th derivative.
    pub fn nth_derivative(&self, j: usize) -> Self {
        (0..j).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_int(n as i64 + 1));
        }
        Self::new(coeffs)
    }

    /// Antiderivative vanishing at `x0`.
    pub fn antiderivative_from(&self, x0: T) -> Self {
        let a = self.antiderivative();
        let shift = a.eval(x0);
        &a - &Poly::constant(shift)
    }

    /// Exact `∫_lo^hi p(ξ) dξ`.
    pub fn integrate(&self, lo: T, hi: T) -> T {
        let a = self.antiderivative();
        a.eval(hi) - a.eval(lo)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Largest coefficient magnitude, as `f64`.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.approx().abs())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}
