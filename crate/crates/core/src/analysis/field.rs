use crate::polykit::Side;
use crate::scalar::Real;
use crate::solver::SolutionField;

/// Anything that can be evaluated element by element with a side flag for
/// the interface: discrete solutions, exact solutions and their differences.
///
/// `elem` is the element that contains `x`; continuous functions may ignore it.
pub trait FluxField<T> {
    fn value(&self, elem: usize, x: T, side: Side) -> T;
    fn derivative(&self, elem: usize, x: T, side: Side) -> T;
    /// `β u'`.
    fn flux(&self, elem: usize, x: T, side: Side) -> T;
}

impl<T: Real> FluxField<T> for SolutionField<T> {
    fn value(&self, elem: usize, x: T, side: Side) -> T {
        self.value_in(elem, x, side)
    }

    fn derivative(&self, elem: usize, x: T, side: Side) -> T {
        self.derivative_in(elem, x, side)
    }

    fn flux(&self, elem: usize, x: T, side: Side) -> T {
        self.flux_in(elem, x, side)
    }
}

/// `a - b`.
#[derive(Debug)]
pub struct Difference<'a, A: ?Sized, B: ?Sized> {
    pub a: &'a A,
    pub b: &'a B,
}

impl<A: ?Sized, B: ?Sized> Clone for Difference<'_, A, B> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<A: ?Sized, B: ?Sized> Copy for Difference<'_, A, B> {}

impl<'a, A: ?Sized, B: ?Sized> Difference<'a, A, B> {
    pub fn new(a: &'a A, b: &'a B) -> Self {
        Difference { a, b }
    }
}

impl<T: Real, A: FluxField<T> + ?Sized, B: FluxField<T> + ?Sized> FluxField<T>
    for Difference<'_, A, B>
{
    fn value(&self, elem: usize, x: T, side: Side) -> T {
        self.a.value(elem, x, side) - self.b.value(elem, x, side)
    }

    fn derivative(&self, elem: usize, x: T, side: Side) -> T {
        self.a.derivative(elem, x, side) - self.b.derivative(elem, x, side)
    }

    fn flux(&self, elem: usize, x: T, side: Side) -> T {
        self.a.flux(elem, x, side) - self.b.flux(elem, x, side)
    }
}
