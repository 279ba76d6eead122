use crate::polykit::Poly;
use crate::scalar::Scalar;

/// Which one-sided limit to take at a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Function on `[-1, 1]` made of two polynomial pieces joined at `breakpoint`.
///
/// A breakpoint-free function is stored with `breakpoint = 1` and identical
/// pieces. Queries exactly at the breakpoint pick a piece through [`Side`].
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly<T> {
    breakpoint: T,
    left: Poly<T>,
    right: Poly<T>,
}

impl<T: Scalar> PiecewisePoly<T> {
    pub fn new(breakpoint: T, left: Poly<T>, right: Poly<T>) -> Self {
        PiecewisePoly {
            breakpoint,
            left,
            right,
        }
    }

    /// A single polynomial viewed as a piecewise function.
    pub fn smooth(p: Poly<T>) -> Self {
        PiecewisePoly {
            breakpoint: T::one(),
            left: p.clone(),
            right: p,
        }
    }

    pub fn breakpoint(&self) -> &T {
        &self.breakpoint
    }

    pub fn left(&self) -> &Poly<T> {
        &self.left
    }

    pub fn right(&self) -> &Poly<T> {
        &self.right
    }

    pub fn piece(&self, side: Side) -> &Poly<T> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// True when both pieces are the same polynomial.
    pub fn is_smooth(&self) -> bool {
        self.left == self.right
    }

    /// Piece that governs `x`; `side` only matters when `x` is the breakpoint.
    pub fn piece_at(&self, x: &T, side: Side) -> &Poly<T> {
        if *x < self.breakpoint {
            &self.left
        } else if *x > self.breakpoint {
            &self.right
        } else {
            self.piece(side)
        }
    }

    pub fn eval(&self, x: T, side: Side) -> T {
        self.piece_at(&x, side).eval(x)
    }

    fn map(&self, f: impl Fn(&Poly<T>) -> Poly<T>) -> Self {
        PiecewisePoly {
            breakpoint: self.breakpoint.clone(),
            left: f(&self.left),
            right: f(&self.right),
        }
    }

    pub fn derivative(&self) -> Self {
        self.map(Poly::derivative)
    }

    pub fn nth_derivative(&self, j: usize) -> Self {
        self.map(|p| p.nth_derivative(j))
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|p| p.scale(s.clone()))
    }

    /// Value jump `f(bp+) - f(bp-)` at the breakpoint.
    pub fn jump(&self) -> T {
        self.right.eval(self.breakpoint.clone()) - self.left.eval(self.breakpoint.clone())
    }

    /// Highest degree over both pieces.
    pub fn degree(&self) -> Option<usize> {
        self.left.degree().max(self.right.degree())
    }

    /// Exact `∫_lo^hi f`, splitting at the breakpoint.
    pub fn integrate(&self, lo: T, hi: T) -> T {
        let bp = self.breakpoint.clone();
        if hi <= bp {
            self.left.integrate(lo, hi)
        } else if lo >= bp {
            self.right.integrate(lo, hi)
        } else {
            self.left.integrate(lo, bp.clone()) + self.right.integrate(bp, hi)
        }
    }
}

impl<T: Scalar> From<Poly<T>> for PiecewisePoly<T> {
    fn from(p: Poly<T>) -> Self {
        PiecewisePoly::smooth(p)
    }
}
