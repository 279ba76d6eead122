use crate::error::{Error, Result};
use crate::polykit::{gen_legendre, roots_in, PiecewisePoly, Poly, RefInterface};
use crate::scalar::Real;

/// Quadrature nodes and weights on the reference interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule<T> {
    points: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadRule<T> {
    pub fn new(points: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if points.len() != weights.len() || points.is_empty() {
            return Err(Error::InvalidArgument(
                "quadrature needs equally many points and weights".into(),
            ));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument(
                "quadrature points must be strictly increasing".into(),
            ));
        }
        if weights.iter().any(|w| !(*w > T::zero())) {
            return Err(Error::InvalidArgument(
                "quadrature weights must be positive".into(),
            ));
        }
        Ok(QuadRule { points, weights })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Σ A_j F(g_j)` on the reference interval.
    pub fn apply(&self, f: impl Fn(T) -> T) -> T {
        self.points
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }

    /// The rule affinely mapped onto `[lo, hi]` (reference weights assumed to
    /// integrate over `[-1, 1]`).
    pub fn apply_on(&self, f: impl Fn(T) -> T, lo: T, hi: T) -> T {
        let half = T::lit(0.5) * (hi - lo);
        let mid = T::lit(0.5) * (hi + lo);
        half * self.apply(|xi| f(mid + half * xi))
    }

    pub fn weight_sum(&self) -> T {
        self.weights.iter().fold(T::zero(), |a, &w| a + w)
    }
}

/// Standard `n`-point Gauss–Legendre rule, Newton on the three-term recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> QuadRule<T> {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one point");
    let nn = T::count(n);
    let mut points = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (T::PI() * (T::count(i) + T::lit(0.75)) / (nn + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(2.0) {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        points[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        points[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        points[n / 2] = T::zero();
    }
    QuadRule { points, weights }
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let (mut p0, mut p1) = (T::one(), x);
    for k in 1..n {
        let kk = T::count(k);
        let p2 = ((T::lit(2.0) * kk + T::one()) * x * p1 - kk * p0) / (kk + T::one());
        p0 = p1;
        p1 = p2;
    }
    let nn = T::count(n);
    let d = nn * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// `p`-point generalized Gauss rule for the weight `1/β̂`.
///
/// Points are the roots of `L_p`; weights are `∫ w ℓ_j` for the Lagrange
/// cardinal polynomials on those points, integrated exactly.
pub fn gauss_rule<T: Real>(p: usize, iface: &RefInterface<T>) -> Result<QuadRule<T>> {
    if p == 0 {
        return Err(Error::InvalidArgument("Gauss rule needs p >= 1".into()));
    }
    let lp = gen_legendre(p, iface)?;
    let points = roots_in(&PiecewisePoly::smooth(lp), -T::one(), T::one())?;
    if points.len() != p || points.iter().any(|x| x.abs() >= T::one()) {
        return Err(Error::RootCount {
            expected: p,
            found: points.len(),
        });
    }
    let one = Poly::constant(T::one());
    let weights = (0..p)
        .map(|j| iface.inner_poly(&cardinal(&points, j), &one))
        .collect();
    QuadRule::new(points, weights)
}

/// Lagrange cardinal polynomial `ℓ_j` on `nodes`.
pub fn cardinal<T: Real>(nodes: &[T], j: usize) -> Poly<T> {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .fold(Poly::constant(T::one()), |acc, (_, &xm)| {
            (&acc * &Poly::linear_factor(xm)).scale(T::one() / (nodes[j] - xm))
        })
}

/// Composite Gauss–Legendre quadrature of `f` over `[lo, hi]`, cut at every
/// breakpoint strictly inside the interval.
pub fn integrate_split<T: Real>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    breakpoints: &[T],
    order: usize,
) -> T {
    integrate_split_with(&gauss_legendre(order), f, lo, hi, breakpoints)
}

/// [`integrate_split`] with a precomputed standard rule.
pub fn integrate_split_with<T: Real>(
    rule: &QuadRule<T>,
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    breakpoints: &[T],
) -> T {
    let mut acc = T::zero();
    let mut start = lo;
    for &bp in breakpoints.iter().filter(|&&b| b > lo && b < hi) {
        acc = acc + rule.apply_on(&f, start, bp);
        start = bp;
    }
    acc + rule.apply_on(&f, start, hi)
}
