use crate::error::{Error, Result};
use crate::polykit::{PiecewisePoly, Poly};
use crate::scalar::Real;

const SAMPLES_PER_DEGREE: usize = 64;
const MAX_ITER: usize = 200;

/// All real roots of `f` in `[lo, hi]`, ascending.
///
/// Each polynomial piece is sampled on a `64 * degree` grid; sign changes are
/// refined by a safeguarded Newton iteration that falls back to bisection,
/// until the bracket is a few ulps wide. Interval endpoints where `|f|` is at
/// roundoff level, relative to the sampled maximum over both pieces or to the
/// evaluation error bound, count as roots as well.
/// Roots closer than `1e-12` (for instance, shared by both pieces at the
/// breakpoint) are merged.
pub fn roots_in<T: Real>(f: &PiecewisePoly<T>, lo: T, hi: T) -> Result<Vec<T>> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "empty root interval [{lo}, {hi}]"
        )));
    }
    let bp = *f.breakpoint();
    let mut roots = Vec::new();
    if bp > lo && bp < hi {
        let left = Sampled::new(f.left(), lo, bp)?;
        let right = Sampled::new(f.right(), bp, hi)?;
        let scale = left.scale.max(right.scale);
        roots.extend(left.roots(scale)?);
        roots.extend(right.roots(scale)?);
    } else {
        let piece = if bp >= hi { f.left() } else { f.right() };
        let s = Sampled::new(piece, lo, hi)?;
        roots.extend(s.roots(s.scale)?);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    let merge = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
    roots.dedup_by(|b, a| (*b - *a).abs() <= merge);
    Ok(roots)
}

/// One polynomial piece sampled on its root search grid.
struct Sampled<'a, T> {
    poly: &'a Poly<T>,
    xs: Vec<T>,
    vs: Vec<T>,
    scale: T,
}

impl<'a, T: Real> Sampled<'a, T> {
    fn new(poly: &'a Poly<T>, lo: T, hi: T) -> Result<Self> {
        let degree = match poly.degree() {
            None => {
                return Err(Error::InvalidArgument(
                    "root search on an identically zero piece".into(),
                ))
            }
            Some(d) => d,
        };
        let n = SAMPLES_PER_DEGREE * degree.max(1);
        let xs: Vec<T> = (0..=n)
            .map(|k| {
                if k == n {
                    hi
                } else {
                    lo + (hi - lo) * T::count(k) / T::count(n)
                }
            })
            .collect();
        let vs: Vec<T> = xs.iter().map(|&x| poly.eval(x)).collect();
        let scale = vs.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        Ok(Sampled {
            poly,
            xs,
            vs,
            scale,
        })
    }

    /// Roots in the sampled interval, unsorted; `scale` sets the endpoint
    /// residual tolerance.
    fn roots(&self, scale: T) -> Result<Vec<T>> {
        if self.poly.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let (xs, vs) = (&self.xs, &self.vs);
        let n = xs.len() - 1;
        let mut roots = Vec::new();
        for k in 0..n {
            let (a, b) = (xs[k], xs[k + 1]);
            let (fa, fb) = (vs[k], vs[k + 1]);
            if fa == T::zero() {
                roots.push(a);
            } else if fb != T::zero() && (fa < T::zero()) != (fb < T::zero()) {
                roots.push(refine(self.poly, a, b, fa)?);
            }
        }
        for (x, v) in [(xs[0], vs[0]), (xs[n], vs[n])] {
            // roundoff bound of monomial evaluation at x
            let magnitude = self
                .poly
                .coeffs()
                .iter()
                .rev()
                .fold(T::zero(), |acc, c| acc * x.abs() + c.abs());
            if v.abs() <= T::epsilon() * T::lit(450.0) * scale.max(magnitude) {
                roots.push(x);
            }
        }
        Ok(roots)
    }
}

/// Newton with bisection fallback inside a sign-change bracket.
fn refine<T: Real>(p: &Poly<T>, mut lo: T, mut hi: T, f_lo: T) -> Result<T> {
    let dp = p.derivative();
    let lo_negative = f_lo < T::zero();
    let half = T::lit(0.5);
    let width_tol = |a: T, b: T| T::epsilon() * T::lit(4.0) * T::one().max(a.abs()).max(b.abs());
    let mut x = half * (lo + hi);
    for _ in 0..MAX_ITER {
        if hi - lo <= width_tol(lo, hi) {
            return Ok(half * (lo + hi));
        }
        let fx = p.eval(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if (fx < T::zero()) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = dp.eval(x);
        let newton = if dfx != T::zero() {
            x - fx / dfx
        } else {
            T::nan()
        };
        if newton > lo && newton < hi {
            let step = (newton - x).abs();
            x = newton;
            let tol = width_tol(lo, hi);
            if step <= tol {
                // pin the bracket around the converged iterate
                let (a, b) = ((x - tol).max(lo), (x + tol).min(hi));
                let (fa, fb) = (p.eval(a), p.eval(b));
                if (fa < T::zero()) == lo_negative && (fb < T::zero()) != lo_negative {
                    lo = a;
                    hi = b;
                }
            }
        } else {
            x = half * (lo + hi);
        }
    }
    Err(Error::RootNotConverged {
        lo: lo.approx(),
        hi: hi.approx(),
    })
}
