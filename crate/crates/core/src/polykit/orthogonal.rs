//! Classical and generalized (interface-weighted) orthogonal polynomials.
//!
//! The generalized families live on the reference interval `[-1, 1]` with the
//! piecewise constant weight `w = 1/β̂`, where `β̂` equals `β⁻` left of the
//! reference interface `α̂` and `β⁺` right of it.
//!
//! * `L_n` (generalized Legendre) is a true polynomial of degree `n`,
//!   orthogonal to all lower degrees under `(f, g)_w = ∫ w f g`, normalized so
//!   that `L_n(1) = 1`.
//! * `φ_n` (generalized Lobatto) are the two hat functions `φ_0`, `φ_1` plus
//!   the piecewise antiderivatives of `w L_{n-1}`. They are continuous at `α̂`
//!   and `β̂ φ_n^{(j)}` is continuous there for every `j ≥ 1`.
//!
//! For `n ≥ 2` the antiderivative is divided by the mean weight
//! `w̄ = ½ ∫ w`. The scaling does not change any span, root or projection,
//! and it makes `φ_n` coincide with the standard `ψ_n` whenever `β⁻ = β⁺`.

use crate::error::{Error, Result};
use crate::polykit::{PiecewisePoly, Poly, Side};
use crate::scalar::Scalar;

/// Relative Gram pivot below which orthogonalization is declared singular.
const GRAM_PIVOT_TOL: f64 = 1e-13;

/// Reference interface data: the two diffusion values and `α̂ ∈ (-1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RefInterface<T> {
    beta_minus: T,
    beta_plus: T,
    alpha_hat: T,
}

impl<T: Scalar> RefInterface<T> {
    pub fn new(beta_minus: T, beta_plus: T, alpha_hat: T) -> Result<Self> {
        if !(beta_minus > T::zero()) || !(beta_plus > T::zero()) {
            return Err(Error::InvalidCoefficient(format!(
                "diffusion coefficients must be positive, got ({:?}, {:?})",
                beta_minus, beta_plus
            )));
        }
        let one = T::one();
        let minus_one = T::zero() - T::one();
        if !(alpha_hat > minus_one && alpha_hat < one) {
            return Err(Error::InvalidCoefficient(format!(
                "reference interface must lie in (-1, 1), got {:?}",
                alpha_hat
            )));
        }
        Ok(RefInterface {
            beta_minus,
            beta_plus,
            alpha_hat,
        })
    }

    /// Constant unit weight; the generalized families reduce to the standard ones.
    pub fn unit() -> Self {
        RefInterface {
            beta_minus: T::one(),
            beta_plus: T::one(),
            alpha_hat: T::zero(),
        }
    }

    pub fn beta_minus(&self) -> &T {
        &self.beta_minus
    }

    pub fn beta_plus(&self) -> &T {
        &self.beta_plus
    }

    pub fn alpha_hat(&self) -> &T {
        &self.alpha_hat
    }

    pub fn beta(&self, side: Side) -> &T {
        match side {
            Side::Left => &self.beta_minus,
            Side::Right => &self.beta_plus,
        }
    }

    /// `β̂(ξ)`, with `side` deciding at `ξ = α̂`.
    pub fn beta_at(&self, xi: &T, side: Side) -> &T {
        if *xi < self.alpha_hat {
            &self.beta_minus
        } else if *xi > self.alpha_hat {
            &self.beta_plus
        } else {
            self.beta(side)
        }
    }

    /// `∫_{-1}^{1} w`.
    pub fn total_weight(&self) -> T {
        let one = T::one();
        (self.alpha_hat.clone() + one.clone()) / self.beta_minus.clone()
            + (one - self.alpha_hat.clone()) / self.beta_plus.clone()
    }

    /// `∫_{-1}^{1} w ξ^m`, closed form.
    pub fn moment(&self, m: usize) -> T {
        let k = T::from_int(m as i64 + 1);
        let minus_one = T::zero() - T::one();
        let a = &self.alpha_hat;
        let pw = |x: &T| (0..=m).fold(T::one(), |acc, _| acc * x.clone());
        (pw(a) - pw(&minus_one)) / (k.clone() * self.beta_minus.clone())
            + (T::one() - pw(a)) / (k * self.beta_plus.clone())
    }

    /// `(f, g)_w` for two plain polynomials.
    pub fn inner_poly(&self, f: &Poly<T>, g: &Poly<T>) -> T {
        let fg = f * g;
        let minus_one = T::zero() - T::one();
        fg.integrate(minus_one, self.alpha_hat.clone()) / self.beta_minus.clone()
            + fg.integrate(self.alpha_hat.clone(), T::one()) / self.beta_plus.clone()
    }

    /// `β̂ f` piece by piece; for `f = φ_n'` this is the reference flux.
    pub fn flux_of(&self, f: &PiecewisePoly<T>) -> PiecewisePoly<T> {
        PiecewisePoly::new(
            f.breakpoint().clone(),
            f.left().scale(self.beta_minus.clone()),
            f.right().scale(self.beta_plus.clone()),
        )
    }

    fn check_compatible(&self, f: &PiecewisePoly<T>) -> Result<()> {
        if f.is_smooth() || *f.breakpoint() == self.alpha_hat {
            Ok(())
        } else {
            Err(Error::BreakpointMismatch {
                expected: self.alpha_hat.approx(),
                found: f.breakpoint().approx(),
            })
        }
    }
}

/// Standard Legendre polynomial `P_n` (`P_n(1) = 1`), via Bonnet's recurrence.
pub fn legendre<T: Scalar>(n: usize) -> Poly<T> {
    let mut prev = Poly::constant(T::one());
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::x();
    for k in 1..n {
        let kk = T::from_int(k as i64);
        let a = T::from_int(2 * k as i64 + 1) / (kk.clone() + T::one());
        let b = kk.clone() / (kk + T::one());
        let next = &(&Poly::x() * &cur).scale(a) - &prev.scale(b);
        prev = cur;
        cur = next;
    }
    cur
}

/// Standard Lobatto polynomial `ψ_n`.
pub fn lobatto_std<T: Scalar>(n: usize) -> Poly<T> {
    let half = T::one() / T::from_int(2);
    match n {
        0 => Poly::new(vec![half.clone(), T::zero() - half]),
        1 => Poly::new(vec![half.clone(), half]),
        _ => legendre::<T>(n - 1).antiderivative_from(T::zero() - T::one()),
    }
}

/// `L_0, …, L_n` by weighted Gram–Schmidt on monomials, orthogonalized twice.
pub fn gen_legendre_family<T: Scalar>(n: usize, iface: &RefInterface<T>) -> Result<Vec<Poly<T>>> {
    let mut family: Vec<Poly<T>> = Vec::with_capacity(n + 1);
    let mut norms: Vec<T> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mono = Poly::monomial(k, T::one());
        let mut v = mono.clone();
        for _pass in 0..2 {
            for (lm, cm) in family.iter().zip(&norms) {
                let proj = iface.inner_poly(&v, lm) / cm.clone();
                v = &v - &lm.scale(proj);
            }
        }
        let end = v.eval(T::one());
        if end.is_zero() {
            return Err(Error::IllConditioned {
                degree: k,
                relative_pivot: 0.0,
            });
        }
        let v = v.scale(T::one() / end);
        let c = iface.inner_poly(&v, &v);
        let mono_norm = iface.inner_poly(&mono, &mono);
        // c / (ξ^k, ξ^k)_w, rescaled by the normalization v(1) = 1
        let scale = (v.coeff(k) * v.coeff(k)).approx();
        let relative_pivot = c.approx() / (mono_norm.approx() * scale);
        if !(relative_pivot > GRAM_PIVOT_TOL) {
            return Err(Error::IllConditioned {
                degree: k,
                relative_pivot,
            });
        }
        family.push(v);
        norms.push(c);
    }
    Ok(family)
}

/// Generalized Legendre polynomial `L_n`.
pub fn gen_legendre<T: Scalar>(n: usize, iface: &RefInterface<T>) -> Result<Poly<T>> {
    Ok(gen_legendre_family(n, iface)?
        .pop()
        .expect("family is nonempty"))
}

/// `φ_0, …, φ_p` for the given interface.
pub fn gen_lobatto_family<T: Scalar>(
    p: usize,
    iface: &RefInterface<T>,
) -> Result<Vec<PiecewisePoly<T>>> {
    let legendre = if p >= 2 {
        gen_legendre_family(p - 1, iface)?
    } else {
        Vec::new()
    };
    let mut family = hat_pair(iface);
    family.truncate(p + 1);
    for l in legendre.iter().skip(1) {
        family.push(integrate_weighted(l, iface));
    }
    Ok(family)
}

/// Generalized Lobatto function `φ_n`.
pub fn gen_lobatto<T: Scalar>(n: usize, iface: &RefInterface<T>) -> Result<PiecewisePoly<T>> {
    Ok(gen_lobatto_family(n, iface)?
        .pop()
        .expect("family is nonempty"))
}

fn hat_pair<T: Scalar>(iface: &RefInterface<T>) -> Vec<PiecewisePoly<T>> {
    let one = T::one();
    let bm = iface.beta_minus.clone();
    let bp = iface.beta_plus.clone();
    let a = iface.alpha_hat.clone();
    let d = (one.clone() - a.clone()) * bm.clone() + (one.clone() + a.clone()) * bp.clone();
    let phi0 = PiecewisePoly::new(
        a.clone(),
        Poly::new(vec![
            ((one.clone() - a.clone()) * bm.clone() + a.clone() * bp.clone()) / d.clone(),
            T::zero() - bp.clone() / d.clone(),
        ]),
        Poly::new(vec![
            bm.clone() / d.clone(),
            T::zero() - bm.clone() / d.clone(),
        ]),
    );
    let phi1 = PiecewisePoly::new(
        a.clone(),
        Poly::new(vec![bp.clone() / d.clone(), bp.clone() / d.clone()]),
        Poly::new(vec![
            ((one + a.clone()) * bp - a * bm.clone()) / d.clone(),
            bm / d,
        ]),
    );
    vec![phi0, phi1]
}

/// `(1/w̄) ∫_{-1}^ξ w L`, continuous at `α̂`.
fn integrate_weighted<T: Scalar>(l: &Poly<T>, iface: &RefInterface<T>) -> PiecewisePoly<T> {
    let mean_weight = iface.total_weight() / T::from_int(2);
    let a = iface.alpha_hat.clone();
    let left = l
        .antiderivative_from(T::zero() - T::one())
        .scale(T::one() / (iface.beta_minus.clone() * mean_weight.clone()));
    let at_alpha = left.eval(a.clone());
    let right = &l
        .antiderivative_from(a.clone())
        .scale(T::one() / (iface.beta_plus.clone() * mean_weight))
        + &Poly::constant(at_alpha);
    PiecewisePoly::new(a, left, right)
}

/// Exact `∫_{-1}^{1} w f g`, split at `α̂`.
///
/// Each operand must either be breakpoint-free or break at `α̂`.
pub fn weighted_inner<T: Scalar>(
    f: &PiecewisePoly<T>,
    g: &PiecewisePoly<T>,
    iface: &RefInterface<T>,
) -> Result<T> {
    iface.check_compatible(f)?;
    iface.check_compatible(g)?;
    let minus_one = T::zero() - T::one();
    let a = iface.alpha_hat.clone();
    let left = f.left() * g.left();
    let right = f.right() * g.right();
    Ok(
        left.integrate(minus_one, a.clone()) / iface.beta_minus.clone()
            + right.integrate(a, T::one()) / iface.beta_plus.clone(),
    )
}
