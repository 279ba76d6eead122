use crate::analysis::{sobolev_norms, FluxField};
use crate::error::{Error, Result};
use crate::meshing::MeshPair;
use crate::polykit::Side;
use crate::scalar::Real;
use crate::solver::SolutionField;

/// Image of `v_T` under `Π_h`: piecewise constants on the control volumes.
#[derive(Debug, Clone, PartialEq)]
pub struct DualField<T> {
    values: Vec<T>,
    jumps: Vec<T>,
    h: Vec<T>,
}

impl<T: Real> DualField<T> {
    /// `v_{i,j}` on the `Np - 1` active volumes.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `[v_{i,j}] = A_{i,j} (β v_T')(g_{i,j})` at all `Np` Gauss points.
    pub fn jumps(&self) -> &[T] {
        &self.jumps
    }

    /// `|·|_{1,T'}`.
    pub fn seminorm(&self) -> T {
        self.jumps
            .iter()
            .zip(&self.h)
            .fold(T::zero(), |acc, (&j, &h)| acc + j * j / h)
            .sqrt()
    }

    /// `‖·‖_{0,T'}`.
    pub fn l2(&self) -> T {
        self.values
            .iter()
            .zip(&self.h)
            .fold(T::zero(), |acc, (&v, &h)| acc + h * v * v)
            .sqrt()
    }

    /// `‖·‖_{T'}`.
    pub fn energy(&self) -> T {
        (self.seminorm().powi(2) + self.l2().powi(2)).sqrt()
    }

    /// `Σ [v_{i,j}]`, which equals `v_T(b) - v_T(a) = 0`.
    pub fn closure_defect(&self) -> T {
        self.jumps.iter().fold(T::zero(), |a, &j| a + j)
    }
}

fn gauss_fluxes<T: Real>(v: &impl FluxField<T>, pair: &MeshPair<T>) -> Vec<(T, T)> {
    let alpha = pair.mesh().alpha();
    pair.elements()
        .iter()
        .flat_map(|el| {
            let e = el.index();
            el.gauss_points()
                .iter()
                .zip(el.gauss_weights())
                .map(move |(&x, &a)| {
                    let side = if x < alpha { Side::Left } else { Side::Right };
                    (a, v.flux(e, x, side))
                })
        })
        .collect()
}

/// `Π_h v_T` for `v_T` with zero boundary values.
pub fn pi_h<T: Real>(v: &SolutionField<T>) -> Result<DualField<T>> {
    let (va, vb) = v.boundary();
    let scale = v
        .nodal_values()
        .iter()
        .fold(T::one(), |m, x| m.max(x.abs()));
    let tol = T::lit(1e-12) * scale;
    if va.abs() > tol || vb.abs() > tol {
        return Err(Error::NonzeroBoundary {
            left: va.approx(),
            right: vb.approx(),
        });
    }
    let pair = v.mesh_pair();
    let p = pair.degree();
    let jumps: Vec<T> = gauss_fluxes(v, pair)
        .into_iter()
        .map(|(a, f)| a * f)
        .collect();
    let h: Vec<T> = pair
        .elements()
        .iter()
        .flat_map(|el| std::iter::repeat_n(el.h(), p))
        .collect();
    let mut values = Vec::with_capacity(jumps.len() - 1);
    let mut acc = T::zero();
    for &j in &jumps[..jumps.len() - 1] {
        acc = acc + j;
        values.push(acc);
    }
    Ok(DualField { values, jumps, h })
}

/// `(|v|_G, ‖v‖_G)` with `|v|_G² = Σ A_{i,j} (β v'(g_{i,j}))²` and
/// `‖v‖_G² = |v|_G² + ‖v‖_1²`.
pub fn gauss_norms<T: Real>(v: &impl FluxField<T>, pair: &MeshPair<T>) -> (T, T) {
    let semi = gauss_fluxes(v, pair)
        .into_iter()
        .fold(T::zero(), |acc, (a, f)| acc + a * f * f)
        .sqrt();
    let (l2, h1) = sobolev_norms(v, pair, pair.degree() + 6);
    (semi, (semi * semi + l2 * l2 + h1 * h1).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteNorms<T> {
    pub gauss_semi: T,
    pub gauss_energy: T,
    /// Present when `v` vanishes on the boundary.
    pub dual_semi: Option<T>,
    pub dual_l2: Option<T>,
    pub dual_energy: Option<T>,
}

pub fn discrete_norms<T: Real>(v: &SolutionField<T>) -> DiscreteNorms<T> {
    let (gauss_semi, gauss_energy) = gauss_norms(v, v.mesh_pair());
    let dual = pi_h(v).ok();
    DiscreteNorms {
        gauss_semi,
        gauss_energy,
        dual_semi: dual.as_ref().map(DualField::seminorm),
        dual_l2: dual.as_ref().map(DualField::l2),
        dual_energy: dual.as_ref().map(DualField::energy),
    }
}
