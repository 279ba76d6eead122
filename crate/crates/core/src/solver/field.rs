use std::sync::Arc;

use crate::error::{Error, Result};
use crate::meshing::{Mesh, MeshPair};
use crate::polykit::{integrate_split_with, Side};
use crate::scalar::Real;
use crate::solver::assemble::assembly_rule;
use crate::solver::{DofMap, InterfaceProblem};

/// One-sided choice for evaluation at nodes and at `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalSide {
    Left,
    Right,
    /// Right limit, except at the right end of the domain.
    #[default]
    Auto,
}

impl EvalSide {
    fn resolve<T: Real>(self, x: T, b: T) -> Side {
        match self {
            EvalSide::Left => Side::Left,
            EvalSide::Right => Side::Right,
            EvalSide::Auto if x == b => Side::Left,
            EvalSide::Auto => Side::Right,
        }
    }
}

impl From<Side> for EvalSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => EvalSide::Left,
            Side::Right => EvalSide::Right,
        }
    }
}

/// Function in the trial space, stored as per-element (generalized) Lobatto
/// coefficients `[u(x_i), u(x_{i+1}), u_{i,2}, .., u_{i,p}]`.
#[derive(Debug, Clone)]
pub struct SolutionField<T> {
    pair: Arc<MeshPair<T>>,
    coeffs: Vec<Vec<T>>,
}

impl<T: Real> SolutionField<T> {
    /// From nodal values `u(x_0..x_N)` and interior modes (`p - 1` per element).
    pub fn from_parts(pair: Arc<MeshPair<T>>, nodal: &[T], modes: &[Vec<T>]) -> Result<Self> {
        let n = pair.mesh().n_elements();
        let p = pair.degree();
        if nodal.len() != n + 1 || modes.len() != n || modes.iter().any(|m| m.len() != p - 1) {
            return Err(Error::InvalidArgument(format!(
                "expected {} nodal values and {n} x {} modes",
                n + 1,
                p - 1
            )));
        }
        let coeffs = (0..n)
            .map(|i| {
                let mut c = Vec::with_capacity(p + 1);
                c.push(nodal[i]);
                c.push(nodal[i + 1]);
                c.extend_from_slice(&modes[i]);
                c
            })
            .collect();
        Ok(SolutionField { pair, coeffs })
    }

    /// From a global coefficient vector under [`DofMap`] numbering.
    pub fn from_global(pair: Arc<MeshPair<T>>, x: &[T], boundary: (T, T)) -> Result<Self> {
        let n = pair.mesh().n_elements();
        let p = pair.degree();
        let dofs = DofMap::new(n, p);
        if x.len() != dofs.dim() {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector has length {}, expected {}",
                x.len(),
                dofs.dim()
            )));
        }
        let mut nodal = vec![boundary.0; n + 1];
        nodal[n] = boundary.1;
        for (i, v) in nodal.iter_mut().enumerate().take(n).skip(1) {
            *v = x[dofs.node(i).expect("interior node")];
        }
        let modes: Vec<Vec<T>> = (0..n)
            .map(|e| {
                (2..=p)
                    .map(|m| x[dofs.global(e, m).expect("mode")])
                    .collect()
            })
            .collect();
        Self::from_parts(pair, &nodal, &modes)
    }

    /// Global coefficient vector (boundary values dropped).
    pub fn to_global(&self) -> Vec<T> {
        let dofs = self.dof_map();
        let mut x = vec![T::zero(); dofs.dim()];
        for (e, c) in self.coeffs.iter().enumerate() {
            for (m, &v) in c.iter().enumerate() {
                if let Some(g) = dofs.global(e, m) {
                    x[g] = v;
                }
            }
        }
        x
    }

    pub fn dof_map(&self) -> DofMap {
        DofMap::new(self.mesh().n_elements(), self.degree())
    }

    pub fn mesh_pair(&self) -> &Arc<MeshPair<T>> {
        &self.pair
    }

    pub fn mesh(&self) -> &Mesh<T> {
        self.pair.mesh()
    }

    pub fn degree(&self) -> usize {
        self.pair.degree()
    }

    pub fn element_coeffs(&self, i: usize) -> &[T] {
        &self.coeffs[i]
    }

    /// `(u(a), u(b))`.
    pub fn boundary(&self) -> (T, T) {
        let n = self.coeffs.len();
        (self.coeffs[0][0], self.coeffs[n - 1][1])
    }

    /// `u(x_0), .., u(x_N)`.
    pub fn nodal_values(&self) -> Vec<T> {
        let mut v: Vec<T> = self.coeffs.iter().map(|c| c[0]).collect();
        v.push(self.coeffs[self.coeffs.len() - 1][1]);
        v
    }

    fn locate(&self, x: T, side: EvalSide) -> Result<(usize, Side)> {
        let (_, b) = self.mesh().domain();
        let s = side.resolve(x, b);
        Ok((self.mesh().locate(x, s)?, s))
    }

    pub fn eval(&self, x: T, side: EvalSide) -> Result<T> {
        let (e, s) = self.locate(x, side)?;
        Ok(self.value_in(e, x, s))
    }

    pub fn eval_derivative(&self, x: T, side: EvalSide) -> Result<T> {
        let (e, s) = self.locate(x, side)?;
        Ok(self.derivative_in(e, x, s))
    }

    /// `β u_T'`.
    pub fn eval_flux(&self, x: T, side: EvalSide) -> Result<T> {
        let (e, s) = self.locate(x, side)?;
        Ok(self.flux_in(e, x, s))
    }

    /// Value of the restriction to element `e` (no domain checks).
    pub fn value_in(&self, e: usize, x: T, side: Side) -> T {
        self.pair.element(e).value(&self.coeffs[e], x, side)
    }

    pub fn derivative_in(&self, e: usize, x: T, side: Side) -> T {
        self.pair.element(e).derivative(&self.coeffs[e], x, side)
    }

    pub fn flux_in(&self, e: usize, x: T, side: Side) -> T {
        self.pair.element(e).flux(&self.coeffs[e], x, side)
    }

    /// `Σ_i c_i v_i` for fields on the same mesh.
    pub fn combine(&self, a: T, other: &SolutionField<T>, b: T) -> Result<Self> {
        if !Arc::ptr_eq(&self.pair, &other.pair) && self.pair.mesh() != other.pair.mesh() {
            return Err(Error::InvalidArgument(
                "fields live on different meshes".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(u, v)| u.iter().zip(v).map(|(&x, &y)| a * x + b * y).collect())
            .collect();
        Ok(SolutionField {
            pair: self.pair.clone(),
            coeffs,
        })
    }
}

/// Per-volume defect of the flux balance
/// `β u'(g_a) - β u'(g_b) + ∫ (γ u' + c u) - ∫ f`.
pub fn conservation_residual<T: Real>(
    sol: &SolutionField<T>,
    problem: &InterfaceProblem<T>,
) -> Vec<T> {
    let pair = sol.mesh_pair();
    let p = pair.degree();
    let alpha = problem.alpha();
    let side_of = |x: T| if x < alpha { Side::Left } else { Side::Right };
    let rule = assembly_rule::<T>(p);
    pair.dual()
        .volumes()
        .iter()
        .map(|cv| {
            let (ia, ja) = cv.owner;
            let ib = if ja + 1 < p { ia } else { ia + 1 };
            let flux =
                sol.flux_in(ia, cv.lo, side_of(cv.lo)) - sol.flux_in(ib, cv.hi, side_of(cv.hi));
            let node = pair.mesh().node(ia + 1);
            let mut cuts = [node, alpha];
            if cuts[1] < cuts[0] {
                cuts.swap(0, 1);
            }
            let element_at = |x: T| if x < node { ia } else { ib };
            let lower = integrate_split_with(
                &rule,
                |x| {
                    let (e, s) = (element_at(x), side_of(x));
                    problem.gamma() * sol.derivative_in(e, x, s)
                        + problem.c() * sol.value_in(e, x, s)
                },
                cv.lo,
                cv.hi,
                &cuts,
            );
            let f = integrate_split_with(
                &rule,
                |x| problem.source(x, side_of(x)),
                cv.lo,
                cv.hi,
                &cuts,
            );
            flux + lower - f
        })
        .collect()
}
