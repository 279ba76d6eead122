use std::sync::Arc;

use crate::error::{Error, Result};
use crate::meshing::{Mesh, MeshPair};
use crate::polykit::{gauss_legendre, integrate_split_with, QuadRule, Side};
use crate::scalar::Real;
use crate::solver::{BandedMatrix, InterfaceProblem, SolutionField};

/// Global numbering of the trial space.
///
/// Element-ordered: the interior modes of element `0`, node `1`, the interior
/// modes of element `1`, node `2`, and so on. Boundary nodes carry Dirichlet
/// data and have no index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofMap {
    n_elements: usize,
    degree: usize,
}

impl DofMap {
    pub fn new(n_elements: usize, degree: usize) -> Self {
        DofMap { n_elements, degree }
    }

    /// `N p - 1`.
    pub fn dim(&self) -> usize {
        self.n_elements * self.degree - 1
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Index of interior node `i` (`1 ≤ i ≤ N - 1`).
    pub fn node(&self, i: usize) -> Option<usize> {
        (i >= 1 && i < self.n_elements).then(|| i * self.degree - 1)
    }

    /// Index of local mode `n` of element `elem`: `0` is the left node, `1` the
    /// right node, `2..=p` the interior modes.
    pub fn global(&self, elem: usize, mode: usize) -> Option<usize> {
        match mode {
            0 => self.node(elem),
            1 => self.node(elem + 1),
            n => Some(elem * self.degree + n - 2),
        }
    }

    /// Canonical `(element, mode)` of a global index; interior nodes are
    /// reported as the left node of the element to their right.
    pub fn local(&self, g: usize) -> (usize, usize) {
        let p = self.degree;
        if (g + 1).is_multiple_of(p) {
            ((g + 1) / p, 0)
        } else {
            (g / p, g % p + 2)
        }
    }

    /// Row of control volume `(i, j)`.
    pub fn volume_row(&self, i: usize, j: usize) -> usize {
        i * self.degree + j
    }
}

/// Assembled system `A x = b` over the trial space.
#[derive(Debug, Clone)]
pub struct LinearSystem<T> {
    matrix: BandedMatrix<T>,
    rhs: Vec<T>,
    dofs: DofMap,
    pair: Arc<MeshPair<T>>,
    boundary: (T, T),
}

impl<T: Real> LinearSystem<T> {
    pub fn matrix(&self) -> &BandedMatrix<T> {
        &self.matrix
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    pub fn dof_map(&self) -> &DofMap {
        &self.dofs
    }

    pub fn mesh_pair(&self) -> &Arc<MeshPair<T>> {
        &self.pair
    }

    pub fn boundary(&self) -> (T, T) {
        self.boundary
    }

    /// `‖A x - b‖_∞`.
    pub fn residual(&self, x: &[T]) -> T {
        self.matrix
            .mul_vec(x)
            .iter()
            .zip(&self.rhs)
            .fold(T::zero(), |m, (&ax, &b)| m.max((ax - b).abs()))
    }
}

/// Direct banded LU solve.
pub fn solve<T: Real>(system: &LinearSystem<T>) -> Result<SolutionField<T>> {
    let x = system.matrix.factor()?.solve(&system.rhs);
    SolutionField::from_global(system.pair.clone(), &x, system.boundary)
}

struct Builder<T> {
    matrix: BandedMatrix<T>,
    rhs: Vec<T>,
    dofs: DofMap,
    boundary: (T, T),
    last: usize,
}

impl<T: Real> Builder<T> {
    /// Adds `v` times local mode `(elem, mode)` to `row`, lifting boundary
    /// nodes into the right-hand side.
    fn add(&mut self, row: usize, elem: usize, mode: usize, v: T) {
        match self.dofs.global(elem, mode) {
            Some(col) => self.matrix.add(row, col, v),
            None => {
                let g = if mode == 0 && elem == 0 {
                    self.boundary.0
                } else {
                    debug_assert!(mode == 1 && elem == self.last);
                    self.boundary.1
                };
                self.rhs[row] = self.rhs[row] - v * g;
            }
        }
    }
}

fn check_compatible<T: Real>(problem: &InterfaceProblem<T>, pair: &MeshPair<T>) -> Result<()> {
    let mesh = pair.mesh();
    if mesh.alpha() != problem.alpha() || mesh.domain() != problem.domain() {
        return Err(Error::InvalidArgument(
            "mesh and problem disagree on the interface or domain".into(),
        ));
    }
    if pair.betas() != (problem.beta_minus(), problem.beta_plus()) {
        return Err(Error::InvalidArgument(
            "mesh basis was built for different coefficients".into(),
        ));
    }
    Ok(())
}

fn side_of<T: Real>(x: T, alpha: T) -> Side {
    if x < alpha {
        Side::Left
    } else {
        Side::Right
    }
}

/// Subintervals of `[lo, hi]` cut at the interior points of `cuts`.
fn pieces<T: Real>(lo: T, hi: T, cuts: &[T]) -> Vec<(T, T)> {
    let mut inner: Vec<T> = cuts.iter().copied().filter(|&c| c > lo && c < hi).collect();
    inner.sort_by(|a, b| a.partial_cmp(b).expect("finite cuts"));
    let mut out = Vec::with_capacity(inner.len() + 1);
    let mut start = lo;
    for c in inner {
        out.push((start, c));
        start = c;
    }
    out.push((start, hi));
    out
}

fn mapped<T: Real>(rule: &QuadRule<T>, lo: T, hi: T) -> impl Iterator<Item = (T, T)> + '_ {
    let half = T::lit(0.5) * (hi - lo);
    let mid = T::lit(0.5) * (hi + lo);
    rule.points()
        .iter()
        .zip(rule.weights())
        .map(move |(&xi, &w)| (mid + half * xi, half * w))
}

fn builder<T: Real>(pair: &MeshPair<T>, problem: &InterfaceProblem<T>) -> Builder<T> {
    let p = pair.degree();
    let dofs = DofMap::new(pair.mesh().n_elements(), p);
    let n = dofs.dim();
    Builder {
        matrix: BandedMatrix::zeros(n, p, p),
        rhs: vec![T::zero(); n],
        dofs,
        boundary: problem.boundary(),
        last: pair.mesh().n_elements() - 1,
    }
}

pub(crate) fn assembly_rule<T: Real>(p: usize) -> QuadRule<T> {
    gauss_legendre(p + 3)
}

/// IFVM system on a uniform or graded mesh at degree `p`.
pub fn assemble_ifvm<T: Real>(
    problem: &InterfaceProblem<T>,
    mesh: &Mesh<T>,
    p: usize,
) -> Result<LinearSystem<T>> {
    let pair = MeshPair::new(mesh.clone(), p, problem.beta_minus(), problem.beta_plus())?;
    assemble_ifvm_on(problem, Arc::new(pair))
}

/// [`assemble_ifvm`] on prebuilt element and dual data.
pub fn assemble_ifvm_on<T: Real>(
    problem: &InterfaceProblem<T>,
    pair: Arc<MeshPair<T>>,
) -> Result<LinearSystem<T>> {
    check_compatible(problem, &pair)?;
    let p = pair.degree();
    let alpha = problem.alpha();
    let (gamma, c) = (problem.gamma(), problem.c());
    let rule = assembly_rule::<T>(p);
    let mut b = builder(&pair, problem);
    for (row, cv) in pair.dual().volumes().iter().enumerate() {
        let (ia, ja) = cv.owner;
        debug_assert_eq!(row, b.dofs.volume_row(ia, ja));
        let ib = if ja + 1 < p { ia } else { ia + 1 };
        let (ea, eb) = (pair.element(ia), pair.element(ib));
        for n in 0..=p {
            let fa = ea.mode_flux(n, cv.lo, side_of(cv.lo, alpha));
            let fb = eb.mode_flux(n, cv.hi, side_of(cv.hi, alpha));
            b.add(row, ia, n, fa);
            b.add(row, ib, n, -fb);
        }
        let node = pair.mesh().node(ia + 1);
        let cuts = [node, alpha];
        if gamma != T::zero() || c != T::zero() {
            for (lo, hi) in pieces(cv.lo, cv.hi, &cuts) {
                let mid = T::lit(0.5) * (lo + hi);
                let (e, el) = if mid < node { (ia, ea) } else { (ib, eb) };
                let side = side_of(mid, alpha);
                for (x, w) in mapped(&rule, lo, hi) {
                    for n in 0..=p {
                        let v =
                            gamma * el.mode_derivative(n, x, side) + c * el.mode_value(n, x, side);
                        b.add(row, e, n, w * v);
                    }
                }
            }
        }
        let f = integrate_split_with(
            &rule,
            |x| problem.source(x, side_of(x, alpha)),
            cv.lo,
            cv.hi,
            &sorted(cuts),
        );
        b.rhs[row] = b.rhs[row] + f;
    }
    Ok(LinearSystem {
        matrix: b.matrix,
        rhs: b.rhs,
        dofs: b.dofs,
        boundary: b.boundary,
        pair,
    })
}

fn sorted<T: Real>(mut v: [T; 2]) -> [T; 2] {
    if v[1] < v[0] {
        v.swap(0, 1);
    }
    v
}

/// Galerkin system `∫ β u'v' + γ u'v + c uv = ∫ f v` on the same trial space.
pub fn assemble_ifem<T: Real>(
    problem: &InterfaceProblem<T>,
    mesh: &Mesh<T>,
    p: usize,
) -> Result<LinearSystem<T>> {
    let pair = MeshPair::new(mesh.clone(), p, problem.beta_minus(), problem.beta_plus())?;
    assemble_ifem_on(problem, Arc::new(pair))
}

/// [`assemble_ifem`] on prebuilt element data.
pub fn assemble_ifem_on<T: Real>(
    problem: &InterfaceProblem<T>,
    pair: Arc<MeshPair<T>>,
) -> Result<LinearSystem<T>> {
    check_compatible(problem, &pair)?;
    let p = pair.degree();
    let alpha = problem.alpha();
    let (gamma, c) = (problem.gamma(), problem.c());
    let rule = assembly_rule::<T>(p);
    let mut b = builder(&pair, problem);
    let mut vals = vec![T::zero(); p + 1];
    let mut ders = vec![T::zero(); p + 1];
    for (e, el) in pair.elements().iter().enumerate() {
        let (lo, hi) = el.bounds();
        for (s, t) in pieces(lo, hi, &el.breakpoints()) {
            let side = side_of(T::lit(0.5) * (s + t), alpha);
            let beta = problem.beta(T::lit(0.5) * (s + t), side);
            for (x, w) in mapped(&rule, s, t) {
                for n in 0..=p {
                    vals[n] = el.mode_value(n, x, side);
                    ders[n] = el.mode_derivative(n, x, side);
                }
                let f = problem.source(x, side);
                for m in 0..=p {
                    let Some(row) = b.dofs.global(e, m) else {
                        continue;
                    };
                    for n in 0..=p {
                        let a = beta * ders[n] * ders[m]
                            + gamma * ders[n] * vals[m]
                            + c * vals[n] * vals[m];
                        b.add(row, e, n, w * a);
                    }
                    b.rhs[row] = b.rhs[row] + w * f * vals[m];
                }
            }
        }
    }
    Ok(LinearSystem {
        matrix: b.matrix,
        rhs: b.rhs,
        dofs: b.dofs,
        boundary: b.boundary,
        pair,
    })
}
