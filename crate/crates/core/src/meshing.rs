//! Primal partition, per-element (generalized) Lobatto data and the dual
//! partition of control volumes.
//!
//! Elements are indexed from zero: element `i` is `[nodes[i], nodes[i + 1]]`.

use crate::error::{Error, Result};
use crate::polykit::{
    gauss_legendre, gauss_rule, gen_lobatto_family, lobatto_std, roots_in, PiecewisePoly, QuadRule,
    RefInterface, Side,
};
use crate::scalar::Real;

/// Relative distance (in units of the local mesh size) under which the
/// interface is considered to sit on a node.
const NODE_COLLISION_TOL: f64 = 1e-13;

/// Material placement of an element relative to the interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Entirely in `Ω⁻` or `Ω⁺`.
    Regular(Side),
    /// Contains the interface point in its interior.
    Interface,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh<T> {
    nodes: Vec<T>,
    interface_elem: Option<usize>,
    alpha: T,
    placements: Vec<Placement>,
    shape_ratio: T,
}

impl<T: Real> Mesh<T> {
    /// Mesh from explicit nodes; `alpha` must lie strictly inside.
    pub fn from_nodes(nodes: Vec<T>, alpha: T) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::InvalidMesh(
                "at least two elements are required".into(),
            ));
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidMesh(
                "nodes must be strictly increasing".into(),
            ));
        }
        let (a, b) = (nodes[0], nodes[nodes.len() - 1]);
        if !(alpha > a && alpha < b) {
            return Err(Error::AlphaOutsideDomain {
                alpha: alpha.approx(),
                a: a.approx(),
                b: b.approx(),
            });
        }
        let n = nodes.len() - 1;
        let hs: Vec<T> = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        let h_max = hs.iter().fold(T::zero(), |m, &h| m.max(h));
        let h_min = hs.iter().fold(T::infinity(), |m, &h| m.min(h));

        // an interior node within the collision tolerance takes the interface
        let tol = T::lit(NODE_COLLISION_TOL);
        let collision = (1..n).find(|&i| {
            let h_local = hs[i - 1].min(hs[i]);
            (alpha - nodes[i]).abs() <= tol * h_local
        });
        let interface_elem = match collision {
            Some(_) => None,
            None => (0..n).find(|&i| nodes[i] < alpha && alpha < nodes[i + 1]),
        };
        let placements = (0..n)
            .map(|i| {
                if Some(i) == interface_elem {
                    Placement::Interface
                } else if match collision {
                    Some(k) => i < k,
                    None => nodes[i + 1] <= alpha,
                } {
                    Placement::Regular(Side::Left)
                } else {
                    Placement::Regular(Side::Right)
                }
            })
            .collect();
        Ok(Mesh {
            nodes,
            interface_elem,
            alpha,
            placements,
            shape_ratio: h_max / h_min,
        })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> T {
        self.nodes[i]
    }

    pub fn n_elements(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn element(&self, i: usize) -> (T, T) {
        (self.nodes[i], self.nodes[i + 1])
    }

    pub fn h(&self, i: usize) -> T {
        self.nodes[i + 1] - self.nodes[i]
    }

    pub fn max_h(&self) -> T {
        (0..self.n_elements()).fold(T::zero(), |m, i| m.max(self.h(i)))
    }

    pub fn domain(&self) -> (T, T) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Index of the element containing the interface, if it is not on a node.
    pub fn interface_element(&self) -> Option<usize> {
        self.interface_elem
    }

    pub fn placement(&self, i: usize) -> Placement {
        self.placements[i]
    }

    /// Ratio of largest to smallest element.
    pub fn shape_ratio(&self) -> T {
        self.shape_ratio
    }

    /// Element containing `x`. At a node, `Side::Left` picks the element to the
    /// left and `Side::Right` the one to the right (clamped at the boundary).
    pub fn locate(&self, x: T, side: Side) -> Result<usize> {
        let (a, b) = self.domain();
        if !(x >= a && x <= b) {
            return Err(Error::OutsideDomain {
                x: x.approx(),
                a: a.approx(),
                b: b.approx(),
            });
        }
        let n = self.n_elements();
        // first node strictly greater than x
        let upper = self.nodes.partition_point(|&node| node <= x);
        let i = if upper == 0 {
            0
        } else if upper > n {
            n - 1
        } else {
            upper - 1
        };
        if x == self.nodes[i] && side == Side::Left && i > 0 {
            return Ok(i - 1);
        }
        Ok(i)
    }
}

/// Uniform mesh of `n` elements on `[a, b]` with interface `alpha`.
pub fn build_mesh<T: Real>(a: T, b: T, n: usize, alpha: T) -> Result<Mesh<T>> {
    if n < 2 {
        return Err(Error::InvalidMesh(format!("need N >= 2 elements, got {n}")));
    }
    if !(a < b) {
        return Err(Error::InvalidMesh("empty domain".into()));
    }
    if !(alpha > a && alpha < b) {
        return Err(Error::AlphaOutsideDomain {
            alpha: alpha.approx(),
            a: a.approx(),
            b: b.approx(),
        });
    }
    let nodes = (0..=n)
        .map(|i| {
            if i == n {
                b
            } else {
                a + (b - a) * T::count(i) / T::count(n)
            }
        })
        .collect();
    Mesh::from_nodes(nodes, alpha)
}

/// Reference basis, quadrature and superconvergence points of one element,
/// together with the affine map to the physical element.
#[derive(Debug, Clone)]
pub struct ElementBasis<T> {
    index: usize,
    lo: T,
    hi: T,
    placement: Placement,
    iface: RefInterface<T>,
    basis: Vec<PiecewisePoly<T>>,
    dbasis: Vec<PiecewisePoly<T>>,
    ref_flux: Vec<PiecewisePoly<T>>,
    gauss: QuadRule<T>,
    lobatto: Vec<T>,
    gauss_phys: Vec<T>,
    weights_phys: Vec<T>,
}

impl<T: Real> ElementBasis<T> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn bounds(&self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn h(&self) -> T {
        self.hi - self.lo
    }

    pub fn degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn placement(&self) -> Placement {
        self.placement
    }

    pub fn is_interface(&self) -> bool {
        self.placement == Placement::Interface
    }

    /// Reference interface position for the interface element.
    pub fn alpha_hat(&self) -> Option<T> {
        self.is_interface().then(|| *self.iface.alpha_hat())
    }

    /// Reference weight data; for regular elements this is the constant
    /// weight `1/β` of the element's material.
    pub fn ref_interface(&self) -> &RefInterface<T> {
        &self.iface
    }

    /// Reference basis `φ_0..φ_p` (or `ψ_0..ψ_p`).
    pub fn basis(&self) -> &[PiecewisePoly<T>] {
        &self.basis
    }

    /// Reference Gauss rule. Regular elements carry the standard
    /// Gauss–Legendre rule (weights summing to 2).
    pub fn gauss(&self) -> &QuadRule<T> {
        &self.gauss
    }

    /// Reference roots of `φ_{p+1}`, endpoints included.
    pub fn lobatto_ref(&self) -> &[T] {
        &self.lobatto
    }

    pub fn to_ref(&self, x: T) -> T {
        (T::lit(2.0) * x - self.lo - self.hi) / self.h()
    }

    pub fn to_phys(&self, xi: T) -> T {
        T::lit(0.5) * (self.lo + self.hi) + T::lit(0.5) * self.h() * xi
    }

    /// Physical Gauss points `g_{i,j}`.
    pub fn gauss_points(&self) -> &[T] {
        &self.gauss_phys
    }

    /// Physical weights `A_{i,j}` of the rule for `∫_{τ_i} F / β`.
    pub fn gauss_weights(&self) -> &[T] {
        &self.weights_phys
    }

    /// Physical Lobatto points `l_{i,j}`.
    pub fn lobatto_points(&self) -> Vec<T> {
        self.lobatto.iter().map(|&xi| self.to_phys(xi)).collect()
    }

    /// Physical interface point strictly inside this element, if any.
    pub fn breakpoints(&self) -> Vec<T> {
        match self.alpha_hat() {
            Some(a) => vec![self.to_phys(a)],
            None => Vec::new(),
        }
    }

    /// `β` at the physical point `x` of this element.
    pub fn beta(&self, x: T, side: Side) -> T {
        *self.iface.beta_at(&self.to_ref(x), side)
    }

    /// Value of local mode `n` at `x`.
    pub fn mode_value(&self, n: usize, x: T, side: Side) -> T {
        self.basis[n].eval(self.to_ref(x), side)
    }

    /// Physical derivative of local mode `n` at `x`.
    pub fn mode_derivative(&self, n: usize, x: T, side: Side) -> T {
        T::lit(2.0) / self.h() * self.dbasis[n].eval(self.to_ref(x), side)
    }

    /// Physical flux `β φ_{i,n}'` at `x`.
    pub fn mode_flux(&self, n: usize, x: T, side: Side) -> T {
        T::lit(2.0) / self.h() * self.ref_flux[n].eval(self.to_ref(x), side)
    }

    pub fn value(&self, coeffs: &[T], x: T, side: Side) -> T {
        combine(coeffs, |n| self.mode_value(n, x, side))
    }

    pub fn derivative(&self, coeffs: &[T], x: T, side: Side) -> T {
        combine(coeffs, |n| self.mode_derivative(n, x, side))
    }

    pub fn flux(&self, coeffs: &[T], x: T, side: Side) -> T {
        combine(coeffs, |n| self.mode_flux(n, x, side))
    }
}

impl<T: Real> ElementBasis<T> {
    /// Same reference data on another element.
    fn relocated(&self, index: usize, lo: T, hi: T) -> Self {
        let mut eb = self.clone();
        eb.index = index;
        eb.lo = lo;
        eb.hi = hi;
        eb.map_rule();
        eb
    }

    fn map_rule(&mut self) {
        let half_h = T::lit(0.5) * self.h();
        let scale = match self.placement {
            Placement::Interface => half_h,
            Placement::Regular(_) => half_h / *self.iface.beta_minus(),
        };
        self.gauss_phys = self
            .gauss
            .points()
            .iter()
            .map(|&xi| self.to_phys(xi))
            .collect();
        self.weights_phys = self.gauss.weights().iter().map(|&w| w * scale).collect();
    }
}

fn combine<T: Real>(coeffs: &[T], f: impl Fn(usize) -> T) -> T {
    coeffs
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (n, &c)| acc + c * f(n))
}

/// Element data for element `i` at degree `p`.
pub fn element_basis<T: Real>(
    mesh: &Mesh<T>,
    i: usize,
    p: usize,
    beta_minus: T,
    beta_plus: T,
) -> Result<ElementBasis<T>> {
    if p == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if i >= mesh.n_elements() {
        return Err(Error::InvalidArgument(format!("element {i} out of range")));
    }
    let (lo, hi) = mesh.element(i);
    let placement = mesh.placement(i);
    let (iface, basis, gauss, lobatto_fn) = match placement {
        Placement::Interface => {
            let alpha_hat = (T::lit(2.0) * mesh.alpha() - lo - hi) / (hi - lo);
            let iface = RefInterface::new(beta_minus, beta_plus, alpha_hat)?;
            let mut family = gen_lobatto_family(p + 1, &iface)?;
            let lobatto_fn = family.pop().expect("p + 2 functions");
            let gauss = gauss_rule(p, &iface)?;
            (iface, family, gauss, lobatto_fn)
        }
        Placement::Regular(side) => {
            let beta = if side == Side::Left {
                beta_minus
            } else {
                beta_plus
            };
            let iface = RefInterface::new(beta, beta, T::zero())?;
            let basis = (0..=p)
                .map(|n| PiecewisePoly::smooth(lobatto_std(n)))
                .collect();
            let lobatto_fn = PiecewisePoly::smooth(lobatto_std(p + 1));
            (iface, basis, gauss_legendre(p), lobatto_fn)
        }
    };
    let lobatto = roots_in(&lobatto_fn, -T::one(), T::one())?;
    if lobatto.len() != p + 1 {
        return Err(Error::RootCount {
            expected: p + 1,
            found: lobatto.len(),
        });
    }
    let dbasis: Vec<_> = basis.iter().map(PiecewisePoly::derivative).collect();
    let ref_flux = dbasis.iter().map(|d| iface.flux_of(d)).collect();
    let mut eb = ElementBasis {
        index: i,
        lo,
        hi,
        placement,
        iface,
        basis,
        dbasis,
        ref_flux,
        gauss,
        lobatto,
        gauss_phys: Vec::new(),
        weights_phys: Vec::new(),
    };
    eb.map_rule();
    Ok(eb)
}

/// One test-function support `[g_{i,j}, g_{i,j+1}]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlVolume<T> {
    /// `(element, local Gauss index)` of the left end.
    pub owner: (usize, usize),
    pub lo: T,
    pub hi: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualMesh<T> {
    volumes: Vec<ControlVolume<T>>,
    left_strip: (T, T),
    right_strip: (T, T),
}

impl<T: Real> DualMesh<T> {
    /// Active control volumes, ordered left to right.
    pub fn volumes(&self) -> &[ControlVolume<T>] {
        &self.volumes
    }

    pub fn len(&self) -> usize {
        self.volumes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.volumes.is_empty()
    }

    /// Inactive boundary strips `[a, g_{1,1}]` and `[g_{N,p}, b]`.
    pub fn inactive_strips(&self) -> [(T, T); 2] {
        [self.left_strip, self.right_strip]
    }
}

/// Control volumes between consecutive Gauss points, crossing element
/// boundaries; the last element contributes `p - 1` volumes.
pub fn dual_partition<T: Real>(elements: &[ElementBasis<T>]) -> DualMesh<T> {
    let n = elements.len();
    let mut volumes = Vec::new();
    for (i, el) in elements.iter().enumerate() {
        let g = el.gauss_points();
        let p = g.len();
        for j in 0..p {
            let hi = if j + 1 < p {
                g[j + 1]
            } else if i + 1 < n {
                elements[i + 1].gauss_points()[0]
            } else {
                break;
            };
            volumes.push(ControlVolume {
                owner: (i, j),
                lo: g[j],
                hi,
            });
        }
    }
    let first = elements[0].gauss_points()[0];
    let last = *elements[n - 1].gauss_points().last().expect("p >= 1");
    DualMesh {
        volumes,
        left_strip: (elements[0].lo, first),
        right_strip: (last, elements[n - 1].hi),
    }
}

/// Primal mesh with its element data and dual partition at a fixed degree.
#[derive(Debug, Clone)]
pub struct MeshPair<T> {
    mesh: Mesh<T>,
    degree: usize,
    beta_minus: T,
    beta_plus: T,
    elements: Vec<ElementBasis<T>>,
    dual: DualMesh<T>,
}

impl<T: Real> MeshPair<T> {
    pub fn new(mesh: Mesh<T>, degree: usize, beta_minus: T, beta_plus: T) -> Result<Self> {
        // regular elements share their reference data per material
        let mut templates: [Option<ElementBasis<T>>; 2] = [None, None];
        let mut elements = Vec::with_capacity(mesh.n_elements());
        for i in 0..mesh.n_elements() {
            let slot = match mesh.placement(i) {
                Placement::Regular(Side::Left) => Some(0),
                Placement::Regular(Side::Right) => Some(1),
                Placement::Interface => None,
            };
            let el = match slot.and_then(|s| templates[s].as_ref()) {
                Some(t) => {
                    let (lo, hi) = mesh.element(i);
                    t.relocated(i, lo, hi)
                }
                None => element_basis(&mesh, i, degree, beta_minus, beta_plus)?,
            };
            if let Some(s) = slot {
                templates[s].get_or_insert_with(|| el.clone());
            }
            elements.push(el);
        }
        let dual = dual_partition(&elements);
        Ok(MeshPair {
            mesh,
            degree,
            beta_minus,
            beta_plus,
            elements,
            dual,
        })
    }

    pub fn mesh(&self) -> &Mesh<T> {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn betas(&self) -> (T, T) {
        (self.beta_minus, self.beta_plus)
    }

    pub fn elements(&self) -> &[ElementBasis<T>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ElementBasis<T> {
        &self.elements[i]
    }

    pub fn dual(&self) -> &DualMesh<T> {
        &self.dual
    }

    /// Dimension `N p - 1` of the trial space.
    pub fn dim(&self) -> usize {
        self.mesh.n_elements() * self.degree - 1
    }

    /// `β(x)` with `side` deciding at the interface.
    pub fn beta(&self, x: T, side: Side) -> T {
        let alpha = self.mesh.alpha();
        if x < alpha || (x == alpha && side == Side::Left) {
            self.beta_minus
        } else {
            self.beta_plus
        }
    }

    /// Every Gauss point, left to right.
    pub fn all_gauss_points(&self) -> Vec<T> {
        self.elements
            .iter()
            .flat_map(|e| e.gauss_points().iter().copied())
            .collect()
    }
}
