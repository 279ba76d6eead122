use std::fmt;

use crate::analysis::{Difference, ExactSolution, FluxField};
use crate::error::{Error, Result};
use crate::meshing::{MeshPair, Placement};
use crate::polykit::{gauss_legendre, integrate_split_with, Side};
use crate::scalar::Real;
use crate::solver::SolutionField;

/// Errors below this are treated as roundoff-saturated in rate fits.
pub const ROUNDOFF_FLOOR: f64 = 1e-13;

/// Points per element (or per interface sub-element) for the max norm.
const SAMPLES_PER_ELEMENT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Norm {
    /// Max over the nodes.
    Nodal,
    /// Max over the sampling grid.
    Max,
    /// Max over the (generalized) Lobatto points.
    Lobatto,
    /// Max flux error over the (generalized) Gauss points.
    FluxGauss,
    L2,
    H1Semi,
    /// Max difference of errors at consecutive nodes.
    NodeDiff,
}

impl Norm {
    pub const ALL: [Norm; 7] = [
        Norm::Nodal,
        Norm::Max,
        Norm::Lobatto,
        Norm::FluxGauss,
        Norm::L2,
        Norm::H1Semi,
        Norm::NodeDiff,
    ];

    /// Column name used in tables.
    pub fn name(self) -> &'static str {
        match self {
            Norm::Nodal => "e_N",
            Norm::Max => "e_inf",
            Norm::Lobatto => "e_L",
            Norm::FluxGauss => "flux_G",
            Norm::L2 => "e_0",
            Norm::H1Semi => "e_1",
            Norm::NodeDiff => "e_P",
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The seven error measures on one mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub h: f64,
    pub nodal: f64,
    pub max: f64,
    pub lobatto: f64,
    pub flux_gauss: f64,
    pub l2: f64,
    pub h1_semi: f64,
    pub node_diff: f64,
}

impl ErrorReport {
    pub fn get(&self, norm: Norm) -> f64 {
        match norm {
            Norm::Nodal => self.nodal,
            Norm::Max => self.max,
            Norm::Lobatto => self.lobatto,
            Norm::FluxGauss => self.flux_gauss,
            Norm::L2 => self.l2,
            Norm::H1Semi => self.h1_semi,
            Norm::NodeDiff => self.node_diff,
        }
    }
}

/// Sampling grid for the max norm: 10 uniform points (endpoints included)
/// per element, and per sub-element on the interface element, as
/// `(element, x, side)`.
pub fn sample_points<T: Real>(pair: &MeshPair<T>) -> Vec<(usize, T, Side)> {
    let mesh = pair.mesh();
    let mut out = Vec::new();
    let mut push = |e: usize, lo: T, hi: T, side: Side| {
        let last = SAMPLES_PER_ELEMENT - 1;
        for k in 0..SAMPLES_PER_ELEMENT {
            let x = if k == last {
                hi
            } else {
                lo + (hi - lo) * T::count(k) / T::count(last)
            };
            out.push((e, x, side));
        }
    };
    for e in 0..mesh.n_elements() {
        let (lo, hi) = mesh.element(e);
        match mesh.placement(e) {
            Placement::Interface => {
                push(e, lo, mesh.alpha(), Side::Left);
                push(e, mesh.alpha(), hi, Side::Right);
            }
            Placement::Regular(side) => push(e, lo, hi, side),
        }
    }
    out
}

fn side_of<T: Real>(x: T, alpha: T) -> Side {
    if x < alpha {
        Side::Left
    } else {
        Side::Right
    }
}

/// Max of `|v|` over [`sample_points`].
pub fn max_sampled<T: Real>(v: &impl FluxField<T>, pair: &MeshPair<T>) -> T {
    sample_points(pair)
        .into_iter()
        .fold(T::zero(), |m, (e, x, s)| m.max(v.value(e, x, s).abs()))
}

/// `(‖v‖_0, |v|_1)` by Gauss–Legendre quadrature of `order` points on each
/// element, split at the interface.
pub fn sobolev_norms<T: Real>(v: &impl FluxField<T>, pair: &MeshPair<T>, order: usize) -> (T, T) {
    let rule = gauss_legendre::<T>(order);
    let alpha = pair.mesh().alpha();
    let (mut l2, mut h1) = (T::zero(), T::zero());
    for el in pair.elements() {
        let e = el.index();
        let (lo, hi) = el.bounds();
        let bps = el.breakpoints();
        l2 = l2
            + integrate_split_with(
                &rule,
                |x| v.value(e, x, side_of(x, alpha)).powi(2),
                lo,
                hi,
                &bps,
            );
        h1 = h1
            + integrate_split_with(
                &rule,
                |x| v.derivative(e, x, side_of(x, alpha)).powi(2),
                lo,
                hi,
                &bps,
            );
    }
    (l2.sqrt(), h1.sqrt())
}

/// Error measures of `e = a - b` on the mesh of `pair`.
pub fn error_report_between<T: Real>(
    a: &impl FluxField<T>,
    b: &impl FluxField<T>,
    pair: &MeshPair<T>,
) -> ErrorReport {
    let e = Difference::new(a, b);
    let mesh = pair.mesh();
    let n = mesh.n_elements();
    let alpha = mesh.alpha();
    let nodal_err: Vec<T> = (0..=n)
        .map(|i| {
            let (el, side) = if i == n {
                (n - 1, Side::Left)
            } else {
                (i, Side::Right)
            };
            e.value(el, mesh.node(i), side)
        })
        .collect();
    let max_abs = |it: &mut dyn Iterator<Item = T>| it.fold(T::zero(), |m, v| m.max(v.abs()));
    let nodal = max_abs(&mut nodal_err.iter().copied());
    let node_diff = max_abs(&mut nodal_err.windows(2).map(|w| w[1] - w[0]));
    let lobatto = max_abs(&mut pair.elements().iter().flat_map(|el| {
        let i = el.index();
        el.lobatto_points()
            .into_iter()
            .map(move |x| e.value(i, x, side_of(x, alpha)))
    }));
    let flux_gauss = max_abs(&mut pair.elements().iter().flat_map(|el| {
        let i = el.index();
        el.gauss_points()
            .iter()
            .map(move |&x| e.flux(i, x, side_of(x, alpha)))
    }));
    let (l2, h1) = sobolev_norms(&e, pair, pair.degree() + 6);
    ErrorReport {
        h: mesh.max_h().approx(),
        nodal: nodal.approx(),
        max: max_sampled(&e, pair).approx(),
        lobatto: lobatto.approx(),
        flux_gauss: flux_gauss.approx(),
        l2: l2.approx(),
        h1_semi: h1.approx(),
        node_diff: node_diff.approx(),
    }
}

/// Error measures of `sol - exact`.
pub fn error_report<T: Real>(sol: &SolutionField<T>, exact: &ExactSolution<T>) -> ErrorReport {
    error_report_between(sol, exact, sol.mesh_pair())
}

/// Least-squares slope of `log e` against `log(1/h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    /// `None` with fewer than two usable points.
    pub rate: Option<f64>,
    pub used: usize,
    /// Points dropped below [`ROUNDOFF_FLOOR`] (or non-finite).
    pub excluded: usize,
}

pub fn fit_rate(h: &[f64], err: &[f64]) -> RateFit {
    let pts: Vec<(f64, f64)> = h
        .iter()
        .zip(err)
        .filter(|(&h, &e)| h > 0.0 && e.is_finite() && e >= ROUNDOFF_FLOOR)
        .map(|(&h, &e)| ((1.0 / h).ln(), e.ln()))
        .collect();
    let used = pts.len();
    let excluded = h.len().min(err.len()) - used;
    let rate = (used >= 2).then(|| {
        let k = used as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        -sxy / sxx
    });
    RateFit {
        rate,
        used,
        excluded,
    }
}

/// Per-norm rates over a mesh sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Rates {
    fits: Vec<(Norm, RateFit)>,
}

impl Rates {
    /// Every rate undefined (fewer than two meshes).
    pub fn undefined() -> Self {
        let none = RateFit {
            rate: None,
            used: 0,
            excluded: 0,
        };
        Rates {
            fits: Norm::ALL.iter().map(|&n| (n, none)).collect(),
        }
    }

    pub fn get(&self, norm: Norm) -> RateFit {
        self.fits
            .iter()
            .find(|(n, _)| *n == norm)
            .map(|(_, f)| *f)
            .expect("every norm is fitted")
    }

    pub fn rate(&self, norm: Norm) -> Option<f64> {
        self.get(norm).rate
    }
}

pub fn fit_rates(reports: &[ErrorReport]) -> Result<Rates> {
    let mut hs: Vec<f64> = reports.iter().map(|r| r.h).collect();
    if reports.len() < 2 {
        return Err(Error::InvalidArgument(
            "rate fit needs at least two meshes".into(),
        ));
    }
    hs.sort_by(|a, b| a.partial_cmp(b).expect("finite h"));
    if hs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(
            "rate fit needs distinct mesh sizes".into(),
        ));
    }
    let h: Vec<f64> = reports.iter().map(|r| r.h).collect();
    let fits = Norm::ALL
        .iter()
        .map(|&n| {
            let e: Vec<f64> = reports.iter().map(|r| r.get(n)).collect();
            (n, fit_rate(&h, &e))
        })
        .collect();
    Ok(Rates { fits })
}
