use std::sync::Arc;

use crate::analysis::FluxField;
use crate::error::Result;
use crate::meshing::MeshPair;
use crate::polykit::{gauss_legendre, integrate_split_with, Side};
use crate::scalar::Real;
use crate::solver::SolutionField;

/// Gauss–Lobatto projection `I_h u`: nodal interpolation plus, per element,
/// `u_{i,n} = ∫ β u' φ'_{i,n} / ∫ β (φ'_{i,n})²` for `n = 2..p`.
pub fn gl_projection<T: Real>(
    u: &impl FluxField<T>,
    pair: &Arc<MeshPair<T>>,
) -> Result<SolutionField<T>> {
    let mesh = pair.mesh();
    let n = mesh.n_elements();
    let p = pair.degree();
    let alpha = mesh.alpha();
    let side_of = |x: T| if x < alpha { Side::Left } else { Side::Right };
    let rule = gauss_legendre::<T>(p + 6);
    let nodal: Vec<T> = (0..=n)
        .map(|i| {
            let (e, s) = if i == n {
                (n - 1, Side::Left)
            } else {
                (i, Side::Right)
            };
            u.value(e, mesh.node(i), s)
        })
        .collect();
    let modes: Vec<Vec<T>> = pair
        .elements()
        .iter()
        .map(|el| {
            let e = el.index();
            let (lo, hi) = el.bounds();
            let bps = el.breakpoints();
            (2..=p)
                .map(|m| {
                    let num = integrate_split_with(
                        &rule,
                        |x| u.flux(e, x, side_of(x)) * el.mode_derivative(m, x, side_of(x)),
                        lo,
                        hi,
                        &bps,
                    );
                    let den = integrate_split_with(
                        &rule,
                        |x| el.mode_flux(m, x, side_of(x)) * el.mode_derivative(m, x, side_of(x)),
                        lo,
                        hi,
                        &bps,
                    );
                    num / den
                })
                .collect()
        })
        .collect();
    SolutionField::from_parts(pair.clone(), &nodal, &modes)
}
