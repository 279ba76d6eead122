//! Randomized invariant checks shared by the property tests and the
//! acceptance harness. Each check returns a description of the first
//! violation it finds.
#![allow(dead_code)]

use std::sync::Arc;

use ifvm::analysis::{gl_projection, manufactured, FluxField, ManufacturedParams, SolutionKind};
use ifvm::meshing::{build_mesh, MeshPair};
use ifvm::polykit::{
    gauss_legendre, gauss_rule, gen_legendre_family, gen_lobatto_family, integrate_split_with,
    legendre, lobatto_std, roots_in, PiecewisePoly, Poly, RefInterface, Side,
};
use ifvm::solver::{
    assemble_ifem_on, assemble_ifvm_on, conservation_residual, solve, InterfaceProblem,
    SolutionField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

/// One randomized configuration.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub beta_minus: f64,
    pub beta_plus: f64,
    pub alpha_hat: f64,
    pub p: usize,
    pub seed: u64,
}

impl Draw {
    pub fn new(beta_minus: f64, beta_plus: f64, alpha_hat: f64, p: usize, seed: u64) -> Self {
        Draw {
            beta_minus,
            beta_plus,
            alpha_hat,
            p,
            seed,
        }
    }

    /// β log-uniform in `[0.1, 100]`, α̂ in `(-0.95, 0.95)`, `p` in `1..=4`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut beta = || 10f64.powf(rng.gen_range(-1.0..2.0));
        let (beta_minus, beta_plus) = (beta(), beta());
        Draw {
            beta_minus,
            beta_plus,
            alpha_hat: rng.gen_range(-0.95..0.95),
            p: rng.gen_range(1..=4),
            seed: rng.gen(),
        }
    }

    fn iface(&self) -> RefInterface<f64> {
        RefInterface::new(self.beta_minus, self.beta_plus, self.alpha_hat).expect("valid draw")
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn draws(seed: u64, count: usize) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Draw::random(&mut rng)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coeff_scale(p: &Poly<f64>) -> f64 {
    p.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()))
}

const MAX_N: usize = 6;

/// `|(L_n, L_m)_w| ≤ 1e-11 √(c_n c_m)` and `L_n(1) = 1`.
pub fn orthogonality(d: &Draw) -> Check {
    let iface = d.iface();
    let fam = gen_legendre_family(MAX_N, &iface).map_err(|e| e.to_string())?;
    let norms: Vec<f64> = fam.iter().map(|l| iface.inner_poly(l, l)).collect();
    for n in 0..=MAX_N {
        ensure((fam[n].eval(1.0) - 1.0).abs() <= 1e-13, || {
            format!("L_{n}(1) = {}", fam[n].eval(1.0))
        })?;
        for m in 0..n {
            let ip = iface.inner_poly(&fam[n], &fam[m]);
            ensure(ip.abs() <= 1e-11 * (norms[n] * norms[m]).sqrt(), || {
                format!("(L_{n}, L_{m}) = {ip:e} for {d:?}")
            })?;
        }
    }
    Ok(())
}

/// `φ_n` continuous at α̂ and every derivative of `β̂ φ_n` continuous.
pub fn jump_conditions(d: &Draw) -> Check {
    let iface = d.iface();
    let a = d.alpha_hat;
    let fam = gen_lobatto_family(MAX_N, &iface).map_err(|e| e.to_string())?;
    for (n, phi) in fam.iter().enumerate() {
        let jump = phi.left().eval(a) - phi.right().eval(a);
        ensure(jump.abs() <= 1e-12, || {
            format!("[[phi_{n}]] = {jump:e} for {d:?}")
        })?;
        for j in 1..=n.max(1) {
            let flux = iface.flux_of(&phi.nth_derivative(j));
            let (l, r) = (flux.left(), flux.right());
            let scale = coeff_scale(l).max(coeff_scale(r));
            let jump = l.eval(a) - r.eval(a);
            ensure(jump.abs() <= 1e-10 * scale, || {
                format!("[[beta phi_{n}^({j})]] = {jump:e} (scale {scale:e}) for {d:?}")
            })?;
        }
    }
    Ok(())
}

/// Largest coefficient gap, relative to the largest coefficient of `b`.
fn poly_diff(a: &Poly<f64>, b: &Poly<f64>) -> f64 {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).fold(0.0f64, |m, k| m.max((a.coeff(k) - b.coeff(k)).abs())) / coeff_scale(b)
}

/// Equal coefficients give the standard Legendre and Lobatto polynomials.
pub fn reduction(d: &Draw) -> Check {
    let beta = d.beta_minus;
    let iface = RefInterface::new(beta, beta, d.alpha_hat).map_err(|e| e.to_string())?;
    let gen_l = gen_legendre_family(MAX_N, &iface).map_err(|e| e.to_string())?;
    let gen_phi = gen_lobatto_family(MAX_N, &iface).map_err(|e| e.to_string())?;
    for n in 0..=MAX_N {
        let diff = poly_diff(&gen_l[n], &legendre(n));
        ensure(diff <= 1e-12, || {
            format!("L_{n} differs by {diff:e} at beta = {beta}")
        })?;
        let std = lobatto_std::<f64>(n);
        let diff = poly_diff(gen_phi[n].left(), &std).max(poly_diff(gen_phi[n].right(), &std));
        ensure(diff <= 1e-12, || {
            format!("phi_{n} differs by {diff:e} at beta = {beta}")
        })?;
    }
    Ok(())
}

/// The `p`-point generalized rule is exact through degree `2p - 1` and not
/// beyond.
pub fn quadrature_exactness(d: &Draw) -> Check {
    let iface = d.iface();
    let rule = gauss_rule(d.p, &iface).map_err(|e| e.to_string())?;
    let total = iface.total_weight();
    ensure(rule.weights().iter().all(|&w| w > 0.0), || {
        format!("nonpositive weight for {d:?}")
    })?;
    ensure(rule.points().windows(2).all(|w| w[0] < w[1]), || {
        format!("unsorted points for {d:?}")
    })?;
    ensure(rule.points().iter().all(|x| x.abs() < 1.0), || {
        format!("boundary point for {d:?}")
    })?;
    let sum = rule.weight_sum();
    ensure((sum - total).abs() <= 1e-13 * total, || {
        format!("weight sum {sum} vs {total}")
    })?;
    for m in 0..=2 * d.p {
        let q = rule.apply(|x| x.powi(m as i32));
        let exact = iface.moment(m);
        let err = (q - exact).abs();
        if m < 2 * d.p {
            ensure(err <= 1e-12 * total, || {
                format!("m = {m}: error {err:e} for {d:?}")
            })?;
        } else {
            ensure(err > 1e-6 * exact.abs(), || {
                format!("m = {m} integrated exactly for {d:?}")
            })?;
        }
    }
    Ok(())
}

/// `L_n` has `n` interior roots; `φ_n` has `n - 2` interior roots and both
/// endpoints.
pub fn root_counts(d: &Draw) -> Check {
    let iface = d.iface();
    let legendre = gen_legendre_family(MAX_N, &iface).map_err(|e| e.to_string())?;
    for (n, l) in legendre.iter().enumerate().skip(1) {
        let f: PiecewisePoly<f64> = l.clone().into();
        let r = roots_in(&f, -1.0, 1.0).map_err(|e| e.to_string())?;
        ensure(r.len() == n && r.iter().all(|x| x.abs() < 1.0), || {
            format!("L_{n} roots {r:?} for {d:?}")
        })?;
    }
    let lobatto = gen_lobatto_family(MAX_N, &iface).map_err(|e| e.to_string())?;
    for (n, phi) in lobatto.iter().enumerate().skip(2) {
        let r = roots_in(phi, -1.0, 1.0).map_err(|e| e.to_string())?;
        let interior = r.iter().filter(|x| x.abs() < 1.0 - 1e-12).count();
        ensure(r.len() == n && interior == n - 2, || {
            format!("phi_{n} roots {r:?} for {d:?}")
        })?;
    }
    Ok(())
}

/// Uniform mesh on `(0, 1)` with α at `α̂` of a random element.
fn mesh_pair(d: &Draw, rng: &mut impl Rng) -> Arc<MeshPair<f64>> {
    let n = rng.gen_range(3..=10);
    let k = rng.gen_range(0..n);
    let alpha = (k as f64 + 0.5 * (d.alpha_hat + 1.0)) / n as f64;
    let mesh = build_mesh(0.0, 1.0, n, alpha).expect("valid mesh");
    Arc::new(MeshPair::new(mesh, d.p, d.beta_minus, d.beta_plus).expect("valid basis"))
}

/// Smooth manufactured problem with `γ, c ∈ [0, 1]`, solved by IFVM: every
/// control volume balances to roundoff.
pub fn conservation(d: &Draw) -> Check {
    let mut rng = d.rng();
    let pair = mesh_pair(d, &mut rng);
    let params = ManufacturedParams::diffusion(d.beta_minus, d.beta_plus, pair.mesh().alpha())
        .with_lower_order(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
    let exact = manufactured(SolutionKind::Smooth, params).map_err(|e| e.to_string())?;
    let problem = exact.problem().map_err(|e| e.to_string())?;
    let sol = solve(&assemble_ifvm_on(&problem, pair.clone()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let scale = pair
        .all_gauss_points()
        .iter()
        .fold(1.0f64, |m, &x| m.max(exact.flux(x, Side::Right).abs()));
    let worst = conservation_residual(&sol, &problem)
        .into_iter()
        .fold(0.0f64, |m, r| m.max(r.abs()));
    ensure(worst <= 1e-10 * scale, || {
        format!("residual {worst:e} (scale {scale:e}) for {d:?}")
    })
}

/// `I_h u` interpolates `u` at every node.
pub fn projection_nodes(d: &Draw) -> Check {
    let mut rng = d.rng();
    let pair = mesh_pair(d, &mut rng);
    let params = ManufacturedParams::diffusion(d.beta_minus, d.beta_plus, pair.mesh().alpha());
    let kind = if rng.gen_bool(0.5) {
        SolutionKind::Smooth
    } else {
        SolutionKind::Nonsmooth { m: 2 }
    };
    let exact = manufactured(kind, params).map_err(|e| e.to_string())?;
    let proj = gl_projection(&exact, &pair).map_err(|e| e.to_string())?;
    let mesh = pair.mesh();
    let scale = mesh
        .nodes()
        .iter()
        .fold(1.0f64, |m, &x| m.max(exact.value(x, Side::Right).abs()));
    for (i, (&x, v)) in mesh.nodes().iter().zip(proj.nodal_values()).enumerate() {
        let err = (v - exact.value(x, Side::Right)).abs();
        ensure(err <= 1e-12 * scale, || {
            format!("node {i}: {err:e} for {d:?}")
        })?;
    }
    Ok(())
}

fn random_field(pair: &Arc<MeshPair<f64>>, rng: &mut impl Rng) -> SolutionField<f64> {
    let x: Vec<f64> = (0..pair.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let bc = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    SolutionField::from_global(pair.clone(), &x, bc).expect("matching length")
}

/// `Σ ∫ β (v')² = Σ A (β v')²(g)` for random `v` in the trial space.
pub fn gauss_identity(d: &Draw) -> Check {
    let mut rng = d.rng();
    let pair = mesh_pair(d, &mut rng);
    let v = random_field(&pair, &mut rng);
    let alpha = pair.mesh().alpha();
    let side = |x: f64| if x < alpha { Side::Left } else { Side::Right };
    let rule = gauss_legendre::<f64>(2 * d.p + 4);
    let (mut exact, mut gauss) = (0.0, 0.0);
    for el in pair.elements() {
        let e = el.index();
        let (lo, hi) = el.bounds();
        exact += integrate_split_with(
            &rule,
            |x| pair.beta(x, side(x)) * v.derivative(e, x, side(x)).powi(2),
            lo,
            hi,
            &[alpha],
        );
        for (&g, &a) in el.gauss_points().iter().zip(el.gauss_weights()) {
            gauss += a * v.flux(e, g, side(g)).powi(2);
        }
    }
    let rel = (exact - gauss).abs() / exact;
    ensure(rel <= 1e-11, || format!("relative gap {rel:e} for {d:?}"))
}

/// `u = (Q(x) - Q(α)) / β + d` with `Q' = q` of degree `p - 1` lies in the
/// trial space; both solvers must return it.
pub fn trial_space_exactness(d: &Draw) -> Check {
    let mut rng = d.rng();
    let pair = mesh_pair(d, &mut rng);
    let alpha = pair.mesh().alpha();
    let q = Poly::new((0..d.p).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let big_q = q.antiderivative();
    let dq = q.derivative();
    let shift = rng.gen_range(-1.0..1.0);
    let (gamma, c) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
    let (bm, bp) = (d.beta_minus, d.beta_plus);
    let beta = move |x: f64, s: Side| {
        if x > alpha || (x == alpha && s == Side::Right) {
            bp
        } else {
            bm
        }
    };
    let qa = big_q.eval(alpha);
    let u = move |x: f64, s: Side| (big_q.eval(x) - qa) / beta(x, s) + shift;
    let f = {
        let (u, q) = (u.clone(), q.clone());
        move |x: f64, s: Side| -dq.eval(x) + gamma * q.eval(x) / beta(x, s) + c * u(x, s)
    };
    let problem = InterfaceProblem::new(bm, bp, alpha, (0.0, 1.0))
        .map_err(|e| e.to_string())?
        .with_lower_order(gamma, c)
        .with_source(f)
        .with_boundary(u(0.0, Side::Right), u(1.0, Side::Left));
    let scale = 1.0 + 1.0 / bm.min(bp);
    for (name, system) in [
        ("ifvm", assemble_ifvm_on(&problem, pair.clone())),
        ("ifem", assemble_ifem_on(&problem, pair.clone())),
    ] {
        let sol = solve(&system.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for el in pair.elements() {
            let (lo, hi) = el.bounds();
            for k in 0..=8 {
                let x = lo + (hi - lo) * k as f64 / 8.0;
                let s = if x < alpha { Side::Left } else { Side::Right };
                let err = (sol.value_in(el.index(), x, s) - u(x, s)).abs();
                ensure(err <= 1e-9 * scale, || {
                    format!("{name}: error {err:e} at {x} for {d:?}")
                })?;
            }
        }
    }
    Ok(())
}

/// Every shared check, by name.
pub type NamedCheck = (&'static str, fn(&Draw) -> Check);

pub const CHECKS: [NamedCheck; 9] = [
    ("orthogonality", orthogonality),
    ("jump conditions", jump_conditions),
    ("reduction", reduction),
    ("quadrature exactness", quadrature_exactness),
    ("root counts", root_counts),
    ("conservation residual", conservation),
    ("projection node exactness", projection_nodes),
    ("gauss exactness identity", gauss_identity),
    ("trial space exactness", trial_space_exactness),
];
