//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;

use ifvm::analysis::{fit_rate, gl_projection, max_sampled, Difference, Norm};
use ifvm::experiment::{preset, run, solve_on, ExperimentConfig, Table};
use ifvm::meshing::build_mesh;
use ifvm::solver::{assemble_ifvm, InterfaceProblem};

/// Relative tolerance on reproduced table entries.
const ROW_REL_TOL: f64 = 0.05;
/// Entrywise tolerance for the node-aligned degeneration.
const DEGENERATE_TOL: f64 = 1e-12;
/// Randomized draws per property family.
const PROPERTY_DRAWS: usize = 128;

type Criterion = fn() -> Result<Outcome, String>;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail }
    }
}

/// Collects individual failures for one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: String) {
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn rate_near(&mut self, t: &Table, norm: Norm, want: f64, tol: f64) {
        match t.rates.rate(norm) {
            Some(r) => self.check(
                (r - want).abs() <= tol,
                format!("{norm} rate {r:.2} vs {want:.2}±{tol}"),
            ),
            None => self.check(false, format!("{norm} rate undefined")),
        }
    }

    fn rate_at_least(&mut self, t: &Table, norm: Norm, floor: f64) {
        match t.rates.rate(norm) {
            Some(r) => self.check(r >= floor, format!("{norm} rate {r:.2} >= {floor}")),
            None => self.check(false, format!("{norm} rate undefined")),
        }
    }

    fn rate_below(&mut self, t: &Table, norm: Norm, ceiling: f64) {
        match t.rates.rate(norm) {
            Some(r) => self.check(r < ceiling, format!("{norm} rate {r:.2} < {ceiling}")),
            None => self.check(false, format!("{norm} rate undefined")),
        }
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Outcome::new(true, self.notes.join("; "))
        } else {
            Outcome::new(false, self.failures.join("; "))
        }
    }
}

fn table(n: u8) -> Result<Table, String> {
    let cfg = preset(n).ok_or_else(|| format!("no preset {n}"))?;
    run(&cfg).map_err(|e| e.to_string())
}

/// Published p = 1 diffusion errors: e_N, flux_G, e_0, e_1 for 1/h = 8..512.
const TABLE1_ROWS: [(usize, [f64; 4]); 7] = [
    (8, [3.41e-05, 2.11e-04, 9.71e-04, 2.51e-02]),
    (16, [8.19e-06, 5.14e-05, 2.42e-04, 1.25e-02]),
    (32, [2.05e-06, 1.29e-05, 6.06e-05, 6.26e-03]),
    (64, [5.22e-07, 3.25e-06, 1.52e-05, 3.14e-03]),
    (128, [1.33e-07, 8.19e-07, 3.82e-06, 1.58e-03]),
    (256, [3.32e-08, 2.05e-07, 9.56e-07, 7.88e-04]),
    (512, [8.30e-09, 5.12e-08, 2.40e-07, 3.94e-04]),
];

fn linear_diffusion() -> Result<Outcome, String> {
    let t = table(1)?;
    let norms = [Norm::Nodal, Norm::FluxGauss, Norm::L2, Norm::H1Semi];
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for (inv_h, want) in TABLE1_ROWS {
        let row = t
            .rows
            .iter()
            .find(|r| r.inv_h == inv_h)
            .ok_or_else(|| format!("missing 1/h = {inv_h}"))?;
        for (norm, w) in norms.iter().zip(want) {
            let got = row.report.get(*norm);
            let rel = (got - w).abs() / w;
            worst = worst.max(rel);
            if rel > ROW_REL_TOL {
                tally.check(false, format!("1/h={inv_h} {norm} {got:.3e} vs {w:.2e}"));
            }
        }
    }
    tally.check(
        worst <= ROW_REL_TOL,
        format!("worst row deviation {:.2}%", 100.0 * worst),
    );
    for (norm, want) in norms.iter().zip([1.99, 2.00, 2.00, 1.00]) {
        tally.rate_near(&t, *norm, want, 0.1);
    }
    tally.rate_at_least(&t, Norm::NodeDiff, 2.8);
    Ok(tally.finish())
}

fn quadratic_diffusion() -> Result<Outcome, String> {
    let t = table(2)?;
    let mut tally = Tally::default();
    let want = [
        (Norm::Nodal, 3.97),
        (Norm::Lobatto, 4.00),
        (Norm::FluxGauss, 3.97),
        (Norm::L2, 2.98),
        (Norm::H1Semi, 1.99),
        (Norm::NodeDiff, 4.89),
    ];
    for (norm, w) in want {
        tally.rate_near(&t, norm, w, 0.15);
    }
    tally.rate_at_least(&t, Norm::Nodal, 3.8);
    tally.rate_at_least(&t, Norm::FluxGauss, 3.8);
    Ok(tally.finish())
}

fn cubic_diffusion() -> Result<Outcome, String> {
    let t = table(3)?;
    let mut tally = Tally::default();
    tally.rate_at_least(&t, Norm::Nodal, 5.7);
    tally.rate_at_least(&t, Norm::FluxGauss, 5.7);
    let excluded = t.rates.get(Norm::Nodal).excluded;
    tally
        .notes
        .push(format!("{excluded} saturated e_N entries excluded"));
    Ok(tally.finish())
}

fn general_equation() -> Result<Outcome, String> {
    let mut tally = Tally::default();
    for (n, p) in [(5u8, 2.0), (6, 3.0)] {
        let t = table(n)?;
        tally.rate_near(&t, Norm::FluxGauss, p + 1.0, 0.15);
        tally.rate_near(&t, Norm::Lobatto, p + 2.0, 0.2);
    }
    Ok(tally.finish())
}

fn nonsmooth() -> Result<Outcome, String> {
    let mut tally = Tally::default();
    let fv = table(7)?;
    tally.rate_below(&fv, Norm::FluxGauss, 3.0);
    tally.rate_below(&fv, Norm::Lobatto, 4.0);
    tally.rate_near(&fv, Norm::FluxGauss, 2.68, 0.5);
    tally.rate_near(&fv, Norm::Lobatto, 2.62, 0.5);
    let fe = table(8)?;
    let nodal = fe
        .rows
        .iter()
        .map(|r| r.report.nodal)
        .fold(0.0f64, f64::max);
    tally.check(nodal < 1e-11, format!("IFEM max e_N {nodal:.2e} < 1e-11"));
    Ok(tally.finish())
}

fn properties() -> Result<Outcome, String> {
    let draws = common::draws(20_240_601, PROPERTY_DRAWS);
    let mut tally = Tally::default();
    for (name, check) in common::CHECKS {
        let failed: Vec<String> = draws.iter().filter_map(|d| check(d).err()).collect();
        match failed.first() {
            None => tally.check(true, format!("{name} {}/{}", draws.len(), draws.len())),
            Some(first) => tally.check(
                false,
                format!(
                    "{name}: {} of {} failed, first: {first}",
                    failed.len(),
                    draws.len()
                ),
            ),
        }
    }
    Ok(tally.finish())
}

fn supercloseness() -> Result<Outcome, String> {
    let cfg = ExperimentConfig {
        degree: 2,
        meshes: vec![8, 16, 32, 64],
        ..Default::default()
    };
    let (mut h, mut err) = (Vec::new(), Vec::new());
    for &inv_h in &cfg.meshes {
        let (sol, exact) = solve_on::<f64>(&cfg, inv_h).map_err(|e| e.to_string())?;
        let pair = sol.mesh_pair();
        let proj = gl_projection(&exact, pair).map_err(|e| e.to_string())?;
        h.push(1.0 / inv_h as f64);
        err.push(max_sampled(&Difference::new(&sol, &proj), pair));
    }
    let fit = fit_rate(&h, &err);
    let mut tally = Tally::default();
    match fit.rate {
        Some(r) => tally.check(
            r >= 3.8,
            format!(
                "|u_T - I_h u|_inf rate {r:.2} >= 3.8 over {} meshes",
                fit.used
            ),
        ),
        None => tally.check(false, "rate undefined".into()),
    }
    Ok(tally.finish())
}

/// Standard finite volume assembly on a node-aligned interface, written
/// from scratch: Lobatto shape functions and Gauss–Legendre control volumes
/// on every element.
mod standard_fvm {
    /// `(P_n(x), P_n'(x))` from the three-term recurrence.
    fn legendre(n: usize, x: f64) -> (f64, f64) {
        let (mut p0, mut p1) = (1.0, x);
        let (mut d0, mut d1) = (0.0, 1.0);
        if n == 0 {
            return (1.0, 0.0);
        }
        for k in 1..n {
            let k = k as f64;
            let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
            let d2 = d0 + (2.0 * k + 1.0) * p1;
            (p0, p1, d0, d1) = (p1, p2, d1, d2);
        }
        (p1, d1)
    }

    pub fn gauss(n: usize) -> (Vec<f64>, Vec<f64>) {
        let mut pts = Vec::with_capacity(n);
        let mut wts = Vec::with_capacity(n);
        for k in 0..n {
            let mut x = -(std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let dp = legendre(n, x).1;
            pts.push(x);
            wts.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        (pts, wts)
    }

    /// `ψ_n(ξ)` and `ψ_n'(ξ)`.
    fn shape(n: usize, xi: f64) -> (f64, f64) {
        match n {
            0 => (0.5 * (1.0 - xi), -0.5),
            1 => (0.5 * (1.0 + xi), 0.5),
            _ => {
                let (a, _) = legendre(n, xi);
                let (b, _) = legendre(n - 2, xi);
                ((a - b) / (2.0 * n as f64 - 1.0), legendre(n - 1, xi).0)
            }
        }
    }

    pub struct Setup {
        pub n: usize,
        pub p: usize,
        pub alpha: f64,
        pub beta: (f64, f64),
        pub gamma: f64,
        pub c: f64,
    }

    fn index(s: &Setup, elem: usize, mode: usize) -> Option<usize> {
        let node = |k: usize| (k >= 1 && k < s.n).then(|| k * s.p - 1);
        match mode {
            0 => node(elem),
            1 => node(elem + 1),
            m => Some(elem * s.p + m - 2),
        }
    }

    /// Dense matrix and the right-hand side for `f = 1 + x`, zero boundary
    /// values.
    pub fn assemble(s: &Setup) -> (Vec<Vec<f64>>, Vec<f64>) {
        let h = 1.0 / s.n as f64;
        let dim = s.n * s.p - 1;
        let node = |k: usize| k as f64 * h;
        let beta = |e: usize| {
            if node(e) < s.alpha {
                s.beta.0
            } else {
                s.beta.1
            }
        };
        let (g, _) = gauss(s.p);
        let point = |e: usize, j: usize| node(e) + 0.5 * h * (g[j] + 1.0);
        let (fine, fine_w) = gauss(12);
        let mut a = vec![vec![0.0; dim]; dim];
        let mut rhs = vec![0.0; dim];
        for row in 0..dim {
            let (ia, ja) = (row / s.p, row % s.p);
            let ib = if ja + 1 < s.p { ia } else { ia + 1 };
            let lo = point(ia, ja);
            let hi = point(ib, (ja + 1) % s.p);
            for m in 0..=s.p {
                let xi_lo = 2.0 * (lo - node(ia)) / h - 1.0;
                let xi_hi = 2.0 * (hi - node(ib)) / h - 1.0;
                if let Some(col) = index(s, ia, m) {
                    a[row][col] += beta(ia) * shape(m, xi_lo).1 * 2.0 / h;
                }
                if let Some(col) = index(s, ib, m) {
                    a[row][col] -= beta(ib) * shape(m, xi_hi).1 * 2.0 / h;
                }
            }
            let cut = node(ia + 1);
            let pieces: Vec<(f64, f64, usize)> = if hi > cut {
                vec![(lo, cut, ia), (cut, hi, ib)]
            } else {
                vec![(lo, hi, ia)]
            };
            for (x0, x1, e) in pieces {
                for (t, w) in fine.iter().zip(&fine_w) {
                    let x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * t;
                    let w = 0.5 * (x1 - x0) * w;
                    let xi = 2.0 * (x - node(e)) / h - 1.0;
                    for m in 0..=s.p {
                        if let Some(col) = index(s, e, m) {
                            let (v, dv) = shape(m, xi);
                            a[row][col] += w * (s.gamma * dv * 2.0 / h + s.c * v);
                        }
                    }
                    rhs[row] += w * (1.0 + x);
                }
            }
        }
        (a, rhs)
    }
}

fn degeneration() -> Result<Outcome, String> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (alpha, n) in [(0.5, 4), (0.5, 8), (0.5, 16), (0.25, 8)] {
        for p in 1..=4 {
            for (gamma, c) in [(0.0, 0.0), (1.0, 1.0)] {
                let setup = standard_fvm::Setup {
                    n,
                    p,
                    alpha,
                    beta: (1.0, 5.0),
                    gamma,
                    c,
                };
                let (want, want_rhs) = standard_fvm::assemble(&setup);
                let problem = InterfaceProblem::new(1.0, 5.0, alpha, (0.0, 1.0))
                    .map_err(|e| e.to_string())?
                    .with_lower_order(gamma, c)
                    .with_source(|x, _| 1.0 + x);
                let mesh = build_mesh(0.0, 1.0, n, alpha).map_err(|e| e.to_string())?;
                if mesh.interface_element().is_some() {
                    return Ok(Outcome::new(
                        false,
                        format!("alpha = {alpha} not detected on a node"),
                    ));
                }
                let system = assemble_ifvm(&problem, &mesh, p).map_err(|e| e.to_string())?;
                let got = system.matrix().to_dense();
                if got.len() != want.len() {
                    return Ok(Outcome::new(
                        false,
                        format!("dimension {} vs {}", got.len(), want.len()),
                    ));
                }
                for (gr, wr) in got.iter().zip(&want) {
                    for (g, w) in gr.iter().zip(wr) {
                        worst = worst.max((g - w).abs());
                    }
                }
                for (g, w) in system.rhs().iter().zip(&want_rhs) {
                    worst = worst.max((g - w).abs());
                }
                cases += 1;
            }
        }
    }
    Ok(Outcome::new(
        worst <= DEGENERATE_TOL,
        format!("{cases} node-aligned systems, max entry gap {worst:.2e} <= {DEGENERATE_TOL:e}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("C1 linear diffusion table", linear_diffusion),
        ("C2 quadratic diffusion rates", quadratic_diffusion),
        ("C3 cubic diffusion rates", cubic_diffusion),
        ("C4 general equation rates", general_equation),
        ("C5 nonsmooth solution", nonsmooth),
        ("C6 property suites", properties),
        ("C7 supercloseness", supercloseness),
        ("C8 node-aligned degeneration", degeneration),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!("{tag} {name}: {}", outcome.detail);
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
