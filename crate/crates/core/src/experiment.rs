//! Convergence studies over families of uniform meshes, table rendering and
//! data dumps for plotting.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::analysis::{
    error_report, fit_rates, manufactured, sample_points, ErrorReport, ExactSolution,
    ManufacturedParams, Norm, Rates, SolutionKind,
};
use crate::error::{Error, Result};
use crate::meshing::{build_mesh, MeshPair};
use crate::polykit::{
    gauss_rule, gen_legendre_family, gen_lobatto_family, roots_in, RefInterface, Side,
};
use crate::scalar::Real;
use crate::solver::{assemble_ifem_on, assemble_ifvm_on, solve, SolutionField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Ifvm,
    Ifem,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ifvm" => Ok(Method::Ifvm),
            "ifem" => Ok(Method::Ifem),
            _ => Err(Error::InvalidArgument(format!("unknown method '{s}'"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Ifvm => "ifvm",
            Method::Ifem => "ifem",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            _ => Err(Error::InvalidArgument(format!("unknown format '{s}'"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "markdown",
        })
    }
}

/// One convergence study on `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub degree: usize,
    pub beta_minus: f64,
    pub beta_plus: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub c: f64,
    pub kind: SolutionKind,
    /// Values of `1/h`, strictly increasing.
    pub meshes: Vec<usize>,
    pub method: Method,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            degree: 1,
            beta_minus: 1.0,
            beta_plus: 5.0,
            alpha: std::f64::consts::PI / 6.0,
            gamma: 0.0,
            c: 0.0,
            kind: SolutionKind::Smooth,
            meshes: vec![8, 16, 32, 64],
            method: Method::Ifvm,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        if self.meshes.is_empty() {
            return Err(Error::InvalidArgument("mesh list is empty".into()));
        }
        if self.meshes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "mesh list must be strictly increasing".into(),
            ));
        }
        if self.meshes[0] < 2 {
            return Err(Error::InvalidArgument("1/h must be at least 2".into()));
        }
        if !(self.beta_minus > 0.0 && self.beta_plus > 0.0) {
            return Err(Error::InvalidCoefficient("beta must be positive".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::AlphaOutsideDomain {
                alpha: self.alpha,
                a: 0.0,
                b: 1.0,
            });
        }
        if let SolutionKind::Nonsmooth { m } = self.kind {
            if m < 2 {
                return Err(Error::InvalidArgument("m must be at least 2".into()));
            }
        }
        if !(self.gamma.is_finite() && self.c.is_finite()) {
            return Err(Error::InvalidCoefficient(
                "gamma and c must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Columns of the result table; the Lobatto column is dropped for `p = 1`.
    pub fn columns(&self) -> Vec<Norm> {
        Norm::ALL
            .into_iter()
            .filter(|&n| self.degree > 1 || n != Norm::Lobatto)
            .collect()
    }

    pub fn exact<T: Real>(&self) -> Result<ExactSolution<T>> {
        let params = ManufacturedParams::diffusion(
            T::lit(self.beta_minus),
            T::lit(self.beta_plus),
            T::lit(self.alpha),
        )
        .with_lower_order(T::lit(self.gamma), T::lit(self.c));
        manufactured(self.kind, params)
    }
}

/// Discrete solution and exact solution on `1/h = inv_h`.
pub fn solve_on<T: Real>(
    config: &ExperimentConfig,
    inv_h: usize,
) -> Result<(SolutionField<T>, ExactSolution<T>)> {
    let exact = config.exact::<T>()?;
    let problem = exact.problem()?;
    let mesh = build_mesh(T::zero(), T::one(), inv_h, T::lit(config.alpha))?;
    let pair = Arc::new(MeshPair::new(
        mesh,
        config.degree,
        problem.beta_minus(),
        problem.beta_plus(),
    )?);
    let system = match config.method {
        Method::Ifvm => assemble_ifvm_on(&problem, pair)?,
        Method::Ifem => assemble_ifem_on(&problem, pair)?,
    };
    Ok((solve(&system)?, exact))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub inv_h: usize,
    pub report: ErrorReport,
}

/// Errors per mesh and the fitted rates.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub config: ExperimentConfig,
    pub rows: Vec<TableRow>,
    pub rates: Rates,
}

pub fn run(config: &ExperimentConfig) -> Result<Table> {
    run_with::<f64>(config)
}

/// [`run`] in the scalar type `T`. Meshes are solved in parallel and
/// collected in order.
pub fn run_with<T: Real>(config: &ExperimentConfig) -> Result<Table> {
    config.validate()?;
    let rows = config
        .meshes
        .par_iter()
        .map(|&inv_h| {
            let (sol, exact) = solve_on::<T>(config, inv_h).map_err(|e| Error::OnMesh {
                inv_h,
                source: Box::new(e),
            })?;
            Ok(TableRow {
                inv_h,
                report: error_report(&sol, &exact),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reports: Vec<ErrorReport> = rows.iter().map(|r| r.report).collect();
    let rates = if reports.len() >= 2 {
        fit_rates(&reports)?
    } else {
        Rates::undefined()
    };
    Ok(Table {
        config: config.clone(),
        rows,
        rates,
    })
}

/// `x` as `d.dde±XX`.
pub fn fmt_sci(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.digits$e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn fmt_rate(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), |r| format!("{r:.2}"))
}

impl Table {
    pub fn columns(&self) -> Vec<Norm> {
        self.config.columns()
    }

    pub fn to_csv(&self) -> String {
        let cols = self.columns();
        let mut out = String::from("1/h");
        for c in &cols {
            out.push(',');
            out.push_str(c.name());
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.inv_h.to_string());
            for &c in &cols {
                out.push(',');
                out.push_str(&fmt_sci(row.report.get(c), 6));
            }
            out.push('\n');
        }
        out.push_str("rate");
        for &c in &cols {
            out.push(',');
            out.push_str(&fmt_rate(self.rates.rate(c)));
        }
        out.push('\n');
        out
    }

    pub fn to_markdown(&self) -> String {
        let cols = self.columns();
        let cfg = &self.config;
        let mut out = String::new();
        let kind = match cfg.kind {
            SolutionKind::Smooth => "smooth".to_string(),
            SolutionKind::Nonsmooth { m } => format!("nonsmooth m={m}"),
        };
        let _ = writeln!(
            out,
            "P{} {} ({kind}), beta = [{}, {}], alpha = {:.6}, gamma = {}, c = {}\n",
            cfg.degree,
            cfg.method.to_string().to_uppercase(),
            cfg.beta_minus,
            cfg.beta_plus,
            cfg.alpha,
            cfg.gamma,
            cfg.c
        );
        out.push_str("| 1/h |");
        for c in &cols {
            let _ = write!(out, " {} |", c.name());
        }
        out.push_str("\n|---:|");
        for _ in &cols {
            out.push_str(":---:|");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "| {} |", row.inv_h);
            for &c in &cols {
                let _ = write!(out, " {} |", fmt_sci(row.report.get(c), 2));
            }
            out.push('\n');
        }
        out.push_str("| rate |");
        for &c in &cols {
            let _ = write!(out, " {} |", fmt_rate(self.rates.rate(c)));
        }
        out.push('\n');
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Markdown => self.to_markdown(),
        }
    }
}

/// Numbers of the prebuilt table configurations.
pub const PRESETS: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Prebuilt studies: 1–3 pure diffusion for `p = 1, 2, 3`; 4–6 the same with
/// `γ = c = 1`; 7 (alias 9) the nonsmooth `m = 2` study with IFVM and 8
/// (alias 10) with IFEM.
pub fn preset(table: u8) -> Option<ExperimentConfig> {
    let doubling = vec![8, 16, 32, 64, 128, 256, 512];
    let by_eight: Vec<usize> = (1..=7).map(|k| 8 * k).collect();
    let base = ExperimentConfig::default();
    let cfg = match table {
        1 => ExperimentConfig {
            degree: 1,
            meshes: doubling,
            ..base
        },
        2 => ExperimentConfig {
            degree: 2,
            meshes: by_eight,
            ..base
        },
        3 => ExperimentConfig {
            degree: 3,
            meshes: (4..=9).collect(),
            ..base
        },
        4 => ExperimentConfig {
            degree: 1,
            gamma: 1.0,
            c: 1.0,
            meshes: doubling,
            ..base
        },
        5 => ExperimentConfig {
            degree: 2,
            gamma: 1.0,
            c: 1.0,
            meshes: by_eight,
            ..base
        },
        6 => ExperimentConfig {
            degree: 3,
            gamma: 1.0,
            c: 1.0,
            meshes: (2..=9).map(|k| 2 * k).collect(),
            ..base
        },
        7 | 9 => ExperimentConfig {
            degree: 2,
            kind: SolutionKind::Nonsmooth { m: 2 },
            meshes: vec![8, 16, 32, 64, 128],
            ..base
        },
        8 | 10 => ExperimentConfig {
            degree: 2,
            kind: SolutionKind::Nonsmooth { m: 2 },
            meshes: vec![8, 16, 32, 64, 128],
            method: Method::Ifem,
            ..base
        },
        _ => return None,
    };
    Some(cfg)
}

const BASIS_GRID: usize = 401;

/// Samples of `φ_0..φ_p` and `L_0..L_p` on 401 uniform points of `[-1, 1]`,
/// followed by the Gauss points and weights and the Lobatto points as `#`
/// comment lines. At the breakpoint the right limit is reported.
pub fn dump_basis(p: usize, beta_minus: f64, beta_plus: f64, alpha_hat: f64) -> Result<String> {
    if p == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let iface = RefInterface::new(beta_minus, beta_plus, alpha_hat)?;
    let mut lobatto = gen_lobatto_family(p + 1, &iface)?;
    let next = lobatto.pop().expect("p + 2 functions");
    let legendre = gen_legendre_family(p, &iface)?;
    let rule = gauss_rule(p, &iface)?;
    let lobatto_pts = roots_in(&next, -1.0, 1.0)?;
    let mut out = String::from("xi");
    for n in 0..=p {
        let _ = write!(out, ",phi_{n}");
    }
    for n in 0..=p {
        let _ = write!(out, ",L_{n}");
    }
    out.push('\n');
    for k in 0..BASIS_GRID {
        let xi = if k == BASIS_GRID - 1 {
            1.0
        } else {
            -1.0 + 2.0 * k as f64 / (BASIS_GRID - 1) as f64
        };
        out.push_str(&fmt_sci(xi, 6));
        for phi in &lobatto {
            let _ = write!(out, ",{}", fmt_sci(phi.eval(xi, Side::Right), 12));
        }
        for l in &legendre {
            let _ = write!(out, ",{}", fmt_sci(l.eval(xi), 12));
        }
        out.push('\n');
    }
    let list = |v: &[f64]| {
        v.iter()
            .map(|x| fmt_sci(*x, 15))
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(out, "# alpha_hat,{}", fmt_sci(alpha_hat, 15));
    let _ = writeln!(out, "# gauss_points,{}", list(rule.points()));
    let _ = writeln!(out, "# gauss_weights,{}", list(rule.weights()));
    let _ = writeln!(out, "# lobatto_points,{}", list(&lobatto_pts));
    Ok(out)
}

/// Pointwise error `e = u_T - u` and flux error `β e'` on one mesh.
///
/// Columns: `x, element, point, e, flux_e`, where `element` counts from 1 and
/// `point` is `grid` (the max-norm sampling grid), `gauss`, `lobatto` or
/// `interface`.
pub fn dump_profile(config: &ExperimentConfig, inv_h: usize) -> Result<String> {
    config.validate()?;
    let (sol, exact) = solve_on::<f64>(config, inv_h)?;
    let pair = sol.mesh_pair();
    let alpha = pair.mesh().alpha();
    let side_of = |x: f64| if x < alpha { Side::Left } else { Side::Right };
    let mut out = String::from("x,element,point,e,flux_e\n");
    let mut line = |x: f64, e: usize, label: &str, side: Side| {
        let err = sol.value_in(e, x, side) - exact.value(x, side);
        let ferr = sol.flux_in(e, x, side) - exact.flux(x, side);
        let _ = writeln!(
            out,
            "{},{},{label},{},{}",
            fmt_sci(x, 12),
            e + 1,
            fmt_sci(err, 6),
            fmt_sci(ferr, 6)
        );
    };
    let grid = sample_points(pair);
    for el in pair.elements() {
        let e = el.index();
        for &(_, x, s) in grid.iter().filter(|g| g.0 == e) {
            line(x, e, "grid", s);
        }
        for &x in el.gauss_points() {
            line(x, e, "gauss", side_of(x));
        }
        for x in el.lobatto_points() {
            line(x, e, "lobatto", side_of(x));
        }
        if el.is_interface() {
            line(alpha, e, "interface", Side::Left);
        }
    }
    Ok(out)
}
