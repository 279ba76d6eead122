//! Flat `key = value` experiment files.
//!
//! ```text
//! # quadratic run
//! degree = 2
//! beta_minus = 1
//! beta_plus = 5
//! alpha = pi/6
//! mesh = 8, 16, 32, 64
//! ```

use std::path::{Path, PathBuf};

use ifvm::analysis::SolutionKind;
use ifvm::experiment::{ExperimentConfig, Method, OutputFormat};

use crate::error::{CliError, Result};

/// Settings from a file or the command line; unset fields keep the base value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub degree: Option<usize>,
    pub beta_minus: Option<f64>,
    pub beta_plus: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    pub nonsmooth: Option<bool>,
    pub m: Option<u32>,
    pub meshes: Option<Vec<usize>>,
    pub method: Option<Method>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    /// `other` wins where both are set.
    pub fn merged(self, other: Overrides) -> Overrides {
        Overrides {
            degree: other.degree.or(self.degree),
            beta_minus: other.beta_minus.or(self.beta_minus),
            beta_plus: other.beta_plus.or(self.beta_plus),
            alpha: other.alpha.or(self.alpha),
            gamma: other.gamma.or(self.gamma),
            c: other.c.or(self.c),
            nonsmooth: other.nonsmooth.or(self.nonsmooth),
            m: other.m.or(self.m),
            meshes: other.meshes.or(self.meshes),
            method: other.method.or(self.method),
            format: other.format.or(self.format),
            out: other.out.or(self.out),
        }
    }

    pub fn apply(&self, base: ExperimentConfig) -> ExperimentConfig {
        let kind = match (self.nonsmooth, self.m, base.kind) {
            (Some(false), _, _) => SolutionKind::Smooth,
            (Some(true), m, SolutionKind::Nonsmooth { m: old }) => SolutionKind::Nonsmooth {
                m: m.unwrap_or(old),
            },
            (Some(true), m, SolutionKind::Smooth) => SolutionKind::Nonsmooth { m: m.unwrap_or(2) },
            (None, Some(m), SolutionKind::Nonsmooth { .. }) => SolutionKind::Nonsmooth { m },
            (None, _, kind) => kind,
        };
        ExperimentConfig {
            degree: self.degree.unwrap_or(base.degree),
            beta_minus: self.beta_minus.unwrap_or(base.beta_minus),
            beta_plus: self.beta_plus.unwrap_or(base.beta_plus),
            alpha: self.alpha.unwrap_or(base.alpha),
            gamma: self.gamma.unwrap_or(base.gamma),
            c: self.c.unwrap_or(base.c),
            kind,
            meshes: self.meshes.clone().unwrap_or(base.meshes),
            method: self.method.unwrap_or(base.method),
            format: self.format.unwrap_or(base.format),
        }
    }
}

/// A real number, or a multiple of π written like `pi/6`, `2pi/3`, `3*pi/4`
/// or `-pi`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if !t.contains("pi") {
        return t.parse::<f64>().map_err(|_| format!("not a number: {s:?}"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t.as_str(), None),
    };
    let factor = num
        .strip_suffix("pi")
        .map(|f| f.trim().trim_end_matches('*').trim())
        .ok_or_else(|| format!("not a multiple of pi: {s:?}"))?;
    let factor = match factor {
        "" => 1.0,
        "-" => -1.0,
        f => f
            .parse::<f64>()
            .map_err(|_| format!("bad factor in {s:?}"))?,
    };
    let den = match den {
        None => 1.0,
        Some(d) => d
            .parse::<f64>()
            .map_err(|_| format!("bad denominator in {s:?}"))?,
    };
    if den == 0.0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(factor * std::f64::consts::PI / den)
}

/// Comma- or space-separated list of `1/h` values.
pub fn parse_meshes(s: &str) -> Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("bad mesh size {t:?}"))
        })
        .collect()
}

pub fn parse_kind(s: &str) -> Result<bool, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "smooth" => Ok(false),
        "nonsmooth" => Ok(true),
        other => Err(format!("unknown solution kind {other:?}")),
    }
}

pub fn parse_str(text: &str, path: &Path) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |msg: String| CliError::ConfigFile {
            path: path.to_path_buf(),
            line: k + 1,
            msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| fail(format!("expected key = value, got {line:?}")))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        let int = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| format!("not an integer: {v:?}"))
        };
        let res: Result<(), String> = (|| {
            match key.as_str() {
                "degree" | "p" => o.degree = Some(int(value)?),
                "beta_minus" => o.beta_minus = Some(parse_real(value)?),
                "beta_plus" => o.beta_plus = Some(parse_real(value)?),
                "alpha" => o.alpha = Some(parse_real(value)?),
                "gamma" => o.gamma = Some(parse_real(value)?),
                "c" | "c_coef" => o.c = Some(parse_real(value)?),
                "kind" => o.nonsmooth = Some(parse_kind(value)?),
                "m" => o.m = Some(int(value)? as u32),
                "mesh" | "meshes" => o.meshes = Some(parse_meshes(value)?),
                "method" => o.method = Some(value.parse().map_err(|e: ifvm::Error| e.to_string())?),
                "format" => o.format = Some(value.parse().map_err(|e: ifvm::Error| e.to_string())?),
                "out" => o.out = Some(PathBuf::from(value)),
                other => return Err(format!("unknown key {other:?}")),
            }
            Ok(())
        })();
        res.map_err(fail)?;
    }
    Ok(o)
}

pub fn load(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text, path)
}
