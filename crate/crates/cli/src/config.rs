//! Flag parsing into a validated run configuration.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use sturm_core::{builtin, parse_potential, BoundaryCondition, Method, Problem64, SlProblem};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeshSpec {
    Uniform(usize),
    Adaptive(f64),
}

impl FromStr for MeshSpec {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) =
            s.split_once(':').ok_or_else(|| anyhow!("mesh spec `{s}`: expected uniform:N or adaptive:TOL"))?;
        match kind.trim() {
            "uniform" => {
                let n: usize = value.trim().parse().with_context(|| format!("mesh spec `{s}`: bad interval count"))?;
                if n == 0 {
                    bail!("mesh spec `{s}`: need at least one interval");
                }
                Ok(MeshSpec::Uniform(n))
            }
            "adaptive" => {
                let tol: f64 = value.trim().parse().with_context(|| format!("mesh spec `{s}`: bad tolerance"))?;
                if !(tol > 0.0 && tol.is_finite()) {
                    bail!("mesh spec `{s}`: tolerance must be positive");
                }
                Ok(MeshSpec::Adaptive(tol))
            }
            other => bail!("mesh spec `{s}`: unknown kind `{other}`"),
        }
    }
}

impl fmt::Display for MeshSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshSpec::Uniform(n) => write!(f, "uniform:{n}"),
            MeshSpec::Adaptive(t) => write!(f, "adaptive:{t:e}"),
        }
    }
}

/// Inclusive index range `LO..HI`; a single `K` means `K..K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for IndexRange {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse =
            |t: &str| t.trim().parse::<usize>().with_context(|| format!("index range `{s}`: `{t}` is not an index"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let k = parse(s)?;
                (k, k)
            }
        };
        if lo > hi {
            bail!("index range `{s}`: LO must not exceed HI");
        }
        Ok(IndexRange { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
    Pretty,
}

impl FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            "pretty" => Ok(Format::Pretty),
            other => bail!("unknown format `{other}` (expected csv|tsv|pretty)"),
        }
    }
}

pub fn parse_bc(s: &str) -> Result<BoundaryCondition<f64>> {
    match s.trim().to_ascii_lowercase().as_str() {
        "dirichlet" => return Ok(BoundaryCondition::dirichlet()),
        "neumann" => return Ok(BoundaryCondition::neumann()),
        _ => {}
    }
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("boundary condition `{s}`: expected dirichlet|neumann|A1,A2,B1,B2"))?;
    if v.len() != 4 {
        bail!("boundary condition `{s}`: expected four coefficients A1,A2,B1,B2");
    }
    Ok(BoundaryCondition::new(v[0], v[1], v[2], v[3])?)
}

pub fn parse_interval(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("interval `{s}`: expected A:B"))?;
    let a: f64 = a.trim().parse().with_context(|| format!("interval `{s}`: bad left endpoint"))?;
    let b: f64 = b.trim().parse().with_context(|| format!("interval `{s}`: bad right endpoint"))?;
    Ok((a, b))
}

pub fn parse_params(items: &[String]) -> Result<HashMap<String, f64>> {
    let mut out = HashMap::new();
    for item in items {
        let (name, value) = item.split_once('=').ok_or_else(|| anyhow!("parameter `{item}`: expected NAME=VALUE"))?;
        let v: f64 = value.trim().parse().with_context(|| format!("parameter `{item}`: bad value"))?;
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

/// Problem selection flags, before validation.
#[derive(Clone, Debug, Default)]
pub struct ProblemFlags {
    pub problem: Option<String>,
    pub params: Vec<String>,
    pub potential: Option<String>,
    pub interval: Option<String>,
    pub bc: Option<String>,
}

pub fn build_problem(flags: &ProblemFlags) -> Result<Problem64> {
    let bc = flags.bc.as_deref().map(parse_bc).transpose()?;
    let interval = flags.interval.as_deref().map(parse_interval).transpose()?;
    let mut problem = match (&flags.problem, &flags.potential) {
        (Some(_), Some(_)) => bail!("--problem and --potential are mutually exclusive"),
        (None, None) => bail!("one of --problem or --potential is required"),
        (Some(name), None) => builtin::<f64>(name, &parse_params(&flags.params)?)?,
        (None, Some(expr)) => {
            if !flags.params.is_empty() {
                bail!("--param applies to builtin problems only");
            }
            let (a, b) = interval.ok_or_else(|| anyhow!("--potential needs --interval A:B"))?;
            let q = parse_potential(expr)?.into_coef::<f64>();
            SlProblem::schroedinger(q, a, b, BoundaryCondition::dirichlet())?.with_name("expression")
        }
    };
    if let Some((a, b)) = interval {
        problem = problem.with_interval(a, b)?;
    }
    if let Some(bc) = bc {
        problem = problem.with_bc(bc);
    }
    Ok(problem)
}

/// Reference values `k → λ_k` from a file of `k value` lines; `#` starts a comment.
pub fn read_reference(path: &Path) -> Result<HashMap<usize, f64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        if fields.len() != 2 {
            bail!("{}:{}: expected `k value`", path.display(), no + 1);
        }
        let k: usize = fields[0].parse().with_context(|| format!("{}:{}: bad index", path.display(), no + 1))?;
        let v: f64 = fields[1].parse().with_context(|| format!("{}:{}: bad value", path.display(), no + 1))?;
        out.insert(k, v);
    }
    Ok(out)
}

pub fn parse_method(s: &str) -> Result<Method> {
    s.parse::<Method>().map_err(|e| anyhow!(e))
}
