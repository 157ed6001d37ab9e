//! The `verify` command and its JSON config.
//!
//! ```json
//! {
//!   "space": "reals",
//!   "f": { "builtin": "polynomial", "coefficients": [0, 1, 0, 1] },
//!   "m": 2,
//!   "L": 0.25,
//!   "phi": { "kind": "shift_norm", "c": 12 },
//!   "grid": { "values": [-2, -1, -0.5, 0.5, 1, 2] },
//!   "tol": 1e-9
//! }
//! ```

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use quasistab::cubic::{verify_stability, PerturbationBound, StabilityCertificate, StabilityConfig};
use quasistab::function_spaces::sampled_corpus;
use quasistab::{PointwisePolynomial, QuasiNormedSpace};

use crate::{default_tol, file_err, input, CliError, CommandOutput, Verdict};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Reals,
    Lhalf {
        #[serde(default = "default_quadrature", alias = "n")]
        quadrature_n: usize,
    },
    EllR {
        dim: usize,
        r: f64,
    },
}

fn default_quadrature() -> usize {
    quasistab::function_spaces::DEFAULT_QUADRATURE_N
}

impl SpaceSpec {
    fn build(&self) -> Result<QuasiNormedSpace, CliError> {
        Ok(match self {
            SpaceSpec::Reals => QuasiNormedSpace::reals(),
            SpaceSpec::Lhalf { quadrature_n } => QuasiNormedSpace::lhalf(*quadrature_n)?,
            SpaceSpec::EllR { dim, r } => QuasiNormedSpace::ell_r(*dim, *r)?,
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// `sum c_k t^k`, applied coordinatewise.
    Polynomial,
    /// `a t^3 + b t` from `[a, b]`.
    CubicPlusLinear,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FSpec {
    pub builtin: Builtin,
    pub coefficients: Vec<f64>,
}

impl FSpec {
    fn build(&self) -> Result<PointwisePolynomial, CliError> {
        if self.coefficients.iter().any(|c| !c.is_finite()) {
            return Err(input("f.coefficients must be finite"));
        }
        match self.builtin {
            Builtin::Polynomial => Ok(PointwisePolynomial::new(self.coefficients.clone())),
            Builtin::CubicPlusLinear => match self.coefficients[..] {
                [a, b] => Ok(PointwisePolynomial::cubic_plus_linear(a, b)),
                _ => Err(input("f.coefficients: cubic_plus_linear takes [a, b]")),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    /// `c ||x + m y||`.
    ShiftNorm { c: f64 },
    /// `lambda (||x||^s + ||y||^s)` off the axes.
    PowerLaw { lambda: f64, s: f64 },
    Constant { value: f64 },
}

impl PhiSpec {
    fn build(&self, m: f64, space: &QuasiNormedSpace) -> Result<PerturbationBound, CliError> {
        Ok(match self {
            PhiSpec::ShiftNorm { c } => PerturbationBound::shift_norm(*c, m, space.clone())?,
            PhiSpec::PowerLaw { lambda, s } => PerturbationBound::power_law(*lambda, *s, space.clone())?,
            PhiSpec::Constant { value } => PerturbationBound::constant(*value)?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GridSpec {
    /// Scalar points, for one-dimensional spaces.
    Values(Vec<f64>),
    Points(Vec<Vec<f64>>),
    Linspace { start: f64, end: f64, count: usize },
    /// The seeded 20-signal corpus, for `lhalf`.
    Corpus { seed: u64 },
    /// Signals as CSV rows, relative to the config file.
    SignalsCsv(String),
}

impl GridSpec {
    fn build(&self, space: &QuasiNormedSpace, base: &Path) -> Result<Vec<Vec<f64>>, CliError> {
        let grid = match self {
            GridSpec::Values(v) => v.iter().map(|x| vec![*x]).collect(),
            GridSpec::Points(p) => p.clone(),
            GridSpec::Linspace { start, end, count } => {
                if *count < 2 {
                    return Err(input("grid.linspace.count must be at least 2"));
                }
                let step = (end - start) / (*count as f64 - 1.0);
                (0..*count).map(|i| vec![start + step * i as f64]).collect()
            }
            GridSpec::Corpus { seed } => match space.kind() {
                quasistab::spaces::NormKind::LHalf { quadrature_n } => sampled_corpus(*seed, *quadrature_n),
                _ => return Err(input("grid.corpus requires the lhalf space")),
            },
            GridSpec::SignalsCsv(rel) => {
                let path = base.join(rel);
                let file = std::fs::File::open(&path).map_err(|e| file_err(&path)(e.into()))?;
                quasistab::io::read_signals_csv(file).map_err(file_err(&path))?
            }
        };
        if grid.is_empty() {
            return Err(input("grid is empty"));
        }
        if let Some((i, x)) = grid.iter().enumerate().find(|(_, x)| x.len() != space.dim()) {
            return Err(input(format!(
                "grid point {i} has length {}, but {} has dimension {}",
                x.len(),
                space.name(),
                space.dim()
            )));
        }
        if grid.iter().flatten().any(|v| !v.is_finite()) {
            return Err(input("grid points must be finite"));
        }
        Ok(grid)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub space: SpaceSpec,
    pub f: FSpec,
    pub m: f64,
    /// Defaults to the contraction constant implied by `phi`, when it has one.
    #[serde(rename = "L", default)]
    pub lipschitz: Option<f64>,
    pub phi: PhiSpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub n_max: Option<usize>,
}

pub fn parse_config(text: &str) -> Result<VerifyConfig, CliError> {
    serde_json::from_str(text).map_err(|e| input(format!("config: {e}")))
}

/// Builds and runs the certificate described by `cfg`; relative paths are
/// resolved against `base`.
pub fn certify(cfg: &VerifyConfig, base: &Path) -> Result<(StabilityCertificate, Value), CliError> {
    let space = cfg.space.build()?;
    let f = cfg.f.build()?;
    let phi = cfg.phi.build(cfg.m, &space)?;
    let lipschitz = match cfg.lipschitz {
        Some(l) => l,
        None => phi
            .implied_lipschitz(cfg.m)
            .ok_or_else(|| input("L is required for this phi"))?,
    };
    let tol = match cfg.tol {
        Some(t) => t,
        None => default_tol()?,
    };
    let mut config = StabilityConfig::new(cfg.m, lipschitz, space.clone(), tol)?;
    if let Some(n) = cfg.n_max {
        config = config.with_n_max(n);
    }
    let grid = cfg.grid.build(&space, base)?;
    let cert = verify_stability(&f, &phi, &config, &grid)?;

    let mut echo = serde_json::to_value(cfg).map_err(|e| input(e.to_string()))?;
    echo["L"] = lipschitz.into();
    echo["tol"] = tol.into();
    echo["n_max"] = config.n_max().into();
    Ok((cert, echo))
}

pub fn write_points_csv<W: Write>(mut w: W, cert: &StabilityCertificate) -> std::io::Result<()> {
    writeln!(w, "x,defect,phi,error,bound")?;
    for p in &cert.points {
        writeln!(w, "{:?},{:?},{:?},{:?},{:?}", p.x, p.defect, p.phi, p.error, p.bound)?;
    }
    Ok(())
}

pub fn run(config_path: &Path, csv: Option<&Path>) -> Result<CommandOutput, CliError> {
    let text = std::fs::read_to_string(config_path).map_err(|e| file_err(config_path)(e.into()))?;
    let cfg = parse_config(&text)?;
    let base = config_path.parent().unwrap_or(Path::new("."));
    let (cert, echo) = certify(&cfg, base)?;
    if let Some(path) = csv {
        let file = std::fs::File::create(path).map_err(|e| file_err(path)(e.into()))?;
        write_points_csv(std::io::BufWriter::new(file), &cert).map_err(|e| file_err(path)(e.into()))?;
    }
    let verdict = if cert.passed { Verdict::Pass } else { Verdict::Fail };
    let result = serde_json::to_value(&cert).map_err(|e| input(e.to_string()))?;
    Ok(CommandOutput { verdict, config: echo, result })
}
