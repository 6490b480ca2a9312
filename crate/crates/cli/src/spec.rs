//! Run settings: every flag, also readable from a JSON run-spec file. Flags
//! given on the command line override the file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use model_zoo::{Coupling, ModelHandle, ModelKind, ModelParams, RiggingChoice};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use weyl_core::{BoundaryOptions, BoundaryStrategy, ChannelTruncation, EpsSchedule};

use crate::format::{parse_complex, parse_complex_list, parse_grid};
use crate::CliError;

/// A real grid, as `min:max:count`, a comma list, or a JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridArg {
    Values(Vec<f64>),
    Text(String),
}

impl FromStr for GridArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_grid(s)?;
        Ok(GridArg::Text(s.to_string()))
    }
}

impl GridArg {
    pub fn values(&self) -> Result<Vec<f64>, String> {
        match self {
            GridArg::Values(v) if v.is_empty() => Err("empty grid".into()),
            GridArg::Values(v) => Ok(v.clone()),
            GridArg::Text(s) => parse_grid(s),
        }
    }
}

/// α as a number, a per-order list (comma list or JSON array), or text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaArg {
    Value(f64),
    PerOrder(Vec<f64>),
}

impl FromStr for AlphaArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v = s.split(',').map(|t| t.parse::<f64>().map_err(|_| format!("'{t}' is not a number in α '{s}'"))).collect::<Result<Vec<_>, _>>()?;
        Ok(if v.len() == 1 { AlphaArg::Value(v[0]) } else { AlphaArg::PerOrder(v) })
    }
}

/// Complex values as an `a+bi` comma list or a JSON array of such strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexListArg {
    Items(Vec<String>),
    Text(String),
}

impl FromStr for ComplexListArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_complex_list(s)?;
        Ok(ComplexListArg::Text(s.to_string()))
    }
}

impl ComplexListArg {
    pub fn values(&self) -> Result<Vec<Complex64>, String> {
        match self {
            ComplexListArg::Text(s) => parse_complex_list(s),
            ComplexListArg::Items(v) if v.is_empty() => Err("empty list of complex values".into()),
            ComplexListArg::Items(v) => v.iter().map(|s| parse_complex(s)).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunSpec {
    /// Model id, e.g. disk-neumann-robin.
    #[arg(long)]
    pub model: Option<String>,
    /// Coupling α: one number, or a comma list of per-order values.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<AlphaArg>,
    /// Fourier coupling on circles: comma list of k:a_k with a_k as a+bi.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_fourier: Option<String>,
    #[arg(long)]
    pub radius: Option<f64>,
    /// Constant interior potential.
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    /// laplace, identity, or dtn:<λ₀>.
    #[arg(long, allow_hyphen_values = true)]
    pub rigging: Option<String>,
    /// Mode budget: |m| ≤ modes on circles, l ≤ modes on the sphere.
    #[arg(long)]
    pub modes: Option<usize>,
    /// λ grid, min:max:count or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<GridArg>,
    /// direct or extrapolate.
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long)]
    pub eps0: Option<f64>,
    #[arg(long)]
    pub levels: Option<usize>,
    /// Degree of the ε-extrapolation polynomial.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub rank_tol: Option<f64>,
    #[arg(long)]
    pub unitarity_tol: Option<f64>,
    #[arg(long)]
    pub condition_cap: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Chain length (krein-check, stationary-check).
    #[arg(long)]
    pub sites: Option<usize>,
    /// Complex points, comma list of a+bi.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<ComplexListArg>,
    #[arg(long)]
    pub probes: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Half-length of the finite-difference box.
    #[arg(long)]
    pub length: Option<f64>,
    /// Finite-difference step.
    #[arg(long)]
    pub h: Option<f64>,
    /// im-m, krein or gamma.
    #[arg(long)]
    pub entity: Option<String>,
    /// Claimed decay exponent p in s_j = O(j^{-p}).
    #[arg(long)]
    pub exponent: Option<f64>,
    /// Imaginary parts for the audit grid.
    #[arg(long)]
    pub eps: Option<GridArg>,
}

macro_rules! overlay {
    ($flags:expr, $file:expr, $($f:ident),*) => {
        RunSpec { $($f: $flags.$f.or($file.$f)),* }
    };
}

impl RunSpec {
    /// Fields set in `self` win over those in `file`.
    pub fn over(self, file: RunSpec) -> RunSpec {
        overlay!(
            self, file, model, alpha, alpha_fourier, radius, v0, rigging, modes, lambda, strategy, eps0, levels, order, rank_tol,
            unitarity_tol, condition_cap, out, sites, z, probes, seed, length, h, entity, exponent, eps
        )
    }

    pub fn from_file(path: &Path) -> Result<RunSpec, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read run-spec {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("run-spec {}: {e}", path.display())))
    }

    pub fn kind(&self) -> Result<ModelKind, CliError> {
        let id = self.model.as_deref().ok_or_else(|| CliError::Config("missing --model".into()))?;
        id.parse().map_err(|e: model_zoo::ZooError| CliError::Config(e.to_string()))
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        let kind = self.kind()?;
        let alpha = match (&self.alpha, &self.alpha_fourier) {
            (Some(_), Some(_)) => return Err(CliError::Config("give either --alpha or --alpha-fourier".into())),
            (_, Some(f)) => Coupling::Fourier(parse_fourier(f)?),
            (Some(AlphaArg::Value(a)), None) => Coupling::Constant(*a),
            (Some(AlphaArg::PerOrder(v)), None) => Coupling::PerOrder(v.clone()),
            (None, None) if kind.uses_alpha() => return Err(CliError::Config(format!("{kind} needs --alpha"))),
            (None, None) => Coupling::Constant(0.0),
        };
        let mut p = ModelParams::new(kind, 0.0).with_coupling(alpha);
        if let Some(r) = self.radius {
            p = p.with_radius(r);
        }
        if let Some(v) = self.v0 {
            p = p.with_v0(v);
        }
        if let Some(r) = &self.rigging {
            p = p.with_rigging(parse_rigging(r)?);
        }
        Ok(p)
    }

    pub fn handle(&self) -> Result<ModelHandle, CliError> {
        ModelHandle::new(self.params()?).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn truncation(&self, kind: ModelKind) -> ChannelTruncation {
        kind.truncation(self.modes.unwrap_or(16))
    }

    pub fn schedule(&self) -> EpsSchedule {
        let d = EpsSchedule::default();
        EpsSchedule { eps0: self.eps0.unwrap_or(d.eps0), levels: self.levels.unwrap_or(d.levels), order: self.order.unwrap_or(d.order) }
    }

    pub fn strategy(&self) -> Result<BoundaryStrategy, CliError> {
        match self.strategy.as_deref().unwrap_or("direct") {
            "direct" => Ok(BoundaryStrategy::Direct),
            "extrapolate" => Ok(BoundaryStrategy::Extrapolate(self.schedule())),
            s => Err(CliError::Config(format!("unknown strategy '{s}' (direct or extrapolate)"))),
        }
    }

    pub fn boundary_options(&self) -> BoundaryOptions {
        let mut b = BoundaryOptions::default();
        if let Some(t) = self.rank_tol {
            b.rank_rel_tol = t;
        }
        b
    }

    pub fn lambda_grid(&self) -> Result<Vec<f64>, CliError> {
        self.lambda.as_ref().ok_or_else(|| CliError::Config("missing --lambda".into()))?.values().map_err(CliError::Config)
    }

    pub fn z_list(&self, default: &str) -> Result<Vec<Complex64>, CliError> {
        match &self.z {
            Some(z) => z.values(),
            None => parse_complex_list(default),
        }
        .map_err(CliError::Config)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

fn parse_fourier(s: &str) -> Result<Vec<(i64, Complex64)>, CliError> {
    s.split(',')
        .map(|item| {
            let (k, a) = item.split_once(':').ok_or_else(|| CliError::Config(format!("Fourier term '{item}' must be k:a+bi")))?;
            let k = k.parse::<i64>().map_err(|_| CliError::Config(format!("'{k}' is not an integer index")))?;
            Ok((k, parse_complex(a).map_err(CliError::Config)?))
        })
        .collect()
}

fn parse_rigging(s: &str) -> Result<RiggingChoice, CliError> {
    match s {
        "laplace" => Ok(RiggingChoice::Laplace),
        "identity" => Ok(RiggingChoice::Identity),
        _ => {
            let l0 = s
                .strip_prefix("dtn:")
                .and_then(|t| t.parse::<f64>().ok())
                .ok_or_else(|| CliError::Config(format!("unknown rigging '{s}' (laplace, identity or dtn:<λ₀>)")))?;
            Ok(RiggingChoice::Dtn { lambda0: l0 })
        }
    }
}
