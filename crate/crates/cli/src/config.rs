//! Run configuration: command-line flags merged over an optional JSON file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use dunkl_coulomb::verify::Tolerances;
use dunkl_coulomb::{ModelParams, QuantumNumbers};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every subcommand. All are optional so that values from a
/// config file can fill the gaps.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Deformation parameter for the x reflection
    #[arg(long, allow_negative_numbers = true)]
    pub mu1: Option<f64>,
    /// Deformation parameter for the y reflection
    #[arg(long, allow_negative_numbers = true)]
    pub mu2: Option<f64>,
    /// Coupling in H = -½∇² + α/r; bound states need α < 0
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Twice the angular number m
    #[arg(long)]
    pub two_m: Option<u32>,
    /// Radial quantum number
    #[arg(long)]
    pub nr: Option<u32>,
    /// Parity under x -> -x (0 or 1); defaults to 2m mod 2
    #[arg(long)]
    pub e1: Option<u8>,
    /// Parity under y -> -y (0 or 1)
    #[arg(long)]
    pub e2: Option<u8>,
    /// Number of sample points
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Outer radius of the sampling grid
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Modulus of the coherent-state disc point
    #[arg(long)]
    pub xi_mod: Option<f64>,
    /// Argument of the coherent-state disc point
    #[arg(long, allow_negative_numbers = true)]
    pub xi_arg: Option<f64>,
    /// Truncation order of the coherent-state series (closed form when absent)
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Largest m in the spectrum table (integer or half-integer)
    #[arg(long)]
    pub m_max: Option<f64>,
    /// Largest radial number in the spectrum table
    #[arg(long)]
    pub nr_max: Option<u32>,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// all, or a comma-separated list of specfun, angular, radial, algebra, coherent
    #[arg(long)]
    pub suite: Option<String>,
    /// Multiply every verification tolerance by this factor
    #[arg(long)]
    pub tol_scale: Option<f64>,
    /// Sample the Sturmian basis function instead of the bound state
    #[arg(long, conflicts_with = "physical")]
    #[serde(skip)]
    pub sturmian: bool,
    /// Sample the bound state (radial) or the tilted coherent state (coherent)
    #[arg(long)]
    #[serde(skip)]
    pub physical: bool,
    #[arg(skip)]
    pub tolerances: Option<Tolerances>,
}

impl Options {
    /// Values present in `self` win over those in `file`.
    pub fn merged_over(self, file: Options) -> Options {
        macro_rules! pick {
            ($($f:ident),*) => { Options { $($f: self.$f.or(file.$f),)* sturmian: self.sturmian, physical: self.physical } };
        }
        pick!(
            mu1, mu2, alpha, two_m, nr, e1, e2, grid_n, r_max, xi_mod, xi_arg, n_max, m_max,
            nr_max, format, output, suite, tol_scale, tolerances
        )
    }

    pub fn load(path: &Path) -> Result<Options> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn params(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(
            self.mu1.unwrap_or(0.0),
            self.mu2.unwrap_or(0.0),
            self.alpha.unwrap_or(-1.0),
        )?)
    }

    pub fn two_m(&self) -> u32 {
        self.two_m.unwrap_or(0)
    }

    /// Parities default to the lowest sector compatible with m.
    pub fn quantum_numbers(&self) -> Result<QuantumNumbers> {
        let two_m = self.two_m();
        let e1 = self.e1.unwrap_or((two_m % 2) as u8);
        let e2 = self.e2.unwrap_or(0);
        Ok(QuantumNumbers::new(e1, e2, two_m, self.nr.unwrap_or(0))?)
    }

    pub fn grid_n(&self, default: usize) -> Result<usize> {
        match self.grid_n.unwrap_or(default) {
            0 => bail!("--grid-n must be positive"),
            n => Ok(n),
        }
    }

    pub fn r_max(&self) -> Result<f64> {
        let r = self.r_max.unwrap_or(20.0);
        if !(r > 0.0) || !r.is_finite() {
            bail!("--r-max must be positive and finite, got {r}");
        }
        Ok(r)
    }

    /// m_max as an integer count of halves.
    pub fn two_m_max(&self) -> Result<u32> {
        let m = self.m_max.unwrap_or(1.0);
        let twice = 2.0 * m;
        if !(m >= 0.0) || twice.fract() != 0.0 || twice > 1e6 {
            bail!("--m-max must be a non-negative integer or half-integer, got {m}");
        }
        Ok(twice as u32)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn tolerances(&self) -> Result<Tolerances> {
        let base = self.tolerances.unwrap_or_default();
        match self.tol_scale {
            None => Ok(base),
            Some(s) if s >= 0.0 && s.is_finite() => Ok(base.scaled(s)),
            Some(s) => bail!("--tol-scale must be non-negative and finite, got {s}"),
        }
    }
}
