//! Experiment configuration: an optional JSON file merged under command-line
//! flags, then resolved against per-suite defaults.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Covariant symbol of π(u) against the symbol map s_λu.
    Coherent,
    /// Integral of s_λu₁ · s_{w₀·λ′}u₂ against tr π(u₁)π(ǔ₂).
    TraceDuality,
    /// Symbols at w₀·λ′ against twisted symbols at w₀·λ.
    CoxeterTwist,
    /// Right invariance under the stabilizer of λ, or a witness against it.
    Stabilizer,
    /// t^{-d} s_{tλ}u against the principal symbol on the orbit.
    ClassicalLimit,
    /// Star-product errors e₁, e₂ over n = 1..n_max.
    Converge,
    /// Rational fit of n ↦ (f₁∗f₂)(x).
    Rationality,
    /// The family of levels with representations in E^{w·(nλ)}.
    Family,
    /// Resolution of the identity by coherent projectors.
    Parseval,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Coherent => "coherent",
            Suite::TraceDuality => "trace-duality",
            Suite::CoxeterTwist => "coxeter-twist",
            Suite::Stabilizer => "stabilizer",
            Suite::ClassicalLimit => "classical-limit",
            Suite::Converge => "converge",
            Suite::Rationality => "rationality",
            Suite::Family => "family",
            Suite::Parseval => "parseval",
        }
    }
}

/// Flags shared by every experiment subcommand. All optional so that a config
/// file can supply them.
#[derive(Args, Clone, Debug, Default)]
pub struct ConfigArgs {
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Algebra type, e.g. A1, A2, B2, G2.
    #[arg(long = "type", value_name = "TYPE")]
    pub type_label: Option<String>,
    /// Weight λ as comma-separated rationals, e.g. `1,-1` or `w[1/2,0]`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Largest level n.
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Comma-separated t values for the classical-limit scan.
    #[arg(long, value_delimiter = ',')]
    pub t_grid: Option<Vec<f64>>,
    /// Haar sample count, or the per-axis order for A1 quadrature.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Number of random (u, k) pairs or elements tested.
    #[arg(long)]
    pub pairs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path for the artifact.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override of the suite's main tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// First test function, a polynomial in the Chevalley coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f2: Option<String>,
    /// Element of U(g) in PBW text form.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Weyl word as 1-based simple reflection indices, e.g. `1,2,1`; `e` for the identity.
    #[arg(long)]
    pub twist: Option<String>,
    /// Held-out samples per level for star-product errors.
    #[arg(long)]
    pub held_out: Option<usize>,
    /// Largest representation dimension built.
    #[arg(long)]
    pub dim_cap: Option<usize>,
}

/// Contents of a JSON config file. Unknown fields are rejected.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "type")]
    pub type_label: Option<String>,
    pub lambda: Option<String>,
    pub suite: Option<Suite>,
    pub nmax: Option<u32>,
    pub t_grid: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub pairs: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub f1: Option<String>,
    pub f2: Option<String>,
    pub u: Option<String>,
    pub twist: Option<String>,
    pub held_out: Option<usize>,
    pub dim_cap: Option<usize>,
}

/// A fully resolved experiment, echoed into every artifact.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub suite: Suite,
    #[serde(rename = "type")]
    pub type_label: String,
    pub lambda: String,
    pub nmax: u32,
    pub t_grid: Vec<f64>,
    pub samples: usize,
    pub pairs: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub f1: String,
    pub f2: String,
    pub u: Option<String>,
    pub twist: Option<String>,
    pub held_out: usize,
    pub dim_cap: usize,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn load_file(path: &Path) -> Result<FileConfig, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
}

/// Non-integral t values spread geometrically over [4, 64].
pub fn default_t_grid() -> Vec<f64> {
    (0..11).map(|j| 4.1 * (63.7f64 / 4.1).powf(j as f64 / 10.0)).collect()
}

fn default_tol(suite: Suite) -> f64 {
    match suite {
        Suite::Coherent | Suite::TraceDuality | Suite::Stabilizer => 1e-7,
        Suite::CoxeterTwist | Suite::Rationality => 1e-6,
        Suite::Parseval | Suite::ClassicalLimit | Suite::Converge | Suite::Family => 1e-8,
    }
}

fn default_samples(suite: Suite, type_label: &str) -> usize {
    match suite {
        Suite::Parseval | Suite::TraceDuality if type_label == "A1" => 12,
        Suite::Parseval | Suite::TraceDuality => 200_000,
        _ => 16,
    }
}

fn default_pairs(suite: Suite) -> usize {
    match suite {
        Suite::Coherent => 50,
        Suite::CoxeterTwist => 20,
        Suite::TraceDuality | Suite::ClassicalLimit => 4,
        _ => 5,
    }
}

fn default_nmax(suite: Suite) -> u32 {
    match suite {
        Suite::Rationality => 24,
        _ => 10,
    }
}

/// Merge flags over the file and fill in defaults. Flags win field by field.
pub fn resolve(suite: Option<Suite>, args: &ConfigArgs) -> Result<ExperimentConfig, UsageError> {
    let file = match &args.config {
        Some(p) => load_file(p)?,
        None => FileConfig::default(),
    };
    let suite = suite.or(file.suite).ok_or_else(|| UsageError("field `suite` is required".into()))?;
    let type_label = args.type_label.clone().or(file.type_label).ok_or_else(|| UsageError("field `type` is required".into()))?;
    let lambda = args.lambda.clone().or(file.lambda).ok_or_else(|| UsageError("field `lambda` is required".into()))?;
    let needs_functions = matches!(suite, Suite::Converge | Suite::Rationality | Suite::Family);
    let f1 = args.f1.clone().or(file.f1);
    let f2 = args.f2.clone().or(file.f2);
    if needs_functions && f1.is_none() {
        return Err(UsageError(format!("field `f1` is required for suite {}", suite.name())));
    }
    let f1 = f1.unwrap_or_else(|| "1".into());
    let f2 = f2.unwrap_or_else(|| f1.clone());
    let t_grid = args.t_grid.clone().or(file.t_grid).unwrap_or_else(default_t_grid);
    if t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(UsageError("field `t_grid` must contain positive finite values".into()));
    }
    let tol = args.tol.or(file.tol).unwrap_or(default_tol(suite));
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(UsageError("field `tol` must be positive".into()));
    }
    let nmax = args.nmax.or(file.nmax).unwrap_or(default_nmax(suite));
    if nmax == 0 {
        return Err(UsageError("field `nmax` must be at least 1".into()));
    }
    let samples = args.samples.or(file.samples).unwrap_or(default_samples(suite, &type_label));
    if samples == 0 {
        return Err(UsageError("field `samples` must be positive".into()));
    }
    let held_out = args.held_out.or(file.held_out).unwrap_or(16);
    if held_out == 0 {
        return Err(UsageError("field `held_out` must be positive".into()));
    }
    Ok(ExperimentConfig {
        suite,
        type_label,
        lambda,
        nmax,
        t_grid,
        samples,
        pairs: args.pairs.or(file.pairs).unwrap_or(default_pairs(suite)).max(1),
        seed: args.seed.or(file.seed).unwrap_or(0),
        out: args.out.clone().or(file.out),
        tol,
        f1,
        f2,
        u: args.u.clone().or(file.u),
        twist: args.twist.clone().or(file.twist),
        held_out,
        dim_cap: args.dim_cap.or(file.dim_cap).unwrap_or(400),
    })
}
