//! Command-line schema and the run configuration echoed into every output.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ffhybrid_core::hybrid::BumpShape;
use ffhybrid_core::moments::MomentKind;
use ffhybrid_core::polyring::{FiniteField, Poly};
use serde::{Deserialize, Serialize};

use crate::cache::CACHE_ENV;
use crate::scan::ModuliSet;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "ffhybrid", version, about = "L-functions over F_q[T], hybrid Euler-Hadamard products and moments")]
pub struct Cli {
    /// Worker threads for per-character and per-sample work (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached unit-group tables.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Count monic primes by degree, formula against enumeration.
    Primes(PrimesArgs),
    /// Unit-group structure and the character table of a modulus.
    CharTable(CharTableArgs),
    /// L-polynomials, zeros and the critical-line check.
    Lfunc(LfuncArgs),
    /// Hybrid product, explicit formula and short-sum identities per character.
    VerifyIdentity(VerifyArgs),
    /// Moments over primitive characters for a family of moduli.
    MomentScan(ScanArgs),
    /// Random-matrix moments and the Hadamard-product model.
    RmtCompare(RmtArgs),
    /// Triple-product decomposition, coprime splittings and the gamma identity.
    CombinatoricsCheck(CombArgs),
    /// Re-run the configuration echoed in an output file.
    Rerun(RerunArgs),
}

/// Output format and destination: `json` or `csv` for stdout, otherwise a
/// file path whose extension picks the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Destination {
    pub format: Format,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Destination {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "" => Err("empty output destination".into()),
            "json" => Ok(Self { format: Format::Json, path: None }),
            "csv" => Ok(Self { format: Format::Csv, path: None }),
            _ => {
                let path = PathBuf::from(s);
                let format = match path.extension().and_then(|e| e.to_str()) {
                    Some("csv") => Format::Csv,
                    Some("json") | None => Format::Json,
                    Some(other) => return Err(format!("unknown output extension .{other}")),
                };
                Ok(Self { format, path: Some(path) })
            }
        }
    }
}

impl fmt::Display for Destination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.path, self.format) {
            (Some(p), _) => write!(f, "{}", p.display()),
            (None, Format::Json) => f.write_str("json"),
            (None, Format::Csv) => f.write_str("csv"),
        }
    }
}

impl From<Destination> for String {
    fn from(d: Destination) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Destination {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

/// `re,im`, or a bare real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexArg {
    pub re: f64,
    pub im: f64,
}

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected `re,im`, got `{s}`");
        let (re, im) = match s.split_once(',') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 0.0),
        };
        Ok(Self { re, im })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ShapeArg {
    Standard,
    Skewed,
}

impl From<ShapeArg> for BumpShape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Standard => BumpShape::Standard,
            ShapeArg::Skewed => BumpShape::Skewed,
        }
    }
}

fn parse_kind(s: &str) -> Result<MomentKind, String> {
    MomentKind::parse(s).ok_or_else(|| format!("unknown moment kind `{s}` (expected L, P, Z or split)"))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PrimesArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
    /// Include the primes themselves.
    #[arg(long)]
    pub list: bool,
    #[arg(long, default_value = "json")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CharTableArgs {
    #[arg(long)]
    pub q: u32,
    /// Modulus in text form, e.g. `q=3:[0,0,1]` or `[0,0,1]`.
    #[arg(long)]
    pub modulus: String,
    /// Include each character's rotation numbers on every residue.
    #[arg(long)]
    pub values: bool,
    #[arg(long, default_value = "json")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct LfuncArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub modulus: String,
    /// Restrict to primitive characters (default: every non-trivial character).
    #[arg(long)]
    pub all_primitive: bool,
    /// Compute zeros and the critical-line classification.
    #[arg(long)]
    pub zeros: bool,
    /// Also compute coefficients by the group transform and compare.
    #[arg(long)]
    pub fast: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub rh_tol: f64,
    #[arg(long, default_value = "json")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub modulus: String,
    #[arg(long = "X", id = "X", default_value_t = 1)]
    pub x: u32,
    /// Periodic copies of each zero on either side.
    #[arg(long = "M", id = "M", default_value_t = 200)]
    pub m: usize,
    #[arg(long, default_value = "0.5,0")]
    pub s: ComplexArg,
    /// Gauss-Legendre nodes per panel for integrals against the weight.
    #[arg(long, default_value_t = 32)]
    pub bump_nodes: usize,
    #[arg(long, value_enum, default_value_t = ShapeArg::Standard)]
    pub bump_shape: ShapeArg,
    #[arg(long, default_value_t = 1e-3)]
    pub hybrid_tol: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub explicit_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub short_tol: f64,
    #[arg(long, default_value = "json")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub deg_r_min: usize,
    #[arg(long)]
    pub deg_r_max: usize,
    #[arg(long, value_enum, default_value_t = ModuliSet::Primes)]
    pub moduli: ModuliSet,
    /// Semicolon-separated moduli for `--moduli list`.
    #[arg(long)]
    pub list: Option<String>,
    /// At most this many moduli per degree.
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<u32>,
    #[arg(long = "X", id = "X", default_value_t = 1)]
    pub x: u32,
    #[arg(long, value_delimiter = ',', default_value = "L,P,Z,split", value_parser = parse_kind)]
    pub kinds: Vec<MomentKind>,
    #[arg(long, default_value = "csv")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RmtArgs {
    #[arg(long = "N", id = "N", default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long = "X", id = "X", default_value_t = 1)]
    pub x: u32,
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    /// Periodic copies `M` in the Hadamard model; `2M` is run for the stability check.
    #[arg(long, default_value_t = 50)]
    pub periods: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Hadamard samples (default: `--samples / 10`).
    #[arg(long)]
    pub hadamard_samples: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub stability_tol: f64,
    #[arg(long, default_value = "json")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CombArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Component degree bound for the exhaustive decomposition round trip.
    #[arg(long, default_value_t = 2)]
    pub max_deg: usize,
    /// Random admissible instances for the splitting count.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 4)]
    pub gamma_max_deg: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "json")]
    pub out: Destination,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    /// A JSON or CSV file written by this tool.
    pub file: PathBuf,
    /// Where to write (default: stdout, in the file's format).
    #[arg(long)]
    pub out: Option<Destination>,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub schema_version: u32,
    /// The command line as given, without the program name.
    pub argv: Vec<String>,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub command: Command,
}

/// Rejected before any work is done; exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(ConfigError(format!($($arg)*)));
        }
    };
}

pub fn field(q: u32) -> Result<FiniteField, ConfigError> {
    FiniteField::new(q as u64).map_err(|e| ConfigError(e.to_string()))
}

/// Parse a monic modulus of positive degree over `F_q`.
pub fn modulus(q: u32, text: &str) -> Result<Poly, ConfigError> {
    let f = field(q)?;
    let text = text.trim();
    let text = if text.starts_with('[') || text.starts_with("q=") {
        text.to_string()
    } else {
        format!("[{text}]")
    };
    let r = Poly::parse_in(&f, &text).map_err(|e| ConfigError(e.to_string()))?;
    ensure!(!r.is_zero() && r.is_monic(), "modulus {} must be monic", r.to_text());
    ensure!(r.deg() >= 1, "modulus must have degree at least 1");
    Ok(r)
}

impl RunConfig {
    /// Parse a command line (program name first).
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
        let cli = Cli::try_parse_from(&args)?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            argv: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
            threads: cli.threads,
            cache_dir: cli.cache_dir,
            command: cli.command,
        })
    }

    pub fn out(&self) -> Option<&Destination> {
        match &self.command {
            Command::Primes(a) => Some(&a.out),
            Command::CharTable(a) => Some(&a.out),
            Command::Lfunc(a) => Some(&a.out),
            Command::VerifyIdentity(a) => Some(&a.out),
            Command::MomentScan(a) => Some(&a.out),
            Command::RmtCompare(a) => Some(&a.out),
            Command::CombinatoricsCheck(a) => Some(&a.out),
            Command::Rerun(a) => a.out.as_ref(),
        }
    }

    pub fn set_out(&mut self, dest: Destination) {
        match &mut self.command {
            Command::Primes(a) => a.out = dest,
            Command::CharTable(a) => a.out = dest,
            Command::Lfunc(a) => a.out = dest,
            Command::VerifyIdentity(a) => a.out = dest,
            Command::MomentScan(a) => a.out = dest,
            Command::RmtCompare(a) => a.out = dest,
            Command::CombinatoricsCheck(a) => a.out = dest,
            Command::Rerun(a) => a.out = Some(dest),
        }
    }

    /// Check everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(t) = self.threads {
            ensure!(t >= 1, "--threads must be at least 1");
        }
        match &self.command {
            Command::Primes(a) => {
                field(a.q)?;
                ensure!(a.max_degree >= 1, "--max-degree must be at least 1");
            }
            Command::CharTable(a) => {
                modulus(a.q, &a.modulus)?;
                ensure!(a.out.format == Format::Json, "char-table writes JSON only");
            }
            Command::Lfunc(a) => {
                modulus(a.q, &a.modulus)?;
                ensure!(a.rh_tol > 0.0, "--rh-tol must be positive");
                ensure!(a.out.format == Format::Json, "lfunc writes JSON only");
            }
            Command::VerifyIdentity(a) => {
                modulus(a.q, &a.modulus)?;
                ensure!(a.x >= 1, "--X must be at least 1");
                ensure!(a.m >= 1, "--M must be at least 1");
                ensure!(a.bump_nodes >= 2, "--bump-nodes must be at least 2");
                ensure!(a.s.re.is_finite() && a.s.im.is_finite(), "--s must be finite");
                for t in [a.hybrid_tol, a.explicit_tol, a.short_tol] {
                    ensure!(t > 0.0, "tolerances must be positive");
                }
            }
            Command::MomentScan(a) => {
                field(a.q)?;
                ensure!(a.deg_r_min >= 1, "--deg-r-min must be at least 1");
                ensure!(
                    a.deg_r_min <= a.deg_r_max,
                    "empty scan range: --deg-r-min {} > --deg-r-max {}",
                    a.deg_r_min,
                    a.deg_r_max
                );
                ensure!(!a.k.is_empty() && a.k.iter().all(|&k| k >= 1), "--k needs values >= 1");
                ensure!(a.x >= 1, "--X must be at least 1");
                ensure!(!a.kinds.is_empty(), "--kinds is empty");
                ensure!(a.limit != Some(0), "--limit must be positive");
                match (a.moduli, &a.list) {
                    (ModuliSet::List, None) => return Err(ConfigError("--moduli list needs --list".into())),
                    (ModuliSet::List, Some(l)) => {
                        for m in l.split(';').filter(|m| !m.trim().is_empty()) {
                            modulus(a.q, m)?;
                        }
                    }
                    (_, Some(_)) => return Err(ConfigError("--list requires --moduli list".into())),
                    _ => {}
                }
            }
            Command::RmtCompare(a) => {
                field(a.q)?;
                ensure!(a.n >= 1, "--N must be at least 1");
                ensure!(a.samples >= 2, "--samples must be at least 2");
                ensure!(a.hadamard_samples != Some(0) && a.hadamard_samples != Some(1), "--hadamard-samples must be at least 2");
                ensure!(a.x >= 1, "--X must be at least 1");
                ensure!(a.periods >= 1, "--periods must be at least 1");
                ensure!(a.stability_tol > 0.0, "--stability-tol must be positive");
            }
            Command::CombinatoricsCheck(a) => {
                field(a.q)?;
                ensure!(a.max_deg <= 3, "--max-deg above 3 is not supported (exhaustive search)");
                ensure!(a.gamma_max_deg <= 8, "--gamma-max-deg above 8 is not supported");
            }
            Command::Rerun(_) => {}
        }
        Ok(())
    }
}
