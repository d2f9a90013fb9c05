use std::path::PathBuf;

use arith_torsion::complex::Convention;
use arith_torsion::linalg::snf::{SnfStrategy, DEFAULT_BIT_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "arith-torsion", version, about = "Exact group cohomology, Reidemeister torsion and torsion-growth predictions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random choice; echoed in the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Include wall-clock timing in the result record.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Per-degree free rank and elementary divisors of H^q(Γ, M).
    Cohomology(ComplexArgs),
    /// Reidemeister torsion by Laplacian determinants.
    Torsion(ComplexArgs),
    /// Check T = Π|H^q|^((-1)^(q+1)) by both pipelines.
    Verify(ComplexArgs),
    /// Weyl dimensions and module ranks.
    Dims(DimsArgs),
    /// Closed-form constants and predicted leading terms.
    Constants(ConstantsArgs),
    /// One CSV row per m for a module family.
    Sweep(SweepArgs),
    /// Least-squares fit of a·m^p + b·m^(p-1) to a series.
    Fit(FitArgs),
    /// Emit the lens-space complex and its acyclic module.
    Lens(LensArgs),
    /// Generate a random complex that is exact over Q.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionArg {
    Direct,
    Contragredient,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Direct => Convention::Direct,
            ConventionArg::Contragredient => Convention::Contragredient,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SnfArg {
    FractionFree,
    Modular,
}

impl From<SnfArg> for SnfStrategy {
    fn from(s: SnfArg) -> Self {
        match s {
            SnfArg::FractionFree => SnfStrategy::FractionFree,
            SnfArg::Modular => SnfStrategy::Modular,
        }
    }
}

/// Where the cochain complex comes from: a group-ring complex plus module,
/// a lens space, or raw coboundary matrices.
#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ComplexArgs {
    /// Group-ring complex (JSON).
    #[arg(long, requires = "module", conflicts_with_all = ["lens", "maps"])]
    pub complex: Option<PathBuf>,

    /// Coefficient module (JSON).
    #[arg(long, requires = "complex")]
    pub module: Option<PathBuf>,

    /// Lens space L(p, q) with its acyclic module, as `p,q`.
    #[arg(long, conflicts_with = "maps")]
    pub lens: Option<String>,

    /// Coboundary matrices D_0, D_1, ... in the matrix text format.
    #[arg(long, num_args = 1..)]
    #[serde(default)]
    pub maps: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = ConventionArg::Direct)]
    pub convention: ConventionArg,

    /// Verify D∘D = 0 after substitution.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub check_dd: bool,

    #[arg(long, value_enum, default_value_t = SnfArg::FractionFree)]
    pub snf: SnfArg,

    /// Largest entry bit-length tolerated during elimination.
    #[arg(long, default_value_t = DEFAULT_BIT_CAP)]
    pub bit_cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct DimsArgs {
    /// Highest weight, e.g. `A2:3,1` or `D:1,1,1`.
    #[arg(long, required_unless_present = "rho")]
    pub weight: Option<String>,

    /// Rank of M_m for SO, as `n,d`.
    #[arg(long, conflicts_with = "weight")]
    pub rho: Option<String>,

    #[arg(long, default_value_t = 1)]
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct ConstantsArgs {
    /// SL(3) branch.
    #[arg(long, conflicts_with = "so", required_unless_present = "so")]
    pub sl3: bool,

    /// SO(p, q) branch, as `p,q`.
    #[arg(long)]
    pub so: Option<String>,

    #[arg(long = "volX")]
    pub vol_x: String,

    #[arg(long = "volXd")]
    pub vol_xd: String,

    #[arg(long)]
    pub weight: Option<String>,

    #[arg(long)]
    pub m: Option<i64>,

    /// Degree of the number field (SO branch).
    #[arg(long, default_value_t = 1)]
    pub d: u32,

    /// Optional check value for n = (p+q)/2 - 1.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Module recipe: `sym`, `dual-sym`, `schur-a2:t1,t2` or `lens-zeta`.
    #[arg(long)]
    pub recipe: String,

    /// Inclusive range `start..end` (for `lens-zeta`, m is p).
    #[arg(long)]
    pub m: String,

    /// Group-ring complex (JSON); not used by `lens-zeta`.
    #[arg(long)]
    pub complex: Option<PathBuf>,

    /// Generator matrices (JSON list of integer matrices).
    #[arg(long)]
    pub gens: Option<PathBuf>,

    /// q for `lens-zeta`.
    #[arg(long, default_value_t = 1)]
    pub q: i64,

    /// Volumes enable the SL(3) prediction column.
    #[arg(long = "volX")]
    pub vol_x: Option<String>,

    #[arg(long = "volXd")]
    pub vol_xd: Option<String>,

    #[arg(long)]
    pub workers: Option<usize>,

    #[arg(long, value_enum, default_value_t = ConventionArg::Direct)]
    pub convention: ConventionArg,

    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub check_dd: bool,

    /// Largest Schur tensor degree.
    #[arg(long, default_value_t = arith_torsion::reps::DEFAULT_SCHUR_CAP)]
    pub schur_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct FitArgs {
    /// CSV with a header row.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long)]
    pub degree: u32,

    #[arg(long, default_value = "m")]
    pub m_column: String,

    #[arg(long, default_value = "value")]
    pub column: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct LensArgs {
    #[arg(long)]
    pub p: usize,

    #[arg(long, default_value_t = 1)]
    pub q: i64,

    #[arg(long)]
    pub complex_out: Option<PathBuf>,

    #[arg(long)]
    pub module_out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct RandomArgs {
    /// Ranks per degree, e.g. `2,3,1`.
    #[arg(long)]
    pub shape: String,

    #[arg(long, default_value_t = 9)]
    pub max_pivot: i64,

    /// Also run both torsion pipelines on the result.
    #[arg(long)]
    pub verify: bool,

    /// Write D_q as `d{q}.txt` in the matrix text format.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}
