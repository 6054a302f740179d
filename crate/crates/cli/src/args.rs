//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

use circdet::Orientation;

#[derive(Debug, Parser)]
#[command(
    name = "circdet",
    version,
    about = "Determinants of binomial-related circulant matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant of one family member by one or more methods.
    Det(DetArgs),
    /// Closed form, spectral and exact values over a range of n.
    Table(TableArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
    /// Time the determinant methods on the z = i family.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum MethodArg {
    /// Closed-form formula (z in {1, -1, i, -i}).
    Closed,
    /// Product of DFT eigenvalues.
    Dft,
    /// Bareiss elimination over the Gaussian integers.
    Exact,
    /// Every method that applies to the given z.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Right,
    Left,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Right => Orientation::Right,
            OrientationArg::Left => Orientation::Left,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DetArgs {
    /// Matrix size.
    #[arg(long)]
    pub n: usize,
    /// `1`, `-1`, `i`, `-i`, `a`, or `a+bi` / `a-bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, value_enum, default_value = "right")]
    pub orientation: OrientationArg,
    /// Methods to run, comma separated.
    #[arg(
        long = "method",
        value_enum,
        value_delimiter = ',',
        default_value = "all"
    )]
    pub methods: Vec<MethodArg>,
    /// Largest n for which `all` includes the exact method.
    #[arg(long, default_value_t = 128)]
    pub exact_max_n: usize,
    /// Relative tolerance for comparisons involving the spectral value.
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Comma-separated z literals.
    #[arg(
        long = "z",
        allow_hyphen_values = true,
        value_delimiter = ',',
        default_value = "1,-1,i,-i"
    )]
    pub z_list: Vec<String>,
    #[arg(
        long = "orientation",
        value_enum,
        value_delimiter = ',',
        default_value = "right,left"
    )]
    pub orientations: Vec<OrientationArg>,
    /// Largest n with an exact column.
    #[arg(long, default_value_t = 128)]
    pub exact_max_n: usize,
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest n in the exact sweeps; numeric sweeps stop earlier.
    #[arg(long, default_value_t = 24)]
    pub max_n: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Tolerance of the spectral-consistency sweep.
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Largest n; sizes are the powers of two up to it, plus n itself.
    #[arg(long, default_value_t = 64)]
    pub max_n: usize,
    #[arg(
        long = "method",
        value_enum,
        value_delimiter = ',',
        default_value = "all"
    )]
    pub methods: Vec<MethodArg>,
    /// Timed runs per cell; the median is reported.
    #[arg(long, default_value_t = 5)]
    pub runs: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
