use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pcyclic", version, about = "Barcodes of filtered complexes with cyclic symmetry")]
pub struct Cli {
    /// Output file; defaults to a file in $PCYCLIC_OUT_DIR, else stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, env = "PCYCLIC_OUT_DIR", global = true, hide_env_values = true)]
    pub out_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Kernel,
    Image,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    PowerP,
    Eggbeater,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Singular value decomposition of a filtered map.
    Svd {
        #[arg(long)]
        input: PathBuf,
    },
    /// Barcode of a filtered chain complex.
    Barcode(BarcodeArgs),
    /// Self-mapping cone of T − ξ_p^q 𝕀.
    Cone {
        /// Complex the map acts on.
        #[arg(long)]
        input: PathBuf,
        /// Degree-0 map T on the complex.
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        xi_power: u32,
    },
    /// Egg-beater cone report.
    Eggbeater(EggArgs),
    /// Multiplicity of the product with a closed manifold.
    Product {
        #[arg(long)]
        p: u32,
        /// Comma separated Betti numbers b_0,b_1,…
        #[arg(long, value_delimiter = ',', required = true)]
        betti: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        chern: u32,
    },
    /// Generate p-th power fixtures.
    Fixtures(FixtureArgs),
    /// Run the checks on generated instances or on a stored artifact.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct BarcodeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Kernel)]
    pub mode: Mode,
    /// Restrict to one degree.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// Drop zero-length bars.
    #[arg(long)]
    pub concise: bool,
}

#[derive(Args, Debug)]
pub struct EggArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub xi_power: u32,
    /// Density of a random filtration-lowering perturbation of the rotation.
    #[arg(long)]
    pub perturb: Option<f64>,
}

#[derive(Args, Debug)]
pub struct FixtureArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub size: usize,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, default_value_t = 1)]
    pub xi_power: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Generated family to check; exclusive with --input.
    #[arg(long, value_enum, conflicts_with = "input")]
    pub fixtures: Option<FixtureKind>,
    /// Stored complex, cone, map, fixture or egg-beater report.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, default_value_t = 3)]
    pub size: usize,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Truncation order for series over a nontrivial Γ.
    #[arg(long)]
    pub truncation: Option<String>,
}
