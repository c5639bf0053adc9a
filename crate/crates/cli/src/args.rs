use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "reswitch", version, about = "Production prices, switch points and real factor-price comparisons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every technique of a model; optionally write the model as JSON.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Write the model in canonical JSON form.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
    /// Prices, wage and rentals of one technique at one interest rate.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        technique: String,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Wage-profit curve CSV of one technique.
    Curve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        technique: String,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        common: Common,
    },
    /// Switch points between two techniques, with genuineness checks.
    Switch {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: Pair,
        /// Relative tolerance for price-system equality.
        #[arg(long, default_value_t = reswitch_core::switch::GENUINE_TOLERANCE)]
        tolerance: f64,
        /// Points in the sign scan.
        #[arg(long, default_value_t = 20_001)]
        scan_points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Technique frontier over a grid, or ratio curves of a pair with --ratios.
    Frontier {
        #[command(flatten)]
        input: Input,
        /// Emit ratio curves of --tech-b relative to --tech-a instead.
        #[arg(long, requires_all = ["tech_a", "tech_b"])]
        ratios: bool,
        #[arg(long)]
        tech_a: Option<String>,
        #[arg(long)]
        tech_b: Option<String>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        common: Common,
    },
    /// Capital value per worker along the frontier.
    Wicksell {
        #[command(flatten)]
        input: Input,
        /// Sector whose capital per worker is measured (1-based).
        #[arg(long, default_value_t = 1)]
        sector: usize,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        common: Common,
    },
    /// Cost/revenue duality and shadow-price checks for one technique.
    Duality {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        technique: String,
        #[arg(long)]
        r: f64,
        /// Final outputs, comma separated; defaults to one unit of each good.
        #[arg(long, value_delimiter = ',')]
        outputs: Option<Vec<f64>>,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute a published table of a built-in case and compare.
    Reproduce {
        #[arg(long)]
        case: String,
        /// One of 2, 4, 5, fig4.
        #[arg(long)]
        table: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Built-in case ids with descriptions.
    ListCases,
}

#[derive(Debug, Args)]
pub struct Input {
    #[command(flatten)]
    pub source: Source,
    /// Use the case's technique-specific capital goods.
    #[arg(long, requires = "case")]
    pub blueprints: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Model JSON file.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Built-in case id.
    #[arg(long)]
    pub case: Option<String>,
}

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub tech_a: String,
    #[arg(long)]
    pub tech_b: String,
}

#[derive(Debug, Args)]
pub struct Grid {
    #[arg(long, default_value_t = 0.0)]
    pub r_min: f64,
    /// Defaults to the largest maximum profit rate (clamped below it).
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Numeraire commodity (1-based).
    #[arg(long, default_value_t = 1)]
    pub numeraire: usize,
    /// Override the model's wage timing.
    #[arg(long, value_enum)]
    pub timing: Option<Timing>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Timing {
    Post,
    Ante,
}
