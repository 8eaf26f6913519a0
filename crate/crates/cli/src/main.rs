//! `moduli-tiler`: thick-thin tilings, model distances and cone comparisons from the shell.

mod commands;
mod inputs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use moduli_tiler::error::Error;
use moduli_tiler::metric::{MetricMode, DEFAULT_THICK_DIAMETER};
use moduli_tiler::tiling::DEFAULT_EPSILON;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "moduli-tiler", version, about = "Thick-thin tilings of moduli spaces and their Euclidean cone models")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Shipped surface key (s1_1, s0_4, s1_2, s0_5, s2_0, s2_0_theta) or decomposition file.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Catalog file; defaults to $MODULI_TILER_CATALOG_DIR/s{g}_{p}.json, then the shipped catalog.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Thick-part diameter charged per boundary face.
    #[arg(long, global = true, default_value_t = DEFAULT_THICK_DIAMETER)]
    pub d1: f64,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complexity, pants and catalog summary.
    Surface,
    /// Thick or thin tile of each point.
    Classify {
        /// Point file or inline `lengths/twists`; repeatable.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
    },
    /// Certified list of closed geodesics shorter than epsilon.
    ShortCurves {
        #[arg(long = "point", required = true)]
        points: Vec<String>,
    },
    /// Coarse model distance between two points.
    Dist {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Surface of `y` when it differs from `--surface`.
        #[arg(long)]
        y_surface: Option<String>,
        #[arg(long, default_value = "thin", value_parser = parse_mode)]
        mode: MetricMode,
    },
    /// Euclidean cone over the quotient curve complex.
    Cone {
        #[command(subcommand)]
        command: ConeCommand,
    },
    /// Base points of the net of maximal cones.
    Net,
    /// Sampled distortion of the rescaled maps into the cone.
    Distortion {
        #[arg(long = "n", value_delimiter = ',', default_value = "1,2,4,8")]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "10")]
        radius: Vec<f64>,
        #[arg(long, default_value = "thin", value_parser = parse_mode)]
        mode: MetricMode,
    },
    /// Side and diagonal lengths of squares in one cone.
    ProbeFlat {
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        radius: Vec<f64>,
        #[arg(long, default_value = "thin", value_parser = parse_mode)]
        mode: MetricMode,
    },
    /// Regenerate a quotient catalog with the enumeration oracle.
    ExportCatalog {
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        punctures: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConeCommand {
    /// Cone distance between `radius@simplex:weights` points (`O` is the apex).
    Dist {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Sampled CAT(0) comparison defects of random triples.
    CheckCat0 {
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
    },
}

fn parse_mode(s: &str) -> Result<MetricMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", output::json_line(&serde_json::json!({"error": e.code(), "message": e.to_string()})));
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
