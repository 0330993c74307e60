//! `morsecube`: hyperplane combinatorics, boundary products and the explicit
//! constructions from the command line.
//!
//! Exit status is 0 when every reported value is certified, 2 when the run
//! succeeded but some value is not, and 1 on any input error.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use report::Report;
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "morsecube", version, about = "Walls, boundary products and counterexample constructions in RAAG cube complexes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit one JSON document instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Defining graph as JSON; the Croke–Kleiner path a-b-c-d when absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub graph: Option<std::path::PathBuf>,
    /// Number of ray edges traced.
    #[arg(long, global = true, default_value_t = 40)]
    pub depth: usize,
    /// Largest ball radius enumerated.
    #[arg(long, global = true, default_value_t = 12)]
    pub cap: u32,
    /// Extra radius for crossing-count searches.
    #[arg(long, global = true, default_value_t = 4)]
    pub slack: usize,
    /// Base point o.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub base: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a word.
    Nf { word: String },
    /// Word distance between two elements.
    Dist { x: String, y: String },
    /// Walls separating two vertices.
    Walls { x: String, y: String },
    /// Side of a wall (`gen@WORD`) containing a vertex.
    Side { wall: String, x: String },
    /// Whether two walls cross.
    Crosses { h1: String, h2: String },
    /// Walls crossing both of two walls, and n-separation.
    Separated {
        h1: String,
        h2: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    /// Chain of n-separated walls along a ray.
    Chain {
        /// `name:"PREFIX|PERIOD"`
        ray: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        r: usize,
    },
    /// (ξ|η)_o: walls crossed by both rays.
    Product { xi: String, eta: String },
    /// [ξ|η]_o.
    Bracket { xi: String, eta: String },
    /// d_o(ξ, η) = e^{-[ξ|η]_o}.
    Metric { xi: String, eta: String },
    /// cr_o(w, x, y, z), and optionally the (·|·) version.
    Crossratio {
        w: String,
        x: String,
        y: String,
        z: String,
        #[arg(long)]
        bfm: bool,
    },
    /// Whether a ray crosses every listed wall.
    Hyp {
        ray: String,
        #[arg(required = true)]
        walls: Vec<String>,
    },
    /// A single wall k with U_{o,k} inside U_{o,walls}.
    Refine {
        ray: String,
        #[arg(required = true)]
        walls: Vec<String>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        r: usize,
    },
    /// κ and κ′ for a sublinear ρ and constants K, C.
    Kappa {
        #[arg(long, default_value = "const:0")]
        rho: String,
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long, default_value = "0")]
        c: String,
    },
    /// The geodesic γ through the first flats.
    Gamma {
        #[arg(long, default_value_t = 12)]
        flats: usize,
    },
    /// The quasi-geodesic β along γ.
    Beta {
        #[arg(long, default_value_t = 4)]
        delta: u64,
        #[arg(long, default_value_t = 12)]
        flats: usize,
        /// Check the ℓ¹ quasi-geodesic bound.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value = "8")]
        k: String,
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Brute-force ρ-contraction test for the path START·WORD.
    Contracting {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        #[arg(long, default_value = "const:0")]
        rho: String,
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Stay-close or diverge, for a path against a contracting path.
    Dichotomy {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        z_start: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        path_start: String,
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        #[arg(long, default_value = "const:0")]
        rho: String,
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long, default_value = "0")]
        c: String,
    },
    /// Base-point experiment on the labelled graph Y.
    Example23 {
        #[arg(long, default_value = "poly: 1 0 1")]
        f: String,
        #[arg(long, default_value_t = 8)]
        imax: usize,
        /// Defaults to f(imax) + 10.
        #[arg(long)]
        tail: Option<usize>,
        #[arg(long, default_value_t = 3)]
        kappa: u64,
    },
    /// Longest piece among the relators r_1 … r_n or the given relators.
    Smallcancel {
        #[arg(long, default_value = "poly: 1 0 1")]
        f: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Explicit relators over a, b1…b6, c, d1…d6.
        #[arg(long = "relator")]
        relators: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::Dist { .. } => "dist",
            Command::Walls { .. } => "walls",
            Command::Side { .. } => "side",
            Command::Crosses { .. } => "crosses",
            Command::Separated { .. } => "separated",
            Command::Chain { .. } => "chain",
            Command::Product { .. } => "product",
            Command::Bracket { .. } => "bracket",
            Command::Metric { .. } => "metric",
            Command::Crossratio { .. } => "crossratio",
            Command::Hyp { .. } => "hyp",
            Command::Refine { .. } => "refine",
            Command::Kappa { .. } => "kappa",
            Command::Gamma { .. } => "gamma",
            Command::Beta { .. } => "beta",
            Command::Contracting { .. } => "contracting",
            Command::Dichotomy { .. } => "dichotomy",
            Command::Example23 { .. } => "example23",
            Command::Smallcancel { .. } => "smallcancel",
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let outputs = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let g = &cli.global;
    let report = Report {
        command: cli.command.name().to_string(),
        inputs: json!({
            "argv": &argv[1..],
            "graph": g.graph.as_ref().map(|p| p.display().to_string()),
            "depth": g.depth,
            "cap": g.cap,
            "slack": g.slack,
            "base": g.base,
        }),
        certified: outputs.0.iter().all(|o| o.certified),
        outputs: outputs.0,
        timing_ms: started.elapsed().as_millis() as u64,
    };
    if g.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
