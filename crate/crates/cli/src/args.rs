use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "hirzebruch", version, about = "Rational cuspidal curves on Hirzebruch surfaces")]
pub struct Cli {
    /// Output style: aligned tables, key=value lines, or one JSON object per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every feasibility check on a class and cusp configuration.
    Check(CurveArgs),
    /// Euler characteristic of the logarithmic tangent sheaf, by three routes.
    Chi(CurveArgs),
    /// Checks, resolution numbers and both multiplicity-bound modes.
    Report(CurveArgs),
    /// List configurations passing every check.
    Enumerate(EnumerateArgs),
    /// Generate a member of one of the four-cusp series with its move script.
    Series(SeriesArgs),
    /// Replay a move script from a file or stdin.
    RunScript(RunScriptArgs),
    /// Polynomial fixtures: degrees, maps, multiplicities, contact and resolution.
    #[command(subcommand)]
    Poly(PolyCommand),
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// F<e>
    #[arg(long)]
    pub surface: String,
    /// a,b for the class aL + bM
    #[arg(long = "type")]
    pub class: String,
    /// e.g. "[4,2_3],[2],[2],[2]"; "-" or "" for none
    #[arg(long, default_value = "")]
    pub config: String,
    /// Assert that the complement has non-negative log Kodaira dimension.
    #[arg(long)]
    pub kodaira_nonneg: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// F<e>; with --type enumerates one class, otherwise sweeps.
    #[arg(long, requires = "class")]
    pub surface: Option<String>,
    #[arg(long = "type", requires = "surface")]
    pub class: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub min_cusps: usize,
    #[arg(long)]
    pub kodaira_nonneg: bool,
    /// Sweep bound on e.
    #[arg(long, default_value_t = 3)]
    pub max_e: u32,
    /// Sweep bound on a.
    #[arg(long, default_value_t = 8)]
    pub max_a: i64,
    /// Sweep bound on b.
    #[arg(long, default_value_t = 5)]
    pub max_b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Row {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    /// The (0,3) curve on F2 with four ordinary cusps.
    F2,
    /// The quintic blown up at a point off the curve.
    C1,
    /// The quintic blown up at a smooth point.
    C2,
    /// The quintic blown up at its [2_3] cusp.
    C3,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub row: Row,
    /// Surface index for row 1.
    #[arg(long)]
    pub e: Option<u32>,
    /// 0 or 1 for rows 2 to 4.
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    /// Row 4 run lengths n1,n2,n3,n4 summing to 2k+h.
    #[arg(long)]
    pub n: Option<String>,
    /// Print the state after every move as well.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct RunScriptArgs {
    /// Script file; "-" or absent reads stdin.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Source {
    /// fixture:<name>, a file path, or "-" for stdin.
    pub source: String,
    /// Grading for inputs without a '# grading:' header: P2 or F<e>.
    #[arg(long)]
    pub grading: Option<String>,
}

#[derive(Debug, Args)]
pub struct Locus {
    /// Affine chart, e.g. x1=1,y1=1 or z=1.
    #[arg(long)]
    pub chart: String,
    /// [u,v,w] or (u,v) in the chart's affine coordinates.
    #[arg(long)]
    pub point: String,
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// List the shipped fixtures.
    Fixtures,
    /// Print the polynomial and its degree.
    Show(Source),
    /// Apply a named map and print the strict transform as a polynomial file.
    Map {
        #[command(flatten)]
        input: Source,
        /// plane-to-f1, plane-to-quadric, quadric-to-plane, elm-up, elm-down, f1-shift or real-change
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    /// Multiplicity at a point.
    Mult {
        #[command(flatten)]
        input: Source,
        #[command(flatten)]
        at: Locus,
    },
    /// Intersection multiplicity with a line or fiber at a point.
    Contact {
        #[command(flatten)]
        input: Source,
        /// The second curve; same source syntax.
        #[arg(long = "with")]
        other: String,
        #[command(flatten)]
        at: Locus,
    },
    /// Multiplicity sequence of a rational cusp.
    Resolve {
        #[command(flatten)]
        input: Source,
        #[command(flatten)]
        at: Locus,
    },
    /// Compare resolved delta with the arithmetic genus.
    Audit {
        #[command(flatten)]
        input: Source,
        /// chart@point; defaults to the fixture's known cusps.
        #[arg(long = "cusp")]
        cusps: Vec<String>,
    },
    /// Re-derive the shipped polynomials and check their singularities.
    Verify,
}
