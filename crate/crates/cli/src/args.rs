use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "quadrance",
    version,
    about = "Quadrance geometry over finite fields"
)]
pub struct Cli {
    /// Report format (tsv only for tensors and tables)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<String>,

    /// Worker threads for the parallel verifiers (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Record wall time in the report (breaks byte-identical output)
    #[arg(long, global = true)]
    pub timing: bool,

    /// Lift the size bounds on exhaustive searches
    #[arg(long, global = true)]
    pub allow_large: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Field tables and quadratic character pair counts
    Field {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Points of a circle
    Circle {
        #[arg(long)]
        q: u32,
        /// Center as X,Y
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        /// Quadrance class: a field element or `null`
        #[arg(long)]
        class: String,
    },
    /// Intersection of two circles
    Intersect {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// Polygon with prescribed side quadrances
    Polygon {
        #[arg(long)]
        q: u32,
        /// Comma-separated side quadrances a1,a2,...
        #[arg(long, allow_hyphen_values = true)]
        quadrances: String,
    },
    /// Center quadrances k at which circles of classes i and j can meet
    Admissible {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// Quadrance association schemes
    #[command(subcommand)]
    Scheme(SchemeCommand),
    /// The quadrance graph
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Maximum cliques and independent sets of the quadrance graph
    Clique {
        #[arg(long)]
        q: u32,
        /// List every maximum clique instead of one witness
        #[arg(long)]
        enumerate: bool,
    },
    /// Check that maximum cliques and independent sets of order q are lines
    Conjecture {
        #[arg(long)]
        q: u32,
    },
    /// Quadrangle feasibility for every side 4-tuple (q = 1 mod 4)
    QuadrangleTable {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum SchemeCommand {
    /// Verify the scheme axioms and compare with the closed forms
    Verify(SchemeArgs),
    /// Intersection numbers
    Tensor(SchemeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SchemeArgs {
    #[arg(long)]
    pub q: u32,
    /// Fuse along the cosets of the index-T subgroup of F_q^*
    #[arg(long)]
    pub fuse: Option<u32>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum GraphCommand {
    /// Strongly regular parameters by exhaustive counting
    Srg {
        #[arg(long)]
        q: u32,
    },
    /// Edge-deviation bound on random vertex subsets and on lines
    Subsets {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}
