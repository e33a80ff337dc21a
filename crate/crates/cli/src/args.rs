use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "modulilog", version, about = "Stasheff polytope combinatorics and multiple polylogarithms")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Target absolute tolerance for numerical commands
    #[arg(long, global = true, env = "MODULILOG_TOL", default_value_t = 1e-8, value_parser = positive_f64)]
    pub tol: f64,

    /// Largest weight accepted by the iterated-integral quadrature
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
    Dot,
}

/// Picks one vertex of `B_n`, by position in the enumeration or as JSON.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct VertexSelect {
    /// Index into the `vertices --n N` listing
    #[arg(long)]
    pub vertex_index: Option<usize>,

    /// The vertex as a JSON array of partition objects
    #[arg(long)]
    pub face: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strictly ordered stable partitions (facets of B_n)
    Facets {
        #[arg(long)]
        n: usize,
    },
    /// Faces of B_n of a given codimension
    Faces {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Vertices of B_n; `--format dot` prints the vertex adjacency graph
    Vertices {
        #[arg(long)]
        n: usize,
    },
    /// Image of a vertex in M_{0,{0,s_i,1,inf}}
    VertexImage {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        select: VertexSelect,
        #[arg(long)]
        i: usize,
    },
    /// Forget a movable mark on a vertex
    Contract {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        select: VertexSelect,
        /// Mark to forget, e.g. s2
        #[arg(long)]
        mark: String,
    },
    /// Components of the singular divisor for a vector a
    DivisorA {
        #[arg(long, value_parser = complex_list)]
        a: ComplexList,
    },
    /// Scan all faces of B_n against the singular divisor
    CheckAvoidance {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = complex_list, conflicts_with = "random")]
        a: Option<ComplexList>,
        /// Number of random convergent vectors to test (needs --n)
        #[arg(long, requires = "n")]
        random: Option<usize>,
    },
    /// Multiple polylogarithm by its nested series
    Polylog {
        #[arg(long, value_parser = index_list)]
        index: IndexList,
        #[arg(long, value_parser = complex_list)]
        x: ComplexList,
        #[arg(long, default_value_t = 10_000_000)]
        max_terms: usize,
    },
    /// Multiple zeta value
    Mzv {
        #[arg(long, value_parser = index_list)]
        index: IndexList,
    },
    /// Iterated integral of dt/(t - a_1) o ... o dt/(t - a_n) along a path
    Itint {
        #[arg(long, value_parser = complex_list)]
        a: ComplexList,
        /// Interior waypoints, or the full list from 0 to 1; straight path if omitted
        #[arg(long, value_parser = complex_list)]
        path: Option<ComplexList>,
    },
    /// Period matrix of the dilogarithm at z
    PeriodMatrix {
        #[arg(long, value_parser = complex_value)]
        z: Complex64,
        #[arg(long, value_parser = complex_list)]
        path: Option<ComplexList>,
    },
    /// Period matrices along z -> 1 and the limiting 2x2 matrix
    DimensionJump {
        /// Sequence of z values; defaults to 1 - 10^-k for k = 1..6
        #[arg(long, value_parser = complex_list)]
        z: Option<ComplexList>,
    },
}

/// Newtypes so clap treats a whole list as one value.
#[derive(Debug, Clone)]
pub struct ComplexList(pub Vec<Complex64>);

#[derive(Debug, Clone)]
pub struct IndexList(pub Vec<u32>);

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a positive number"))
    }
}

/// `re,im` or a bare real `re`.
pub fn complex_value(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("cannot read {t:?} as a number in {s:?}"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

/// `re,im;re,im;...`
pub fn complex_list(s: &str) -> Result<ComplexList, String> {
    let items: Vec<Complex64> =
        s.split(';').filter(|t| !t.trim().is_empty()).map(complex_value).collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err("empty list".into());
    }
    Ok(ComplexList(items))
}

/// `n1,n2,...`
pub fn index_list(s: &str) -> Result<IndexList, String> {
    let items: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("cannot read {t:?} as an index")))
        .collect::<Result<_, _>>()?;
    Ok(IndexList(items))
}
