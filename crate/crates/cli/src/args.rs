use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lpa_core::Field;

#[derive(Debug, Parser)]
#[command(name = "lpa", version, about = "Representations of graphs and their Leavitt path algebra modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural predicates, invariants and verdicts for a representation
    Analyze(Decide),
    /// Smallest complete submodule
    Sigma(Functor),
    /// Quotient by the kernel of the canonical map
    Nabla(Functor),
    /// Nondegenerate quotient of the smallest complete submodule
    Recover(Functor),
    /// Decide whether two representations are isomorphic
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        require_decision: bool,
    },
    /// Decide irreducibility
    Irr(Decide),
    /// Decide indecomposability
    Indec(Decide),
    /// Act on a Π element by a Leavitt path algebra element
    PiAct {
        element: PathBuf,
        operator: PathBuf,
        /// Write the resulting element here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Chen-type representation
    Chen {
        #[command(subcommand)]
        kind: ChenCommand,
    },
    /// Orbit counts, stabilizers and dimension counts
    Moduli {
        #[command(subcommand)]
        kind: ModuliCommand,
    },
    /// Check the defining relations on sampled Π elements
    Verify {
        rep: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Re-run every bundled worked example and compare with the expected values
    Repro {
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct Decide {
    pub rep: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Exit with status 4 when a verdict is unknown
    #[arg(long)]
    pub require_decision: bool,
}

#[derive(Debug, Args)]
pub struct Functor {
    pub rep: PathBuf,
    /// Write the transformed representation here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Graph file, or `bouquet:N` / `line:N`
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value = "Q")]
    pub field: Field,
    /// Write the representation here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ChenCommand {
    /// Cyclic ray c^∞ with scalar twist
    Cyclic {
        #[command(flatten)]
        target: Target,
        /// Comma-separated edge names
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        lambda: String,
    },
    /// Module attached to a sink
    Sink {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        vertex: String,
    },
    /// Cyclic ray twisted by an irreducible monic polynomial
    AnhNam {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cycle: String,
        /// Coefficients from the constant term upward
        #[arg(long)]
        poly: String,
    },
    /// Cyclic ray twisted by a matrix with irreducible characteristic polynomial
    Twist {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cycle: String,
        /// Rows separated by `;`, entries by `,`
        #[arg(long)]
        matrix: String,
    },
    /// Shift on tails with the last tail redirected to a vector
    Vector {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        vector: String,
        /// Redirect along every edge leaving the vertex of the last tail
        #[arg(long)]
        strict: bool,
    },
    /// Truncation of the graded module along a cycle
    GradedTrunc {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        depth: usize,
    },
    /// Truncation along a finite prefix of an infinite path
    IrrationalTrunc {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        depth: usize,
    },
}

impl ChenCommand {
    pub fn target(&self) -> &Target {
        match self {
            ChenCommand::Cyclic { target, .. }
            | ChenCommand::Sink { target, .. }
            | ChenCommand::AnhNam { target, .. }
            | ChenCommand::Twist { target, .. }
            | ChenCommand::Vector { target, .. }
            | ChenCommand::GradedTrunc { target, .. }
            | ChenCommand::IrrationalTrunc { target, .. } => target,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChenCommand::Cyclic { .. } => "cyclic",
            ChenCommand::Sink { .. } => "sink",
            ChenCommand::AnhNam { .. } => "anh-nam",
            ChenCommand::Twist { .. } => "twist",
            ChenCommand::Vector { .. } => "vector",
            ChenCommand::GradedTrunc { .. } => "graded-trunc",
            ChenCommand::IrrationalTrunc { .. } => "irrational-trunc",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ModuliCommand {
    /// Enumerate a representation space over a finite field and count orbits
    Count {
        #[arg(long)]
        graph: String,
        /// `1,2` in vertex order or `v=1,w=2`
        #[arg(long)]
        dims: String,
        #[arg(long)]
        field: Field,
        /// Include one representative per orbit
        #[arg(long)]
        representatives: bool,
    },
    /// Infinitesimal stabilizer of a representation
    Stabilizer { rep: PathBuf },
    /// Expected dimension of the moduli of irreducibles
    ExpectedDim {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        dims: String,
    },
    /// Parameter counts of the Chen families on a bouquet
    ChenReport {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        field: Field,
    },
}
