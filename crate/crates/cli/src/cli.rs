use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "wreathkit", version, about = "Exact computations in permutational wreath products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Ball or exploration radius.
    #[arg(long, global = true, default_value_t = 4)]
    pub radius: usize,
    /// Truncation window for infinite domains.
    #[arg(long, global = true, default_value_t = 32)]
    pub window: u64,
    /// Enumeration budget; each command has its own default.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Where the acting group comes from.
#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    /// Group shorthand (sym3, c2xc2, z, dinf, d4, f, houghton3) or a JSON
    /// descriptor, inline or as a file.
    #[arg(long, short = 'g', visible_alias = "g")]
    pub group: Option<String>,
    /// `natural`, `regular`, or a JSON action (inline or file) with
    /// `group`, `domain` and optional `base_points`.
    #[arg(long)]
    pub action: Option<String>,
    /// Base points, as JSON points or comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct FiberArg {
    /// The lamp group W.
    #[arg(long = "w", visible_alias = "fiber", default_value = "c2")]
    pub w: String,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Word length of one element of W ≀_X G.
    WreathLen {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        fiber: FiberArg,
        /// The element as JSON `{"f": [[point, value], ..], "c": element}`;
        /// `f` may be omitted.
        #[arg(long)]
        element: String,
    },
    /// Sizes of the Cayley ball of W ≀_X G.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        fiber: FiberArg,
    },
    /// Length ratios of Z ≀_X G against D∞ ≀_X G under n ↦ (ab)ⁿ.
    Bilip {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Shortest walk from 1 to a terminal element covering target points.
    Kwalk {
        #[command(flatten)]
        group: GroupArgs,
        /// Target points, as a JSON list or comma-separated integers.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        targets: String,
        /// Terminal element as a word in the group generators.
        #[arg(long, default_value = "")]
        terminal: String,
    },
    /// Orbit and pair-orbit classes in a window.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
        /// Extra depth paths may use outside the window.
        #[arg(long, default_value_t = 1)]
        margin: u64,
        /// Invariant to check on pairs: sign, equality or difference.
        #[arg(long)]
        classifier: Option<String>,
    },
    /// Double cosets of point stabilizers, or sampled subgroup-count checks.
    Dcosets {
        #[command(flatten)]
        group: GroupArgs,
        /// Point whose stabilizer is the left subgroup.
        #[arg(long, default_value_t = 0)]
        stab: usize,
        /// Point whose stabilizer is the right subgroup; defaults to --stab.
        #[arg(long)]
        stab2: Option<usize>,
        /// Instead, sample this many subgroup configurations and check the
        /// hereditary counting lemmas on each.
        #[arg(long)]
        hereditary: Option<usize>,
        /// Largest group order sampled by --hereditary.
        #[arg(long, default_value_t = 48)]
        max_order: usize,
    },
    /// Invariant edge sets and their coset families.
    Edges {
        #[command(flatten)]
        group: GroupArgs,
        /// Refuse when there are more orbitals than this.
        #[arg(long, default_value_t = 12)]
        max_orbitals: u32,
    },
    /// Finite presentation of W ≀_X G, checked in the concrete group.
    Present {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        fiber: FiberArg,
        /// Synthesize from a criteria input file instead of a finite action.
        #[arg(long)]
        criteria: Option<String>,
        /// Also write the bare presentation JSON here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The untruncated schema cut off at each radius up to --radius.
    Pres1 {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        fiber: FiberArg,
    },
    /// Free-subgroup criterion for the kernel of a graph product.
    Graphprod {
        /// Vertex-labelled graph JSON, inline or as a file.
        #[arg(long)]
        graph: String,
    },
    /// Stabilization index of an increasing graph sequence.
    Stabilize {
        /// Graph sequence JSON with `graphs` and `classes`.
        #[arg(long)]
        sequence: String,
    },
    /// Lattice correspondence and biindex of a fibre product.
    Fibre {
        /// Fibre-product spec JSON, inline or as a file.
        #[arg(long)]
        spec: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::WreathLen { .. } => "wreath-len",
            Command::Ball { .. } => "ball",
            Command::Bilip { .. } => "bilip",
            Command::Kwalk { .. } => "kwalk",
            Command::Orbits { .. } => "orbits",
            Command::Dcosets { .. } => "dcosets",
            Command::Edges { .. } => "edges",
            Command::Present { .. } => "present",
            Command::Pres1 { .. } => "pres1",
            Command::Graphprod { .. } => "graphprod",
            Command::Stabilize { .. } => "stabilize",
            Command::Fibre { .. } => "fibre",
        }
    }
}
