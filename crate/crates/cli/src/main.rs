//! `dessinator`: command-line front end. Every command prints one JSON
//! document on stdout; errors go to stderr with status 1, usage errors
//! with status 2.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "dessinator", version, about = "Dessins d'enfants, triangle groups and friends")]
pub struct Cli {
    /// Seed for randomized search orders; results do not depend on it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for commands that parallelize.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dessins as permutation pairs.
    #[command(subcommand)]
    Dessin(DessinCmd),
    /// Mod-m homology cover of a uniform dessin.
    HomologyCover(CoverArgs),
    /// Dessins as subgroups of triangle groups.
    #[command(subcommand)]
    Triangle(TriangleCmd),
    /// Subgroups of the modular group.
    #[command(subcommand)]
    Modular(ModularCmd),
    /// Estimate the number of ends of a group from Cayley balls.
    Ends {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rmax: usize,
        /// Largest ball, in vertices, that may be built.
        #[arg(long, default_value_t = dessinator::ends::DEFAULT_BALL_CAP)]
        cap: usize,
    },
    /// Truncated superelliptic curves.
    #[command(subcommand)]
    Superelliptic(SuperellipticCmd),
    /// Finitely presented groups.
    #[command(subcommand)]
    Fpgroup(FpgroupCmd),
}

#[derive(Subcommand, Debug)]
pub enum DessinCmd {
    /// Passport, genus, type and symmetry of a dessin file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// One dessin per isomorphism class with m edges.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = dessinator::dessin::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Same as `homology-cover`.
    Cover(CoverArgs),
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long = "mod")]
    pub modulus: u64,
    /// Where to write the cover as a dessin file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report the genera of this many iterated covers instead.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Largest cover, in edges, that may be built.
    #[arg(long, default_value_t = dessinator::homology::DEFAULT_COVER_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum TriangleCmd {
    /// Index of a subgroup of Δ(a,b,c), or the group-theoretic checks of a dessin.
    Check {
        /// Triangle type as `a,b,c`.
        #[arg(long = "type", conflicts_with = "input", required_unless_present = "input")]
        triple: Option<String>,
        /// Subgroup generators in x, y; the trivial subgroup by default.
        #[arg(long, default_value = "", requires = "triple")]
        subgroup: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Dessin to coset table and back.
    Roundtrip {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModularCmd {
    /// Orbifold invariants of the subgroup K_n (n = 0 gives K_0 = <A, E>).
    Kn {
        #[arg(long)]
        n: u32,
        /// Use the translation A^{4n} instead of A^{4(2n-1)}.
        #[arg(long)]
        literal_translation: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Exact image of points under a word in A, A^-1 and E.
    Eval {
        #[arg(long)]
        word: String,
        #[arg(long, required = true, allow_hyphen_values = true)]
        z: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuperellipticCmd {
    /// Genus of w^n = f(z) with deg f = dn and simple roots.
    Genus {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
    },
    /// Evaluate a truncated Weierstrass product.
    Eval {
        #[arg(long, default_value = "sine")]
        fixture: String,
        #[arg(long = "N")]
        n: usize,
        /// A point `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Affine equivalence of two zero sets.
    Moduli {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FpgroupCmd {
    /// Coset table of a subgroup.
    Enumerate {
        #[arg(long)]
        presentation: String,
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Abelian invariants of the group, or of a finite-index subgroup.
    Abelianize {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(payload) => {
            let text = serde_json::to_string_pretty(&payload).expect("JSON value serializes");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
