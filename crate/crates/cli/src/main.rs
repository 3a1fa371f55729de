//! `arrowcat`: check and compute with finite categories written in catspec.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails, 2 on
//! usage, parse or capacity errors.

mod commands;
mod outcome;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use outcome::Format;

#[derive(Parser)]
#[command(name = "arrowcat", version, about = "Finite categories from their arrows alone")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    file: PathBuf,
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
}

#[derive(Args)]
struct AdjointArgs {
    file: PathBuf,
    /// Left adjoint `D -> C`
    #[arg(long)]
    left: String,
    /// Right adjoint `C -> D`
    #[arg(long)]
    right: String,
    /// Unit `id(D) => right . left`
    #[arg(long)]
    unit: String,
    /// Counit `left . right => id(C)`
    #[arg(long)]
    counit: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Standard,
    PaperLiteral,
}

#[derive(Clone, Copy, ValueEnum)]
enum Presentation {
    Objectless,
    Standard,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every category, functor and transformation in a file
    Check { file: PathBuf },
    /// Identities of a category and the domain and codomain of each arrow
    Identities {
        file: PathBuf,
        #[arg(long)]
        cat: String,
    },
    /// Hom-classes of a category, all non-empty ones or a single one
    Homs {
        file: PathBuf,
        #[arg(long)]
        cat: String,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
    /// Skeleton with inclusion, retraction and witnessing isomorphism
    Skeleton {
        file: PathBuf,
        #[arg(long)]
        cat: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for an isomorphism of categories
    Iso(Pair),
    /// Decide equivalence of categories
    Equiv {
        #[command(flatten)]
        pair: Pair,
        /// Enumerate all functor pairs instead (small categories only)
        #[arg(long)]
        brute_force: bool,
    },
    /// Check the functor laws
    FunctorCheck {
        file: PathBuf,
        #[arg(long)]
        functor: String,
    },
    /// Check a natural transformation
    NatCheck {
        file: PathBuf,
        #[arg(long)]
        nat: String,
    },
    /// Check an adjunction given by unit and counit
    AdjointCheck {
        #[command(flatten)]
        args: AdjointArgs,
        #[arg(long, value_enum, default_value_t = Mode::Standard)]
        mode: Mode,
    },
    /// Limits in a category, or their preservation by a functor
    Limits {
        file: PathBuf,
        #[arg(long, conflicts_with = "functor", required_unless_present = "functor")]
        cat: Option<String>,
        #[arg(long)]
        functor: Option<String>,
        /// Limit kinds to check
        #[arg(long, value_delimiter = ',', default_value = "terminal,products,equalizers")]
        scope: Vec<commands::ScopeKind>,
    },
    /// Adjoint pair whose left member preserves finite limits
    Admissible(AdjointArgs),
    /// Rewrite categories in the other presentation
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Presentation,
    },
    /// Emit a generated category
    Generate {
        #[command(subcommand)]
        what: commands::Generator,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Check { .. } => "check",
        Command::Identities { .. } => "identities",
        Command::Homs { .. } => "homs",
        Command::Skeleton { .. } => "skeleton",
        Command::Iso(_) => "iso",
        Command::Equiv { .. } => "equiv",
        Command::FunctorCheck { .. } => "functor-check",
        Command::NatCheck { .. } => "nat-check",
        Command::AdjointCheck { .. } => "adjoint-check",
        Command::Limits { .. } => "limits",
        Command::Admissible(_) => "admissible",
        Command::Convert { .. } => "convert",
        Command::Generate { .. } => "generate",
    };
    let result = match cli.command {
        Command::Check { file } => commands::check(&file),
        Command::Identities { file, cat } => commands::identities(&file, &cat),
        Command::Homs { file, cat, from, to } => commands::homs(&file, &cat, from.zip(to)),
        Command::Skeleton { file, cat, seed } => commands::skeleton(&file, &cat, seed),
        Command::Iso(p) => commands::iso(&p.file, &p.left, &p.right),
        Command::Equiv { pair, brute_force } => commands::equiv(&pair.file, &pair.left, &pair.right, brute_force),
        Command::FunctorCheck { file, functor } => commands::functor_check(&file, &functor),
        Command::NatCheck { file, nat } => commands::nat_check(&file, &nat),
        Command::AdjointCheck { args, mode } => commands::adjoint_check(
            &args.file,
            [&args.left, &args.right, &args.unit, &args.counit],
            match mode {
                Mode::Standard => arrowcat::adjunction::AdjunctionMode::Standard,
                Mode::PaperLiteral => arrowcat::adjunction::AdjunctionMode::PaperLiteral,
            },
        ),
        Command::Limits {
            file,
            cat,
            functor,
            scope,
        } => commands::limits(&file, cat.as_deref(), functor.as_deref(), &scope),
        Command::Admissible(args) => {
            commands::admissible(&args.file, [&args.left, &args.right, &args.unit, &args.counit])
        }
        Command::Convert { file, to } => commands::convert(&file, matches!(to, Presentation::Standard)),
        Command::Generate { what } => commands::generate(what),
    };
    outcome::emit(name, cli.format, result)
}
