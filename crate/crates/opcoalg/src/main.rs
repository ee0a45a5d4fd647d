use clap::{Args, Parser, Subcommand, ValueEnum};
use opcoalg::cli::{self, CliOverrides, OutputFormat, SubCommand};
use std::path::PathBuf;

/// Finite-scale verification of operadic coalgebras and their comonads.
#[derive(Parser)]
#[command(name = "opcoalg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Path to the JSON job file
    spec: PathBuf,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Override the search budget from the job file
    #[arg(long)]
    budget: Option<usize>,

    /// Override the object roster (comma-separated object ids)
    #[arg(long, value_delimiter = ',')]
    roster: Option<Vec<usize>>,

    /// Carrier condition mode: "2" (pairwise, when valid) or "all"
    #[arg(long)]
    strength: Option<String>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check the operad axioms of the loaded operad
    CheckOperad(Common),
    /// Check category axioms, bifunctoriality and the projection
    /// classification of the instance
    CheckInstance(Common),
    /// Enumerate all coalgebra structures over the roster and verify they
    /// form a category
    EnumerateCoalgebras(Common),
    /// Compute the comonad carrier at every roster object
    ComputeComonad(Common),
    /// Verify the comonad laws of the coaction structure and the subcomonad
    VerifyComonadLaws(Common),
    /// Verify the equivalence between operadic and comonadic structures
    VerifyEquivalence(Common),
    /// Verify the identity-comonad picture on a Cartesian instance
    Fox(Common),
}

fn main() {
    let cli = Cli::parse();
    let (cmd, common) = match cli.command {
        Command::CheckOperad(c) => (SubCommand::CheckOperad, c),
        Command::CheckInstance(c) => (SubCommand::CheckInstance, c),
        Command::EnumerateCoalgebras(c) => (SubCommand::EnumerateCoalgebras, c),
        Command::ComputeComonad(c) => (SubCommand::ComputeComonad, c),
        Command::VerifyComonadLaws(c) => (SubCommand::VerifyComonadLaws, c),
        Command::VerifyEquivalence(c) => (SubCommand::VerifyEquivalence, c),
        Command::Fox(c) => (SubCommand::Fox, c),
    };
    let format = match common.format {
        Format::Text => OutputFormat::Text,
        Format::Structured => OutputFormat::Structured,
    };
    let strength = match common.strength.as_deref() {
        None => None,
        Some(s) => match cli::parse_strength(s) {
            Some(mode) => Some(mode),
            None => {
                eprintln!("error: --strength must be \"2\" or \"all\"");
                std::process::exit(2);
            }
        },
    };
    let overrides = CliOverrides {
        budget: common.budget,
        roster: common.roster,
        strength,
    };
    std::process::exit(cli::execute(cmd, &common.spec, format, &overrides));
}
