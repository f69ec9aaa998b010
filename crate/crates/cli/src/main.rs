//! `topquiver`: check finite quivers, their morphisms and the induced
//! Cuntz–Pimsner homomorphisms from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check
//! fails, 2 when the input cannot be read or does not match its schema.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use topquiver::gen::GenBounds;

#[derive(Parser)]
#[command(
    name = "topquiver",
    version,
    about = "Checks finite topological quivers and regular quiver morphisms"
)]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Args)]
struct Generate {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    #[arg(long, default_value_t = 16)]
    max_edges: usize,
    /// Give every edge weight 1.
    #[arg(long)]
    counting: bool,
}

impl Generate {
    fn bounds(&self) -> GenBounds {
        GenBounds::new(self.max_vertices, self.max_edges)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a quiver file for structural problems.
    Validate { quiver: PathBuf },
    /// List sinks, finite-emitting, regular and singular vertices.
    Classify { quiver: PathBuf },
    /// Check that both squares of a morphism commute.
    CheckMorphism { morphism: PathBuf },
    /// Check A1–A3.
    CheckRegular { morphism: PathBuf },
    /// Print `outer ∘ inner` as a self-contained morphism file.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Check C1–C4 for the pullback correspondence morphism.
    CheckCovariance { morphism: PathBuf },
    /// Check (μ¹)⁽¹⁾(σ_F(g)) = σ_E(μ¹(g)) on basis vectors and random g.
    C4lemma {
        morphism: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random vectors in addition to the basis.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Print the generators-and-relations presentation.
    Presentation { quiver: PathBuf },
    /// Print the induced homomorphism on generators.
    InducedHom { morphism: PathBuf },
    /// Check every relation under the induced homomorphism.
    VerifyInduced { morphism: PathBuf },
    /// Check the factor-map conditions of a counting-measure morphism.
    FactorCheck { morphism: PathBuf },
    /// Print a random quiver.
    GenQuiver(Generate),
    /// Print a random regular morphism.
    GenRegularMorphism(Generate),
}

fn run(command: &Command) -> Result<commands::Outcome, input::Malformed> {
    match command {
        Command::Validate { quiver } => commands::validate_file(quiver),
        Command::Classify { quiver } => commands::classify(quiver),
        Command::CheckMorphism { morphism } => commands::check_morphism(morphism),
        Command::CheckRegular { morphism } => commands::check_regular(morphism),
        Command::Compose { outer, inner } => commands::compose(outer, inner),
        Command::CheckCovariance { morphism } => commands::check_covariance(morphism),
        Command::C4lemma {
            morphism,
            seed,
            samples,
        } => commands::c4lemma(morphism, *seed, *samples),
        Command::Presentation { quiver } => commands::presentation(quiver),
        Command::InducedHom { morphism } => commands::induced_hom(morphism),
        Command::VerifyInduced { morphism } => commands::verify_induced(morphism),
        Command::FactorCheck { morphism } => commands::factor_check(morphism),
        Command::GenQuiver(g) => Ok(commands::gen_quiver(g.seed, g.bounds(), g.counting)),
        Command::GenRegularMorphism(g) => {
            commands::gen_regular_morphism(g.seed, g.bounds(), g.counting)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(outcome) => {
            match cli.format {
                Format::Human => {
                    for line in &outcome.human {
                        println!("{line}");
                    }
                }
                Format::Structured => {
                    let value =
                        serde_json::json!({ "ok": outcome.ok, "result": outcome.structured });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&value).expect("json values serialize")
                    );
                }
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(input::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
