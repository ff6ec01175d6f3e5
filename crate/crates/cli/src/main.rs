use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gptlab_cli::{
    catalog_listing, render_svg, run, structure_report, to_json, Check, CliError, RunConfig, Source, Which,
};

#[derive(Parser)]
#[command(name = "gptlab", version, about = "Duality, actual faces and intermediate determinism for GPT systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Catalog entry, e.g. `nu_bit(1/4)`; repeatable.
    #[arg(long)]
    catalog: Vec<String>,
    /// System JSON file; repeatable.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Arc-engine tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for one report per system (default: stdout).
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

impl Inputs {
    fn config(self, checks: BTreeSet<Check>) -> RunConfig {
        let mut inputs: Vec<Source> = self.catalog.into_iter().map(Source::Catalog).collect();
        inputs.extend(self.input.into_iter().map(Source::File));
        RunConfig {
            inputs,
            checks,
            tol: self.tol,
            seed: self.seed,
            out: self.out,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Every check.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    validate: bool,
    #[arg(long)]
    classify: bool,
    #[arg(long)]
    determinism: bool,
    #[arg(long)]
    propensity: bool,
    #[arg(long)]
    gpm: bool,
    #[arg(long)]
    lemmas: bool,
}

impl CheckArgs {
    fn checks(&self) -> BTreeSet<Check> {
        if self.all {
            return Check::ALL.into();
        }
        let flags = [
            (self.validate, Check::Validate),
            (self.classify, Check::Classify),
            (self.determinism, Check::Determinism),
            (self.propensity, Check::Propensity),
            (self.gpm, Check::Gpm),
            (self.lemmas, Check::Lemmas),
        ];
        let picked: BTreeSet<Check> = flags.iter().filter(|(on, _)| *on).map(|(_, c)| *c).collect();
        if picked.is_empty() {
            RunConfig::default().checks
        } else {
            picked
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BodyArg {
    States,
    Effects,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names and descriptions of the built-in systems.
    List,
    /// Writes an entry in the system JSON schema.
    Export { name: String },
}

#[derive(Subcommand)]
enum Command {
    /// Runs the requested checks and writes reports.
    Check(CheckArgs),
    /// Validation and restriction class only.
    Classify(Inputs),
    /// SVG outline of a body or of a planar section of it.
    Render {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "effects")]
        body: BodyArg,
        /// Section plane such as `z=1/2`; needed in three dimensions.
        #[arg(long)]
        plane: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Built-in example systems.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Generalized probability measures of a system or of a probability structure file.
    Gpm {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        structure: Option<PathBuf>,
    },
}

fn print(text: &str) {
    print!("{text}");
}

fn write_or_print(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Write { path, source }),
        None => {
            print(text);
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout();
    match cli.command {
        Command::Check(args) => {
            let checks = args.checks();
            run(&args.inputs.config(checks), &mut stdout).map(drop)
        }
        Command::Classify(inputs) => {
            run(&inputs.config([Check::Validate, Check::Classify].into()), &mut stdout).map(drop)
        }
        Command::Render {
            catalog,
            input,
            body,
            plane,
            tol,
            out,
        } => {
            let src = match (catalog, input) {
                (Some(c), None) => Source::Catalog(c),
                (None, Some(p)) => Source::File(p),
                _ => return Err(CliError::Parse("render takes exactly one of --catalog, --input".into())),
            };
            let which = match body {
                BodyArg::States => Which::States,
                BodyArg::Effects => Which::Effects,
            };
            let svg = render_svg(&src, which, plane.as_deref(), tol)?;
            write_or_print(out, &svg)
        }
        Command::Catalog(CatalogCommand::List) => {
            for e in catalog_listing()? {
                println!("{:<22} {:<9} d+1={}  {}", e.name, e.scalar, e.dim, e.description);
            }
            Ok(())
        }
        Command::Catalog(CatalogCommand::Export { name }) => {
            let entry = gptlab::catalog::build(&name).map_err(|e| CliError::Parse(e.to_string()))?;
            let mut text = gptlab::io::write_system(&entry.system);
            text.push('\n');
            print(&text);
            Ok(())
        }
        Command::Gpm { inputs, structure } => match structure {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                let rep = structure_report(&text)?;
                let passed = rep.passed;
                write_or_print(inputs.out, &to_json(&rep))?;
                if passed {
                    Ok(())
                } else {
                    Err(CliError::CheckFailure("probability structure violates its axioms".into()))
                }
            }
            None => run(&inputs.config([Check::Gpm].into()), &mut stdout).map(drop),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gptlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
