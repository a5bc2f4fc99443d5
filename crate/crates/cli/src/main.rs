mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tandem_core::{Alphabet, Budget, DuplicationSystem};

use commands::{CliError, Output};

/// Bounded tandem duplication systems: generation, counting, automata,
/// capacity and expressiveness.
#[derive(Debug, Parser)]
#[command(name = "tandem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Alphabet as a string of one-character symbols (e.g. "012", "ACGT"),
    /// or comma-separated names.
    #[arg(long)]
    alphabet: String,

    /// Seed word over the alphabet.
    #[arg(long)]
    seed: String,

    /// Maximum duplication length k.
    #[arg(long = "max-dup")]
    max_dup: usize,
}

impl SystemArgs {
    fn system(&self) -> Result<DuplicationSystem, CliError> {
        DuplicationSystem::parse(&self.alphabet, &self.seed, self.max_dup).map_err(CliError::usage)
    }
}

#[derive(Debug, Args)]
struct BudgetArg {
    /// Maximum number of words kept during enumeration.
    #[arg(long, default_value_t = Budget::default().0)]
    budget: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every system word up to a length.
    Generate {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "max-len")]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Count system words of each length.
    Count {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "max-len")]
        max_len: usize,
        /// Count paths in the automaton instead of enumerating (k <= 3).
        #[arg(long)]
        automaton: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Decide whether a word belongs to the system.
    Member {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        word: String,
    },
    /// Build the deterministic automaton of the system (k <= 3).
    Automaton {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Capacity of the system, or of a forbidden-factor constraint.
    Capacity {
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long = "max-dup")]
        max_dup: Option<usize>,
        /// Report the closed form instead of the numerical spectral radius.
        #[arg(long)]
        exact: bool,
        /// Also report the value in bits per symbol.
        #[arg(long)]
        bits: bool,
        /// Comma-separated forbidden factors; ignores seed and max-dup.
        #[arg(long, value_delimiter = ',')]
        avoid: Option<Vec<String>>,
        #[arg(long, default_value_t = tandem_core::capacity::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Enumeration depth for the empirical estimate used when k >= 4.
        #[arg(long = "max-len", default_value_t = 14)]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Decide full expressiveness.
    Express {
        #[command(flatten)]
        system: SystemArgs,
        /// Also name the family of the witness.
        #[arg(long)]
        witness: bool,
    },
    /// Construct a word that no system word contains.
    Witness {
        #[command(flatten)]
        system: SystemArgs,
        /// Confirm absence among all system words up to this length.
        #[arg(long = "check-upto")]
        check_upto: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Irreducible roots of a word, or its deduplication distance to a target.
    Dedup {
        #[arg(long)]
        alphabet: String,
        #[arg(long = "max-dup")]
        max_dup: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Certify that an automaton is closed under duplication.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        /// Automaton JSON file; defaults to the system's own automaton.
        #[arg(long)]
        automaton: Option<PathBuf>,
        /// Also compare accepted words with enumeration up to this length.
        #[arg(long = "check-upto")]
        check_upto: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Square-free word over a three-symbol alphabet.
    Squarefree {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "012")]
        alphabet: String,
    },
}

fn parse_alphabet(text: &str) -> Result<Alphabet, CliError> {
    Alphabet::parse(text).map_err(CliError::usage)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Generate {
            system,
            max_len,
            budget,
        } => commands::generate(&system.system()?, max_len, Budget(budget.budget)),
        Command::Count {
            system,
            max_len,
            automaton,
            budget,
        } => commands::count(&system.system()?, max_len, automaton, Budget(budget.budget)),
        Command::Member { system, word } => commands::member(&system.system()?, &word),
        Command::Automaton { system } => commands::automaton(&system.system()?),
        Command::Capacity {
            alphabet,
            seed,
            max_dup,
            exact,
            bits,
            avoid,
            tolerance,
            max_len,
            budget,
        } => {
            if let Some(forbidden) = avoid {
                return commands::avoid(&parse_alphabet(&alphabet)?, &forbidden, tolerance, bits);
            }
            let (Some(seed), Some(max_dup)) = (seed, max_dup) else {
                return Err(CliError::Usage(
                    "capacity needs --seed and --max-dup unless --avoid is given".into(),
                ));
            };
            let system = DuplicationSystem::parse(&alphabet, &seed, max_dup).map_err(CliError::usage)?;
            commands::capacity(&system, exact, bits, tolerance, max_len, Budget(budget.budget))
        }
        Command::Express { system, witness } => commands::express(&system.system()?, witness),
        Command::Witness {
            system,
            check_upto,
            budget,
        } => commands::witness(&system.system()?, check_upto, Budget(budget.budget)),
        Command::Dedup {
            alphabet,
            max_dup,
            word,
            target,
            budget,
        } => commands::dedup(
            &parse_alphabet(&alphabet)?,
            max_dup,
            &word,
            target.as_deref(),
            Budget(budget.budget),
        ),
        Command::Verify {
            system,
            automaton,
            check_upto,
            budget,
        } => commands::verify(
            &system.system()?,
            automaton.as_deref(),
            check_upto,
            Budget(budget.budget),
        ),
        Command::Squarefree { length, alphabet } => commands::squarefree(&parse_alphabet(&alphabet)?, length),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    let result = run(cli).and_then(|output| {
        let text = output.render(format)?;
        match out {
            Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io { path, source }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
