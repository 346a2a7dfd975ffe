//! `branchlaw` — branching laws of permutative endomorphisms of the Cuntz
//! algebra O_N, computed from the associated semi-Mealy machine.
//!
//! Subcommands expose the library surface: `machine` renders the transducer,
//! `branch` computes one law, `check` verifies laws against the symbolic
//! oracle, `formula` prints the defining relations, `signature` and
//! `classify` sweep short inputs, and `suite` replays the pinned regression
//! rows for the built-in permutations.
//!
//! Exit codes: 0 success, 1 mismatch/counterexample, 2 parse error,
//! 3 semantic error (alphabet violations, periodic check words), 4 guard
//! exceeded. Stdout carries only data; diagnostics go to stderr.

use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};

use branchlaw::analysis;
use branchlaw::branching::{branch, endomorphism_formula, signature, BranchError};
use branchlaw::fuzz;
use branchlaw::oracle::{self, OracleError};
use branchlaw::suite;
use branchlaw::word::WordError;
use branchlaw::{SemiMealyMachine, Word};

mod sigma_spec;

use sigma_spec::SigmaSpec;

/// An error destined for stderr together with the process exit code.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn semantic(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

fn word_failure(e: WordError) -> Failure {
    match e {
        // The text parsed but names a letter outside {1..N}: semantic.
        WordError::LetterOutOfRange { .. } => Failure::semantic(e.to_string()),
        _ => Failure::parse(e.to_string()),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::PeriodicWord(_) => Failure::semantic(e.to_string()),
        OracleError::Branch(inner) => Failure::semantic(inner.to_string()),
    }
}

fn analysis_failure(e: analysis::AnalysisError) -> Failure {
    match e {
        analysis::AnalysisError::AlphabetMismatch(..) => Failure::semantic(e.to_string()),
        _ => Failure::guard(e.to_string()),
    }
}

#[derive(Parser)]
#[command(
    name = "branchlaw",
    version,
    about = "Branching laws of permutative endomorphisms of Cuntz algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `--sigma FILE` or `--builtin NAME`; exactly one must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SigmaArgs {
    /// Permutation file, JSON or compact text
    #[arg(long, value_name = "FILE")]
    sigma: Option<PathBuf>,
    /// Built-in permutation name (see `--builtin help`)
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl SigmaArgs {
    fn load(&self) -> Result<SigmaSpec, Failure> {
        SigmaSpec::load(self.sigma.as_ref(), self.builtin.as_deref())
    }
}

/// Like [`SigmaArgs`] but optional: `check --fuzz` draws its own σ's.
#[derive(Args)]
#[group(id = "check_source", multiple = false)]
struct OptionalSigmaArgs {
    /// Permutation file, JSON or compact text
    #[arg(long, value_name = "FILE")]
    sigma: Option<PathBuf>,
    /// Built-in permutation name (see `--builtin help`)
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RenderArgs {
    /// Emit the transition diagram in Graphviz DOT
    #[arg(long)]
    dot: bool,
    /// Emit the transition/output table as TSV
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
#[group(id = "check_target", required = true, multiple = false)]
struct CheckTarget {
    /// Verify a single nonperiodic input word
    #[arg(long, value_name = "WORD")]
    word: Option<String>,
    /// Verify COUNT pseudorandom (σ, word) instances instead
    #[arg(long, value_name = "COUNT")]
    fuzz: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Render the semi-Mealy machine of a permutation
    Machine {
        #[command(flatten)]
        source: SigmaArgs,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Compute the branching law of P(word) composed with the endomorphism
    Branch {
        #[command(flatten)]
        source: SigmaArgs,
        /// Input word (digit string for N ≤ 9, else comma-separated)
        #[arg(long, value_name = "WORD")]
        word: String,
        /// Also print the state cycles behind each component
        #[arg(long)]
        show_cycles: bool,
        /// Render the law with ∘ and ⊕ instead of ASCII
        #[arg(long)]
        unicode: bool,
    },
    /// Check machine-computed laws against the symbolic orbit oracle
    Check {
        #[command(flatten)]
        source: OptionalSigmaArgs,
        #[command(flatten)]
        target: CheckTarget,
        /// Seed for the --fuzz instance stream
        #[arg(long, value_name = "SEED", default_value_t = 0, requires = "fuzz")]
        seed: u64,
    },
    /// Print the defining relations psi(s_i) = Σ s_σ(iK) s_K*
    Formula {
        #[command(flatten)]
        source: SigmaArgs,
    },
    /// Tabulate laws for every canonical nonperiodic word up to a length
    Signature {
        #[command(flatten)]
        source: SigmaArgs,
        /// Maximum input length (at least 1)
        #[arg(long, value_name = "LEN", value_parser = clap::value_parser!(u32).range(1..))]
        max_len: u32,
    },
    /// Partition all permutations of a shape by branching signature
    Classify {
        /// Alphabet size N
        #[arg(long)]
        n: u32,
        /// Block length l
        #[arg(long)]
        l: u32,
        /// Maximum input length for the signature sweep
        #[arg(long, value_name = "LEN", value_parser = clap::value_parser!(u32).range(1..))]
        max_len: u32,
        /// Abort if the shape holds more than this many permutations
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
        /// Enumerate shapes beyond the default N^l ≤ 9 guard
        #[arg(long)]
        force: bool,
    },
    /// Replay the pinned regression rows over the built-in permutations
    Suite {
        /// Render the laws with ∘ and ⊕ instead of ASCII
        #[arg(long)]
        unicode: bool,
    },
}

fn main() {
    // Die quietly on a closed pipe (e.g. `branchlaw suite | head`) instead
    // of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Machine { source, render } => cmd_machine(&source, &render),
        Command::Branch { source, word, show_cycles, unicode } => {
            cmd_branch(&source, &word, show_cycles, unicode)
        }
        Command::Check { source, target, seed } => cmd_check(&source, &target, seed),
        Command::Formula { source } => cmd_formula(&source),
        Command::Signature { source, max_len } => cmd_signature(&source, max_len),
        Command::Classify { n, l, max_len, cap, force } => {
            cmd_classify(n, l, max_len as usize, cap, force)
        }
        Command::Suite { unicode } => cmd_suite(unicode),
    };
    if let Err(failure) = result {
        eprintln!("error: {}", failure.message);
        process::exit(failure.code);
    }
}

fn cmd_machine(source: &SigmaArgs, render: &RenderArgs) -> Result<(), Failure> {
    let spec = source.load()?;
    let machine = SemiMealyMachine::build(&spec.sigma);
    if render.dot {
        print!("{}", machine.to_dot());
    } else {
        print!("{}", machine.to_table());
    }
    Ok(())
}

fn cmd_branch(
    source: &SigmaArgs,
    word_text: &str,
    show_cycles: bool,
    unicode: bool,
) -> Result<(), Failure> {
    let spec = source.load()?;
    let word = Word::parse(word_text, spec.sigma.alphabet_size()).map_err(word_failure)?;
    let law = branch(&spec.sigma, &word)
        .map_err(|e: BranchError| Failure::semantic(e.to_string()))?;
    println!("{}", law.equation(unicode));
    if show_cycles {
        let machine = SemiMealyMachine::build(&spec.sigma);
        let cycles: Vec<String> = law
            .components
            .iter()
            .map(|c| c.states.iter().map(|&s| machine.state_name(s)).collect())
            .collect();
        println!("cycles: {}", cycles.join(", "));
    }
    if law.gauge_reduced {
        println!("gauge-reduced (r={})", law.gauge_period);
    }
    Ok(())
}

fn join_words(words: &[Word]) -> String {
    let rendered: Vec<String> = words.iter().map(Word::to_string).collect();
    rendered.join(",")
}

fn cmd_check(source: &OptionalSigmaArgs, target: &CheckTarget, seed: u64) -> Result<(), Failure> {
    if let Some(word_text) = &target.word {
        let spec = match (&source.sigma, &source.builtin) {
            (None, None) => {
                return Err(Failure::parse(
                    "checking a single word requires --sigma or --builtin",
                ))
            }
            _ => SigmaSpec::load(source.sigma.as_ref(), source.builtin.as_deref())?,
        };
        let word = Word::parse(word_text, spec.sigma.alphabet_size()).map_err(word_failure)?;
        let comparison = oracle::compare(&spec.sigma, &word).map_err(oracle_failure)?;
        if comparison.agree() {
            println!("OK");
            Ok(())
        } else {
            println!("MISMATCH\tinput={word}");
            println!("machine\t{}", join_words(&comparison.machine));
            println!("oracle\t{}", join_words(&comparison.oracle));
            Err(Failure::mismatch("machine and oracle disagree"))
        }
    } else {
        let count = target.fuzz.expect("clap guarantees a check target");
        for (index, instance) in fuzz::instances(seed, count).iter().enumerate() {
            let comparison = oracle::compare(&instance.sigma, &instance.word)
                .expect("fuzz instances are nonperiodic over the right alphabet");
            if !comparison.agree() {
                println!("MISMATCH\tinstance={index}\tseed={seed}");
                println!(
                    "sigma\t{}",
                    branchlaw::sigma_io::to_compact_inline(&instance.sigma)
                );
                println!("input\t{}", instance.word);
                println!("machine\t{}", join_words(&comparison.machine));
                println!("oracle\t{}", join_words(&comparison.oracle));
                return Err(Failure::mismatch("machine and oracle disagree"));
            }
        }
        eprintln!("checked {count} instances (seed {seed})");
        println!("OK");
        Ok(())
    }
}

fn cmd_formula(source: &SigmaArgs) -> Result<(), Failure> {
    let spec = source.load()?;
    print!("{}", endomorphism_formula(&spec.sigma));
    Ok(())
}

fn cmd_signature(source: &SigmaArgs, max_len: u32) -> Result<(), Failure> {
    let spec = source.load()?;
    let map = signature(&spec.sigma, max_len as usize)
        .map_err(|e| Failure::guard(e.to_string()))?;
    print!("input\toutputs\tlaw\n");
    for (input, outputs) in &map {
        let terms: Vec<String> = outputs.iter().map(|w| format!("P({w})")).collect();
        println!(
            "{input}\t{}\tP({input}) o psi = {}",
            join_words(outputs),
            terms.join(" (+) ")
        );
    }
    Ok(())
}

fn cmd_classify(n: u32, l: u32, max_len: usize, cap: u64, force: bool) -> Result<(), Failure> {
    let classification =
        analysis::classify(n, l, max_len, cap, force).map_err(analysis_failure)?;
    print!("{}", classification.to_tsv());
    eprintln!(
        "{} permutations of shape ({n},{l}) fall into {} signature cells",
        classification.enumerated,
        classification.cells.len()
    );
    Ok(())
}

fn cmd_suite(unicode: bool) -> Result<(), Failure> {
    let results = suite::run();
    let mut failures = 0usize;
    for row in &results {
        if row.ok() {
            println!("ok\t{}\t{}", row.fixture, row.law.equation(unicode));
        } else {
            failures += 1;
            let mut expected = row.expected.clone();
            expected.sort();
            println!(
                "FAIL\t{}\t{}\texpected {}\tgot {}",
                row.fixture,
                row.input,
                join_words(&expected),
                join_words(&row.law.component_multiset())
            );
        }
    }
    println!("{} rows, {failures} failures", results.len());
    if failures > 0 {
        Err(Failure::mismatch(format!("{failures} suite rows failed")))
    } else {
        Ok(())
    }
}
