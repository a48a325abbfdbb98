use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rtsm::bench::{bench_palindromes, deduction_budget, to_csv};
use rtsm::codegen::{emit_program, Origin};
use rtsm::encoding::{build_class_table, initial_query, ClassTable};
use rtsm::engine::{render_trace, run_query, verify_with_table};
use rtsm::tm::random::random_word;
use rtsm::tm::{self, parse_tm, Symbol, TuringMachine, Verdict};

const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// Compile Turing machines into subtyping machines and run them.
#[derive(Parser)]
#[command(name = "rtsm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a .tm file and print its size.
    Parse { path: PathBuf },
    /// Run the machine directly.
    Run {
        path: PathBuf,
        #[arg(default_value = "")]
        word: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u64,
        /// Print every configuration.
        #[arg(long)]
        trace: bool,
    },
    /// Write the class table or a Python program for a word.
    Compile {
        path: PathBuf,
        #[arg(default_value = "")]
        word: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Python)]
        emit: Emit,
    },
    /// Run the subtyping machine with the deduction engine.
    Simulate {
        path: PathBuf,
        #[arg(default_value = "")]
        word: String,
        /// Defaults to 8 deductions per step of the default step budget, plus 16.
        #[arg(long)]
        max_deductions: Option<u64>,
        /// Print every deduction.
        #[arg(long)]
        trace: bool,
    },
    /// Check the engine against the direct interpreter, step for step.
    Verify {
        path: PathBuf,
        /// Comma-separated words; an empty item is the empty word.
        #[arg(long, conflicts_with = "random")]
        words: Option<String>,
        /// Number of random words.
        #[arg(long, requires = "max_len")]
        random: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_steps: u64,
        /// Remove the rule at this index before checking (fault injection).
        #[arg(long, hide = true)]
        drop_rule: Option<usize>,
    },
    /// Deduction counts for random palindromes, as CSV.
    Bench {
        path: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file, `-` for standard output.
        #[arg(long, default_value = "-")]
        csv: String,
        /// Draw letters from these symbols only (default: the whole alphabet).
        #[arg(long, value_delimiter = ',')]
        symbols: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Python,
    Table,
}

/// Exit codes shared by every subcommand.
mod code {
    pub const OK: u8 = 0;
    pub const REJECTED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const DIVERGENCE: u8 = 4;
}

struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(code::USAGE, msg.into())
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Accepted => code::OK,
        Verdict::Rejected => code::REJECTED,
        Verdict::BudgetExhausted => code::BUDGET,
    }
}

fn load(path: &Path) -> Result<TuringMachine, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_tm(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn table_for(tm: &TuringMachine) -> Result<ClassTable, Failure> {
    build_class_table(tm).map_err(|e| Failure::usage(e.to_string()))
}

fn word(tm: &TuringMachine, text: &str) -> Result<Vec<Symbol>, Failure> {
    tm.parse_word(text).map_err(|e| Failure::usage(format!("invalid word {text:?}: {e}")))
}

fn write_out(dest: Option<&Path>, text: &str) -> Result<(), Failure> {
    match dest {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::usage(e.to_string())),
    }
}

fn machine_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| "machine".into(), |s| s.to_string_lossy().into_owned())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { path } => {
            let tm = load(&path)?;
            println!("{tm}");
            Ok(code::OK)
        }
        Command::Run { path, word: w, max_steps, trace } => {
            let tm = load(&path)?;
            let w = word(&tm, &w)?;
            let r = tm::run(&tm, &w, max_steps, trace);
            if let Some(configs) = &r.trace {
                for c in configs {
                    println!("{}", c.display(&tm));
                }
            }
            println!("{}", r.verdict);
            println!("steps: {}", r.steps);
            Ok(verdict_code(r.verdict))
        }
        Command::Compile { path, word: w, output, emit } => {
            let tm = load(&path)?;
            let w = word(&tm, &w)?;
            let table = table_for(&tm)?;
            let text = match emit {
                Emit::Table => table.dump(),
                Emit::Python => {
                    let origin = Origin { machine: machine_name(&path), word: tm.format_word(&w) };
                    emit_program(&table, &initial_query(&tm, &w), &origin)
                        .map_err(|e| Failure::usage(e.to_string()))?
                        .source
                }
            };
            write_out(output.as_deref(), &text)?;
            Ok(code::OK)
        }
        Command::Simulate { path, word: w, max_deductions, trace } => {
            let tm = load(&path)?;
            let w = word(&tm, &w)?;
            let table = table_for(&tm)?;
            let start = initial_query(&tm, &w);
            let budget = max_deductions.unwrap_or_else(|| deduction_budget(DEFAULT_MAX_STEPS));
            let r = run_query(&start, &table, budget, trace).map_err(|e| Failure(code::USAGE, e.to_string()))?;
            if let Some(steps) = &r.trace {
                print!("{}", render_trace(&start, steps, &tm));
            }
            println!("{}", r.verdict);
            println!("transitions: {}", r.transitions);
            println!("deductions: {}", r.deductions);
            println!("max burst: {}", r.max_burst());
            Ok(verdict_code(r.verdict))
        }
        Command::Verify { path, words, random, max_len, seed, max_steps, drop_rule } => {
            let tm = load(&path)?;
            let mut table = table_for(&tm)?;
            if let Some(i) = drop_rule {
                let (m, mut rules) = table.into_parts();
                if i >= rules.len() {
                    return Err(Failure::usage(format!("no rule {i}; the table has {}", rules.len())));
                }
                rules.remove(i);
                table = ClassTable::from_rules(m, rules).map_err(|e| Failure::usage(e.to_string()))?;
            }
            let inputs: Vec<Vec<Symbol>> = match (words, random) {
                (Some(list), _) => list.split(',').map(|s| word(&tm, s.trim())).collect::<Result<_, _>>()?,
                (None, Some(n)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let symbols: Vec<Symbol> = tm.symbols().collect();
                    let max_len = max_len.unwrap_or(0);
                    (0..n)
                        .map(|_| {
                            let len = rng.gen_range(0..=max_len);
                            random_word(&mut rng, &symbols, len)
                        })
                        .collect()
                }
                (None, None) => return Err(Failure::usage("give --words or --random")),
            };
            for w in &inputs {
                let shown = tm.format_word(w);
                match verify_with_table(&tm, &table, w, max_steps, deduction_budget(max_steps)) {
                    Ok(r) => println!(
                        "{:?}\t{}\ttransitions={}\tdeductions={}\tmax_burst={}",
                        shown, r.verdict, r.transitions, r.deductions, r.max_burst
                    ),
                    Err(d) => {
                        let mut msg = format!("word {shown:?}: {d}\n  oracle: {}\n", d.oracle.display(&tm));
                        match &d.engine {
                            Some(c) => msg.push_str(&format!("  engine: {}\n", c.display(&tm))),
                            None => msg.push_str("  engine: (no configuration)\n"),
                        }
                        msg.push_str("  last deductions:\n");
                        for line in &d.trace_window {
                            msg.push_str(&format!("    {line}\n"));
                        }
                        return Err(Failure(code::DIVERGENCE, msg.trim_end().to_string()));
                    }
                }
            }
            println!("{} words agree", inputs.len());
            Ok(code::OK)
        }
        Command::Bench { path, lengths, seed, csv, symbols, max_steps } => {
            let tm = load(&path)?;
            let table = table_for(&tm)?;
            let symbols: Vec<Symbol> = match symbols {
                Some(names) => names
                    .iter()
                    .map(|n| tm.symbol(n.trim()).ok_or_else(|| Failure::usage(format!("unknown symbol `{n}`"))))
                    .collect::<Result<_, _>>()?,
                None => tm.symbols().collect(),
            };
            if symbols.is_empty() {
                return Err(Failure::usage("no symbols to draw palindromes from"));
            }
            let rows = bench_palindromes(&table, &symbols, &lengths, seed, max_steps)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let dest = (csv != "-").then(|| PathBuf::from(&csv));
            write_out(dest.as_deref(), &to_csv(&rows))?;
            Ok(code::OK)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => ExitCode::from(c),
        Err(Failure(c, msg)) => {
            eprintln!("rtsm: {msg}");
            ExitCode::from(c)
        }
    }
}
