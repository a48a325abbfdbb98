//! Deduction-count benchmark over random palindromes.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encoding::{initial_query, ClassTable};
use crate::engine::{run_query, EngineError};
use crate::tm::random::random_palindrome;
use crate::tm::{self, Symbol, Verdict};

pub const CSV_HEADER: &str = "length,tm_steps,deductions,verdict";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub word_length: usize,
    pub tm_steps: u64,
    pub deductions: u64,
    pub verdict: Verdict,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.word_length, self.tm_steps, self.deductions, self.verdict)
    }
}

/// Deduction allowance for a run of `tm_steps` transitions.
pub fn deduction_budget(tm_steps: u64) -> u64 {
    tm_steps.saturating_mul(crate::engine::REAL_TIME_BOUND as u64).saturating_add(16)
}

/// One simulated palindrome per length, drawn from `symbols` with a ChaCha
/// stream seeded by `seed`. Rows come back in the order of `lengths`.
pub fn bench_palindromes(
    table: &ClassTable,
    symbols: &[Symbol],
    lengths: &[usize],
    seed: u64,
    max_steps: u64,
) -> Result<Vec<BenchRecord>, EngineError> {
    let tm = table.machine();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Vec<Symbol>> = lengths.iter().map(|&n| random_palindrome(&mut rng, symbols, n)).collect();
    words
        .iter()
        .map(|w| {
            let oracle = tm::run(tm, w, max_steps, false);
            let r = run_query(&initial_query(tm, w), table, deduction_budget(oracle.steps), false)?;
            Ok(BenchRecord { word_length: w.len(), tm_steps: oracle.steps, deductions: r.deductions, verdict: r.verdict })
        })
        .collect()
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}
