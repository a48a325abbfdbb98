//! Browser bindings: trace a subtyping machine, emit its Python program, and
//! chart deduction counts against word length.

use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use rtsm::bench::{bench_palindromes, to_csv};
use rtsm::codegen::{emit_program, Origin};
use rtsm::encoding::{build_class_table, initial_query, ClassTable};
use rtsm::engine::{render_trace, run_query};
use rtsm::tm::{parse_tm, Symbol, TuringMachine};

const PALINDROME: &str = include_str!("../../core/machines/palindrome.tm");

/// Longest trace the page will render.
const TRACE_LIMIT: u64 = 20_000;

fn load(text: &str) -> Result<(TuringMachine, ClassTable), String> {
    let tm = parse_tm(text).map_err(|e| e.to_string())?;
    let table = build_class_table(&tm).map_err(|e| e.to_string())?;
    Ok((tm, table))
}

fn word(tm: &TuringMachine, w: &str) -> Result<Vec<Symbol>, String> {
    tm.parse_word(w.trim()).map_err(|e| format!("invalid word: {e}"))
}

pub fn simulate_text(machine: &str, w: &str, max_deductions: u64) -> Result<String, String> {
    let (tm, table) = load(machine)?;
    let w = word(&tm, w)?;
    let start = initial_query(&tm, &w);
    let budget = max_deductions.min(TRACE_LIMIT);
    let r = run_query(&start, &table, budget, true).map_err(|e| e.to_string())?;
    let mut out = render_trace(&start, r.trace.as_deref().unwrap_or_default(), &tm);
    let _ = write!(
        out,
        "\n{}: {} transitions, {} deductions, longest burst {}\n",
        r.verdict,
        r.transitions,
        r.deductions,
        r.max_burst()
    );
    Ok(out)
}

pub fn python_text(machine: &str, w: &str) -> Result<String, String> {
    let (tm, table) = load(machine)?;
    let w = word(&tm, w)?;
    let origin = Origin { machine: "demo".into(), word: tm.format_word(&w) };
    emit_program(&table, &initial_query(&tm, &w), &origin).map(|p| p.source).map_err(|e| e.to_string())
}

pub fn bench_text(machine: &str, lengths: &str, symbols: &str, seed: u64) -> Result<String, String> {
    let (tm, table) = load(machine)?;
    let lengths: Vec<usize> = lengths
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| format!("bad length `{s}`")))
        .collect::<Result<_, _>>()?;
    let symbols: Vec<Symbol> = if symbols.trim().is_empty() {
        tm.symbols().collect()
    } else {
        symbols
            .split(',')
            .map(|s| tm.symbol(s.trim()).ok_or_else(|| format!("unknown symbol `{}`", s.trim())))
            .collect::<Result<_, _>>()?
    };
    let rows = bench_palindromes(&table, &symbols, &lengths, seed, 10_000_000).map_err(|e| e.to_string())?;
    Ok(to_csv(&rows))
}

#[wasm_bindgen]
pub fn default_machine() -> String {
    PALINDROME.to_string()
}

/// Deduction-by-deduction trace followed by a one-line summary.
#[wasm_bindgen]
pub fn simulate(machine: &str, word: &str, max_deductions: u64) -> Result<String, JsError> {
    simulate_text(machine, word, max_deductions).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compile_python(machine: &str, word: &str) -> Result<String, JsError> {
    python_text(machine, word).map_err(|e| JsError::new(&e))
}

/// CSV `length,tm_steps,deductions,verdict`; `symbols` empty means the whole
/// alphabet.
#[wasm_bindgen]
pub fn bench(machine: &str, lengths: &str, symbols: &str, seed: u64) -> Result<String, JsError> {
    bench_text(machine, lengths, symbols, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_ends_with_summary() {
        let out = simulate_text(PALINDROME, "aba", 1000).unwrap();
        assert!(out.starts_with("Z N L_blank Q_q0_R ⊏ L_a N L_b N L_a N L_blank N Z\n"));
        assert!(out.trim_end().lines().last().unwrap().starts_with("Accepted: "));
    }

    #[test]
    fn trace_is_capped() {
        let out = simulate_text(PALINDROME, &"a".repeat(128), u64::MAX).unwrap();
        assert!(out.contains("Budget-Exhausted"));
    }

    #[test]
    fn python_and_errors() {
        assert!(python_text(PALINDROME, "ab").unwrap().contains("def query(x: Q_q0_R[L_blank[N[Z]]])"));
        assert!(python_text(PALINDROME, "abc").is_err());
        assert!(python_text("states: q\n", "").is_err());
    }

    #[test]
    fn bench_rows() {
        let csv = bench_text(PALINDROME, "4, 8", "a,b", 1).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",Accepted")));
        assert!(bench_text(PALINDROME, "x", "", 1).is_err());
        assert!(bench_text(PALINDROME, "4", "q", 1).is_err());
    }
}
