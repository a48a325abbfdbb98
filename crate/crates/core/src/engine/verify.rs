//! Lock-step differential check of the deduction engine against the direct
//! interpreter.

use std::collections::BTreeMap;
use std::fmt;

use crate::encoding::{build_class_table, decode_query, initial_query, ClassTable, DecodeError};
use crate::tm::{self, Configuration, Symbol, TuringMachine, Verdict};

use super::{run_query, EngineError, Execution, Progress};

/// Outcome of an agreeing run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub transitions: u64,
    pub deductions: u64,
    /// Burst length -> number of transitions simulated with that many
    /// deductions.
    pub histogram: BTreeMap<u32, u64>,
    pub max_burst: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivergenceKind {
    /// Decoding the canonical query failed.
    Undecodable(DecodeError),
    /// Canonical query decodes to a different configuration.
    Configuration,
    /// One side finished while the other went on, or the verdicts differ.
    Verdict { oracle: Verdict, engine: Verdict },
    /// The engine simulated a transition the oracle does not take.
    ExtraTransition,
    Engine(EngineError),
}

/// First point at which the two executions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    /// Number of transitions both sides had completed.
    pub transition: u64,
    pub kind: DivergenceKind,
    pub oracle: Configuration,
    pub engine: Option<Configuration>,
    /// Rendered deduction lines leading up to the divergence.
    pub trace_window: Vec<String>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "divergence at transition {}: {:?}", self.transition, self.kind)
    }
}

impl std::error::Error for Divergence {}

const WINDOW: usize = 12;

fn oracle_verdict(tm: &TuringMachine, c: &Configuration) -> Option<Verdict> {
    match tm::step(tm, c) {
        tm::Step::Accept => Some(Verdict::Accepted),
        tm::Step::Reject => Some(Verdict::Rejected),
        tm::Step::Next(_) => None,
    }
}

/// Runs `word` through the direct interpreter and through the subtyping
/// machine compiled from `tm`, checking that every canonical query decodes
/// to the interpreter's configuration after the same number of steps.
///
/// Running out of budget on both sides counts as agreement.
pub fn verify_equivalence(
    tm: &TuringMachine,
    word: &[Symbol],
    tm_budget: u64,
    deduction_budget: u64,
) -> Result<EquivalenceReport, Divergence> {
    let table = build_class_table(tm).expect("valid machines yield collision-free tables");
    verify_with_table(tm, &table, word, tm_budget, deduction_budget)
}

/// [`verify_equivalence`] against an arbitrary (possibly corrupted) table.
pub fn verify_with_table(
    tm: &TuringMachine,
    table: &ClassTable,
    word: &[Symbol],
    tm_budget: u64,
    deduction_budget: u64,
) -> Result<EquivalenceReport, Divergence> {
    let start = initial_query(tm, word);
    let mut oracle = Configuration::initial(tm, word);
    let mut steps = 0u64;
    let mut exec = Execution::new(start.clone(), table);

    let diverge = |exec: &Execution<'_>, oracle: &Configuration, steps: u64, kind: DivergenceKind| {
        let engine = decode_query(exec.query()).ok();
        let trace_window = run_query(&start, table, exec.deductions(), true)
            .ok()
            .and_then(|r| r.trace)
            .map(|t| {
                let from = t.len().saturating_sub(WINDOW);
                t[from..]
                    .iter()
                    .map(|s| {
                        let q = s.query_after.as_ref().unwrap_or(&s.query_before);
                        format!("{}   {}", q.render(tm), s.kind.annotation())
                    })
                    .collect()
            })
            .unwrap_or_default();
        Divergence { transition: steps, kind, oracle: oracle.clone(), engine, trace_window }
    };

    match decode_query(exec.query()) {
        Ok(c) if c == oracle => {}
        Ok(_) => return Err(diverge(&exec, &oracle, 0, DivergenceKind::Configuration)),
        Err(e) => return Err(diverge(&exec, &oracle, 0, DivergenceKind::Undecodable(e))),
    }

    let verdict = loop {
        // The oracle stops at its step budget; the engine is held to the
        // same number of transitions.
        if steps >= tm_budget && oracle_verdict(tm, &oracle).is_none() {
            break Verdict::BudgetExhausted;
        }
        match exec.advance(deduction_budget) {
            Err(e) => return Err(diverge(&exec, &oracle, steps, DivergenceKind::Engine(e))),
            Ok(Progress::Deduced { canonical: false, .. }) => {}
            Ok(Progress::Deduced { canonical: true, .. }) => {
                match tm::step(tm, &oracle) {
                    tm::Step::Next(c) => oracle = c,
                    _ => return Err(diverge(&exec, &oracle, steps, DivergenceKind::ExtraTransition)),
                }
                steps += 1;
                match decode_query(exec.query()) {
                    Ok(c) if c == oracle => {}
                    Ok(_) => return Err(diverge(&exec, &oracle, steps, DivergenceKind::Configuration)),
                    Err(e) => return Err(diverge(&exec, &oracle, steps, DivergenceKind::Undecodable(e))),
                }
            }
            Ok(Progress::Finished(engine)) => {
                let oracle_side = match engine {
                    Verdict::BudgetExhausted => continue_oracle(tm, &oracle, tm_budget.saturating_sub(steps)),
                    _ => oracle_verdict(tm, &oracle)
                        .unwrap_or_else(|| continue_oracle(tm, &oracle, tm_budget.saturating_sub(steps))),
                };
                if engine != oracle_side || (engine != Verdict::BudgetExhausted && oracle_verdict(tm, &oracle).is_none()) {
                    let kind = DivergenceKind::Verdict { oracle: oracle_side, engine };
                    return Err(diverge(&exec, &oracle, steps, kind));
                }
                break engine;
            }
        }
    };

    let mut histogram = BTreeMap::new();
    for &b in exec.bursts() {
        *histogram.entry(b).or_insert(0) += 1;
    }
    Ok(EquivalenceReport {
        verdict,
        transitions: exec.transitions(),
        deductions: exec.deductions(),
        max_burst: exec.bursts().iter().copied().max().unwrap_or(0),
        histogram,
    })
}

/// Runs the interpreter from `c` for up to `budget` more steps.
fn continue_oracle(tm: &TuringMachine, c: &Configuration, budget: u64) -> Verdict {
    let mut c = c.clone();
    for _ in 0..budget {
        match tm::step(tm, &c) {
            tm::Step::Next(n) => c = n,
            tm::Step::Accept => return Verdict::Accepted,
            tm::Step::Reject => return Verdict::Rejected,
        }
    }
    oracle_verdict(tm, &c).unwrap_or(Verdict::BudgetExhausted)
}
