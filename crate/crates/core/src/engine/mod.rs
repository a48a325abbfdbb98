//! Subtyping deduction over a class table.
//!
//! Two rules drive every derivation. `Super` replaces the subtype side's
//! outermost class by the supertype declared for it; `Var` strips equal
//! outermost classes from both sides. Every parameter is contravariant, so
//! `Var` also swaps which side is the subtype.

mod cases;
mod verify;

use std::fmt;

use crate::encoding::{ClassTable, InheritanceRule, RuleId, SubtypeQuery, TypeAtom};
use crate::tm::{TuringMachine, Verdict};

pub use cases::{replay_case_traces, replay_mirrored_case_traces, CaseTrace, GoldenMismatch};
pub use verify::{verify_equivalence, verify_with_table, Divergence, DivergenceKind, EquivalenceReport};

/// Upper bound on deductions between consecutive canonical queries.
pub const REAL_TIME_BOUND: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeductionKind {
    Super(RuleId),
    Var,
    AcceptWildcard,
    RejectNoRule,
}

impl DeductionKind {
    /// `Super` and `Var` are deductions; the other two end the derivation.
    pub fn is_deduction(self) -> bool {
        matches!(self, DeductionKind::Super(_) | DeductionKind::Var)
    }

    pub fn annotation(self) -> String {
        match self {
            DeductionKind::Super(id) => format!("({})+(Super)", id.number),
            DeductionKind::Var => "(Var)".into(),
            DeductionKind::AcceptWildcard => "(accept: wildcard)".into(),
            DeductionKind::RejectNoRule => "(reject: no rule)".into(),
        }
    }
}

impl fmt::Display for DeductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.annotation())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionStep {
    pub kind: DeductionKind,
    pub query_before: SubtypeQuery,
    /// `None` for the two terminal kinds.
    pub query_after: Option<SubtypeQuery>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("both sides reduced to `{0:?}` without reaching a wildcard")]
    Grounded(TypeAtom),
}

enum Plan<'t> {
    Accept,
    Reject,
    Var,
    Super(&'t InheritanceRule),
}

fn plan<'t>(q: &SubtypeQuery, table: &'t ClassTable) -> Result<Plan<'t>, EngineError> {
    let (sub, sup) = (q.sub.head(), q.sup.head());
    if sub == TypeAtom::Wildcard || sup == TypeAtom::Wildcard {
        return Ok(Plan::Accept);
    }
    if sub == sup {
        if sub.is_terminator() {
            return Err(EngineError::Grounded(sub));
        }
        return Ok(Plan::Var);
    }
    Ok(match table.lookup(sub, sup) {
        Some(rule) => Plan::Super(rule),
        None => Plan::Reject,
    })
}

fn apply(q: &mut SubtypeQuery, plan: &Plan<'_>) -> DeductionKind {
    match plan {
        Plan::Accept => DeductionKind::AcceptWildcard,
        Plan::Reject => DeductionKind::RejectNoRule,
        Plan::Var => {
            q.sub.pop_head();
            q.sup.pop_head();
            std::mem::swap(&mut q.sub, &mut q.sup);
            q.orientation = q.orientation.flip();
            DeductionKind::Var
        }
        Plan::Super(rule) => {
            q.sub.substitute_head(&rule.body);
            DeductionKind::Super(rule.id)
        }
    }
}

/// Performs one derivation step on `q`.
///
/// Priority: a wildcard on either side accepts; equal heads strip (`Var`);
/// otherwise the unique rule deriving the subtype head from the supertype
/// head applies (`Super`); with no such rule the query is rejected.
pub fn deduce_step(q: &SubtypeQuery, table: &ClassTable) -> Result<DeductionStep, EngineError> {
    let p = plan(q, table)?;
    let mut after = q.clone();
    let kind = apply(&mut after, &p);
    Ok(DeductionStep {
        kind,
        query_before: q.clone(),
        query_after: kind.is_deduction().then_some(after),
    })
}

/// What one call to [`Execution::advance`] did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progress {
    /// A `Super` or `Var` step; `canonical` is set when it completed a
    /// simulated transition.
    Deduced { kind: DeductionKind, canonical: bool },
    Finished(Verdict),
}

/// A derivation in progress. Owns the query and mutates it in place.
pub struct Execution<'t> {
    table: &'t ClassTable,
    query: SubtypeQuery,
    deductions: u64,
    transitions: u64,
    burst: u32,
    bursts: Vec<u32>,
    verdict: Option<Verdict>,
}

impl<'t> Execution<'t> {
    pub fn new(query: SubtypeQuery, table: &'t ClassTable) -> Self {
        Execution { table, query, deductions: 0, transitions: 0, burst: 0, bursts: Vec::new(), verdict: None }
    }

    pub fn query(&self) -> &SubtypeQuery {
        &self.query
    }

    pub fn deductions(&self) -> u64 {
        self.deductions
    }

    pub fn transitions(&self) -> u64 {
        self.transitions
    }

    /// Deduction count of every completed transition, in order.
    pub fn bursts(&self) -> &[u32] {
        &self.bursts
    }

    /// Deductions since the last canonical query.
    pub fn open_burst(&self) -> u32 {
        self.burst
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.verdict
    }

    /// Takes one step unless that would be a deduction beyond
    /// `max_deductions`, in which case the run ends as budget-exhausted.
    pub fn advance(&mut self, max_deductions: u64) -> Result<Progress, EngineError> {
        if let Some(v) = self.verdict {
            return Ok(Progress::Finished(v));
        }
        let p = plan(&self.query, self.table)?;
        let finish = match p {
            Plan::Accept => Some(Verdict::Accepted),
            Plan::Reject => Some(Verdict::Rejected),
            _ if self.deductions >= max_deductions => Some(Verdict::BudgetExhausted),
            _ => None,
        };
        if let Some(v) = finish {
            self.verdict = Some(v);
            return Ok(Progress::Finished(v));
        }
        let kind = apply(&mut self.query, &p);
        self.deductions += 1;
        self.burst += 1;
        let canonical = self.query.canonical_direction().is_some();
        if canonical {
            self.transitions += 1;
            self.bursts.push(self.burst);
            self.burst = 0;
        }
        Ok(Progress::Deduced { kind, canonical })
    }

    pub fn into_query(self) -> SubtypeQuery {
        self.query
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryResult {
    pub verdict: Verdict,
    /// `Super` plus `Var` applications.
    pub deductions: u64,
    /// Simulated TM transitions (canonical queries reached after the start).
    pub transitions: u64,
    /// Deductions per simulated transition.
    pub bursts: Vec<u32>,
    /// Deductions after the last canonical query (the accept burst, say).
    pub tail: u32,
    pub final_query: SubtypeQuery,
    pub trace: Option<Vec<DeductionStep>>,
}

impl QueryResult {
    pub fn max_burst(&self) -> u32 {
        self.bursts.iter().copied().max().unwrap_or(0)
    }
}

pub fn run_query(
    q: &SubtypeQuery,
    table: &ClassTable,
    max_deductions: u64,
    record_trace: bool,
) -> Result<QueryResult, EngineError> {
    let mut exec = Execution::new(q.clone(), table);
    let mut trace = record_trace.then(Vec::new);
    let verdict = loop {
        let before = trace.as_ref().map(|_| exec.query().clone());
        match exec.advance(max_deductions)? {
            Progress::Deduced { kind, .. } => {
                if let (Some(t), Some(before)) = (trace.as_mut(), before) {
                    t.push(DeductionStep { kind, query_before: before, query_after: Some(exec.query().clone()) });
                }
            }
            Progress::Finished(v) => {
                if let (Some(t), Some(before)) = (trace.as_mut(), before) {
                    let kind = match v {
                        Verdict::Accepted => Some(DeductionKind::AcceptWildcard),
                        Verdict::Rejected => Some(DeductionKind::RejectNoRule),
                        Verdict::BudgetExhausted => None,
                    };
                    if let Some(kind) = kind {
                        t.push(DeductionStep { kind, query_before: before, query_after: None });
                    }
                }
                break v;
            }
        }
    };
    Ok(QueryResult {
        verdict,
        deductions: exec.deductions(),
        transitions: exec.transitions(),
        bursts: exec.bursts().to_vec(),
        tail: exec.open_burst(),
        trace,
        final_query: exec.into_query(),
    })
}

/// One line per deduction, preceded by the starting query:
/// `<left word> <⊏|⊐> <right word>   <annotation>`.
pub fn render_trace(start: &SubtypeQuery, steps: &[DeductionStep], tm: &TuringMachine) -> String {
    let mut out = format!("{}\n", start.render(tm));
    for step in steps {
        let q = step.query_after.as_ref().unwrap_or(&step.query_before);
        out.push_str(&format!("{}   {}\n", q.render(tm), step.kind.annotation()));
    }
    out
}

/// Pairs each line of a derivation listing with its query, folding runs
/// of `Var` into one `(Var)×k` line. The first entry is the start query.
pub fn group_trace(start: &SubtypeQuery, steps: &[DeductionStep]) -> Vec<(String, SubtypeQuery)> {
    let mut lines = vec![(String::new(), start.clone())];
    let mut i = 0;
    while i < steps.len() {
        let step = &steps[i];
        if step.kind == DeductionKind::Var {
            let run = steps[i..].iter().take_while(|s| s.kind == DeductionKind::Var).count();
            let last = steps[i + run - 1].query_after.clone().expect("Var has a result");
            let label = if run == 1 { "(Var)".to_string() } else { format!("(Var)×{run}") };
            lines.push((label, last));
            i += run;
        } else {
            let q = step.query_after.clone().unwrap_or_else(|| step.query_before.clone());
            lines.push((step.kind.annotation(), q));
            i += 1;
        }
    }
    lines
}
