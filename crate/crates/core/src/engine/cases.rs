//! Replays of the four transition shapes against stored golden listings.
//!
//! Each listing line gives the annotation, the tail of the left word, the
//! relation and the head of the right word; the elided context must match by
//! suffix and prefix. Tokens use `s`/`t` for the source and target state and
//! `a`/`b` for the read and written symbol.

use crate::encoding::{ClassTable, Orientation, RuleOrigin, StateTag, SubtypeQuery, TypeAtom, TypeTerm};
use crate::tm::{Cell, Move, StateId, Symbol};

use super::{group_trace, DeductionStep};

struct Golden {
    case: u8,
    deductions: u32,
    lines: &'static [(&'static str, &'static str, char, &'static str)],
}

const GOLDEN: [Golden; 4] = [
    Golden {
        case: 1,
        deductions: 3,
        lines: &[
            ("", "N La", '⊐', "Qs_L"),
            ("(1)+(Super)", "N La", '⊐', "La N Qt_L Lb N"),
            ("(Var)×2", "", '⊐', "Qt_L Lb N"),
        ],
    },
    Golden {
        case: 2,
        deductions: 8,
        lines: &[
            ("", "N La", '⊐', "Qs_L"),
            ("(2)+(Super)", "N La", '⊐', "La Qt_LRR N Lb N"),
            ("(Var)", "N", '⊏', "Qt_LRR N Lb N"),
            ("(6)+(Super)", "Qt_RR N Qt_LRR", '⊏', "Qt_LRR N Lb N"),
            ("(Var)×2", "Qt_RR", '⊏', "Lb N"),
            ("(5)+(Super)", "N Lb Qt_R N Lb", '⊏', "Lb N"),
            ("(Var)×2", "N Lb Qt_R", '⊏', ""),
        ],
    },
    Golden {
        case: 3,
        deductions: 7,
        lines: &[
            ("", "Z N L#", '⊐', "Qs_L"),
            ("(3)+(Super)", "Z N L#", '⊐', "L# Qt_LBL N Lb N"),
            ("(Var)", "Z N", '⊏', "Qt_LBL N Lb N"),
            ("(7)+(Super)", "Z N L# N Qt_RL Qt_LBL", '⊏', "Qt_LBL N Lb N"),
            ("(Var)", "Z N L# N Qt_RL", '⊐', "N Lb N"),
            ("(9)+(Super)", "Z N L# N Qt_RL", '⊐', "Qt_RL N Qt_L Lb N"),
            ("(Var)×2", "Z N L#", '⊐', "Qt_L Lb N"),
        ],
    },
    Golden {
        case: 4,
        deductions: 8,
        lines: &[
            ("", "Z N L#", '⊐', "Qs_L"),
            ("(4)+(Super)", "Z N L#", '⊐', "L# Qt_LBR N Lb N"),
            ("(Var)", "Z N", '⊏', "Qt_LBR N Lb N"),
            ("(8)+(Super)", "Z N L# Qt_RR N Qt_LBR", '⊏', "Qt_LBR N Lb N"),
            ("(Var)×2", "Z N L# Qt_RR", '⊏', "Lb N"),
            ("(5)+(Super)", "Z N L# N Lb Qt_R N Lb", '⊏', "Lb N"),
            ("(Var)×2", "Z N L# N Lb Qt_R", '⊏', ""),
        ],
    },
];

/// One replayed transition burst.
#[derive(Clone, Debug)]
pub struct CaseTrace {
    pub case: u8,
    pub mirrored: bool,
    pub deductions: u32,
    pub start: SubtypeQuery,
    pub steps: Vec<DeductionStep>,
    /// Listing: `<left> <rel> <right>   <annotation>`.
    pub listing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GoldenMismatch {
    #[error("case {case}: the table has no rule {case} instance to replay")]
    MissingRule { case: u8 },
    #[error("case {case}: expected {expected} deductions, replay took {actual}")]
    Count { case: u8, expected: u32, actual: u32 },
    #[error("case {case}, line {line}: expected `{expected}`, got `{actual}`")]
    Line { case: u8, line: usize, expected: String, actual: String },
    #[error("case {case}: replay did not return to a canonical query")]
    NotCanonical { case: u8 },
}

struct Instance {
    source: StateId,
    target: StateId,
    read: Cell,
    write: Symbol,
}

fn find_instance(table: &ClassTable, case: u8, mirrored: bool) -> Option<Instance> {
    let tm = table.machine();
    table.rules().iter().find_map(|r| match r.origin {
        RuleOrigin::Transition(s, read) if r.id.number == case && r.id.mirrored == mirrored => {
            let t = tm.transition(s, read)?;
            Some(Instance { source: s, target: t.next_state, read, write: t.write })
        }
        _ => None,
    })
}

/// A golden token rendered for a concrete instance. Mirroring swaps the
/// direction letters in every state tag.
fn token(tok: &str, inst: &Instance, table: &ClassTable, mirrored: bool) -> String {
    let tm = table.machine();
    let atom = match tok {
        "N" => TypeAtom::N,
        "Z" => TypeAtom::Z,
        "L#" => TypeAtom::L(Cell::Blank),
        "La" => TypeAtom::L(inst.read),
        "Lb" => TypeAtom::L(Cell::Sym(inst.write)),
        _ => {
            let (state, tag) = tok.split_once('_').expect("state token");
            let s = if state == "Qs" { inst.source } else { inst.target };
            let tag = StateTag::parse(tag).expect("golden tag");
            TypeAtom::Q(s, if mirrored { tag.mirror() } else { tag })
        }
    };
    crate::encoding::mangle(atom, tm)
}

fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn start_query(inst: &Instance, mirrored: bool) -> SubtypeQuery {
    let facing = if mirrored { Move::Right } else { Move::Left };
    let mut sup = Vec::new();
    if let Cell::Sym(_) = inst.read {
        sup.extend([TypeAtom::L(inst.read), TypeAtom::N]);
    }
    sup.extend([TypeAtom::L(Cell::Blank), TypeAtom::N, TypeAtom::Z]);
    let sub = vec![TypeAtom::Q(inst.source, StateTag::of(facing)), TypeAtom::L(Cell::Blank), TypeAtom::N, TypeAtom::Z];
    let orientation = if mirrored { Orientation::SubLeft } else { Orientation::SupLeft };
    SubtypeQuery::new(TypeTerm::new(sub).unwrap(), TypeTerm::new(sup).unwrap(), orientation).unwrap()
}

fn replay(table: &ClassTable, golden: &Golden, mirrored: bool) -> Result<CaseTrace, GoldenMismatch> {
    let case = golden.case;
    let inst = find_instance(table, case, mirrored).ok_or(GoldenMismatch::MissingRule { case })?;
    let tm = table.machine();
    let start = start_query(&inst, mirrored);

    // Run exactly one burst: stop at the first canonical query.
    let mut exec = super::Execution::new(start.clone(), table);
    let mut steps = Vec::new();
    loop {
        let before = exec.query().clone();
        match exec.advance(u64::from(super::REAL_TIME_BOUND) * 4) {
            Ok(super::Progress::Deduced { kind, canonical }) => {
                steps.push(DeductionStep { kind, query_before: before, query_after: Some(exec.query().clone()) });
                if canonical {
                    break;
                }
            }
            _ => return Err(GoldenMismatch::NotCanonical { case }),
        }
    }
    let actual = steps.len() as u32;
    if actual != golden.deductions {
        return Err(GoldenMismatch::Count { case, expected: golden.deductions, actual });
    }

    let grouped = group_trace(&start, &steps);
    let mut listing = Vec::with_capacity(grouped.len());
    for (i, (label, q)) in grouped.iter().enumerate() {
        let (left, rel, right) = q.render_parts(tm);
        listing.push(format!("{left} {rel} {right}   {label}").trim_end().to_string());
        let Some(&(g_label, g_left, g_rel, g_right)) = golden.lines.get(i) else {
            return Err(GoldenMismatch::Line { case, line: i, expected: "<end>".into(), actual: listing[i].clone() });
        };
        let mut g_left: Vec<String> = words(g_left).iter().map(|t| token(t, &inst, table, mirrored)).collect();
        let mut g_right: Vec<String> = words(g_right).iter().map(|t| token(t, &inst, table, mirrored)).collect();
        let mut g_rel = g_rel;
        if mirrored {
            // the mirror image of a listing reads right to left
            std::mem::swap(&mut g_left, &mut g_right);
            g_left.reverse();
            g_right.reverse();
            g_rel = if g_rel == '⊏' { '⊐' } else { '⊏' };
        }
        let (lw, rw) = (words(&left), words(&right));
        let ok = *label == g_label
            && rel == g_rel
            && lw.len() >= g_left.len()
            && rw.len() >= g_right.len()
            && lw[lw.len() - g_left.len()..].iter().zip(&g_left).all(|(a, b)| a == b)
            && rw[..g_right.len()].iter().zip(&g_right).all(|(a, b)| a == b);
        if !ok {
            let expected = format!("⋯ {} {} {} ⋯   {}", g_left.join(" "), g_rel, g_right.join(" "), g_label);
            return Err(GoldenMismatch::Line { case, line: i, expected, actual: listing[i].clone() });
        }
    }
    if grouped.len() != golden.lines.len() {
        return Err(GoldenMismatch::Line {
            case,
            line: grouped.len(),
            expected: golden.lines.len().to_string() + " lines",
            actual: grouped.len().to_string() + " lines",
        });
    }
    Ok(CaseTrace { case, mirrored, deductions: actual, start, steps, listing })
}

/// Replays the four left-oriented transition shapes (rules 1-4) found in
/// `table` and checks each burst against its golden listing.
pub fn replay_case_traces(table: &ClassTable) -> Result<Vec<CaseTrace>, GoldenMismatch> {
    GOLDEN.iter().map(|g| replay(table, g, false)).collect()
}

/// The same four replays for the mirrored rules, checked against the mirror
/// image of each golden listing.
pub fn replay_mirrored_case_traces(table: &ClassTable) -> Result<Vec<CaseTrace>, GoldenMismatch> {
    GOLDEN.iter().map(|g| replay(table, g, true)).collect()
}
