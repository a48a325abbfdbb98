use std::collections::HashMap;
use std::fmt;

use super::{mangle, StateTag, TypeAtom, TypeTerm};
use crate::tm::{Cell, Move, StateId, TuringMachine};

/// Which row of the encoding a rule instantiates, and whether it is the
/// left-oriented original or its L/R mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId {
    pub number: u8,
    pub mirrored: bool,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirrored {
            write!(f, "{}'", self.number)
        } else {
            write!(f, "{}", self.number)
        }
    }
}

/// The machine element a rule was instantiated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleOrigin {
    /// Rules 1-4: the transition defined at `(state, read)`.
    Transition(StateId, Cell),
    /// Rule 5.
    Pass(StateId, Cell),
    /// Rules 6-9.
    Turn(StateId),
    /// Rule 10: accepting on `read` in the halt state.
    Accept(Cell),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InheritanceRule {
    pub id: RuleId,
    pub origin: RuleOrigin,
    /// The declared class: always `N` or a state type.
    pub head: TypeAtom,
    /// The supertype, with `Param` standing for the head's argument.
    pub body: TypeTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("internal error: rules {first} and {second} both derive {head} from {body_head}")]
    Collision { first: RuleId, second: RuleId, head: String, body_head: String },
}

/// All inheritance rules for one machine, indexed by
/// `(declared class, outermost class of the supertype)`.
#[derive(Clone, Debug)]
pub struct ClassTable {
    machine: TuringMachine,
    rules: Vec<InheritanceRule>,
    index: HashMap<(TypeAtom, TypeAtom), usize>,
}

impl PartialEq for ClassTable {
    fn eq(&self, other: &Self) -> bool {
        self.machine == other.machine && self.rules == other.rules
    }
}

impl ClassTable {
    /// Builds a table from an explicit rule list. Used for fault injection
    /// and by round-trip tests; [`build_class_table`] is the normal route.
    pub fn from_rules(machine: TuringMachine, rules: Vec<InheritanceRule>) -> Result<Self, TableError> {
        let mut index = HashMap::with_capacity(rules.len());
        for (i, r) in rules.iter().enumerate() {
            let key = (r.head, r.body.head());
            if let Some(&j) = index.get(&key) {
                let first: &InheritanceRule = &rules[j];
                return Err(TableError::Collision {
                    first: first.id,
                    second: r.id,
                    head: mangle(r.head, &machine),
                    body_head: mangle(r.body.head(), &machine),
                });
            }
            index.insert(key, i);
        }
        Ok(ClassTable { machine, rules, index })
    }

    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn rules(&self) -> &[InheritanceRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The rule deriving `head` from a supertype whose outermost class is
    /// `body_head`.
    pub fn lookup(&self, head: TypeAtom, body_head: TypeAtom) -> Option<&InheritanceRule> {
        self.index.get(&(head, body_head)).map(|&i| &self.rules[i])
    }

    pub fn into_parts(self) -> (TuringMachine, Vec<InheritanceRule>) {
        (self.machine, self.rules)
    }

    /// One line per rule, e.g.
    /// `Q_q0_L[x] : L_a N Q_q1_L L_b N x   # rule 1, delta(q0,a)`.
    pub fn dump(&self) -> String {
        let tm = &self.machine;
        let mut out = String::new();
        for r in &self.rules {
            let body: Vec<String> = r
                .body
                .atoms()
                .map(|a| match a {
                    TypeAtom::Param => "x".to_string(),
                    TypeAtom::Wildcard => "?".to_string(),
                    a => mangle(a, tm),
                })
                .collect();
            let mirror = if r.id.mirrored { " (mirror)" } else { "" };
            let what = match r.origin {
                RuleOrigin::Transition(s, c) => format!("delta({},{})", tm.state_name(s), tm.cell_name(c)),
                RuleOrigin::Pass(s, c) => format!("state {} symbol {}", tm.state_name(s), tm.cell_name(c)),
                RuleOrigin::Turn(s) => format!("state {}", tm.state_name(s)),
                RuleOrigin::Accept(c) => format!("accept on {}", tm.cell_name(c)),
            };
            out.push_str(&format!(
                "{}[x] : {}   # rule {}{}, {}\n",
                mangle(r.head, tm),
                body.join(" "),
                r.id.number,
                mirror,
                what
            ));
        }
        out
    }
}

/// Shorthand for building rule bodies: `F`/`O` are the rule's own direction
/// and its opposite, so the same spelling yields the original rule (F = L)
/// and its mirror (F = R).
fn tag(forward: Move, pattern: &str) -> StateTag {
    let letters: String = pattern
        .chars()
        .map(|c| match c {
            'F' => forward.letter(),
            'O' => forward.flip().letter(),
            c => c,
        })
        .collect();
    StateTag::parse(&letters).expect("pattern names a valid tag")
}

fn term(atoms: Vec<TypeAtom>) -> TypeTerm {
    TypeTerm::new(atoms).expect("rule bodies are well formed")
}

pub fn build_class_table(tm: &TuringMachine) -> Result<ClassTable, TableError> {
    use TypeAtom::{Param, Wildcard, L, N, Q};
    const BLANK: TypeAtom = L(Cell::Blank);

    let mut rules = Vec::with_capacity(
        2 * tm.transition_count() + 2 * tm.state_count() * tm.symbol_count() + 8 * tm.state_count() + 2 * (tm.symbol_count() + 1),
    );
    let orientations = [(Move::Left, false), (Move::Right, true)];

    for number in 1..=4u8 {
        for (forward, mirrored) in orientations {
            for (s, read, t) in tm.transitions() {
                let (next, b) = (t.next_state, L(Cell::Sym(t.write)));
                let same_way = t.movement == forward;
                let body = match (number, read, same_way) {
                    (1, Cell::Sym(_), true) => vec![L(read), N, Q(next, tag(forward, "F")), b, N, Param],
                    (2, Cell::Sym(_), false) => vec![L(read), Q(next, tag(forward, "FOO")), N, b, N, Param],
                    (3, Cell::Blank, true) => vec![BLANK, Q(next, tag(forward, "FBF")), N, b, N, Param],
                    (4, Cell::Blank, false) => vec![BLANK, Q(next, tag(forward, "FBO")), N, b, N, Param],
                    _ => continue,
                };
                rules.push(InheritanceRule {
                    id: RuleId { number, mirrored },
                    origin: RuleOrigin::Transition(s, read),
                    head: Q(s, tag(forward, "F")),
                    body: term(body),
                });
            }
        }
    }

    for (forward, mirrored) in orientations {
        for s in tm.states() {
            for a in tm.symbols().map(Cell::Sym) {
                rules.push(InheritanceRule {
                    id: RuleId { number: 5, mirrored },
                    origin: RuleOrigin::Pass(s, a),
                    head: Q(s, tag(forward, "FF")),
                    body: term(vec![L(a), N, Q(s, tag(forward, "F")), L(a), N, Param]),
                });
            }
        }
    }

    for number in 6..=9u8 {
        for (forward, mirrored) in orientations {
            for s in tm.states() {
                let q = |pattern| Q(s, tag(forward, pattern));
                let body = match number {
                    6 => vec![q("FOO"), N, q("OO"), Param],
                    7 => vec![q("FBF"), q("OF"), N, BLANK, N, Param],
                    8 => vec![q("FBO"), N, q("OO"), BLANK, N, Param],
                    _ => vec![q("FO"), N, q("O"), Param],
                };
                rules.push(InheritanceRule {
                    id: RuleId { number, mirrored },
                    origin: RuleOrigin::Turn(s),
                    head: N,
                    body: term(body),
                });
            }
        }
    }

    for (forward, mirrored) in orientations {
        for a in tm.cells() {
            rules.push(InheritanceRule {
                id: RuleId { number: 10, mirrored },
                origin: RuleOrigin::Accept(a),
                head: Q(tm.halt(), tag(forward, "F")),
                body: term(vec![L(a), N, Wildcard]),
            });
        }
    }

    ClassTable::from_rules(tm.clone(), rules)
}
