//! Types of the subtyping machine and the compiler from Turing machines.
//!
//! A generic type `A<B<C>>` is written as the word `A B C` (outermost first).
//! Every class takes a single contravariant parameter except `Z`, which
//! grounds every word. A query `sub <: sup` is presented the way it is read
//! in listings: the left word is printed innermost-first so that the two atoms
//! under scrutiny sit next to the relation symbol.

mod query;
mod table;

use std::fmt;

use crate::tm::{Cell, Move, StateId, TuringMachine};

pub use query::{decode_query, encode_configuration, initial_query, DecodeError};
pub use table::{build_class_table, ClassTable, InheritanceRule, RuleId, RuleOrigin, TableError};

/// Direction superscript of a state type. `B` stands for a blank cell in
/// the middle of a turn, so `LBR` is "left onto a blank, then rotate".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateTag {
    L,
    R,
    LL,
    RR,
    LR,
    RL,
    LRR,
    RLL,
    LBL,
    LBR,
    RBR,
    RBL,
}

impl StateTag {
    pub const ALL: [StateTag; 12] = [
        StateTag::L,
        StateTag::R,
        StateTag::LL,
        StateTag::RR,
        StateTag::LR,
        StateTag::RL,
        StateTag::LRR,
        StateTag::RLL,
        StateTag::LBL,
        StateTag::LBR,
        StateTag::RBR,
        StateTag::RBL,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StateTag::L => "L",
            StateTag::R => "R",
            StateTag::LL => "LL",
            StateTag::RR => "RR",
            StateTag::LR => "LR",
            StateTag::RL => "RL",
            StateTag::LRR => "LRR",
            StateTag::RLL => "RLL",
            StateTag::LBL => "LBL",
            StateTag::LBR => "LBR",
            StateTag::RBR => "RBR",
            StateTag::RBL => "RBL",
        }
    }

    pub fn parse(s: &str) -> Option<StateTag> {
        StateTag::ALL.into_iter().find(|t| t.as_str() == s)
    }

    /// Swaps `L` and `R`.
    pub fn mirror(self) -> StateTag {
        let swapped: String = self
            .as_str()
            .chars()
            .map(|c| match c {
                'L' => 'R',
                'R' => 'L',
                c => c,
            })
            .collect();
        StateTag::parse(&swapped).expect("tag set is closed under mirroring")
    }

    /// The single-direction tags mark canonical queries.
    pub fn direction(self) -> Option<Move> {
        match self {
            StateTag::L => Some(Move::Left),
            StateTag::R => Some(Move::Right),
            _ => None,
        }
    }

    pub fn of(direction: Move) -> StateTag {
        match direction {
            Move::Left => StateTag::L,
            Move::Right => StateTag::R,
        }
    }
}

impl fmt::Display for StateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One class application in a type word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeAtom {
    /// Ground type; has no parameters and no supertypes.
    Z,
    /// Buffer between tape cells.
    N,
    /// A tape cell; `L(Cell::Blank)` is the blank-end marker.
    L(Cell),
    /// A control state together with its direction superscript.
    Q(StateId, StateTag),
    /// `Any`: consistent with every type.
    Wildcard,
    /// The class parameter inside a rule body.
    Param,
}

impl TypeAtom {
    pub fn is_terminator(self) -> bool {
        matches!(self, TypeAtom::Z | TypeAtom::Wildcard | TypeAtom::Param)
    }
}

/// Identifier used for `atom` in generated code and traces.
///
/// Injective for a single machine unless it has a symbol literally named
/// `blank`; [`emit_program`](crate::codegen::emit_program) reports that case.
pub fn mangle(atom: TypeAtom, tm: &TuringMachine) -> String {
    match atom {
        TypeAtom::Z => "Z".into(),
        TypeAtom::N => "N".into(),
        TypeAtom::Wildcard => "Any".into(),
        TypeAtom::Param => "X".into(),
        TypeAtom::L(Cell::Blank) => "L_blank".into(),
        TypeAtom::L(Cell::Sym(a)) => format!("L_{}", tm.symbol_name(a)),
        TypeAtom::Q(s, tag) => format!("Q_{}_{}", tm.state_name(s), tag),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("empty type term")]
    Empty,
    #[error("type term does not end in Z, Any or a parameter")]
    MissingTerminator,
    #[error("terminator at position {0} is not the last atom")]
    EmbeddedTerminator(usize),
    #[error("rule parameter inside a query")]
    ParamInQuery,
}

/// A non-empty word of atoms ending in exactly one terminator.
///
/// Stored innermost-first so that rewriting the outermost atom is O(1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeTerm {
    rev: Vec<TypeAtom>,
}

impl TypeTerm {
    pub fn new(outermost_first: Vec<TypeAtom>) -> Result<Self, TermError> {
        let (last, rest) = outermost_first.split_last().ok_or(TermError::Empty)?;
        if !last.is_terminator() {
            return Err(TermError::MissingTerminator);
        }
        if let Some(i) = rest.iter().position(|a| a.is_terminator()) {
            return Err(TermError::EmbeddedTerminator(i));
        }
        let mut rev = outermost_first;
        rev.reverse();
        Ok(TypeTerm { rev })
    }

    pub fn head(&self) -> TypeAtom {
        *self.rev.last().expect("terms are never empty")
    }

    pub fn terminator(&self) -> TypeAtom {
        self.rev[0]
    }

    pub fn len(&self) -> usize {
        self.rev.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Atoms from the outermost class inwards.
    pub fn atoms(&self) -> impl DoubleEndedIterator<Item = TypeAtom> + ExactSizeIterator + '_ {
        self.rev.iter().rev().copied()
    }

    pub fn to_vec(&self) -> Vec<TypeAtom> {
        self.atoms().collect()
    }

    pub fn contains(&self, atom: TypeAtom) -> bool {
        self.rev.contains(&atom)
    }

    /// Renders the term outermost-first (`reversed == false`) or
    /// innermost-first, as space-separated mangled names.
    pub fn render(&self, tm: &TuringMachine, reversed: bool) -> String {
        let names: Vec<String> = if reversed {
            self.rev.iter().map(|&a| mangle(a, tm)).collect()
        } else {
            self.atoms().map(|a| mangle(a, tm)).collect()
        };
        names.join(" ")
    }

    pub(crate) fn pop_head(&mut self) -> TypeAtom {
        debug_assert!(self.rev.len() > 1, "terminator cannot be stripped");
        self.rev.pop().expect("terms are never empty")
    }

    /// Replaces the outermost atom by `body`, whose parameter stands for the
    /// remainder of this term. A body ending in `Any` discards the remainder.
    pub(crate) fn substitute_head(&mut self, body: &TypeTerm) {
        match body.terminator() {
            TypeAtom::Param => {
                self.rev.pop();
                self.rev.extend_from_slice(&body.rev[1..]);
            }
            _ => self.rev.clone_from(&body.rev),
        }
    }
}

impl fmt::Debug for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms()).finish()
    }
}

/// How a query is laid out when printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `reverse(sub) ⊏ sup`
    SubLeft,
    /// `reverse(sup) ⊐ sub`
    SupLeft,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::SubLeft => Orientation::SupLeft,
            Orientation::SupLeft => Orientation::SubLeft,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::SubLeft => '⊏',
            Orientation::SupLeft => '⊐',
        }
    }
}

/// The obligation `sub <: sup`.
///
/// `orientation` only affects presentation; contravariant stripping swaps
/// which term is the subtype while each word keeps its side of the page.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubtypeQuery {
    pub(crate) sub: TypeTerm,
    pub(crate) sup: TypeTerm,
    pub(crate) orientation: Orientation,
}

impl SubtypeQuery {
    pub fn new(sub: TypeTerm, sup: TypeTerm, orientation: Orientation) -> Result<Self, TermError> {
        if sub.contains(TypeAtom::Param) || sup.contains(TypeAtom::Param) {
            return Err(TermError::ParamInQuery);
        }
        Ok(SubtypeQuery { sub, sup, orientation })
    }

    pub fn sub(&self) -> &TypeTerm {
        &self.sub
    }

    pub fn sup(&self) -> &TypeTerm {
        &self.sup
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `Some(direction)` when the subtype side is headed by a state type
    /// with a single-direction tag; a TM configuration is readable there.
    pub fn canonical_direction(&self) -> Option<Move> {
        match self.sub.head() {
            TypeAtom::Q(_, tag) => tag.direction(),
            _ => None,
        }
    }

    /// `(left word, relation, right word)` as printed.
    pub fn render_parts(&self, tm: &TuringMachine) -> (String, char, String) {
        let (left, right) = match self.orientation {
            Orientation::SubLeft => (&self.sub, &self.sup),
            Orientation::SupLeft => (&self.sup, &self.sub),
        };
        (left.render(tm, true), self.orientation.symbol(), right.render(tm, false))
    }

    pub fn render(&self, tm: &TuringMachine) -> String {
        let (l, rel, r) = self.render_parts(tm);
        format!("{l} {rel} {r}")
    }
}
