use std::collections::BTreeMap;
use std::fmt;

use super::BLANK_TOKEN;

/// Index of a tape symbol in a machine's alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

/// Index of a control state in a machine's state list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

/// Contents of a single tape cell.
///
/// Ordered with `Sym` before `Blank` so that listings put the blank last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Sym(Symbol),
    Blank,
}

impl Cell {
    pub fn symbol(self) -> Option<Symbol> {
        match self {
            Cell::Sym(s) => Some(s),
            Cell::Blank => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn flip(self) -> Move {
        match self {
            Move::Left => Move::Right,
            Move::Right => Move::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Right => 'R',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next_state: StateId,
    /// Machines never write the blank.
    pub write: Symbol,
    pub movement: Move,
}

/// A deterministic single-tape machine that accepts by reaching `halt` and
/// rejects when the transition function is undefined.
///
/// Construct through [`TuringMachine::new`] or [`parse_tm`](super::parse_tm);
/// both validate every structural invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: StateId,
    halt: StateId,
    delta: BTreeMap<(StateId, Cell), Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MachineError {
    #[error("invalid identifier `{0}`")]
    BadIdentifier(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("`_` is reserved for the blank and cannot be a symbol")]
    ReservedBlank,
    #[error("unknown state index {0}")]
    UnknownState(u32),
    #[error("unknown symbol index {0}")]
    UnknownSymbol(u32),
    #[error("transition from halt state `{0}`")]
    TransitionFromHalt(String),
}

pub(crate) fn is_identifier(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl TuringMachine {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        initial: StateId,
        halt: StateId,
        delta: BTreeMap<(StateId, Cell), Transition>,
    ) -> Result<Self, MachineError> {
        for (i, s) in states.iter().enumerate() {
            if !is_identifier(s) {
                return Err(MachineError::BadIdentifier(s.clone()));
            }
            if states[..i].contains(s) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a == BLANK_TOKEN {
                return Err(MachineError::ReservedBlank);
            }
            if !is_identifier(a) {
                return Err(MachineError::BadIdentifier(a.clone()));
            }
            if alphabet[..i].contains(a) {
                return Err(MachineError::DuplicateSymbol(a.clone()));
            }
        }
        let state_ok = |s: StateId| (s.0 as usize) < states.len();
        let symbol_ok = |a: Symbol| (a.0 as usize) < alphabet.len();
        for s in [initial, halt] {
            if !state_ok(s) {
                return Err(MachineError::UnknownState(s.0));
            }
        }
        for (&(from, read), t) in &delta {
            if !state_ok(from) {
                return Err(MachineError::UnknownState(from.0));
            }
            if !state_ok(t.next_state) {
                return Err(MachineError::UnknownState(t.next_state.0));
            }
            if let Cell::Sym(a) = read {
                if !symbol_ok(a) {
                    return Err(MachineError::UnknownSymbol(a.0));
                }
            }
            if !symbol_ok(t.write) {
                return Err(MachineError::UnknownSymbol(t.write.0));
            }
            if from == halt {
                return Err(MachineError::TransitionFromHalt(
                    states[halt.0 as usize].clone(),
                ));
            }
        }
        Ok(TuringMachine { states, alphabet, initial, halt, delta })
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn halt(&self) -> StateId {
        self.halt
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = StateId> {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = Symbol> {
        (0..self.alphabet.len() as u32).map(Symbol)
    }

    /// All symbols followed by the blank.
    pub fn cells(&self) -> impl Iterator<Item = Cell> {
        self.symbols().map(Cell::Sym).chain(std::iter::once(Cell::Blank))
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0 as usize]
    }

    pub fn symbol_name(&self, a: Symbol) -> &str {
        &self.alphabet[a.0 as usize]
    }

    pub fn cell_name(&self, c: Cell) -> &str {
        match c {
            Cell::Sym(a) => self.symbol_name(a),
            Cell::Blank => BLANK_TOKEN,
        }
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(|i| StateId(i as u32))
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.alphabet.iter().position(|s| s == name).map(|i| Symbol(i as u32))
    }

    pub fn transition(&self, state: StateId, read: Cell) -> Option<&Transition> {
        self.delta.get(&(state, read))
    }

    pub fn transitions(&self) -> impl ExactSizeIterator<Item = (StateId, Cell, &Transition)> {
        self.delta.iter().map(|(&(s, c), t)| (s, c, t))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.len()
    }

    /// Parses a word written either as space-separated tokens or, when every
    /// symbol is a single character, as a packed string such as `abba`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>, String> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains(char::is_whitespace) {
            text.split_whitespace().collect()
        } else if self.alphabet.iter().all(|a| a.chars().count() == 1) {
            text.char_indices()
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        } else if text.is_empty() {
            Vec::new()
        } else {
            vec![text]
        };
        tokens
            .into_iter()
            .map(|t| self.symbol(t).ok_or_else(|| format!("unknown symbol `{t}` in word")))
            .collect()
    }

    /// Renders a word the way [`parse_word`](Self::parse_word) reads it back.
    pub fn format_word(&self, word: &[Symbol]) -> String {
        let packed = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let names = word.iter().map(|&a| self.symbol_name(a));
        if packed {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }

    /// Serializes back to the `.tm` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("states: {}\n", self.states.join(" ")));
        out.push_str(&format!("alphabet: {}\n", self.alphabet.join(" ")));
        out.push_str(&format!("initial: {}\n", self.state_name(self.initial)));
        out.push_str(&format!("halt: {}\n", self.state_name(self.halt)));
        out.push_str("delta:\n");
        for (s, c, t) in self.transitions() {
            out.push_str(&format!(
                "  {} {} -> {} {} {}\n",
                self.state_name(s),
                self.cell_name(c),
                self.state_name(t.next_state),
                self.symbol_name(t.write),
                t.movement.letter()
            ));
        }
        out
    }
}

impl fmt::Display for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} states, {} symbols, {} transitions",
            self.state_count(),
            self.symbol_count(),
            self.transition_count()
        )
    }
}
