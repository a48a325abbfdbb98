//! Reader for the line-oriented `.tm` format:
//!
//! ```text
//! states: q0 q1 qh
//! alphabet: a b
//! initial: q0
//! halt: qh
//! delta:
//!   q0 a -> q1 b L
//!   q0 _ -> qh a R
//! ```
//!
//! `#` starts a comment. `_` is the blank and may only be read, never written.

use std::collections::BTreeMap;

use super::machine::{is_identifier, MachineError};
use super::{Cell, Move, StateId, Symbol, Transition, TuringMachine, BLANK_TOKEN};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: missing `{section}:` section")]
    MissingSection { line: usize, section: &'static str },
    #[error("line {line}: duplicate state `{name}`")]
    DuplicateState { line: usize, name: String },
    #[error("line {line}: duplicate symbol `{name}`")]
    DuplicateSymbol { line: usize, name: String },
    #[error("line {line}: unknown state `{name}`")]
    UnknownState { line: usize, name: String },
    #[error("line {line}: unknown symbol `{name}`")]
    UnknownSymbol { line: usize, name: String },
    #[error("line {line}: transition from halt state `{name}`")]
    TransitionFromHalt { line: usize, name: String },
    #[error("line {line}: transition writes the blank `_`")]
    WritesBlank { line: usize },
    #[error("line {line}: second transition for ({state}, {read})")]
    Nondeterministic { line: usize, state: String, read: String },
    #[error("invalid machine: {0}")]
    Machine(#[from] MachineError),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::MissingSection { line, .. }
            | ParseError::DuplicateState { line, .. }
            | ParseError::DuplicateSymbol { line, .. }
            | ParseError::UnknownState { line, .. }
            | ParseError::UnknownSymbol { line, .. }
            | ParseError::TransitionFromHalt { line, .. }
            | ParseError::WritesBlank { line }
            | ParseError::Nondeterministic { line, .. } => Some(*line),
            ParseError::Machine(_) => None,
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let last_line = text.lines().count().max(1);
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines { inner: it.peekable(), last_line }
    }

    fn peek_line(&mut self) -> usize {
        self.inner.peek().map_or(self.last_line, |&(n, _)| n)
    }

    /// Consumes the next line if it opens `section`, returning its body.
    fn section(&mut self, section: &'static str) -> Result<(usize, &'a str), ParseError> {
        let line = self.peek_line();
        match self.inner.peek() {
            Some(&(n, l)) => match l.split_once(':') {
                Some((key, rest)) if key.trim() == section => {
                    self.inner.next();
                    Ok((n, rest.trim()))
                }
                _ => Err(ParseError::MissingSection { line, section }),
            },
            None => Err(ParseError::MissingSection { line, section }),
        }
    }
}

fn single_token(line: usize, body: &str, what: &str) -> Result<String, ParseError> {
    let mut tokens = body.split_whitespace();
    match (tokens.next(), tokens.next()) {
        (Some(t), None) => Ok(t.to_string()),
        _ => Err(ParseError::Syntax { line, message: format!("expected exactly one {what}") }),
    }
}

pub fn parse_tm(text: &str) -> Result<TuringMachine, ParseError> {
    let mut lines = Lines::new(text);

    let (line, body) = lines.section("states")?;
    let mut states: Vec<String> = Vec::new();
    for tok in body.split_whitespace() {
        if !is_identifier(tok) || tok == BLANK_TOKEN {
            return Err(ParseError::Syntax { line, message: format!("bad state name `{tok}`") });
        }
        if states.iter().any(|s| s == tok) {
            return Err(ParseError::DuplicateState { line, name: tok.to_string() });
        }
        states.push(tok.to_string());
    }
    if states.is_empty() {
        return Err(ParseError::Syntax { line, message: "no states declared".into() });
    }

    let (line, body) = lines.section("alphabet")?;
    let mut alphabet: Vec<String> = Vec::new();
    for tok in body.split_whitespace() {
        if tok == BLANK_TOKEN {
            return Err(ParseError::Syntax {
                line,
                message: "`_` is the blank and cannot be declared as a symbol".into(),
            });
        }
        if !is_identifier(tok) {
            return Err(ParseError::Syntax { line, message: format!("bad symbol name `{tok}`") });
        }
        if alphabet.iter().any(|s| s == tok) {
            return Err(ParseError::DuplicateSymbol { line, name: tok.to_string() });
        }
        alphabet.push(tok.to_string());
    }
    if alphabet.is_empty() {
        return Err(ParseError::Syntax { line, message: "empty alphabet".into() });
    }

    let find_state = |line: usize, name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .map(|i| StateId(i as u32))
            .ok_or_else(|| ParseError::UnknownState { line, name: name.to_string() })
    };
    let find_symbol = |line: usize, name: &str| {
        alphabet
            .iter()
            .position(|s| s == name)
            .map(|i| Symbol(i as u32))
            .ok_or_else(|| ParseError::UnknownSymbol { line, name: name.to_string() })
    };

    let (line, body) = lines.section("initial")?;
    let initial = find_state(line, &single_token(line, body, "state")?)?;
    let (line, body) = lines.section("halt")?;
    let halt = find_state(line, &single_token(line, body, "state")?)?;

    let (line, body) = lines.section("delta")?;
    if !body.is_empty() {
        return Err(ParseError::Syntax { line, message: "rules go on the lines after `delta:`".into() });
    }

    let mut delta = BTreeMap::new();
    for (line, l) in lines.inner.by_ref() {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        let [from, read, arrow, to, write, dir] = tokens[..] else {
            return Err(ParseError::Syntax {
                line,
                message: "expected `<state> <symbol> -> <state> <symbol> <L|R>`".into(),
            });
        };
        if arrow != "->" {
            return Err(ParseError::Syntax { line, message: format!("expected `->`, found `{arrow}`") });
        }
        let from_id = find_state(line, from)?;
        let read_cell = if read == BLANK_TOKEN { Cell::Blank } else { Cell::Sym(find_symbol(line, read)?) };
        let next_state = find_state(line, to)?;
        if write == BLANK_TOKEN {
            return Err(ParseError::WritesBlank { line });
        }
        let write = find_symbol(line, write)?;
        let movement = match dir {
            "L" => Move::Left,
            "R" => Move::Right,
            other => {
                return Err(ParseError::Syntax { line, message: format!("direction must be L or R, found `{other}`") })
            }
        };
        if from_id == halt {
            return Err(ParseError::TransitionFromHalt { line, name: from.to_string() });
        }
        let previous = delta.insert((from_id, read_cell), Transition { next_state, write, movement });
        if previous.is_some() {
            return Err(ParseError::Nondeterministic { line, state: from.to_string(), read: read.to_string() });
        }
    }

    Ok(TuringMachine::new(states, alphabet, initial, halt, delta)?)
}
