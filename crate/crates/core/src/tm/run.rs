use std::collections::VecDeque;
use std::fmt;

use super::{Cell, Move, StateId, Symbol, TuringMachine};

/// A machine configuration with the tape split around the head.
///
/// Both tape halves are stored nearest-first and hold only non-blank cells;
/// everything beyond them is blank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub left_tape: VecDeque<Symbol>,
    pub current: Cell,
    pub right_tape: VecDeque<Symbol>,
    pub state: StateId,
}

impl Configuration {
    /// Head on the first letter of `word` (or on a blank when it is empty).
    pub fn initial(tm: &TuringMachine, word: &[Symbol]) -> Self {
        let mut right_tape: VecDeque<Symbol> = word.iter().copied().collect();
        let current = right_tape.pop_front().map_or(Cell::Blank, Cell::Sym);
        Configuration { left_tape: VecDeque::new(), current, right_tape, state: tm.initial() }
    }

    /// The tape from leftmost to rightmost stored cell, with the head index.
    pub fn tape(&self) -> (Vec<Cell>, usize) {
        let mut cells: Vec<Cell> = self.left_tape.iter().rev().map(|&a| Cell::Sym(a)).collect();
        let head = cells.len();
        cells.push(self.current);
        cells.extend(self.right_tape.iter().map(|&a| Cell::Sym(a)));
        (cells, head)
    }

    pub fn display<'a>(&'a self, tm: &'a TuringMachine) -> ConfigurationDisplay<'a> {
        ConfigurationDisplay { config: self, tm }
    }

    fn apply(&mut self, write: Symbol, movement: Move) {
        match movement {
            Move::Left => {
                self.right_tape.push_front(write);
                self.current = self.left_tape.pop_front().map_or(Cell::Blank, Cell::Sym);
            }
            Move::Right => {
                self.left_tape.push_front(write);
                self.current = self.right_tape.pop_front().map_or(Cell::Blank, Cell::Sym);
            }
        }
    }
}

pub struct ConfigurationDisplay<'a> {
    config: &'a Configuration,
    tm: &'a TuringMachine,
}

impl fmt::Display for ConfigurationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (cells, head) = self.config.tape();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if i == head {
                write!(f, "[{}]", self.tm.cell_name(*c))?;
            } else {
                f.write_str(self.tm.cell_name(*c))?;
            }
        }
        write!(f, "  @ {}", self.tm.state_name(self.config.state))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Accept,
    Reject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    Rejected,
    BudgetExhausted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepted => "Accepted",
            Verdict::Rejected => "Rejected",
            Verdict::BudgetExhausted => "Budget-Exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub verdict: Verdict,
    pub steps: u64,
    pub final_config: Configuration,
    /// Every configuration visited, starting with the initial one.
    pub trace: Option<Vec<Configuration>>,
}

pub fn step(tm: &TuringMachine, c: &Configuration) -> Step {
    let mut next = c.clone();
    match step_in_place(tm, &mut next) {
        Some(Verdict::Accepted) => Step::Accept,
        Some(_) => Step::Reject,
        None => Step::Next(next),
    }
}

/// Applies one transition to `c`, or returns the verdict if the run is over.
fn step_in_place(tm: &TuringMachine, c: &mut Configuration) -> Option<Verdict> {
    if c.state == tm.halt() {
        return Some(Verdict::Accepted);
    }
    let Some(&t) = tm.transition(c.state, c.current) else {
        return Some(Verdict::Rejected);
    };
    c.apply(t.write, t.movement);
    c.state = t.next_state;
    None
}

pub fn run(tm: &TuringMachine, word: &[Symbol], max_steps: u64, record_trace: bool) -> RunResult {
    let mut config = Configuration::initial(tm, word);
    let mut trace = record_trace.then(|| vec![config.clone()]);
    let mut steps = 0;
    let verdict = loop {
        if config.state == tm.halt() {
            break Verdict::Accepted;
        }
        if tm.transition(config.state, config.current).is_none() {
            break Verdict::Rejected;
        }
        if steps >= max_steps {
            break Verdict::BudgetExhausted;
        }
        step_in_place(tm, &mut config);
        steps += 1;
        if let Some(t) = trace.as_mut() {
            t.push(config.clone());
        }
    };
    RunResult { verdict, steps, final_config: config, trace }
}
