//! Turing machines: data model, `.tm` parser and a direct interpreter.
//!
//! The interpreter is the reference semantics every compiled subtyping
//! machine is checked against.

mod machine;
mod parse;
pub mod random;
mod run;

pub use machine::{Cell, MachineError, Move, StateId, Symbol, Transition, TuringMachine};
pub use parse::{parse_tm, ParseError};
pub use run::{run, step, Configuration, RunResult, Step, Verdict};

/// Token used for the blank cell in `.tm` files and in rendered words.
pub const BLANK_TOKEN: &str = "_";
