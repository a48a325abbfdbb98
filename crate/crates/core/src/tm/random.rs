//! Seeded generators for machines and words used by the differential and
//! benchmark drivers.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Cell, Move, StateId, Symbol, Transition, TuringMachine};

/// Shape of the machines produced by [`random_machine`].
#[derive(Clone, Copy, Debug)]
pub struct MachineShape {
    /// Number of states including the halt state; at least 2.
    pub states: usize,
    pub symbols: usize,
    /// Probability that a non-halt `(state, cell)` pair gets a transition.
    pub density: f64,
}

impl MachineShape {
    pub fn full(states: usize, symbols: usize) -> Self {
        MachineShape { states, symbols, density: 1.0 }
    }
}

/// Builds a machine with states `s0..` (the last one halts) and symbols
/// `a, b, c, ...`.
pub fn random_machine<R: Rng + ?Sized>(rng: &mut R, shape: MachineShape) -> TuringMachine {
    assert!(shape.states >= 2 && shape.symbols >= 1 && shape.symbols <= 26);
    let states: Vec<String> = (0..shape.states).map(|i| format!("s{i}")).collect();
    let alphabet: Vec<String> = (0..shape.symbols).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let halt = StateId(shape.states as u32 - 1);
    let mut delta = BTreeMap::new();
    for s in 0..shape.states as u32 - 1 {
        let cells = (0..shape.symbols as u32).map(|a| Cell::Sym(Symbol(a))).chain([Cell::Blank]);
        for cell in cells {
            if rng.gen_bool(shape.density) {
                let t = Transition {
                    next_state: StateId(rng.gen_range(0..shape.states as u32)),
                    write: Symbol(rng.gen_range(0..shape.symbols as u32)),
                    movement: if rng.gen_bool(0.5) { Move::Left } else { Move::Right },
                };
                delta.insert((StateId(s), cell), t);
            }
        }
    }
    TuringMachine::new(states, alphabet, StateId(0), halt, delta).expect("generated machine is valid")
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, symbols: &[Symbol], len: usize) -> Vec<Symbol> {
    (0..len).map(|_| *symbols.choose(rng).expect("non-empty symbol set")).collect()
}

/// A uniformly random half-word mirrored into a palindrome of length `len`.
pub fn random_palindrome<R: Rng + ?Sized>(rng: &mut R, symbols: &[Symbol], len: usize) -> Vec<Symbol> {
    let half = random_word(rng, symbols, len.div_ceil(2));
    let mut word = half.clone();
    word.extend(half.iter().rev().skip(len % 2));
    word
}
