//! Compile Turing machines into subtyping machines: class tables whose
//! subtype-checking derivation simulates the machine, a deduction engine that
//! runs them, an equivalence checker against a plain interpreter, and a
//! Python type-hint backend.

pub mod bench;
pub mod codegen;
pub mod encoding;
pub mod engine;
pub mod tm;
