//! Python type-hint programs for external type checkers.
//!
//! A compiled machine becomes a module of generic classes, one per type
//! atom, whose base classes are the rule bodies. The query is posed as a
//! function that assigns a parameter of the subtype to a local annotated with
//! the supertype, so checking the file runs the subtyping machine.

use std::collections::{BTreeSet, HashSet};

use crate::encoding::{mangle, ClassTable, SubtypeQuery, TypeAtom, TypeTerm};
use crate::tm::Cell;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const LISTING1: &str = include_str!("../assets/listing1.py");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedProgram {
    pub source: String,
    /// Rendered type of the query's subtype side.
    pub lhs_annotation: String,
    /// Rendered type of the query's supertype side.
    pub rhs_annotation: String,
    pub class_count: usize,
}

/// Provenance written into the generated-file header.
#[derive(Clone, Debug, Default)]
pub struct Origin {
    pub machine: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodegenError {
    #[error("two classes would both be named `{0}`")]
    MangleCollision(String),
    #[error("query mentions `{0}`, which the class table does not define")]
    MachineMismatch(String),
}

/// Right-nested application: `[Q(q0,R), L(#), N, Z]` becomes
/// `Q_q0_R[L_blank[N[Z]]]`.
pub fn render_type(term: &TypeTerm, table: &ClassTable) -> String {
    let names: Vec<String> = term.atoms().map(|a| mangle(a, table.machine())).collect();
    nest(&names)
}

fn nest(names: &[String]) -> String {
    let mut out = String::new();
    for (i, n) in names.iter().enumerate() {
        if i > 0 {
            out.push('[');
        }
        out.push_str(n);
    }
    out.extend(std::iter::repeat_n(']', names.len().saturating_sub(1)));
    out
}

/// `H["rest"]`: the base-class form of a rule body, with everything below
/// the outermost class quoted as a forward reference.
fn render_base(body: &TypeTerm, table: &ClassTable) -> String {
    let names: Vec<String> = body.atoms().map(|a| mangle(a, table.machine())).collect();
    format!("{}[\"{}\"]", names[0], nest(&names[1..]))
}

pub fn emit_program(table: &ClassTable, query: &SubtypeQuery, origin: &Origin) -> Result<GeneratedProgram, CodegenError> {
    let tm = table.machine();

    let mut state_classes: BTreeSet<TypeAtom> = BTreeSet::new();
    for r in table.rules() {
        state_classes.extend(std::iter::once(r.head).chain(r.body.atoms()).filter(|a| matches!(a, TypeAtom::Q(..))));
    }
    for atom in query.sub().atoms().chain(query.sup().atoms()) {
        let known = match atom {
            TypeAtom::Q(..) => state_classes.contains(&atom),
            TypeAtom::L(Cell::Sym(a)) => (a.0 as usize) < tm.symbol_count(),
            _ => true,
        };
        if !known {
            return Err(CodegenError::MachineMismatch(format!("{atom:?}")));
        }
    }

    let cell_classes: Vec<TypeAtom> = tm.cells().map(TypeAtom::L).collect();
    let mut seen = HashSet::new();
    for atom in [TypeAtom::Z, TypeAtom::N, TypeAtom::Param]
        .into_iter()
        .chain(cell_classes.iter().copied())
        .chain(state_classes.iter().copied())
    {
        let name = mangle(atom, tm);
        if !seen.insert(name.clone()) {
            return Err(CodegenError::MangleCollision(name));
        }
    }

    let bases_of = |head: TypeAtom| -> Vec<String> {
        table.rules().iter().filter(|r| r.head == head).map(|r| render_base(&r.body, table)).collect()
    };
    let class_line = |atom: TypeAtom| -> String {
        let mut bases = vec!["Generic[X]".to_string()];
        bases.extend(bases_of(atom));
        format!("class {}({}): ...\n", mangle(atom, tm), bases.join(", "))
    };

    let mut src = String::new();
    src.push_str(&format!(
        "# Generated by rtsm {TOOL_VERSION}: machine {}, word \"{}\". Do not edit.\n",
        origin.machine, origin.word
    ));
    src.push_str("from typing import Any, Generic, TypeVar\n\n");
    src.push_str("X = TypeVar(\"X\", contravariant=True)\n\n");
    src.push_str("class Z: ...\n\n");
    for &c in &cell_classes {
        src.push_str(&class_line(c));
    }
    src.push('\n');
    for &q in &state_classes {
        src.push_str(&class_line(q));
    }
    src.push('\n');
    src.push_str(&class_line(TypeAtom::N));
    src.push('\n');

    let lhs = render_type(query.sub(), table);
    let rhs = render_type(query.sup(), table);
    src.push_str(&format!("def query(x: {lhs}) -> None:\n    y: {rhs} = x\n"));

    Ok(GeneratedProgram {
        source: src,
        lhs_annotation: lhs,
        rhs_annotation: rhs,
        class_count: 2 + cell_classes.len() + state_classes.len(),
    })
}

/// The six-line program whose single assignment sends a checker into an
/// infinite subtyping derivation.
pub fn emit_listing1() -> GeneratedProgram {
    GeneratedProgram {
        source: LISTING1.to_string(),
        lhs_annotation: "C[Any]".into(),
        rhs_annotation: "N[C[Any]]".into(),
        class_count: 2,
    }
}
