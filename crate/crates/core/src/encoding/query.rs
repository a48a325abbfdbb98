use std::collections::VecDeque;

use super::{Orientation, StateTag, SubtypeQuery, TermError, TypeAtom, TypeTerm};
use crate::tm::{Cell, Configuration, Move, Symbol, TuringMachine};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("query is not canonical: subtype side starts with {0:?}")]
    NonCanonical(TypeAtom),
    #[error("malformed tape word at atom {position}: {found:?}")]
    Malformed { position: usize, found: Option<TypeAtom> },
    #[error("tape word does not end in `L_blank N Z`")]
    MissingTerminator,
    #[error("configuration is not encodable facing {0:?}: blank head with stored cells ahead")]
    BlankInsideTape(Move),
}

fn tape_word(cells: impl IntoIterator<Item = Symbol>) -> Vec<TypeAtom> {
    let mut atoms = Vec::new();
    for a in cells {
        atoms.push(TypeAtom::L(Cell::Sym(a)));
        atoms.push(TypeAtom::N);
    }
    atoms.extend([TypeAtom::L(Cell::Blank), TypeAtom::N, TypeAtom::Z]);
    atoms
}

fn term(atoms: Vec<TypeAtom>) -> TypeTerm {
    TypeTerm::new(atoms).expect("tape words end in Z")
}

/// The query whose deduction starts the run of `tm` on `word`:
/// `Z N L_blank Q_I^R ⊏ L_a1 N ... L_am N L_blank N Z`.
pub fn initial_query(tm: &TuringMachine, word: &[Symbol]) -> SubtypeQuery {
    let sub = term(vec![TypeAtom::Q(tm.initial(), StateTag::R), TypeAtom::L(Cell::Blank), TypeAtom::N, TypeAtom::Z]);
    let sup = term(tape_word(word.iter().copied()));
    SubtypeQuery::new(sub, sup, Orientation::SubLeft).expect("no parameters in tape words")
}

/// Encodes `config` as a canonical query whose head faces `facing`: the
/// supertype side lists the current cell and the cells beyond it in that
/// direction, the subtype side the state followed by the cells behind.
pub fn encode_configuration(config: &Configuration, facing: Move) -> Result<SubtypeQuery, DecodeError> {
    let (ahead, behind) = match facing {
        Move::Right => (&config.right_tape, &config.left_tape),
        Move::Left => (&config.left_tape, &config.right_tape),
    };
    let sup_cells: Vec<Symbol> = match config.current {
        Cell::Sym(a) => std::iter::once(a).chain(ahead.iter().copied()).collect(),
        Cell::Blank if ahead.is_empty() => Vec::new(),
        Cell::Blank => return Err(DecodeError::BlankInsideTape(facing)),
    };
    let mut sub = vec![TypeAtom::Q(config.state, StateTag::of(facing))];
    sub.extend(tape_word(behind.iter().copied()));
    let orientation = match facing {
        Move::Right => Orientation::SubLeft,
        Move::Left => Orientation::SupLeft,
    };
    SubtypeQuery::new(term(sub), term(tape_word(sup_cells)), orientation)
        .map_err(|e: TermError| unreachable!("tape words are parameter free: {e}"))
}

/// Reads `L_x N` pairs up to the closing `L_blank N Z`.
fn read_cells(atoms: impl Iterator<Item = TypeAtom>, offset: usize) -> Result<VecDeque<Symbol>, DecodeError> {
    let mut atoms = atoms.enumerate().map(|(i, a)| (i + offset, a)).peekable();
    let mut cells = VecDeque::new();
    let expect = |atoms: &mut std::iter::Peekable<_>, want: TypeAtom| -> Result<(), DecodeError> {
        match atoms.next() {
            Some((_, a)) if a == want => Ok(()),
            Some((position, a)) => Err(DecodeError::Malformed { position, found: Some(a) }),
            None => Err(DecodeError::MissingTerminator),
        }
    };
    loop {
        match atoms.next() {
            Some((_, TypeAtom::L(Cell::Sym(a)))) => {
                expect(&mut atoms, TypeAtom::N)?;
                cells.push_back(a);
            }
            Some((_, TypeAtom::L(Cell::Blank))) => {
                expect(&mut atoms, TypeAtom::N)?;
                expect(&mut atoms, TypeAtom::Z)?;
                return Ok(cells);
            }
            Some((_, TypeAtom::Z)) | None => return Err(DecodeError::MissingTerminator),
            Some((position, found)) => return Err(DecodeError::Malformed { position, found: Some(found) }),
        }
    }
}

/// Recovers the TM configuration from a canonical query.
pub fn decode_query(q: &SubtypeQuery) -> Result<Configuration, DecodeError> {
    let head = q.sub.head();
    let (state, facing) = match head {
        TypeAtom::Q(s, tag) => (s, tag.direction().ok_or(DecodeError::NonCanonical(head))?),
        _ => return Err(DecodeError::NonCanonical(head)),
    };
    let behind = read_cells(q.sub.atoms().skip(1), 1)?;
    let mut ahead = read_cells(q.sup.atoms(), 0)?;
    let current = ahead.pop_front().map_or(Cell::Blank, Cell::Sym);
    let (left_tape, right_tape) = match facing {
        Move::Right => (behind, ahead),
        Move::Left => (ahead, behind),
    };
    Ok(Configuration { left_tape, current, right_tape, state })
}
