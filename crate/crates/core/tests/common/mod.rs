#![allow(dead_code)]

use std::collections::HashMap;

use rtsm::encoding::{mangle, ClassTable, StateTag, TypeAtom};
use rtsm::tm::{Symbol, TuringMachine};

pub const PALINDROME: &str = include_str!("../../machines/palindrome.tm");

/// Every word over `symbols` of length at most `max_len`, shortest first.
pub fn all_words(symbols: &[Symbol], max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in symbols {
                let mut v: Vec<Symbol> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn atom_names(tm: &TuringMachine) -> HashMap<String, TypeAtom> {
    let mut atoms = vec![TypeAtom::Z, TypeAtom::N, TypeAtom::Wildcard, TypeAtom::Param];
    atoms.extend(tm.cells().map(TypeAtom::L));
    for s in tm.states() {
        atoms.extend(StateTag::ALL.iter().map(|&t| TypeAtom::Q(s, t)));
    }
    atoms.into_iter().map(|a| (mangle(a, tm), a)).collect()
}

/// `A[B[C]]` -> `[A, B, C]`
fn unnest(text: &str, names: &HashMap<String, TypeAtom>) -> Vec<TypeAtom> {
    text.trim_end_matches(']').split('[').map(|n| names[n]).collect()
}

/// Reads the `class` lines of a generated program back into `(head, body)`
/// pairs, outermost atom first, in file order.
pub fn reverse_parse(source: &str, tm: &TuringMachine) -> Vec<(TypeAtom, Vec<TypeAtom>)> {
    let names = atom_names(tm);
    let mut rules = Vec::new();
    for line in source.lines().filter(|l| l.starts_with("class ")) {
        let rest = line.strip_prefix("class ").unwrap();
        let Some((name, bases)) = rest.split_once('(') else { continue };
        let head = names[name];
        let bases = bases.strip_suffix("): ...").expect("class line ends with `): ...`");
        for base in bases.split(", ").filter(|b| *b != "Generic[X]") {
            let (outer, quoted) = base.split_once("[\"").expect("base is H[\"...\"]");
            let inner = quoted.strip_suffix("\"]").expect("closing quote");
            let mut body = vec![names[outer]];
            body.extend(unnest(inner, &names));
            rules.push((head, body));
        }
    }
    rules
}

/// `HEAD : b1 b2 ...` for each pair, one per line.
pub fn rule_text(rules: &[(TypeAtom, Vec<TypeAtom>)], tm: &TuringMachine) -> String {
    rules
        .iter()
        .map(|(h, b)| {
            let body: Vec<String> = b.iter().map(|&a| mangle(a, tm)).collect();
            format!("{} : {}\n", mangle(*h, tm), body.join(" "))
        })
        .collect()
}

/// Table rules in the order a generated file lists them: grouped by class
/// in file order, table order within a class.
pub fn table_in_file_order(table: &ClassTable, source: &str) -> Vec<(TypeAtom, Vec<TypeAtom>)> {
    let tm = table.machine();
    let names = atom_names(tm);
    let order: Vec<TypeAtom> = source
        .lines()
        .filter_map(|l| l.strip_prefix("class "))
        .filter_map(|l| l.split(['(', ':']).next())
        .filter_map(|n| names.get(n).copied())
        .collect();
    let mut out = Vec::new();
    for head in order {
        out.extend(table.rules().iter().filter(|r| r.head == head).map(|r| (r.head, r.body.to_vec())));
    }
    out
}

pub fn is_palindrome(w: &[Symbol]) -> bool {
    w.iter().eq(w.iter().rev())
}
