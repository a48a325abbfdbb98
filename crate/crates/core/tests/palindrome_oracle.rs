mod common;

use rtsm::encoding::{build_class_table, initial_query};
use rtsm::engine::{run_query, verify_equivalence};
use rtsm::tm::{self, parse_tm, Verdict};

use common::{all_words, is_palindrome, PALINDROME};

#[test]
fn interpreter_decides_palindromes() {
    let tm = parse_tm(PALINDROME).unwrap();
    let ab = [tm.symbol("a").unwrap(), tm.symbol("b").unwrap()];
    for w in all_words(&ab, 8) {
        let r = tm::run(&tm, &w, 100_000, false);
        let want = if is_palindrome(&w) { Verdict::Accepted } else { Verdict::Rejected };
        assert_eq!(r.verdict, want, "{}", tm.format_word(&w));
    }
}

#[test]
fn engine_decides_palindromes() {
    let tm = parse_tm(PALINDROME).unwrap();
    let table = build_class_table(&tm).unwrap();
    let ab = [tm.symbol("a").unwrap(), tm.symbol("b").unwrap()];
    for w in all_words(&ab, 8) {
        let r = run_query(&initial_query(&tm, &w), &table, 1_000_000, false).unwrap();
        let want = if is_palindrome(&w) { Verdict::Accepted } else { Verdict::Rejected };
        assert_eq!(r.verdict, want, "{}", tm.format_word(&w));
    }
}

#[test]
fn lock_step_agreement_including_work_symbol() {
    let tm = parse_tm(PALINDROME).unwrap();
    let all: Vec<_> = tm.symbols().collect();
    for w in all_words(&all, 5) {
        let r = verify_equivalence(&tm, &w, 10_000, 100_000).unwrap();
        assert_eq!(r.verdict, tm::run(&tm, &w, 10_000, false).verdict);
    }
}
