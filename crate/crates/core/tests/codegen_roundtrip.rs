mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtsm::codegen::{emit_program, Origin};
use rtsm::encoding::{build_class_table, initial_query};
use rtsm::tm::parse_tm;
use rtsm::tm::random::{random_machine, MachineShape};

use common::{reverse_parse, rule_text, table_in_file_order, PALINDROME};

#[test]
fn palindrome_classes_read_back_as_the_table() {
    let tm = parse_tm(PALINDROME).unwrap();
    let table = build_class_table(&tm).unwrap();
    let p = emit_program(&table, &initial_query(&tm, &tm.parse_word("abba").unwrap()), &Origin::default()).unwrap();
    let parsed = reverse_parse(&p.source, &tm);
    assert_eq!(parsed.len(), table.len());
    assert_eq!(rule_text(&parsed, &tm), rule_text(&table_in_file_order(&table, &p.source), &tm));
}

#[test]
fn random_machines_read_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..30 {
        let tm = random_machine(&mut rng, MachineShape { states: 2 + i % 4, symbols: 1 + i % 3, density: 0.7 });
        let table = build_class_table(&tm).unwrap();
        let p = emit_program(&table, &initial_query(&tm, &[]), &Origin::default()).unwrap();
        let parsed = reverse_parse(&p.source, &tm);
        assert_eq!(rule_text(&parsed, &tm), rule_text(&table_in_file_order(&table, &p.source), &tm));
    }
}

#[test]
fn emission_is_deterministic() {
    let tm = parse_tm(PALINDROME).unwrap();
    let q = initial_query(&tm, &tm.parse_word("abab").unwrap());
    let a = emit_program(&build_class_table(&tm).unwrap(), &q, &Origin::default()).unwrap();
    let b = emit_program(&build_class_table(&tm).unwrap(), &q, &Origin::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn generated_program_imports_in_python_when_available() {
    let Ok(out) = std::process::Command::new("python3").arg("--version").output() else { return };
    if !out.status.success() {
        return;
    }
    let tm = parse_tm(PALINDROME).unwrap();
    let table = build_class_table(&tm).unwrap();
    let p = emit_program(&table, &initial_query(&tm, &tm.parse_word("aba").unwrap()), &Origin::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("aba.py");
    std::fs::write(&path, &p.source).unwrap();
    let status = std::process::Command::new("python3").arg(&path).status().unwrap();
    assert!(status.success());
}
