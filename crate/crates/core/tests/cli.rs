use std::path::PathBuf;
use std::process::{Command, Output};

fn rtsm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtsm")).args(args).output().unwrap()
}

fn palindrome() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("machines/palindrome.tm").display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_tm(dir: &tempfile::TempDir, text: &str) -> String {
    let p = dir.path().join("m.tm");
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn parse_reports_size() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_tm(&dir, "states: q0 q1 qh\nalphabet: a b\ninitial: q0\nhalt: qh\ndelta:\n  q0 a -> q1 a R\n  q0 b -> q1 a R\n  q0 _ -> qh a R\n  q1 a -> q0 b L\n  q1 b -> q0 b L\n  q1 _ -> qh b L\n");
    let o = rtsm(&["parse", &m]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3 states, 2 symbols, 6 transitions");
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_tm(&dir, "states: q qh\nalphabet: a\ninitial: q\ndelta:\n");
    let o = rtsm(&["parse", &m]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("halt"));
    let m = write_tm(&dir, "states: q qh\nalphabet: a\ninitial: q\nhalt: qh\ndelta:\n  qh a -> q a R\n");
    assert_eq!(rtsm(&["parse", &m]).status.code(), Some(2));
    assert_eq!(rtsm(&["parse", "/nonexistent.tm"]).status.code(), Some(2));
}

#[test]
fn run_exit_codes() {
    let p = palindrome();
    let o = rtsm(&["run", &p, "abba"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Accepted\n"));
    let o = rtsm(&["run", &p, "ab"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Rejected\n"));
    assert_eq!(rtsm(&["run", &p, "abba", "--max-steps", "1"]).status.code(), Some(3));
    assert_eq!(rtsm(&["run", &p, "abc"]).status.code(), Some(2));
}

#[test]
fn run_trace_lists_configurations() {
    let o = rtsm(&["run", &palindrome(), "aa", "--trace"]);
    let out = stdout(&o);
    assert!(out.lines().next().unwrap().ends_with("@ q0"));
    assert!(out.contains("steps: "));
}

#[test]
fn compile_table_and_python() {
    let p = palindrome();
    let dir = tempfile::tempdir().unwrap();
    let table = rtsm(&["compile", &p, "ab", "--emit", "table"]);
    assert_eq!(table.status.code(), Some(0));
    let text = stdout(&table);
    assert_eq!(text.lines().count(), 2 * 19 + 2 * 7 * 3 + 8 * 7 + 2 * 4);
    assert!(text.contains("Q_ra_L[x] : L_X N Q_ca_L L_X N x   # rule 1, delta(ra,X)"));

    let (a, b) = (dir.path().join("a.py"), dir.path().join("b.py"));
    for out in [&a, &b] {
        let o = rtsm(&["compile", &p, "ab", "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let src = String::from_utf8(a).unwrap();
    assert!(src.ends_with("def query(x: Q_q0_R[L_blank[N[Z]]]) -> None:\n    y: L_a[N[L_b[N[L_blank[N[Z]]]]]] = x\n"));
}

#[test]
fn simulate_reports_counts() {
    let p = palindrome();
    let o = rtsm(&["simulate", &p, "aa"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let field = |name: &str| -> u64 {
        out.lines().find_map(|l| l.strip_prefix(name)).unwrap().trim().parse().unwrap()
    };
    assert!(out.starts_with("Accepted\n"));
    assert!(field("deductions:") <= 8 * field("transitions:") + 16);

    let o = rtsm(&["simulate", &p, "ab", "--trace"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.ends_with("(reject: no rule)")));
    assert_eq!(rtsm(&["simulate", &p, "abba", "--max-deductions", "5"]).status.code(), Some(3));
}

#[test]
fn simulate_trace_of_one_transition_machine() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_tm(&dir, "states: q0 qh\nalphabet: a\ninitial: q0\nhalt: qh\ndelta:\n  q0 _ -> qh a R\n");
    let o = rtsm(&["simulate", &m, "", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let annotations: Vec<&str> = out.lines().skip(1).take(11).map(|l| l.rsplit("   ").next().unwrap()).collect();
    assert_eq!(
        annotations,
        ["(3)+(Super)", "(Var)", "(7)+(Super)", "(Var)", "(9)+(Super)", "(Var)", "(Var)", "(10)+(Super)", "(Var)", "(Var)", "(accept: wildcard)"]
    );
    assert!(out.contains("deductions: 10\n"));
}

#[test]
fn verify_modes() {
    let p = palindrome();
    let o = rtsm(&["verify", &p, "--words", ",a,ab,aba,abba,abab"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("6 words agree"));
    let o = rtsm(&["verify", &p, "--random", "200", "--max-len", "5", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn verify_catches_a_dropped_rule() {
    let p = palindrome();
    let dump = stdout(&rtsm(&["compile", &p, "--emit", "table"]));
    let idx = dump.lines().position(|l| l.ends_with("# rule 1 (mirror), delta(q0,a)")).unwrap();
    let o = rtsm(&["verify", &p, "--words", "abba", "--drop-rule", &idx.to_string()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("divergence at transition 0"));
}

#[test]
fn bench_csv() {
    let p = palindrome();
    let o = rtsm(&["bench", &p, "--lengths", "8,16,32", "--seed", "3", "--symbols", "a,b", "--csv", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("length,tm_steps,deductions,verdict"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[3] == "Accepted"));
    let d: Vec<u64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(d[0] < d[1] && d[1] < d[2]);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = rtsm(&["bench", &p, "--lengths", "8,16,32", "--seed", "3", "--symbols", "a,b", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(csv).unwrap(), out);
}
