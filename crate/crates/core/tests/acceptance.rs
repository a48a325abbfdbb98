//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fail.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rtsm::bench::{bench_palindromes, deduction_budget};
use rtsm::codegen::{emit_listing1, emit_program, Origin};
use rtsm::encoding::{build_class_table, initial_query};
use rtsm::engine::{replay_case_traces, replay_mirrored_case_traces, verify_with_table, REAL_TIME_BOUND};
use rtsm::tm::random::{random_machine, MachineShape};
use rtsm::tm::{parse_tm, Symbol, TuringMachine, Verdict};

use common::{all_words, reverse_parse, rule_text, table_in_file_order, PALINDROME};

const LISTING1_GOLDEN: &str = "from typing import TypeVar, Generic, Any
Z = TypeVar(\"Z\", contravariant=True)
class N(Generic[Z]): ...
X = TypeVar(\"X\")
class C(Generic[X], N[N[\"C[C[X]]\"]]): ...
_: N[C[Any]] = C[Any]() # infinite subtyping
";

const CASE_MACHINE: &str = "\
states: s1 s2 s3 s4 t qh
alphabet: a b
initial: s1
halt: qh
delta:
  s1 a -> t b L
  s2 a -> t b R
  s3 _ -> t b L
  s4 _ -> t b R
";

/// Step budget for random machines, many of which never halt.
const RANDOM_TM_STEPS: u64 = 200;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn palindrome() -> TuringMachine {
    parse_tm(PALINDROME).unwrap()
}

fn ab(tm: &TuringMachine) -> [Symbol; 2] {
    [tm.symbol("a").unwrap(), tm.symbol("b").unwrap()]
}

/// The differential suite: palindrome machine on every {a,b} word up to
/// length 12, and 200 random full machines on every word up to length 5.
fn differential_suite() -> Vec<(TuringMachine, Vec<Vec<Symbol>>, u64)> {
    let tm = palindrome();
    let words = all_words(&ab(&tm), 12);
    let mut suite = vec![(tm, words, 100_000)];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let states = rng.gen_range(2..=4);
        let m = random_machine(&mut rng, MachineShape::full(states, 2));
        let syms: Vec<Symbol> = m.symbols().collect();
        let words = all_words(&syms, 5);
        suite.push((m, words, RANDOM_TM_STEPS));
    }
    suite
}

fn golden_cases() -> Outcome {
    let table = build_class_table(&parse_tm(CASE_MACHINE).unwrap()).unwrap();
    let traces = match replay_case_traces(&table) {
        Ok(t) => t,
        Err(e) => return fail(format!("{e:?}")),
    };
    let counts: Vec<u32> = traces.iter().map(|t| t.deductions).collect();
    if counts != [3, 8, 7, 8] {
        return fail(format!("counts {counts:?}"));
    }
    match replay_mirrored_case_traces(&table) {
        Ok(m) if m.iter().map(|t| t.deductions).eq([3, 8, 7, 8]) => pass("counts 3/8/7/8, listings and mirrors match"),
        Ok(m) => fail(format!("mirrored counts {:?}", m.iter().map(|t| t.deductions).collect::<Vec<_>>())),
        Err(e) => fail(format!("mirrored: {e:?}")),
    }
}

fn real_time_and_equivalence() -> (Outcome, Outcome, Outcome) {
    let mut worst = 0;
    let mut runs = 0u64;
    let mut divergences = Vec::new();
    let mut over_budget = Vec::new();
    for (tm, words, steps) in differential_suite() {
        let table = build_class_table(&tm).unwrap();
        for w in &words {
            runs += 1;
            match verify_with_table(&tm, &table, w, steps, deduction_budget(steps)) {
                Ok(r) => {
                    worst = worst.max(r.max_burst);
                    if r.verdict != Verdict::BudgetExhausted && r.deductions > deduction_budget(r.transitions) {
                        over_budget.push(format!("{} deductions for {} steps", r.deductions, r.transitions));
                    }
                }
                Err(d) => divergences.push(format!("{:?}: {d}", tm.format_word(w))),
            }
        }
    }
    let bound = if worst <= REAL_TIME_BOUND {
        pass(format!("max burst {worst} over {runs} runs"))
    } else {
        fail(format!("max burst {worst}"))
    };
    let equiv = if divergences.is_empty() {
        pass(format!("0 divergences over {runs} runs"))
    } else {
        fail(format!("{} divergences, first: {}", divergences.len(), divergences[0]))
    };
    let linear = if over_budget.is_empty() {
        pass("deductions <= 8*steps+16 on every halting run")
    } else {
        fail(over_budget[0].clone())
    };
    (bound, equiv, linear)
}

fn rule_count() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for i in 0..50 {
        let shape = MachineShape { states: rng.gen_range(2..=6), symbols: rng.gen_range(1..=4), density: rng.gen_range(0.0..=1.0) };
        let tm = random_machine(&mut rng, shape);
        let t = build_class_table(&tm).unwrap();
        let (d, q, s) = (tm.transition_count(), tm.state_count(), tm.symbol_count());
        let want = 2 * d + 2 * q * s + 8 * q + 2 * (s + 1);
        if t.len() != want {
            return fail(format!("machine {i}: {} rules, formula gives {want}", t.len()));
        }
    }
    pass("50/50 machines")
}

fn quadratic_scaling() -> Outcome {
    let tm = palindrome();
    let table = build_class_table(&tm).unwrap();
    let rows = match bench_palindromes(&table, &ab(&tm), &[16, 32, 64, 128], 7, 10_000_000) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    if let Some(r) = rows.iter().find(|r| r.verdict != Verdict::Accepted || r.deductions > deduction_budget(r.tm_steps)) {
        return fail(format!("length {}: {} after {} deductions / {} steps", r.word_length, r.verdict, r.deductions, r.tm_steps));
    }
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[1].deductions as f64 / w[0].deductions as f64).collect();
    let shown = ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join(", ");
    if ratios.iter().all(|r| (3.2..=4.8).contains(r)) {
        pass(format!("ratios {shown} for n = 16, 32, 64"))
    } else {
        fail(format!("ratios {shown} for n = 16, 32, 64, want [3.2, 4.8]"))
    }
}

fn codegen_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..20 {
        let shape = MachineShape { states: rng.gen_range(2..=5), symbols: rng.gen_range(1..=3), density: rng.gen_range(0.3..=1.0) };
        let tm = random_machine(&mut rng, shape);
        let table = build_class_table(&tm).unwrap();
        let p = match emit_program(&table, &initial_query(&tm, &[]), &Origin::default()) {
            Ok(p) => p,
            Err(e) => return fail(format!("machine {i}: {e}")),
        };
        let parsed = rule_text(&reverse_parse(&p.source, &tm), &tm);
        if parsed != rule_text(&table_in_file_order(&table, &p.source), &tm) {
            return fail(format!("machine {i}: class declarations do not read back as the table"));
        }
    }
    if emit_listing1().source != LISTING1_GOLDEN {
        return fail("infinite-subtyping listing differs from the golden");
    }
    pass("20/20 machines, listing golden exact")
}

fn report(name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    print_line(name, limit, t.elapsed(), o)
}

fn print_line(name: &str, limit: Duration, took: Duration, o: Outcome) -> bool {
    let ok = o.ok && took < limit;
    let timing = if took < limit { String::new() } else { format!(" (over the {limit:?} limit)") };
    println!("{} {name}: {} [{took:.2?}]{timing}", if ok { "PASS" } else { "FAIL" }, o.detail);
    ok
}

fn main() {
    let mut all = true;
    all &= report("golden case traces", Duration::from_secs(1), golden_cases);

    let t = Instant::now();
    let (bound, equiv, linear) = real_time_and_equivalence();
    let took = t.elapsed();
    // Both criteria come from the same pass over the differential suite.
    all &= print_line("real-time bound", Duration::from_secs(30), took, bound);
    all &= print_line("oracle equivalence", Duration::from_secs(60), took, equiv);

    all &= report("rule-count formula", Duration::from_secs(5), rule_count);
    all &= report("quadratic scaling", Duration::from_secs(60), || {
        let q = quadratic_scaling();
        if !linear.ok {
            return fail(format!("{}; also {}", q.detail, linear.detail));
        }
        q
    });
    all &= report("codegen round trip", Duration::from_secs(10), codegen_round_trip);
    if !all {
        std::process::exit(1);
    }
}
