//! One pass/fail line per acceptance criterion. All quantities are integers
//! or booleans compared exactly; there is no numeric tolerance.

mod common;

use std::io::Write;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;
use spyhunt::strategies::{nine_person_line, run_strategy, EdgeCaseStrategy, ScriptSource};
use spyhunt::verify::{run_check, Check, Row, VerifyConfig};
use spyhunt::{Answer, Claim, GameParams, SpyModel};

const RANDOM_HISTORIES: usize = 10_000;

struct Outcome {
    rows: usize,
    failed: Vec<String>,
}

impl Outcome {
    fn from_rows<'a>(rows: impl IntoIterator<Item = &'a Row>) -> Self {
        let mut out = Outcome { rows: 0, failed: Vec::new() };
        for r in rows {
            out.rows += 1;
            if !r.pass {
                out.failed.push(format!(
                    "{} {} ({},{}) {:?} known={} {}: expected {} got {}",
                    r.check, r.method, r.n, r.k, r.model, r.spy_known, r.quantity, r.expected, r.computed
                ));
            }
        }
        out
    }

    fn push(&mut self, ok: bool, what: String) {
        self.rows += 1;
        if !ok {
            self.failed.push(what);
        }
    }
}

/// Writes past the test harness's output capture so the lines always show.
fn report(id: usize, title: &str, o: &Outcome, started: Instant) -> bool {
    let pass = o.failed.is_empty() && o.rows > 0;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {id}: {} {title} ({} checks, {} failed, {:.1}s)",
        if pass { "PASS" } else { "FAIL" },
        o.rows,
        o.failed.len(),
        started.elapsed().as_secs_f64()
    );
    for f in o.failed.iter().take(10) {
        let _ = writeln!(out, "    {f}");
    }
    pass
}

fn nine_person_main_line() -> (bool, String) {
    let params = GameParams::liar(9, 5).unwrap().with_spy_known(true);
    let mut answers: Vec<Answer> = nine_person_line().iter().filter_map(|r| r.1).collect();
    answers.push(Answer::Support);
    match run_strategy(&EdgeCaseStrategy::default(), &mut ScriptSource::new(answers), &params) {
        Ok(t) => {
            let spy_at = t.claims().find(|(_, c)| matches!(c, Claim::SpyIs(_))).map(|(i, _)| i);
            (spy_at == Some(7), format!("nine-person main line finds a spy at {spy_at:?}, expected Some(7)"))
        }
        Err(e) => (false, format!("nine-person main line failed: {e}")),
    }
}

fn property_suites() -> Outcome {
    let mut out = Outcome { rows: 0, failed: Vec::new() };
    for params in common::all_params(3, 5) {
        let depth = if params.n == 5 { 3 } else { 4 };
        let r = common::exhaustive(&params, depth);
        out.push(r.is_ok(), format!("exhaustive {params:?}: {:?}", r.err()));
        for spies in common::rooms(&params) {
            for name in spyhunt::strategies::STRATEGY_NAMES {
                let s = spyhunt::strategies::named(name).unwrap();
                if s.check(&params).is_ok() {
                    let r = common::check_strategy(s.as_ref(), &params, spies);
                    out.push(r.is_ok(), format!("{name} {params:?}: {:?}", r.err()));
                }
            }
            if params.model == SpyModel::Liar {
                let r = common::check_bkh_sizes(&params, spies);
                out.push(r.is_ok(), format!("bkh sizes {params:?}: {:?}", r.err()));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_HISTORIES {
        let params = common::random_params(&mut rng, 3, 8);
        let (spies, moves) = common::random_history(&mut rng, &params, 6);
        let r = common::check_history(&params, spies, &moves);
        out.push(r.is_ok(), format!("history {params:?} room {spies:#b} {moves:?}: {:?}", r.err()));
    }
    for _ in 0..RANDOM_HISTORIES / 10 {
        let params = common::random_params(&mut rng, 6, 12);
        let (spies, _) = common::random_history(&mut rng, &params, 0);
        for name in spyhunt::strategies::STRATEGY_NAMES {
            let s = spyhunt::strategies::named(name).unwrap();
            if s.check(&params).is_ok() {
                let r = common::check_strategy(s.as_ref(), &params, spies);
                out.push(r.is_ok(), format!("{name} {params:?}: {:?}", r.err()));
            }
        }
        if params.model == SpyModel::Liar {
            let r = common::check_bkh_sizes(&params, spies);
            out.push(r.is_ok(), format!("bkh sizes {params:?}: {:?}", r.err()));
        }
    }
    out
}

fn method_is(r: &Row, prefix: &str) -> bool {
    r.method.starts_with(prefix)
}

#[test]
fn acceptance_criteria() {
    let cfg = VerifyConfig::default();
    let mut all = true;

    let t = Instant::now();
    let t1 = run_check(Check::Theorem1, &cfg);
    let t3 = run_check(Check::Theorem3, &cfg);
    let rows = t1.iter().chain(&t3).filter(|r| r.method == "solver" && r.model == Some(SpyModel::Liar));
    all &= report(1, "liar solver matches spy and identity targets, n <= 10", &Outcome::from_rows(rows), t);

    let t = Instant::now();
    let t2 = run_check(Check::Theorem2, &cfg);
    let rows = t2.iter().chain(&t3).filter(|r| r.method == "solver" && r.model == Some(SpyModel::Unconstrained));
    all &= report(2, "generic solver matches unconstrained values, n <= 7", &Outcome::from_rows(rows), t);

    let t = Instant::now();
    let t5 = run_check(Check::Theorem5, &cfg);
    let rows = t5.iter().filter(|r| r.method == "feasible");
    all &= report(3, "combined deadlines at (7,4)", &Outcome::from_rows(rows), t);

    let t = Instant::now();
    let t4 = run_check(Check::Theorem4, &cfg);
    let rows = t1.iter().chain(&t2).chain(&t4).chain(&t5).filter(|r| method_is(r, "strategy:"));
    let mut o = Outcome::from_rows(rows);
    let (ok, what) = nine_person_main_line();
    o.push(ok, what);
    all &= report(4, "strategy worst cases meet their targets", &o, t);

    let t = Instant::now();
    let rows = t1.iter().chain(&t2).chain(&t3).chain(&t5).filter(|r| method_is(r, "policy:"));
    all &= report(5, "lower-bound adversaries hold the interrogator off", &Outcome::from_rows(rows), t);

    let t = Instant::now();
    let rows = run_check(Check::Conjecture, &cfg);
    all &= report(6, "majority values and conjecture, k <= 8", &Outcome::from_rows(&rows), t);

    let t = Instant::now();
    let mut rows = run_check(Check::Atable, &cfg);
    rows.extend(run_check(Check::Atable, &VerifyConfig { n_max: Some(16), ..cfg }));
    all &= report(7, "A(n,k) classification up to 13 and 16", &Outcome::from_rows(&rows), t);

    let t = Instant::now();
    let rows = run_check(Check::CrossSolver, &cfg);
    all &= report(8, "abstract and generic solvers agree, n <= 7", &Outcome::from_rows(&rows), t);

    let t = Instant::now();
    all &= report(9, "property suites, exhaustive n <= 5 and random histories", &property_suites(), t);

    assert!(all, "some acceptance criterion failed");
}

#[test]
#[ignore = "stretch: classification to 30 and the conjecture to k = 20"]
fn acceptance_stretch() {
    let t = Instant::now();
    let rows = run_check(Check::Atable, &VerifyConfig { n_max: Some(30), ..VerifyConfig::default() });
    let a = report(7, "A(n,k) classification up to 30", &Outcome::from_rows(&rows), t);
    let t = Instant::now();
    let rows = run_check(Check::Conjecture, &VerifyConfig { k_max: Some(20), ..VerifyConfig::default() });
    let c = report(6, "conjecture up to k = 20", &Outcome::from_rows(&rows), t);
    assert!(a && c);
}
