//! Named verification suites that compare closed forms with solvers,
//! strategies and spy master policies over ranges of `(n, k)`.
//!
//! Every suite yields [`Row`]s in a fixed order. Rows serialise as one JSON
//! object per line.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{
    policy_combined_feasible, policy_value, worst_case, DeadlineBlocker, LiarLowerBound, MajorityLowerBound, Policy,
    UnconstrainedLowerBound,
};
use crate::error::GameError;
use crate::formulas::{
    binary_weight, identity_targets, knight_count, liar_spy_targets, A_CLASSIFIED_UP_TO, LOW_A_PAIRS,
};
use crate::game::{GameParams, SpyModel};
use crate::knowledge::Objective;
use crate::solver::{
    check_conjecture, classify_a, combined_feasible_with_budget, majority_value, solve_generic_with_budget,
    solve_liar_abstract_with_budget, MajorityPosition, DEFAULT_BUDGET,
};
use crate::strategies::{ExtendedSpider, LiarCombined, ModifiedKnightHunt, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Theorem5,
    Atable,
    Conjecture,
    CrossSolver,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Theorem1,
        Check::Theorem2,
        Check::Theorem3,
        Check::Theorem4,
        Check::Theorem5,
        Check::Atable,
        Check::Conjecture,
        Check::CrossSolver,
    ];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Theorem1 => "theorem1",
            Check::Theorem2 => "theorem2",
            Check::Theorem3 => "theorem3",
            Check::Theorem4 => "theorem4",
            Check::Theorem5 => "theorem5",
            Check::Atable => "atable",
            Check::Conjecture => "conjecture",
            Check::CrossSolver => "cross-solver",
        })
    }
}

impl FromStr for Check {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| GameError::Parse(format!("unknown check {s:?}")))
    }
}

/// Range limits. `None` uses the defaults listed on each suite.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub n_max: Option<usize>,
    pub k_max: Option<usize>,
    pub budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: None, k_max: None, budget: DEFAULT_BUDGET }
    }
}

impl VerifyConfig {
    fn n(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub check: String,
    /// `solver`, `strategy:<name>`, `policy:<name>`, `feasible` or `sweep`.
    pub method: String,
    pub n: usize,
    pub k: usize,
    /// Absent for majority-game rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<SpyModel>,
    pub spy_known: bool,
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

pub fn all_passed(rows: &[Row]) -> bool {
    rows.iter().all(|r| r.pass)
}

pub fn write_report<W: Write>(rows: &[Row], mut w: W) -> std::io::Result<()> {
    for r in rows {
        writeln!(w, "{}", serde_json::to_string(r).expect("rows serialise"))?;
    }
    Ok(())
}

struct Cell<'a> {
    check: Check,
    method: &'a str,
    params: GameParams,
}

impl Cell<'_> {
    fn row(&self, quantity: impl fmt::Display, expected: String, computed: String, pass: bool) -> Row {
        Row {
            check: self.check.to_string(),
            method: self.method.to_string(),
            n: self.params.n,
            k: self.params.k,
            model: Some(self.params.model),
            spy_known: self.params.spy_known,
            quantity: quantity.to_string(),
            expected,
            computed,
            pass,
        }
    }

    fn exact<E: fmt::Display>(&self, quantity: impl fmt::Display, want: usize, got: Result<usize, E>) -> Row {
        match got {
            Ok(v) => self.row(quantity, format!("={want}"), v.to_string(), v == want),
            Err(e) => self.row(quantity, format!("={want}"), format!("error: {e}"), false),
        }
    }

    fn at_least<E: fmt::Display>(
        &self,
        quantity: impl fmt::Display,
        want: usize,
        got: Result<Option<usize>, E>,
    ) -> Row {
        match got {
            Ok(Some(v)) => self.row(quantity, format!(">={want}"), v.to_string(), v >= want),
            Ok(None) => self.row(quantity, format!(">={want}"), format!(">{want}"), true),
            Err(e) => self.row(quantity, format!(">={want}"), format!("error: {e}"), false),
        }
    }

    fn flag<E: fmt::Display>(&self, quantity: impl fmt::Display, want: bool, got: Result<bool, E>) -> Row {
        match got {
            Ok(v) => self.row(quantity, want.to_string(), v.to_string(), v == want),
            Err(e) => self.row(quantity, want.to_string(), format!("error: {e}"), false),
        }
    }

    /// Worst case of `strategy` over every consistent answer sequence, one row
    /// per `(objective, deadline)`.
    fn sweep(&self, strategy: &dyn Strategy, targets: &[(Objective, usize)]) -> Vec<Row> {
        let objectives: Vec<Objective> = targets.iter().map(|t| t.0).collect();
        match worst_case(strategy, &self.params, &objectives) {
            Ok(wc) => targets
                .iter()
                .zip(&wc.max)
                .map(|(&(o, d), got)| match got {
                    Some(v) => self.row(o, format!("<={d}"), v.to_string(), *v <= d),
                    None => self.row(o, format!("<={d}"), "never".into(), false),
                })
                .collect(),
            Err(e) => targets
                .iter()
                .map(|&(o, d)| self.row(o, format!("<={d}"), format!("error: {}", e.error), false))
                .collect(),
        }
    }

    fn policy<P: Policy>(&self, policy: &P, objective: Objective, want: usize, budget: u64) -> Row {
        self.at_least(objective, want, policy_value(policy, &self.params, objective, want, budget))
    }
}

fn plain(check: Check, n: usize, k: usize, quantity: String, expected: usize, computed: Result<usize, String>) -> Row {
    let (computed, pass) = match computed {
        Ok(v) => (v.to_string(), v == expected),
        Err(e) => (format!("error: {e}"), false),
    };
    Row {
        check: check.to_string(),
        method: "sweep".into(),
        n,
        k,
        model: None,
        spy_known: false,
        quantity,
        expected: format!("={expected}"),
        computed,
        pass,
    }
}

fn liar(n: usize, k: usize, spy_known: bool) -> GameParams {
    GameParams::liar(n, k).expect("valid pair").with_spy_known(spy_known)
}

fn unconstrained(n: usize, k: usize, spy_known: bool) -> GameParams {
    GameParams::unconstrained(n, k).expect("valid pair").with_spy_known(spy_known)
}

fn spy_target(params: &GameParams) -> (Objective, usize) {
    let (n, k) = (params.n, params.k);
    match (params.model, params.spy_known) {
        (SpyModel::Liar, true) => (Objective::FindSpy, liar_spy_targets(n, k).spy),
        (SpyModel::Liar, false) => (Objective::FindSpyOrAllKnights, liar_spy_targets(n, k).all),
        (SpyModel::Unconstrained, true) => (Objective::FindSpy, n - 1),
        (SpyModel::Unconstrained, false) => (Objective::FindSpyOrAllKnights, n),
    }
}

fn pairs(n_max: usize) -> Vec<(usize, usize)> {
    GameParams::all_pairs(3, n_max)
}

fn run_cells<T: Sync>(items: Vec<T>, f: impl Fn(&T) -> Vec<Row> + Sync + Send) -> Vec<Row> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

/// Runs one suite.
///
/// Defaults: solver ranges `n <= 10` (liar) and `n <= 7` (unconstrained);
/// strategy sweeps `n <= 12` (liar) and `n <= 8` (unconstrained); policy
/// searches `n <= 9` (liar) and `n <= 7` (unconstrained); `atable` to 13;
/// `conjecture` to `k = 8`; `cross-solver` to 7. `n_max` replaces every
/// default of the suite.
pub fn run_check(check: Check, cfg: &VerifyConfig) -> Vec<Row> {
    let budget = cfg.budget;
    match check {
        Check::Theorem1 => {
            let mut rows = run_cells(pairs(cfg.n(10)), |&(n, k)| {
                [false, true]
                    .into_iter()
                    .map(|sk| {
                        let params = liar(n, k, sk);
                        let cell = Cell { check, method: "solver", params };
                        let (o, t) = spy_target(&params);
                        cell.exact(o, t, solve_liar_abstract_with_budget(&params, o, budget))
                    })
                    .collect()
            });
            rows.extend(run_cells(pairs(cfg.n(12)), |&(n, k)| {
                [false, true]
                    .into_iter()
                    .flat_map(|sk| {
                        let params = liar(n, k, sk);
                        Cell { check, method: "strategy:combined", params }.sweep(&LiarCombined, &[spy_target(&params)])
                    })
                    .collect()
            }));
            rows.extend(run_cells(pairs(cfg.n(9)), |&(n, k)| {
                [false, true]
                    .into_iter()
                    .map(|sk| {
                        let params = liar(n, k, sk);
                        let (o, t) = spy_target(&params);
                        Cell { check, method: "policy:liar-lower-bound", params }.policy(&LiarLowerBound, o, t, budget)
                    })
                    .collect()
            }));
            rows
        }
        Check::Theorem2 => {
            let mut rows = run_cells(pairs(cfg.n(7)), |&(n, k)| {
                [false, true]
                    .into_iter()
                    .map(|sk| {
                        let params = unconstrained(n, k, sk);
                        let (o, t) = spy_target(&params);
                        Cell { check, method: "solver", params }.exact(
                            o,
                            t,
                            solve_generic_with_budget(&params, o, budget),
                        )
                    })
                    .collect()
            });
            rows.extend(run_cells(pairs(cfg.n(8)), |&(n, k)| {
                [false, true]
                    .into_iter()
                    .flat_map(|sk| {
                        let params = unconstrained(n, k, sk);
                        Cell { check, method: "strategy:spider", params }
                            .sweep(&ExtendedSpider::default(), &[spy_target(&params)])
                    })
                    .collect()
            }));
            rows.extend(run_cells(pairs(cfg.n(7)), |&(n, k)| {
                [false, true]
                    .into_iter()
                    .map(|sk| {
                        let params = unconstrained(n, k, sk);
                        let (o, t) = spy_target(&params);
                        Cell { check, method: "policy:unconstrained-lower-bound", params }.policy(
                            &UnconstrainedLowerBound,
                            o,
                            t,
                            budget,
                        )
                    })
                    .collect()
            }));
            rows
        }
        Check::Theorem3 => {
            let person = Objective::IdentityOfPerson(1);
            let mut rows = run_cells(pairs(cfg.n(10)), |&(n, k)| {
                let t = identity_targets(n, k);
                let open = liar(n, k, false);
                let known = liar(n, k, true);
                let solve = |p: &GameParams, o| solve_liar_abstract_with_budget(p, o, budget);
                let cell = Cell { check, method: "solver", params: open };
                let known_cell = Cell { check, method: "solver", params: known };
                vec![
                    cell.exact(Objective::FindKnight, t.knight, solve(&open, Objective::FindKnight)),
                    cell.exact(Objective::AnyIdentity, t.any, solve(&open, Objective::AnyIdentity)),
                    cell.exact(person, t.person, solve(&open, person)),
                    known_cell.exact(person, t.person_spy_known_liar, solve(&known, person)),
                ]
            });
            rows.extend(run_cells(pairs(cfg.n(7)), |&(n, k)| {
                let t = identity_targets(n, k);
                let open = unconstrained(n, k, false);
                let known = unconstrained(n, k, true);
                let solve = |p: &GameParams, o| solve_generic_with_budget(p, o, budget);
                let cell = Cell { check, method: "solver", params: open };
                let known_cell = Cell { check, method: "solver", params: known };
                vec![
                    cell.exact(Objective::FindKnight, t.knight, solve(&open, Objective::FindKnight)),
                    cell.exact(Objective::AnyIdentity, t.any, solve(&open, Objective::AnyIdentity)),
                    cell.exact(person, t.person, solve(&open, person)),
                    known_cell.exact(person, t.person_spy_known_unconstrained, solve(&known, person)),
                ]
            }));
            rows.extend(run_cells(pairs(cfg.n(9)), |&(n, k)| {
                let params = liar(n, k, false);
                vec![Cell { check, method: "policy:majority-lower-bound", params }.policy(
                    &MajorityLowerBound,
                    person,
                    knight_count(n, k) + 1,
                    budget,
                )]
            }));
            rows
        }
        Check::Theorem4 => run_cells(pairs(cfg.n(12)), |&(n, k)| {
            let kk = knight_count(n, k);
            [false, true]
                .into_iter()
                .flat_map(|sk| {
                    let params = liar(n, k, sk);
                    let targets = [
                        (Objective::FindKnight, kk),
                        (Objective::IdentityOfPerson(1), kk + 1),
                        spy_target(&params),
                        (Objective::AllIdentities, n - 1),
                    ];
                    Cell { check, method: "strategy:combined", params }.sweep(&LiarCombined, &targets)
                })
                .collect()
        }),
        Check::Theorem5 => {
            let mut rows = run_cells(pairs(cfg.n(8)), |&(n, k)| {
                let kk = knight_count(n, k);
                [false, true]
                    .into_iter()
                    .flat_map(|sk| {
                        let params = unconstrained(n, k, sk);
                        let targets = [
                            (Objective::FindKnight, kk + 1),
                            (Objective::IdentityOfPerson(1), kk + 2),
                            spy_target(&params),
                        ];
                        Cell { check, method: "strategy:mbkh", params }.sweep(&ModifiedKnightHunt, &targets)
                    })
                    .collect()
            });
            rows.extend(seven_four(check, budget));
            rows
        }
        Check::Atable => {
            let n_max = cfg.n(13);
            match classify_a(n_max, budget) {
                Ok(classes) => classes
                    .into_iter()
                    .map(|c| {
                        let cell = Cell { check, method: "solver", params: liar(c.n, c.k, false) };
                        let expected = if c.n > A_CLASSIFIED_UP_TO {
                            None
                        } else if LOW_A_PAIRS.contains(&(c.n, c.k)) {
                            Some(c.n - c.q)
                        } else {
                            Some(c.n - c.q + 1)
                        };
                        match expected {
                            Some(e) => cell.exact(Objective::AllIdentities, e, Ok::<_, GameError>(c.value)),
                            None => cell.row(
                                Objective::AllIdentities,
                                format!("{}..{}", c.n - c.q, c.n - c.q + 1),
                                c.value.to_string(),
                                (c.n - c.q..=c.n - c.q + 1).contains(&c.value),
                            ),
                        }
                    })
                    .collect(),
                Err(e) => vec![Cell { check, method: "solver", params: liar(3, 2, false) }.row(
                    Objective::AllIdentities,
                    format!("classified to {n_max}"),
                    format!("error: {e}"),
                    false,
                )],
            }
        }
        Check::Conjecture => {
            let mut rows: Vec<Row> = (1..=10)
                .map(|k| {
                    let n = 2 * k - 1;
                    let want = 2 * (k - 1) - binary_weight(k - 1);
                    let got = majority_value(&MajorityPosition::new(vec![1; n], 1))
                        .map(|v| v.questions)
                        .map_err(|e| e.to_string());
                    plain(check, n, k, "majority-ones".into(), want, got)
                })
                .collect();
            let k_max = cfg.k_max.unwrap_or(8);
            match check_conjecture(k_max) {
                Ok(found) => {
                    rows.extend(found.into_iter().map(|r| {
                        plain(check, 2 * r.k - 1, r.k, format!("conjecture:a={}", r.a), r.expected, Ok(r.value))
                    }))
                }
                Err(e) => rows.push(plain(check, 0, k_max, "conjecture".into(), 0, Err(e.to_string()))),
            }
            rows
        }
        Check::CrossSolver => {
            let objectives = [
                Objective::FindKnight,
                Objective::FindSpy,
                Objective::FindSpyOrAllKnights,
                Objective::AllKnightsProven,
                Objective::IdentityOfPerson(1),
                Objective::AnyIdentity,
                Objective::AllIdentities,
            ];
            run_cells(pairs(cfg.n(7)), |&(n, k)| {
                let mut rows = Vec::new();
                for sk in [false, true] {
                    let params = liar(n, k, sk);
                    let cell = Cell { check, method: "solver", params };
                    for o in objectives {
                        let generic = solve_generic_with_budget(&params, o, budget).map_err(|e| e.to_string());
                        let abstracted = solve_liar_abstract_with_budget(&params, o, budget).map_err(|e| e.to_string());
                        let show = |r: &Result<usize, String>| match r {
                            Ok(v) => v.to_string(),
                            Err(e) => format!("error: {e}"),
                        };
                        rows.push(cell.row(o, show(&generic), show(&abstracted), generic == abstracted));
                    }
                }
                rows
            })
        }
    }
}

/// The seven-person unconstrained game with a spy known: knight by 4 and spy
/// by 6 cannot both be met, and the deadline blocker already holds them off.
fn seven_four(check: Check, budget: u64) -> Vec<Row> {
    let known = unconstrained(7, 4, true);
    let open = unconstrained(7, 4, false);
    let feasible = Cell { check, method: "feasible", params: known };
    let open_cell = Cell { check, method: "feasible", params: open };
    let policy = Cell { check, method: "policy:deadline-blocker", params: known };
    let knight = |d| (Objective::FindKnight, d);
    vec![
        feasible.flag(
            "knight<=4,spy<=6",
            false,
            combined_feasible_with_budget(&known, &[knight(4), (Objective::FindSpy, 6)], budget),
        ),
        feasible.flag(
            "knight<=5,spy<=6",
            true,
            combined_feasible_with_budget(&known, &[knight(5), (Objective::FindSpy, 6)], budget),
        ),
        open_cell.flag(
            "knight<=4,spy-or-all-knights<=7",
            false,
            combined_feasible_with_budget(&open, &[knight(4), (Objective::FindSpyOrAllKnights, 7)], budget),
        ),
        policy.flag(
            "knight<=4,spy<=6",
            false,
            policy_combined_feasible(
                &DeadlineBlocker::default(),
                &known,
                &[knight(4), (Objective::FindSpy, 6)],
                budget,
            ),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.to_string().parse::<Check>().unwrap(), c);
        }
        assert!("theorem6".parse::<Check>().is_err());
    }

    #[test]
    fn small_liar_suite_passes() {
        let cfg = VerifyConfig { n_max: Some(6), ..Default::default() };
        let rows = run_check(Check::Theorem1, &cfg);
        assert!(all_passed(&rows), "{rows:#?}");
        assert!(rows.iter().any(|r| r.n == 5 && r.k == 3 && r.spy_known && r.expected == "=4"));
    }

    #[test]
    fn report_is_line_per_row() {
        let cfg = VerifyConfig { n_max: Some(5), ..Default::default() };
        let rows = run_check(Check::CrossSolver, &cfg);
        let mut buf = Vec::new();
        write_report(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), rows.len());
        let back: Row = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(back, rows[0]);
    }
}
