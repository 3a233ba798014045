//! Minimax over consistent sets. Works for both spy models.

use std::collections::HashMap;

use crate::error::SolverError;
use crate::game::{bit, members, Answer, GameParams, Person, Question};
use crate::knowledge::{objective_reachable, Objective};

use super::space::{AssignmentSpace, Bits};

/// Default cap on expanded positions.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Optimal worst-case number of questions to reach `objective`.
pub fn solve_generic(params: &GameParams, objective: Objective) -> Result<usize, SolverError> {
    solve_generic_with_budget(params, objective, DEFAULT_BUDGET)
}

pub fn solve_generic_with_budget(params: &GameParams, objective: Objective, budget: u64) -> Result<usize, SolverError> {
    if !objective_reachable(params, objective) {
        return Err(SolverError::Unreachable(objective.to_string()));
    }
    let mut solver = Generic::new(params, &[objective], budget)?;
    let start = solver.space.all;
    let fresh = solver.fresh;
    (0..=params.n * params.n)
        .find_map(|b| match solver.within(start, fresh, b as u32) {
            Ok(true) => Some(Ok(b)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .unwrap_or(Err(SolverError::BudgetExceeded(budget)))
}

/// Whether one strategy meets every `(objective, deadline)` pair against
/// every consistent answer sequence.
pub fn combined_feasible(params: &GameParams, requirements: &[(Objective, usize)]) -> Result<bool, SolverError> {
    combined_feasible_with_budget(params, requirements, DEFAULT_BUDGET)
}

pub fn combined_feasible_with_budget(
    params: &GameParams,
    requirements: &[(Objective, usize)],
    budget: u64,
) -> Result<bool, SolverError> {
    if requirements.len() > 8 {
        return Err(SolverError::Unsupported("at most eight requirements".into()));
    }
    let objectives: Vec<Objective> = requirements.iter().map(|r| r.0).collect();
    let mut solver = Generic::new(params, &objectives, budget)?;
    let deadlines: Vec<usize> = requirements.iter().map(|r| r.1).collect();
    let start = solver.space.all;
    let fresh = solver.fresh;
    let mut memo = HashMap::new();
    solver.feasible(start, fresh, 0, 0, &deadlines, &mut memo)
}

struct Generic {
    space: AssignmentSpace,
    objectives: Vec<Objective>,
    fresh: u64,
    /// Per position: `(lower, upper)` bounds on the value.
    memo: HashMap<Bits, (u32, u32)>,
    nodes: u64,
    budget: u64,
}

impl Generic {
    fn new(params: &GameParams, objectives: &[Objective], budget: u64) -> Result<Self, SolverError> {
        let space = AssignmentSpace::new(params)?;
        let mut fresh = params.everyone();
        for o in objectives {
            if let Objective::IdentityOfPerson(p) = o {
                fresh &= !bit(*p);
            }
        }
        Ok(Generic { space, objectives: objectives.to_vec(), fresh, memo: HashMap::new(), nodes: 0, budget })
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Questions up to relabelling of people never involved so far.
    fn questions(&self, fresh: u64) -> Vec<Question> {
        let mut f = members(fresh);
        let (f1, f2) = (f.next(), f.next());
        let mut reps: Vec<Person> = members(self.space.params.everyone() & !fresh).collect();
        reps.extend(f1);
        reps.extend(f2);
        let mut out = Vec::new();
        for &x in &reps {
            for &y in &reps {
                let uses_f2 = f2.is_some() && (x == f2.unwrap() || y == f2.unwrap());
                let uses_f1 = f1.is_some() && (x == f1.unwrap() || y == f1.unwrap());
                if x != y && (!uses_f2 || uses_f1) {
                    out.push(Question::new(x, y));
                }
            }
        }
        out
    }

    /// Informative questions and their children, most balanced first.
    fn moves(&self, s: Bits, fresh: u64) -> Vec<(Question, Vec<Bits>)> {
        let mut moves: Vec<(usize, Question, Vec<Bits>)> = Vec::new();
        for q in self.questions(fresh) {
            let kids: Vec<Bits> = [Answer::Support, Answer::Accuse]
                .into_iter()
                .map(|a| self.space.after(s, q, a))
                .filter(|c| !c.is_empty())
                .collect();
            if kids.contains(&s) {
                continue;
            }
            let worst = kids.iter().map(|c| c.count()).max().unwrap_or(0);
            moves.push((worst, q, kids));
        }
        moves.sort_by_key(|m| m.0);
        moves.into_iter().map(|(_, q, k)| (q, k)).collect()
    }

    fn within(&mut self, s: Bits, fresh: u64, b: u32) -> Result<bool, SolverError> {
        if self.space.achieved(s, self.objectives[0]) {
            return Ok(true);
        }
        if b == 0 {
            return Ok(false);
        }
        let (lo, hi) = self.memo.get(&s).copied().unwrap_or((1, u32::MAX));
        if b < lo {
            return Ok(false);
        }
        if b >= hi {
            return Ok(true);
        }
        self.tick()?;
        for (q, kids) in self.moves(s, fresh) {
            let f = fresh & !bit(q.asker) & !bit(q.subject);
            let mut ok = true;
            for c in kids {
                if !self.within(c, f, b - 1)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                let e = self.memo.entry(s).or_insert((1, u32::MAX));
                e.1 = e.1.min(b);
                return Ok(true);
            }
        }
        let e = self.memo.entry(s).or_insert((1, u32::MAX));
        e.0 = e.0.max(b + 1);
        Ok(false)
    }

    fn feasible(
        &mut self,
        s: Bits,
        fresh: u64,
        mut done: u8,
        t: usize,
        deadlines: &[usize],
        memo: &mut HashMap<(Bits, u8, usize), bool>,
    ) -> Result<bool, SolverError> {
        for (i, &o) in self.objectives.iter().enumerate() {
            if done & (1 << i) == 0 && self.space.achieved(s, o) {
                done |= 1 << i;
            }
        }
        let all = (1u8 << deadlines.len()) - 1;
        if done == all {
            return Ok(true);
        }
        if deadlines.iter().enumerate().any(|(i, &d)| done & (1 << i) == 0 && d <= t) {
            return Ok(false);
        }
        if let Some(&v) = memo.get(&(s, done, t)) {
            return Ok(v);
        }
        self.tick()?;
        let mut result = false;
        for (q, kids) in self.moves(s, fresh) {
            let f = fresh & !bit(q.asker) & !bit(q.subject);
            let mut ok = true;
            for c in kids {
                if !self.feasible(c, f, done, t + 1, deadlines, memo)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                result = true;
                break;
            }
        }
        memo.insert((s, done, t), result);
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::SpyModel;

    #[test]
    fn five_people_liar_spy() {
        let p = GameParams::liar(5, 3).unwrap().with_spy_known(true);
        assert_eq!(solve_generic(&p, Objective::FindSpy).unwrap(), 4);
        assert_eq!(solve_generic(&p.with_spy_known(false), Objective::FindKnight).unwrap(), 3);
    }

    #[test]
    fn four_people_unconstrained_spy() {
        let p = GameParams::new(4, 3, SpyModel::Unconstrained, true).unwrap();
        assert_eq!(solve_generic(&p, Objective::FindSpy).unwrap(), 3);
    }

    #[test]
    fn three_people_deadlines() {
        let p = GameParams::liar(3, 2).unwrap();
        assert!(combined_feasible(&p, &[(Objective::FindKnight, 1), (Objective::FindSpyOrAllKnights, 3)]).unwrap());
        assert!(!combined_feasible(&p, &[(Objective::FindKnight, 0)]).unwrap());
    }
}
