//! Minimax for liar spies over component class sizes.
//!
//! Under liar semantics a position is determined, up to relabelling, by the
//! multiset of class-size pairs `(y, z)` of its components. A question joining
//! two components lets the spy master pick either relative orientation of
//! their classes; questions inside a component carry no information and are
//! never considered. For objectives about one person, that person's component
//! is kept apart together with the size of their own class.

use std::collections::HashMap;

use crate::error::SolverError;
use crate::game::{GameParams, SpyModel};
use crate::knowledge::{liar_feasible, objective_reachable, orientation_feasibility, Objective};

use super::generic::DEFAULT_BUDGET;

/// Component class sizes, larger class first.
pub type Sig = (u8, u8);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractState {
    /// Sorted signatures of the ordinary components.
    pub sigs: Vec<Sig>,
    /// The tracked person's component: own class size, other class size.
    pub tracked: Option<(u8, u8)>,
}

impl AbstractState {
    pub fn start(params: &GameParams, track: bool) -> Self {
        let others = if track { params.n - 1 } else { params.n };
        AbstractState { sigs: vec![(1, 0); others], tracked: track.then_some((1, 0)) }
    }

    /// Spy counts per component for the two orientations: larger (or own)
    /// class spies, other class spies. The tracked component comes last.
    fn options(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.sigs.iter().map(|&(y, z)| (y as usize, z as usize)).collect();
        if let Some((a, b)) = self.tracked {
            v.push((a as usize, b as usize));
        }
        v
    }

    fn normalized(mut self) -> Self {
        self.sigs.sort_unstable();
        self
    }

    /// Both outcomes of joining components `i < j`, where index
    /// `sigs.len()` stands for the tracked component.
    fn join(&self, i: usize, j: usize) -> [AbstractState; 2] {
        let m = self.sigs.len();
        let rest: Vec<Sig> = self.sigs.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, &s)| s).collect();
        let a = if j == m { self.tracked.unwrap() } else { self.sigs[j] };
        let b = self.sigs[i];
        [(a.0 + b.0, a.1 + b.1), (a.0 + b.1, a.1 + b.0)].map(|(x, y)| {
            if j == m {
                AbstractState { sigs: rest.clone(), tracked: Some((x, y)) }
            } else {
                let mut sigs = rest.clone();
                sigs.push((x.max(y), x.min(y)));
                AbstractState { sigs, tracked: self.tracked }.normalized()
            }
        })
    }
}

/// Which objectives are met in a position.
#[derive(Clone, Debug)]
pub struct LiarJudge {
    lo: usize,
    hi: usize,
}

impl LiarJudge {
    pub fn new(params: &GameParams) -> Self {
        LiarJudge { lo: params.min_spies(), hi: params.s() }
    }

    pub fn consistent(&self, st: &AbstractState) -> bool {
        liar_feasible(&st.options(), self.lo, self.hi)
    }

    pub fn achieved(&self, st: &AbstractState, objective: Objective) -> bool {
        let opts = st.options();
        let feas = orientation_feasibility(&opts, self.lo, self.hi);
        let fixed = |&(a, b): &(bool, bool)| a != b;
        // A settled component with its spy class nonempty.
        let spy_in = |i: usize| {
            let (a, b) = feas[i];
            (a && !b && opts[i].0 > 0) || (b && !a && opts[i].1 > 0)
        };
        let all_knights = || feas.iter().zip(&opts).all(|(&(a, b), &(_, z))| !a && b && z == 0);
        match objective {
            Objective::FindKnight | Objective::AnyIdentity => feas.iter().any(fixed),
            Objective::FindSpy => (0..opts.len()).any(spy_in),
            Objective::FindSpyOrAllKnights => (0..opts.len()).any(spy_in) || all_knights(),
            Objective::AllKnightsProven => all_knights(),
            Objective::IdentityOfPerson(_) => st.tracked.is_some() && fixed(feas.last().unwrap()),
            Objective::AllIdentities => feas.iter().all(fixed),
        }
    }
}

/// Optimal worst-case question count for a liar game.
pub fn solve_liar_abstract(params: &GameParams, objective: Objective) -> Result<usize, SolverError> {
    solve_liar_abstract_with_budget(params, objective, DEFAULT_BUDGET)
}

pub fn solve_liar_abstract_with_budget(
    params: &GameParams,
    objective: Objective,
    budget: u64,
) -> Result<usize, SolverError> {
    if params.model != SpyModel::Liar {
        return Err(SolverError::Unsupported("abstract solver needs liar semantics".into()));
    }
    if !objective_reachable(params, objective) {
        return Err(SolverError::Unreachable(objective.to_string()));
    }
    let track = matches!(objective, Objective::IdentityOfPerson(_));
    let mut solver = LiarSolver { judge: LiarJudge::new(params), objective, memo: HashMap::new(), nodes: 0, budget };
    let start = AbstractState::start(params, track);
    for b in 0..=params.n as u32 {
        if solver.within(&start, b)? {
            return Ok(b as usize);
        }
    }
    Err(SolverError::BudgetExceeded(budget))
}

struct LiarSolver {
    judge: LiarJudge,
    objective: Objective,
    memo: HashMap<AbstractState, (u32, u32)>,
    nodes: u64,
    budget: u64,
}

impl LiarSolver {
    fn moves(&self, st: &AbstractState) -> Vec<Vec<AbstractState>> {
        let m = st.sigs.len();
        let total = m + st.tracked.is_some() as usize;
        let mut out = Vec::new();
        for i in 0..total {
            if i < m && i > 0 && st.sigs[i] == st.sigs[i - 1] {
                continue;
            }
            for j in i + 1..total {
                if j < m && j > i + 1 && st.sigs[j] == st.sigs[j - 1] {
                    continue;
                }
                let kids: Vec<AbstractState> = st.join(i, j).into_iter().filter(|c| self.judge.consistent(c)).collect();
                let mut uniq = kids;
                uniq.dedup();
                out.push(uniq);
            }
        }
        out
    }

    fn within(&mut self, st: &AbstractState, b: u32) -> Result<bool, SolverError> {
        if self.judge.achieved(st, self.objective) {
            return Ok(true);
        }
        if b == 0 {
            return Ok(false);
        }
        let (lo, hi) = self.memo.get(st).copied().unwrap_or((1, u32::MAX));
        if b < lo {
            return Ok(false);
        }
        if b >= hi {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::BudgetExceeded(self.budget));
        }
        for kids in self.moves(st) {
            let mut ok = true;
            for c in &kids {
                if !self.within(c, b - 1)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                let e = self.memo.entry(st.clone()).or_insert((1, u32::MAX));
                e.1 = e.1.min(b);
                return Ok(true);
            }
        }
        let e = self.memo.entry(st.clone()).or_insert((1, u32::MAX));
        e.0 = e.0.max(b + 1);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_people() {
        let p = GameParams::liar(9, 5).unwrap().with_spy_known(true);
        assert_eq!(solve_liar_abstract(&p, Objective::FindSpy).unwrap(), 7);
        assert_eq!(solve_liar_abstract(&p, Objective::IdentityOfPerson(1)).unwrap(), 7);
    }

    #[test]
    fn eight_people_spy_or_all_knights() {
        let p = GameParams::liar(8, 5).unwrap();
        assert_eq!(solve_liar_abstract(&p, Objective::FindSpyOrAllKnights).unwrap(), 7);
    }

    #[test]
    fn tracked_join_keeps_own_class() {
        let st = AbstractState { sigs: vec![(2, 1)], tracked: Some((1, 0)) };
        let [same, cross] = st.join(0, 1);
        assert_eq!(same.tracked, Some((3, 1)));
        assert_eq!(cross.tracked, Some((2, 2)));
    }
}
