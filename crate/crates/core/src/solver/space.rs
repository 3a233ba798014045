//! Consistent sets as bitsets over an indexed list of legal spy sets.

use std::ops::{BitAnd, BitOr, Not};

use crate::error::SolverError;
use crate::game::{bit, full_mask, Answer, GameParams, Person, Question, SpyModel};
use crate::knowledge::{Deduction, Objective};

const WORDS: usize = 4;
/// Most legal spy sets a space can index.
pub const MAX_ASSIGNMENTS: usize = 64 * WORDS;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(pub [u64; WORDS]);

impl Bits {
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..WORDS).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

impl BitAnd for Bits {
    type Output = Bits;
    fn bitand(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }
}

impl BitOr for Bits {
    type Output = Bits;
    fn bitor(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }
}

impl Not for Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        Bits(std::array::from_fn(|i| !self.0[i]))
    }
}

/// Legal spy sets for one game, with answer-compatibility masks.
#[derive(Clone, Debug)]
pub struct AssignmentSpace {
    pub params: GameParams,
    /// Spy sets by index.
    pub sets: Vec<u64>,
    pub all: Bits,
    /// Indexed by `question_index * 2 + answer`.
    compat: Vec<Bits>,
    /// Per person, the sets containing them.
    spy: Vec<Bits>,
    empty: Option<usize>,
}

impl AssignmentSpace {
    pub fn new(params: &GameParams) -> Result<Self, SolverError> {
        let n = params.n;
        if n > 16 {
            return Err(SolverError::Unsupported(format!("{n} people is too many to enumerate")));
        }
        let sets: Vec<u64> = (0..=full_mask(n))
            .filter(|m| (params.min_spies()..=params.s()).contains(&(m.count_ones() as usize)))
            .collect();
        if sets.len() > MAX_ASSIGNMENTS {
            return Err(SolverError::Unsupported(format!(
                "{} legal spy sets exceed the limit of {MAX_ASSIGNMENTS}",
                sets.len()
            )));
        }
        let mut all = Bits::default();
        (0..sets.len()).for_each(|i| all.set(i));
        let mut spy = vec![Bits::default(); n + 1];
        for (i, &m) in sets.iter().enumerate() {
            for (p, bits) in spy.iter_mut().enumerate().skip(1) {
                if m & bit(p as Person) != 0 {
                    bits.set(i);
                }
            }
        }
        let mut compat = vec![Bits::default(); n * n * 2];
        for x in 1..=n as Person {
            for y in 1..=n as Person {
                if x == y {
                    continue;
                }
                for (i, &m) in sets.iter().enumerate() {
                    let (xs, ys) = (m & bit(x) != 0, m & bit(y) != 0);
                    for a in [Answer::Support, Answer::Accuse] {
                        let ok = match params.model {
                            SpyModel::Liar => a.is_accuse() == (xs != ys),
                            SpyModel::Unconstrained => xs || a.is_accuse() == ys,
                        };
                        if ok {
                            let idx = Self::slot(n, Question::new(x, y), a);
                            compat[idx].set(i);
                        }
                    }
                }
            }
        }
        let empty = sets.iter().position(|&m| m == 0);
        Ok(AssignmentSpace { params: *params, sets, all, compat, spy, empty })
    }

    fn slot(n: usize, q: Question, a: Answer) -> usize {
        ((q.asker as usize - 1) * n + q.subject as usize - 1) * 2 + a.is_accuse() as usize
    }

    pub fn after(&self, s: Bits, q: Question, a: Answer) -> Bits {
        s & self.compat[Self::slot(self.params.n, q, a)]
    }

    pub fn spies_of(&self, p: Person) -> Bits {
        self.spy[p as usize]
    }

    pub fn deduction(&self, s: Bits) -> Deduction {
        let mut d = Deduction { n: self.params.n, knights: 0, spies: 0 };
        for p in 1..=self.params.n as Person {
            let sp = self.spy[p as usize];
            if (s & sp).is_empty() {
                d.knights |= bit(p);
            } else if (s & !sp).is_empty() {
                d.spies |= bit(p);
            }
        }
        d
    }

    pub fn achieved(&self, s: Bits, objective: Objective) -> bool {
        let knight = |p: Person| (s & self.spy[p as usize]).is_empty();
        let spy = |p: Person| (s & !self.spy[p as usize]).is_empty();
        let people = || 1..=self.params.n as Person;
        let all_knights = || self.empty.is_some_and(|e| s.count() == 1 && s.get(e));
        match objective {
            Objective::FindKnight => people().any(knight),
            Objective::FindSpy => people().any(spy),
            Objective::FindSpyOrAllKnights => people().any(spy) || all_knights(),
            Objective::AllKnightsProven => all_knights(),
            Objective::IdentityOfPerson(p) => knight(p) || spy(p),
            Objective::AnyIdentity => people().any(|p| knight(p) || spy(p)),
            Objective::AllIdentities => s.count() == 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::SpySet;
    use crate::graph::QuestionGraph;
    use crate::knowledge::consistent_assignments;

    #[test]
    fn matches_explicit_sets() {
        let params = GameParams::unconstrained(5, 3).unwrap().with_spy_known(true);
        let space = AssignmentSpace::new(&params).unwrap();
        let qs = [(1, 2, Answer::Support), (2, 3, Answer::Accuse), (4, 1, Answer::Support)];
        let mut s = space.all;
        let mut g = QuestionGraph::new(5, params.model);
        for (x, y, a) in qs {
            s = space.after(s, Question::new(x, y), a);
            g.apply_answer(Question::new(x, y), a).unwrap();
        }
        let explicit: Vec<u64> = consistent_assignments(&g, &params).unwrap().iter().map(|m: SpySet| m.0).collect();
        let mine: Vec<u64> = s.ones().map(|i| space.sets[i]).collect();
        assert_eq!(mine, explicit);
        assert_eq!(space.deduction(s), consistent_assignments(&g, &params).unwrap().deduction());
    }
}
