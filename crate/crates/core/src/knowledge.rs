//! What the interrogator can deduce from the answers so far: the consistent
//! set of spy assignments, objectives and claims.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::game::{bit, full_mask, lowest, members, GameParams, Identity, Person, SpyModel, SpySet};
use crate::graph::QuestionGraph;

/// Upper limit on people for explicit consistent sets.
pub const MAX_EXPLICIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    FindKnight,
    FindSpy,
    /// Find a spy or prove that everyone is a knight.
    FindSpyOrAllKnights,
    AllKnightsProven,
    IdentityOfPerson(Person),
    AnyIdentity,
    AllIdentities,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::FindKnight => f.write_str("knight"),
            Objective::FindSpy => f.write_str("spy"),
            Objective::FindSpyOrAllKnights => f.write_str("spy-or-all-knights"),
            Objective::AllKnightsProven => f.write_str("all-knights"),
            Objective::IdentityOfPerson(p) => write!(f, "person:{p}"),
            Objective::AnyIdentity => f.write_str("any"),
            Objective::AllIdentities => f.write_str("all"),
        }
    }
}

impl FromStr for Objective {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("person:") {
            let p = rest.parse().map_err(|_| GameError::Parse(format!("bad person in objective `{s}`")))?;
            return Ok(Objective::IdentityOfPerson(p));
        }
        Ok(match s {
            "knight" => Objective::FindKnight,
            "spy" => Objective::FindSpy,
            "spy-or-all-knights" => Objective::FindSpyOrAllKnights,
            "all-knights" => Objective::AllKnightsProven,
            "any" => Objective::AnyIdentity,
            "all" => Objective::AllIdentities,
            _ => return Err(GameError::Parse(format!("unknown objective `{s}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    KnightIs(Person),
    SpyIs(Person),
    AllKnights,
    PersonIs(Person, Identity),
    FullAssignment(SpySet),
}

impl Claim {
    /// Whether this claim, if valid, completes `objective`.
    pub fn satisfies(&self, objective: Objective) -> bool {
        use Claim::*;
        match objective {
            Objective::FindKnight => {
                matches!(self, KnightIs(_) | PersonIs(_, Identity::Knight) | AllKnights | FullAssignment(_))
            }
            Objective::FindSpy => match self {
                SpyIs(_) | PersonIs(_, Identity::Spy) => true,
                FullAssignment(s) => !s.is_empty(),
                _ => false,
            },
            Objective::FindSpyOrAllKnights => {
                self.satisfies(Objective::FindSpy) || matches!(self, AllKnights | FullAssignment(_))
            }
            Objective::AllKnightsProven => match self {
                AllKnights => true,
                FullAssignment(s) => s.is_empty(),
                _ => false,
            },
            Objective::IdentityOfPerson(p) => match *self {
                KnightIs(q) | SpyIs(q) | PersonIs(q, _) => q == p,
                AllKnights | FullAssignment(_) => true,
            },
            Objective::AnyIdentity => true,
            Objective::AllIdentities => matches!(self, AllKnights | FullAssignment(_)),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::KnightIs(p) => write!(f, "knight {p}"),
            Claim::SpyIs(p) => write!(f, "spy {p}"),
            Claim::AllKnights => f.write_str("all-knights"),
            Claim::PersonIs(p, id) => write!(f, "person {p} {id}"),
            Claim::FullAssignment(s) => write!(f, "assignment {s}"),
        }
    }
}

/// People whose identity is the same in every consistent assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Deduction {
    pub n: usize,
    pub knights: u64,
    pub spies: u64,
}

impl Deduction {
    pub fn identity(&self, p: Person) -> Option<Identity> {
        if self.knights & bit(p) != 0 {
            Some(Identity::Knight)
        } else if self.spies & bit(p) != 0 {
            Some(Identity::Spy)
        } else {
            None
        }
    }

    pub fn known(&self) -> u64 {
        self.knights | self.spies
    }

    pub fn all_known(&self) -> bool {
        self.known() == full_mask(self.n)
    }

    pub fn holds(&self, claim: &Claim) -> bool {
        match *claim {
            Claim::KnightIs(p) => self.knights & bit(p) != 0,
            Claim::SpyIs(p) => self.spies & bit(p) != 0,
            Claim::AllKnights => self.knights == full_mask(self.n),
            Claim::PersonIs(p, id) => self.identity(p) == Some(id),
            Claim::FullAssignment(s) => self.all_known() && self.spies == s.0,
        }
    }

    /// A claim witnessing `objective`, if it is already achieved.
    pub fn witness(&self, objective: Objective) -> Option<Claim> {
        let all = full_mask(self.n);
        match objective {
            Objective::FindKnight => lowest(self.knights).map(Claim::KnightIs),
            Objective::FindSpy => lowest(self.spies).map(Claim::SpyIs),
            Objective::FindSpyOrAllKnights => {
                lowest(self.spies).map(Claim::SpyIs).or_else(|| (self.knights == all).then_some(Claim::AllKnights))
            }
            Objective::AllKnightsProven => (self.knights == all).then_some(Claim::AllKnights),
            Objective::IdentityOfPerson(p) => self.identity(p).map(|id| Claim::PersonIs(p, id)),
            Objective::AnyIdentity => lowest(self.known()).map(|p| Claim::PersonIs(p, self.identity(p).unwrap())),
            Objective::AllIdentities => self.all_known().then_some(Claim::FullAssignment(SpySet(self.spies))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveStatus {
    Achieved(Claim),
    Open,
}

/// Whether `sigma` could have produced every answer in `graph`.
pub fn assignment_consistent(graph: &QuestionGraph, sigma: u64) -> bool {
    graph.edges().iter().all(|&(q, a)| {
        let x_spy = sigma & bit(q.asker) != 0;
        let y_spy = sigma & bit(q.subject) != 0;
        match graph.model() {
            SpyModel::Liar => a.is_accuse() == (x_spy ^ y_spy),
            SpyModel::Unconstrained => x_spy || a.is_accuse() == y_spy,
        }
    })
}

/// Explicit set of spy assignments consistent with the answers so far.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsistentSet {
    n: usize,
    bits: Vec<u64>,
}

impl ConsistentSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, s: SpySet) -> bool {
        let i = s.0 as usize;
        i >> 6 < self.bits.len() && self.bits[i >> 6] & (1 << (i & 63)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = SpySet> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| members(word).map(move |b| SpySet(((w as u64) << 6) | (b as u64 - 1))))
    }

    pub fn deduction(&self) -> Deduction {
        let all = full_mask(self.n);
        let (mut union, mut inter) = (0u64, all);
        for s in self.iter() {
            union |= s.0;
            inter &= s.0;
        }
        Deduction { n: self.n, knights: all & !union, spies: inter }
    }

    pub fn status(&self, objective: Objective) -> ObjectiveStatus {
        objective_status(self, objective)
    }
}

pub fn consistent_assignments(graph: &QuestionGraph, params: &GameParams) -> Result<ConsistentSet, GameError> {
    let n = params.n;
    if n > MAX_EXPLICIT {
        return Err(GameError::TooManyPeople { n, max: MAX_EXPLICIT });
    }
    let size = 1usize << n;
    let mut bits = vec![0u64; size.div_ceil(64)];
    for sigma in 0..size as u64 {
        let spies = sigma.count_ones() as usize;
        if spies < params.min_spies() || spies > params.s() {
            continue;
        }
        if assignment_consistent(graph, sigma) {
            bits[(sigma >> 6) as usize] |= 1 << (sigma & 63);
        }
    }
    Ok(ConsistentSet { n, bits })
}

pub fn objective_status(set: &ConsistentSet, objective: Objective) -> ObjectiveStatus {
    match set.deduction().witness(objective) {
        Some(c) => ObjectiveStatus::Achieved(c),
        None => ObjectiveStatus::Open,
    }
}

/// Sums reachable by choosing one value from each pair, as a bitset.
fn sumset(options: &[(usize, usize)]) -> u128 {
    options.iter().fold(1u128, |acc, &(a, b)| (acc << a) | (acc << b))
}

fn range_mask(lo: usize, hi: usize) -> u128 {
    if lo > hi {
        return 0;
    }
    let upto = |m: usize| if m >= 127 { u128::MAX } else { (1u128 << (m + 1)) - 1 };
    upto(hi) & !(if lo == 0 { 0 } else { upto(lo - 1) })
}

/// For each component given as `(spies if first class are spies, spies otherwise)`,
/// which of the two orientations extend to an assignment with between `lo` and
/// `hi` spies.
pub fn orientation_feasibility(options: &[(usize, usize)], lo: usize, hi: usize) -> Vec<(bool, bool)> {
    let target = range_mask(lo, hi);
    let m = options.len();
    let mut prefix = vec![1u128; m + 1];
    for i in 0..m {
        let (a, b) = options[i];
        prefix[i + 1] = (prefix[i] << a) | (prefix[i] << b);
    }
    let mut suffix = vec![1u128; m + 1];
    for i in (0..m).rev() {
        let (a, b) = options[i];
        suffix[i] = (suffix[i + 1] << a) | (suffix[i + 1] << b);
    }
    (0..m)
        .map(|i| {
            let mut others = 0u128;
            let mut s = suffix[i + 1];
            while s != 0 {
                let b = s.trailing_zeros();
                others |= prefix[i] << b;
                s &= s - 1;
            }
            let (a, b) = options[i];
            ((others << a) & target != 0, (others << b) & target != 0)
        })
        .collect()
}

pub fn liar_feasible(options: &[(usize, usize)], lo: usize, hi: usize) -> bool {
    sumset(options) & range_mask(lo, hi) != 0
}

/// Deduction under liar semantics, computed from the component two-colourings
/// without enumerating assignments.
pub fn liar_deduction(graph: &QuestionGraph, params: &GameParams) -> Result<Deduction, GameError> {
    if graph.model() != SpyModel::Liar {
        return Err(GameError::ModeError);
    }
    let comps = graph.components();
    let classes: Vec<(u64, u64)> = comps
        .iter()
        .map(|&c| {
            let a = graph.class_of(lowest(c).unwrap());
            (a, c & !a)
        })
        .collect();
    let options: Vec<(usize, usize)> =
        classes.iter().map(|&(a, b)| (a.count_ones() as usize, b.count_ones() as usize)).collect();
    let feas = orientation_feasibility(&options, params.min_spies(), params.s());
    let mut d = Deduction { n: params.n, knights: 0, spies: 0 };
    for (&(a, b), &(a_spies, b_spies)) in classes.iter().zip(&feas) {
        match (a_spies, b_spies) {
            (false, false) => return Err(GameError::EmptyConsistentSet),
            (true, false) => {
                d.spies |= a;
                d.knights |= b;
            }
            (false, true) => {
                d.spies |= b;
                d.knights |= a;
            }
            (true, true) => {}
        }
    }
    Ok(d)
}

/// Components whose identities are settled by the weight criterion: with
/// weights summing to `2 * s_resid + e`, where `e = 2k - n`, a component is
/// unambiguous exactly when its weight is at least `s_resid + 1`.
///
/// The criterion ignores the spy-known promise; with that promise more
/// people may be settled than this reports.
pub fn unambiguous_components(graph: &QuestionGraph, params: &GameParams) -> Result<Vec<u64>, GameError> {
    if graph.model() != SpyModel::Liar || params.model != SpyModel::Liar {
        return Err(GameError::ModeError);
    }
    let comps = graph.components();
    let weights: Vec<usize> = comps.iter().map(|&c| graph.sig(lowest(c).unwrap()).unwrap().weight()).collect();
    let total: usize = weights.iter().sum();
    let s_resid = total.saturating_sub(params.excess()) / 2;
    Ok(comps.into_iter().zip(weights).filter(|&(_, w)| w > s_resid).map(|(c, _)| c).collect())
}

/// Whether full knowledge of the room always meets `objective`. A spy can
/// only be found when one is known to be present, and a proof that everyone
/// is a knight is never certain to come.
pub fn objective_reachable(params: &GameParams, objective: Objective) -> bool {
    match objective {
        Objective::FindSpy => params.spy_known,
        Objective::AllKnightsProven => false,
        _ => true,
    }
}

/// Deduction for either model; unconstrained games use an explicit set.
pub fn deduce(graph: &QuestionGraph, params: &GameParams) -> Result<Deduction, GameError> {
    match params.model {
        SpyModel::Liar => liar_deduction(graph, params),
        SpyModel::Unconstrained => {
            let set = consistent_assignments(graph, params)?;
            if set.is_empty() {
                return Err(GameError::EmptyConsistentSet);
            }
            Ok(set.deduction())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Answer, Question};

    fn graph(n: usize, model: SpyModel, edges: &[(u8, u8, Answer)]) -> QuestionGraph {
        let e: Vec<_> = edges.iter().map(|&(x, y, a)| (Question::new(x, y), a)).collect();
        QuestionGraph::from_edges(n, model, &e).unwrap()
    }

    #[test]
    fn empty_graph_knows_nothing() {
        let p = GameParams::liar(5, 3).unwrap();
        let g = QuestionGraph::new(5, SpyModel::Liar);
        let set = consistent_assignments(&g, &p).unwrap();
        assert_eq!(set.len(), 1 + 5 + 10);
        assert_eq!(set.deduction(), Deduction { n: 5, knights: 0, spies: 0 });
        assert_eq!(set.status(Objective::FindKnight), ObjectiveStatus::Open);
        let sk = consistent_assignments(&g, &p.with_spy_known(true)).unwrap();
        assert_eq!(sk.len(), 15);
    }

    #[test]
    fn support_chain_finds_knight() {
        // Three people in one support chain when at most one spy exists.
        let p = GameParams::liar(4, 3).unwrap();
        let g = graph(4, SpyModel::Liar, &[(1, 2, Answer::Support), (2, 3, Answer::Support)]);
        let d = liar_deduction(&g, &p).unwrap();
        assert_eq!(d.knights, 0b0111);
        assert_eq!(d.witness(Objective::FindKnight), Some(Claim::KnightIs(1)));
        assert_eq!(consistent_assignments(&g, &p).unwrap().deduction(), d);
    }

    #[test]
    fn spy_known_identifies_remaining_person() {
        let p = GameParams::liar(3, 2).unwrap().with_spy_known(true);
        let g = graph(3, SpyModel::Liar, &[(1, 2, Answer::Support)]);
        let d = liar_deduction(&g, &p).unwrap();
        assert_eq!((d.knights, d.spies), (0b011, 0b100));
        assert_eq!(d.witness(Objective::AllIdentities), Some(Claim::FullAssignment(SpySet(0b100))));
    }

    #[test]
    fn unconstrained_accusation_is_weaker() {
        let p = GameParams::unconstrained(3, 2).unwrap();
        let g = graph(3, SpyModel::Unconstrained, &[(1, 2, Answer::Accuse)]);
        let set = consistent_assignments(&g, &p).unwrap();
        let sets: Vec<_> = set.iter().map(|s| s.0).collect();
        assert_eq!(sets, vec![0b001, 0b010]);
    }

    #[test]
    fn weight_criterion_examples() {
        // Five people, weights 3, 1, 1.
        let p = GameParams::liar(5, 3).unwrap();
        let g = graph(5, SpyModel::Liar, &[(1, 2, Answer::Support), (2, 3, Answer::Support)]);
        assert_eq!(unambiguous_components(&g, &p).unwrap(), vec![0b00111]);
        let p = GameParams::liar(3, 2).unwrap();
        let g = graph(3, SpyModel::Liar, &[(1, 2, Answer::Support), (1, 3, Answer::Support)]);
        assert_eq!(unambiguous_components(&g, &p).unwrap(), vec![0b111]);
        let p = GameParams::liar(9, 5).unwrap();
        let g = QuestionGraph::new(9, SpyModel::Liar);
        assert!(unambiguous_components(&g, &p).unwrap().is_empty());
        let u = GameParams::unconstrained(5, 3).unwrap();
        let g = QuestionGraph::new(5, SpyModel::Unconstrained);
        assert_eq!(unambiguous_components(&g, &u), Err(GameError::ModeError));
    }

    #[test]
    fn claim_satisfaction() {
        assert!(Claim::SpyIs(2).satisfies(Objective::FindSpyOrAllKnights));
        assert!(Claim::AllKnights.satisfies(Objective::FindSpyOrAllKnights));
        assert!(!Claim::AllKnights.satisfies(Objective::FindSpy));
        assert!(Claim::PersonIs(1, Identity::Spy).satisfies(Objective::IdentityOfPerson(1)));
        assert!(!Claim::KnightIs(2).satisfies(Objective::IdentityOfPerson(1)));
        assert!(Claim::FullAssignment(SpySet(0)).satisfies(Objective::AllKnightsProven));
    }

    #[test]
    fn orientation_dp() {
        // Two components {2|0} and {1|0}, between 1 and 1 spies.
        let f = orientation_feasibility(&[(2, 0), (1, 0)], 1, 1);
        assert_eq!(f, vec![(false, true), (true, false)]);
        assert!(!liar_feasible(&[(2, 0)], 1, 1));
    }

    #[test]
    fn objective_parse_round_trip() {
        for o in [
            Objective::FindKnight,
            Objective::FindSpy,
            Objective::FindSpyOrAllKnights,
            Objective::AllKnightsProven,
            Objective::IdentityOfPerson(3),
            Objective::AnyIdentity,
            Objective::AllIdentities,
        ] {
            assert_eq!(o.to_string().parse::<Objective>().unwrap(), o);
        }
    }
}
