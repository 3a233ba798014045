//! The question graph: one directed edge per answered question, plus the
//! two-colouring of each component induced by liar semantics.

use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::game::{bit, lowest, members, Answer, Person, Question, SpyModel};

/// Class sizes of a component, larger first, and whether it contains an accusation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentSig {
    pub y: usize,
    pub z: usize,
    pub accusatory: bool,
}

impl ComponentSig {
    pub fn weight(&self) -> usize {
        self.y - self.z
    }
}

#[derive(Clone, Debug)]
pub struct QuestionGraph {
    n: usize,
    model: SpyModel,
    edges: Vec<(Question, Answer)>,
    asked: Vec<u64>,
    root: Vec<Person>,
    // The following are meaningful at roots only.
    comp: Vec<u64>,
    // Members in the same liar class as the root.
    even: Vec<u64>,
    accusatory: Vec<bool>,
    // Unconstrained answers can break the two-colouring.
    broken: Vec<bool>,
}

impl QuestionGraph {
    pub fn new(n: usize, model: SpyModel) -> Self {
        let mut root = vec![0; n + 1];
        let mut comp = vec![0; n + 1];
        for p in 1..=n {
            root[p] = p as Person;
            comp[p] = bit(p as Person);
        }
        QuestionGraph {
            n,
            model,
            edges: Vec::new(),
            asked: vec![0; n + 1],
            root,
            even: comp.clone(),
            comp,
            accusatory: vec![false; n + 1],
            broken: vec![false; n + 1],
        }
    }

    pub fn from_edges(n: usize, model: SpyModel, edges: &[(Question, Answer)]) -> Result<Self, GameError> {
        let mut g = QuestionGraph::new(n, model);
        for &(q, a) in edges {
            g.apply_answer(q, a)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> SpyModel {
        self.model
    }

    pub fn edges(&self) -> &[(Question, Answer)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_asked(&self, q: Question) -> bool {
        self.asked[q.asker as usize] & bit(q.subject) != 0
    }

    /// Checks a question without recording it.
    pub fn check_question(&self, q: Question) -> Result<(), GameError> {
        for p in [q.asker, q.subject] {
            if p == 0 || p as usize > self.n {
                return Err(GameError::NoSuchPerson(p));
            }
        }
        if q.asker == q.subject {
            return Err(GameError::SelfQuestion(q));
        }
        if self.has_asked(q) {
            return Err(GameError::DuplicateQuestion(q));
        }
        Ok(())
    }

    /// Whether `a` is compatible with the liar two-colouring.
    pub fn liar_compatible(&self, q: Question, a: Answer) -> bool {
        match self.same_class(q.asker, q.subject) {
            Some(same) => same == (a == Answer::Support),
            None => true,
        }
    }

    pub fn apply_answer(&mut self, q: Question, a: Answer) -> Result<(), GameError> {
        self.check_question(q)?;
        let (x, y) = (q.asker, q.subject);
        let (rx, ry) = (self.find(x), self.find(y));
        let px = self.parity(x);
        let py = self.parity(y);
        if rx == ry {
            if px ^ py != a.is_accuse() {
                if self.model == SpyModel::Liar {
                    return Err(GameError::ContradictoryAnswer(q));
                }
                self.broken[rx as usize] = true;
            }
        } else {
            let (big, small) = if self.comp[rx as usize].count_ones() >= self.comp[ry as usize].count_ones() {
                (rx as usize, ry as usize)
            } else {
                (ry as usize, rx as usize)
            };
            // Parity of the small root relative to the big root.
            let flip = px ^ py ^ a.is_accuse();
            let small_even = if flip { self.comp[small] & !self.even[small] } else { self.even[small] };
            self.even[big] |= small_even;
            self.comp[big] |= self.comp[small];
            self.accusatory[big] |= self.accusatory[small];
            self.broken[big] |= self.broken[small];
            for p in members(self.comp[small]) {
                self.root[p as usize] = big as Person;
            }
        }
        let r = self.find(x) as usize;
        if a.is_accuse() {
            self.accusatory[r] = true;
        }
        self.asked[x as usize] |= bit(y);
        self.edges.push((q, a));
        Ok(())
    }

    pub fn with_answer(&self, q: Question, a: Answer) -> Result<Self, GameError> {
        let mut g = self.clone();
        g.apply_answer(q, a)?;
        Ok(g)
    }

    fn find(&self, p: Person) -> Person {
        self.root[p as usize]
    }

    // true when `p` is in the opposite class to its root.
    fn parity(&self, p: Person) -> bool {
        let r = self.find(p) as usize;
        self.even[r] & bit(p) == 0
    }

    pub fn component_id(&self, p: Person) -> Person {
        self.find(p)
    }

    pub fn component(&self, p: Person) -> u64 {
        self.comp[self.find(p) as usize]
    }

    pub fn same_component(&self, a: Person, b: Person) -> bool {
        self.find(a) == self.find(b)
    }

    /// Whether `a` and `b` are in the same liar class, if they share a component
    /// whose colouring is intact.
    pub fn same_class(&self, a: Person, b: Person) -> Option<bool> {
        let r = self.find(a);
        if r != self.find(b) || self.broken[r as usize] {
            return None;
        }
        Some(self.parity(a) == self.parity(b))
    }

    /// Members of `p`'s component in `p`'s liar class.
    pub fn class_of(&self, p: Person) -> u64 {
        let r = self.find(p) as usize;
        if self.parity(p) {
            self.comp[r] & !self.even[r]
        } else {
            self.even[r]
        }
    }

    pub fn is_accusatory(&self, p: Person) -> bool {
        self.accusatory[self.find(p) as usize]
    }

    pub fn parity_intact(&self, p: Person) -> bool {
        !self.broken[self.find(p) as usize]
    }

    pub fn sig(&self, p: Person) -> Option<ComponentSig> {
        let r = self.find(p) as usize;
        if self.broken[r] {
            return None;
        }
        let a = self.even[r].count_ones() as usize;
        let b = self.comp[r].count_ones() as usize - a;
        Some(ComponentSig { y: a.max(b), z: a.min(b), accusatory: self.accusatory[r] })
    }

    /// The larger liar class of `p`'s component (ties go to the class of the
    /// component's lowest member).
    pub fn larger_class(&self, p: Person) -> u64 {
        let comp = self.component(p);
        let first = lowest(comp).unwrap();
        let c1 = self.class_of(first);
        let c2 = comp & !c1;
        if c2.count_ones() > c1.count_ones() {
            c2
        } else {
            c1
        }
    }

    /// Component masks ordered by lowest member.
    pub fn components(&self) -> Vec<u64> {
        let mut out: Vec<u64> =
            (1..=self.n as Person).filter(|&p| self.find(p) == p).map(|p| self.comp[p as usize]).collect();
        out.sort_by_key(|m| m.trailing_zeros());
        out
    }

    pub fn component_count(&self) -> usize {
        (1..=self.n as Person).filter(|&p| self.find(p) == p).count()
    }

    pub fn in_degree(&self, p: Person) -> usize {
        self.edges.iter().filter(|(q, _)| q.subject == p).count()
    }

    pub fn out_degree(&self, p: Person) -> usize {
        self.asked[p as usize].count_ones() as usize
    }
}

/// Weight of the component formed by joining components of weights `c >= c2`.
pub fn merge_weight(c: u32, c2: u32, answer: Answer) -> Result<u32, GameError> {
    if c < c2 {
        return Err(GameError::WeightOrder { c, c2 });
    }
    Ok(match answer {
        Answer::Support => c + c2,
        Answer::Accuse => c - c2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: Person, b: Person) -> Question {
        Question::new(a, b)
    }

    #[test]
    fn classes_follow_answers() {
        let mut g = QuestionGraph::new(5, SpyModel::Liar);
        g.apply_answer(q(1, 2), Answer::Support).unwrap();
        g.apply_answer(q(2, 3), Answer::Accuse).unwrap();
        g.apply_answer(q(4, 3), Answer::Support).unwrap();
        assert_eq!(g.sig(1), Some(ComponentSig { y: 2, z: 2, accusatory: true }));
        assert_eq!(g.same_class(1, 2), Some(true));
        assert_eq!(g.same_class(1, 3), Some(false));
        assert_eq!(g.same_class(3, 4), Some(true));
        assert_eq!(g.same_class(1, 5), None);
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.sig(5), Some(ComponentSig { y: 1, z: 0, accusatory: false }));
    }

    #[test]
    fn liar_contradiction_and_unconstrained_break() {
        let edges = [(q(1, 2), Answer::Support), (q(2, 3), Answer::Support)];
        let mut g = QuestionGraph::from_edges(3, SpyModel::Liar, &edges).unwrap();
        assert_eq!(g.apply_answer(q(3, 1), Answer::Accuse), Err(GameError::ContradictoryAnswer(q(3, 1))));
        let mut u = QuestionGraph::from_edges(3, SpyModel::Unconstrained, &edges).unwrap();
        u.apply_answer(q(3, 1), Answer::Accuse).unwrap();
        assert!(!u.parity_intact(1));
        assert_eq!(u.sig(2), None);
    }

    #[test]
    fn protocol_errors() {
        let mut g = QuestionGraph::new(3, SpyModel::Liar);
        assert_eq!(g.apply_answer(q(2, 2), Answer::Support), Err(GameError::SelfQuestion(q(2, 2))));
        assert_eq!(g.apply_answer(q(2, 4), Answer::Support), Err(GameError::NoSuchPerson(4)));
        g.apply_answer(q(1, 2), Answer::Support).unwrap();
        assert_eq!(g.apply_answer(q(1, 2), Answer::Support), Err(GameError::DuplicateQuestion(q(1, 2))));
        // The reverse direction is a different question.
        g.apply_answer(q(2, 1), Answer::Support).unwrap();
    }

    #[test]
    fn merge_weights() {
        assert_eq!(merge_weight(3, 1, Answer::Support), Ok(4));
        assert_eq!(merge_weight(3, 1, Answer::Accuse), Ok(2));
        assert_eq!(merge_weight(2, 2, Answer::Accuse), Ok(0));
        assert_eq!(merge_weight(1, 3, Answer::Support), Err(GameError::WeightOrder { c: 1, c2: 3 }));
    }
}
