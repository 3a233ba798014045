//! Spy master policies from the lower-bound arguments.

use crate::error::RunError;
use crate::formulas::{knight_count, qr};
use crate::game::{bit, lowest, members, Answer, GameParams, Person, Question, SpyModel};
use crate::graph::QuestionGraph;
use crate::knowledge::consistent_assignments;
use crate::solver::{Bits, MajoritySolver};

use super::Policy;

/// Sorted class sizes of every component, with `tracked`'s component kept
/// apart as (own class size, other class size).
fn abstract_key(graph: &QuestionGraph, tracked: Option<Person>) -> Vec<u64> {
    let mut key = Vec::new();
    let mut own = None;
    for c in graph.components() {
        let p = lowest(c).unwrap();
        let class = graph.class_of(p);
        let (a, b) = (class.count_ones() as u64, (c & !class).count_ones() as u64);
        match tracked {
            Some(t) if c & bit(t) != 0 => {
                let mine = graph.class_of(t).count_ones() as u64;
                own = Some((mine, a + b - mine));
            }
            _ => key.push(a.max(b) << 8 | a.min(b)),
        }
    }
    key.sort_unstable();
    if let Some((a, b)) = own {
        key.push(u64::MAX);
        key.push(a << 8 | b);
    }
    key
}

fn edges_key(graph: &QuestionGraph) -> Vec<u64> {
    let mut key: Vec<u64> = graph
        .edges()
        .iter()
        .map(|&(q, a)| (q.asker as u64) << 16 | (q.subject as u64) << 1 | a.is_accuse() as u64)
        .collect();
    key.sort_unstable();
    key
}

/// Two-colouring the spy master has committed to, as component labels and
/// sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ParityView {
    comp: Vec<Person>,
    side: Vec<bool>,
}

impl ParityView {
    fn from_graph(graph: &QuestionGraph) -> Self {
        let n = graph.n();
        let mut view = ParityView { comp: vec![0; n + 1], side: vec![false; n + 1] };
        for c in graph.components() {
            let root = lowest(c).unwrap();
            let class = graph.class_of(root);
            for p in members(c) {
                view.comp[p as usize] = root;
                view.side[p as usize] = class & bit(p) == 0;
            }
        }
        view
    }

    fn same_class(&self, x: Person, y: Person) -> Option<bool> {
        let (x, y) = (x as usize, y as usize);
        (self.comp[x] == self.comp[y]).then_some(self.side[x] == self.side[y])
    }

    fn join(&mut self, x: Person, y: Person, same: bool) {
        let (x, y) = (x as usize, y as usize);
        let (cx, cy) = (self.comp[x], self.comp[y]);
        let flip = (self.side[x] == self.side[y]) != same;
        for p in 1..self.comp.len() {
            if self.comp[p] == cy {
                self.comp[p] = cx;
                self.side[p] ^= flip;
            }
        }
    }

    fn weights(&self) -> Vec<usize> {
        let mut w = Vec::new();
        for root in 1..self.comp.len() {
            if self.comp[root] as usize != root {
                continue;
            }
            let (mut a, mut b) = (0usize, 0usize);
            for p in 1..self.comp.len() {
                if self.comp[p] as usize == root {
                    if self.side[p] {
                        b += 1;
                    } else {
                        a += 1;
                    }
                }
            }
            w.push(a.abs_diff(b));
        }
        w
    }

    fn encode(&self) -> Vec<u64> {
        self.comp.iter().zip(&self.side).map(|(&c, &s)| (c as u64) << 1 | s as u64).collect()
    }

    /// The answer to `q` that keeps a knight hidden longest in the majority
    /// game on this colouring; support on ties.
    fn majority_choice(&self, q: Question, excess: usize) -> Answer {
        if let Some(same) = self.same_class(q.asker, q.subject) {
            return if same { Answer::Support } else { Answer::Accuse };
        }
        let Ok(mut solver) = MajoritySolver::new(excess) else {
            return Answer::Support;
        };
        let mut best = (None, Answer::Support);
        for a in [Answer::Support, Answer::Accuse] {
            let mut v = self.clone();
            v.join(q.asker, q.subject, !a.is_accuse());
            if let Ok(value) = solver.questions(&v.weights()) {
                if best.0.is_none_or(|b| value > b) {
                    best = (Some(value), a);
                }
            }
        }
        best.1
    }
}

/// Supports while the question count allows, then accuses once if the
/// question joins two components of at most `s` people.
#[derive(Clone, Copy, Debug, Default)]
pub struct LiarLowerBound;

impl LiarLowerBound {
    /// Number of leading supports and the index of the one scripted
    /// accusation question, if any.
    pub fn script(params: &GameParams) -> (usize, Option<usize>) {
        let (q, r) = qr(params.n, params.k);
        let n = params.n;
        if params.spy_known {
            ((n - q).saturating_sub(2), (r <= 1).then(|| n - q - 1))
        } else {
            ((n - q).saturating_sub(1), (r == 0).then_some(n - q))
        }
    }
}

impl LiarLowerBound {
    /// Five people, two spies at most, one known present: after the first
    /// support, pick an answer from which no spy can be identified within
    /// three questions.
    fn hide_spies(graph: &QuestionGraph, params: &GameParams, q: Question) -> Option<Answer> {
        [Answer::Support, Answer::Accuse]
            .into_iter()
            .find(|&a| graph.with_answer(q, a).is_ok_and(|g| Self::spies_hidden(&g, params, 3)))
    }

    fn spies_hidden(graph: &QuestionGraph, params: &GameParams, until: usize) -> bool {
        let Ok(set) = consistent_assignments(graph, params) else {
            return false;
        };
        if set.is_empty() || set.deduction().spies != 0 {
            return false;
        }
        if graph.len() >= until {
            return true;
        }
        params.people().all(|x| {
            params.people().filter(|&y| y != x).all(|y| {
                let q = Question::new(x, y);
                graph.check_question(q).is_err()
                    || [Answer::Support, Answer::Accuse]
                        .into_iter()
                        .any(|a| graph.with_answer(q, a).is_ok_and(|g| Self::spies_hidden(&g, params, until)))
            })
        })
    }
}

impl Policy for LiarLowerBound {
    fn name(&self) -> String {
        "liar-lower-bound".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if params.model != SpyModel::Liar {
            return Err(RunError::PreconditionUnmet("needs liar semantics".into()));
        }
        Ok(())
    }

    fn propose(&self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Option<Answer> {
        let t = graph.len() + 1;
        if params.n == 5 && params.k == 3 && params.spy_known && t > 1 {
            return Self::hide_spies(graph, params, q);
        }
        let (supports, rule) = Self::script(params);
        if t <= supports {
            return Some(Answer::Support);
        }
        if rule == Some(t) {
            let small = |p: Person| graph.component(p).count_ones() as usize <= params.s();
            let joins_small = !graph.same_component(q.asker, q.subject) && small(q.asker) && small(q.subject);
            return Some(if joins_small { Answer::Accuse } else { Answer::Support });
        }
        None
    }

    fn key(&self, graph: &QuestionGraph, _: &Bits) -> Vec<u64> {
        abstract_key(graph, None)
    }
}

/// Hides a knight through the first `K - 1` questions, then answers question
/// `K` so that Person 1's identity stays open.
#[derive(Clone, Copy, Debug, Default)]
pub struct MajorityLowerBound;

impl Policy for MajorityLowerBound {
    fn name(&self) -> String {
        "majority-lower-bound".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if params.model != SpyModel::Liar {
            return Err(RunError::PreconditionUnmet("needs liar semantics".into()));
        }
        Ok(())
    }

    fn propose(&self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Option<Answer> {
        let t = graph.len() + 1;
        let target = knight_count(params.n, params.k);
        if graph.same_component(q.asker, q.subject) || t > target {
            return None;
        }
        let view = ParityView::from_graph(graph);
        if t < target {
            return Some(view.majority_choice(q, params.excess()));
        }
        // Joining larger classes adds the weights; joining a larger class to
        // a smaller one subtracts them.
        let larger = |p: Person| graph.larger_class(p) & bit(p) != 0;
        let additive = if larger(q.asker) == larger(q.subject) { Answer::Support } else { Answer::Accuse };
        let touches_one = graph.same_component(1, q.asker) || graph.same_component(1, q.subject);
        let (c, c2) = (graph.sig(q.asker)?.weight(), graph.sig(q.subject)?.weight());
        if c == 0 || c2 == 0 {
            return Some(Answer::Support);
        }
        Some(if touches_one { additive.flip() } else { additive })
    }

    fn key(&self, graph: &QuestionGraph, _: &Bits) -> Vec<u64> {
        abstract_key(graph, Some(1))
    }
}

/// Always supports.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnconstrainedLowerBound;

impl Policy for UnconstrainedLowerBound {
    fn name(&self) -> String {
        "unconstrained-lower-bound".into()
    }

    fn propose(&self, _: &QuestionGraph, _: &GameParams, _: Question) -> Option<Answer> {
        Some(Answer::Support)
    }

    fn key(&self, _: &QuestionGraph, set: &Bits) -> Vec<u64> {
        set.0.to_vec()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Phase {
    /// Only singletons have been joined so far.
    Pairs,
    /// Spies are promised to lie from here on, relative to the view.
    Majority(ParityView),
    SupportForever,
}

/// Policy for unconstrained spies with `n = 2k - 1`, `k` even and a spy known
/// present: supports while singletons are paired up, then either commits to
/// the majority game or supports forever, depending on the first other
/// question.
#[derive(Clone, Debug)]
pub struct DeadlineBlocker {
    phase: Phase,
}

impl Default for DeadlineBlocker {
    fn default() -> Self {
        DeadlineBlocker { phase: Phase::Pairs }
    }
}

impl DeadlineBlocker {
    /// The phase and answer triggered by the first question that does not
    /// join two singletons.
    fn trigger(graph: &QuestionGraph, q: Question) -> (Answer, Phase) {
        let (x, y) = (q.asker, q.subject);
        let size = |p: Person| graph.component(p).count_ones();
        if graph.same_component(x, y) {
            let a = if graph.same_class(x, y) == Some(false) { Answer::Accuse } else { Answer::Support };
            let mut view = ParityView::from_graph(graph);
            view.join(x, y, !a.is_accuse());
            return (a, Phase::Majority(view));
        }
        if size(x) == 2 && size(y) == 2 {
            if graph.in_degree(y) == 0 {
                let mut view = ParityView::from_graph(graph);
                view.join(x, y, false);
                return (Answer::Accuse, Phase::Majority(view));
            }
            return (Answer::Support, Phase::SupportForever);
        }
        let mut view = ParityView::from_graph(graph);
        view.join(x, y, false);
        (Answer::Accuse, Phase::Majority(view))
    }
}

impl Policy for DeadlineBlocker {
    fn name(&self) -> String {
        "deadline-blocker".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        let ok = params.model == SpyModel::Unconstrained
            && params.spy_known
            && params.n == 2 * params.k - 1
            && params.k.is_multiple_of(2);
        if !ok {
            return Err(RunError::PreconditionUnmet(
                "needs unconstrained spies, a known spy, n = 2k - 1 and k even".into(),
            ));
        }
        Ok(())
    }

    fn propose(&self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Option<Answer> {
        match &self.phase {
            Phase::Pairs => {
                let single = |p: Person| graph.component(p).count_ones() == 1;
                if single(q.asker) && single(q.subject) {
                    Some(Answer::Support)
                } else {
                    Some(Self::trigger(graph, q).0)
                }
            }
            Phase::Majority(view) => Some(view.majority_choice(q, params.excess())),
            Phase::SupportForever => Some(Answer::Support),
        }
    }

    fn observe(&mut self, graph: &QuestionGraph, _: &GameParams, q: Question, a: Answer) {
        match &mut self.phase {
            Phase::Pairs => {
                let single = |p: Person| graph.component(p).count_ones() == 1;
                if !(single(q.asker) && single(q.subject)) {
                    let (_, phase) = Self::trigger(graph, q);
                    self.phase = match phase {
                        Phase::Majority(mut view) if view.same_class(q.asker, q.subject).is_none() => {
                            view.join(q.asker, q.subject, !a.is_accuse());
                            Phase::Majority(view)
                        }
                        other => other,
                    };
                }
            }
            Phase::Majority(view) => {
                if view.same_class(q.asker, q.subject).is_none() {
                    view.join(q.asker, q.subject, !a.is_accuse());
                }
            }
            Phase::SupportForever => {}
        }
    }

    fn key(&self, graph: &QuestionGraph, _: &Bits) -> Vec<u64> {
        let mut key = edges_key(graph);
        key.push(u64::MAX);
        match &self.phase {
            Phase::Pairs => key.push(0),
            Phase::SupportForever => key.push(1),
            Phase::Majority(view) => {
                key.push(2);
                key.extend(view.encode());
            }
        }
        key
    }
}
