//! Best interrogator play against a fixed policy.

use std::collections::{HashMap, HashSet};

use crate::error::SolverError;
use crate::game::{Answer, GameParams, Person, Question};
use crate::graph::QuestionGraph;
use crate::knowledge::Objective;
use crate::solver::{AssignmentSpace, Bits};

use super::{fallback, Policy};

#[derive(Clone)]
struct Node<P> {
    graph: QuestionGraph,
    policy: P,
    set: Bits,
}

fn children<'a, P: Policy>(
    node: &'a Node<P>,
    space: &'a AssignmentSpace,
) -> impl Iterator<Item = (Question, Node<P>)> + 'a {
    let n = space.params.n as Person;
    (1..=n)
        .flat_map(move |x| (1..=n).map(move |y| Question::new(x, y)))
        .filter(|q| q.asker != q.subject && !node.graph.has_asked(*q))
        .map(move |q| {
            let kids = [Answer::Support, Answer::Accuse].map(|a| space.after(node.set, q, a));
            let a = match node.policy.propose(&node.graph, &space.params, q) {
                Some(a) if !kids[a.is_accuse() as usize].is_empty() => a,
                _ => fallback(kids.map(|k| k.count())).expect("some answer is always consistent"),
            };
            let mut policy = node.policy.clone();
            policy.observe(&node.graph, &space.params, q, a);
            let graph = node.graph.with_answer(q, a).expect("consistent answers keep the graph valid");
            (q, Node { graph, policy, set: kids[a.is_accuse() as usize] })
        })
}

fn start<P: Policy>(policy: &P, params: &GameParams) -> Result<(AssignmentSpace, Node<P>), SolverError> {
    policy.check(params).map_err(|e| SolverError::Unsupported(e.to_string()))?;
    let space = AssignmentSpace::new(params)?;
    let node = Node { graph: QuestionGraph::new(params.n, params.model), policy: policy.clone(), set: space.all };
    Ok((space, node))
}

/// Fewest questions after which the interrogator can claim `objective`
/// against `policy`, or `None` if more than `limit` are needed.
pub fn policy_value<P: Policy>(
    policy: &P,
    params: &GameParams,
    objective: Objective,
    limit: usize,
    budget: u64,
) -> Result<Option<usize>, SolverError> {
    let (space, root) = start(policy, params)?;
    let mut layer = vec![root];
    let mut seen = 0u64;
    for depth in 0..=limit {
        if layer.iter().any(|node| space.achieved(node.set, objective)) {
            return Ok(Some(depth));
        }
        if depth == limit {
            break;
        }
        let mut next: HashMap<Vec<u64>, Node<P>> = HashMap::new();
        for node in &layer {
            for (_, child) in children(node, &space) {
                let key = child.policy.key(&child.graph, &child.set);
                next.entry(key).or_insert(child);
            }
        }
        seen += next.len() as u64;
        if seen > budget {
            return Err(SolverError::BudgetExceeded(budget));
        }
        layer = next.into_values().collect();
    }
    Ok(None)
}

/// Whether some question sequence meets every `(objective, deadline)` pair
/// against `policy`.
pub fn policy_combined_feasible<P: Policy>(
    policy: &P,
    params: &GameParams,
    requirements: &[(Objective, usize)],
    budget: u64,
) -> Result<bool, SolverError> {
    let (space, root) = start(policy, params)?;
    let mut search = Combined { space: &space, requirements, failed: HashSet::new(), budget, nodes: 0 };
    search.feasible(&root, 0)
}

struct Combined<'a> {
    space: &'a AssignmentSpace,
    requirements: &'a [(Objective, usize)],
    failed: HashSet<(Vec<u64>, u32)>,
    budget: u64,
    nodes: u64,
}

impl Combined<'_> {
    fn feasible<P: Policy>(&mut self, node: &Node<P>, done: u32) -> Result<bool, SolverError> {
        let t = node.graph.len();
        let mut done = done;
        for (i, &(o, _)) in self.requirements.iter().enumerate() {
            if self.space.achieved(node.set, o) {
                done |= 1 << i;
            }
        }
        if done == (1 << self.requirements.len()) - 1 {
            return Ok(true);
        }
        if self.requirements.iter().enumerate().any(|(i, &(_, d))| done & (1 << i) == 0 && d <= t) {
            return Ok(false);
        }
        let key = (node.policy.key(&node.graph, &node.set), done);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::BudgetExceeded(self.budget));
        }
        for (_, child) in children(node, self.space) {
            if self.feasible(&child, done)? {
                return Ok(true);
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{LiarLowerBound, MajorityLowerBound, UnconstrainedLowerBound};
    use crate::game::SpyModel;

    const BUDGET: u64 = 10_000_000;

    #[test]
    fn liar_policy_holds_eight_people() {
        let p = GameParams::liar(8, 5).unwrap();
        let v = policy_value(&LiarLowerBound, &p, Objective::FindSpyOrAllKnights, 12, BUDGET).unwrap();
        assert!(v.unwrap() >= 7);
    }

    #[test]
    fn majority_policy_hides_person_one() {
        let p = GameParams::liar(5, 3).unwrap();
        let v = policy_value(&MajorityLowerBound, &p, Objective::IdentityOfPerson(1), 10, BUDGET).unwrap();
        assert!(v.unwrap() >= 4);
    }

    #[test]
    fn support_forever_on_five() {
        let p = GameParams::new(5, 3, SpyModel::Unconstrained, true).unwrap();
        let v = policy_value(&UnconstrainedLowerBound, &p, Objective::FindSpy, 10, BUDGET).unwrap();
        assert!(v.unwrap() >= 4);
        let p = GameParams::unconstrained(4, 3).unwrap();
        let v = policy_value(&UnconstrainedLowerBound, &p, Objective::FindSpyOrAllKnights, 10, BUDGET).unwrap();
        assert!(v.unwrap() >= 4);
    }
}
