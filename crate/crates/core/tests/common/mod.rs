//! Invariant checkers shared by the property and acceptance suites.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use spyhunt::game::{bit, members};
use spyhunt::strategies::{run_strategy, BinaryKnightHunt, Strategy, TruthSource};
use spyhunt::transcript::Transcript;
use spyhunt::{
    consistent_assignments, merge_weight, unambiguous_components, Answer, ConsistentSet, GameError, GameParams, Person,
    Question, QuestionGraph, SpyModel, SpySet,
};

/// Every valid parameter set with `n` in range, both models and both spy
/// promises.
pub fn all_params(n_lo: usize, n_hi: usize) -> Vec<GameParams> {
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        for k in n / 2 + 1..n {
            for model in [SpyModel::Liar, SpyModel::Unconstrained] {
                for known in [false, true] {
                    out.push(GameParams::new(n, k, model, known).unwrap());
                }
            }
        }
    }
    out
}

/// Replays the edges through a plain union-find with class parities and
/// folds `merge_weight` along the way. Returns the weight of each person's
/// component, indexed by person.
pub fn folded_weights(n: usize, edges: &[(Question, Answer)]) -> Result<Vec<u32>, String> {
    let mut root: Vec<usize> = (0..=n).collect();
    // parity relative to the root; 0 or 1
    let mut parity = vec![0u8; n + 1];
    let mut weight = vec![1u32; n + 1];
    // size of the parity-0 class of each root, and the full size
    let mut zeros = vec![1u32; n + 1];
    let mut size = vec![1u32; n + 1];
    fn find(root: &mut [usize], parity: &mut [u8], p: usize) -> (usize, u8) {
        let mut par = 0;
        let mut x = p;
        while root[x] != x {
            par ^= parity[x];
            x = root[x];
        }
        (x, par)
    }
    for &(q, a) in edges {
        let (rx, px) = find(&mut root, &mut parity, q.asker as usize);
        let (ry, py) = find(&mut root, &mut parity, q.subject as usize);
        if rx == ry {
            continue;
        }
        // whether each endpoint sits in the larger class of its component
        let in_larger = |r: usize, p: u8, zeros: &[u32], size: &[u32]| {
            let z = zeros[r];
            let o = size[r] - z;
            if p == 0 {
                z >= o
            } else {
                o >= z
            }
        };
        let lx = in_larger(rx, px, &zeros, &size);
        let ly = in_larger(ry, py, &zeros, &size);
        let effective = if lx == ly { a } else { a.flip() };
        let (c, c2) = (weight[rx].max(weight[ry]), weight[rx].min(weight[ry]));
        let w = merge_weight(c, c2, effective).map_err(|e| e.to_string())?;
        // y's class relative to x: same on support, opposite on accuse
        let rel = px ^ py ^ a.is_accuse() as u8;
        root[ry] = rx;
        parity[ry] = rel;
        let (z_y, o_y) = (zeros[ry], size[ry] - zeros[ry]);
        zeros[rx] += if rel == 0 { z_y } else { o_y };
        size[rx] += size[ry];
        weight[rx] = w;
    }
    Ok((0..=n).map(|p| weight[find(&mut root, &mut parity, p).0]).collect())
}

fn identity_constant(set: &ConsistentSet, p: Person) -> bool {
    let mut seen = [false; 2];
    for s in set.iter() {
        seen[s.contains(p) as usize] = true;
    }
    !(seen[0] && seen[1])
}

/// Checks every graph-level invariant on one history. `before` is the
/// consistent set prior to the last answer, if any.
pub fn check_graph(
    graph: &QuestionGraph,
    params: &GameParams,
    before: Option<&ConsistentSet>,
) -> Result<ConsistentSet, String> {
    let n = params.n;
    let set = consistent_assignments(graph, params).map_err(|e| e.to_string())?;
    if set.is_empty() {
        return Err("history left no consistent assignment".into());
    }
    if graph.component_count() < n.saturating_sub(graph.len()) {
        return Err(format!("{} components after {} questions", graph.component_count(), graph.len()));
    }
    if let Some(prev) = before {
        if let Some(s) = set.iter().find(|s| !prev.contains(*s)) {
            return Err(format!("assignment {s} appeared after an answer"));
        }
    }
    if params.model != SpyModel::Liar {
        return Ok(set);
    }
    let folded = folded_weights(n, graph.edges())?;
    for p in params.people() {
        let sig = graph.sig(p).ok_or_else(|| format!("liar component of {p} lost its colouring"))?;
        if sig.weight() as u32 != folded[p as usize] {
            return Err(format!("weight of {p}: signature {} but fold {}", sig.weight(), folded[p as usize]));
        }
    }
    for a in params.people() {
        for b in params.people() {
            if !graph.same_component(a, b) {
                continue;
            }
            let same = graph.same_class(a, b).ok_or("liar component without a colouring")?;
            let oracle = set.iter().all(|s| s.contains(a) == s.contains(b));
            if same != oracle {
                return Err(format!("colouring says {a} and {b} same class = {same}, assignments say {oracle}"));
            }
        }
    }
    if !params.spy_known {
        let mut got = unambiguous_components(graph, params).map_err(|e| e.to_string())?;
        let mut want: Vec<u64> =
            graph.components().into_iter().filter(|&c| members(c).all(|p| identity_constant(&set, p))).collect();
        got.sort_unstable();
        want.sort_unstable();
        if got != want {
            return Err(format!("unambiguous components {got:?}, oracle {want:?}"));
        }
    }
    Ok(set)
}

/// Answers `q` as the room `spies` would; unconstrained spies use `coin`.
pub fn room_answer(params: &GameParams, spies: u64, q: Question, coin: bool) -> Answer {
    let truthful = if spies & bit(q.subject) != 0 { Answer::Accuse } else { Answer::Support };
    if spies & bit(q.asker) == 0 {
        truthful
    } else if params.model == SpyModel::Liar {
        truthful.flip()
    } else if coin {
        Answer::Accuse
    } else {
        Answer::Support
    }
}

/// Spy sets allowed by `params`.
pub fn rooms(params: &GameParams) -> Vec<u64> {
    (0..1u64 << params.n).filter(|s| (params.min_spies()..=params.s()).contains(&(s.count_ones() as usize))).collect()
}

/// Plays a history from a fixed room and checks every prefix.
pub fn check_history(params: &GameParams, spies: u64, moves: &[(Question, bool)]) -> Result<usize, String> {
    let mut graph = QuestionGraph::new(params.n, params.model);
    let mut set = check_graph(&graph, params, None)?;
    for &(q, coin) in moves {
        if graph.check_question(q).is_err() {
            continue;
        }
        let a = room_answer(params, spies, q, coin);
        graph.apply_answer(q, a).map_err(|e| format!("room answer rejected: {e}"))?;
        set = check_graph(&graph, params, Some(&set))?;
        if !set.contains(SpySet(spies)) {
            return Err(format!("true room {} dropped from the consistent set", SpySet(spies)));
        }
    }
    Ok(graph.len())
}

pub fn random_params(rng: &mut StdRng, n_lo: usize, n_hi: usize) -> GameParams {
    let n = rng.gen_range(n_lo..=n_hi);
    let k = rng.gen_range(n / 2 + 1..n);
    let model = if rng.gen() { SpyModel::Liar } else { SpyModel::Unconstrained };
    GameParams::new(n, k, model, rng.gen()).unwrap()
}

pub fn random_history(rng: &mut StdRng, params: &GameParams, len: usize) -> (u64, Vec<(Question, bool)>) {
    let options = rooms(params);
    let spies = options[rng.gen_range(0..options.len())];
    let n = params.n as Person;
    let moves = (0..len)
        .map(|_| {
            let x = rng.gen_range(1..=n);
            let mut y = rng.gen_range(1..n);
            if y >= x {
                y += 1;
            }
            (Question::new(x, y), rng.gen())
        })
        .collect();
    (spies, moves)
}

/// Visits every history of at most `depth` questions, branching on each
/// answer that keeps some assignment consistent.
pub fn exhaustive(params: &GameParams, depth: usize) -> Result<usize, String> {
    fn go(
        graph: &QuestionGraph,
        params: &GameParams,
        set: &ConsistentSet,
        depth: usize,
        visited: &mut usize,
    ) -> Result<(), String> {
        *visited += 1;
        if depth == 0 {
            return Ok(());
        }
        let n = params.n as Person;
        for x in 1..=n {
            for y in 1..=n {
                let q = Question::new(x, y);
                if x == y || graph.has_asked(q) {
                    continue;
                }
                for a in [Answer::Support, Answer::Accuse] {
                    let next = match graph.with_answer(q, a) {
                        Ok(g) => g,
                        Err(GameError::ContradictoryAnswer(_)) => continue,
                        Err(e) => return Err(e.to_string()),
                    };
                    let after = consistent_assignments(&next, params).map_err(|e| e.to_string())?;
                    if after.is_empty() {
                        continue;
                    }
                    let after = check_graph(&next, params, Some(set))?;
                    go(&next, params, &after, depth - 1, visited)?;
                }
            }
        }
        Ok(())
    }
    let graph = QuestionGraph::new(params.n, params.model);
    let set = check_graph(&graph, params, None)?;
    let mut visited = 0;
    go(&graph, params, &set, depth, &mut visited).map_err(|e| format!("{params:?}: {e}"))?;
    Ok(visited)
}

/// Checks each claim in `t` against the consistent set at the moment it was
/// made.
pub fn check_claims(t: &Transcript) -> Result<(), String> {
    let params = t.params;
    let edges = t.edges();
    for (index, claim) in t.claims() {
        let graph = QuestionGraph::from_edges(params.n, params.model, &edges[..index]).map_err(|e| e.to_string())?;
        let set = consistent_assignments(&graph, &params).map_err(|e| e.to_string())?;
        let ok = set.iter().all(|s| match claim {
            spyhunt::Claim::KnightIs(p) => !s.contains(p),
            spyhunt::Claim::SpyIs(p) => s.contains(p),
            spyhunt::Claim::AllKnights => s.is_empty(),
            spyhunt::Claim::PersonIs(p, id) => s.identity(p) == id,
            spyhunt::Claim::FullAssignment(a) => s == a,
        });
        if !ok {
            return Err(format!("claim `{claim}` after {index} questions is not forced"));
        }
    }
    Ok(())
}

/// Runs `strategy` against the room and checks its claims.
pub fn check_strategy(strategy: &dyn Strategy, params: &GameParams, spies: u64) -> Result<Transcript, String> {
    let mut src = TruthSource::new(SpySet(spies));
    let t = run_strategy(strategy, &mut src, params).map_err(|e| format!("{} on {spies:#b}: {e}", strategy.name()))?;
    check_claims(&t)?;
    Ok(t)
}

/// Runs the binary knight hunt against the room and checks that every
/// component has power-of-two size after each question.
pub fn check_bkh_sizes(params: &GameParams, spies: u64) -> Result<(), String> {
    let t = check_strategy(&BinaryKnightHunt::default(), params, spies)?;
    let mut graph = QuestionGraph::new(params.n, params.model);
    for (q, a) in t.edges() {
        graph.apply_answer(q, a).map_err(|e| e.to_string())?;
        if let Some(c) = graph.components().into_iter().find(|c| !c.count_ones().is_power_of_two()) {
            return Err(format!("component {c:#b} of size {} after {} questions", c.count_ones(), graph.len()));
        }
    }
    Ok(())
}
