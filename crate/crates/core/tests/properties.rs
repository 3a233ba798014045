mod common;

use proptest::prelude::*;
use spyhunt::strategies::{named, STRATEGY_NAMES};
use spyhunt::{GameParams, Person, Question, SpyModel};

fn history() -> impl Strategy<Value = (GameParams, u64, Vec<(Question, bool)>)> {
    (3usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                n / 2 + 1..n,
                any::<bool>(),
                any::<bool>(),
                any::<prop::sample::Index>(),
                prop::collection::vec((1..=n as Person, 1..=n as Person, any::<bool>()), 0..=6),
            )
        })
        .prop_map(|(n, k, liar, known, room, moves)| {
            let model = if liar { SpyModel::Liar } else { SpyModel::Unconstrained };
            let params = GameParams::new(n, k, model, known).unwrap();
            let rooms = common::rooms(&params);
            let moves = moves.into_iter().map(|(x, y, c)| (Question::new(x, y), c)).collect();
            (params, rooms[room.index(rooms.len())], moves)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn random_histories_keep_invariants((params, spies, moves) in history()) {
        let r = common::check_history(&params, spies, &moves);
        prop_assert!(r.is_ok(), "{params:?} room {spies:#b}: {}", r.unwrap_err());
    }

    #[test]
    fn strategy_claims_are_forced(n in 3usize..=9, k_off in 0usize..8, room in any::<prop::sample::Index>()) {
        let k = n / 2 + 1 + k_off % (n - n / 2 - 1);
        for model in [SpyModel::Liar, SpyModel::Unconstrained] {
            for known in [false, true] {
                let params = GameParams::new(n, k, model, known).unwrap();
                let rooms = common::rooms(&params);
                let spies = rooms[room.index(rooms.len())];
                for name in STRATEGY_NAMES {
                    let s = named(name).unwrap();
                    if s.check(&params).is_err() {
                        continue;
                    }
                    let r = common::check_strategy(s.as_ref(), &params, spies);
                    prop_assert!(r.is_ok(), "{params:?}: {}", r.unwrap_err());
                }
            }
        }
    }

    #[test]
    fn knight_hunt_components_are_powers_of_two(n in 3usize..=12, k_off in 0usize..8, room in any::<prop::sample::Index>()) {
        let k = n / 2 + 1 + k_off % (n - n / 2 - 1);
        let params = GameParams::liar(n, k).unwrap();
        let rooms = common::rooms(&params);
        let r = common::check_bkh_sizes(&params, rooms[room.index(rooms.len())]);
        prop_assert!(r.is_ok(), "{params:?}: {}", r.unwrap_err());
    }
}

#[test]
fn exhaustive_histories_up_to_five() {
    for params in common::all_params(3, 5) {
        let depth = if params.n == 5 { 3 } else { 4 };
        common::exhaustive(&params, depth).unwrap();
    }
}

#[test]
fn every_room_up_to_five_gets_valid_claims() {
    for params in common::all_params(3, 5) {
        for spies in common::rooms(&params) {
            for name in STRATEGY_NAMES {
                let s = named(name).unwrap();
                if s.check(&params).is_ok() {
                    common::check_strategy(s.as_ref(), &params, spies).unwrap();
                }
            }
            if params.model == SpyModel::Liar {
                common::check_bkh_sizes(&params, spies).unwrap();
            }
        }
    }
}

#[test]
fn weight_fold_matches_worked_example() {
    // 1-2 support, 3-4 support, then 1 accuses 3: weights 2 and 2 cancel.
    let edges = [
        (Question::new(1, 2), spyhunt::Answer::Support),
        (Question::new(3, 4), spyhunt::Answer::Support),
        (Question::new(1, 3), spyhunt::Answer::Accuse),
        (Question::new(5, 1), spyhunt::Answer::Support),
    ];
    let w = common::folded_weights(5, &edges).unwrap();
    assert_eq!(&w[1..], &[1, 1, 1, 1, 1]);
    let g = spyhunt::QuestionGraph::from_edges(5, SpyModel::Liar, &edges).unwrap();
    assert_eq!(g.sig(1).unwrap().weight(), 1);
}
