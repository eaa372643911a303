use fodepth::game::{
    check_partial_isomorphism, d0_lower_bound, d0_pair, d_pair, oracle_value, play_match, GameConfig, GameValue,
    GreedyDuplicator, OptimalDuplicator, RandomDuplicator, Side, Solver, SolverSpoiler, Transcript, Variant, Winner,
};
use fodepth::graph::{enumerate_nonisomorphic, is_isomorphic};
use fodepth::logic::{sentence_classes, QuantifierPattern};
use fodepth::{Error, GraphData};
use proptest::prelude::*;

fn union(a: &GraphData, b: &GraphData) -> GraphData {
    GraphData::disjoint_union(a, b).unwrap()
}

fn up_to(n: usize) -> Vec<GraphData> {
    (1..=n)
        .flat_map(|i| enumerate_nonisomorphic(i, false, false).unwrap())
        .collect()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = GraphData> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| GraphData::undirected_from_fn(n, |u, v| bits[u.min(v) * n + u.max(v)]).unwrap())
    })
}

fn value(g: &GraphData, h: &GraphData, variant: Variant) -> GameValue {
    Solver::new(g, h, variant).unwrap().game_value().unwrap()
}

/// Every prefix but the last keeps the partial isomorphism; a Spoiler win
/// breaks it in the last round.
fn assert_replays(t: &Transcript, g: &GraphData, h: &GraphData) {
    assert_eq!(t.picks.len(), t.rounds);
    assert_eq!(t.moves.len(), t.rounds);
    for (m, &(x, y)) in t.moves.iter().zip(&t.picks) {
        match m.side {
            Side::Left => assert_eq!((m.spoiler, m.duplicator), (x, y)),
            Side::Right => assert_eq!((m.spoiler, m.duplicator), (y, x)),
        }
    }
    for i in 0..t.rounds {
        assert!(check_partial_isomorphism(&t.picks[..i], g, h));
    }
    assert_eq!(
        check_partial_isomorphism(&t.picks, g, h),
        t.winner == Winner::Duplicator
    );
}

#[test]
fn partial_isomorphism_examples() {
    let p3 = GraphData::path(3);
    let k3 = GraphData::complete(3);
    assert!(check_partial_isomorphism(&[(0, 0), (1, 1)], &p3, &k3));
    assert!(!check_partial_isomorphism(&[(0, 0), (2, 1)], &p3, &k3));
    assert!(!check_partial_isomorphism(&[(0, 0), (1, 0)], &p3, &k3));
    // Repeating a pair is harmless.
    assert!(check_partial_isomorphism(&[(1, 2), (1, 2)], &p3, &k3));
    let arc = GraphData::from_edges(2, true, false, &[(0, 1)]).unwrap();
    assert!(check_partial_isomorphism(&[(0, 0), (1, 1)], &arc, &arc));
    assert!(!check_partial_isomorphism(&[(0, 1), (1, 0)], &arc, &arc));
    let looped = GraphData::from_edges(2, true, true, &[(0, 0)]).unwrap();
    assert!(!check_partial_isomorphism(&[(0, 1)], &looped, &looped));
    assert!(check_partial_isomorphism(&[(1, 1)], &looped, &looped));
}

#[test]
fn pair_values() {
    let k1 = GraphData::empty(1);
    let e2 = GraphData::empty(2);
    assert_eq!(d0_pair(&k1, &e2).unwrap(), 2);
    assert_eq!(
        d0_pair(&GraphData::path(3), &union(&k1, &GraphData::complete(2))).unwrap(),
        3
    );
    for n in 1..=4 {
        let (a, b) = (GraphData::complete(n), GraphData::complete(n + 1));
        assert_eq!(d0_pair(&a, &b).unwrap(), n + 1);
        assert_eq!(d_pair(&a, &b).unwrap(), n + 1);
    }
    // C4 and 2K2 differ by connectivity only at depth 3.
    let two_k2 = union(&GraphData::complete(2), &GraphData::complete(2));
    assert_eq!(d_pair(&GraphData::cycle(4), &two_k2).unwrap(), 3);
    let p3 = GraphData::path(3);
    assert!(matches!(d0_pair(&p3, &p3), Err(Error::InvalidArgument(_))));
    assert!(matches!(
        d_pair(&p3, &GraphData::from_edges(3, false, false, &[(1, 0), (2, 1)]).unwrap()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn unrestricted_value_never_exceeds_zero_alternation_value() {
    let family = up_to(5);
    let mut pairs = 0;
    for (i, g) in family.iter().enumerate() {
        for h in &family[i + 1..] {
            let d = d_pair(g, h).unwrap();
            let d0 = d0_pair(g, h).unwrap();
            assert!(d <= d0, "{g:?} {h:?}");
            assert!(d0 <= g.order().max(h.order()) + 1);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 52 * 51 / 2);
}

#[test]
fn solver_agrees_with_plain_recursion() {
    let family = up_to(4);
    for g in &family {
        for h in &family {
            for v in [Variant::Full, Variant::ZeroAlternation] {
                let expected = oracle_value(g, h, v, 5);
                match value(g, h, v) {
                    GameValue::Within(k) => assert_eq!(expected, Some(k)),
                    GameValue::Beyond(_) => {
                        assert_eq!(expected, None);
                        assert!(is_isomorphic(g, h));
                    }
                }
            }
        }
    }
}

#[test]
fn game_values_match_sentence_classes() {
    let family = up_to(4);
    for k in 1..=3 {
        for (pattern, variant) in [
            (QuantifierPattern::all(k), Variant::Full),
            (QuantifierPattern::zero_alternation(k), Variant::ZeroAlternation),
        ] {
            let classes = sentence_classes(&family, &pattern).unwrap();
            for (i, g) in family.iter().enumerate() {
                for (j, h) in family.iter().enumerate() {
                    let separated = oracle_value(g, h, variant, k).is_some();
                    assert_eq!(classes[i] != classes[j], separated, "k = {k}, {variant:?}, {i} vs {j}");
                }
            }
        }
    }
}

#[test]
fn lower_bound_over_a_family() {
    let k2 = GraphData::complete(2);
    let family: Vec<GraphData> = up_to(3).into_iter().filter(|h| !is_isomorphic(h, &k2)).collect();
    assert_eq!(d0_lower_bound(&k2, &family).unwrap().value, 3);

    let mut with_self = family.clone();
    with_self.push(k2.clone());
    let lb = d0_lower_bound(&k2, &with_self).unwrap();
    assert_eq!(lb.value, 3);
    assert_eq!(lb.skipped, [family.len()]);
    let w = lb.witness.unwrap();
    assert_eq!(d0_pair(&k2, &with_self[w]).unwrap(), 3);

    let empty = d0_lower_bound(&k2, &[]).unwrap();
    assert_eq!((empty.value, empty.witness), (0, None));

    // Adding members never lowers the bound.
    let g = GraphData::cycle(5);
    let big = up_to(5);
    let mut last = 0;
    for m in 1..=big.len() {
        let v = d0_lower_bound(&g, &big[..m]).unwrap().value;
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn optimal_play_takes_exactly_the_game_value() {
    let pairs = [
        (GraphData::empty(1), GraphData::empty(2)),
        (GraphData::path(3), union(&GraphData::empty(1), &GraphData::complete(2))),
        (GraphData::complete(3), GraphData::complete(4)),
        (GraphData::cycle(5), GraphData::path(5)),
    ];
    for (g, h) in &pairs {
        for variant in [Variant::Full, Variant::ZeroAlternation] {
            let GameValue::Within(k) = value(g, h, variant) else {
                panic!("separable")
            };
            let config = GameConfig::new(g.clone(), h.clone(), variant);
            let spoiler = || SolverSpoiler::new(Solver::new(g, h, variant).unwrap());
            let optimal = || OptimalDuplicator::new(Solver::new(g, h, variant).unwrap(), 10);

            let t = play_match(&mut spoiler(), &mut optimal(), &config, 10).unwrap();
            assert_eq!((t.winner, t.rounds), (Winner::Spoiler, k));
            assert_replays(&t, g, h);

            let t = play_match(&mut spoiler(), &mut optimal(), &config, k - 1).unwrap();
            assert_eq!(t.winner, Winner::Duplicator);
            assert_replays(&t, g, h);

            for seed in 0..5 {
                let t = play_match(&mut spoiler(), &mut RandomDuplicator::new(seed), &config, 10).unwrap();
                assert_eq!(t.winner, Winner::Spoiler);
                assert!(t.rounds <= k);
                assert_replays(&t, g, h);
            }
            let t = play_match(&mut spoiler(), &mut GreedyDuplicator, &config, 10).unwrap();
            assert!(t.rounds <= k && t.winner == Winner::Spoiler);
            if variant == Variant::ZeroAlternation {
                assert!(t.moves.windows(2).all(|w| w[0].side == w[1].side));
            }
        }
    }
}

#[test]
fn single_vertex_against_two() {
    let (g, h) = (GraphData::empty(1), GraphData::empty(2));
    let config = GameConfig::new(g.clone(), h.clone(), Variant::ZeroAlternation);
    let mut spoiler = SolverSpoiler::new(Solver::new(&g, &h, Variant::ZeroAlternation).unwrap());
    let t = play_match(&mut spoiler, &mut RandomDuplicator::new(1), &config, 5).unwrap();
    assert_eq!((t.winner, t.rounds), (Winner::Spoiler, 2));
    assert!(t.moves.iter().all(|m| m.side == Side::Right));
    assert_ne!(t.moves[0].spoiler, t.moves[1].spoiler);
}

#[test]
fn random_duplicator_is_reproducible() {
    let (g, h) = (GraphData::cycle(6), union(&GraphData::cycle(3), &GraphData::cycle(3)));
    let config = GameConfig::new(g.clone(), h.clone(), Variant::Full);
    let run = |seed| {
        let mut spoiler = SolverSpoiler::new(Solver::new(&g, &h, Variant::Full).unwrap());
        play_match(&mut spoiler, &mut RandomDuplicator::new(seed), &config, 10).unwrap()
    };
    assert_eq!(run(9), run(9));
    assert_eq!(run(9).duplicator, "random(seed=9)");
}

#[test]
fn wins_within_is_monotone_and_solver_is_reusable() {
    let (g, h) = (
        GraphData::cycle(4),
        union(&GraphData::complete(2), &GraphData::complete(2)),
    );
    let mut s = Solver::new(&g, &h, Variant::Full).unwrap();
    let wins: Vec<bool> = (0..=4).map(|k| s.wins_within(None, &[], k).unwrap()).collect();
    assert_eq!(wins, [false, false, false, true, true]);
    // A broken position is already won.
    assert!(s.wins_within(None, &[(0, 0), (2, 1)], 0).unwrap());
    assert_eq!(s.value(None, &[(0, 0), (2, 1)], 3).unwrap(), GameValue::Within(0));
    assert_eq!(s.game_value().unwrap(), GameValue::Within(3));
    let (side, v) = s.winning_move(None, &[], 3).unwrap().unwrap();
    assert!(v < s.left().order());
    assert!(s.wins_within(Some(side), &[], 3).unwrap());
    assert_eq!(s.winning_move(None, &[], 2).unwrap(), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn value_is_symmetric(g in graph_strategy(4), h in graph_strategy(4)) {
        for v in [Variant::Full, Variant::ZeroAlternation] {
            prop_assert_eq!(value(&g, &h, v), value(&h, &g, v));
        }
    }

    #[test]
    fn value_bounded_by_larger_order(g in graph_strategy(5), h in graph_strategy(5)) {
        prop_assume!(!is_isomorphic(&g, &h));
        let d0 = d0_pair(&g, &h).unwrap();
        prop_assert!(d0 <= g.order().max(h.order()) + 1);
        prop_assert!(d_pair(&g, &h).unwrap() <= d0);
    }

    #[test]
    fn pick_order_does_not_matter(
        g in graph_strategy(5),
        h in graph_strategy(5),
        raw in proptest::collection::vec((0usize..5, 0usize..5), 1..4),
        rot in 0usize..3,
    ) {
        let picks: Vec<(usize, usize)> = raw.iter().map(|&(x, y)| (x % g.order(), y % h.order())).collect();
        let mut other = picks.clone();
        other.reverse();
        let r = rot % other.len();
        other.rotate_left(r);
        let mut s = Solver::new(&g, &h, Variant::Full).unwrap();
        prop_assert_eq!(
            check_partial_isomorphism(&picks, &g, &h),
            check_partial_isomorphism(&other, &g, &h)
        );
        for k in 0..=2 {
            prop_assert_eq!(s.wins_within(None, &picks, k).unwrap(), s.wins_within(None, &other, k).unwrap());
        }
    }

    #[test]
    fn solver_matches_oracle_on_random_pairs(g in graph_strategy(4), h in graph_strategy(4)) {
        for v in [Variant::Full, Variant::ZeroAlternation] {
            let expected = oracle_value(&g, &h, v, 5);
            let got = match value(&g, &h, v) {
                GameValue::Within(k) => Some(k),
                GameValue::Beyond(_) => None,
            };
            prop_assert_eq!(got, expected);
        }
    }
}
