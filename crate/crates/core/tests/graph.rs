use fodepth::graph::{
    canonical_key, canonical_key_with_limit, enumerate_nonisomorphic, find_induced_embedding, is_isomorphic,
    isomorphism,
};
use fodepth::{Error, GraphData};
use proptest::prelude::*;

fn perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Injective maps from `k` points into `n` points.
fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(k, n, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut Vec::new(), &mut out);
    out
}

fn brute_iso(a: &GraphData, b: &GraphData) -> bool {
    a.order() == b.order()
        && perms(a.order()).iter().any(|p| {
            (0..a.order()).all(|u| (0..a.order()).all(|v| u == v || a.has_edge(u, v) == b.has_edge(p[u], p[v])))
        })
}

fn brute_embeds(pattern: &GraphData, host: &GraphData) -> bool {
    let k = pattern.order();
    k <= host.order()
        && injections(k, host.order())
            .iter()
            .any(|m| (0..k).all(|u| (0..k).all(|v| u == v || pattern.has_edge(u, v) == host.has_edge(m[u], m[v]))))
}

fn all_labelled(n: usize) -> Vec<GraphData> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            GraphData::undirected_from_fn(n, |u, v| {
                let (a, b) = (u.min(v), u.max(v));
                let i = pairs.iter().position(|&p| p == (a, b)).unwrap();
                mask >> i & 1 == 1
            })
            .unwrap()
        })
        .collect()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = GraphData> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| GraphData::undirected_from_fn(n, |u, v| bits[u.min(v) * n + u.max(v)]).unwrap())
    })
}

fn k2() -> GraphData {
    GraphData::complete(2)
}

#[test]
fn complement_examples() {
    assert!(is_isomorphic(
        &GraphData::complete(3).complement().unwrap(),
        &GraphData::empty(3)
    ));
    assert!(is_isomorphic(
        &GraphData::path(4).complement().unwrap(),
        &GraphData::path(4)
    ));
    let two_k2 = GraphData::disjoint_union(&k2(), &k2()).unwrap();
    assert!(is_isomorphic(&GraphData::cycle(4).complement().unwrap(), &two_k2));
    assert!(is_isomorphic(&two_k2.complement().unwrap(), &GraphData::cycle(4)));
    assert_eq!(two_k2.order(), 4);
    assert_eq!(two_k2.edge_count(), 2);
    assert_eq!(two_k2.connected_components(), vec![vec![0, 1], vec![2, 3]]);
}

#[test]
fn complement_rejects_digraphs() {
    let d = GraphData::new(3, true, false).unwrap();
    assert!(matches!(d.complement(), Err(Error::Unsupported(_))));
    let looped = GraphData::new(3, true, true).unwrap();
    assert!(matches!(looped.complement(), Err(Error::Unsupported(_))));
    assert!(matches!(GraphData::new(3, false, true), Err(Error::InvalidArgument(_))));
}

#[test]
fn union_rejects_policy_mismatch() {
    let d = GraphData::new(2, true, false).unwrap();
    assert!(matches!(
        GraphData::disjoint_union(&k2(), &d),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn induced_subgraph_examples() {
    let p3 = GraphData::path(4).induced_subgraph(&[0, 1, 2]).unwrap();
    assert_eq!(p3, GraphData::path(3));
    assert_eq!(
        GraphData::cycle(4).induced_subgraph(&[0, 2]).unwrap(),
        GraphData::empty(2)
    );
    assert_eq!(
        GraphData::complete(4).induced_subgraph(&[0, 2, 3]).unwrap(),
        GraphData::complete(3)
    );
    assert!(matches!(
        GraphData::path(4).induced_subgraph(&[]),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn components_examples() {
    assert_eq!(GraphData::cycle(4).connected_components(), vec![vec![0, 1, 2, 3]]);
    assert_eq!(
        GraphData::empty(3).connected_components(),
        vec![vec![0], vec![1], vec![2]]
    );
}

#[test]
fn isomorphism_examples() {
    let two_k2 = GraphData::disjoint_union(&k2(), &k2()).unwrap();
    assert!(is_isomorphic(&GraphData::cycle(4), &two_k2.complement().unwrap()));
    assert!(!is_isomorphic(&GraphData::path(4), &GraphData::cycle(4)));
    let k3 = GraphData::complete(3);
    let w = isomorphism(&k3, &k3).unwrap();
    assert!(w.is_injective() && w.preserves_adjacency(&k3, &k3));
}

#[test]
fn embedding_examples() {
    let p4 = GraphData::path(4);
    let m = find_induced_embedding(&GraphData::path(3), &p4).unwrap();
    assert!(m.is_injective() && m.preserves_adjacency(&GraphData::path(3), &p4));
    assert!(find_induced_embedding(&GraphData::complete(3), &p4).is_none());
    assert!(find_induced_embedding(&GraphData::empty(2), &k2()).is_none());
}

#[test]
fn embedding_handles_order_twenty() {
    let c = GraphData::cycle(20);
    let shuffled = c.permuted(&(0..20).map(|i| (i * 7) % 20).collect::<Vec<_>>()).unwrap();
    let m = find_induced_embedding(&c, &shuffled).unwrap();
    assert!(m.preserves_adjacency(&c, &shuffled));
    assert!(find_induced_embedding(&GraphData::path(20), &c).is_none());
}

#[test]
fn canonical_key_examples() {
    let c4 = GraphData::cycle(4);
    let relabelled = c4.permuted(&[2, 0, 3, 1]).unwrap();
    assert_eq!(canonical_key(&c4).unwrap(), canonical_key(&relabelled).unwrap());
    assert_ne!(
        canonical_key(&GraphData::path(4)).unwrap(),
        canonical_key(&GraphData::star(3)).unwrap()
    );
    assert_eq!(
        canonical_key(&GraphData::empty(1)).unwrap(),
        canonical_key(&GraphData::complete(1)).unwrap()
    );
    assert!(matches!(canonical_key(&GraphData::path(11)), Err(Error::SizeLimit(_))));
    assert!(canonical_key_with_limit(&GraphData::path(11), 11).is_ok());
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = (1..=7)
        .map(|n| enumerate_nonisomorphic(n, false, false).unwrap().len())
        .collect();
    assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
    assert!(matches!(
        enumerate_nonisomorphic(8, false, false),
        Err(Error::SizeLimit(_))
    ));
    assert!(matches!(
        enumerate_nonisomorphic(5, true, false),
        Err(Error::SizeLimit(_))
    ));
}

#[test]
fn directed_enumeration_counts() {
    let plain: Vec<usize> = (1..=4)
        .map(|n| enumerate_nonisomorphic(n, true, false).unwrap().len())
        .collect();
    assert_eq!(plain, [1, 3, 16, 218]);
    let looped: Vec<usize> = (1..=3)
        .map(|n| enumerate_nonisomorphic(n, true, true).unwrap().len())
        .collect();
    assert_eq!(looped, [2, 10, 104]);
}

#[test]
fn enumeration_matches_brute_force_classes() {
    for n in 1..=5 {
        let reps = enumerate_nonisomorphic(n, false, false).unwrap();
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!brute_iso(a, b));
            }
        }
        for g in all_labelled(n) {
            assert_eq!(reps.iter().filter(|r| brute_iso(r, &g)).count(), 1);
        }
        assert_eq!(reps, enumerate_nonisomorphic(n, false, false).unwrap());
    }
}

#[test]
fn isomorphism_is_an_equivalence_on_small_families() {
    let family: Vec<GraphData> = (1..=5)
        .flat_map(|n| enumerate_nonisomorphic(n, false, false).unwrap())
        .flat_map(|g| {
            let n = g.order();
            let rev: Vec<usize> = (0..n).rev().collect();
            [g.clone(), g.permuted(&rev).unwrap()]
        })
        .collect();
    for a in &family {
        assert!(is_isomorphic(a, a));
        for b in &family {
            assert_eq!(is_isomorphic(a, b), is_isomorphic(b, a));
            assert_eq!(
                is_isomorphic(a, b),
                canonical_key(a).unwrap() == canonical_key(b).unwrap()
            );
        }
    }
}

#[test]
fn embedding_matches_brute_force() {
    let small: Vec<GraphData> = (1..=4)
        .flat_map(|n| enumerate_nonisomorphic(n, false, false).unwrap())
        .collect();
    let hosts: Vec<GraphData> = enumerate_nonisomorphic(5, false, false).unwrap();
    for p in &small {
        for h in hosts.iter().chain(&small) {
            let found = find_induced_embedding(p, h);
            assert_eq!(found.is_some(), brute_embeds(p, h), "{p:?} into {h:?}");
            if let Some(m) = found {
                assert!(m.is_injective() && m.preserves_adjacency(p, h));
            }
        }
    }
}

#[test]
fn mutual_embedding_at_equal_order_is_isomorphism() {
    for n in 1..=6 {
        let reps = enumerate_nonisomorphic(n, false, false).unwrap();
        for g in &reps {
            assert!(find_induced_embedding(g, g).is_some());
        }
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(find_induced_embedding(a, b).is_none());
            }
        }
    }
}

#[test]
fn text_and_json_formats() {
    let g = GraphData::cycle(5);
    assert_eq!(g.to_text(), "5 0 0\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    assert_eq!(GraphData::parse_any(&g.to_text()).unwrap(), g);
    let j = serde_json::to_string(&g.to_json()).unwrap();
    assert_eq!(GraphData::parse_any(&j).unwrap(), g);
    assert!(matches!(
        GraphData::from_text("3 0 0\n0 3\n"),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        GraphData::from_text("2 0 0\n0 0\n"),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(GraphData::from_text("2 0 0\n0 x\n"), Err(Error::Parse { .. })));
    assert!(matches!(GraphData::from_text("2 0\n"), Err(Error::Parse { .. })));
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph_strategy(9)) {
        prop_assert_eq!(g.complement().unwrap().complement().unwrap(), g);
    }

    #[test]
    fn relabelling_preserves_key_and_isomorphism(g in graph_strategy(7), seed in any::<u64>()) {
        let n = g.order();
        let mut p: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            p.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&p).unwrap();
        prop_assert!(is_isomorphic(&g, &h));
        let w = isomorphism(&g, &h).unwrap();
        prop_assert!(w.preserves_adjacency(&g, &h));
        prop_assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
    }

    #[test]
    fn key_equality_matches_brute_isomorphism(a in graph_strategy(5), b in graph_strategy(5)) {
        prop_assert_eq!(canonical_key(&a).unwrap() == canonical_key(&b).unwrap(), brute_iso(&a, &b));
    }

    #[test]
    fn text_round_trip(g in graph_strategy(12)) {
        prop_assert_eq!(GraphData::from_text(&g.to_text()).unwrap(), g.clone());
        prop_assert_eq!(GraphData::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn components_partition_vertices(g in graph_strategy(10)) {
        let comps = g.connected_components();
        let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.order()).collect::<Vec<_>>());
        for c in &comps {
            prop_assert!(g.induced_subgraph(c).unwrap().is_connected());
        }
        prop_assert!(comps.windows(2).all(|w| w[0][0] < w[1][0]));
    }
}
