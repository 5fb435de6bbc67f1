//! Solvers checked against slow, independent reference implementations.

use matchinv::graph6;
use matchinv::invariants::{maximum_induced_matching, maximum_matching, minimum_maximal_matching};
use matchinv::realizability::feasible_set;
use matchinv::verifier::{connected_count, enumerate_connected, realized_set};
use matchinv::{invariant_triple, regularity, Graph, InvariantTriple, VertexSet};
use proptest::prelude::*;

/// Plain edge list over the pairs `(i, j)`, `i < j`, chosen by `mask`.
fn edges_of(n: usize, mask: u64) -> Vec<(usize, usize)> {
    all_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, p)| p)
        .collect()
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Every matching of the graph, found by recursion over the edge list.
fn all_matchings(edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        edges: &[(usize, usize)],
        i: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        go(edges, i + 1, cur, out);
        let (a, b) = edges[i];
        if cur
            .iter()
            .all(|&(c, d)| c != a && c != b && d != a && d != b)
        {
            cur.push((a, b));
            go(edges, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(edges, 0, &mut Vec::new(), &mut out);
    out
}

/// `(ind, min, match)` straight from the definitions.
fn brute_triple(n: usize, edges: &[(usize, usize)]) -> (usize, usize, usize) {
    let adjacent = |u: usize, v: usize| edges.iter().any(|&(a, b)| (a, b) == (u.min(v), u.max(v)));
    let mut ind = 0;
    let mut min = usize::MAX;
    let mut max = 0;
    for m in all_matchings(edges) {
        let mut covered = vec![false; n];
        for &(a, b) in &m {
            covered[a] = true;
            covered[b] = true;
        }
        max = max.max(m.len());
        let maximal = edges.iter().all(|&(a, b)| covered[a] || covered[b]);
        if maximal {
            min = min.min(m.len());
        }
        let induced = m.iter().enumerate().all(|(i, &(a, b))| {
            m[i + 1..].iter().all(|&(c, d)| {
                ![(a, c), (a, d), (b, c), (b, d)]
                    .iter()
                    .any(|&(x, y)| adjacent(x, y))
            })
        });
        if induced {
            ind = ind.max(m.len());
        }
    }
    (ind, min, max)
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edge_list(n, edges).unwrap()
}

#[test]
fn all_three_invariants_match_brute_force_up_to_six_vertices() {
    for n in 0usize..=6 {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let edges = edges_of(n, mask);
            let got = invariant_triple(&graph(n, &edges)).as_tuple();
            assert_eq!(got, brute_triple(n, &edges), "n={n} edges={edges:?}");
        }
    }
}

#[test]
fn all_three_invariants_match_brute_force_on_seven_vertices() {
    // every labelled graph on 7 vertices, including disconnected ones
    for mask in 0..1u64 << 21 {
        let edges = edges_of(7, mask);
        let got = invariant_triple(&graph(7, &edges)).as_tuple();
        assert_eq!(got, brute_triple(7, &edges), "edges={edges:?}");
    }
}

fn has_induced_long_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    // an induced subgraph on >= 4 vertices that is connected and 2-regular
    (0..1u32 << n).filter(|s| s.count_ones() >= 4).any(|s| {
        let inside: Vec<usize> = (0..n).filter(|v| s >> v & 1 == 1).collect();
        let sub: Vec<&(usize, usize)> = edges
            .iter()
            .filter(|&&(a, b)| s >> a & 1 == 1 && s >> b & 1 == 1)
            .collect();
        let deg = |v: usize| sub.iter().filter(|&&&(a, b)| a == v || b == v).count();
        if !inside.iter().all(|&v| deg(v) == 2) {
            return false;
        }
        let mut seen = vec![inside[0]];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            for &&(a, b) in &sub {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        seen.len() == inside.len()
    })
}

#[test]
fn chordality_matches_induced_cycle_search() {
    for n in 0usize..=6 {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let edges = edges_of(n, mask);
            assert_eq!(
                graph(n, &edges).is_chordal(),
                !has_induced_long_cycle(n, &edges),
                "{edges:?}"
            );
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn isomorphism_matches_permutation_search() {
    let n = 5;
    let perms = permutations(n);
    // every graph on 5 vertices against a fixed set of references
    let refs: Vec<Graph> = [
        0u64,
        0b11_1111_1111,
        0b10_0101,
        0b1_0110_0101,
        0b11_0001_1011,
    ]
    .iter()
    .map(|&m| graph(n, &edges_of(n, m)))
    .collect();
    for mask in 0..1u64 << 10 {
        let g = graph(n, &edges_of(n, mask));
        for h in &refs {
            let brute = perms.iter().any(|p| {
                let mapped: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                let mut mapped = mapped;
                mapped.sort();
                mapped == h.edges()
            });
            assert_eq!(g.is_isomorphic(h), brute);
        }
    }
}

#[test]
fn connected_counts_against_direct_enumeration() {
    for n in 2..=5 {
        let direct = (0..1u64 << (n * (n - 1) / 2))
            .filter(|&m| graph(n, &edges_of(n, m)).is_connected())
            .count();
        assert_eq!(connected_count(n), direct as u128);
        assert_eq!(enumerate_connected(n).unwrap().count(), direct);
    }
    // frozen from the recurrence above, which agrees with direct counts where both run
    assert_eq!(connected_count(6), 26704);
    assert_eq!(connected_count(7), 1866256);
}

#[test]
fn realized_sets_frozen() {
    let r6: Vec<_> = realized_set(6).unwrap().into_iter().collect();
    assert_eq!(
        r6,
        vec![
            (1, 1, 1),
            (1, 1, 2),
            (1, 2, 2),
            (1, 2, 3),
            (1, 3, 3),
            (2, 2, 2),
            (2, 2, 3)
        ]
    );
    assert_eq!(realized_set(6).unwrap(), feasible_set(6).unwrap());
}

#[test]
fn cycle_and_path_regularity() {
    // reg of paths and cycles on m vertices is floor((m + 1) / 3), with reg(C_3) = 1
    for m in 2..=10 {
        assert_eq!(
            regularity(&Graph::path(m).unwrap()).unwrap().reg,
            (m + 1) / 3,
            "P{m}"
        );
    }
    for m in 3..=10 {
        assert_eq!(
            regularity(&Graph::cycle(m).unwrap()).unwrap().reg,
            (m + 1) / 3,
            "C{m}"
        );
    }
}

#[test]
fn graph6_round_trip_on_every_small_graph() {
    for n in 0usize..=7 {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph(n, &edges_of(n, mask));
            assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = all_pairs(n)
                .into_iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            graph(n, &edges)
        })
    })
}

fn arb_large_graph() -> impl Strategy<Value = Graph> {
    (0usize..=64).prop_flat_map(|n| {
        proptest::collection::vec((0..n.max(1), 0..n.max(1)), 0..200).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            graph(n, &edges)
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_large_graph()) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(g in arb_graph(9), h in arb_graph(9), seed in any::<u64>()) {
        prop_assert!(g.is_isomorphic(&g));
        prop_assert_eq!(g.is_isomorphic(&h), h.is_isomorphic(&g));
        // a relabelled copy is isomorphic
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (seed.rotate_left(v as u32 * 7) ^ v as u64, v));
        let relabelled: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (order[a], order[b])).collect();
        prop_assert!(g.is_isomorphic(&graph(g.n(), &relabelled)));
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(12)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn deletion_is_an_induced_subgraph(g in arb_graph(10), v in 0usize..10) {
        prop_assume!(v < g.n());
        let rest = VertexSet::full(g.n()).without(v);
        prop_assert_eq!(g.delete_vertex(v).unwrap(), g.induced_subgraph(rest).unwrap());
    }

    #[test]
    fn suspension_adds_one_vertex_joined_outside_s(g in arb_graph(10), seed in any::<u64>()) {
        let mut s = VertexSet::EMPTY;
        for v in 0..g.n() {
            if seed >> v & 1 == 1 && g.is_independent_set(s.with(v)) {
                s = s.with(v);
            }
        }
        let h = g.s_suspension(s).unwrap();
        prop_assert_eq!(h.n(), g.n() + 1);
        prop_assert_eq!(h.edge_count(), g.edge_count() + g.n() - s.len());
        prop_assert_eq!(h.neighbors(g.n()), VertexSet(VertexSet::full(g.n()).0 & !s.0));
    }

    #[test]
    fn invariants_add_over_disjoint_unions(g in arb_graph(6), h in arb_graph(6)) {
        let u = g.disjoint_union(&h).unwrap();
        prop_assert_eq!(invariant_triple(&u), invariant_triple(&g) + invariant_triple(&h));
    }

    #[test]
    fn solver_matches_brute_force_on_larger_graphs(g in arb_graph(10)) {
        let t = invariant_triple(&g);
        prop_assert_eq!(t.as_tuple(), brute_triple(g.n(), &g.edges()));
    }

    #[test]
    fn certificates_realise_the_numbers(g in arb_graph(12)) {
        let t = invariant_triple(&g);
        let (m, mm, im) = (maximum_matching(&g), minimum_maximal_matching(&g), maximum_induced_matching(&g));
        prop_assert_eq!(InvariantTriple::new(im.len(), mm.len(), m.len()), t);
        prop_assert!(mm.is_maximal_in(&g));
        prop_assert!(im.is_induced_in(&g));
        prop_assert!(t.satisfies_chain());
        prop_assert!(t.match_number <= g.n() / 2);
    }

    #[test]
    fn deleting_a_vertex_never_increases_an_invariant(g in arb_graph(11), v in 0usize..11) {
        prop_assume!(v < g.n());
        prop_assert!(invariant_triple(&g.delete_vertex(v).unwrap()).dominated_by(invariant_triple(&g)));
    }
}
