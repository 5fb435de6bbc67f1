//! Exact matching invariants: `match(G)`, `min-match(G)` and `ind-match(G)`.
//!
//! The matching number uses Edmonds' blossom algorithm. The other two are
//! NP-hard; both are solved exactly per connected component, memoised on the
//! vertex set for larger graphs.
//!
//! Two facts make the subset recursion exact:
//!
//! * Adding edges inside a set `A` of vertices that are neither matched nor
//!   adjacent to matched vertices never creates an edge between two members
//!   of the induced matching, so the best completion depends only on `A`.
//! * A matching `M` is maximal iff the uncovered vertices are independent,
//!   so the cheapest completion of a partial matching depends only on the
//!   uncovered set `F` and equals `min-match(G[F])`.
//!
//! `min-match` itself is computed as the minimum edge dominating set size,
//! which equals it. For a vertex cover `S` the fewest edges whose ends cover
//! `S` number `|S| - match(G[S])`, and that quantity only grows when `S`
//! grows, so it is enough to scan complements of maximal independent sets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{component_of, low_mask, Bits, Edge, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("pair {0:?} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("edges {0:?} and {1:?} share a vertex")]
    NotAMatching(Edge, Edge),
}

/// `(ind-match, min-match, match)` of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantTriple {
    #[serde(rename = "ind")]
    pub ind_match: usize,
    #[serde(rename = "min")]
    pub min_match: usize,
    #[serde(rename = "match")]
    pub match_number: usize,
}

impl InvariantTriple {
    pub fn new(ind_match: usize, min_match: usize, match_number: usize) -> Self {
        InvariantTriple {
            ind_match,
            min_match,
            match_number,
        }
    }

    pub fn as_tuple(self) -> (usize, usize, usize) {
        (self.ind_match, self.min_match, self.match_number)
    }

    /// `ind <= min <= match <= 2 min`.
    pub fn satisfies_chain(self) -> bool {
        self.ind_match <= self.min_match
            && self.min_match <= self.match_number
            && self.match_number <= 2 * self.min_match
    }

    /// Componentwise `<=`.
    pub fn dominated_by(self, other: InvariantTriple) -> bool {
        self.ind_match <= other.ind_match
            && self.min_match <= other.min_match
            && self.match_number <= other.match_number
    }
}

impl std::ops::Add for InvariantTriple {
    type Output = InvariantTriple;

    fn add(self, o: InvariantTriple) -> InvariantTriple {
        InvariantTriple::new(
            self.ind_match + o.ind_match,
            self.min_match + o.min_match,
            self.match_number + o.match_number,
        )
    }
}

impl std::fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.ind_match, self.min_match, self.match_number
        )
    }
}

/// A validated set of pairwise disjoint edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: Vec<Edge>,
    #[serde(skip)]
    covered: VertexSet,
}

impl Matching {
    pub fn new(g: &Graph, edges: &[Edge]) -> Result<Self, MatchingError> {
        let edges = normalized(g, edges)?;
        let mut covered = 0u64;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if covered & (1 << u | 1 << v) != 0 {
                let other = edges[..i]
                    .iter()
                    .find(|&&(a, b)| a == u || a == v || b == u || b == v)
                    .copied()
                    .unwrap();
                return Err(MatchingError::NotAMatching(other, (u, v)));
            }
            covered |= 1 << u | 1 << v;
        }
        Ok(Matching {
            edges,
            covered: VertexSet(covered),
        })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `V(M)`.
    pub fn covered(&self) -> VertexSet {
        self.covered
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_maximal_in(&self, g: &Graph) -> bool {
        g.is_independent_set(VertexSet(g.vertices().0 & !self.covered.0))
    }

    pub fn is_induced_in(&self, g: &Graph) -> bool {
        self.edges.iter().enumerate().all(|(i, &(a, b))| {
            let ends = g.rows()[a] | g.rows()[b];
            self.edges[i + 1..]
                .iter()
                .all(|&(c, d)| ends & (1 << c | 1 << d) == 0)
        })
    }
}

fn normalized(g: &Graph, edges: &[Edge]) -> Result<Vec<Edge>, MatchingError> {
    edges
        .iter()
        .map(|&(u, v)| {
            if g.has_edge(u, v) {
                Ok((u.min(v), u.max(v)))
            } else {
                Err(MatchingError::NotAnEdge((u, v)))
            }
        })
        .collect()
}

/// True iff the given edges of `g` are pairwise disjoint.
pub fn is_matching(g: &Graph, edges: &[Edge]) -> Result<bool, MatchingError> {
    match Matching::new(g, edges) {
        Ok(_) => Ok(true),
        Err(MatchingError::NotAMatching(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// True iff no edge of `g` can be added to the matching.
pub fn is_maximal_matching(g: &Graph, edges: &[Edge]) -> Result<bool, MatchingError> {
    Ok(Matching::new(g, edges)?.is_maximal_in(g))
}

/// True iff no edge of `g` meets two distinct members of the matching.
pub fn is_induced_matching(g: &Graph, edges: &[Edge]) -> Result<bool, MatchingError> {
    Ok(Matching::new(g, edges)?.is_induced_in(g))
}

pub fn match_number(g: &Graph) -> usize {
    max_matching_size(g.rows(), g.vertices().0)
}

pub fn min_match_number(g: &Graph) -> usize {
    Solver::new(g).min_maximal(g.vertices().0) as usize
}

pub fn ind_match_number(g: &Graph) -> usize {
    Solver::new(g).max_induced(g.vertices().0) as usize
}

pub fn invariant_triple(g: &Graph) -> InvariantTriple {
    let mut s = Solver::new(g);
    let full = g.vertices().0;
    InvariantTriple::new(
        s.max_induced(full) as usize,
        s.min_maximal(full) as usize,
        max_matching_size(g.rows(), full),
    )
}

/// Lexicographically first maximum matching under the fixed edge order.
pub fn maximum_matching(g: &Graph) -> Matching {
    let adj = g.rows();
    let full = g.vertices().0;
    let best = max_matching_size(adj, full);
    let mut chosen = Vec::new();
    let mut covered = 0u64;
    for (u, v) in g.edges() {
        if chosen.len() == best {
            break;
        }
        let next = covered | 1 << u | 1 << v;
        if covered & (1 << u | 1 << v) == 0
            && chosen.len() + 1 + max_matching_size(adj, full & !next) == best
        {
            chosen.push((u, v));
            covered = next;
        }
    }
    Matching {
        edges: chosen,
        covered: VertexSet(covered),
    }
}

/// Lexicographically first minimum maximal matching under the fixed edge order.
pub fn minimum_maximal_matching(g: &Graph) -> Matching {
    let mut s = Solver::new(g);
    let full = g.vertices().0;
    let best = s.min_maximal(full) as usize;
    let mut chosen = Vec::new();
    let mut covered = 0u64;
    for (u, v) in g.edges() {
        if chosen.len() == best {
            break;
        }
        let next = covered | 1 << u | 1 << v;
        if covered & (1 << u | 1 << v) == 0
            && chosen.len() + 1 + s.min_maximal(full & !next) as usize == best
        {
            chosen.push((u, v));
            covered = next;
        }
    }
    Matching {
        edges: chosen,
        covered: VertexSet(covered),
    }
}

/// Lexicographically first maximum induced matching under the fixed edge order.
pub fn maximum_induced_matching(g: &Graph) -> Matching {
    let adj = g.rows();
    let mut s = Solver::new(g);
    let full = g.vertices().0;
    let best = s.max_induced(full) as usize;
    let mut chosen = Vec::new();
    let mut covered = 0u64;
    let mut blocked = 0u64;
    for (u, v) in g.edges() {
        if chosen.len() == best {
            break;
        }
        let next = blocked | adj[u] | adj[v] | 1 << u | 1 << v;
        if blocked & (1 << u | 1 << v) == 0
            && chosen.len() + 1 + s.max_induced(full & !next) as usize == best
        {
            chosen.push((u, v));
            covered |= 1 << u | 1 << v;
            blocked = next;
        }
    }
    Matching {
        edges: chosen,
        covered: VertexSet(covered),
    }
}

/// Graphs above this size memoise subproblems; below it plain recursion is faster.
const MEMO_THRESHOLD: usize = 10;

struct Solver<'a> {
    adj: &'a [u64],
    memo: Option<(HashMap<u64, u32>, HashMap<u64, u32>)>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph) -> Self {
        let memo = (g.n() > MEMO_THRESHOLD).then(|| (HashMap::new(), HashMap::new()));
        Solver {
            adj: g.rows(),
            memo,
        }
    }

    /// Drops vertices with no neighbour inside `set`.
    fn strip(&self, set: u64) -> u64 {
        Bits(set)
            .filter(|&v| self.adj[v] & set != 0)
            .fold(0, |m, v| m | 1 << v)
    }

    fn min_degree_vertex(&self, set: u64, within: u64) -> usize {
        Bits(within)
            .min_by_key(|&v| (self.adj[v] & set).count_ones())
            .unwrap()
    }

    /// `ind-match(G[set])`.
    fn max_induced(&mut self, set: u64) -> u32 {
        let set = self.strip(set);
        if set == 0 {
            return 0;
        }
        let comp = component_of(self.adj, set.trailing_zeros() as usize, set);
        if comp != set {
            return self.max_induced(comp) + self.max_induced(set & !comp);
        }
        if let Some((memo, _)) = &self.memo {
            if let Some(&hit) = memo.get(&set) {
                return hit;
            }
        }
        let ceiling = set.count_ones() / 2;
        let v = self.min_degree_vertex(set, set);
        // v unmatched
        let mut best = self.max_induced(set & !(1 << v));
        for u in Bits(self.adj[v] & set) {
            if best == ceiling {
                break;
            }
            let rest = set & !(self.adj[u] | self.adj[v] | 1 << u | 1 << v);
            best = best.max(1 + self.max_induced(rest));
        }
        if let Some((memo, _)) = &mut self.memo {
            memo.insert(set, best);
        }
        best
    }

    /// `min-match(G[set])`.
    fn min_maximal(&mut self, set: u64) -> u32 {
        let set = self.strip(set);
        if set == 0 {
            return 0;
        }
        let comp = component_of(self.adj, set.trailing_zeros() as usize, set);
        if comp != set {
            return self.min_maximal(comp) + self.min_maximal(set & !comp);
        }
        if let Some((_, memo)) = &self.memo {
            if let Some(&hit) = memo.get(&set) {
                return hit;
            }
        }
        let mut best = u32::MAX;
        self.cover_search(set, 0, set, 0, &mut best);
        if let Some((_, memo)) = &mut self.memo {
            memo.insert(set, best);
        }
        best
    }

    /// Bron–Kerbosch over the maximal independent sets `I` of `G[set]`,
    /// minimising `|S| - match(G[S])` for the vertex cover `S = set \ I`.
    fn cover_search(&self, set: u64, chosen: u64, mut cand: u64, mut excl: u64, best: &mut u32) {
        if cand == 0 {
            if excl == 0 {
                let cover = set & !chosen;
                let value = cover.count_ones() - max_matching_size(self.adj, cover) as u32;
                *best = (*best).min(value);
            }
            return;
        }
        // every vertex adjacent to the independent set is in the cover
        let forced = set & !chosen & !cand & !excl;
        if forced.count_ones().div_ceil(2) >= *best {
            return;
        }
        let pivot = Bits(cand | excl)
            .max_by_key(|&u| (cand & !self.adj[u] & !(1 << u)).count_ones())
            .unwrap();
        for v in Bits(cand & (self.adj[pivot] | 1 << pivot)) {
            let keep = !self.adj[v] & !(1 << v);
            self.cover_search(set, chosen | 1 << v, cand & keep, excl & keep, best);
            cand &= !(1 << v);
            excl |= 1 << v;
        }
    }
}

const NONE: usize = usize::MAX;

/// Maximum matching size of `G[mask]`.
pub(crate) fn max_matching_size(adj: &[u64], mask: u64) -> usize {
    let mate = max_matching_mates(adj, mask);
    mate.iter().filter(|&&m| m != NONE).count() / 2
}

/// Edmonds' blossom algorithm restricted to the vertices in `mask`.
fn max_matching_mates(adj: &[u64], mask: u64) -> Vec<usize> {
    let mask = mask & low_mask(adj.len());
    let mut b = Blossom {
        adj,
        mask,
        mate: vec![NONE; adj.len()],
        parent: vec![NONE; adj.len()],
        base: (0..adj.len()).collect(),
        used: 0,
        in_blossom: 0,
        queue: Vec::with_capacity(adj.len()),
    };
    // greedy start
    for v in Bits(mask) {
        if b.mate[v] == NONE {
            if let Some(u) = Bits(adj[v] & mask).find(|&u| b.mate[u] == NONE) {
                b.mate[v] = u;
                b.mate[u] = v;
            }
        }
    }
    for root in Bits(mask) {
        if b.mate[root] == NONE {
            if let Some(end) = b.find_augmenting_path(root) {
                b.augment(end);
            }
        }
    }
    b.mate
}

struct Blossom<'a> {
    adj: &'a [u64],
    mask: u64,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: u64,
    in_blossom: u64,
    queue: Vec<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = 0u64;
        loop {
            a = self.base[a];
            seen |= 1 << a;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen >> b & 1 == 1 {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom |= 1 << self.base[v] | 1 << self.base[self.mate[v]];
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        self.used = 1 << root;
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in Bits(self.adj[v] & self.mask) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                let to_is_outer =
                    to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE);
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom = 0;
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in Bits(self.mask) {
                        if self.in_blossom >> self.base[i] & 1 == 1 {
                            self.base[i] = cur;
                            if self.used >> i & 1 == 0 {
                                self.used |= 1 << i;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used |= 1 << m;
                    self.queue.push(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn p4() -> Graph {
        Graph::path(4).unwrap()
    }

    #[test]
    fn matching_predicate() {
        assert_eq!(is_matching(&p4(), &[(0, 1), (2, 3)]), Ok(true));
        assert_eq!(is_matching(&p4(), &[(0, 1), (1, 2)]), Ok(false));
        assert_eq!(is_matching(&p4(), &[]), Ok(true));
        assert_eq!(
            is_matching(&p4(), &[(0, 2)]),
            Err(MatchingError::NotAnEdge((0, 2)))
        );
        assert_eq!(is_matching(&p4(), &[(1, 0)]), Ok(true));
    }

    #[test]
    fn maximal_predicate() {
        assert_eq!(is_maximal_matching(&p4(), &[(1, 2)]), Ok(true));
        assert_eq!(is_maximal_matching(&p4(), &[(0, 1)]), Ok(false));
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(is_maximal_matching(&k4, &[(0, 1), (2, 3)]), Ok(true));
        assert_eq!(
            is_maximal_matching(&p4(), &[(0, 1), (1, 2)]),
            Err(MatchingError::NotAMatching((0, 1), (1, 2)))
        );
        // empty matching of an edgeless graph is maximal
        assert_eq!(
            is_maximal_matching(&Graph::empty(3).unwrap(), &[]),
            Ok(true)
        );
    }

    #[test]
    fn induced_predicate() {
        assert_eq!(is_induced_matching(&p4(), &[(0, 1), (2, 3)]), Ok(false));
        let two = Graph::complete(2)
            .unwrap()
            .disjoint_union(&Graph::complete(2).unwrap())
            .unwrap();
        assert_eq!(is_induced_matching(&two, &[(0, 1), (2, 3)]), Ok(true));
        assert_eq!(
            is_induced_matching(&Graph::path(5).unwrap(), &[(0, 1), (3, 4)]),
            Ok(true)
        );
        assert_eq!(
            is_induced_matching(&Graph::path(5).unwrap(), &[(0, 1), (2, 3)]),
            Ok(false)
        );
        assert_eq!(
            is_induced_matching(&Graph::path(6).unwrap(), &[(0, 1), (4, 5)]),
            Ok(true)
        );
    }

    #[test]
    fn small_values() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(match_number(&k4), 2);
        assert_eq!(min_match_number(&k4), 2);
        assert_eq!(match_number(&p4()), 2);
        assert_eq!(min_match_number(&p4()), 1);
        assert_eq!(ind_match_number(&Graph::complete(6).unwrap()), 1);
        assert_eq!(invariant_triple(&p4()), InvariantTriple::new(1, 1, 2));
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(invariant_triple(&k33), InvariantTriple::new(1, 3, 3));
        let two = Graph::complete(2)
            .unwrap()
            .disjoint_union(&Graph::complete(2).unwrap())
            .unwrap();
        assert_eq!(invariant_triple(&two), InvariantTriple::new(2, 2, 2));
    }

    #[test]
    fn edgeless_and_tiny() {
        for n in 0..4 {
            let g = Graph::empty(n).unwrap();
            assert_eq!(invariant_triple(&g), InvariantTriple::new(0, 0, 0));
            assert!(minimum_maximal_matching(&g).is_empty());
        }
        let g = Graph::from_edge_list(5, &[(1, 3)]).unwrap();
        assert_eq!(invariant_triple(&g), InvariantTriple::new(1, 1, 1));
    }

    #[test]
    fn family_examples() {
        let g1 = FamilySpec::G1 { a: 2, b: 1, c: 3 }.build().unwrap();
        assert_eq!(match_number(&g1), 3);
        assert_eq!(min_match_number(&g1), 2);
        let g2 = FamilySpec::G2 {
            a: 2,
            b: 0,
            c: 1,
            d: 0,
            e: 1,
        }
        .build()
        .unwrap();
        assert_eq!(ind_match_number(&g2), 2);
        let g3 = FamilySpec::G3 { a: 1, b: 1, c: 1 }.build().unwrap();
        assert_eq!(ind_match_number(&g3), 3);
    }

    #[test]
    fn odd_cycles_need_blossoms() {
        // two triangles joined by a path force blossom contraction
        let g = Graph::from_edge_list(
            8,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (5, 7),
            ],
        )
        .unwrap();
        assert_eq!(match_number(&g), 4);
        assert_eq!(match_number(&Graph::cycle(7).unwrap()), 3);
        // Petersen graph has a perfect matching
        let petersen = Graph::from_edge_list(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (6, 9),
                (6, 8),
                (5, 8),
            ],
        )
        .unwrap();
        assert_eq!(match_number(&petersen), 5);
        assert_eq!(ind_match_number(&petersen), 3);
        assert_eq!(min_match_number(&petersen), 3);
    }

    #[test]
    fn certificates_are_valid_and_lexicographically_first() {
        let g = p4();
        assert_eq!(maximum_matching(&g).edges(), &[(0, 1), (2, 3)]);
        assert_eq!(minimum_maximal_matching(&g).edges(), &[(1, 2)]);
        assert_eq!(maximum_induced_matching(&g).edges(), &[(0, 1)]);

        let g = Graph::complete(5).unwrap();
        assert_eq!(minimum_maximal_matching(&g).edges(), &[(0, 1), (2, 3)]);

        let g = FamilySpec::G2 {
            a: 2,
            b: 0,
            c: 1,
            d: 1,
            e: 0,
        }
        .build()
        .unwrap();
        let t = invariant_triple(&g);
        let m = maximum_matching(&g);
        let mm = minimum_maximal_matching(&g);
        let im = maximum_induced_matching(&g);
        assert_eq!((im.len(), mm.len(), m.len()), t.as_tuple());
        assert!(mm.is_maximal_in(&g));
        assert!(im.is_induced_in(&g));
        assert_eq!(is_matching(&g, m.edges()), Ok(true));
    }

    #[test]
    fn large_family_graphs_stay_fast() {
        let k64 = Graph::complete(64).unwrap();
        assert_eq!(invariant_triple(&k64), InvariantTriple::new(1, 32, 32));
        let g = FamilySpec::G2 {
            a: 3,
            b: 1,
            c: 2,
            d: 7,
            e: 6,
        }
        .build()
        .unwrap();
        assert_eq!(g.n(), 6 + 2 + 2 + 28 + 12 + 1);
        assert_eq!(invariant_triple(&g), InvariantTriple::new(14, 16, 25));
    }
}
