//! Immutable simple graphs on at most 64 vertices.
//!
//! Every vertex set is a single `u64` word, so adjacency is stored as one
//! bitset row per vertex. All operations return new graphs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the number of vertices.
pub const MAX_VERTICES: usize = 64;

/// An unordered vertex pair, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex set is not independent: edge {0:?} lies inside it")]
    NotIndependent(Edge),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCount { labels: usize, n: usize },
}

/// Block tag attached to vertices of family-built graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
    Z,
    U,
    #[serde(rename = "U'")]
    UPrime,
    V,
    #[serde(rename = "w")]
    W,
}

impl Block {
    pub fn as_str(self) -> &'static str {
        match self {
            Block::X => "X",
            Block::Y => "Y",
            Block::Z => "Z",
            Block::U => "U",
            Block::UPrime => "U'",
            Block::V => "V",
            Block::W => "w",
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A set of vertices of some host graph, as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    /// True when every member is below `n`.
    pub fn within(self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().fold(0, |m, v| m | 1 << v))
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Debug, Clone)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Bits {}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Shapes accepted by [`Graph::standard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardGraph {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    /// `K_{1,c}`, center first.
    Star(usize),
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    labels: Option<Vec<Block>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            labels: None,
        })
    }

    pub fn from_edge_list(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let range = low_mask(n);
        for (i, &row) in adj.iter().enumerate() {
            if row >> i & 1 == 1 {
                return Err(GraphError::Loop(i));
            }
            if row & !range != 0 {
                let vertex = (row & !range).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            for j in Bits(row) {
                if adj[j] >> i & 1 == 0 {
                    return Err(GraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(Graph {
            n,
            adj,
            labels: None,
        })
    }

    /// Adjacency rows taken on trust. Used by hot enumeration loops.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph {
            n: adj.len(),
            adj,
            labels: None,
        }
    }

    pub fn standard(kind: StandardGraph) -> Result<Self, GraphError> {
        let size = match kind {
            StandardGraph::Complete(n) | StandardGraph::Path(n) | StandardGraph::Cycle(n) => n,
            StandardGraph::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(GraphError::Empty);
                }
                a + b
            }
            StandardGraph::Star(c) => {
                if c == 0 {
                    return Err(GraphError::Empty);
                }
                c + 1
            }
        };
        if size == 0 {
            return Err(GraphError::Empty);
        }
        if size > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(size));
        }
        let mut edges = Vec::new();
        match kind {
            StandardGraph::Complete(n) => {
                for j in 0..n {
                    for i in 0..j {
                        edges.push((i, j));
                    }
                }
            }
            StandardGraph::CompleteBipartite(a, b) => {
                for i in 0..a {
                    for j in a..a + b {
                        edges.push((i, j));
                    }
                }
            }
            StandardGraph::Path(n) => edges.extend((1..n).map(|i| (i - 1, i))),
            StandardGraph::Star(c) => edges.extend((1..=c).map(|i| (0, i))),
            StandardGraph::Cycle(n) => {
                edges.extend((1..n).map(|i| (i - 1, i)));
                if n >= 3 {
                    edges.push((0, n - 1));
                }
            }
        }
        Graph::from_edge_list(size, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Graph::standard(StandardGraph::Complete(n))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        Graph::standard(StandardGraph::CompleteBipartite(a, b))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::standard(StandardGraph::Path(n))
    }

    pub fn star(c: usize) -> Result<Self, GraphError> {
        Graph::standard(StandardGraph::Star(c))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::standard(StandardGraph::Cycle(n))
    }

    pub fn with_labels(mut self, labels: Vec<Block>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn labels(&self) -> Option<&[Block]> {
        self.labels.as_deref()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges in the fixed order used throughout the crate: lexicographic on `(u, v)`, `u < v`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn check_set(&self, w: VertexSet) -> Result<(), GraphError> {
        if w.within(self.n) {
            Ok(())
        } else {
            let vertex = (w.0 & !low_mask(self.n)).trailing_zeros() as usize;
            Err(GraphError::VertexOutOfRange { vertex, n: self.n })
        }
    }

    /// `G_W`, relabelled to `0..|W|` in increasing order of the original vertices.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(w)?;
        let keep: Vec<usize> = w.iter().collect();
        let adj = keep
            .iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.adj[u] >> v & 1 == 1)
                    .fold(0u64, |row, (j, _)| row | 1 << j)
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&u| l[u]).collect());
        Ok(Graph {
            n: keep.len(),
            adj,
            labels,
        })
    }

    /// `G \ v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        self.induced_subgraph(self.vertices().without(v))
    }

    /// `self` followed by `other`, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(Graph { n, adj, labels })
    }

    /// The S-suspension `G^S`: a new vertex `n` joined to every vertex outside `s`.
    pub fn s_suspension(&self, s: VertexSet) -> Result<Graph, GraphError> {
        self.check_set(s)?;
        if let Some(e) = self.edge_inside(s) {
            return Err(GraphError::NotIndependent(e));
        }
        let n = self.n + 1;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let w = self.n;
        let outside = low_mask(self.n) & !s.0;
        let mut adj = self.adj.clone();
        for v in Bits(outside) {
            adj[v] |= 1 << w;
        }
        adj.push(outside);
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push(Block::W);
            l
        });
        Ok(Graph { n, adj, labels })
    }

    fn edge_inside(&self, s: VertexSet) -> Option<Edge> {
        s.iter().find_map(|u| {
            let hit = self.adj[u] & s.0 & !low_mask(u + 1);
            (hit != 0).then(|| (u, hit.trailing_zeros() as usize))
        })
    }

    pub fn is_independent_set(&self, s: VertexSet) -> bool {
        s.iter().all(|u| u < self.n && self.adj[u] & s.0 == 0)
    }

    /// Single-vertex and empty graphs count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || component_of(&self.adj, 0, low_mask(self.n)) == low_mask(self.n)
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, &r)| !r & full & !(1 << i))
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Chordality via maximum cardinality search followed by a perfect
    /// elimination check on the reversed visit order.
    pub fn is_chordal(&self) -> bool {
        let order = self.max_cardinality_search();
        let mut position = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        // Reverse visit order is the candidate elimination order, so the
        // neighbours of v that must form a clique are the ones visited before v.
        let mut visited = 0u64;
        for &v in &order {
            let earlier = self.adj[v] & visited;
            if earlier != 0 {
                let parent = Bits(earlier).max_by_key(|&u| position[u]).unwrap();
                let rest = earlier & !(1 << parent);
                if rest & !self.adj[parent] != 0 {
                    return false;
                }
            }
            visited |= 1 << v;
        }
        true
    }

    /// Visit order of maximum cardinality search, ties broken by lowest index.
    pub fn max_cardinality_search(&self) -> Vec<usize> {
        let mut weight = vec![0usize; self.n];
        let mut unvisited = low_mask(self.n);
        let mut order = Vec::with_capacity(self.n);
        while unvisited != 0 {
            let v = Bits(unvisited)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            order.push(v);
            unvisited &= !(1 << v);
            for u in Bits(self.adj[v] & unvisited) {
                weight[u] += 1;
            }
        }
        order
    }

    /// Backtracking isomorphism test with degree pruning. Meant for small graphs.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n
            || self.edge_count() != other.edge_count()
            || self.degree_sequence() != other.degree_sequence()
        {
            return false;
        }
        // map high-degree vertices first, they constrain the search the most
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut image = vec![usize::MAX; self.n];
        self.extend_isomorphism(other, &order, 0, &mut image, 0)
    }

    fn extend_isomorphism(
        &self,
        other: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: u64,
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for t in Bits(low_mask(other.n) & !used) {
            if other.degree(t) != self.degree(v) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.has_edge(u, v) == other.has_edge(image[u], t));
            if consistent {
                image[v] = t;
                if self.extend_isomorphism(other, order, depth + 1, image, used | 1 << t) {
                    return true;
                }
            }
        }
        image[v] = usize::MAX;
        false
    }

    /// Graphviz rendering; block tags become vertex labels when present.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match &self.labels {
                Some(l) => out.push_str(&format!("  {v} [label=\"{}{v}\"];\n", l[v])),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push('}');
        out
    }

    /// Vertices of block `b`, when the graph carries labels.
    pub fn block(&self, b: Block) -> VertexSet {
        match &self.labels {
            Some(l) => l
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == b)
                .map(|(i, _)| i)
                .collect(),
            None => VertexSet::EMPTY,
        }
    }
}

/// Vertices reachable from `start` inside `within`.
pub(crate) fn component_of(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}
