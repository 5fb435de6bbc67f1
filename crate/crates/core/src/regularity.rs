//! Castelnuovo–Mumford regularity of `K[V]/I(G)` over the two-element field.
//!
//! Hochster's formula reduces the graded Betti numbers of the edge ideal to
//! reduced homology of the independence complexes of induced subgraphs:
//! `reg(G)` is the largest `d` for which some `W ⊆ V` has
//! `H̃_{d-1}(Ind(G_W); F_2) != 0`. `W = ∅` contributes `d = 0`.
//!
//! Regularity can depend on the characteristic in general. Every graph the
//! verifier feeds through here is chordal or has a chordal complement, where
//! the answer is the same over every field.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{low_mask, Bits, Graph, VertexSet};

/// Largest ground set for which an independence complex is materialised.
pub const MAX_COMPLEX_VERTICES: usize = 16;
/// Largest graph accepted by the full `2^n` subset scan.
pub const MAX_REGULARITY_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error("graph has {n} vertices, at most {max} are supported here")]
    TooLarge { n: usize, max: usize },
    #[error("face set is not closed under taking subsets")]
    NotClosed,
    #[error("face {face:#b} uses vertices outside a ground set of size {ground}")]
    OutsideGround { face: u64, ground: usize },
}

/// A simplicial complex stored as its faces grouped by dimension.
/// `faces[k]` holds the faces with `k` vertices, i.e. of dimension `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    faces: Vec<Vec<u64>>,
}

impl SimplicialComplex {
    /// The complex generated by the given facets.
    pub fn from_facets(ground: usize, facets: &[u64]) -> Result<Self, RegularityError> {
        if ground > MAX_COMPLEX_VERTICES {
            return Err(RegularityError::TooLarge {
                n: ground,
                max: MAX_COMPLEX_VERTICES,
            });
        }
        let mut all = std::collections::BTreeSet::new();
        all.insert(0u64);
        for &f in facets {
            if f & !low_mask(ground) != 0 {
                return Err(RegularityError::OutsideGround { face: f, ground });
            }
            // every subset of f
            let mut sub = f;
            loop {
                all.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        Ok(SimplicialComplex::group(ground, all))
    }

    /// Validates downward closure of an explicit face list.
    pub fn from_faces(ground: usize, faces: &[u64]) -> Result<Self, RegularityError> {
        if ground > MAX_COMPLEX_VERTICES {
            return Err(RegularityError::TooLarge {
                n: ground,
                max: MAX_COMPLEX_VERTICES,
            });
        }
        let set: std::collections::BTreeSet<u64> = faces.iter().copied().collect();
        for &f in &set {
            if f & !low_mask(ground) != 0 {
                return Err(RegularityError::OutsideGround { face: f, ground });
            }
            if Bits(f).any(|v| !set.contains(&(f & !(1 << v)))) {
                return Err(RegularityError::NotClosed);
            }
        }
        if !set.is_empty() && !set.contains(&0) {
            return Err(RegularityError::NotClosed);
        }
        Ok(SimplicialComplex::group(ground, set))
    }

    fn group(ground: usize, faces: impl IntoIterator<Item = u64>) -> Self {
        let mut by_size: Vec<Vec<u64>> = Vec::new();
        for f in faces {
            let k = f.count_ones() as usize;
            if by_size.len() <= k {
                by_size.resize(k + 1, Vec::new());
            }
            by_size[k].push(f);
        }
        for level in &mut by_size {
            level.sort_by_key(|&f| lex_key(f));
        }
        SimplicialComplex {
            ground,
            faces: by_size,
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Faces of dimension `dim` (`-1` for the empty face).
    pub fn faces_of_dim(&self, dim: isize) -> &[u64] {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|k| self.faces.get(k))
            .map_or(&[], |v| v.as_slice())
    }

    /// `f_{-1}, f_0, f_1, ...`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// `-1` for `{∅}`, `-2` for the void complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// Reduced Euler characteristic `Σ_{k >= -1} (-1)^k f_k`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// Sort key giving lexicographic order on the sorted vertex lists.
fn lex_key(f: u64) -> Vec<usize> {
    Bits(f).collect()
}

/// Independence complex of `G`: the faces are the independent sets.
pub fn independence_complex(g: &Graph) -> Result<SimplicialComplex, RegularityError> {
    if g.n() > MAX_COMPLEX_VERTICES {
        return Err(RegularityError::TooLarge {
            n: g.n(),
            max: MAX_COMPLEX_VERTICES,
        });
    }
    Ok(independence_complex_on(g.rows(), g.vertices().0))
}

/// Independence complex of `G_W`, keeping the original vertex names.
fn independence_complex_on(adj: &[u64], within: u64) -> SimplicialComplex {
    fn grow(adj: &[u64], face: u64, candidates: u64, out: &mut Vec<Vec<u64>>) {
        let k = face.count_ones() as usize;
        if out.len() <= k {
            out.push(Vec::new());
        }
        out[k].push(face);
        for v in Bits(candidates) {
            let later = candidates & !low_mask(v + 1) & !adj[v];
            grow(adj, face | 1 << v, later, out);
        }
    }
    let mut faces = Vec::new();
    grow(adj, 0, within, &mut faces);
    // depth-first growth in increasing vertex order already lists each level lexicographically
    SimplicialComplex {
        ground: adj.len(),
        faces,
    }
}

/// Reduced homology ranks over F_2; entry `i` is the rank in dimension `i - 1`.
pub fn reduced_homology_ranks(c: &SimplicialComplex) -> Vec<usize> {
    let counts = c.face_counts();
    if counts.is_empty() {
        return Vec::new();
    }
    // ranks[k] = rank of the boundary map from faces with k vertices
    let mut ranks = vec![0usize; counts.len() + 1];
    if counts.len() > 1 && counts[1] > 0 {
        ranks[1] = 1;
    }
    for (k, rank) in ranks.iter_mut().enumerate().take(counts.len()).skip(2) {
        *rank = boundary_rank(&c.faces[k], &c.faces[k - 1]);
    }
    let betti: Vec<usize> = (0..counts.len())
        .map(|k| counts[k] - ranks[k] - ranks[k + 1])
        .collect();
    assert_eq!(
        c.reduced_euler_characteristic(),
        betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum::<i64>()
    );
    betti
}

/// Rank over F_2 of the boundary matrix from `upper` faces to `lower` faces.
fn boundary_rank(upper: &[u64], lower: &[u64]) -> usize {
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let words = lower.len().div_ceil(64);
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for &face in upper {
        let mut col = vec![0u64; words];
        for v in Bits(face) {
            let i = index[&(face & !(1 << v))];
            col[i / 64] ^= 1 << (i % 64);
        }
        while let Some(top) = highest_bit(&col) {
            match pivots.get(&top) {
                Some(p) => col.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                None => {
                    pivots.insert(top, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(col: &[u64]) -> Option<usize> {
    col.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityResult {
    pub reg: usize,
    /// First subset (in increasing bitmask order) attaining the maximum.
    #[serde(rename = "witness_W")]
    pub witness_subset: Vec<usize>,
    /// Homological degree `d`: `H̃_{d-1}` of the witness complex is nonzero.
    #[serde(rename = "witness_d")]
    pub witness_degree: usize,
}

/// Exact regularity by scanning every vertex subset.
pub fn regularity(g: &Graph) -> Result<RegularityResult, RegularityError> {
    let n = g.n();
    if n > MAX_REGULARITY_VERTICES {
        return Err(RegularityError::TooLarge {
            n,
            max: MAX_REGULARITY_VERTICES,
        });
    }
    let adj = g.rows();
    let mut best = (0usize, 0u64);
    for w in 1..=low_mask(n) {
        // an isolated vertex of G_W makes Ind(G_W) a cone, which is acyclic
        if Bits(w).any(|v| adj[v] & w == 0) {
            continue;
        }
        let betti = reduced_homology_ranks(&independence_complex_on(adj, w));
        // betti[i] is dimension i - 1, contributing d = i
        if let Some(d) = betti.iter().rposition(|&b| b != 0) {
            if d > best.0 {
                best = (d, w);
            }
        }
    }
    Ok(RegularityResult {
        reg: best.0,
        witness_subset: VertexSet(best.1).iter().collect(),
        witness_degree: best.0,
    })
}
