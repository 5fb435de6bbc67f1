//! The three extremal graph families used to realise invariant tuples.
//!
//! Vertices are numbered block by block in the order X, Y, Z, U, U', V, w
//! (for the third family the single vertex `v` carries the V tag), so a
//! given parameter record always yields the same graph6 string.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Block, Graph, GraphError, MAX_VERTICES};
use crate::invariants::InvariantTriple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {spec}: requires {constraint}")]
    InvalidParameters {
        spec: String,
        constraint: &'static str,
    },
    #[error("{spec} would have {vertices} vertices, at most {MAX_VERTICES} are supported")]
    TooLarge { spec: String, vertices: usize },
    #[error("cannot parse family spec {0:?}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilySpec {
    /// Clique `K_2a`, pendants `y_i` on `x_1..x_2b`, and `c` pendants on `x_2a`.
    G1 { a: usize, b: usize, c: usize },
    /// The first family plus `d` padded `P_4`s, `e` copies of `K_2` and an apex `w`.
    G2 {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        e: usize,
    },
    /// Clique `K_2a`, `b` copies of `K_2`, a star `K_{1,c}` and an apex `w`.
    G3 { a: usize, b: usize, c: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::G1 { .. } => "G1",
            FamilySpec::G2 { .. } => "G2",
            FamilySpec::G3 { .. } => "G3",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            FamilySpec::G1 { a, b, c } | FamilySpec::G3 { a, b, c } => vec![a, b, c],
            FamilySpec::G2 { a, b, c, d, e } => vec![a, b, c, d, e],
        }
    }

    pub fn from_params(family: &str, params: &[usize]) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Parse(format!("{family}{params:?}"));
        let spec = match (family, params) {
            ("G1", &[a, b, c]) => FamilySpec::G1 { a, b, c },
            ("G2", &[a, b, c, d, e]) => FamilySpec::G2 { a, b, c, d, e },
            ("G3", &[a, b, c]) => FamilySpec::G3 { a, b, c },
            _ => return Err(bad()),
        };
        Ok(spec)
    }

    /// Checks the family's parameter constraints and the vertex cap.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let (ok, constraint) = match *self {
            FamilySpec::G1 { a, b, .. } => (a >= 1 && a >= b, "a >= 1, a >= b >= 0, c >= 0"),
            FamilySpec::G2 { a, b, c, d, e } => (
                a > b && c >= 1 && d + e >= 1,
                "a > b >= 0, c >= 1, d, e >= 0, d + e >= 1",
            ),
            FamilySpec::G3 { a, c, .. } => (a >= 1 && c >= 1, "a >= 1, b >= 0, c >= 1"),
        };
        if !ok {
            return Err(FamilyError::InvalidParameters {
                spec: self.to_string(),
                constraint,
            });
        }
        let vertices = self.vertex_count_unchecked();
        if vertices > MAX_VERTICES {
            return Err(FamilyError::TooLarge {
                spec: self.to_string(),
                vertices,
            });
        }
        Ok(())
    }

    fn vertex_count_unchecked(&self) -> usize {
        match *self {
            FamilySpec::G1 { a, b, c } => 2 * a + 2 * b + c,
            FamilySpec::G2 { a, b, c, d, e } => 2 * a + 2 * b + c + 4 * d + 2 * e + 1,
            FamilySpec::G3 { a, b, c } => 2 * a + 2 * b + c + 2,
        }
    }

    /// Closed-form vertex count and invariants; no graph search.
    pub fn predict(&self) -> Result<(usize, InvariantTriple), FamilyError> {
        self.validate()?;
        let triple = match *self {
            FamilySpec::G1 { a, b, .. } => InvariantTriple::new(1, a, a + b),
            FamilySpec::G2 { a, b, d, e, .. } => {
                InvariantTriple::new(d + e + 1, a + d + e, a + b + 2 * d + e + 1)
            }
            FamilySpec::G3 { a, b, .. } => InvariantTriple::new(b + 2, a + b + 1, a + b + 1),
        };
        Ok((self.vertex_count_unchecked(), triple))
    }

    /// Closed-form edge count.
    pub fn edge_count(&self) -> Result<usize, FamilyError> {
        self.validate()?;
        let clique = |a: usize| a * (2 * a - 1);
        Ok(match *self {
            FamilySpec::G1 { a, b, c } => clique(a) + 2 * b + c,
            FamilySpec::G2 { a, b, c, d, e } => {
                clique(a) + 2 * b + c + d + 2 * d + e + (2 * a + 2 * d + 2 * e)
            }
            FamilySpec::G3 { a, b, c } => clique(a) + b + c + (2 * a + 2 * b + 1),
        })
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        let mut b = Builder::default();
        match *self {
            FamilySpec::G1 { a, b: yb, c } => {
                let x = b.block(Block::X, 2 * a);
                let y = b.block(Block::Y, 2 * yb);
                let z = b.block(Block::Z, c);
                b.clique(&x);
                b.pendants(&x, &y);
                b.star(x[2 * a - 1], &z);
            }
            FamilySpec::G2 { a, b: yb, c, d, e } => {
                let x = b.block(Block::X, 2 * a);
                let y = b.block(Block::Y, 2 * yb);
                let z = b.block(Block::Z, c);
                let u = b.block(Block::U, 2 * d);
                let up = b.block(Block::UPrime, 2 * d);
                let v = b.block(Block::V, 2 * e);
                let w = b.block(Block::W, 1)[0];
                b.clique(&x);
                b.pendants(&x, &y);
                b.star(x[2 * a - 1], &z);
                b.halves(&u);
                // every u_i gets its own pendant u'_i, i = 1..2d
                b.pendants(&u, &up);
                b.halves(&v);
                b.star(w, &[x.as_slice(), &v, &u].concat());
            }
            FamilySpec::G3 { a, b: yb, c } => {
                let x = b.block(Block::X, 2 * a);
                let y = b.block(Block::Y, 2 * yb);
                let z = b.block(Block::Z, c);
                let v = b.block(Block::V, 1)[0];
                let w = b.block(Block::W, 1)[0];
                b.clique(&x);
                b.halves(&y);
                b.star(v, &z);
                b.star(w, &[x.as_slice(), &y, &[v]].concat());
            }
        }
        let g = Graph::from_edge_list(b.labels.len(), &b.edges)?.with_labels(b.labels)?;
        Ok(g)
    }

    /// Every valid spec with `|V| <= max_vertices` in the fixed small grid:
    /// G1 with a <= 3, b <= a, c <= 3; G2 with a <= 2, b < a, c <= 2, d, e <= 1;
    /// G3 with a <= 2, b <= 2, c <= 3.
    pub fn small_grid(max_vertices: usize) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for a in 1..=3 {
            for b in 0..=a {
                for c in 0..=3 {
                    out.push(FamilySpec::G1 { a, b, c });
                }
            }
        }
        for a in 1..=2 {
            for b in 0..a {
                for c in 1..=2 {
                    for d in 0..=1 {
                        for e in 0..=1 {
                            out.push(FamilySpec::G2 { a, b, c, d, e });
                        }
                    }
                }
            }
        }
        for a in 1..=2 {
            for b in 0..=2 {
                for c in 1..=3 {
                    out.push(FamilySpec::G3 { a, b, c });
                }
            }
        }
        out.retain(|s| s.validate().is_ok() && s.vertex_count_unchecked() <= max_vertices);
        out
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.build()
}

pub fn predict_invariants(spec: &FamilySpec) -> Result<(usize, InvariantTriple), FamilyError> {
    spec.predict()
}

#[derive(Default)]
struct Builder {
    labels: Vec<Block>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn block(&mut self, tag: Block, size: usize) -> Vec<usize> {
        let start = self.labels.len();
        self.labels.extend(std::iter::repeat_n(tag, size));
        (start..start + size).collect()
    }

    fn clique(&mut self, vs: &[usize]) {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.edges.push((u, v));
            }
        }
    }

    /// `{hosts[i], leaves[i]}` for each leaf.
    fn pendants(&mut self, hosts: &[usize], leaves: &[usize]) {
        self.edges
            .extend(hosts.iter().zip(leaves).map(|(&h, &l)| (h, l)));
    }

    fn star(&mut self, center: usize, leaves: &[usize]) {
        self.edges.extend(leaves.iter().map(|&l| (center, l)));
    }

    /// `{vs[i], vs[k + i]}` for a block of size `2k`.
    fn halves(&mut self, vs: &[usize]) {
        let k = vs.len() / 2;
        self.edges.extend((0..k).map(|i| (vs[i], vs[k + i])));
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses the compact form, e.g. `G2(2,0,1,0,1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Parse(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let params = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        FamilySpec::from_params(&s[..open], &params).map_err(|_| bad())
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
