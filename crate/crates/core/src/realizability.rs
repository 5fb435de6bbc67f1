//! Which `(ind-match, min-match, match)` triples occur on connected graphs
//! with `n` vertices, and witness graphs for the ones that do.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{FamilyError, FamilySpec};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6;
use crate::invariants::{invariant_triple, InvariantTriple};

pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizabilityError {
    #[error("n must be at least 2, got {0}")]
    NTooSmall(usize),
    #[error("witness on {0} vertices exceeds the {MAX_VERTICES}-vertex cap")]
    TooLarge(usize),
    #[error("witness {spec} for {query} has invariants {actual} on {n} vertices (connected: {connected})")]
    Inconsistent {
        query: TupleQuery,
        spec: FamilySpec,
        actual: InvariantTriple,
        n: usize,
        connected: bool,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TupleQuery {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub n: usize,
}

impl TupleQuery {
    pub fn new(p: usize, q: usize, r: usize, n: usize) -> Self {
        TupleQuery { p, q, r, n }
    }
}

impl fmt::Display for TupleQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.p, self.q, self.r, self.n)
    }
}

/// First violated constraint of an unrealizable query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Infeasibility {
    /// `p < 1`.
    #[serde(rename = "P_BELOW_1")]
    PBelow1,
    #[serde(rename = "CHAIN_P_GT_Q")]
    ChainPGtQ,
    #[serde(rename = "CHAIN_Q_GT_R")]
    ChainQGtR,
    #[serde(rename = "R_GT_2Q")]
    RGtTwoQ,
    #[serde(rename = "R_GT_HALF_N")]
    RGtHalfN,
    /// Even `n`, `p >= 2` and `q = r = n/2`: only `K_n` and `K_{n/2,n/2}` have
    /// `min-match = n/2`, and both have `ind-match = 1`.
    #[serde(rename = "AV_EXCLUSION")]
    AvExclusion,
}

impl Infeasibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Infeasibility::PBelow1 => "P_BELOW_1",
            Infeasibility::ChainPGtQ => "CHAIN_P_GT_Q",
            Infeasibility::ChainQGtR => "CHAIN_Q_GT_R",
            Infeasibility::RGtTwoQ => "R_GT_2Q",
            Infeasibility::RGtHalfN => "R_GT_HALF_N",
            Infeasibility::AvExclusion => "AV_EXCLUSION",
        }
    }
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Ok(())` iff the query's triple is realised by some connected graph on `n` vertices.
pub fn check_feasible(query: &TupleQuery) -> Result<(), Infeasibility> {
    let TupleQuery { p, q, r, n } = *query;
    if p < 1 {
        Err(Infeasibility::PBelow1)
    } else if p > q {
        Err(Infeasibility::ChainPGtQ)
    } else if q > r {
        Err(Infeasibility::ChainQGtR)
    } else if r > 2 * q {
        Err(Infeasibility::RGtTwoQ)
    } else if r > n / 2 {
        Err(Infeasibility::RGtHalfN)
    } else if n % 2 == 0 && p >= 2 && q == n / 2 && r == n / 2 {
        Err(Infeasibility::AvExclusion)
    } else {
        Ok(())
    }
}

pub fn is_feasible(query: &TupleQuery) -> (bool, Option<Infeasibility>) {
    match check_feasible(query) {
        Ok(()) => (true, None),
        Err(reason) => (false, Some(reason)),
    }
}

/// All realisable triples for `n`, by scanning `p <= q <= r <= n/2`.
pub fn feasible_set(n: usize) -> Result<BTreeSet<Triple>, RealizabilityError> {
    if n < 2 {
        return Err(RealizabilityError::NTooSmall(n));
    }
    let half = n / 2;
    let mut out = BTreeSet::new();
    for r in 1..=half {
        for q in 1..=r {
            for p in 1..=q {
                if check_feasible(&TupleQuery::new(p, q, r, n)).is_ok() {
                    out.insert((p, q, r));
                }
            }
        }
    }
    Ok(out)
}

/// The family member realising a feasible query. Cases are tried in order;
/// `p = 1` always takes the first one, even when `q = r`.
pub fn witness_spec(query: &TupleQuery) -> Result<FamilySpec, Infeasibility> {
    check_feasible(query)?;
    let TupleQuery { p, q, r, n } = *query;
    let spec = if p == 1 {
        let k = r - q;
        FamilySpec::G1 {
            a: q,
            b: k,
            c: n - 2 * (q + k),
        }
    } else if p + q <= r {
        FamilySpec::G2 {
            a: q - p + 1,
            b: r - p - q,
            c: n - 2 * r + 1,
            d: p - 1,
            e: 0,
        }
    } else if q < r {
        FamilySpec::G2 {
            a: q - p + 1,
            b: 0,
            c: n - 2 * r + 1,
            d: r - q - 1,
            e: p + q - r,
        }
    } else {
        FamilySpec::G3 {
            a: q - p + 1,
            b: p - 2,
            c: n - 2 * q,
        }
    };
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub query: TupleQuery,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Infeasibility>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<InvariantTriple>,
    #[serde(skip)]
    pub graph: Option<Graph>,
}

/// Builds and checks a witness graph, or reports why none exists.
pub fn synthesize_witness(query: &TupleQuery) -> Result<WitnessReport, RealizabilityError> {
    let spec = match witness_spec(query) {
        Ok(spec) => spec,
        Err(reason) => {
            return Ok(WitnessReport {
                query: *query,
                feasible: false,
                reason: Some(reason),
                family: None,
                params: None,
                graph6: None,
                verified: None,
                graph: None,
            })
        }
    };
    if query.n > MAX_VERTICES {
        return Err(RealizabilityError::TooLarge(query.n));
    }
    let graph = spec.build()?;
    let actual = invariant_triple(&graph);
    let connected = graph.is_connected();
    if actual.as_tuple() != (query.p, query.q, query.r) || graph.n() != query.n || !connected {
        return Err(RealizabilityError::Inconsistent {
            query: *query,
            spec,
            actual,
            n: graph.n(),
            connected,
        });
    }
    Ok(WitnessReport {
        query: *query,
        feasible: true,
        reason: None,
        family: Some(spec),
        params: Some(spec.params()),
        graph6: Some(graph6::encode(&graph)),
        verified: Some(actual),
        graph: Some(graph),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: usize, q: usize, r: usize, n: usize) -> TupleQuery {
        TupleQuery::new(p, q, r, n)
    }

    #[test]
    fn feasibility_examples() {
        assert_eq!(is_feasible(&q(2, 3, 4, 8)), (true, None));
        assert_eq!(
            is_feasible(&q(2, 3, 3, 6)),
            (false, Some(Infeasibility::AvExclusion))
        );
        assert_eq!(
            is_feasible(&q(1, 1, 3, 8)),
            (false, Some(Infeasibility::RGtTwoQ))
        );
        assert_eq!(is_feasible(&q(1, 3, 3, 6)), (true, None));
    }

    #[test]
    fn reasons_in_order() {
        assert_eq!(check_feasible(&q(0, 0, 0, 4)), Err(Infeasibility::PBelow1));
        assert_eq!(
            check_feasible(&q(3, 2, 2, 9)),
            Err(Infeasibility::ChainPGtQ)
        );
        assert_eq!(
            check_feasible(&q(1, 3, 2, 9)),
            Err(Infeasibility::ChainQGtR)
        );
        assert_eq!(check_feasible(&q(1, 2, 3, 5)), Err(Infeasibility::RGtHalfN));
        assert_eq!(check_feasible(&q(1, 1, 1, 1)), Err(Infeasibility::RGtHalfN));
        // odd n never triggers the exclusion
        assert_eq!(check_feasible(&q(2, 3, 3, 7)), Ok(()));
        assert_eq!(Infeasibility::RGtTwoQ.as_str(), "R_GT_2Q");
        assert_eq!(
            serde_json::to_string(&Infeasibility::AvExclusion).unwrap(),
            "\"AV_EXCLUSION\""
        );
        assert_eq!(
            serde_json::to_string(&Infeasibility::RGtTwoQ).unwrap(),
            "\"R_GT_2Q\""
        );
    }

    #[test]
    fn small_feasible_sets() {
        let set = |v: &[Triple]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(feasible_set(2).unwrap(), set(&[(1, 1, 1)]));
        assert_eq!(
            feasible_set(5).unwrap(),
            set(&[(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)])
        );
        assert_eq!(
            feasible_set(6).unwrap(),
            set(&[
                (1, 1, 1),
                (1, 1, 2),
                (1, 2, 2),
                (1, 2, 3),
                (1, 3, 3),
                (2, 2, 2),
                (2, 2, 3)
            ])
        );
        assert_eq!(feasible_set(1), Err(RealizabilityError::NTooSmall(1)));
    }

    #[test]
    fn witness_examples() {
        let w = synthesize_witness(&q(2, 3, 4, 8)).unwrap();
        assert_eq!(
            w.family,
            Some(FamilySpec::G2 {
                a: 2,
                b: 0,
                c: 1,
                d: 0,
                e: 1
            })
        );
        assert_eq!(w.verified, Some(InvariantTriple::new(2, 3, 4)));
        assert_eq!(w.graph.as_ref().unwrap().n(), 8);

        let w = synthesize_witness(&q(1, 2, 3, 7)).unwrap();
        assert_eq!(w.family, Some(FamilySpec::G1 { a: 2, b: 1, c: 1 }));
        assert_eq!(w.verified, Some(InvariantTriple::new(1, 2, 3)));

        let w = synthesize_witness(&q(3, 3, 3, 9)).unwrap();
        assert_eq!(w.family, Some(FamilySpec::G3 { a: 1, b: 1, c: 3 }));
        assert_eq!(w.verified, Some(InvariantTriple::new(3, 3, 3)));

        let w = synthesize_witness(&q(2, 2, 2, 4)).unwrap();
        assert!(!w.feasible);
        assert_eq!(w.reason, Some(Infeasibility::AvExclusion));
    }

    #[test]
    fn case_two_map() {
        // p + q <= r
        let spec = witness_spec(&q(2, 2, 4, 9)).unwrap();
        assert_eq!(
            spec,
            FamilySpec::G2 {
                a: 1,
                b: 0,
                c: 2,
                d: 1,
                e: 0
            }
        );
        let w = synthesize_witness(&q(2, 2, 4, 9)).unwrap();
        assert_eq!(w.verified, Some(InvariantTriple::new(2, 2, 4)));
    }

    #[test]
    fn complete_graph_case() {
        assert_eq!(
            witness_spec(&q(1, 3, 3, 6)),
            Ok(FamilySpec::G1 { a: 3, b: 0, c: 0 })
        );
        let w = synthesize_witness(&q(1, 3, 3, 6)).unwrap();
        assert!(w.graph.unwrap().is_isomorphic(&Graph::complete(6).unwrap()));
    }

    #[test]
    fn oversized_witness() {
        assert_eq!(
            synthesize_witness(&q(1, 1, 1, 65)),
            Err(RealizabilityError::TooLarge(65))
        );
        assert!(synthesize_witness(&q(5, 20, 30, 64)).unwrap().feasible);
    }

    #[test]
    fn report_json_shape() {
        let w = synthesize_witness(&q(2, 2, 2, 4)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&w).unwrap();
        assert_eq!(v["feasible"], false);
        assert_eq!(v["reason"], "AV_EXCLUSION");
        assert!(v.get("graph6").is_none());

        let w = synthesize_witness(&q(2, 3, 4, 8)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&w).unwrap();
        assert_eq!(v["family"], "G2(2,0,1,0,1)");
        assert_eq!(v["params"], serde_json::json!([2, 0, 1, 0, 1]));
        assert_eq!(v["graph6"], "G~C?Nk");
        assert_eq!(
            v["verified"],
            serde_json::json!({"ind": 2, "min": 3, "match": 4})
        );
        assert_eq!(
            v["query"],
            serde_json::json!({"p": 2, "q": 3, "r": 4, "n": 8})
        );
    }
}
