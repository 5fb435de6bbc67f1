//! Exhaustive verification over small connected graphs.
//!
//! Graphs on `n` vertices are enumerated as edge bitmasks. Bit `k` of a mask
//! is the `k`-th vertex pair in graph6 order, so a mask and the graph6 body of
//! its graph list the same bits. The mask range is cut into a fixed number of
//! contiguous chunks that are scanned in parallel and merged in chunk order,
//! so reports do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{component_of, low_mask, Bits, Edge, Graph, VertexSet};
use crate::graph6;
use crate::invariants::{invariant_triple, InvariantTriple};
use crate::realizability::{feasible_set, synthesize_witness, TupleQuery};
use crate::regularity::regularity;

pub const MIN_N: usize = 2;
pub const MAX_EXHAUSTIVE_N: usize = 7;
pub const MAX_REGULARITY_EXHAUSTIVE_N: usize = 6;
pub const MAX_WITNESS_N: usize = 9;
pub const MAX_SAMPLED_N: usize = 10;
/// Random cases drawn for each sampled lemma.
pub const LEMMA_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x6d61_7463_6869_6e76;
/// Failures kept verbatim in a report; the count covers all of them.
pub const MAX_RECORDED_FAILURES: usize = 1000;
const CHUNKS: u64 = 256;

pub type Triple = (usize, usize, usize);
/// Stand-in for `invariant_triple`, used to self-test the harness.
pub type Oracle = dyn Fn(&Graph) -> InvariantTriple + Sync;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("n = {0} must be one of 2, 4, 6")]
    NotEven(usize),
    #[error("empty range {0}..={1}")]
    EmptyRange(usize, usize),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

fn check_range(n: usize, max: usize) -> Result<(), VerifierError> {
    if (MIN_N..=max).contains(&n) {
        Ok(())
    } else {
        Err(VerifierError::OutOfRange { n, min: MIN_N, max })
    }
}

/// Vertex pairs in graph6 order: `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn vertex_pairs(n: usize) -> Vec<Edge> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn rows_of(n: usize, pairs: &[Edge], mask: u64) -> Vec<u64> {
    let mut rows = vec![0u64; n];
    for k in Bits(mask) {
        let (i, j) = pairs[k];
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
    }
    rows
}

fn connected_rows(rows: &[u64]) -> bool {
    let all = low_mask(rows.len());
    component_of(rows, 0, all) == all
}

/// Number of connected labelled graphs on `n` vertices, by inclusion–exclusion
/// on the component containing vertex 0.
pub fn connected_count(n: usize) -> u128 {
    let mut binom = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for k in 1..=i {
            binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k];
        }
    }
    let all = |m: usize| 1u128 << (m * m.saturating_sub(1) / 2);
    let mut c = vec![0u128; n + 1];
    for m in 1..=n {
        c[m] = all(m)
            - (1..m)
                .map(|k| binom[m - 1][k - 1] * c[k] * all(m - k))
                .sum::<u128>();
    }
    c[n]
}

/// Every connected labelled graph on `n` vertices, in edge-bitmask order.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = Graph>, VerifierError> {
    check_range(n, MAX_EXHAUSTIVE_N)?;
    let pairs = vertex_pairs(n);
    Ok((0..1u64 << pairs.len()).filter_map(move |mask| {
        let rows = rows_of(n, &pairs, mask);
        connected_rows(&rows).then(|| Graph::from_rows_unchecked(rows))
    }))
}

/// `{ invariant_triple(G) : G connected on n vertices }`.
pub fn realized_set(n: usize) -> Result<BTreeSet<Triple>, VerifierError> {
    Verifier::default().realized_set(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Graph reproducing the failure, when one exists.
    pub graph6: Option<String>,
    pub property: String,
    pub expected: String,
    pub actual: String,
}

impl Failure {
    fn new(
        g: Option<&Graph>,
        property: &str,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Failure {
            graph6: g.map(graph6::encode),
            property: property.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub n_min: usize,
    pub n_max: usize,
    pub exhaustive: bool,
    pub graphs_examined: u64,
    pub passed: bool,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub details: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn from_tally(
        check: &str,
        n_min: usize,
        n_max: usize,
        exhaustive: bool,
        t: Tally,
        started: Instant,
    ) -> Self {
        VerificationReport {
            check: check.to_string(),
            n_min,
            n_max,
            exhaustive,
            graphs_examined: t.examined,
            passed: t.failure_count == 0,
            failure_count: t.failure_count,
            failures: t.failures,
            details: t.details,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// JSON without the timing field; identical across runs and worker counts.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("elapsed_ms");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Failure witnesses, one graph6 string per line.
    pub fn failures_text(&self) -> String {
        self.failures
            .iter()
            .filter_map(|f| f.graph6.as_deref())
            .map(|s| format!("{s}\n"))
            .collect()
    }
}

/// Partial results of one chunk, merged in chunk order.
#[derive(Default)]
struct Tally {
    examined: u64,
    failure_count: u64,
    failures: Vec<Failure>,
    details: BTreeMap<String, Value>,
    /// triple -> smallest mask realising it
    realized: BTreeMap<Triple, u64>,
    counters: BTreeMap<&'static str, u64>,
}

impl Tally {
    fn fail(&mut self, f: Failure) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(f);
        }
    }

    fn bump(&mut self, key: &'static str, by: u64) {
        *self.counters.entry(key).or_default() += by;
    }

    fn absorb(&mut self, other: Tally) {
        self.examined += other.examined;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        for (t, m) in other.realized {
            let e = self.realized.entry(t).or_insert(m);
            *e = (*e).min(m);
        }
        for (k, c) in other.counters {
            *self.counters.entry(k).or_default() += c;
        }
        self.details.extend(other.details);
    }

    fn flush_counters(&mut self) {
        for (k, c) in std::mem::take(&mut self.counters) {
            self.details.insert(k.to_string(), json!(c));
        }
    }
}

fn triples_json(set: impl IntoIterator<Item = Triple>) -> Value {
    json!(set
        .into_iter()
        .map(|(p, q, r)| [p, q, r])
        .collect::<Vec<_>>())
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// Runs checks on a pool of `jobs` worker threads.
pub struct Verifier<'o> {
    jobs: usize,
    oracle: &'o Oracle,
    seed: u64,
}

impl Default for Verifier<'static> {
    fn default() -> Self {
        Verifier::new(default_jobs())
    }
}

impl Verifier<'static> {
    pub fn new(jobs: usize) -> Self {
        Verifier {
            jobs: jobs.max(1),
            oracle: &invariant_triple,
            seed: DEFAULT_SEED,
        }
    }
}

impl<'o> Verifier<'o> {
    /// Replaces the invariant solver, for mutation tests of the harness.
    pub fn with_oracle<'p>(self, oracle: &'p Oracle) -> Verifier<'p> {
        Verifier {
            jobs: self.jobs,
            oracle,
            seed: self.seed,
        }
    }

    /// Seed for the random parts of the lemma suite and sampled runs.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    fn triple(&self, g: &Graph) -> InvariantTriple {
        (self.oracle)(g)
    }

    fn pool(&self) -> Result<rayon::ThreadPool, VerifierError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| VerifierError::Pool(e.to_string()))
    }

    /// Scans every connected graph on `n` vertices with `visit`.
    fn scan<F>(&self, n: usize, visit: F) -> Result<Tally, VerifierError>
    where
        F: Fn(&mut Tally, u64, &Graph) + Sync,
    {
        let pairs = vertex_pairs(n);
        let total = 1u64 << pairs.len();
        let chunks = CHUNKS.min(total);
        let ranges: Vec<Range<u64>> = (0..chunks)
            .map(|i| total * i / chunks..total * (i + 1) / chunks)
            .collect();
        let parts: Vec<Tally> = self.pool()?.install(|| {
            ranges
                .into_par_iter()
                .map(|range| {
                    let mut t = Tally::default();
                    for mask in range {
                        let rows = rows_of(n, &pairs, mask);
                        if connected_rows(&rows) {
                            t.examined += 1;
                            visit(&mut t, mask, &Graph::from_rows_unchecked(rows));
                        }
                    }
                    t
                })
                .collect()
        });
        Ok(merge(parts))
    }

    /// Runs `check` on each item in parallel, merging in item order.
    fn each<T, F>(&self, items: &[T], check: F) -> Result<Tally, VerifierError>
    where
        T: Sync,
        F: Fn(&mut Tally, &T) + Sync,
    {
        let size = items.len().div_ceil(CHUNKS as usize).max(1);
        let parts: Vec<Tally> = self.pool()?.install(|| {
            items
                .par_chunks(size)
                .map(|chunk| {
                    let mut t = Tally::default();
                    chunk.iter().for_each(|item| check(&mut t, item));
                    t
                })
                .collect()
        });
        Ok(merge(parts))
    }

    pub fn realized_set(&self, n: usize) -> Result<BTreeSet<Triple>, VerifierError> {
        check_range(n, MAX_EXHAUSTIVE_N)?;
        let t = self.scan(n, |t, mask, g| {
            t.realized.entry(self.triple(g).as_tuple()).or_insert(mask);
        })?;
        Ok(t.realized.into_keys().collect())
    }

    /// `realized_set(n) = feasible_set(n)`, plus the stream count self-check.
    pub fn first_main(&self, n: usize) -> Result<VerificationReport, VerifierError> {
        self.first_main_range(n, n)
    }

    pub fn first_main_range(
        &self,
        lo: usize,
        hi: usize,
    ) -> Result<VerificationReport, VerifierError> {
        check_range(lo, MAX_EXHAUSTIVE_N)?;
        check_range(hi, MAX_EXHAUSTIVE_N)?;
        if lo > hi {
            return Err(VerifierError::EmptyRange(lo, hi));
        }
        let started = Instant::now();
        let mut total = Tally::default();
        for n in lo..=hi {
            let mut t = self.scan(n, |t, mask, g| {
                let tri = self.triple(g);
                check_inequalities(t, g, tri);
                t.realized.entry(tri.as_tuple()).or_insert(mask);
            })?;
            let pairs = vertex_pairs(n);
            let expected_count = connected_count(n);
            if u128::from(t.examined) != expected_count {
                t.fail(Failure::new(
                    None,
                    "stream_count",
                    expected_count,
                    t.examined,
                ));
            }
            let feasible = feasible_set(n).expect("n >= 2");
            let realized: BTreeSet<Triple> = t.realized.keys().copied().collect();
            for tri in realized.difference(&feasible) {
                let g = Graph::from_rows_unchecked(rows_of(n, &pairs, t.realized[tri]));
                t.fail(Failure::new(
                    Some(&g),
                    "realized_not_feasible",
                    "infeasible",
                    fmt_triple(*tri),
                ));
            }
            for &(p, q, r) in feasible.difference(&realized) {
                let witness = synthesize_witness(&TupleQuery::new(p, q, r, n))
                    .ok()
                    .and_then(|w| w.graph);
                t.fail(Failure::new(
                    witness.as_ref(),
                    "feasible_not_realized",
                    fmt_triple((p, q, r)),
                    "absent",
                ));
            }
            t.details.insert(
                format!("n={n}"),
                json!({
                    "connected_graphs": t.examined,
                    "expected_connected_graphs": expected_count as u64,
                    "realized": triples_json(realized.iter().copied()),
                    "feasible": triples_json(feasible.iter().copied()),
                }),
            );
            total.absorb(t);
        }
        Ok(VerificationReport::from_tally(
            "first-main",
            lo,
            hi,
            true,
            total,
            started,
        ))
    }

    /// Connected graphs with `min-match = n/2` are exactly `K_n` and `K_{n/2,n/2}`.
    pub fn av(&self, n: usize) -> Result<VerificationReport, VerifierError> {
        let started = Instant::now();
        let t = self.av_tally(n)?;
        Ok(VerificationReport::from_tally("av", n, n, true, t, started))
    }

    /// `av` for every even `n <= n_max`, in one report.
    pub fn av_upto(&self, n_max: usize) -> Result<VerificationReport, VerifierError> {
        check_range(n_max, 6)?;
        let started = Instant::now();
        let mut total = Tally::default();
        for n in (2..=n_max).step_by(2) {
            let mut t = self.av_tally(n)?;
            let counts = std::mem::take(&mut t.details);
            t.details.insert(format!("n={n}"), json!(counts));
            total.absorb(t);
        }
        Ok(VerificationReport::from_tally(
            "av", MIN_N, n_max, true, total, started,
        ))
    }

    fn av_tally(&self, n: usize) -> Result<Tally, VerifierError> {
        if ![2, 4, 6].contains(&n) {
            return Err(VerifierError::NotEven(n));
        }
        let kn = Graph::complete(n).expect("small");
        let kmm = Graph::complete_bipartite(n / 2, n / 2).expect("small");
        let mut t = self.scan(n, |t, _, g| {
            if self.triple(g).min_match != n / 2 {
                return;
            }
            t.bump("extremal_labelled_graphs", 1);
            if g.is_isomorphic(&kn) {
                t.bump("complete", 1);
            } else if g.is_isomorphic(&kmm) {
                t.bump("complete_bipartite", 1);
            } else {
                t.fail(Failure::new(
                    Some(g),
                    "av_classification",
                    "K_n or K_{n/2,n/2}",
                    "other",
                ));
            }
        })?;
        // both graphs must actually occur (they coincide at n = 2)
        let found_kn = t.counters.get("complete").copied().unwrap_or(0) > 0;
        let found_kmm = n == 2 || t.counters.get("complete_bipartite").copied().unwrap_or(0) > 0;
        if !found_kn {
            t.fail(Failure::new(Some(&kn), "av_missing", n / 2, "not extremal"));
        }
        if !found_kmm {
            t.fail(Failure::new(
                Some(&kmm),
                "av_missing",
                n / 2,
                "not extremal",
            ));
        }
        t.flush_counters();
        Ok(t)
    }

    /// Deletion monotonicity, twin-leaf deletion and the global inequalities
    /// over every connected graph with `n <= n_max`; component additivity and
    /// suspension invariance over seeded random samples.
    pub fn lemma_suite(&self, n_max: usize) -> Result<VerificationReport, VerifierError> {
        check_range(n_max, MAX_EXHAUSTIVE_N)?;
        let started = Instant::now();
        let mut total = Tally::default();
        for n in MIN_N..=n_max {
            let mut t = self.scan(n, |t, _, g| {
                let tri = self.triple(g);
                check_inequalities(t, g, tri);
                self.check_deletions(t, g, tri);
            })?;
            t.flush_counters();
            let counts = std::mem::take(&mut t.details);
            t.details.insert(format!("n={n}"), json!(counts));
            total.absorb(t);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let pairs: Vec<(Graph, Graph)> = (0..LEMMA_SAMPLES)
            .map(|_| {
                let n1 = rng.gen_range(1..=9);
                let n2 = rng.gen_range(1..=10 - n1);
                (random_graph(&mut rng, n1), random_graph(&mut rng, n2))
            })
            .collect();
        let mut t = self.each(&pairs, |t, (g1, g2)| {
            let u = g1.disjoint_union(g2).expect("at most 10 vertices");
            let (whole, sum) = (self.triple(&u), self.triple(g1) + self.triple(g2));
            t.bump("union_cases", 1);
            if whole != sum {
                t.fail(Failure::new(Some(&u), "component_additivity", sum, whole));
            }
        })?;
        let suspensions: Vec<(Graph, VertexSet)> = (0..LEMMA_SAMPLES)
            .map(|_| {
                let n = rng.gen_range(2..=7);
                let g = random_graph_without_isolated(&mut rng, n);
                let s = random_independent_set(&mut rng, &g);
                (g, s)
            })
            .collect();
        t.absorb(self.each(&suspensions, |t, (g, s)| {
            let gs = g.s_suspension(*s).expect("independent set");
            let (before, after) = (self.triple(g).ind_match, self.triple(&gs).ind_match);
            t.bump("suspension_cases", 1);
            if before != after {
                t.fail(Failure::new(Some(&gs), "s_suspension", before, after));
            }
        })?);
        t.flush_counters();
        t.details.insert("seed".into(), json!(self.seed));
        total.absorb(t);
        Ok(VerificationReport::from_tally(
            "lemmas", MIN_N, n_max, true, total, started,
        ))
    }

    fn check_deletions(&self, t: &mut Tally, g: &Graph, tri: InvariantTriple) {
        let adj = g.rows();
        for v in 0..g.n() {
            let smaller = g.delete_vertex(v).expect("vertex in range");
            let after = self.triple(&smaller);
            t.bump("deletion_cases", 1);
            if !after.dominated_by(tri) {
                t.fail(Failure::new(
                    Some(g),
                    "deletion_monotonicity",
                    format!("<= {tri} after deleting {v}"),
                    after,
                ));
            }
            // v is a leaf with a twin leaf on the same neighbour
            if adj[v].count_ones() == 1 {
                let w = adj[v].trailing_zeros() as usize;
                if Bits(adj[w] & !(1 << v)).any(|u| adj[u] == 1 << w) {
                    t.bump("twin_leaf_cases", 1);
                    if after != tri {
                        t.fail(Failure::new(
                            Some(g),
                            "twin_leaf",
                            format!("{tri} after deleting {v}"),
                            after,
                        ));
                    }
                }
            }
        }
    }

    /// Regularity checks: every witness with `n <= witness_n_max` is chordal
    /// with `reg = p`, and every connected graph with `n <= n_max_exhaustive`
    /// has `ind <= reg <= min` and a feasible `(reg, min, match)`.
    pub fn second_main(
        &self,
        n_max_exhaustive: usize,
        witness_n_max: usize,
    ) -> Result<VerificationReport, VerifierError> {
        check_range(n_max_exhaustive, MAX_REGULARITY_EXHAUSTIVE_N)?;
        check_range(witness_n_max, MAX_WITNESS_N)?;
        let started = Instant::now();
        let mut total = Tally::default();

        let mut fixed = Tally::default();
        let standard = (2..=8)
            .map(|n| Graph::complete(n).unwrap())
            .chain((1..=4).map(|m| Graph::complete_bipartite(m, m).unwrap()));
        for g in standard {
            fixed.bump("standard_graphs", 1);
            let reg = regularity(&g).expect("small").reg;
            if reg != 1 {
                fixed.fail(Failure::new(Some(&g), "reg_complete", 1, reg));
            }
        }

        let mut queries = Vec::new();
        for n in MIN_N..=witness_n_max {
            let feasible = feasible_set(n).expect("n >= 2");
            queries.extend(
                feasible
                    .into_iter()
                    .map(|(p, q, r)| TupleQuery::new(p, q, r, n)),
            );
        }
        fixed.absorb(self.each(&queries, |t, query| {
            t.bump("witnesses", 1);
            let g = match synthesize_witness(query).map(|w| w.graph) {
                Ok(Some(g)) => g,
                other => {
                    t.fail(Failure::new(
                        None,
                        "witness_missing",
                        query,
                        format!("{other:?}"),
                    ));
                    return;
                }
            };
            if !g.is_chordal() {
                t.fail(Failure::new(
                    Some(&g),
                    "witness_chordal",
                    "chordal",
                    "not chordal",
                ));
            }
            let reg = regularity(&g).expect("n <= 9").reg;
            if reg != query.p {
                t.fail(Failure::new(Some(&g), "witness_reg", query.p, reg));
            }
        })?);
        fixed.flush_counters();
        let counts = std::mem::take(&mut fixed.details);
        fixed.details.insert("fixed".into(), json!(counts));
        total.absorb(fixed);

        for n in MIN_N..=n_max_exhaustive {
            let feasible = feasible_set(n).expect("n >= 2");
            let mut t = self.scan(n, |t, _, g| {
                let tri = self.triple(g);
                let reg = regularity(g).expect("n <= 6").reg;
                t.realized
                    .entry((reg, tri.min_match, tri.match_number))
                    .or_insert(0);
                if !(tri.ind_match <= reg && reg <= tri.min_match) {
                    t.fail(Failure::new(
                        Some(g),
                        "reg_sandwich",
                        format!("{} <= reg <= {}", tri.ind_match, tri.min_match),
                        reg,
                    ));
                }
                let reg_tuple = (reg, tri.min_match, tri.match_number);
                if !feasible.contains(&reg_tuple) {
                    t.fail(Failure::new(
                        Some(g),
                        "reg_tuple_feasible",
                        "feasible",
                        fmt_triple(reg_tuple),
                    ));
                }
                if g.is_chordal() {
                    t.bump("chordal", 1);
                    if reg != tri.ind_match {
                        t.fail(Failure::new(
                            Some(g),
                            "chordal_reg_equals_ind",
                            tri.ind_match,
                            reg,
                        ));
                    }
                }
                if g.complement().is_chordal() {
                    t.bump("complement_chordal", 1);
                    if reg > 1 {
                        t.fail(Failure::new(
                            Some(g),
                            "cochordal_reg_at_most_1",
                            "<= 1",
                            reg,
                        ));
                    }
                }
            })?;
            t.flush_counters();
            let mut counts = std::mem::take(&mut t.details);
            let tuples = std::mem::take(&mut t.realized);
            counts.insert("connected_graphs".into(), json!(t.examined));
            counts.insert("reg_tuples".into(), triples_json(tuples.into_keys()));
            t.details.insert(format!("n={n}"), json!(counts));
            total.absorb(t);
        }
        Ok(VerificationReport::from_tally(
            "second-main",
            MIN_N,
            n_max_exhaustive.max(witness_n_max),
            true,
            total,
            started,
        ))
    }

    /// Non-exhaustive smoke check on `count` uniformly random connected graphs.
    pub fn sampled(
        &self,
        check: Check,
        n: usize,
        count: usize,
    ) -> Result<VerificationReport, VerifierError> {
        check_range(n, MAX_SAMPLED_N)?;
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let bits = n * (n - 1) / 2;
        let graphs: Vec<Graph> = (0..count)
            .map(|_| loop {
                let rows = rows_of(n, &vertex_pairs(n), rng.gen::<u64>() & low_mask(bits));
                if connected_rows(&rows) {
                    break Graph::from_rows_unchecked(rows);
                }
            })
            .collect();
        let feasible = feasible_set(n).expect("n >= 2");
        let kn = Graph::complete(n).expect("small");
        let kmm = Graph::complete_bipartite(n / 2, n - n / 2).expect("small");
        let mut t = self.each(&graphs, |t, g| {
            t.examined += 1;
            let tri = self.triple(g);
            match check {
                Check::FirstMain => {
                    check_inequalities(t, g, tri);
                    if !feasible.contains(&tri.as_tuple()) {
                        t.fail(Failure::new(
                            Some(g),
                            "realized_not_feasible",
                            "infeasible",
                            tri,
                        ));
                    }
                }
                Check::Av => {
                    if 2 * tri.min_match == n && !g.is_isomorphic(&kn) && !g.is_isomorphic(&kmm) {
                        t.fail(Failure::new(
                            Some(g),
                            "av_classification",
                            "K_n or K_{n/2,n/2}",
                            "other",
                        ));
                    }
                }
                Check::Lemmas => {
                    check_inequalities(t, g, tri);
                    self.check_deletions(t, g, tri);
                }
                Check::SecondMain => {
                    let reg = regularity(g).expect("n <= 10").reg;
                    if !(tri.ind_match <= reg && reg <= tri.min_match) {
                        t.fail(Failure::new(
                            Some(g),
                            "reg_sandwich",
                            format!("{} <= reg <= {}", tri.ind_match, tri.min_match),
                            reg,
                        ));
                    }
                    if g.is_chordal() && reg != tri.ind_match {
                        t.fail(Failure::new(
                            Some(g),
                            "chordal_reg_equals_ind",
                            tri.ind_match,
                            reg,
                        ));
                    }
                }
            }
        })?;
        t.flush_counters();
        t.details.insert("seed".into(), json!(self.seed));
        t.details.insert("samples".into(), json!(count));
        Ok(VerificationReport::from_tally(
            check.as_str(),
            n,
            n,
            false,
            t,
            started,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    FirstMain,
    Av,
    Lemmas,
    SecondMain,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::FirstMain => "first-main",
            Check::Av => "av",
            Check::Lemmas => "lemmas",
            Check::SecondMain => "second-main",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Check::FirstMain,
            Check::Av,
            Check::Lemmas,
            Check::SecondMain,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

fn merge(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), |mut acc, t| {
        acc.absorb(t);
        acc
    })
}

fn fmt_triple((p, q, r): Triple) -> String {
    InvariantTriple::new(p, q, r).to_string()
}

fn check_inequalities(t: &mut Tally, g: &Graph, tri: InvariantTriple) {
    if !tri.satisfies_chain() {
        t.fail(Failure::new(
            Some(g),
            "chain",
            "ind <= min <= match <= 2 min",
            tri,
        ));
    }
    if tri.match_number > g.n() / 2 {
        t.fail(Failure::new(
            Some(g),
            "match_bound",
            format!("<= {}", g.n() / 2),
            tri.match_number,
        ));
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let pairs = vertex_pairs(n);
    Graph::from_rows_unchecked(rows_of(n, &pairs, rng.gen::<u64>() & low_mask(pairs.len())))
}

fn random_graph_without_isolated(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let g = random_graph(rng, n);
        if g.rows().iter().all(|&r| r != 0) {
            return g;
        }
    }
}

fn random_independent_set(rng: &mut ChaCha8Rng, g: &Graph) -> VertexSet {
    let mut s = 0u64;
    for v in 0..g.n() {
        if rng.gen_bool(0.5) && g.rows()[v] & s == 0 {
            s |= 1 << v;
        }
    }
    VertexSet(s)
}

pub fn verify_theorem_first_main(n: usize) -> Result<VerificationReport, VerifierError> {
    Verifier::default().first_main(n)
}

pub fn verify_av(n: usize) -> Result<VerificationReport, VerifierError> {
    Verifier::default().av(n)
}

pub fn verify_lemma_suite(n_max: usize) -> Result<VerificationReport, VerifierError> {
    Verifier::default().lemma_suite(n_max)
}

/// The lemma suite with a replacement solver; a faulty one must fail it.
pub fn verify_lemma_suite_with(
    n_max: usize,
    oracle: &Oracle,
) -> Result<VerificationReport, VerifierError> {
    Verifier::default().with_oracle(oracle).lemma_suite(n_max)
}

pub fn verify_theorem_second_main(
    n_max_exhaustive: usize,
    witness_n_max: usize,
) -> Result<VerificationReport, VerifierError> {
    Verifier::default().second_main(n_max_exhaustive, witness_n_max)
}
