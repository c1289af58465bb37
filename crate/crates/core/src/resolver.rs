// SPDX-License-Identifier: Apache-2.0

//! Resolving sets: representations, resolving checks, twin classes, an
//! exact minimum search and a greedy approximation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolverError {
    #[error("landmark set is empty")]
    EmptyW,
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    IndexOutOfRange { vertex: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    TrivialGraph,
    #[error("search needs {projected} subset checks, budget is {budget}")]
    TooLarge { projected: u64, budget: u64 },
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

impl From<GraphError> for ResolverError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::IndexOutOfRange { vertex, order } => {
                ResolverError::IndexOutOfRange { vertex, order }
            }
            _ => ResolverError::Disconnected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Greedy,
}

/// A resolving set together with the distance vectors that certify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvingResult {
    pub dim: usize,
    pub basis: Vec<usize>,
    pub method: Method,
    pub certificate: BTreeMap<usize, Vec<u32>>,
}

impl ResolvingResult {
    fn new(d: &DistanceMatrix, basis: Vec<usize>, method: Method) -> Self {
        let certificate = (0..d.order())
            .map(|v| (v, basis.iter().map(|&w| d.get(v, w)).collect()))
            .collect();
        ResolvingResult {
            dim: basis.len(),
            basis,
            method,
            certificate,
        }
    }

    /// Re-checks that the certificate vectors are pairwise distinct.
    pub fn certificate_is_valid(&self) -> bool {
        let mut vectors: Vec<&Vec<u32>> = self.certificate.values().collect();
        vectors.sort_unstable();
        vectors.windows(2).all(|w| w[0] != w[1])
    }
}

fn check_ids(d: &DistanceMatrix, ids: &[usize]) -> Result<(), ResolverError> {
    match ids.iter().find(|&&v| v >= d.order()) {
        Some(&vertex) => Err(ResolverError::IndexOutOfRange {
            vertex,
            order: d.order(),
        }),
        None => Ok(()),
    }
}

/// Distances from `v` to each landmark of `w`, in order.
pub fn representation(d: &DistanceMatrix, v: usize, w: &[usize]) -> Result<Vec<u32>, ResolverError> {
    if w.is_empty() {
        return Err(ResolverError::EmptyW);
    }
    check_ids(d, &[v])?;
    check_ids(d, w)?;
    Ok(w.iter().map(|&x| d.get(v, x)).collect())
}

pub fn is_resolving(d: &DistanceMatrix, w: &[usize]) -> Result<bool, ResolverError> {
    if w.is_empty() {
        return Err(ResolverError::EmptyW);
    }
    check_ids(d, w)?;
    Ok(Checker::new(d).resolves(w))
}

/// Sort-based distinctness test, reusing its buffers across calls.
/// Representations are packed into `u128` keys when they fit.
struct Checker<'a> {
    d: &'a DistanceMatrix,
    base: u128,
    keys: Vec<u128>,
    vectors: Vec<Vec<u32>>,
}

impl<'a> Checker<'a> {
    fn new(d: &'a DistanceMatrix) -> Self {
        Checker {
            d,
            base: u128::from(d.diameter()) + 1,
            keys: Vec::with_capacity(d.order()),
            vectors: Vec::new(),
        }
    }

    fn packable(&self, k: usize) -> bool {
        self.base
            .checked_pow(u32::try_from(k).unwrap_or(u32::MAX))
            .is_some()
    }

    fn resolves(&mut self, w: &[usize]) -> bool {
        let n = self.d.order();
        if self.packable(w.len()) {
            self.keys.clear();
            for v in 0..n {
                let row = self.d.row(v);
                let key = w
                    .iter()
                    .fold(0u128, |acc, &x| acc * self.base + u128::from(row[x]));
                self.keys.push(key);
            }
            self.keys.sort_unstable();
            self.keys.windows(2).all(|p| p[0] != p[1])
        } else {
            self.vectors.clear();
            self.vectors
                .extend((0..n).map(|v| w.iter().map(|&x| self.d.get(v, x)).collect()));
            self.vectors.sort_unstable();
            self.vectors.windows(2).all(|p| p[0] != p[1])
        }
    }
}

/// Partition of the vertices into maximal classes of mutual twins:
/// `u` and `v` are twins when `d(u, x) = d(v, x)` for every `x` other
/// than `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
}

pub fn are_twins(d: &DistanceMatrix, u: usize, v: usize) -> bool {
    (0..d.order()).all(|x| x == u || x == v || d.get(u, x) == d.get(v, x))
}

pub fn twin_classes(d: &DistanceMatrix) -> TwinPartition {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..d.order() {
        match classes
            .iter_mut()
            .find(|c| c.iter().all(|&u| are_twins(d, u, v)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    TwinPartition { classes }
}

/// Every resolving set contains all but at most one vertex of each class.
pub fn twin_lower_bound(p: &TwinPartition) -> usize {
    p.classes.iter().map(|c| c.len() - 1).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate subsets the search may project.
    pub budget: u64,
    /// Worker threads; `None` runs on the ambient rayon pool.
    pub jobs: Option<usize>,
    /// Start at the twin lower bound and skip subsets that leave two
    /// twins out. Off gives a plain enumeration from size one.
    pub prune: bool,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            jobs: None,
            prune: true,
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| {
        acc.saturating_mul((n - i) as u64) / (i as u64 + 1)
    })
}

pub fn exact_metric_dimension(g: &Graph, opts: &SearchOptions) -> Result<ResolvingResult, ResolverError> {
    if g.order() < 2 {
        return Err(ResolverError::TrivialGraph);
    }
    let d = g.distance_matrix()?;
    match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| ResolverError::Pool(e.to_string()))?
            .install(|| exact_from_matrix(&d, opts)),
        None => exact_from_matrix(&d, opts),
    }
}

/// Exhaustive search for the lexicographically smallest minimum resolving
/// set. Sizes are tried in increasing order; within a size the candidates
/// are split by their smallest element and the first slice holding a
/// resolving set wins, so the answer does not depend on the thread count.
pub fn exact_from_matrix(d: &DistanceMatrix, opts: &SearchOptions) -> Result<ResolvingResult, ResolverError> {
    let n = d.order();
    if n < 2 {
        return Err(ResolverError::TrivialGraph);
    }
    let twins = twin_classes(d);
    let (start, class_of, class_len) = if opts.prune {
        let mut class_of = vec![0; n];
        for (ci, class) in twins.classes.iter().enumerate() {
            for &v in class {
                class_of[v] = ci;
            }
        }
        let lens = twins.classes.iter().map(Vec::len).collect();
        (twin_lower_bound(&twins).max(1), class_of, lens)
    } else {
        (1, Vec::new(), Vec::new())
    };

    let mut projected = 0u64;
    for k in start..n {
        projected = projected.saturating_add(binomial(n, k));
        if projected > opts.budget {
            return Err(ResolverError::TooLarge {
                projected,
                budget: opts.budget,
            });
        }
        let found = (0..=n - k).into_par_iter().find_map_first(|first| {
            search_slice(d, k, first, &class_of, &class_len)
        });
        if let Some(basis) = found {
            return Ok(ResolvingResult::new(d, basis, Method::Exact));
        }
    }
    // the set of all vertices but one always resolves a connected graph
    unreachable!("no resolving set of size below the order")
}

/// Lexicographically first resolving `k`-subset whose smallest element is
/// `first`, if any.
fn search_slice(
    d: &DistanceMatrix,
    k: usize,
    first: usize,
    class_of: &[usize],
    class_len: &[usize],
) -> Option<Vec<usize>> {
    let n = d.order();
    let mut checker = Checker::new(d);
    let mut subset: Vec<usize> = (first..first + k).collect();
    let mut hits = vec![0usize; class_len.len()];
    loop {
        let admissible = class_len.is_empty() || {
            hits.iter_mut().for_each(|h| *h = 0);
            subset.iter().for_each(|&v| hits[class_of[v]] += 1);
            hits.iter().zip(class_len).all(|(&h, &len)| h + 1 >= len)
        };
        if admissible && checker.resolves(&subset) {
            return Some(subset);
        }
        // advance positions 1..k, keeping subset[0] == first
        let mut i = k;
        loop {
            if i <= 1 {
                return None;
            }
            i -= 1;
            if subset[i] < n - k + i {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Greedy pair-separation heuristic: repeatedly adds the vertex that
/// separates the most still-unseparated pairs, lowest id on ties.
pub fn greedy_resolving_set(g: &Graph) -> Result<ResolvingResult, ResolverError> {
    if g.order() < 2 {
        return Err(ResolverError::TrivialGraph);
    }
    let d = g.distance_matrix()?;
    Ok(greedy_from_matrix(&d))
}

pub fn greedy_from_matrix(d: &DistanceMatrix) -> ResolvingResult {
    let n = d.order();
    let mut pending: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut chosen = vec![false; n];
    let mut basis = Vec::new();
    while !pending.is_empty() {
        let (best, _) = (0..n)
            .filter(|&w| !chosen[w])
            .map(|w| {
                let row = d.row(w);
                (w, pending.iter().filter(|&&(u, v)| row[u] != row[v]).count())
            })
            .fold((usize::MAX, 0), |acc, cand| if cand.1 > acc.1 { cand } else { acc });
        chosen[best] = true;
        basis.push(best);
        let row = d.row(best);
        pending.retain(|&(u, v)| row[u] == row[v]);
    }
    basis.sort_unstable();
    ResolvingResult::new(d, basis, Method::Greedy)
}
