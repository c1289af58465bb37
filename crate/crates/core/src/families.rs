// SPDX-License-Identifier: Apache-2.0

//! Generators for the graph families used as amalgamation blocks.
//!
//! Every generator assigns fixed vertex ids so that bases computed for the
//! same parameters are comparable between runs. Each instance also carries
//! a default terminal vertex and an oriented default terminal edge.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family} needs {requirement}, got {got:?}")]
    TooSmall {
        family: Family,
        requirement: &'static str,
        got: Vec<usize>,
    },
    #[error("{family} takes {expected} parameter(s), got {got}")]
    BadArity {
        family: Family,
        expected: usize,
        got: usize,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Prism,
    Dhc,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::CompleteBipartite,
        Family::Prism,
        Family::Dhc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Prism => "prism",
            Family::Dhc => "dhc",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::CompleteBipartite => 2,
            _ => 1,
        }
    }

    /// Builds an instance from a parameter list, as used by the CLI.
    pub fn generate(self, params: &[usize]) -> Result<FamilyInstance, FamilyError> {
        if params.len() != self.arity() {
            return Err(FamilyError::BadArity {
                family: self,
                expected: self.arity(),
                got: params.len(),
            });
        }
        match self {
            Family::Path => path(params[0]),
            Family::Cycle => cycle(params[0]),
            Family::Complete => complete(params[0]),
            Family::CompleteBipartite => complete_bipartite(params[0], params[1]),
            Family::Prism => prism(params[0]),
            Family::Dhc => double_hats_cycle(params[0]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_owned()))
    }
}

/// A generated block together with its default terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub family: Family,
    pub params: Vec<usize>,
    pub default_terminal_vertex: usize,
    pub default_terminal_edge: (usize, usize),
}

impl FamilyInstance {
    /// Short name such as `K_{3,3}` or `DHC_8`.
    pub fn name(&self) -> String {
        let p = &self.params;
        match self.family {
            Family::Path => format!("P{}", p[0]),
            Family::Cycle => format!("C{}", p[0]),
            Family::Complete => format!("K{}", p[0]),
            Family::CompleteBipartite => format!("K{},{}", p[0], p[1]),
            Family::Prism => format!("Pr{}", p[0]),
            Family::Dhc => format!("DHC{}", p[0]),
        }
    }
}

fn too_small(family: Family, requirement: &'static str, got: &[usize]) -> FamilyError {
    FamilyError::TooSmall {
        family,
        requirement,
        got: got.to_vec(),
    }
}

fn build(
    family: Family,
    params: Vec<usize>,
    order: usize,
    edges: &[(usize, usize)],
    labels: BTreeMap<usize, String>,
    terminal_vertex: usize,
    terminal_edge: (usize, usize),
) -> FamilyInstance {
    let graph = Graph::from_edge_list(order, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("generator produced an invalid graph");
    debug_assert!(graph.is_connected());
    debug_assert!(graph.has_edge(terminal_edge.0, terminal_edge.1));
    FamilyInstance {
        graph,
        family,
        params,
        default_terminal_vertex: terminal_vertex,
        default_terminal_edge: terminal_edge,
    }
}

fn ring(start: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).map(move |i| (start + i, start + (i + 1) % n))
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`. The terminal vertex is the
/// middle vertex `n / 2`, which is internal for `n >= 3`.
pub fn path(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 2 {
        return Err(too_small(Family::Path, "n >= 2", &[n]));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Ok(build(Family::Path, vec![n], n, &edges, BTreeMap::new(), n / 2, (0, 1)))
}

pub fn cycle(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 3 {
        return Err(too_small(Family::Cycle, "n >= 3", &[n]));
    }
    let edges: Vec<_> = ring(0, n).collect();
    Ok(build(Family::Cycle, vec![n], n, &edges, BTreeMap::new(), 0, (0, 1)))
}

pub fn complete(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 2 {
        return Err(too_small(Family::Complete, "n >= 2", &[n]));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(build(Family::Complete, vec![n], n, &edges, BTreeMap::new(), 0, (0, 1)))
}

/// `K_{m,n}` with part X = `0..m` labeled `x1..xm` and part Y = `m..m+n`
/// labeled `y1..yn`. The terminal edge is `(x_m, y_n)`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<FamilyInstance, FamilyError> {
    if m < 1 || n < 1 {
        return Err(too_small(Family::CompleteBipartite, "m, n >= 1", &[m, n]));
    }
    let edges: Vec<_> = (0..m)
        .flat_map(|x| (m..m + n).map(move |y| (x, y)))
        .collect();
    let labels = (0..m)
        .map(|i| (i, format!("x{}", i + 1)))
        .chain((0..n).map(|j| (m + j, format!("y{}", j + 1))))
        .collect();
    Ok(build(
        Family::CompleteBipartite,
        vec![m, n],
        m + n,
        &edges,
        labels,
        0,
        (m - 1, m + n - 1),
    ))
}

/// Prism over an `n`-cycle: outer cycle `0..n`, inner cycle `n..2n`,
/// rungs `i - (n + i)`.
pub fn prism(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 3 {
        return Err(too_small(Family::Prism, "n >= 3", &[n]));
    }
    let edges: Vec<_> = ring(0, n)
        .chain(ring(n, n))
        .chain((0..n).map(|i| (i, n + i)))
        .collect();
    Ok(build(Family::Prism, vec![n], 2 * n, &edges, BTreeMap::new(), 0, (0, 1)))
}

/// Double-hats cycle: the cycle `x1..xn` (ids `0..n`) plus `y2` (id `n`)
/// joined to `x1, x2, x3` and `y5` (id `n + 1`) joined to `x4, x5, x6`.
/// The terminal edge is `(x6, x7)`.
pub fn double_hats_cycle(n: usize) -> Result<FamilyInstance, FamilyError> {
    if n < 7 {
        return Err(too_small(Family::Dhc, "n >= 7", &[n]));
    }
    let (y2, y5) = (n, n + 1);
    let edges: Vec<_> = ring(0, n)
        .chain((0..3).map(|i| (y2, i)))
        .chain((3..6).map(|i| (y5, i)))
        .collect();
    let labels = (0..n)
        .map(|i| (i, format!("x{}", i + 1)))
        .chain([(y2, "y2".to_owned()), (y5, "y5".to_owned())])
        .collect();
    Ok(build(Family::Dhc, vec![n], n + 2, &edges, labels, 0, (5, 6)))
}
