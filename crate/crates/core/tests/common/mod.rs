// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles that share no code with the library's search.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use amalgadim::Graph;

/// Plain adjacency lists copied out of a graph.
pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// All-pairs hop counts by one BFS per vertex; `None` marks unreachable.
pub fn oracle_distances(adj: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    let n = adj.len();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if d[w].is_none() {
                        d[w] = Some(d[u].unwrap() + 1);
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn oracle_resolves(d: &[Vec<Option<usize>>], w: &[usize]) -> bool {
    let mut seen = HashSet::new();
    (0..d.len()).all(|v| seen.insert(w.iter().map(|&x| d[v][x]).collect::<Vec<_>>()))
}

fn combinations(n: usize, k: usize, start: usize, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if prefix.len() == k {
        return visit(prefix);
    }
    for v in start..n {
        prefix.push(v);
        if combinations(n, k, v + 1, prefix, visit) {
            return true;
        }
        prefix.pop();
    }
    false
}

/// Smallest size and lexicographically first resolving set, by plain
/// enumeration of all subsets in increasing size.
pub fn oracle_dimension(g: &Graph) -> (usize, Vec<usize>) {
    let adj = adjacency(g);
    let d = oracle_distances(&adj);
    let n = adj.len();
    for k in 1..n {
        let mut found = None;
        combinations(n, k, 0, &mut Vec::new(), &mut |w| {
            if oracle_resolves(&d, w) {
                found = Some(w.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(basis) = found {
            return (k, basis);
        }
    }
    (n.saturating_sub(1), (0..n.saturating_sub(1)).collect())
}

/// Every resolving set of size `k`, in lexicographic order.
pub fn resolving_sets_of_size(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let d = oracle_distances(&adjacency(g));
    let mut out = Vec::new();
    combinations(g.order(), k, 0, &mut Vec::new(), &mut |w| {
        if oracle_resolves(&d, w) {
            out.push(w.to_vec());
        }
        false
    });
    out
}

/// Sorted degree sequence, an isomorphism invariant.
pub fn degree_profile(g: &Graph) -> Vec<usize> {
    let mut d = g.degree_sequence();
    d.sort_unstable();
    d
}

/// Exhaustive isomorphism test for small graphs.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() || degree_profile(a) != degree_profile(b) {
        return false;
    }
    let n = a.order();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(a: &Graph, b: &Graph, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = perm.len();
        if v == a.order() {
            return true;
        }
        for image in 0..a.order() {
            if used[image] || a.degree(v) != b.degree(image) {
                continue;
            }
            let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(perm[u], image));
            if consistent {
                used[image] = true;
                perm.push(image);
                if extend(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[image] = false;
            }
        }
        false
    }
    extend(a, b, &mut perm, &mut used)
}
