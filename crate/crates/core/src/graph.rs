// SPDX-License-Identifier: Apache-2.0

//! Simple undirected graphs with contiguous vertex ids, breadth-first
//! distances and vertex identification.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    IndexOutOfRange { vertex: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("empty collection of graphs")]
    EmptyCollection,
    #[error("vertices {0} and {1} are adjacent and cannot be identified")]
    AdjacentInGroup(usize, usize),
    #[error("vertex {0} appears in more than one identification group")]
    OverlappingGroups(usize),
}

/// An immutable simple graph on vertices `0..order`.
///
/// Adjacency lists are kept sorted, so two graphs with the same edge set
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Repeated edges are
    /// rejected rather than merged.
    pub fn from_edge_list(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); order];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::IndexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            labels: BTreeMap::new(),
        })
    }

    /// Attaches text labels to vertices. Labels for ids outside the graph
    /// are rejected.
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self, GraphError> {
        if let Some((&vertex, _)) = labels.iter().next_back().filter(|(&v, _)| v >= self.order()) {
            return Err(GraphError::IndexOutOfRange {
                vertex,
                order: self.order(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Label of `v`, or its numeric id when unlabeled.
    pub fn display_name(&self, v: usize) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    /// Finds a vertex by its label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find_map(|(&v, l)| (l == label).then_some(v))
    }

    pub fn is_connected(&self) -> bool {
        if self.order() <= 1 {
            return true;
        }
        self.reach_from(0).iter().all(Option::is_some)
    }

    fn reach_from(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Hop counts from `source` to every vertex.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<u32>, GraphError> {
        if source >= self.order() {
            return Err(GraphError::IndexOutOfRange {
                vertex: source,
                order: self.order(),
            });
        }
        self.reach_from(source)
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(GraphError::Disconnected)
    }

    pub fn distance_matrix(&self) -> Result<DistanceMatrix, GraphError> {
        DistanceMatrix::new(self)
    }

    /// Places the graphs side by side. Block `i`'s vertex `v` becomes
    /// `offsets[i] + v`. Labels are carried over.
    pub fn disjoint_union(graphs: &[Graph]) -> Result<(Graph, Vec<usize>), GraphError> {
        if graphs.is_empty() {
            return Err(GraphError::EmptyCollection);
        }
        let mut offsets = Vec::with_capacity(graphs.len());
        let mut adjacency = Vec::new();
        let mut labels = BTreeMap::new();
        for g in graphs {
            let offset = adjacency.len();
            offsets.push(offset);
            adjacency.extend(
                g.adjacency
                    .iter()
                    .map(|list| list.iter().map(|&w| w + offset).collect::<Vec<_>>()),
            );
            labels.extend(g.labels.iter().map(|(&v, l)| (v + offset, l.clone())));
        }
        Ok((Graph { adjacency, labels }, offsets))
    }

    /// Collapses each group of vertices into a single vertex.
    ///
    /// New ids are assigned in increasing order of the smallest old id
    /// mapped onto them, so ungrouped vertices keep their relative order.
    /// Parallel edges produced by the merge are collapsed. A merged
    /// vertex keeps the label of its smallest labeled member.
    pub fn identify_vertices(&self, groups: &[Vec<usize>]) -> Result<(Graph, Vec<usize>), GraphError> {
        let order = self.order();
        let mut group_of = vec![None; order];
        for (gi, group) in groups.iter().enumerate() {
            for &v in group {
                if v >= order {
                    return Err(GraphError::IndexOutOfRange { vertex: v, order });
                }
                if group_of[v].replace(gi).is_some() {
                    return Err(GraphError::OverlappingGroups(v));
                }
            }
            for (i, &u) in group.iter().enumerate() {
                if let Some(&v) = group[i + 1..].iter().find(|&&v| self.has_edge(u, v)) {
                    return Err(GraphError::AdjacentInGroup(u, v));
                }
            }
        }

        let mut mapping = vec![usize::MAX; order];
        let mut group_image = vec![None; groups.len()];
        let mut next = 0;
        for v in 0..order {
            mapping[v] = match group_of[v] {
                Some(gi) => *group_image[gi].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                }),
                None => {
                    next += 1;
                    next - 1
                }
            };
        }

        let mut edge_set = BTreeSet::new();
        for (u, v) in self.edges() {
            let (a, b) = (mapping[u], mapping[v]);
            edge_set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<_> = edge_set.into_iter().collect();
        let mut labels = BTreeMap::new();
        for (&v, label) in &self.labels {
            labels.entry(mapping[v]).or_insert_with(|| label.clone());
        }
        let graph = Graph::from_edge_list(next, &edges)?.with_labels(labels)?;
        Ok((graph, mapping))
    }
}

/// Dense all-pairs hop counts of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Result<Self, GraphError> {
        let order = g.order();
        let rows: Vec<Vec<u32>> = (0..order)
            .into_par_iter()
            .map(|s| g.bfs_distances(s))
            .collect::<Result<_, _>>()?;
        Ok(DistanceMatrix {
            order,
            d: rows.concat(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.order + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.order..(u + 1) * self.order]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}
