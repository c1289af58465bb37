// SPDX-License-Identifier: Apache-2.0

//! Vertex- and edge-amalgamation of a collection of blocks.
//!
//! The amalgam is the disjoint union of the blocks with every terminal
//! vertex (or every terminal edge) identified. Vertices of the result are
//! labeled `b<i>:<name>` after the block they came from; merged vertices
//! join their names with `=`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{Family, FamilyInstance};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error("no blocks to amalgamate")]
    EmptyCollection,
    #[error("block {0} has fewer than two vertices")]
    TrivialBlock(usize),
    #[error("block {0} is disconnected")]
    DisconnectedBlock(usize),
    #[error("terminal vertex {vertex} is not a vertex of block {block}")]
    BadTerminal { block: usize, vertex: usize },
    #[error("terminal pair ({1}, {2}) is not an edge of block {0}")]
    NotAnEdge(usize, usize, usize),
    #[error("block {0} is not a symmetric complete bipartite graph")]
    NotSymmetricBipartite(usize),
    #[error("block {block} has part size {m}, need at least 3")]
    PartTooSmall { block: usize, m: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Terminal of a block: a vertex, or an oriented edge `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalSpec {
    Vertex(usize),
    Edge(usize, usize),
}

impl TerminalSpec {
    pub fn validate(self, block: usize, g: &Graph) -> Result<(), AmalgamError> {
        let check = |v: usize| {
            if v < g.order() {
                Ok(())
            } else {
                Err(AmalgamError::BadTerminal { block, vertex: v })
            }
        };
        match self {
            TerminalSpec::Vertex(v) => check(v),
            TerminalSpec::Edge(a, b) => {
                check(a)?;
                check(b)?;
                if g.has_edge(a, b) {
                    Ok(())
                } else {
                    Err(AmalgamError::NotAnEdge(block, a, b))
                }
            }
        }
    }
}

/// Where the terminals ended up in the amalgam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hub {
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamResult {
    pub graph: Graph,
    /// `block_maps[i][v]` is the amalgam id of block `i`'s vertex `v`.
    pub block_maps: Vec<Vec<usize>>,
    pub hub: Hub,
}

fn check_blocks<'a>(blocks: impl Iterator<Item = &'a Graph>) -> Result<Vec<&'a Graph>, AmalgamError> {
    let graphs: Vec<_> = blocks.collect();
    if graphs.is_empty() {
        return Err(AmalgamError::EmptyCollection);
    }
    for (i, g) in graphs.iter().enumerate() {
        if g.order() < 2 {
            return Err(AmalgamError::TrivialBlock(i));
        }
        if !g.is_connected() {
            return Err(AmalgamError::DisconnectedBlock(i));
        }
    }
    Ok(graphs)
}

fn glue(graphs: &[&Graph], groups: Vec<Vec<usize>>) -> Result<(Graph, Vec<Vec<usize>>), AmalgamError> {
    let owned: Vec<Graph> = graphs.iter().map(|&g| g.clone()).collect();
    let (union, offsets) = Graph::disjoint_union(&owned)?;
    let groups: Vec<Vec<usize>> = groups
        .into_iter()
        .map(|g| g.into_iter().zip(&offsets).map(|(v, off)| v + off).collect())
        .collect();
    let (merged, mapping) = union.identify_vertices(&groups)?;

    let block_maps: Vec<Vec<usize>> = graphs
        .iter()
        .zip(&offsets)
        .map(|(g, &off)| mapping[off..off + g.order()].to_vec())
        .collect();

    let mut names: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, (g, map)) in graphs.iter().zip(&block_maps).enumerate() {
        for (v, &image) in map.iter().enumerate() {
            names
                .entry(image)
                .or_default()
                .push(format!("b{i}:{}", g.display_name(v)));
        }
    }
    let labels = names.into_iter().map(|(v, n)| (v, n.join("="))).collect();
    let merged = merged.with_labels(labels)?;
    Ok((merged, block_maps))
}

/// Identifies the terminal vertex of every block into a single hub.
pub fn vertex_amal(blocks: &[(&Graph, usize)]) -> Result<AmalgamResult, AmalgamError> {
    let graphs = check_blocks(blocks.iter().map(|(g, _)| *g))?;
    for (i, &(g, t)) in blocks.iter().enumerate() {
        TerminalSpec::Vertex(t).validate(i, g)?;
    }
    let terminals = blocks.iter().map(|&(_, t)| t).collect();
    let (graph, block_maps) = glue(&graphs, vec![terminals])?;
    let hub = Hub::Vertex(block_maps[0][blocks[0].1]);
    Ok(AmalgamResult {
        graph,
        block_maps,
        hub,
    })
}

/// Identifies the oriented terminal edge `(a, b)` of every block: all
/// `a`-endpoints merge into one vertex and all `b`-endpoints into another.
pub fn edge_amal(blocks: &[(&Graph, (usize, usize))]) -> Result<AmalgamResult, AmalgamError> {
    let graphs = check_blocks(blocks.iter().map(|(g, _)| *g))?;
    for (i, &(g, (a, b))) in blocks.iter().enumerate() {
        TerminalSpec::Edge(a, b).validate(i, g)?;
    }
    let tails = blocks.iter().map(|&(_, (a, _))| a).collect();
    let heads = blocks.iter().map(|&(_, (_, b))| b).collect();
    let (graph, block_maps) = glue(&graphs, vec![tails, heads])?;
    let (a, b) = blocks[0].1;
    let hub = Hub::Edge(block_maps[0][a], block_maps[0][b]);
    Ok(AmalgamResult {
        graph,
        block_maps,
        hub,
    })
}

/// Edge-amalgamates symmetric `K_{m,m}` blocks at their default terminal
/// edge `(x_m, y_m)` and returns the set `{x_1, ..., x_{m-2}}` of every
/// block, mapped into the amalgam and sorted.
pub fn witness_resolving_set(
    blocks: &[FamilyInstance],
) -> Result<(AmalgamResult, Vec<usize>), AmalgamError> {
    if blocks.is_empty() {
        return Err(AmalgamError::EmptyCollection);
    }
    for (i, b) in blocks.iter().enumerate() {
        let symmetric = b.family == Family::CompleteBipartite && b.params[0] == b.params[1];
        if !symmetric {
            return Err(AmalgamError::NotSymmetricBipartite(i));
        }
        if b.params[0] < 3 {
            return Err(AmalgamError::PartTooSmall {
                block: i,
                m: b.params[0],
            });
        }
    }
    let pairs: Vec<_> = blocks
        .iter()
        .map(|b| (&b.graph, b.default_terminal_edge))
        .collect();
    let result = edge_amal(&pairs)?;
    let mut witness: Vec<usize> = blocks
        .iter()
        .zip(&result.block_maps)
        .flat_map(|(b, map)| map[..b.params[0] - 2].iter().copied())
        .collect();
    witness.sort_unstable();
    Ok((result, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, path};

    #[test]
    fn two_edges_make_a_path() {
        let p2 = path(2).unwrap();
        let r = vertex_amal(&[(&p2.graph, 1), (&p2.graph, 1)]).unwrap();
        assert_eq!(r.graph.degree_sequence(), vec![1, 2, 1]);
        assert_eq!(r.hub, Hub::Vertex(1));
        assert_eq!(r.graph.label(1), Some("b0:1=b1:1"));
    }

    #[test]
    fn friendship_graph() {
        let c3 = cycle(3).unwrap();
        let r = vertex_amal(&[(&c3.graph, 0); 3]).unwrap();
        assert_eq!((r.graph.order(), r.graph.size()), (7, 9));
        assert_eq!(r.graph.degree(0), 6);
    }

    #[test]
    fn book_of_two_squares() {
        let c4 = cycle(4).unwrap();
        let r = edge_amal(&[(&c4.graph, (0, 1)); 2]).unwrap();
        assert_eq!((r.graph.order(), r.graph.size()), (6, 7));
        let Hub::Edge(a, b) = r.hub else { panic!() };
        assert!(r.graph.has_edge(a, b));
    }

    #[test]
    fn errors() {
        let k3 = complete(3).unwrap().graph;
        let c4 = cycle(4).unwrap().graph;
        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(vertex_amal(&[]), Err(AmalgamError::EmptyCollection));
        assert_eq!(edge_amal(&[]), Err(AmalgamError::EmptyCollection));
        assert_eq!(
            vertex_amal(&[(&k3, 0), (&single, 0)]),
            Err(AmalgamError::TrivialBlock(1))
        );
        assert_eq!(
            vertex_amal(&[(&k3, 3)]),
            Err(AmalgamError::BadTerminal { block: 0, vertex: 3 })
        );
        assert_eq!(
            edge_amal(&[(&k3, (0, 1)), (&c4, (0, 2))]),
            Err(AmalgamError::NotAnEdge(1, 0, 2))
        );
        let (two, _) = Graph::disjoint_union(&[k3.clone(), k3.clone()]).unwrap();
        assert_eq!(vertex_amal(&[(&two, 0)]), Err(AmalgamError::DisconnectedBlock(0)));
    }

    #[test]
    fn orientation_matters_for_asymmetric_blocks() {
        // a triangle with a pendant at vertex 1: gluing (0,1) vs (1,0)
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (0, 2), (1, 3)]).unwrap();
        let same = edge_amal(&[(&g, (0, 1)), (&g, (0, 1))]).unwrap().graph;
        let flipped = edge_amal(&[(&g, (0, 1)), (&g, (1, 0))]).unwrap().graph;
        let mut d1 = same.degree_sequence();
        let mut d2 = flipped.degree_sequence();
        d1.sort_unstable();
        d2.sort_unstable();
        assert_ne!(d1, d2);
    }

    #[test]
    fn witness_sizes_and_errors() {
        let k33 = complete_bipartite(3, 3).unwrap();
        let (r, w) = witness_resolving_set(&[k33.clone(), k33.clone()]).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(r.graph.order(), 10);
        let (_, w) = witness_resolving_set(&vec![complete_bipartite(4, 4).unwrap(); 3]).unwrap();
        assert_eq!(w.len(), 6);
        let (r, w) = witness_resolving_set(std::slice::from_ref(&k33)).unwrap();
        assert_eq!(w, vec![0]);
        assert_eq!(r.graph.label(0), Some("b0:x1"));

        assert_eq!(
            witness_resolving_set(&[complete_bipartite(3, 4).unwrap()]),
            Err(AmalgamError::NotSymmetricBipartite(0))
        );
        assert_eq!(
            witness_resolving_set(&[k33, complete_bipartite(2, 2).unwrap()]),
            Err(AmalgamError::PartTooSmall { block: 1, m: 2 })
        );
        assert_eq!(
            witness_resolving_set(&[complete(4).unwrap()]),
            Err(AmalgamError::NotSymmetricBipartite(0))
        );
    }
}
