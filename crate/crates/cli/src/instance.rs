// SPDX-License-Identifier: Apache-2.0

//! JSON instance files: a graph with optional labels and terminals.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use amalgadim::{FamilyInstance, Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph6::{self, Graph6Error};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Graph6 { path: String, source: Graph6Error },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("terminal vertex {0} is not a vertex")]
    BadTerminalVertex(usize),
    #[error("terminal edge ({0}, {1}) is not an edge")]
    BadTerminalEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminal_vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminal_edge: Option<[usize; 2]>,
}

impl InstanceFile {
    pub fn from_graph(g: &Graph, terminal_vertex: Option<usize>, terminal_edge: Option<(usize, usize)>) -> Self {
        InstanceFile {
            order: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().clone(),
            terminal_vertex,
            terminal_edge: terminal_edge.map(|(a, b)| [a, b]),
        }
    }

    pub fn from_family(f: &FamilyInstance) -> Self {
        Self::from_graph(&f.graph, Some(f.default_terminal_vertex), Some(f.default_terminal_edge))
    }

    /// Builds the graph and checks the declared terminals against it.
    pub fn to_graph(&self) -> Result<Graph, InstanceError> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let g = Graph::from_edge_list(self.order, &edges)?.with_labels(self.labels.clone())?;
        if let Some(v) = self.terminal_vertex.filter(|&v| v >= g.order()) {
            return Err(InstanceError::BadTerminalVertex(v));
        }
        if let Some([a, b]) = self.terminal_edge.filter(|&[a, b]| !g.has_edge(a, b)) {
            return Err(InstanceError::BadTerminalEdge(a, b));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(path: &str, text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|source| InstanceError::Json {
            path: path.to_owned(),
            source,
        })
    }
}

/// Reads a JSON instance, or the first graph6 line when `g6` is set.
pub fn load(path: &Path, g6: bool) -> Result<InstanceFile, InstanceError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: name.clone(),
        source,
    })?;
    if g6 {
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        let g = graph6::decode(line).map_err(|source| InstanceError::Graph6 { path: name, source })?;
        Ok(InstanceFile::from_graph(&g, None, None))
    } else {
        let file = InstanceFile::from_json(&name, &text)?;
        file.to_graph()?;
        Ok(file)
    }
}
