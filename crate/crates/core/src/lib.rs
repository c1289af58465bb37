// SPDX-License-Identifier: Apache-2.0

//! Metric dimension of graphs and of their vertex- and edge-amalgamations.
//!
//! * [`graph`]: simple graphs, BFS distances, vertex identification
//! * [`families`]: paths, cycles, complete and complete bipartite graphs,
//!   prisms and double-hats cycles with canonical ids and terminals
//! * [`amalgam`]: vertex- and edge-amalgamation of block collections
//! * [`resolver`]: resolving sets, exact and greedy metric dimension
//! * [`harness`]: checks the known dimension formulas and bounds for
//!   amalgamations against the exact solver

pub mod amalgam;
pub mod families;
pub mod graph;
pub mod harness;
pub mod resolver;

pub use amalgam::{edge_amal, vertex_amal, witness_resolving_set, AmalgamError, AmalgamResult, Hub, TerminalSpec};
pub use families::{Family, FamilyError, FamilyInstance};
pub use graph::{DistanceMatrix, Graph, GraphError};
pub use resolver::{
    exact_metric_dimension, greedy_resolving_set, is_resolving, Method, ResolverError, ResolvingResult,
    SearchOptions,
};
