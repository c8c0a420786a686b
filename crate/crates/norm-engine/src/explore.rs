//! Breadth-first exploration of the reachable state graph up to a horizon.

use std::collections::HashMap;

use norm_core::{GroundAct, GroundModel, State};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::apply::{apply, ApplyError};

pub const DEFAULT_NODE_CAP: usize = 100_000;

/// Frontiers smaller than this expand inline; rayon dispatch costs more than
/// it saves on them.
#[cfg(feature = "parallel")]
const PARALLEL_FRONTIER_THRESHOLD: usize = 128;

#[derive(Debug, Clone, Copy)]
pub struct ExploreConfig {
    /// Maximum number of steps from the initial state.
    pub horizon: usize,
    /// Exploration aborts once the node count would exceed this cap.
    pub node_cap: usize,
}

impl ExploreConfig {
    pub fn new(horizon: usize) -> Self {
        ExploreConfig { horizon, node_cap: DEFAULT_NODE_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExploreError {
    #[error("exploration exceeded the cap of {cap} states")]
    NodeCapExceeded { cap: usize },
    #[error(transparent)]
    Apply(#[from] ApplyError),
}

/// An application of a ground act between two graph nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub act: GroundAct,
    pub to: usize,
}

/// The reachable state graph within `horizon` steps. Node 0 is the initial
/// state; nodes are deduplicated by value and numbered in discovery order,
/// with successors expanded in grounding order, so the graph is the same on
/// every run and on both expansion strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    pub nodes: Vec<State>,
    pub edges: Vec<Edge>,
    /// Discovery depth of each node.
    pub depths: Vec<usize>,
    pub horizon: usize,
}

impl StateGraph {
    pub fn root(&self) -> usize {
        0
    }

    /// The acts of a shortest path from the root to `node`, following the
    /// breadth-first discovery tree.
    pub fn witness(&self, node: usize) -> Vec<GroundAct> {
        // The first edge reaching a node is a BFS tree edge.
        let mut parent: Vec<Option<&Edge>> = vec![None; self.nodes.len()];
        for edge in &self.edges {
            if edge.to != self.root() && parent[edge.to].is_none() {
                parent[edge.to] = Some(edge);
            }
        }
        let mut path = Vec::new();
        let mut cursor = node;
        while let Some(edge) = parent[cursor] {
            path.push(edge.act.clone());
            cursor = edge.from;
        }
        path.reverse();
        path
    }
}

/// All `(act, successor)` pairs of one state, in grounding order.
fn successors(gm: &GroundModel, state: &State) -> Result<Vec<(GroundAct, State)>, ApplyError> {
    let mut out = Vec::new();
    for act in gm.acts() {
        match apply(gm, state, act) {
            Ok((next, _events)) => out.push((act.clone(), next)),
            Err(ApplyError::PreconditionViolated { .. }) => {}
            Err(defect) => return Err(defect),
        }
    }
    Ok(out)
}

/// Breadth-first closure of [`apply`] over all enabled acts. With the
/// `parallel` feature the frontier is expanded on a rayon pool; merging stays
/// sequential, so the result is identical to [`explore_sequential`].
pub fn explore(
    gm: &GroundModel,
    initial: &State,
    config: &ExploreConfig,
) -> Result<StateGraph, ExploreError> {
    explore_impl(gm, initial, config, cfg!(feature = "parallel"))
}

/// The reference implementation: single-threaded frontier expansion.
pub fn explore_sequential(
    gm: &GroundModel,
    initial: &State,
    config: &ExploreConfig,
) -> Result<StateGraph, ExploreError> {
    explore_impl(gm, initial, config, false)
}

fn explore_impl(
    gm: &GroundModel,
    initial: &State,
    config: &ExploreConfig,
    parallel: bool,
) -> Result<StateGraph, ExploreError> {
    let mut nodes = vec![initial.clone()];
    let mut depths = vec![0usize];
    let mut edges = Vec::new();
    let mut index: HashMap<State, usize> = HashMap::new();
    index.insert(initial.clone(), 0);
    if nodes.len() > config.node_cap {
        return Err(ExploreError::NodeCapExceeded { cap: config.node_cap });
    }

    let mut frontier = vec![0usize];
    for depth in 0..config.horizon {
        if frontier.is_empty() {
            break;
        }
        let expansions = expand(gm, &nodes, &frontier, parallel)?;

        let mut next_frontier = Vec::new();
        for (&from, succs) in frontier.iter().zip(expansions) {
            for (act, succ) in succs {
                let to = match index.get(&succ) {
                    Some(&existing) => existing,
                    None => {
                        if nodes.len() + 1 > config.node_cap {
                            return Err(ExploreError::NodeCapExceeded { cap: config.node_cap });
                        }
                        let id = nodes.len();
                        index.insert(succ.clone(), id);
                        nodes.push(succ);
                        depths.push(depth + 1);
                        next_frontier.push(id);
                        id
                    }
                };
                edges.push(Edge { from, act, to });
            }
        }
        frontier = next_frontier;
    }

    Ok(StateGraph { nodes, edges, depths, horizon: config.horizon })
}

#[cfg(feature = "parallel")]
fn expand(
    gm: &GroundModel,
    nodes: &[State],
    frontier: &[usize],
    parallel: bool,
) -> Result<Vec<Vec<(GroundAct, State)>>, ApplyError> {
    if parallel && frontier.len() >= PARALLEL_FRONTIER_THRESHOLD {
        frontier.par_iter().map(|&i| successors(gm, &nodes[i])).collect()
    } else {
        frontier.iter().map(|&i| successors(gm, &nodes[i])).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn expand(
    gm: &GroundModel,
    nodes: &[State],
    frontier: &[usize],
    _parallel: bool,
) -> Result<Vec<Vec<(GroundAct, State)>>, ApplyError> {
    frontier.iter().map(|&i| successors(gm, &nodes[i])).collect()
}
