//! Semi-graphs: graphs whose edges carry one or two branches.
//!
//! An edge with two branches is *closed* (possibly a loop), an edge with a
//! single branch is *open*. Only closed edges connect vertices; open edges
//! hang off their vertex and are removed by [`SemiGraph::truncate`].

mod cochain;
mod cover;
mod rank;

pub use cochain::{harm_basis, prescribed_cochain, CochainError, HarmBasis, HarmonicCochain, OrientedEdge};
pub use cover::{class_gcd, cover_from_class, DecorationFreeCover};
pub use rank::{h1_rank, RankError};

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    #[serde(deserialize_with = "crate::ids::id")]
    pub id: String,
    #[serde(deserialize_with = "crate::ids::id")]
    pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    #[serde(deserialize_with = "crate::ids::id")]
    pub id: String,
    pub branches: Vec<Branch>,
}

impl Edge {
    pub fn closed(id: &str, from: (&str, &str), to: (&str, &str)) -> Self {
        Edge {
            id: id.to_string(),
            branches: vec![
                Branch { id: from.0.to_string(), vertex: from.1.to_string() },
                Branch { id: to.0.to_string(), vertex: to.1.to_string() },
            ],
        }
    }

    pub fn open(id: &str, branch: &str, vertex: &str) -> Self {
        Edge {
            id: id.to_string(),
            branches: vec![Branch { id: branch.to_string(), vertex: vertex.to_string() }],
        }
    }

    pub fn is_open(&self) -> bool {
        self.branches.len() == 1
    }
}

/// Unvalidated semi-graph, exactly as it appears in JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSemiGraph {
    #[serde(deserialize_with = "crate::ids::id_list")]
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiGraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} has {count} branches; expected 1 or 2")]
    BranchCount { edge: String, count: usize },
    #[error("branch {0:?} is shared by more than one edge slot")]
    SharedBranch(String),
    #[error("branch {branch:?} attaches to unknown vertex {vertex:?}")]
    DanglingBranch { branch: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("graph is not connected")]
    Disconnected,
}

impl SemiGraphError {
    pub fn code(&self) -> &'static str {
        match self {
            SemiGraphError::DuplicateVertex(_) => "duplicate_vertex",
            SemiGraphError::DuplicateEdge(_) => "duplicate_edge",
            SemiGraphError::BranchCount { .. } => "branch_count",
            SemiGraphError::SharedBranch(_) => "shared_branch",
            SemiGraphError::DanglingBranch { .. } => "dangling_branch",
            SemiGraphError::UnknownVertex(_) => "unknown_vertex",
            SemiGraphError::UnknownEdge(_) => "unknown_edge",
            SemiGraphError::Disconnected => "disconnected",
        }
    }
}

/// Reports the first violated invariant of a raw semi-graph.
pub fn validate(raw: &RawSemiGraph) -> Result<(), SemiGraphError> {
    let mut vertices = HashSet::with_capacity(raw.vertices.len());
    for v in &raw.vertices {
        if !vertices.insert(v.as_str()) {
            return Err(SemiGraphError::DuplicateVertex(v.clone()));
        }
    }
    let mut edges = HashSet::with_capacity(raw.edges.len());
    let mut branches = HashSet::with_capacity(2 * raw.edges.len());
    for e in &raw.edges {
        if !edges.insert(e.id.as_str()) {
            return Err(SemiGraphError::DuplicateEdge(e.id.clone()));
        }
        if !(1..=2).contains(&e.branches.len()) {
            return Err(SemiGraphError::BranchCount { edge: e.id.clone(), count: e.branches.len() });
        }
        for b in &e.branches {
            if !branches.insert(b.id.as_str()) {
                return Err(SemiGraphError::SharedBranch(b.id.clone()));
            }
            if !vertices.contains(b.vertex.as_str()) {
                return Err(SemiGraphError::DanglingBranch {
                    branch: b.id.clone(),
                    vertex: b.vertex.clone(),
                });
            }
        }
    }
    Ok(())
}

/// A validated semi-graph with vertex indices resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSemiGraph", into = "RawSemiGraph")]
pub struct SemiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    ends: Vec<Vec<usize>>,
    incidence: Vec<Vec<(usize, usize)>>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl TryFrom<RawSemiGraph> for SemiGraph {
    type Error = SemiGraphError;

    fn try_from(raw: RawSemiGraph) -> Result<Self, Self::Error> {
        validate(&raw)?;
        let vertex_index: HashMap<String, usize> =
            raw.vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let ends: Vec<Vec<usize>> = raw
            .edges
            .iter()
            .map(|e| e.branches.iter().map(|b| vertex_index[&b.vertex]).collect())
            .collect();
        let mut incidence = vec![Vec::new(); raw.vertices.len()];
        for (e, vs) in ends.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate() {
                incidence[v].push((e, b));
            }
        }
        let edge_index = raw.edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        Ok(SemiGraph { vertices: raw.vertices, edges: raw.edges, ends, incidence, vertex_index, edge_index })
    }
}

impl From<SemiGraph> for RawSemiGraph {
    fn from(g: SemiGraph) -> Self {
        RawSemiGraph { vertices: g.vertices, edges: g.edges }
    }
}

impl SemiGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, SemiGraphError> {
        RawSemiGraph { vertices, edges }.try_into()
    }

    pub fn empty() -> Self {
        SemiGraph::new(Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// Vertex indices of the branches of edge `e`, in branch order.
    pub fn ends(&self, e: usize) -> &[usize] {
        &self.ends[e]
    }

    pub fn is_open(&self, e: usize) -> bool {
        self.ends[e].len() == 1
    }

    pub fn closed_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| !self.is_open(e))
    }

    pub fn open_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.is_open(e))
    }

    /// `(edge, branch)` pairs attached to vertex `v`, in edge order.
    pub fn incident(&self, v: usize) -> Vec<(usize, usize)> {
        self.incidence[v].clone()
    }

    /// Number of branches attached to `v`; loops count twice, open edges once.
    pub fn valence(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// The graph with every open edge removed.
    pub fn truncate(&self) -> SemiGraph {
        let edges = self.edges.iter().filter(|e| !e.is_open()).cloned().collect();
        SemiGraph::new(self.vertices.clone(), edges).expect("sub-semigraph of a valid semigraph")
    }

    /// Component label per vertex (closed edges only) and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let mut label = vec![usize::MAX; n];
        let adjacency = self.adjacency();
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// At most one component. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number of the truncated graph.
    pub fn betti(&self) -> usize {
        let closed = self.closed_edges().count();
        closed + self.component_count() - self.vertices.len()
    }

    /// Neighbours through closed edges: `(vertex, edge)` per adjacency slot.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in self.closed_edges() {
            let (u, v) = (self.ends[e][0], self.ends[e][1]);
            adj[u].push((v, e));
            if u != v {
                adj[v].push((u, e));
            }
        }
        adj
    }

    /// Breadth-first spanning forest over closed edges, rooted at each
    /// component's first vertex and scanning edges in declaration order.
    pub fn spanning_tree(&self) -> BTreeSet<usize> {
        let n = self.vertices.len();
        let adjacency = self.adjacency();
        let mut seen = vec![false; n];
        let mut tree = BTreeSet::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        tree.insert(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }

    /// Shortest path from `from` to `to` through closed edges, as
    /// `(edge, head branch)` steps; empty when `from == to`.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<OrientedEdge>> {
        let n = self.vertices.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for e in self.closed_edges() {
                let ends = &self.ends[e];
                for (tail, head) in [(0, 1), (1, 0)] {
                    if ends[tail] == v && !seen[ends[head]] {
                        seen[ends[head]] = true;
                        prev[ends[head]] = Some((e, head));
                        queue.push_back(ends[head]);
                    }
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (e, head) = prev[cur].expect("reached vertices have a predecessor");
            path.push(OrientedEdge { edge: e, head });
            cur = self.ends[e][1 - head];
        }
        path.reverse();
        Some(path)
    }
}
