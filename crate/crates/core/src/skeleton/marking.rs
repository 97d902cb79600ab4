//! Skeletons of marked curves `X ∖ E`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CurveSkeleton, CuspType, EdgeDecor, Length, Skeleton, SkeletonError, VertexDecor};
use crate::scalar::Scalar;
use crate::semigraph::{Branch, Edge, SemiGraph};

/// Where a marked point retracts to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, bound = "S: Scalar")]
pub enum Location<S> {
    /// Interior point of an edge, `offset` measured from its first branch.
    Edge {
        edge: String,
        #[serde(with = "crate::scalar::ratio_string")]
        offset: S,
    },
    /// A new branch vertex shared by every marking naming the same
    /// cluster, joined to `anchor` by an edge of length `distance`.
    Cluster {
        cluster: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        anchor: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        distance: Option<Length<S>>,
    },
    Vertex { vertex: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Marking<S> {
    pub id: String,
    #[serde(flatten)]
    pub location: Location<S>,
}

impl<S: Scalar> Marking<S> {
    pub fn at_vertex(id: &str, vertex: &str) -> Self {
        Marking { id: id.into(), location: Location::Vertex { vertex: vertex.into() } }
    }

    pub fn on_edge(id: &str, edge: &str, offset: S) -> Self {
        Marking { id: id.into(), location: Location::Edge { edge: edge.into(), offset } }
    }

    pub fn in_cluster(id: &str, cluster: &str, anchor: Option<&str>) -> Self {
        Marking {
            id: id.into(),
            location: Location::Cluster { cluster: cluster.into(), anchor: anchor.map(Into::into), distance: None },
        }
    }
}

struct Builder<S> {
    vertices: Vec<String>,
    vertex_decor: Vec<VertexDecor>,
    edges: Vec<Edge>,
    edge_decor: Vec<EdgeDecor<S>>,
}

impl<S: Scalar> Builder<S> {
    fn vertex(&mut self, id: String) {
        self.vertices.push(id);
        self.vertex_decor.push(VertexDecor::default());
    }

    fn edge(&mut self, edge: Edge, decor: EdgeDecor<S>) {
        self.edges.push(edge);
        self.edge_decor.push(decor);
    }

    fn puncture(&mut self, marking: &str, vertex: &str) {
        let id = format!("mark.{marking}");
        let edge = Edge::open(&id, &format!("{id}.b"), vertex);
        self.edge(edge, EdgeDecor { length: Length::Infinite, cusp: Some(CuspType::PuncturedDisc) });
    }
}

fn clusters<S: Scalar>(markings: &[Marking<S>]) -> Result<BTreeMap<String, (Option<String>, Length<S>)>, SkeletonError> {
    let mut out: BTreeMap<String, (Option<String>, Length<S>)> = BTreeMap::new();
    for m in markings {
        if let Location::Cluster { cluster, anchor, distance } = &m.location {
            let distance = distance.clone().unwrap_or(Length::Finite(S::from_int(1)));
            let entry = out.entry(cluster.clone()).or_insert_with(|| (anchor.clone(), distance.clone()));
            if entry.0 != *anchor || entry.1 != distance {
                return Err(SkeletonError::InconsistentCluster(cluster.clone()));
            }
        }
    }
    Ok(out)
}

/// Adds one punctured-disc cusp per marking, splitting edges at marked
/// offsets and creating cluster vertices.
pub fn mark_points<S: Scalar>(
    cs: &CurveSkeleton<S>,
    markings: &[Marking<S>],
) -> Result<Skeleton<S>, SkeletonError> {
    let mut ids = BTreeSet::new();
    for m in markings {
        if !ids.insert(m.id.as_str()) {
            return Err(SkeletonError::DuplicateMarking(m.id.clone()));
        }
    }
    let cluster_data = clusters(markings)?;
    let sk = match cs {
        CurveSkeleton::Empty(params) => {
            let single = cluster_data.len() == 1 && cluster_data.values().all(|(a, _)| a.is_none());
            if !single || markings.iter().any(|m| !matches!(m.location, Location::Cluster { .. })) {
                return Err(SkeletonError::EmptySkeletonMarking);
            }
            let center = cluster_data.keys().next().expect("one cluster").clone();
            let mut b = Builder { vertices: vec![], vertex_decor: vec![], edges: vec![], edge_decor: vec![] };
            b.vertex(center.clone());
            for m in markings {
                b.puncture(&m.id, &center);
            }
            let graph = SemiGraph::new(b.vertices, b.edges)?;
            return Skeleton::new(graph, b.vertex_decor, b.edge_decor, *params);
        }
        CurveSkeleton::Graph(sk) => sk,
    };
    let g = sk.graph();

    let mut splits: BTreeMap<usize, BTreeSet<S>> = BTreeMap::new();
    for m in markings {
        match &m.location {
            Location::Edge { edge, offset } => {
                let e = g.edge_index(edge).ok_or_else(|| SkeletonError::UnknownEdge(edge.clone()))?;
                let length = &sk.edge_decor(e).length;
                let inside = offset.is_positive() && Length::Finite(offset.clone()) < *length;
                if !inside {
                    return Err(SkeletonError::OffsetOutOfRange {
                        edge: edge.clone(),
                        offset: offset.to_ratio_string(),
                        length: length.to_token(),
                    });
                }
                splits.entry(e).or_default().insert(offset.clone());
            }
            Location::Vertex { vertex } => {
                sk.vertex(vertex)?;
            }
            Location::Cluster { anchor: Some(a), .. } => {
                sk.vertex(a)?;
            }
            Location::Cluster { .. } => {}
        }
    }

    let mut b = Builder {
        vertices: g.vertices().to_vec(),
        vertex_decor: sk.vertex_decors().to_vec(),
        edges: Vec::new(),
        edge_decor: Vec::new(),
    };
    let mut split_vertex: BTreeMap<(usize, S), String> = BTreeMap::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let decor = sk.edge_decor(e);
        let Some(offsets) = splits.get(&e) else {
            b.edge(edge.clone(), decor.clone());
            continue;
        };
        let mut stops: Vec<(String, S)> = Vec::new();
        for (k, o) in offsets.iter().enumerate() {
            let v = format!("{}@{}", edge.id, k + 1);
            b.vertex(v.clone());
            split_vertex.insert((e, o.clone()), v.clone());
            stops.push((v, o.clone()));
        }
        let mut prev_vertex = edge.branches[0].vertex.clone();
        let mut prev_branch = edge.branches[0].id.clone();
        let mut prev_offset = S::from_int(0);
        for (j, (v, o)) in stops.iter().enumerate() {
            let id = format!("{}#{}", edge.id, j);
            let piece = Edge {
                id: id.clone(),
                branches: vec![
                    Branch { id: prev_branch.clone(), vertex: prev_vertex.clone() },
                    Branch { id: format!("{id}.1"), vertex: v.clone() },
                ],
            };
            b.edge(piece, EdgeDecor { length: Length::Finite(o.clone() - prev_offset.clone()), cusp: None });
            prev_vertex = v.clone();
            prev_branch = format!("{}#{}.0", edge.id, j + 1);
            prev_offset = o.clone();
        }
        let id = format!("{}#{}", edge.id, stops.len());
        let mut branches = vec![Branch { id: prev_branch, vertex: prev_vertex }];
        if let Some(end) = edge.branches.get(1) {
            branches.push(end.clone());
        }
        b.edge(Edge { id, branches }, EdgeDecor { length: decor.length.minus(&prev_offset), cusp: decor.cusp });
    }

    for (cluster, (anchor, distance)) in &cluster_data {
        b.vertex(cluster.clone());
        if let Some(a) = anchor {
            let id = format!("link.{cluster}");
            let edge = Edge::closed(&id, (&format!("{id}.0"), cluster), (&format!("{id}.1"), a));
            b.edge(edge, EdgeDecor { length: distance.clone(), cusp: None });
        }
    }

    for m in markings {
        let vertex = match &m.location {
            Location::Vertex { vertex } => vertex.clone(),
            Location::Cluster { cluster, .. } => cluster.clone(),
            Location::Edge { edge, offset } => {
                let e = g.edge_index(edge).expect("checked above");
                split_vertex[&(e, offset.clone())].clone()
            }
        };
        b.puncture(&m.id, &vertex);
    }

    let graph = SemiGraph::new(b.vertices, b.edges)?;
    Skeleton::new(graph, b.vertex_decor, b.edge_decor, sk.params)
}
