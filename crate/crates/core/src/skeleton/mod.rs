//! Decorated, metrized skeletons of curves.
//!
//! A [`Skeleton`] is a connected [`SemiGraph`] whose vertices carry the
//! residual data `(g, type, ñ)` and whose edges carry a length in `log_p`
//! units (possibly `+∞`) and, for open edges, a cusp type. The empty
//! skeleton of the projective line is the separate [`CurveSkeleton::Empty`]
//! case.

mod analysis;
mod marking;

pub use analysis::{
    classify_compact, classify_curve, generalized_valence, is_hyperbolic_node, is_node,
    is_superfluous, minimize_triangulation, minimize_triangulation_by, node_set, Certificate,
    CompactClass, CurveClass,
};
pub use marking::{mark_points, Location, Marking};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::semigraph::{h1_rank, RankError, RawSemiGraph, SemiGraph, SemiGraphError};

/// An edge length in `log_p` units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Length<S> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            Length::Finite(s) => Some(s),
            Length::Infinite => None,
        }
    }

    pub fn to_token(&self) -> String {
        match self {
            Length::Finite(s) => s.to_ratio_string(),
            Length::Infinite => "inf".to_string(),
        }
    }

    pub fn parse_token(s: &str) -> Option<Self> {
        match s.trim() {
            "inf" | "+inf" => Some(Length::Infinite),
            other => S::parse_ratio(other).map(Length::Finite),
        }
    }

    /// `self - offset`; infinite stays infinite.
    pub fn minus(&self, offset: &S) -> Self {
        match self {
            Length::Finite(s) => Length::Finite(s.clone() - offset.clone()),
            Length::Infinite => Length::Infinite,
        }
    }

    /// `self * factor`; infinite stays infinite.
    pub fn scale(&self, factor: &S) -> Self {
        match self {
            Length::Finite(s) => Length::Finite(s.clone() * factor.clone()),
            Length::Infinite => Length::Infinite,
        }
    }
}

impl<S: Scalar> fmt::Display for Length<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}

impl<S: Scalar> Serialize for Length<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(&self.to_token())
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Length<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let token = crate::scalar::ratio_string::RatioToken::deserialize(de)?;
        Length::parse_token(&token.0)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid length {:?}", token.0)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CuspType {
    CoronalFinite,
    PuncturedDisc,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDecor {
    #[serde(default)]
    pub genus: u64,
    #[serde(rename = "type", default = "default_point_type")]
    pub point_type: u8,
    #[serde(default)]
    pub missing_branches: u64,
    /// Optional redundant flag; when present it must agree with
    /// `missing_branches > 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_boundary: Option<bool>,
    /// Set on vertices cut off by a finite truncation, whose valence is
    /// not the valence of the underlying curve.
    #[serde(default)]
    pub incomplete: bool,
}

fn default_point_type() -> u8 {
    2
}

impl Default for VertexDecor {
    fn default() -> Self {
        VertexDecor { genus: 0, point_type: 2, missing_branches: 0, on_boundary: None, incomplete: false }
    }
}

impl VertexDecor {
    pub fn on_boundary(&self) -> bool {
        self.missing_branches > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct EdgeDecor<S> {
    pub length: Length<S>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cusp: Option<CuspType>,
}

/// Curve-level parameters shared by empty and nonempty skeletons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveParams {
    /// Residue characteristic exponent.
    pub p: u64,
    #[serde(default)]
    pub mixed_characteristic: bool,
    /// The graph is a finite piece of an infinite skeleton.
    #[serde(default)]
    pub truncated: bool,
}

impl CurveParams {
    pub fn new(p: u64, mixed_characteristic: bool) -> Self {
        CurveParams { p, mixed_characteristic, truncated: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error(transparent)]
    Graph(#[from] SemiGraphError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("decoration refers to unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("decoration refers to unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("skeleton graph is not connected")]
    Disconnected,
    #[error("vertex {0:?}: on_boundary must hold exactly when missing_branches > 0")]
    BoundaryFlag(String),
    #[error("vertex {vertex:?} has point type {point_type}; expected 2 or 3")]
    PointType { vertex: String, point_type: u8 },
    #[error("type-3 vertex {0:?} must have genus 0")]
    TypeThreeGenus(String),
    #[error("type-3 vertex {0:?} has more than two branches")]
    TypeThreeBranches(String),
    #[error("edge {0:?} must have positive length")]
    NonPositiveLength(String),
    #[error("closed edge {0:?} must have finite length")]
    InfiniteClosedEdge(String),
    #[error("closed edge {0:?} cannot carry a cusp type")]
    CuspOnClosedEdge(String),
    #[error("punctured-disc cusp {0:?} must have infinite length")]
    FinitePuncturedDisc(String),
    #[error("coronal-finite cusp {0:?} must have finite length")]
    InfiniteCoronal(String),
    #[error("vertex {0:?} is not in the skeleton")]
    NoSuchVertex(String),
    #[error("vertex {0:?} is not a node")]
    NotANode(String),
    #[error("vertex {0:?} is not in the triangulation set")]
    NotInTriangulation(String),
    #[error("node {0:?} is missing from the triangulation set")]
    MissingNode(String),
    #[error("compact classification needs no open edges; found {0:?}")]
    OpenEdge(String),
    #[error("skeleton without nodes is not a circle")]
    NotACircle,
    #[error("marking offset {offset} is outside (0, {length}) on edge {edge:?}")]
    OffsetOutOfRange { edge: String, offset: String, length: String },
    #[error("markings on the empty skeleton must share one unanchored cluster")]
    EmptySkeletonMarking,
    #[error("duplicate marking id {0:?}")]
    DuplicateMarking(String),
    #[error("cluster {0:?} is given inconsistent anchors or distances")]
    InconsistentCluster(String),
}

impl SkeletonError {
    pub fn code(&self) -> &'static str {
        use SkeletonError::*;
        match self {
            Graph(e) => e.code(),
            Rank(e) => e.code(),
            UnknownVertex(_) => "unknown_vertex",
            UnknownEdge(_) => "unknown_edge",
            Disconnected => "disconnected",
            BoundaryFlag(_) => "boundary_flag",
            PointType { .. } => "point_type",
            TypeThreeGenus(_) => "type3_genus",
            TypeThreeBranches(_) => "type3_branches",
            NonPositiveLength(_) => "nonpositive_length",
            InfiniteClosedEdge(_) => "infinite_closed_edge",
            CuspOnClosedEdge(_) => "cusp_on_closed_edge",
            FinitePuncturedDisc(_) => "finite_punctured_disc",
            InfiniteCoronal(_) => "infinite_coronal",
            NoSuchVertex(_) => "no_such_vertex",
            NotANode(_) => "not_a_node",
            NotInTriangulation(_) => "not_in_triangulation",
            MissingNode(_) => "missing_node",
            OpenEdge(_) => "open_edge",
            NotACircle => "not_a_circle",
            OffsetOutOfRange { .. } => "offset_out_of_range",
            EmptySkeletonMarking => "empty_skeleton_marking",
            DuplicateMarking(_) => "duplicate_marking",
            InconsistentCluster(_) => "inconsistent_cluster",
        }
    }
}

/// A nonempty, connected, decorated skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton<S> {
    graph: SemiGraph,
    vertices: Vec<VertexDecor>,
    edges: Vec<EdgeDecor<S>>,
    pub params: CurveParams,
}

/// A curve skeleton, possibly empty (the projective line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSkeleton<S> {
    Empty(CurveParams),
    Graph(Skeleton<S>),
}

impl<S: Scalar> CurveSkeleton<S> {
    pub fn params(&self) -> CurveParams {
        match self {
            CurveSkeleton::Empty(p) => *p,
            CurveSkeleton::Graph(sk) => sk.params,
        }
    }

    pub fn as_graph(&self) -> Option<&Skeleton<S>> {
        match self {
            CurveSkeleton::Empty(_) => None,
            CurveSkeleton::Graph(sk) => Some(sk),
        }
    }
}

/// Default decoration for an edge with no explicit entry.
pub fn default_edge_decor<S: Scalar>(open: bool) -> EdgeDecor<S> {
    if open {
        EdgeDecor { length: Length::Infinite, cusp: Some(CuspType::Other) }
    } else {
        EdgeDecor { length: Length::Finite(S::from_int(1)), cusp: None }
    }
}

impl<S: Scalar> Skeleton<S> {
    pub fn new(
        graph: SemiGraph,
        vertices: Vec<VertexDecor>,
        edges: Vec<EdgeDecor<S>>,
        params: CurveParams,
    ) -> Result<Self, SkeletonError> {
        assert_eq!(vertices.len(), graph.vertex_count(), "one decoration per vertex");
        assert_eq!(edges.len(), graph.edge_count(), "one decoration per edge");
        let sk = Skeleton { graph, vertices, edges, params };
        sk.validate()?;
        Ok(sk)
    }

    /// Builds a skeleton with default decorations, overridden by the maps.
    pub fn with_decor(
        graph: SemiGraph,
        vertex_decor: &BTreeMap<String, VertexDecor>,
        edge_decor: &BTreeMap<String, EdgeDecor<S>>,
        params: CurveParams,
    ) -> Result<Self, SkeletonError> {
        for id in vertex_decor.keys() {
            graph.vertex_index(id).ok_or_else(|| SkeletonError::UnknownVertex(id.clone()))?;
        }
        for id in edge_decor.keys() {
            graph.edge_index(id).ok_or_else(|| SkeletonError::UnknownEdge(id.clone()))?;
        }
        let vertices = graph
            .vertices()
            .iter()
            .map(|v| vertex_decor.get(v).cloned().unwrap_or_default())
            .collect();
        let edges = graph
            .edges()
            .iter()
            .map(|e| edge_decor.get(&e.id).cloned().unwrap_or_else(|| default_edge_decor(e.is_open())))
            .collect();
        Skeleton::new(graph, vertices, edges, params)
    }

    fn validate(&self) -> Result<(), SkeletonError> {
        let g = &self.graph;
        if g.vertex_count() == 0 || !g.is_connected() {
            return Err(SkeletonError::Disconnected);
        }
        for (v, d) in self.vertices.iter().enumerate() {
            let id = &g.vertices()[v];
            if d.on_boundary.is_some_and(|b| b != (d.missing_branches > 0)) {
                return Err(SkeletonError::BoundaryFlag(id.clone()));
            }
            match d.point_type {
                2 => {}
                3 => {
                    if d.genus != 0 {
                        return Err(SkeletonError::TypeThreeGenus(id.clone()));
                    }
                    if g.valence(v) as u64 + d.missing_branches > 2 {
                        return Err(SkeletonError::TypeThreeBranches(id.clone()));
                    }
                }
                t => return Err(SkeletonError::PointType { vertex: id.clone(), point_type: t }),
            }
        }
        for (e, d) in self.edges.iter().enumerate() {
            let id = &g.edges()[e].id;
            if let Length::Finite(l) = &d.length {
                if !l.is_positive() {
                    return Err(SkeletonError::NonPositiveLength(id.clone()));
                }
            }
            if !g.is_open(e) {
                if !d.length.is_finite() {
                    return Err(SkeletonError::InfiniteClosedEdge(id.clone()));
                }
                if d.cusp.is_some() {
                    return Err(SkeletonError::CuspOnClosedEdge(id.clone()));
                }
                continue;
            }
            match (d.cusp, d.length.is_finite()) {
                (Some(CuspType::PuncturedDisc), true) => {
                    return Err(SkeletonError::FinitePuncturedDisc(id.clone()))
                }
                (Some(CuspType::CoronalFinite), false) => {
                    return Err(SkeletonError::InfiniteCoronal(id.clone()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &SemiGraph {
        &self.graph
    }

    pub fn vertex_decor(&self, v: usize) -> &VertexDecor {
        &self.vertices[v]
    }

    pub fn edge_decor(&self, e: usize) -> &EdgeDecor<S> {
        &self.edges[e]
    }

    pub fn vertex_decors(&self) -> &[VertexDecor] {
        &self.vertices
    }

    pub fn edge_decors(&self) -> &[EdgeDecor<S>] {
        &self.edges
    }

    pub fn vertex(&self, id: &str) -> Result<usize, SkeletonError> {
        self.graph.vertex_index(id).ok_or_else(|| SkeletonError::NoSuchVertex(id.to_string()))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.graph.vertices()[v]
    }

    pub fn genera(&self) -> Vec<u64> {
        self.vertices.iter().map(|d| d.genus).collect()
    }

    /// Rank of `H¹(X, μ_ℓ)`; see [`crate::semigraph::h1_rank`].
    pub fn h1_rank(&self, ell: u64) -> Result<u64, SkeletonError> {
        Ok(h1_rank(&self.graph, &self.genera(), ell, self.params.p)?)
    }

    /// Total length of the closed edges.
    pub fn closed_length(&self) -> S {
        self.graph
            .closed_edges()
            .filter_map(|e| self.edges[e].length.as_finite().cloned())
            .fold(S::from_int(0), |a, b| a + b)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct RawDecor<S> {
    #[serde(default)]
    vertices: BTreeMap<String, VertexDecor>,
    #[serde(default)]
    edges: BTreeMap<String, EdgeDecor<S>>,
}

impl<S> Default for RawDecor<S> {
    fn default() -> Self {
        RawDecor { vertices: BTreeMap::new(), edges: BTreeMap::new() }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct RawSkeleton<S> {
    #[serde(flatten)]
    graph: RawSemiGraph,
    #[serde(default)]
    decor: RawDecor<S>,
    #[serde(flatten)]
    params: CurveParams,
}

impl<S: Scalar> CurveSkeleton<S> {
    fn from_raw(raw: RawSkeleton<S>) -> Result<Self, SkeletonError> {
        if raw.graph.vertices.is_empty() && raw.graph.edges.is_empty() {
            if let Some(id) = raw.decor.vertices.keys().next() {
                return Err(SkeletonError::UnknownVertex(id.clone()));
            }
            if let Some(id) = raw.decor.edges.keys().next() {
                return Err(SkeletonError::UnknownEdge(id.clone()));
            }
            return Ok(CurveSkeleton::Empty(raw.params));
        }
        let graph = SemiGraph::try_from(raw.graph)?;
        Skeleton::with_decor(graph, &raw.decor.vertices, &raw.decor.edges, raw.params)
            .map(CurveSkeleton::Graph)
    }

    fn to_raw(&self) -> RawSkeleton<S> {
        match self {
            CurveSkeleton::Empty(params) => {
                RawSkeleton { graph: RawSemiGraph::default(), decor: RawDecor::default(), params: *params }
            }
            CurveSkeleton::Graph(sk) => {
                let g = &sk.graph;
                let decor = RawDecor {
                    vertices: g.vertices().iter().cloned().zip(sk.vertices.iter().cloned()).collect(),
                    edges: g.edges().iter().map(|e| e.id.clone()).zip(sk.edges.iter().cloned()).collect(),
                };
                RawSkeleton { graph: g.clone().into(), decor, params: sk.params }
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SkeletonJsonError> {
        let raw: RawSkeleton<S> = serde_json::from_str(text).map_err(SkeletonJsonError::Json)?;
        CurveSkeleton::from_raw(raw).map_err(SkeletonJsonError::Skeleton)
    }
}

/// Distinguishes malformed JSON from a well-formed but invalid skeleton.
#[derive(Debug, Error)]
pub enum SkeletonJsonError {
    #[error("malformed skeleton JSON: {0}")]
    Json(serde_json::Error),
    #[error(transparent)]
    Skeleton(SkeletonError),
}

impl<S: Scalar> Serialize for CurveSkeleton<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.to_raw().serialize(ser)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for CurveSkeleton<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawSkeleton::<S>::deserialize(de)?;
        CurveSkeleton::from_raw(raw).map_err(serde::de::Error::custom)
    }
}

impl<S: Scalar> Serialize for Skeleton<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        CurveSkeleton::Graph(self.clone()).serialize(ser)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::semigraph::Edge;
    use crate::Rational;

    pub fn params() -> CurveParams {
        CurveParams::new(3, true)
    }

    pub fn build(
        vertices: &[(&str, VertexDecor)],
        edges: Vec<(Edge, EdgeDecor<Rational>)>,
        params: CurveParams,
    ) -> Skeleton<Rational> {
        let graph = SemiGraph::new(
            vertices.iter().map(|(v, _)| v.to_string()).collect(),
            edges.iter().map(|(e, _)| e.clone()).collect(),
        )
        .unwrap();
        Skeleton::new(
            graph,
            vertices.iter().map(|(_, d)| d.clone()).collect(),
            edges.into_iter().map(|(_, d)| d).collect(),
            params,
        )
        .unwrap()
    }

    pub fn plain() -> VertexDecor {
        VertexDecor::default()
    }

    pub fn genus(g: u64) -> VertexDecor {
        VertexDecor { genus: g, ..VertexDecor::default() }
    }

    pub fn boundary(missing: u64) -> VertexDecor {
        VertexDecor { missing_branches: missing, ..VertexDecor::default() }
    }

    pub fn len(n: i64, d: i64) -> EdgeDecor<Rational> {
        EdgeDecor { length: Length::Finite(Rational::new(n, d)), cusp: None }
    }

    pub fn cusp(c: CuspType) -> EdgeDecor<Rational> {
        let length = if c == CuspType::CoronalFinite {
            Length::Finite(Rational::from_integer(1))
        } else {
            Length::Infinite
        };
        EdgeDecor { length, cusp: Some(c) }
    }

    pub fn closed(id: &str, a: &str, b: &str) -> Edge {
        Edge::closed(id, (&format!("{id}.0"), a), (&format!("{id}.1"), b))
    }

    pub fn open(id: &str, v: &str) -> Edge {
        Edge::open(id, &format!("{id}.0"), v)
    }

    /// One genus-0 vertex with a loop.
    pub fn tate() -> Skeleton<Rational> {
        build(&[("v", plain())], vec![(closed("e", "v", "v"), len(1, 1))], params())
    }

    /// One vertex with three punctured-disc cusps.
    pub fn thrice_punctured() -> Skeleton<Rational> {
        build(
            &[("v", plain())],
            (0..3).map(|i| (open(&format!("c{i}"), "v"), cusp(CuspType::PuncturedDisc))).collect(),
            CurveParams::new(3, false),
        )
    }

    /// Two trivalent vertices joined by three edges.
    pub fn theta() -> Skeleton<Rational> {
        build(
            &[("x", plain()), ("y", plain())],
            (1..=3).map(|i| (closed(&format!("e{i}"), "x", "y"), len(i, 1))).collect(),
            params(),
        )
    }

    /// Compact annulus: two boundary vertices joined by one edge.
    pub fn compact_annulus() -> Skeleton<Rational> {
        build(
            &[("x", boundary(1)), ("y", boundary(1))],
            vec![(closed("e", "x", "y"), len(2, 1))],
            params(),
        )
    }
}
