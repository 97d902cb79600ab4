//! Cyclic topological covers of semi-graphs built from a `Z/ℓ` class.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::{Branch, Edge, SemiGraph, SemiGraphError};

/// A degree-`ℓ` cover `total → base` with explicit projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecorationFreeCover {
    pub base: SemiGraph,
    pub total: SemiGraph,
    pub degree: u64,
    /// Base vertex index of each total vertex.
    pub vertex_projection: Vec<usize>,
    /// Base edge index of each total edge.
    pub edge_projection: Vec<usize>,
    pub components: usize,
}

impl DecorationFreeCover {
    /// Size of the monodromy orbit of one fiber point.
    pub fn monodromy_order(&self) -> u64 {
        self.degree / self.components as u64
    }
}

/// Glues `ℓ` sheets: a closed edge with class `σ` joins sheet `i` at its
/// branch-0 vertex to sheet `i + σ` at its branch-1 vertex. Edges absent
/// from `class` carry `σ = 0`; open edges are lifted sheet by sheet.
pub fn cover_from_class(
    g: &SemiGraph,
    modulus: u64,
    class: &BTreeMap<String, u64>,
) -> Result<DecorationFreeCover, SemiGraphError> {
    assert!(modulus >= 1, "cover degree must be positive");
    if !g.is_connected() {
        return Err(SemiGraphError::Disconnected);
    }
    let mut sigma = vec![0u64; g.edge_count()];
    for (id, &value) in class {
        let e = g.edge_index(id).ok_or_else(|| SemiGraphError::UnknownEdge(id.clone()))?;
        sigma[e] = value % modulus;
    }
    let lift = |v: usize, i: u64| format!("{}.{}", g.vertices()[v], i % modulus);
    let mut vertices = Vec::new();
    let mut vertex_projection = Vec::new();
    for v in 0..g.vertex_count() {
        for i in 0..modulus {
            vertices.push(lift(v, i));
            vertex_projection.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut edge_projection = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        for i in 0..modulus {
            let shift = [0, sigma[e]];
            let branches = edge
                .branches
                .iter()
                .zip(g.ends(e))
                .zip(shift)
                .map(|((b, &v), s)| Branch { id: format!("{}.{}", b.id, i), vertex: lift(v, i + s) })
                .collect();
            edges.push(Edge { id: format!("{}.{}", edge.id, i), branches });
            edge_projection.push(e);
        }
    }
    let total = SemiGraph::new(vertices, edges)?;
    let components = if g.vertex_count() == 0 { 0 } else { total.component_count() };
    Ok(DecorationFreeCover {
        base: g.clone(),
        total,
        degree: modulus,
        vertex_projection,
        edge_projection,
        components,
    })
}

/// `gcd` of the class values, which bounds the component count from below.
pub fn class_gcd(class: &BTreeMap<String, u64>, modulus: u64) -> u64 {
    class.values().fold(modulus, |acc, v| acc.gcd(&(v % modulus)))
}
