//! Harmonic `Z/ℓ`-cochains on semi-graphs.
//!
//! A cochain stores one value per edge, read in the edge's canonical
//! orientation: toward branch 1 for a closed edge, toward the vertex for an
//! open edge. The reverse orientation reads the negated value, so
//! antisymmetry holds by construction and only the divergence condition is
//! a real constraint. A loop contributes both orientations at its vertex and
//! therefore never affects the divergence.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{SemiGraph, SemiGraphError};
use crate::modular::kernel_mod;

/// An edge together with the branch it points toward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub edge: usize,
    pub head: usize,
}

impl OrientedEdge {
    pub fn canonical(g: &SemiGraph, edge: usize) -> Self {
        OrientedEdge { edge, head: g.ends(edge).len() - 1 }
    }

    /// `None` for open edges, which have only the inward orientation.
    pub fn reversed(&self, g: &SemiGraph) -> Option<Self> {
        (!g.is_open(self.edge)).then(|| OrientedEdge { edge: self.edge, head: 1 - self.head })
    }

    pub fn head_vertex(&self, g: &SemiGraph) -> usize {
        g.ends(self.edge)[self.head]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicCochain {
    pub modulus: u64,
    /// One residue per edge, in the graph's edge order.
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error(transparent)]
    Graph(#[from] SemiGraphError),
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("need three distinct open edges, graph has {0} open edges")]
    TooFewOpenEdges(usize),
    #[error("edge {0:?} is not an open edge")]
    NotOpen(String),
    #[error("prescribed edges must be distinct")]
    RepeatedEdge,
    #[error("value count {values} does not match edge count {edges}")]
    Shape { values: usize, edges: usize },
    #[error("antisymmetry fails on edge {0:?}")]
    Antisymmetry(String),
    #[error("divergence at vertex {vertex:?} is {sum}, not 0")]
    Divergence { vertex: String, sum: u64 },
}

impl CochainError {
    pub fn code(&self) -> &'static str {
        match self {
            CochainError::Graph(e) => e.code(),
            CochainError::Modulus(_) => "bad_modulus",
            CochainError::TooFewOpenEdges(_) => "too_few_open_edges",
            CochainError::NotOpen(_) => "not_open_edge",
            CochainError::RepeatedEdge => "repeated_edge",
            CochainError::Shape { .. } => "cochain_shape",
            CochainError::Antisymmetry(_) => "antisymmetry",
            CochainError::Divergence { .. } => "divergence",
        }
    }
}

impl HarmonicCochain {
    pub fn zero(g: &SemiGraph, modulus: u64) -> Self {
        HarmonicCochain { modulus, values: vec![0; g.edge_count()] }
    }

    pub fn value(&self, g: &SemiGraph, o: OrientedEdge) -> u64 {
        let v = self.values[o.edge] % self.modulus;
        if o == OrientedEdge::canonical(g, o.edge) {
            v
        } else {
            (self.modulus - v) % self.modulus
        }
    }

    pub fn value_by_id(&self, g: &SemiGraph, edge: &str) -> Option<u64> {
        let e = g.edge_index(edge)?;
        Some(self.value(g, OrientedEdge::canonical(g, e)))
    }

    /// Adds `amount` to the value read along `o`.
    pub fn add_along(&mut self, g: &SemiGraph, o: OrientedEdge, amount: u64) {
        let n = self.modulus;
        let amount = amount % n;
        let slot = &mut self.values[o.edge];
        if o == OrientedEdge::canonical(g, o.edge) {
            *slot = (*slot + amount) % n;
        } else {
            *slot = (*slot + n - amount) % n;
        }
    }

    /// Sum of values over the oriented edges pointing at each vertex.
    pub fn divergence(&self, g: &SemiGraph) -> Vec<u64> {
        let n = self.modulus;
        let mut div = vec![0u64; g.vertex_count()];
        for e in 0..g.edge_count() {
            for head in 0..g.ends(e).len() {
                let o = OrientedEdge { edge: e, head };
                let x = o.head_vertex(g);
                div[x] = (div[x] + self.value(g, o)) % n;
            }
        }
        div
    }

    /// Checks both cochain axioms value by value.
    pub fn check(&self, g: &SemiGraph) -> Result<(), CochainError> {
        if self.values.len() != g.edge_count() {
            return Err(CochainError::Shape { values: self.values.len(), edges: g.edge_count() });
        }
        let n = self.modulus;
        for e in 0..g.edge_count() {
            let o = OrientedEdge::canonical(g, e);
            if let Some(r) = o.reversed(g) {
                if !(self.value(g, o) + self.value(g, r)).is_multiple_of(n) {
                    return Err(CochainError::Antisymmetry(g.edges()[e].id.clone()));
                }
            }
        }
        for (v, &sum) in self.divergence(g).iter().enumerate() {
            if sum != 0 {
                return Err(CochainError::Divergence { vertex: g.vertices()[v].clone(), sum });
            }
        }
        Ok(())
    }
}

/// Generators of `Harm(Γ, Z/ℓ)`; a basis with its dimension when ℓ is prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmBasis {
    pub modulus: u64,
    pub generators: Vec<HarmonicCochain>,
    pub rank: Option<usize>,
}

/// Row `v`, column `e`: coefficient of the canonical value of `e` in the
/// divergence at `v`.
fn divergence_matrix(g: &SemiGraph, n: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![0u64; g.edge_count()]; g.vertex_count()];
    for e in 0..g.edge_count() {
        let ends = g.ends(e);
        if ends.len() == 1 {
            rows[ends[0]][e] = 1;
        } else if ends[0] != ends[1] {
            rows[ends[1]][e] = (rows[ends[1]][e] + 1) % n;
            rows[ends[0]][e] = (rows[ends[0]][e] + n - 1) % n;
        }
    }
    rows
}

pub fn harm_basis(g: &SemiGraph, modulus: u64) -> Result<HarmBasis, CochainError> {
    if modulus < 2 {
        return Err(CochainError::Modulus(modulus));
    }
    if !g.is_connected() {
        return Err(SemiGraphError::Disconnected.into());
    }
    let rows = divergence_matrix(g, modulus);
    let kernel = kernel_mod(&rows, g.edge_count(), modulus);
    let generators = kernel
        .generators
        .into_iter()
        .map(|values| HarmonicCochain { modulus, values })
        .collect();
    Ok(HarmBasis { modulus, generators, rank: kernel.rank })
}

/// A harmonic cochain taking the values `a`, `a'`, `-(a+a')` on three given
/// open edges and zero on every other open edge, built by pushing `a` along
/// a path from the first edge's vertex to the third edge's vertex, and `a'`
/// likewise from the second.
pub fn prescribed_cochain(
    g: &SemiGraph,
    modulus: u64,
    edges: [&str; 3],
    a: u64,
    a_prime: u64,
) -> Result<HarmonicCochain, CochainError> {
    if modulus < 2 {
        return Err(CochainError::Modulus(modulus));
    }
    if !g.is_connected() {
        return Err(SemiGraphError::Disconnected.into());
    }
    let open_count = g.open_edges().count();
    if open_count < 3 {
        return Err(CochainError::TooFewOpenEdges(open_count));
    }
    let mut idx = [0usize; 3];
    for (slot, id) in idx.iter_mut().zip(edges) {
        let e = g.edge_index(id).ok_or_else(|| SemiGraphError::UnknownEdge(id.to_string()))?;
        if !g.is_open(e) {
            return Err(CochainError::NotOpen(id.to_string()));
        }
        *slot = e;
    }
    if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
        return Err(CochainError::RepeatedEdge);
    }
    let target = g.ends(idx[2])[0];
    let mut c = HarmonicCochain::zero(g, modulus);
    for (e, amount) in [(idx[0], a), (idx[1], a_prime)] {
        let source = g.ends(e)[0];
        let path = g.shortest_path(source, target).ok_or(SemiGraphError::Disconnected)?;
        c.add_along(g, OrientedEdge::canonical(g, e), amount);
        for step in path {
            c.add_along(g, step, amount);
        }
        // leaves through the third edge: reading it inward gives -amount
        c.add_along(g, OrientedEdge::canonical(g, idx[2]), modulus - amount % modulus);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Edge;
    use super::*;

    #[test]
    fn ranks_of_small_graphs() {
        assert_eq!(harm_basis(&path(4), 5).unwrap().rank, Some(0));
        assert_eq!(harm_basis(&circle(), 5).unwrap().rank, Some(1));
        assert_eq!(harm_basis(&tripod(), 5).unwrap().rank, Some(2));
        assert_eq!(harm_basis(&theta(), 7).unwrap().rank, Some(2));
    }

    #[test]
    fn basis_elements_are_harmonic() {
        for g in [path(3), circle(), tripod(), theta()] {
            for c in harm_basis(&g, 6).unwrap().generators {
                c.check(&g).unwrap();
            }
        }
    }

    #[test]
    fn composite_modulus_has_no_rank() {
        assert_eq!(harm_basis(&tripod(), 6).unwrap().rank, None);
    }

    #[test]
    fn disconnected_input_rejected() {
        let g = SemiGraph::new(vs(&["a", "b"]), vec![]).unwrap();
        assert_eq!(harm_basis(&g, 3), Err(CochainError::Graph(SemiGraphError::Disconnected)));
    }

    #[test]
    fn prescribed_on_tripod() {
        let g = tripod();
        let c = prescribed_cochain(&g, 7, ["a", "b", "c"], 1, 2).unwrap();
        c.check(&g).unwrap();
        assert_eq!(c.value_by_id(&g, "a"), Some(1));
        assert_eq!(c.value_by_id(&g, "b"), Some(2));
        assert_eq!(c.value_by_id(&g, "c"), Some(4)); // -3 mod 7
    }

    #[test]
    fn prescribed_zero_is_zero() {
        let g = tripod();
        let c = prescribed_cochain(&g, 7, ["a", "b", "c"], 0, 0).unwrap();
        assert_eq!(c, HarmonicCochain::zero(&g, 7));
    }

    #[test]
    fn prescribed_routes_through_internal_edge() {
        let g = SemiGraph::new(
            vs(&["v1", "v2"]),
            vec![
                Edge::closed("i", ("i1", "v1"), ("i2", "v2")),
                Edge::open("e", "eb", "v1"),
                Edge::open("e1", "e1b", "v2"),
                Edge::open("e2", "e2b", "v2"),
            ],
        )
        .unwrap();
        let c = prescribed_cochain(&g, 3, ["e", "e1", "e2"], 1, 0).unwrap();
        c.check(&g).unwrap();
        // canonical orientation of "i" points at v2
        assert_eq!(c.value_by_id(&g, "i"), Some(1));
        assert_eq!(c.value_by_id(&g, "e2"), Some(2));
        assert_eq!(c.value_by_id(&g, "e1"), Some(0));
    }

    #[test]
    fn prescribed_errors() {
        assert_eq!(
            prescribed_cochain(&circle(), 3, ["a", "b", "c"], 1, 1),
            Err(CochainError::TooFewOpenEdges(0))
        );
        assert_eq!(prescribed_cochain(&tripod(), 3, ["a", "a", "c"], 1, 1), Err(CochainError::RepeatedEdge));
    }

    #[test]
    fn loop_orientation_reverses() {
        let g = circle();
        let mut c = HarmonicCochain::zero(&g, 5);
        c.add_along(&g, OrientedEdge { edge: 0, head: 0 }, 2);
        assert_eq!(c.value(&g, OrientedEdge { edge: 0, head: 1 }), 3);
        c.check(&g).unwrap();
    }
}
