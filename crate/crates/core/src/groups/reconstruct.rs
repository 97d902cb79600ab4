//! Recovering the labeled quotient graph from a Bass–Serre ball.

use std::collections::BTreeMap;

use serde::Serialize;

use super::iso::{LabeledEdge, LabeledGraph};
use super::{BassSerreBall, GogError};
use crate::semigraph::{Edge, SemiGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    pub graph: SemiGraph,
    pub vertex_orders: BTreeMap<String, usize>,
    pub edge_orders: BTreeMap<String, usize>,
}

impl Reconstruction {
    pub fn labeled(&self) -> LabeledGraph {
        let g = &self.graph;
        LabeledGraph {
            vertices: g.vertices().to_vec(),
            vertex_labels: g.vertices().iter().map(|v| self.vertex_orders[v]).collect(),
            edges: (0..g.edge_count())
                .map(|e| LabeledEdge {
                    id: g.edges()[e].id.clone(),
                    ends: [g.ends(e)[0], g.ends(e)[1]],
                    label: self.edge_orders[&g.edges()[e].id],
                })
                .collect(),
        }
    }
}

/// One quotient vertex per vertex class and one quotient edge per edge
/// class, labeled by stabilizer and fixer orders.
///
/// Every class must have a member strictly inside the ball: then all its
/// incident edge classes are visible, and by connectivity every class is.
pub fn reconstruct_quotient(ball: &BassSerreBall) -> Result<Reconstruction, GogError> {
    ball.check()?;
    let mut order: Vec<String> = Vec::new();
    let mut vertex_orders: BTreeMap<String, usize> = BTreeMap::new();
    let mut interior: BTreeMap<String, bool> = BTreeMap::new();
    for v in &ball.vertices {
        if !vertex_orders.contains_key(&v.vertex_type) {
            order.push(v.vertex_type.clone());
        }
        let seen = *vertex_orders.entry(v.vertex_type.clone()).or_insert(v.stabilizer_order);
        if seen != v.stabilizer_order {
            return Err(GogError::MalformedBall(format!("class {:?} has two stabilizer orders", v.vertex_type)));
        }
        *interior.entry(v.vertex_type.clone()).or_insert(false) |= v.depth < ball.radius;
    }
    if let Some((class, _)) = interior.iter().find(|(_, &inside)| !inside) {
        return Err(GogError::RadiusTooSmall {
            radius: ball.radius,
            missing: format!("vertex class {class:?} only occurs on the boundary"),
        });
    }

    // edge class → (branch-0 class, branch-1 class, fixer order)
    let mut classes: BTreeMap<String, (String, String, usize)> = BTreeMap::new();
    let mut edge_order: Vec<String> = Vec::new();
    for edge in &ball.edges {
        let parent = &ball.vertices[edge.from].vertex_type;
        let child = &ball.vertices[edge.to].vertex_type;
        let ends = if edge.side == 0 { (parent.clone(), child.clone()) } else { (child.clone(), parent.clone()) };
        let entry = (ends.0, ends.1, edge.parent_fixer.len());
        match classes.get(&edge.edge) {
            None => {
                edge_order.push(edge.edge.clone());
                classes.insert(edge.edge.clone(), entry);
            }
            Some(known) if *known != entry => {
                return Err(GogError::MalformedBall(format!("edge class {:?} is inconsistent", edge.edge)));
            }
            Some(_) => {}
        }
    }

    let edges: Vec<Edge> = edge_order
        .iter()
        .map(|id| {
            let (a, b, _) = &classes[id];
            Edge::closed(id, (&format!("{id}.0"), a), (&format!("{id}.1"), b))
        })
        .collect();
    let graph = SemiGraph::new(order, edges)?;
    let edge_orders = classes.into_iter().map(|(id, (_, _, k))| (id, k)).collect();
    Ok(Reconstruction { graph, vertex_orders, edge_orders })
}
