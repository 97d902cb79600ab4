//! Graphs of finite groups.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GogError};
use crate::semigraph::SemiGraph;

/// A connected semi-graph with finite vertex and edge groups and injective
/// branch embeddings `b_*: G_e → G_v`.
///
/// For a closed edge `e` with branches into `v₀, v₁`, `α = b₀_*` and
/// `ω = b₁_*`; its letter `t_e` satisfies `t_e α(a) t_e⁻¹ = ω(a)` and is
/// trivial on the spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    graph: SemiGraph,
    vertex_groups: Vec<FiniteGroup>,
    edge_groups: Vec<FiniteGroup>,
    embeddings: Vec<Vec<Vec<usize>>>,
    tree: BTreeSet<usize>,
}

impl GraphOfGroups {
    /// `embeddings[e][b]` maps edge-group element indices into the group of
    /// the vertex carrying branch `b`. `tree = None` picks the breadth-first
    /// spanning tree.
    pub fn new(
        graph: SemiGraph,
        vertex_groups: Vec<FiniteGroup>,
        edge_groups: Vec<FiniteGroup>,
        embeddings: Vec<Vec<Vec<usize>>>,
        tree: Option<BTreeSet<usize>>,
    ) -> Result<Self, GogError> {
        assert_eq!(vertex_groups.len(), graph.vertex_count(), "one group per vertex");
        assert_eq!(edge_groups.len(), graph.edge_count(), "one group per edge");
        assert_eq!(embeddings.len(), graph.edge_count(), "embeddings per edge");
        if graph.vertex_count() == 0 || !graph.is_connected() {
            return Err(GogError::Disconnected);
        }
        for e in 0..graph.edge_count() {
            let ends = graph.ends(e);
            if embeddings[e].len() != ends.len() {
                return Err(GogError::MissingEmbedding(graph.edges()[e].branches[0].id.clone()));
            }
            for (b, &v) in ends.iter().enumerate() {
                if !edge_groups[e].is_injective_hom(&vertex_groups[v], &embeddings[e][b]) {
                    return Err(GogError::NotInjectiveHom(graph.edges()[e].branches[b].id.clone()));
                }
            }
        }
        let tree = match tree {
            Some(t) => {
                check_tree(&graph, &t)?;
                t
            }
            None => graph.spanning_tree(),
        };
        Ok(GraphOfGroups { graph, vertex_groups, edge_groups, embeddings, tree })
    }

    /// Every group trivial.
    pub fn trivial(graph: SemiGraph) -> Result<Self, GogError> {
        let vg = vec![FiniteGroup::trivial(); graph.vertex_count()];
        let eg = vec![FiniteGroup::trivial(); graph.edge_count()];
        let emb = (0..graph.edge_count()).map(|e| vec![vec![0]; graph.ends(e).len()]).collect();
        GraphOfGroups::new(graph, vg, eg, emb, None)
    }

    pub fn graph(&self) -> &SemiGraph {
        &self.graph
    }

    pub fn vertex_group(&self, v: usize) -> &FiniteGroup {
        &self.vertex_groups[v]
    }

    pub fn edge_group(&self, e: usize) -> &FiniteGroup {
        &self.edge_groups[e]
    }

    /// `b_*` for branch `b` of edge `e`.
    pub fn embedding(&self, e: usize, b: usize) -> &[usize] {
        &self.embeddings[e][b]
    }

    /// Image `b_*(G_e)` as a subset of the vertex group.
    pub fn embedded_subgroup(&self, e: usize, b: usize) -> BTreeSet<usize> {
        self.embeddings[e][b].iter().copied().collect()
    }

    pub fn tree(&self) -> &BTreeSet<usize> {
        &self.tree
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree.contains(&e)
    }

    pub fn all_trivial(&self) -> bool {
        self.vertex_groups.iter().chain(&self.edge_groups).all(|g| g.order() == 1)
    }

    /// The same data with open edges removed.
    pub fn truncate(&self) -> GraphOfGroups {
        let keep: Vec<usize> = self.graph.closed_edges().collect();
        let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        GraphOfGroups {
            graph: self.graph.truncate(),
            vertex_groups: self.vertex_groups.clone(),
            edge_groups: keep.iter().map(|&e| self.edge_groups[e].clone()).collect(),
            embeddings: keep.iter().map(|&e| self.embeddings[e].clone()).collect(),
            tree: self.tree.iter().map(|e| renumber[e]).collect(),
        }
    }
}

fn check_tree(graph: &SemiGraph, tree: &BTreeSet<usize>) -> Result<(), GogError> {
    let n = graph.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &e in tree {
        if e >= graph.edge_count() || graph.is_open(e) {
            return Err(GogError::BadSpanningTree(format!("edge #{e} is not a closed edge")));
        }
        let (a, b) = (find(&mut parent, graph.ends(e)[0]), find(&mut parent, graph.ends(e)[1]));
        if a == b {
            return Err(GogError::BadSpanningTree(format!("edge {:?} closes a cycle", graph.edges()[e].id)));
        }
        parent[a] = b;
    }
    if tree.len() + 1 != n {
        return Err(GogError::BadSpanningTree("tree does not span the graph".into()));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct RawGog {
    graph: SemiGraph,
    #[serde(default)]
    vertex_groups: BTreeMap<String, FiniteGroup>,
    #[serde(default)]
    edge_groups: BTreeMap<String, FiniteGroup>,
    /// Branch id to the images of the edge-group elements, in their order.
    #[serde(default)]
    embeddings: BTreeMap<String, Vec<serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<Vec<String>>,
}

fn element_token(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl TryFrom<RawGog> for GraphOfGroups {
    type Error = GogError;

    fn try_from(raw: RawGog) -> Result<Self, GogError> {
        let g = raw.graph;
        for id in raw.vertex_groups.keys() {
            g.vertex_index(id).ok_or_else(|| GogError::UnknownVertex(id.clone()))?;
        }
        for id in raw.edge_groups.keys() {
            g.edge_index(id).ok_or_else(|| GogError::UnknownEdge(id.clone()))?;
        }
        let vg: Vec<FiniteGroup> = g
            .vertices()
            .iter()
            .map(|v| raw.vertex_groups.get(v).cloned().unwrap_or_else(FiniteGroup::trivial))
            .collect();
        let eg: Vec<FiniteGroup> = g
            .edges()
            .iter()
            .map(|e| raw.edge_groups.get(&e.id).cloned().unwrap_or_else(FiniteGroup::trivial))
            .collect();
        let mut known: BTreeSet<&str> = BTreeSet::new();
        let mut emb = Vec::with_capacity(g.edge_count());
        for (e, edge) in g.edges().iter().enumerate() {
            let mut per_branch = Vec::new();
            for (b, branch) in edge.branches.iter().enumerate() {
                known.insert(branch.id.as_str());
                let target = &vg[g.ends(e)[b]];
                let map = match raw.embeddings.get(&branch.id) {
                    Some(images) => images
                        .iter()
                        .map(|x| {
                            let id = element_token(x);
                            target.index_of(&id).ok_or(GogError::UnknownElement(id))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                    None if eg[e].order() == 1 => vec![target.identity()],
                    None => return Err(GogError::MissingEmbedding(branch.id.clone())),
                };
                per_branch.push(map);
            }
            emb.push(per_branch);
        }
        if let Some(b) = raw.embeddings.keys().find(|b| !known.contains(b.as_str())) {
            return Err(GogError::UnknownBranch(b.clone()));
        }
        let tree = match raw.tree {
            Some(ids) => Some(
                ids.iter()
                    .map(|id| g.edge_index(id).ok_or_else(|| GogError::UnknownEdge(id.clone())))
                    .collect::<Result<BTreeSet<_>, _>>()?,
            ),
            None => None,
        };
        GraphOfGroups::new(g, vg, eg, emb, tree)
    }
}

impl From<&GraphOfGroups> for RawGog {
    fn from(gog: &GraphOfGroups) -> Self {
        let g = &gog.graph;
        let mut embeddings = BTreeMap::new();
        for (e, edge) in g.edges().iter().enumerate() {
            for (b, branch) in edge.branches.iter().enumerate() {
                let target = &gog.vertex_groups[g.ends(e)[b]];
                let images = gog.embeddings[e][b]
                    .iter()
                    .map(|&x| serde_json::Value::String(target.element_id(x).to_string()))
                    .collect();
                embeddings.insert(branch.id.clone(), images);
            }
        }
        RawGog {
            graph: g.clone(),
            vertex_groups: g.vertices().iter().cloned().zip(gog.vertex_groups.iter().cloned()).collect(),
            edge_groups: g.edges().iter().map(|e| e.id.clone()).zip(gog.edge_groups.iter().cloned()).collect(),
            embeddings,
            tree: Some(gog.tree.iter().map(|&e| g.edges()[e].id.clone()).collect()),
        }
    }
}

impl Serialize for GraphOfGroups {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RawGog::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GraphOfGroups {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        GraphOfGroups::try_from(RawGog::deserialize(de)?).map_err(serde::de::Error::custom)
    }
}

impl GraphOfGroups {
    /// Parses JSON, keeping malformed input apart from invalid data.
    pub fn from_json(text: &str) -> Result<Self, super::GogJsonError> {
        let raw: RawGog = serde_json::from_str(text).map_err(super::GogJsonError::Json)?;
        GraphOfGroups::try_from(raw).map_err(super::GogJsonError::Gog)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn segment_json_round_trip() {
        let gog = segment(2, 3);
        let text = serde_json::to_string(&gog).unwrap();
        let back: GraphOfGroups = serde_json::from_str(&text).unwrap();
        assert_eq!(back, gog);
    }

    #[test]
    fn rejects_non_injective_embedding() {
        let text = r#"{
            "graph": {"vertices":["a","b"],"edges":[{"id":"e","branches":[{"id":"ea","vertex":"a"},{"id":"eb","vertex":"b"}]}]},
            "vertex_groups": {"a": {"cyclic": 4}, "b": {"cyclic": 4}},
            "edge_groups": {"e": {"cyclic": 2}},
            "embeddings": {"ea": ["0", "2"], "eb": ["0", "1"]}
        }"#;
        assert!(matches!(GraphOfGroups::from_json(text), Err(super::super::GogJsonError::Gog(GogError::NotInjectiveHom(b))) if b == "eb"));
    }

    #[test]
    fn rejects_bad_tree() {
        let text = r#"{
            "graph": {"vertices":["v"],"edges":[{"id":"e","branches":[{"id":"e0","vertex":"v"},{"id":"e1","vertex":"v"}]}]},
            "tree": ["e"]
        }"#;
        assert!(matches!(GraphOfGroups::from_json(text), Err(super::super::GogJsonError::Gog(GogError::BadSpanningTree(_)))));
    }

    #[test]
    fn truncation_drops_open_edges() {
        let gog = with_cusp();
        assert_eq!(gog.truncate().graph().edge_count(), 0);
    }
}
