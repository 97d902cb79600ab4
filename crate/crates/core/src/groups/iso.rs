//! Isomorphism of small vertex- and edge-labeled multigraphs.

use std::collections::BTreeMap;

use serde::Serialize;

use super::GraphOfGroups;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledEdge {
    pub id: String,
    pub ends: [usize; 2],
    pub label: usize,
}

/// Undirected multigraph, loops allowed, with integer labels on cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub vertices: Vec<String>,
    pub vertex_labels: Vec<usize>,
    pub edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    /// Closed edges of `gog` with group orders as labels.
    pub fn from_gog(gog: &GraphOfGroups) -> Self {
        let g = gog.graph();
        LabeledGraph {
            vertices: g.vertices().to_vec(),
            vertex_labels: (0..g.vertex_count()).map(|v| gog.vertex_group(v).order()).collect(),
            edges: g
                .closed_edges()
                .map(|e| LabeledEdge {
                    id: g.edges()[e].id.clone(),
                    ends: [g.ends(e)[0], g.ends(e)[1]],
                    label: gog.edge_group(e).order(),
                })
                .collect(),
        }
    }

    /// Multiplicity of each `(min end, max end, label)` triple.
    fn edge_multiset(&self, map: &[usize]) -> BTreeMap<(usize, usize, usize), usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = (map[e.ends[0]], map[e.ends[1]]);
            *out.entry((a.min(b), a.max(b), e.label)).or_insert(0) += 1;
        }
        out
    }

    /// Vertex invariant: own label, then sorted (edge label, loop?) pairs.
    fn signature(&self, v: usize) -> (usize, Vec<(usize, bool)>) {
        let mut inc: Vec<(usize, bool)> = self
            .edges
            .iter()
            .filter(|e| e.ends.contains(&v))
            .map(|e| (e.label, e.ends[0] == e.ends[1]))
            .collect();
        inc.sort_unstable();
        (self.vertex_labels[v], inc)
    }
}

/// Backtracking search for a label-preserving bijection, pruned by vertex
/// signatures and by partial edge counts.
pub fn labeled_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let n = a.vertices.len();
    if n != b.vertices.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let sa: Vec<_> = (0..n).map(|v| a.signature(v)).collect();
    let sb: Vec<_> = (0..n).map(|v| b.signature(v)).collect();
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return false;
    }
    let target = b.edge_multiset(&(0..n).collect::<Vec<_>>());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(a, &sa, &sb, &target, 0, &mut map, &mut used)
}

fn search(
    a: &LabeledGraph,
    sa: &[(usize, Vec<(usize, bool)>)],
    sb: &[(usize, Vec<(usize, bool)>)],
    target: &BTreeMap<(usize, usize, usize), usize>,
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = map.len();
    if v == n {
        return a.edge_multiset(map) == *target;
    }
    for w in 0..n {
        if used[w] || sa[v] != sb[w] {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if consistent(a, target, map, v) && search(a, sa, sb, target, v + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Edges among already-mapped vertices must not exceed the target counts.
fn consistent(a: &LabeledGraph, target: &BTreeMap<(usize, usize, usize), usize>, map: &[usize], upto: usize) -> bool {
    let mut counts: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for e in &a.edges {
        if e.ends[0] <= upto && e.ends[1] <= upto {
            let (x, y) = (map[e.ends[0]], map[e.ends[1]]);
            *counts.entry((x.min(y), x.max(y), e.label)).or_insert(0) += 1;
        }
    }
    counts.iter().all(|(k, c)| target.get(k).is_some_and(|t| c <= t))
}
