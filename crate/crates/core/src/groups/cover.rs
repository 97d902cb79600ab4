//! The finite cover of a graph of groups attached to a permutation action.

use std::collections::BTreeSet;

use serde::Serialize;

use super::action::{validate_action, PermutationAction};
use super::{FiniteGroup, GogError, GraphOfGroups};
use crate::semigraph::{Branch, Edge, SemiGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GogCover {
    pub cover: GraphOfGroups,
    pub degree: usize,
    /// Base vertex id of each cover vertex.
    pub vertex_projection: Vec<String>,
    /// Base edge id of each cover edge.
    pub edge_projection: Vec<String>,
    /// Size of the orbit in the fiber, i.e. the local degree, per cover cell.
    pub vertex_degrees: Vec<usize>,
    pub edge_degrees: Vec<usize>,
}

/// Orbits of the permutations `perms` on `0..n`, each listed in increasing
/// order, orbits ordered by their least point.
fn orbits(perms: &[&Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for p in perms {
                if label[p[x]] == usize::MAX {
                    label[p[x]] = id;
                    orbit.push(p[x]);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

struct VertexLift {
    /// Orbit index of each fiber point.
    orbit_of: Vec<usize>,
    /// Cover vertex index of each orbit.
    first_index: usize,
    reps: Vec<usize>,
}

/// Cover vertices over `v` are the `G_v`-orbits on the fiber, cover edges
/// over `e` the `α(G_e)`-orbits; cell groups are point stabilizers.
pub fn cover_from_action(gog: &GraphOfGroups, act: &PermutationAction) -> Result<GogCover, GogError> {
    validate_action(gog, act)?;
    let g = gog.graph();
    let n = act.degree();

    let mut vertices = Vec::new();
    let mut vertex_groups = Vec::new();
    let mut vertex_projection = Vec::new();
    let mut vertex_degrees = Vec::new();
    let mut lifts = Vec::new();
    for v in 0..g.vertex_count() {
        let group = gog.vertex_group(v);
        let perms: Vec<&Vec<usize>> = (0..group.order()).map(|x| act.vertex_perm(v, x)).collect();
        let orbs = orbits(&perms, n);
        let mut orbit_of = vec![0; n];
        for (k, o) in orbs.iter().enumerate() {
            for &x in o {
                orbit_of[x] = k;
            }
        }
        let lift = VertexLift { orbit_of, first_index: vertices.len(), reps: orbs.iter().map(|o| o[0]).collect() };
        for o in &orbs {
            let y = o[0];
            vertices.push(format!("{}.{}", g.vertices()[v], y));
            let stab: BTreeSet<usize> = (0..group.order()).filter(|&x| act.vertex_perm(v, x)[y] == y).collect();
            vertex_groups.push(group.subgroup(&stab));
            vertex_projection.push(g.vertices()[v].clone());
            vertex_degrees.push(o.len());
        }
        if orbs.iter().map(Vec::len).sum::<usize>() != n {
            return Err(GogError::DegreeMismatch(g.vertices()[v].clone()));
        }
        lifts.push(lift);
    }

    // cover vertex over v containing x, and g ∈ G_v with g · rep = x
    let locate = |v: usize, x: usize| -> (usize, usize) {
        let lift = &lifts[v];
        let k = lift.orbit_of[x];
        let y = lift.reps[k];
        let group = gog.vertex_group(v);
        let mover = (0..group.order())
            .find(|&h| act.vertex_perm(v, h)[y] == x)
            .expect("x lies in the orbit of its representative");
        (lift.first_index + k, mover)
    };

    let mut edges = Vec::new();
    let mut edge_groups = Vec::new();
    let mut embeddings = Vec::new();
    let mut edge_projection = Vec::new();
    let mut edge_degrees = Vec::new();
    for e in 0..g.edge_count() {
        let edge = &g.edges()[e];
        let eg = gog.edge_group(e);
        let v0 = g.ends(e)[0];
        let alpha = gog.embedding(e, 0);
        let perms: Vec<&Vec<usize>> = (0..eg.order()).map(|a| act.vertex_perm(v0, alpha[a])).collect();
        let orbs = orbits(&perms, n);
        if orbs.iter().map(Vec::len).sum::<usize>() != n {
            return Err(GogError::DegreeMismatch(edge.id.clone()));
        }
        for o in &orbs {
            let x = o[0];
            let stab: BTreeSet<usize> = (0..eg.order()).filter(|&a| act.vertex_perm(v0, alpha[a])[x] == x).collect();
            let sub = eg.subgroup(&stab);
            let members: Vec<usize> = stab.iter().copied().collect();
            let mut branches = Vec::new();
            let mut maps = Vec::new();
            for (b, branch) in edge.branches.iter().enumerate() {
                let v = g.ends(e)[b];
                let point = if b == 0 { x } else { act.letter(e)[x] };
                let (cv, mover) = locate(v, point);
                let vg = gog.vertex_group(v);
                let target: &FiniteGroup = &vertex_groups[cv];
                let map = members
                    .iter()
                    .map(|&a| {
                        let image = gog.embedding(e, b)[a];
                        // mover⁻¹ · b_*(a) · mover fixes the representative
                        let conj = vg.mul(vg.mul(vg.inv(mover), image), mover);
                        target.index_of(vg.element_id(conj)).expect("conjugate lies in the stabilizer")
                    })
                    .collect();
                maps.push(map);
                branches.push(Branch { id: format!("{}.{}", branch.id, x), vertex: vertices[cv].clone() });
            }
            edges.push(Edge { id: format!("{}.{}", edge.id, x), branches });
            edge_groups.push(sub);
            embeddings.push(maps);
            edge_projection.push(edge.id.clone());
            edge_degrees.push(o.len());
        }
    }

    let graph = SemiGraph::new(vertices, edges)?;
    if !graph.is_connected() {
        return Err(GogError::NotTransitive);
    }
    let cover = GraphOfGroups::new(graph, vertex_groups, edge_groups, embeddings, None)?;
    Ok(GogCover { cover, degree: n, vertex_projection, edge_projection, vertex_degrees, edge_degrees })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn cyclic_cover_of_circle() {
        let gog = circle_trivial();
        let act = PermutationAction::letter_cycle(&gog, 0, 3).unwrap();
        let c = cover_from_action(&gog, &act).unwrap();
        let g = c.cover.graph();
        assert_eq!((g.vertex_count(), g.edge_count(), g.betti()), (3, 3, 1));
        assert!(c.cover.all_trivial());
    }

    #[test]
    fn segment_six_point_action() {
        let gog = segment(2, 3);
        let gens = BTreeMap::from([
            (0, BTreeMap::from([(1, vec![3, 4, 5, 0, 1, 2])])),
            (1, BTreeMap::from([(1, vec![2, 3, 4, 5, 0, 1])])),
        ]);
        let act = PermutationAction::from_generators(&gog, 6, &gens, &BTreeMap::new()).unwrap();
        let c = cover_from_action(&gog, &act).unwrap();
        let over = |v: &str| c.vertex_projection.iter().filter(|p| *p == v).count();
        assert_eq!(over("a"), 3);
        assert_eq!(over("b"), 2);
        assert_eq!(c.cover.graph().edge_count(), 6);
        assert!(c.cover.all_trivial());
    }

    #[test]
    fn identity_action_reproduces_base() {
        let gog = z4_z2_z4();
        let c = cover_from_action(&gog, &PermutationAction::trivial(&gog)).unwrap();
        assert_eq!(c.cover.graph().vertex_count(), 2);
        assert_eq!(c.cover.vertex_group(0).order(), 4);
        assert_eq!(c.cover.edge_group(0).order(), 2);
    }

    #[test]
    fn nontrivial_stabilizers() {
        // Z/4 acting on 2 points through Z/4 → Z/2; stabilizer is {0, 2}
        let gog = z4_z2_z4();
        let gens = BTreeMap::from([(0, BTreeMap::from([(1, vec![1, 0])])), (1, BTreeMap::from([(1, vec![1, 0])]))]);
        let act = PermutationAction::from_generators(&gog, 2, &gens, &BTreeMap::new()).unwrap();
        let c = cover_from_action(&gog, &act).unwrap();
        assert_eq!(c.cover.graph().vertex_count(), 2);
        assert_eq!(c.cover.vertex_group(0).order(), 2);
        assert_eq!(c.cover.edge_group(0).order(), 2);
        assert_eq!(c.cover.graph().edge_count(), 2);
        assert_eq!(c.cover.graph().betti(), 1);
    }

    #[test]
    fn non_transitive_rejected() {
        let gog = circle_trivial();
        let act = PermutationAction::from_generators(&gog, 2, &BTreeMap::new(), &BTreeMap::new()).unwrap();
        assert_eq!(cover_from_action(&gog, &act), Err(GogError::NotTransitive));
    }
}
