//! Finite permutation actions of the fundamental group of a graph of groups.
//!
//! Permutations are in one-line notation on `0..degree`. The action is a
//! left action: `σ_{gh} = σ_g ∘ σ_h`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GogError, GraphOfGroups};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `a ∘ b`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn is_permutation(a: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    a.len() == n && a.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// An action given by a permutation for every vertex-group element and a
/// letter permutation per edge (the identity on open and tree edges unless
/// given otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    degree: usize,
    vertex: Vec<Vec<Perm>>,
    letters: Vec<Perm>,
}

impl PermutationAction {
    /// Extends generator images to each vertex group by closure. Fails if
    /// the images do not define a homomorphism or do not generate.
    pub fn from_generators(
        gog: &GraphOfGroups,
        degree: usize,
        generators: &BTreeMap<usize, BTreeMap<usize, Perm>>,
        letters: &BTreeMap<usize, Perm>,
    ) -> Result<Self, GogError> {
        let g = gog.graph();
        let mut vertex = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let group = gog.vertex_group(v);
            let vid = &g.vertices()[v];
            let gens = generators.get(&v).cloned().unwrap_or_default();
            for p in gens.values() {
                if !is_permutation(p, degree) {
                    return Err(GogError::NotAPermutation(format!("vertex {vid:?}")));
                }
            }
            let mut images: Vec<Option<Perm>> = vec![None; group.order()];
            images[group.identity()] = Some(identity(degree));
            let mut queue = VecDeque::from([group.identity()]);
            while let Some(x) = queue.pop_front() {
                let sx = images[x].clone().expect("queued elements have images");
                for (&gen, p) in &gens {
                    let y = group.mul(x, gen);
                    let sy = compose(&sx, p);
                    match &images[y] {
                        None => {
                            images[y] = Some(sy);
                            queue.push_back(y);
                        }
                        Some(existing) if *existing != sy => {
                            return Err(GogError::NotAHomomorphism(vid.clone()));
                        }
                        Some(_) => {}
                    }
                }
            }
            let images: Option<Vec<Perm>> = images.into_iter().collect();
            vertex.push(images.ok_or_else(|| GogError::DoesNotGenerate(vid.clone()))?);
        }
        let mut letter_perms = vec![identity(degree); g.edge_count()];
        for (&e, p) in letters {
            if g.is_open(e) {
                return Err(GogError::LetterOnOpenEdge(g.edges()[e].id.clone()));
            }
            if !is_permutation(p, degree) {
                return Err(GogError::NotAPermutation(format!("letter {:?}", g.edges()[e].id)));
            }
            letter_perms[e] = p.clone();
        }
        Ok(PermutationAction { degree, vertex, letters: letter_perms })
    }

    /// The one-point action.
    pub fn trivial(gog: &GraphOfGroups) -> Self {
        let g = gog.graph();
        PermutationAction {
            degree: 1,
            vertex: (0..g.vertex_count()).map(|v| vec![vec![0]; gog.vertex_group(v).order()]).collect(),
            letters: vec![vec![0]; g.edge_count()],
        }
    }

    /// Left-regular style action of `Z/n` through a letter on one edge,
    /// every vertex group acting trivially.
    pub fn letter_cycle(gog: &GraphOfGroups, edge: usize, n: usize) -> Result<Self, GogError> {
        let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_generators(gog, n, &BTreeMap::new(), &BTreeMap::from([(edge, cycle)]))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `σ_g` for element `g` of the group at vertex `v`.
    pub fn vertex_perm(&self, v: usize, g: usize) -> &Perm {
        &self.vertex[v][g]
    }

    pub fn letter(&self, e: usize) -> &Perm {
        &self.letters[e]
    }

    /// Transitive iff the associated cover is connected.
    pub fn is_transitive(&self) -> bool {
        let n = self.degree;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let gens: Vec<&Perm> = self.vertex.iter().flatten().chain(self.letters.iter()).collect();
        while let Some(x) = queue.pop_front() {
            for p in &gens {
                for y in [p[x], inverse(p)[x]] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Reports the first violated relation of the fundamental group.
pub fn validate_action(gog: &GraphOfGroups, act: &PermutationAction) -> Result<(), GogError> {
    let g = gog.graph();
    if act.vertex.len() != g.vertex_count() || act.letters.len() != g.edge_count() {
        return Err(GogError::ActionShape);
    }
    for v in 0..g.vertex_count() {
        let group = gog.vertex_group(v);
        if act.vertex[v].len() != group.order() {
            return Err(GogError::ActionShape);
        }
        for p in &act.vertex[v] {
            if !is_permutation(p, act.degree) {
                return Err(GogError::NotAPermutation(format!("vertex {:?}", g.vertices()[v])));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if act.vertex[v][group.mul(a, b)] != compose(&act.vertex[v][a], &act.vertex[v][b]) {
                    return Err(GogError::NotAHomomorphism(g.vertices()[v].clone()));
                }
            }
        }
    }
    for e in 0..g.edge_count() {
        let id = &g.edges()[e].id;
        let t = &act.letters[e];
        if !is_permutation(t, act.degree) {
            return Err(GogError::NotAPermutation(format!("letter {id:?}")));
        }
        let trivial_letter = g.is_open(e) || gog.is_tree_edge(e);
        if trivial_letter && *t != identity(act.degree) {
            return Err(if g.is_open(e) {
                GogError::LetterOnOpenEdge(id.clone())
            } else {
                GogError::TreeLetter(id.clone())
            });
        }
        if g.is_open(e) {
            continue;
        }
        let (v0, v1) = (g.ends(e)[0], g.ends(e)[1]);
        let t_inv = inverse(t);
        for a in 0..gog.edge_group(e).order() {
            let alpha = &act.vertex[v0][gog.embedding(e, 0)[a]];
            let omega = &act.vertex[v1][gog.embedding(e, 1)[a]];
            if compose(&compose(t, alpha), &t_inv) != *omega {
                let element = gog.edge_group(e).element_id(a).to_string();
                return Err(if gog.is_tree_edge(e) {
                    GogError::TreeRelation { edge: id.clone(), element }
                } else {
                    GogError::Britton { edge: id.clone(), element }
                });
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct RawAction {
    degree: usize,
    #[serde(default)]
    vertices: BTreeMap<String, BTreeMap<String, Perm>>,
    #[serde(default)]
    letters: BTreeMap<String, Perm>,
}

/// JSON form: `{"degree": n, "vertices": {v: {element: perm}}, "letters": {edge: perm}}`
/// where vertex entries list generator images.
pub fn action_from_json(gog: &GraphOfGroups, value: &serde_json::Value) -> Result<PermutationAction, super::GogJsonError> {
    let raw: RawAction = serde_json::from_value(value.clone()).map_err(super::GogJsonError::Json)?;
    let g = gog.graph();
    let wrap = super::GogJsonError::Gog;
    if raw.degree == 0 {
        return Err(wrap(GogError::ActionShape));
    }
    let mut generators = BTreeMap::new();
    for (vid, gens) in &raw.vertices {
        let v = g.vertex_index(vid).ok_or_else(|| wrap(GogError::UnknownVertex(vid.clone())))?;
        let group = gog.vertex_group(v);
        let mut map = BTreeMap::new();
        for (elt, p) in gens {
            let x = group.index_of(elt).ok_or_else(|| wrap(GogError::UnknownElement(elt.clone())))?;
            map.insert(x, p.clone());
        }
        generators.insert(v, map);
    }
    let mut letters = BTreeMap::new();
    for (eid, p) in &raw.letters {
        let e = g.edge_index(eid).ok_or_else(|| wrap(GogError::UnknownEdge(eid.clone())))?;
        letters.insert(e, p.clone());
    }
    PermutationAction::from_generators(gog, raw.degree, &generators, &letters).map_err(wrap)
}

/// Full JSON listing of an action, one permutation per group element.
pub fn action_to_json(gog: &GraphOfGroups, act: &PermutationAction) -> serde_json::Value {
    let g = gog.graph();
    let raw = RawAction {
        degree: act.degree,
        vertices: (0..g.vertex_count())
            .map(|v| {
                let group = gog.vertex_group(v);
                let perms = (0..group.order()).map(|x| (group.element_id(x).to_string(), act.vertex[v][x].clone())).collect();
                (g.vertices()[v].clone(), perms)
            })
            .collect(),
        letters: g
            .closed_edges()
            .filter(|&e| !gog.is_tree_edge(e))
            .map(|e| (g.edges()[e].id.clone(), act.letters[e].clone()))
            .collect(),
    };
    serde_json::to_value(raw).expect("actions serialize")
}
