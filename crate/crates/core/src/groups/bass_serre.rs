//! Balls in the Bass–Serre tree, enumerated by reduced coset words.
//!
//! A tree vertex is `w·G_v` for a reduced word `w`. A step `(e, side, c)`
//! leaves a vertex of type `v = ends(e)[side]` through the coset
//! `c·b_side(G_e)` of `G_v` and arrives at a vertex of type
//! `ends(e)[1 - side]`. A word is reduced when no step is immediately
//! undone, i.e. `(e, s, c)` is never followed by `(e, 1 - s, 1)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GogError, GraphOfGroups};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub edge: String,
    pub side: usize,
    pub coset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallVertex {
    pub id: usize,
    pub word: Vec<Letter>,
    pub depth: usize,
    /// Quotient vertex of which this tree vertex is a lift.
    #[serde(rename = "type")]
    pub vertex_type: String,
    pub stabilizer_order: usize,
}

/// Tree edge from a parent to a child one step further from the base.
/// Fixers are the edge stabilizer written in the parent's and in the
/// child's vertex group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub edge: String,
    pub side: usize,
    pub parent_fixer: Vec<String>,
    pub child_fixer: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassSerreBall {
    pub radius: usize,
    pub base: String,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<BallEdge>,
}

/// Breadth-first enumeration around `G_{v_0}`, `v_0` the first vertex.
/// Children are generated in (edge, side, coset representative) order.
pub fn bass_serre_ball(gog: &GraphOfGroups, radius: usize) -> BassSerreBall {
    let g = gog.graph();
    let base = 0;
    let mut vertices = vec![BallVertex {
        id: 0,
        word: Vec::new(),
        depth: 0,
        vertex_type: g.vertices()[base].clone(),
        stabilizer_order: gog.vertex_group(base).order(),
    }];
    let mut edges = Vec::new();
    // (ball index, quotient vertex, step that reached it)
    let mut queue: VecDeque<(usize, usize, Option<(usize, usize)>)> = VecDeque::from([(0, base, None)]);
    while let Some((at, v, arrived)) = queue.pop_front() {
        if vertices[at].depth == radius {
            continue;
        }
        let group = gog.vertex_group(v);
        for (e, side) in g.incident(v) {
            if g.is_open(e) {
                continue;
            }
            let image = gog.embedded_subgroup(e, side);
            let other = 1 - side;
            let child_type = g.ends(e)[other];
            for c in group.left_coset_reps(&image) {
                if arrived == Some((e, other)) && c == group.identity() {
                    continue;
                }
                let mut word = vertices[at].word.clone();
                word.push(Letter { edge: g.edges()[e].id.clone(), side, coset: group.element_id(c).to_string() });
                let id = vertices.len();
                vertices.push(BallVertex {
                    id,
                    word,
                    depth: vertices[at].depth + 1,
                    vertex_type: g.vertices()[child_type].clone(),
                    stabilizer_order: gog.vertex_group(child_type).order(),
                });
                let parent_fixer = sorted_ids(group, image.iter().map(|&a| group.conj(c, a)));
                let child_group = gog.vertex_group(child_type);
                let child_fixer = sorted_ids(child_group, gog.embedding(e, other).iter().copied());
                edges.push(BallEdge {
                    from: at,
                    to: id,
                    edge: g.edges()[e].id.clone(),
                    side,
                    parent_fixer,
                    child_fixer,
                });
                queue.push_back((id, child_type, Some((e, side))));
            }
        }
    }
    BassSerreBall { radius, base: g.vertices()[base].clone(), vertices, edges }
}

fn sorted_ids(group: &super::FiniteGroup, xs: impl Iterator<Item = usize>) -> Vec<String> {
    let set: BTreeSet<usize> = xs.collect();
    set.into_iter().map(|x| group.element_id(x).to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallAudit {
    pub vertices: usize,
    pub edges: usize,
    pub distinct_words: bool,
    pub is_tree: bool,
    /// Every vertex below the boundary has `Σ [G_v : b_*(G_e)]` neighbours.
    pub degrees_match: bool,
    /// Parent and child fixers have the order of the edge group.
    pub fixers_match: bool,
}

impl BallAudit {
    pub fn ok(&self) -> bool {
        self.distinct_words && self.is_tree && self.degrees_match && self.fixers_match
    }
}

pub fn audit_ball(gog: &GraphOfGroups, ball: &BassSerreBall) -> BallAudit {
    let g = gog.graph();
    let n = ball.vertices.len();
    let words: BTreeSet<&Vec<Letter>> = ball.vertices.iter().map(|v| &v.word).collect();

    let mut parent = (0..n).collect::<Vec<usize>>();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut acyclic = ball.edges.len() + 1 == n;
    let mut degree = vec![0usize; n];
    for edge in &ball.edges {
        if edge.from >= n || edge.to >= n {
            acyclic = false;
            continue;
        }
        degree[edge.from] += 1;
        degree[edge.to] += 1;
        let (a, b) = (find(&mut parent, edge.from), find(&mut parent, edge.to));
        if a == b {
            acyclic = false;
        }
        parent[a] = b;
    }

    let expected: BTreeMap<&str, usize> = (0..g.vertex_count())
        .map(|v| {
            let order = gog.vertex_group(v).order();
            let d = g
                .incident(v)
                .into_iter()
                .filter(|&(e, _)| !g.is_open(e))
                .map(|(e, _)| order / gog.edge_group(e).order())
                .sum();
            (g.vertices()[v].as_str(), d)
        })
        .collect();
    let degrees_match = ball
        .vertices
        .iter()
        .filter(|v| v.depth < ball.radius)
        .all(|v| expected.get(v.vertex_type.as_str()) == Some(&degree[v.id]));

    let fixers_match = ball.edges.iter().all(|edge| {
        g.edge_index(&edge.edge)
            .map(|e| {
                let k = gog.edge_group(e).order();
                edge.parent_fixer.len() == k && edge.child_fixer.len() == k
            })
            .unwrap_or(false)
    });

    BallAudit {
        vertices: n,
        edges: ball.edges.len(),
        distinct_words: words.len() == n,
        is_tree: acyclic,
        degrees_match,
        fixers_match,
    }
}

impl BassSerreBall {
    /// Structural sanity of a ball read from outside.
    pub fn check(&self) -> Result<(), GogError> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(GogError::MalformedBall("no vertices".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(GogError::MalformedBall(format!("vertex ids must be 0..{n} in order")));
            }
        }
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(GogError::MalformedBall(format!("edge {}->{} leaves the ball", e.from, e.to)));
            }
            if self.vertices[e.to].depth != self.vertices[e.from].depth + 1 {
                return Err(GogError::MalformedBall(format!("edge {}->{} does not go outward", e.from, e.to)));
            }
        }
        Ok(())
    }
}
