//! Graphs of finite groups: covers from permutation actions, Bass–Serre
//! balls, quotient reconstruction, tower bookkeeping and a local screen.

mod action;
mod bass_serre;
mod cover;
mod finite_group;
mod gog;
mod iso;
mod reconstruct;
mod screen;
mod tower;

pub use action::{
    action_from_json, action_to_json, compose, identity, inverse, is_permutation, validate_action, Perm,
    PermutationAction,
};
pub use bass_serre::{audit_ball, bass_serre_ball, BallAudit, BallEdge, BallVertex, BassSerreBall, Letter};
pub use cover::{cover_from_action, GogCover};
pub use finite_group::{FiniteGroup, GroupError, GroupSpec, GroupTable};
pub use gog::GraphOfGroups;
pub use iso::{labeled_isomorphic, LabeledGraph};
pub use reconstruct::{reconstruct_quotient, Reconstruction};
pub use screen::{screen_mochizuki, Mechanism, ScreenFailure, ScreenReport, SymbolicVertex};
pub use tower::{tempered_tower, TowerLevel, TowerReport};

use thiserror::Error;

use crate::semigraph::SemiGraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GogError {
    #[error("graph of groups must be nonempty and connected")]
    Disconnected,
    #[error("no embedding given for branch {0:?}")]
    MissingEmbedding(String),
    #[error("embedding at branch {0:?} is not an injective homomorphism")]
    NotInjectiveHom(String),
    #[error("invalid spanning tree: {0}")]
    BadSpanningTree(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("unknown branch {0:?}")]
    UnknownBranch(String),
    #[error("{0} is not a permutation of the fiber")]
    NotAPermutation(String),
    #[error("action at vertex {0:?} is not a homomorphism")]
    NotAHomomorphism(String),
    #[error("generator images at vertex {0:?} do not cover the group")]
    DoesNotGenerate(String),
    #[error("open edge {0:?} carries no letter")]
    LetterOnOpenEdge(String),
    #[error("spanning-tree edge {0:?} must act trivially")]
    TreeLetter(String),
    #[error("tree relation fails on edge {edge:?} at element {element:?}")]
    TreeRelation { edge: String, element: String },
    #[error("Britton relation fails on edge {edge:?} at element {element:?}")]
    Britton { edge: String, element: String },
    #[error("action does not match the shape of the graph of groups")]
    ActionShape,
    #[error("orbit sizes over {0:?} do not sum to the fiber size")]
    DegreeMismatch(String),
    #[error("action is not transitive; the cover is disconnected")]
    NotTransitive,
    #[error("radius {radius} is too small: {missing}")]
    RadiusTooSmall { radius: usize, missing: String },
    #[error("ball is malformed: {0}")]
    MalformedBall(String),
    #[error("vertex {vertex:?} has n = {n} below its valence {valence}")]
    InvalidValence { vertex: String, n: u64, valence: usize },
    #[error("symbolic data missing for vertex {0:?}")]
    MissingSymbolic(String),
    #[error("tower is empty")]
    EmptyTower,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] SemiGraphError),
}

impl GogError {
    pub fn code(&self) -> &'static str {
        match self {
            GogError::Disconnected => "disconnected",
            GogError::MissingEmbedding(_) => "missing_embedding",
            GogError::NotInjectiveHom(_) => "not_injective_hom",
            GogError::BadSpanningTree(_) => "bad_spanning_tree",
            GogError::UnknownVertex(_) => "unknown_vertex",
            GogError::UnknownEdge(_) => "unknown_edge",
            GogError::UnknownElement(_) => "unknown_element",
            GogError::UnknownBranch(_) => "unknown_branch",
            GogError::NotAPermutation(_) => "not_a_permutation",
            GogError::NotAHomomorphism(_) => "not_a_homomorphism",
            GogError::DoesNotGenerate(_) => "does_not_generate",
            GogError::LetterOnOpenEdge(_) => "letter_on_open_edge",
            GogError::TreeLetter(_) => "tree_letter",
            GogError::TreeRelation { .. } => "tree_relation",
            GogError::Britton { .. } => "britton_relation",
            GogError::ActionShape => "action_shape",
            GogError::DegreeMismatch(_) => "degree_mismatch",
            GogError::NotTransitive => "not_transitive",
            GogError::RadiusTooSmall { .. } => "radius_too_small",
            GogError::MalformedBall(_) => "malformed_ball",
            GogError::InvalidValence { .. } => "invalid_valence",
            GogError::MissingSymbolic(_) => "missing_symbolic",
            GogError::EmptyTower => "empty_tower",
            GogError::Group(e) => e.code(),
            GogError::Graph(e) => e.code(),
        }
    }
}

#[derive(Debug, Error)]
pub enum GogJsonError {
    #[error("malformed JSON: {0}")]
    Json(serde_json::Error),
    #[error(transparent)]
    Gog(GogError),
}

#[cfg(test)]
pub(crate) mod fixtures {
    use std::collections::BTreeSet;

    use super::*;
    use crate::semigraph::{Edge, SemiGraph};

    fn vs(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    /// The amalgam `Z/m *_1 Z/n` on vertices `a`, `b` joined by edge `e`.
    pub fn segment(m: usize, n: usize) -> GraphOfGroups {
        let g = SemiGraph::new(vs(&["a", "b"]), vec![Edge::closed("e", ("ea", "a"), ("eb", "b"))]).unwrap();
        let vg = vec![FiniteGroup::cyclic(m).unwrap(), FiniteGroup::cyclic(n).unwrap()];
        GraphOfGroups::new(g, vg, vec![FiniteGroup::trivial()], vec![vec![vec![0], vec![0]]], None).unwrap()
    }

    pub fn circle_trivial() -> GraphOfGroups {
        let g = SemiGraph::new(vs(&["v"]), vec![Edge::closed("t", ("t0", "v"), ("t1", "v"))]).unwrap();
        GraphOfGroups::trivial(g).unwrap()
    }

    /// `Z/4 *_{Z/2} Z/4`, the edge group landing on `{0, 2}` on both sides.
    pub fn z4_z2_z4() -> GraphOfGroups {
        let g = SemiGraph::new(vs(&["a", "b"]), vec![Edge::closed("e", ("ea", "a"), ("eb", "b"))]).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        GraphOfGroups::new(
            g,
            vec![z4.clone(), z4],
            vec![FiniteGroup::cyclic(2).unwrap()],
            vec![vec![vec![0, 2], vec![0, 2]]],
            None,
        )
        .unwrap()
    }

    /// One `Z/2` vertex with a `Z/2` cusp.
    pub fn with_cusp() -> GraphOfGroups {
        let g = SemiGraph::new(vs(&["v"]), vec![Edge::open("c", "c0", "v")]).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        GraphOfGroups::new(g, vec![z2.clone()], vec![z2], vec![vec![vec![0, 1]]], None).unwrap()
    }

    /// Theta graph with `Z/2` vertex groups and trivial edge groups.
    pub fn theta_z2() -> GraphOfGroups {
        let g = SemiGraph::new(
            vs(&["x", "y"]),
            (1..=3).map(|i| Edge::closed(&format!("e{i}"), (&format!("e{i}x"), "x"), (&format!("e{i}y"), "y"))).collect(),
        )
        .unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        GraphOfGroups::new(
            g,
            vec![z2.clone(), z2],
            vec![FiniteGroup::trivial(); 3],
            vec![vec![vec![0], vec![0]]; 3],
            Some(BTreeSet::from([0])),
        )
        .unwrap()
    }

    /// A loop at a `Z/4` vertex whose `Z/2` edge group embeds as `{0, 2}`
    /// on both sides.
    pub fn loop_z2_in_z4() -> GraphOfGroups {
        let g = SemiGraph::new(vs(&["v"]), vec![Edge::closed("t", ("t0", "v"), ("t1", "v"))]).unwrap();
        GraphOfGroups::new(
            g,
            vec![FiniteGroup::cyclic(4).unwrap()],
            vec![FiniteGroup::cyclic(2).unwrap()],
            vec![vec![vec![0, 2], vec![0, 2]]],
            None,
        )
        .unwrap()
    }
}
