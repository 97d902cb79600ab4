//! Nodes, superfluous points, minimal triangulations and classification.
//!
//! Vertices flagged `incomplete` are truncation artifacts: they always
//! count as nodes (so minimization never removes them) and are ignored by
//! the hyperbolicity verdict of [`classify_curve`].

use std::collections::BTreeSet;

use serde::Serialize;

use super::{CurveSkeleton, CuspType, Skeleton, SkeletonError};
use crate::scalar::Scalar;

/// `n_v = val(v) + ñ_v`.
pub fn generalized_valence<S: Scalar>(sk: &Skeleton<S>, v: usize) -> u64 {
    sk.graph().valence(v) as u64 + sk.vertex_decor(v).missing_branches
}

pub fn is_node<S: Scalar>(sk: &Skeleton<S>, v: usize) -> bool {
    let d = sk.vertex_decor(v);
    d.incomplete || sk.graph().valence(v) >= 3 || d.on_boundary() || d.genus > 0
}

/// `2g + n > 2`; type-3 nodes are never hyperbolic.
pub fn is_hyperbolic_node<S: Scalar>(sk: &Skeleton<S>, v: usize) -> Result<bool, SkeletonError> {
    if !is_node(sk, v) {
        return Err(SkeletonError::NotANode(sk.vertex_id(v).to_string()));
    }
    let d = sk.vertex_decor(v);
    if d.point_type == 3 {
        return Ok(false);
    }
    Ok(2 * d.genus + generalized_valence(sk, v) > 2)
}

pub fn node_set<S: Scalar>(sk: &Skeleton<S>) -> BTreeSet<usize> {
    (0..sk.graph().vertex_count()).filter(|&v| is_node(sk, v)).collect()
}

fn check_triangulation<S: Scalar>(sk: &Skeleton<S>, set: &BTreeSet<usize>) -> Result<(), SkeletonError> {
    if let Some(&v) = set.iter().find(|&&v| v >= sk.graph().vertex_count()) {
        return Err(SkeletonError::NoSuchVertex(v.to_string()));
    }
    match node_set(sk).difference(set).next() {
        Some(&v) => Err(SkeletonError::MissingNode(sk.vertex_id(v).to_string())),
        None => Ok(()),
    }
}

enum End {
    Open,
    Closed,
    BackAtStart,
}

/// Follows one branch out of `s` through vertices outside `set`.
fn walk<S: Scalar>(sk: &Skeleton<S>, set: &BTreeSet<usize>, s: usize, start: (usize, usize)) -> End {
    let g = sk.graph();
    let (mut edge, mut branch) = start;
    for _ in 0..=g.edge_count() {
        if g.is_open(edge) {
            return End::Open;
        }
        let w = g.ends(edge)[1 - branch];
        if w == s {
            return End::BackAtStart;
        }
        if set.contains(&w) {
            return End::Open;
        }
        let incident = g.incident(w);
        if incident.len() != 2 {
            return End::Closed;
        }
        let arrival = (edge, 1 - branch);
        let next = if incident[0] == arrival { incident[1] } else { incident[0] };
        (edge, branch) = next;
    }
    unreachable!("walks through valence-2 vertices terminate")
}

/// `s` is interior, of genus 0, and the component of `Γ ∖ (S ∖ {s})`
/// containing `s` is an open interval or a half-open one closed at `s`.
pub fn is_superfluous<S: Scalar>(
    sk: &Skeleton<S>,
    set: &BTreeSet<usize>,
    s: usize,
) -> Result<bool, SkeletonError> {
    check_triangulation(sk, set)?;
    if !set.contains(&s) {
        return Err(SkeletonError::NotInTriangulation(sk.vertex_id(s).to_string()));
    }
    let d = sk.vertex_decor(s);
    if d.on_boundary() || d.genus > 0 || d.incomplete {
        return Ok(false);
    }
    let incident = sk.graph().incident(s);
    if incident.is_empty() || incident.len() > 2 {
        return Ok(false);
    }
    Ok(incident.iter().all(|&start| matches!(walk(sk, set, s, start), End::Open)))
}

/// Removes superfluous points, asking `choose` which one to remove among
/// the currently superfluous ones (given in increasing order).
pub fn minimize_triangulation_by<S: Scalar>(
    sk: &Skeleton<S>,
    set: &BTreeSet<usize>,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<BTreeSet<usize>, SkeletonError> {
    check_triangulation(sk, set)?;
    let mut current = set.clone();
    loop {
        let mut candidates = Vec::new();
        for &s in &current {
            if is_superfluous(sk, &current, s)? {
                candidates.push(s);
            }
        }
        if candidates.is_empty() {
            return Ok(current);
        }
        let pick = choose(&candidates) % candidates.len();
        current.remove(&candidates[pick]);
    }
}

/// Removes superfluous points, smallest index first.
pub fn minimize_triangulation<S: Scalar>(
    sk: &Skeleton<S>,
    set: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, SkeletonError> {
    minimize_triangulation_by(sk, set, |_| 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CompactClass {
    /// Vertex ids of the unique minimal triangulation.
    HasMinimal(Vec<String>),
    TateCircle,
    ProjectiveLine,
}

pub fn classify_compact<S: Scalar>(cs: &CurveSkeleton<S>) -> Result<CompactClass, SkeletonError> {
    let sk = match cs {
        CurveSkeleton::Empty(_) => return Ok(CompactClass::ProjectiveLine),
        CurveSkeleton::Graph(sk) => sk,
    };
    let g = sk.graph();
    if let Some(e) = g.open_edges().next() {
        return Err(SkeletonError::OpenEdge(g.edges()[e].id.clone()));
    }
    let nodes = node_set(sk);
    if !nodes.is_empty() {
        return Ok(CompactClass::HasMinimal(nodes.iter().map(|&v| sk.vertex_id(v).to_string()).collect()));
    }
    if g.betti() == 1 && (0..g.vertex_count()).all(|v| g.valence(v) == 2) {
        Ok(CompactClass::TateCircle)
    } else {
        Err(SkeletonError::NotACircle)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    RelCompact,
    AllCuspsCoronalFinite,
    FiniteGraphMixedCusps,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub hyperbolic: bool,
    pub rel_compact_edges: bool,
    pub certificate: Certificate,
    pub nodes: Vec<String>,
    pub non_hyperbolic_nodes: Vec<String>,
}

/// Hyperbolicity plus the first sufficient anabelianity certificate that
/// applies. `Certificate::None` is not a negative verdict.
pub fn classify_curve<S: Scalar>(cs: &CurveSkeleton<S>) -> CurveClass {
    let sk = match cs {
        CurveSkeleton::Empty(_) => {
            return CurveClass {
                hyperbolic: false,
                rel_compact_edges: true,
                certificate: Certificate::None,
                nodes: Vec::new(),
                non_hyperbolic_nodes: Vec::new(),
            }
        }
        CurveSkeleton::Graph(sk) => sk,
    };
    let nodes = node_set(sk);
    let complete: Vec<usize> = nodes.iter().copied().filter(|&v| !sk.vertex_decor(v).incomplete).collect();
    let non_hyperbolic: Vec<usize> = complete
        .iter()
        .copied()
        .filter(|&v| !is_hyperbolic_node(sk, v).expect("filtered to nodes"))
        .collect();
    let hyperbolic = !complete.is_empty() && non_hyperbolic.is_empty();
    let cusps: Vec<Option<CuspType>> = sk.graph().open_edges().map(|e| sk.edge_decor(e).cusp).collect();
    let rel_compact_edges = cusps.is_empty();
    let params = sk.params;
    let all = |allowed: &[CuspType]| cusps.iter().all(|c| c.is_some_and(|c| allowed.contains(&c)));
    let certificate = if !hyperbolic {
        Certificate::None
    } else if rel_compact_edges {
        Certificate::RelCompact
    } else if params.mixed_characteristic && all(&[CuspType::CoronalFinite]) {
        Certificate::AllCuspsCoronalFinite
    } else if params.mixed_characteristic
        && !params.truncated
        && all(&[CuspType::CoronalFinite, CuspType::PuncturedDisc])
    {
        Certificate::FiniteGraphMixedCusps
    } else {
        Certificate::None
    };
    let ids = |vs: &mut dyn Iterator<Item = usize>| vs.map(|v| sk.vertex_id(v).to_string()).collect();
    CurveClass {
        hyperbolic,
        rel_compact_edges,
        certificate,
        nodes: ids(&mut nodes.iter().copied()),
        non_hyperbolic_nodes: ids(&mut non_hyperbolic.into_iter()),
    }
}
