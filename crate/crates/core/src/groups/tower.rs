//! Bookkeeping for a sequence of finite covers.

use serde::Serialize;

use super::action::PermutationAction;
use super::cover::cover_from_action;
use super::{GogError, GraphOfGroups};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub degree: usize,
    pub cover_vertices: usize,
    pub cover_edges: usize,
    /// Rank of the free group `T_i`, the first Betti number of the cover.
    pub rank: usize,
    /// `1 + d·(b − 1)` when every group is trivial.
    pub expected_rank: Option<usize>,
    /// Whether this level factors through the previous one.
    pub refines_previous: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub base_betti: usize,
    pub levels: Vec<TowerLevel>,
    /// Every level refines its predecessor.
    pub nested: bool,
}

pub fn tempered_tower(gog: &GraphOfGroups, actions: &[PermutationAction]) -> Result<TowerReport, GogError> {
    if actions.is_empty() {
        return Err(GogError::EmptyTower);
    }
    let base_betti = gog.graph().betti();
    let mut levels = Vec::with_capacity(actions.len());
    for (i, act) in actions.iter().enumerate() {
        if !act.is_transitive() {
            return Err(GogError::NotTransitive);
        }
        let cover = cover_from_action(gog, act)?;
        let g = cover.cover.graph();
        let d = act.degree();
        levels.push(TowerLevel {
            degree: d,
            cover_vertices: g.vertex_count(),
            cover_edges: g.closed_edges().count(),
            rank: g.betti(),
            expected_rank: gog.all_trivial().then(|| (1 + d * base_betti).saturating_sub(d)),
            refines_previous: (i > 0).then(|| factors_through(gog, act, &actions[i - 1])),
        });
    }
    let nested = levels.iter().all(|l| l.refines_previous != Some(false));
    Ok(TowerReport { base_betti, levels, nested })
}

/// Whether some map `φ: F_fine → F_coarse` commutes with every vertex
/// permutation and letter. Transitivity pins `φ` down by `φ(0)`.
fn factors_through(gog: &GraphOfGroups, fine: &PermutationAction, coarse: &PermutationAction) -> bool {
    let g = gog.graph();
    let mut gens: Vec<(&Vec<usize>, &Vec<usize>)> = Vec::new();
    for v in 0..g.vertex_count() {
        for x in 0..gog.vertex_group(v).order() {
            gens.push((fine.vertex_perm(v, x), coarse.vertex_perm(v, x)));
        }
    }
    for e in g.closed_edges() {
        gens.push((fine.letter(e), coarse.letter(e)));
    }
    (0..coarse.degree()).any(|y| {
        let mut phi = vec![usize::MAX; fine.degree()];
        phi[0] = y;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (pf, pc) in &gens {
                let (fx, cx) = (pf[x], pc[phi[x]]);
                if phi[fx] == usize::MAX {
                    phi[fx] = cx;
                    stack.push(fx);
                } else if phi[fx] != cx {
                    return false;
                }
            }
        }
        phi.iter().all(|&p| p != usize::MAX)
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn cyclic_tower_on_circle() {
        let gog = circle_trivial();
        let acts: Vec<_> = [1, 2, 4, 8].iter().map(|&n| PermutationAction::letter_cycle(&gog, 0, n).unwrap()).collect();
        let report = tempered_tower(&gog, &acts).unwrap();
        assert!(report.nested);
        for (l, n) in report.levels.iter().zip([1, 2, 4, 8]) {
            assert_eq!((l.degree, l.rank, l.expected_rank), (n, 1, Some(1)));
        }
    }

    #[test]
    fn non_nested_levels_flagged() {
        let gog = circle_trivial();
        let acts: Vec<_> = [2, 3].iter().map(|&n| PermutationAction::letter_cycle(&gog, 0, n).unwrap()).collect();
        let report = tempered_tower(&gog, &acts).unwrap();
        assert_eq!(report.levels[1].refines_previous, Some(false));
        assert!(!report.nested);
    }

    #[test]
    fn theta_double_cover() {
        let g = crate::semigraph::fixtures::theta();
        let gog = GraphOfGroups::trivial(g).unwrap();
        // spanning tree {e1}; letters on e2, e3
        let swap = vec![1, 0];
        let act = PermutationAction::from_generators(&gog, 2, &BTreeMap::new(), &BTreeMap::from([(1, swap)])).unwrap();
        let report = tempered_tower(&gog, &[PermutationAction::trivial(&gog), act]).unwrap();
        assert_eq!(report.levels[0].rank, 2);
        assert_eq!((report.levels[1].rank, report.levels[1].degree), (3, 2));
        assert_eq!(report.levels[1].expected_rank, Some(3));
        assert_eq!(report.levels[1].refines_previous, Some(true));
    }

    #[test]
    fn rejects_disconnected_level() {
        let gog = circle_trivial();
        let act = PermutationAction::from_generators(&gog, 2, &BTreeMap::new(), &BTreeMap::new()).unwrap();
        assert_eq!(tempered_tower(&gog, &[act]), Err(GogError::NotTransitive));
    }
}
