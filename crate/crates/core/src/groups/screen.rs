//! Local screen: every vertex group should look like the fundamental group
//! of a hyperbolic surface of type `(g, n)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GogError;
use crate::semigraph::SemiGraph;

/// Genus and generalized valence of a vertex. `n` exceeds the graph
/// valence exactly when the vertex lies on the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicVertex {
    pub g: u64,
    pub n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    NotTotallyDetached,
    NotInjectiveType,
    NotVerticiallySlim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenFailure {
    pub vertex: String,
    pub mechanism: Mechanism,
    pub pattern: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    pub pass: bool,
    pub failures: Vec<ScreenFailure>,
}

/// Passes iff `2g + n > 2` everywhere; failures are listed in vertex order.
pub fn screen_mochizuki(graph: &SemiGraph, data: &BTreeMap<String, SymbolicVertex>) -> Result<ScreenReport, GogError> {
    if !graph.is_connected() {
        return Err(GogError::Disconnected);
    }
    if let Some(id) = data.keys().find(|id| graph.vertex_index(id).is_none()) {
        return Err(GogError::UnknownVertex(id.clone()));
    }
    let mut failures = Vec::new();
    for (v, id) in graph.vertices().iter().enumerate() {
        let sv = *data.get(id).ok_or_else(|| GogError::MissingSymbolic(id.clone()))?;
        let valence = graph.valence(v);
        if (sv.n as usize) < valence {
            return Err(GogError::InvalidValence { vertex: id.clone(), n: sv.n, valence });
        }
        if 2 * sv.g + sv.n > 2 {
            continue;
        }
        let boundary = sv.n as usize > valence;
        let (mechanism, pattern) = match (sv.g, sv.n) {
            (0, 2) if boundary => (Mechanism::NotTotallyDetached, "compact_annulus_boundary"),
            (0, 2) => (Mechanism::NotTotallyDetached, "open_annulus"),
            (0, 1) => (Mechanism::NotInjectiveType, "disc"),
            (0, _) => (Mechanism::NotVerticiallySlim, "projective_line"),
            _ => (Mechanism::NotVerticiallySlim, "genus_one"),
        };
        failures.push(ScreenFailure { vertex: id.clone(), mechanism, pattern });
    }
    Ok(ScreenReport { pass: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigraph::fixtures::{theta, tripod, vs};
    use crate::semigraph::Edge;

    fn sym(pairs: &[(&str, u64, u64)]) -> BTreeMap<String, SymbolicVertex> {
        pairs.iter().map(|&(v, g, n)| (v.to_string(), SymbolicVertex { g, n })).collect()
    }

    #[test]
    fn trivalent_passes() {
        let r = screen_mochizuki(&theta(), &sym(&[("x", 0, 3), ("y", 0, 3)])).unwrap();
        assert!(r.pass);
        assert!(screen_mochizuki(&tripod(), &sym(&[("v", 0, 3)])).unwrap().pass);
    }

    #[test]
    fn compact_annulus_fails() {
        let g = SemiGraph::new(vs(&["a", "b"]), vec![Edge::closed("e", ("ea", "a"), ("eb", "b"))]).unwrap();
        let r = screen_mochizuki(&g, &sym(&[("a", 0, 2), ("b", 0, 2)])).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures.len(), 2);
        assert_eq!(r.failures[0].mechanism, Mechanism::NotTotallyDetached);
        assert_eq!(r.failures[0].pattern, "compact_annulus_boundary");
    }

    #[test]
    fn genus_two_passes_genus_one_fails() {
        let g = SemiGraph::new(vs(&["v"]), vec![]).unwrap();
        assert!(screen_mochizuki(&g, &sym(&[("v", 2, 0)])).unwrap().pass);
        let r = screen_mochizuki(&g, &sym(&[("v", 1, 0)])).unwrap();
        assert_eq!(r.failures[0].pattern, "genus_one");
        assert_eq!(r.failures[0].mechanism, Mechanism::NotVerticiallySlim);
    }

    #[test]
    fn valence_checked() {
        assert!(matches!(
            screen_mochizuki(&tripod(), &sym(&[("v", 0, 2)])),
            Err(GogError::InvalidValence { valence: 3, .. })
        ));
    }
}
