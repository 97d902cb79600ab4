//! Graphviz renderings. Output is deterministic: cells appear in index order.

use std::fmt::Write;

use crate::groups::GraphOfGroups;
use crate::scalar::Scalar;
use crate::semigraph::SemiGraph;
use crate::skeleton::{is_hyperbolic_node, is_node, CurveSkeleton, Length};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Open edges end at an invisible point node named after the edge.
fn edges_dot(out: &mut String, g: &SemiGraph, label: impl Fn(usize) -> String) {
    for e in 0..g.edge_count() {
        let ends = g.ends(e);
        let edge = &g.edges()[e];
        let attrs = format!("label={}", quote(&label(e)));
        let from = quote(&g.vertices()[ends[0]]);
        if let [_, b] = ends {
            let _ = writeln!(out, "  {from} -- {} [{attrs}];", quote(&g.vertices()[*b]));
        } else {
            let stub = quote(&format!("open:{}", edge.id));
            let _ = writeln!(out, "  {stub} [shape=point, style=invis];");
            let _ = writeln!(out, "  {from} -- {stub} [{attrs}, style=dashed];");
        }
    }
}

pub fn semigraph_dot(g: &SemiGraph) -> String {
    let mut out = String::from("graph semigraph {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    edges_dot(&mut out, g, |e| g.edges()[e].id.clone());
    out.push_str("}\n");
    out
}

/// Hyperbolic nodes green, other nodes red, non-nodes grey; incomplete
/// vertices dotted.
pub fn skeleton_dot<S: Scalar>(cs: &CurveSkeleton<S>) -> String {
    let mut out = String::from("graph skeleton {\n");
    let Some(sk) = cs.as_graph() else {
        out.push_str("  label=\"empty skeleton\";\n}\n");
        return out;
    };
    let g = sk.graph();
    for v in 0..g.vertex_count() {
        let d = sk.vertex_decor(v);
        let color = match is_node(sk, v) {
            false => "grey",
            true if is_hyperbolic_node(sk, v).unwrap_or(false) => "green",
            true => "red",
        };
        let style = if d.incomplete { ", style=dotted" } else { "" };
        let label = format!("{}\ng={} t={}", g.vertices()[v], d.genus, d.point_type);
        let _ = writeln!(out, "  {} [label={}, color={color}{style}];", quote(&g.vertices()[v]), quote(&label));
    }
    edges_dot(&mut out, g, |e| {
        let d = sk.edge_decor(e);
        let len = match &d.length {
            Length::Finite(l) => l.to_ratio_string(),
            Length::Infinite => "inf".to_string(),
        };
        match d.cusp {
            Some(c) => format!("{len} {}", serde_json::to_value(c).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()),
            None => len,
        }
    });
    out.push_str("}\n");
    out
}

/// Vertices and edges labeled by group orders.
pub fn gog_dot(gog: &GraphOfGroups) -> String {
    let g = gog.graph();
    let mut out = String::from("graph gog {\n");
    for v in 0..g.vertex_count() {
        let label = format!("{} |G|={}", g.vertices()[v], gog.vertex_group(v).order());
        let _ = writeln!(out, "  {} [label={}];", quote(&g.vertices()[v]), quote(&label));
    }
    edges_dot(&mut out, g, |e| format!("{} |G|={}", g.edges()[e].id, gog.edge_group(e).order()));
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::fixtures::{tate, thrice_punctured};

    #[test]
    fn open_edges_become_stubs() {
        let text = skeleton_dot(&CurveSkeleton::Graph(thrice_punctured()));
        assert_eq!(text.matches("style=invis").count(), 3);
        assert!(text.contains("color=green"));
    }

    #[test]
    fn tate_vertex_is_grey() {
        let text = skeleton_dot(&CurveSkeleton::Graph(tate()));
        assert!(text.contains("color=grey"));
        assert_eq!(text, skeleton_dot(&CurveSkeleton::Graph(tate())));
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
