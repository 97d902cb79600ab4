use std::collections::BTreeSet;

use serde::Serialize;
use skeletonkit::dot::skeleton_dot;
use skeletonkit::skeleton::{
    classify_compact, classify_curve, generalized_valence, is_hyperbolic_node, is_node, mark_points,
    minimize_triangulation_by, node_set, Certificate, CompactClass, CurveClass, CurveSkeleton, Marking,
};

use super::{parse_skeleton, read_aux, sorted, Ctx, Handler};
use crate::args::{Format, MinimizeArgs, Order, SkeletonOp, Q};
use crate::{CliError, Report};

#[derive(Serialize)]
struct VertexReport {
    id: String,
    genus: u64,
    #[serde(rename = "type")]
    point_type: u8,
    valence: usize,
    generalized_valence: u64,
    node: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyperbolic: Option<bool>,
}

#[derive(Serialize)]
struct Analysis {
    vertices: Vec<VertexReport>,
    nodes: Vec<String>,
    minimal_triangulation: Vec<String>,
    /// Present only for compact curves.
    #[serde(skip_serializing_if = "Option::is_none")]
    compact: Option<CompactClass>,
    classification: CurveClass,
}

#[derive(Serialize)]
struct Classification {
    hyperbolic: bool,
    certificate: Certificate,
}

#[derive(Serialize)]
struct Minimized {
    triangulation: Vec<String>,
    removed: Vec<String>,
}

pub fn prepare(ctx: Ctx, op: &SkeletonOp) -> Result<Handler, CliError> {
    let handler: super::InputHandler = match op {
        SkeletonOp::Analyze => {
            ctx.allow(&[Format::Json, Format::Dot])?;
            Box::new(move |text| analyze(ctx, &parse_skeleton(text)?))
        }
        SkeletonOp::Minimize(args) => {
            ctx.allow(&[Format::Json])?;
            let (set, order) = (args.set.clone(), args.order);
            Box::new(move |text| minimize(ctx, &parse_skeleton(text)?, &MinimizeArgs { set: set.clone(), order }))
        }
        SkeletonOp::Classify => {
            ctx.allow(&[Format::Json, Format::Dot])?;
            Box::new(move |text| classify(ctx, &parse_skeleton(text)?))
        }
        SkeletonOp::Mark(args) => {
            ctx.allow(&[Format::Json, Format::Dot])?;
            let markings: Vec<Marking<Q>> = serde_json::from_str(&read_aux(&args.markings)?).map_err(CliError::json)?;
            Box::new(move |text| {
                let marked = CurveSkeleton::Graph(mark_points(&parse_skeleton(text)?, &markings)?);
                render(ctx, &marked, &marked)
            })
        }
    };
    Ok(Handler::PerInput(handler))
}

fn render<T: Serialize>(ctx: Ctx, cs: &CurveSkeleton<Q>, report: &T) -> Result<Report, CliError> {
    match ctx.format {
        Format::Dot => Ok(Report(skeleton_dot(cs))),
        _ => ctx.json(report),
    }
}

fn analyze(ctx: Ctx, cs: &CurveSkeleton<Q>) -> Result<Report, CliError> {
    let classification = classify_curve(cs);
    let compact = match cs {
        CurveSkeleton::Graph(sk) if sk.graph().open_edges().next().is_some() => None,
        _ => Some(classify_compact(cs)?),
    };
    let (mut vertices, nodes, minimal) = match cs {
        CurveSkeleton::Empty(_) => (Vec::new(), Vec::new(), Vec::new()),
        CurveSkeleton::Graph(sk) => {
            let g = sk.graph();
            let mut vertices = Vec::with_capacity(g.vertex_count());
            for v in 0..g.vertex_count() {
                let d = sk.vertex_decor(v);
                let node = is_node(sk, v);
                vertices.push(VertexReport {
                    id: sk.vertex_id(v).to_string(),
                    genus: d.genus,
                    point_type: d.point_type,
                    valence: g.valence(v),
                    generalized_valence: generalized_valence(sk, v),
                    node,
                    hyperbolic: if node { Some(is_hyperbolic_node(sk, v)?) } else { None },
                });
            }
            let nodes = node_set(sk);
            let all: BTreeSet<usize> = (0..g.vertex_count()).collect();
            let minimal = minimize_triangulation_by(sk, &all, |_| 0)?;
            let ids = |set: &BTreeSet<usize>| sorted(set.iter().map(|&v| sk.vertex_id(v)));
            (vertices, ids(&nodes), ids(&minimal))
        }
    };
    vertices.sort_by(|a, b| a.id.cmp(&b.id));
    let mut classification = classification;
    classification.nodes.sort();
    classification.non_hyperbolic_nodes.sort();
    let report = Analysis { vertices, nodes, minimal_triangulation: minimal, compact, classification };
    render(ctx, cs, &report)
}

fn minimize(ctx: Ctx, cs: &CurveSkeleton<Q>, args: &MinimizeArgs) -> Result<Report, CliError> {
    let CurveSkeleton::Graph(sk) = cs else {
        return ctx.json(&Minimized { triangulation: Vec::new(), removed: Vec::new() });
    };
    let start: BTreeSet<usize> = match &args.set {
        Some(ids) => ids.iter().map(|id| sk.vertex(id)).collect::<Result<_, _>>()?,
        None => (0..sk.graph().vertex_count()).collect(),
    };
    let order = args.order;
    let result = minimize_triangulation_by(sk, &start, |c| match order {
        Order::First => 0,
        Order::Last => c.len() - 1,
    })?;
    ctx.json(&Minimized {
        triangulation: sorted(result.iter().map(|&v| sk.vertex_id(v))),
        removed: sorted(start.difference(&result).map(|&v| sk.vertex_id(v))),
    })
}

fn classify(ctx: Ctx, cs: &CurveSkeleton<Q>) -> Result<Report, CliError> {
    let class = classify_curve(cs);
    render(ctx, cs, &Classification { hyperbolic: class.hyperbolic, certificate: class.certificate })
}
