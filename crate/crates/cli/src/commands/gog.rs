use std::collections::BTreeMap;

use serde::Serialize;
use skeletonkit::dot::gog_dot;
use skeletonkit::groups::{
    action_from_json, audit_ball, bass_serre_ball, cover_from_action, labeled_isomorphic, reconstruct_quotient,
    screen_mochizuki, tempered_tower, BallAudit, BassSerreBall, GraphOfGroups, LabeledGraph, Reconstruction,
    ScreenReport, SymbolicVertex,
};

use super::{parse_value, read_aux, sorted, Ctx, Handler};
use crate::args::{Format, GogOp};
use crate::{CliError, Report};

#[derive(Serialize)]
struct Validation {
    valid: bool,
    vertices: usize,
    edges: usize,
    betti: usize,
    tree: Vec<String>,
    vertex_orders: BTreeMap<String, usize>,
    edge_orders: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    screen: Option<ScreenReport>,
}

#[derive(Serialize)]
struct Rebuilt {
    radius: usize,
    reconstruction: Reconstruction,
    audit: BallAudit,
    isomorphic_to_input: bool,
}

fn parse_gog(text: &str) -> Result<GraphOfGroups, CliError> {
    Ok(GraphOfGroups::from_json(text)?)
}

pub fn prepare(ctx: Ctx, op: &GogOp) -> Result<Handler, CliError> {
    let handler: super::InputHandler = match op {
        GogOp::Validate { symbolic } => {
            ctx.allow(&[Format::Json, Format::Dot])?;
            let symbolic: Option<BTreeMap<String, SymbolicVertex>> = match symbolic {
                Some(path) => Some(serde_json::from_str(&read_aux(path)?).map_err(CliError::json)?),
                None => None,
            };
            Box::new(move |text| validate(ctx, &parse_gog(text)?, symbolic.as_ref()))
        }
        GogOp::Cover { action } => {
            ctx.allow(&[Format::Json, Format::Dot])?;
            let action = parse_value(&read_aux(action)?)?;
            Box::new(move |text| {
                let gog = parse_gog(text)?;
                let cover = cover_from_action(&gog, &action_from_json(&gog, &action)?)?;
                match ctx.format {
                    Format::Dot => Ok(Report(gog_dot(&cover.cover))),
                    _ => ctx.json(&cover),
                }
            })
        }
        GogOp::Ball { radius } => {
            ctx.allow(&[Format::Json])?;
            let radius = *radius;
            Box::new(move |text| ctx.json(&bass_serre_ball(&parse_gog(text)?, radius)))
        }
        GogOp::Reconstruct { radius } => {
            ctx.allow(&[Format::Json])?;
            let radius = *radius;
            Box::new(move |text| match radius {
                Some(radius) => {
                    let gog = parse_gog(text)?;
                    let ball = bass_serre_ball(&gog, radius);
                    let audit = audit_ball(&gog, &ball);
                    let reconstruction = reconstruct_quotient(&ball)?;
                    let isomorphic_to_input =
                        labeled_isomorphic(&reconstruction.labeled(), &LabeledGraph::from_gog(&gog.truncate()));
                    ctx.json(&Rebuilt { radius, reconstruction, audit, isomorphic_to_input })
                }
                None => {
                    let ball: BassSerreBall = serde_json::from_str(text).map_err(CliError::json)?;
                    ball.check()?;
                    ctx.json(&reconstruct_quotient(&ball)?)
                }
            })
        }
        GogOp::Tower { action } => {
            ctx.allow(&[Format::Json])?;
            let actions = action.iter().map(|p| read_aux(p).and_then(|t| parse_value(&t))).collect::<Result<Vec<_>, _>>()?;
            Box::new(move |text| {
                let gog = parse_gog(text)?;
                let actions = actions.iter().map(|a| action_from_json(&gog, a)).collect::<Result<Vec<_>, _>>()?;
                ctx.json(&tempered_tower(&gog, &actions)?)
            })
        }
    };
    Ok(Handler::PerInput(handler))
}

fn validate(ctx: Ctx, gog: &GraphOfGroups, symbolic: Option<&BTreeMap<String, SymbolicVertex>>) -> Result<Report, CliError> {
    let screen = symbolic.map(|data| screen_mochizuki(gog.graph(), data)).transpose()?;
    if ctx.format == Format::Dot {
        return Ok(Report(gog_dot(gog)));
    }
    let g = gog.graph();
    ctx.json(&Validation {
        valid: true,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        betti: g.betti(),
        tree: sorted(gog.tree().iter().map(|&e| g.edges()[e].id.as_str())),
        vertex_orders: (0..g.vertex_count()).map(|v| (g.vertices()[v].clone(), gog.vertex_group(v).order())).collect(),
        edge_orders: (0..g.edge_count()).map(|e| (g.edges()[e].id.clone(), gog.edge_group(e).order())).collect(),
        screen,
    })
}
