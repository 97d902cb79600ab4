use skeletonkit::dot::{gog_dot, semigraph_dot, skeleton_dot};
use skeletonkit::groups::GraphOfGroups;

use super::{parse_graph, parse_skeleton, parse_value, Ctx, Handler};
use crate::args::{ExportOp, Format, Kind};
use crate::{CliError, Report};

/// Graphs of groups carry a `graph` block; skeletons carry `p`.
fn detect(text: &str) -> Result<Kind, CliError> {
    let value = parse_value(text)?;
    Ok(if value.get("graph").is_some() {
        Kind::Gog
    } else if value.get("p").is_some() {
        Kind::Skeleton
    } else {
        Kind::Semigraph
    })
}

pub fn prepare(ctx: Ctx, op: &ExportOp) -> Result<Handler, CliError> {
    let ExportOp::Dot { kind } = *op;
    if ctx.format == Format::Ascii {
        ctx.allow(&[Format::Dot])?;
    }
    Ok(Handler::PerInput(Box::new(move |text| {
        let kind = if kind == Kind::Auto { detect(text)? } else { kind };
        let dot = match kind {
            Kind::Gog => gog_dot(&GraphOfGroups::from_json(text)?),
            Kind::Skeleton => skeleton_dot(&parse_skeleton(text)?),
            Kind::Semigraph | Kind::Auto => semigraph_dot(&parse_graph(text)?),
        };
        Ok(Report(dot))
    })))
}
