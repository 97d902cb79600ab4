use serde::Serialize;
use skeletonkit::wild::{fiber_count, kummer_cover, layout_ascii, layout_dot, split_annulus_layout};

use super::Ctx;
use crate::args::{Format, WildOp};
use crate::{CliError, Report};

#[derive(Serialize)]
struct Count {
    count: u64,
}

pub fn run(ctx: Ctx, op: &WildOp) -> Result<Report, CliError> {
    match op {
        WildOp::FiberCount { p, h, t, s } => {
            ctx.allow(&[Format::Json])?;
            ctx.json(&Count { count: fiber_count(t, s, *p, *h)? })
        }
        WildOp::Profile { length, eps, p, h } => {
            let layout = split_annulus_layout(length, eps, *p, *h)?;
            match ctx.format {
                Format::Json => ctx.json(&layout),
                Format::Ascii => Ok(Report(layout_ascii(&layout))),
                Format::Dot => Ok(Report(layout_dot(&layout))),
            }
        }
        WildOp::Kummer { length, ell, class } => {
            ctx.allow(&[Format::Json])?;
            ctx.json(&kummer_cover(length, *ell, *class)?)
        }
    }
}
