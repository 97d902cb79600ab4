use serde::Serialize;
use skeletonkit::dot::skeleton_dot;
use skeletonkit::drinfeld::{bt_ball, recover_invariants, LocalFieldParams};
use skeletonkit::skeleton::CurveSkeleton;

use super::{parse_skeleton, Ctx, Handler};
use crate::args::{BtOp, Format, Q};
use crate::{CliError, Report};

#[derive(Serialize)]
struct Invariants {
    q: u64,
    p: u64,
    f: u32,
}

pub fn prepare(ctx: Ctx, op: &BtOp) -> Result<Handler, CliError> {
    match *op {
        BtOp::Generate { p, f, e, radius, equal_characteristic } => Ok(Handler::Standalone(generate(ctx, p, f, e, radius, equal_characteristic))),
        BtOp::Recover => {
            ctx.allow(&[Format::Json])?;
            Ok(Handler::PerInput(Box::new(move |text| {
                let CurveSkeleton::Graph(sk) = parse_skeleton(text)? else {
                    return Err(CliError::domain("empty_skeleton", "the empty skeleton is not a Bruhat-Tits ball"));
                };
                let (q, p, f) = recover_invariants(&sk)?;
                ctx.json(&Invariants { q, p, f })
            })))
        }
    }
}

fn generate(ctx: Ctx, p: u64, f: u32, e: u64, radius: usize, equal_characteristic: bool) -> Result<Report, CliError> {
    ctx.allow(&[Format::Json, Format::Dot])?;
    let mut params = LocalFieldParams::new(p, f, e)?;
    params.mixed_characteristic = !equal_characteristic;
    let ball = CurveSkeleton::Graph(bt_ball::<Q>(&params, radius)?);
    match ctx.format {
        Format::Dot => Ok(Report(skeleton_dot(&ball))),
        _ => ctx.json(&ball),
    }
}
