use std::collections::BTreeMap;

use serde::Serialize;
use skeletonkit::semigraph::{harm_basis, h1_rank, prescribed_cochain, HarmonicCochain, SemiGraph};
use skeletonkit::skeleton::CurveSkeleton;

use super::{parse_graph, parse_skeleton, Ctx, Handler};
use crate::args::{Format, HarmOp};
use crate::CliError;

#[derive(Serialize)]
struct Basis {
    modulus: u64,
    rank: Option<usize>,
    generators: Vec<BTreeMap<String, u64>>,
}

#[derive(Serialize)]
struct Cochain {
    modulus: u64,
    values: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct H1Rank {
    ell: u64,
    h1_rank: u64,
}

/// Values keyed by edge id.
fn by_id(g: &SemiGraph, c: &HarmonicCochain) -> BTreeMap<String, u64> {
    g.edges().iter().zip(&c.values).map(|(e, &v)| (e.id.clone(), v)).collect()
}

pub fn prepare(ctx: Ctx, op: &HarmOp) -> Result<Handler, CliError> {
    ctx.allow(&[Format::Json])?;
    let handler: super::InputHandler = match *op {
        HarmOp::Basis { modulus } => Box::new(move |text| {
            let g = parse_graph(text)?;
            let basis = harm_basis(&g, modulus)?;
            let generators = basis.generators.iter().map(|c| by_id(&g, c)).collect();
            ctx.json(&Basis { modulus, rank: basis.rank, generators })
        }),
        HarmOp::Construct { modulus, ref open, a, a_prime } => {
            let open: [String; 3] = open
                .clone()
                .try_into()
                .map_err(|v: Vec<String>| CliError::malformed("bad_open_edges", format!("--open needs exactly 3 edge ids, got {}", v.len())))?;
            Box::new(move |text| {
                let g = parse_graph(text)?;
                let c = prescribed_cochain(&g, modulus, [&open[0], &open[1], &open[2]], a, a_prime)?;
                ctx.json(&Cochain { modulus, values: by_id(&g, &c) })
            })
        }
        HarmOp::H1rank { ell } => Box::new(move |text| {
            let rank = match parse_skeleton(text)? {
                CurveSkeleton::Graph(sk) => sk.h1_rank(ell)?,
                CurveSkeleton::Empty(params) => h1_rank(&SemiGraph::empty(), &[], ell, params.p)?,
            };
            ctx.json(&H1Rank { ell, h1_rank: rank })
        }),
    };
    Ok(Handler::PerInput(handler))
}
