//! Seeded invariant checks over random instances. The seed comes from
//! `SKELETONKIT_SEED` (default 0); each check draws from its own stream.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;
use skeletonkit::corpus::{self, random_semigraph, random_skeleton, random_small_semigraph, random_trivial_action};
use skeletonkit::drinfeld::{bt_ball, recover_invariants, LocalFieldParams};
use skeletonkit::groups::{audit_ball, bass_serre_ball, cover_from_action, GraphOfGroups};
use skeletonkit::semigraph::{harm_basis, prescribed_cochain};
use skeletonkit::skeleton::{minimize_triangulation_by, node_set, Length, Skeleton};
use skeletonkit::wild::{fiber_count, fiber_count_oracle, kummer_cover};
use skeletonkit::Scalar;

use super::Ctx;
use crate::args::{Format, SelftestArgs, Q};
use crate::{CliError, Report};

pub const SEED_VAR: &str = "SKELETONKIT_SEED";

#[derive(Serialize)]
struct CheckReport {
    name: &'static str,
    cases: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
}

#[derive(Serialize)]
struct SelftestReport {
    seed: u64,
    cases: usize,
    pass: bool,
    checks: Vec<CheckReport>,
}

type Rng8 = rand_chacha::ChaCha8Rng;
type Check = fn(&mut Rng8) -> Result<(), String>;

fn ratio(rng: &mut Rng8) -> Q {
    Q::from_ratio(rng.gen_range(-40..40), rng.gen_range(1..9))
}

fn fiber_oracle(rng: &mut Rng8) -> Result<(), String> {
    let (p, h) = ([2u64, 3, 5, 7][rng.gen_range(0..4)], rng.gen_range(0..4u32));
    let t = ratio(rng);
    let s = t.clone() - Q::from_ratio(rng.gen_range(1..80), rng.gen_range(1..9));
    let fast = fiber_count(&t, &s, p, h).map_err(|e| e.to_string())?;
    let slow = fiber_count_oracle(&t, &s, p, h).map_err(|e| e.to_string())?;
    (fast == slow).then_some(()).ok_or_else(|| format!("p={p} h={h} T={t} S={s}: {fast} vs {slow}"))
}

fn harm_rank(rng: &mut Rng8) -> Result<(), String> {
    let g = random_small_semigraph(rng, 0);
    let expected = g.closed_edges().count() + 1 + g.open_edges().count().saturating_sub(1) - g.vertex_count();
    let rank = harm_basis(&g, 5).map_err(|e| e.to_string())?.rank;
    (rank == Some(expected)).then_some(()).ok_or_else(|| format!("rank {rank:?}, formula {expected}"))
}

fn prescribed(rng: &mut Rng8) -> Result<(), String> {
    let g = random_small_semigraph(rng, 3);
    let open: Vec<String> = g.open_edges().map(|e| g.edges()[e].id.clone()).collect();
    let (a, b) = (rng.gen_range(0..7), rng.gen_range(0..7));
    let c = prescribed_cochain(&g, 7, [&open[0], &open[1], &open[2]], a, b).map_err(|e| e.to_string())?;
    c.check(&g).map_err(|e| e.to_string())
}

fn confluence(rng: &mut Rng8) -> Result<(), String> {
    let sk: Skeleton<Q> = random_skeleton(rng);
    let all: BTreeSet<usize> = (0..sk.graph().vertex_count()).collect();
    let first = minimize_triangulation_by(&sk, &all, |_| 0).map_err(|e| e.to_string())?;
    let last = minimize_triangulation_by(&sk, &all, |c| c.len() - 1).map_err(|e| e.to_string())?;
    let nodes = node_set(&sk);
    let ok = if nodes.is_empty() { first.len() == last.len() } else { first == nodes && last == nodes };
    ok.then_some(()).ok_or_else(|| format!("fixed points {first:?} and {last:?}, nodes {nodes:?}"))
}

fn euler(rng: &mut Rng8) -> Result<(), String> {
    let (v, x) = (rng.gen_range(1..5), rng.gen_range(1..4));
    let g = random_semigraph(rng, v, x, 0);
    let gog = GraphOfGroups::trivial(g.clone()).map_err(|e| e.to_string())?;
    let degree = rng.gen_range(1..=6);
    let act = random_trivial_action(rng, &gog, degree).ok_or("no letters")?;
    let cover = cover_from_action(&gog, &act).map_err(|e| e.to_string())?;
    let chi = |g: &skeletonkit::semigraph::SemiGraph| g.vertex_count() as i64 - g.edge_count() as i64;
    let (up, down) = (chi(cover.cover.graph()), chi(&g));
    (up == degree as i64 * down).then_some(()).ok_or_else(|| format!("degree {degree}: {up} vs {down}"))
}

fn bass_serre(rng: &mut Rng8) -> Result<(), String> {
    let corpus = corpus::gog_corpus();
    let (name, gog) = &corpus[rng.gen_range(0..corpus.len())];
    let radius = rng.gen_range(0..4);
    let audit = audit_ball(gog, &bass_serre_ball(gog, radius));
    audit.ok().then_some(()).ok_or_else(|| format!("{name} R={radius}: {audit:?}"))
}

fn kummer(rng: &mut Rng8) -> Result<(), String> {
    let ell = rng.gen_range(2..40u64);
    let class = rng.gen_range(0..ell);
    let k = kummer_cover(&Length::Finite(Q::from_ratio(rng.gen_range(1..30), rng.gen_range(1..5))), ell, class)
        .map_err(|e| e.to_string())?;
    let gcd = num_integer::gcd(class, ell);
    (k.components == gcd && k.components * k.component_degree == ell)
        .then_some(())
        .ok_or_else(|| format!("ell={ell} class={class}: {k:?}"))
}

fn bt_recover(rng: &mut Rng8) -> Result<(), String> {
    let (p, f) = [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)][rng.gen_range(0..6)];
    let radius = rng.gen_range(1..=3);
    let params = LocalFieldParams::new(p, f, 1).map_err(|e| e.to_string())?;
    let ball: Skeleton<Q> = bt_ball(&params, radius).map_err(|e| e.to_string())?;
    let got = recover_invariants(&ball).map_err(|e| e.to_string())?;
    (got == (params.q(), p, f)).then_some(()).ok_or_else(|| format!("q={} R={radius}: {got:?}", params.q()))
}

const CHECKS: [(&str, Check); 8] = [
    ("fiber_count_oracle", fiber_oracle),
    ("harmonic_rank_formula", harm_rank),
    ("prescribed_cochain", prescribed),
    ("minimization_confluence", confluence),
    ("euler_multiplicativity", euler),
    ("bass_serre_audit", bass_serre),
    ("kummer_gcd", kummer),
    ("bruhat_tits_recovery", bt_recover),
];

pub fn seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(text) => text.trim().parse().map_err(|_| CliError::malformed("bad_seed", format!("{SEED_VAR}={text:?} is not a u64"))),
        Err(_) => Ok(0),
    }
}

pub fn run(ctx: Ctx, args: &SelftestArgs) -> Result<Report, CliError> {
    ctx.allow(&[Format::Json])?;
    let seed = seed()?;
    let mut checks = Vec::new();
    for (k, (name, check)) in CHECKS.iter().enumerate() {
        let mut rng = corpus::rng(seed.wrapping_add(k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut report = CheckReport { name, cases: args.cases, failures: 0, first_failure: None };
        for _ in 0..args.cases {
            if let Err(why) = check(&mut rng) {
                report.failures += 1;
                report.first_failure.get_or_insert(why);
            }
        }
        checks.push(report);
    }
    let pass = checks.iter().all(|c| c.failures == 0);
    let report = SelftestReport { seed, cases: args.cases, pass, checks };
    if !pass {
        let failing: Vec<&str> = report.checks.iter().filter(|c| c.failures > 0).map(|c| c.name).collect();
        return Err(CliError::domain("selftest_failed", format!("failing checks: {}", failing.join(", "))));
    }
    ctx.json(&report)
}
