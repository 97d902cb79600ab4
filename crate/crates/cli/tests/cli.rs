use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use skeletonkit_cli::run_with;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skeletonkit"))
        .args(args)
        .env_remove("SKELETONKIT_SEED")
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

/// In-process run with `stdin` as input: (exit, stdout, stderr).
fn run_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("skeletonkit").chain(args.iter().copied());
    let code = run_with(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn error_code(stderr: &[u8]) -> String {
    let v: Value = serde_json::from_slice(stderr).expect("stderr is a JSON error");
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn fiber_count_example() {
    let o = bin(&["wild", "fiber-count", "--p", "3", "--h", "2", "--T", "0", "--S", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"count\":3}\n");
}

#[test]
fn fiber_count_accepts_fractions() {
    let o = bin(&["wild", "fiber-count", "--p", "3", "--h", "2", "--T", "0", "--S", "-5/2"]);
    assert_eq!(stdout(&o), "{\"count\":3}\n");
    let o = bin(&["wild", "fiber-count", "--p", "3", "--h", "2", "--T", "0", "--S", "-501/200"]);
    assert_eq!(stdout(&o), "{\"count\":9}\n");
}

#[test]
fn radius_above_center_is_a_domain_error() {
    let o = bin(&["wild", "fiber-count", "--p", "3", "--h", "2", "--T", "0", "--S", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["message"], "S must be < T");
    assert_eq!(err["error"]["code"], "s_not_below_t");
    assert!(o.stdout.is_empty());
}

#[test]
fn drinfeld_ball_classifies_rel_compact() {
    let dir = std::env::temp_dir().join(format!("skeletonkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ball = dir.join("ball.json");
    let o = bin(&["bt", "generate", "--p", "2", "--f", "2", "--radius", "2", "--output", ball.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["skeleton", "classify", "--input", ball.to_str().unwrap()]);
    assert_eq!(stdout(&o), "{\"hyperbolic\":true,\"certificate\":\"RelCompact\"}\n");
    let o = bin(&["bt", "recover", "--input", ball.to_str().unwrap()]);
    assert_eq!(json(&o), serde_json::json!({"q": 4, "p": 2, "f": 2}));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bt_ball_size() {
    let o = bin(&["bt", "generate", "--p", "3", "--radius", "2"]);
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 17);
    assert_eq!(v["edges"].as_array().unwrap().len(), 16);
    assert_eq!(v["truncated"], true);
}

#[test]
fn ramified_ball_has_fractional_lengths() {
    let o = bin(&["bt", "generate", "--p", "2", "--e", "2", "--radius", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["decor"]["edges"].as_object().unwrap().values().next().unwrap()["length"], "1/2");
}

#[test]
fn malformed_json_exits_2() {
    let (code, out, err) = run_stdin(&["skeleton", "classify"], "{");
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert_eq!(error_code(err.as_bytes()), "malformed_json");
}

#[test]
fn invalid_skeleton_exits_1() {
    let o = bin(&["skeleton", "classify", "--input", &fixture("infinite_closed_edge.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_code(&o.stderr), "infinite_closed_edge");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["wild", "fiber-count", "--p", "3", "--h", "2", "--T", "0", "--S", "-2", "--bogus"]).status.code(), Some(2));
    assert_eq!(bin(&["wild", "fiber-count", "--p", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    let o = bin(&["wild", "kummer", "--L", "2", "--ell", "4", "--class", "1", "--input", &fixture("tate.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o.stderr), "unexpected_input");
    let o = bin(&["skeleton", "classify", "--format", "ascii", "--input", &fixture("tate.json")]);
    assert_eq!(error_code(&o.stderr), "unsupported_format");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    let o = bin(&["skeleton", "classify", "--input", "/nonexistent/skeleton.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o.stderr), "io");
}

#[test]
fn help_exits_0() {
    let o = bin(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skeleton"));
}

#[test]
fn analyze_tate_circle() {
    let v = json(&bin(&["skeleton", "analyze", "--input", &fixture("tate.json")]));
    assert_eq!(v["compact"], "TateCircle");
    assert_eq!(v["nodes"], serde_json::json!([]));
    assert_eq!(v["classification"]["hyperbolic"], false);
}

#[test]
fn analyze_is_deterministic_and_sorted() {
    let args = ["skeleton", "analyze", "--input", &fixture("subdivided_theta.json")];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let ids: Vec<&str> = v["vertices"].as_array().unwrap().iter().map(|x| x["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["s", "x", "y"]);
    assert_eq!(v["compact"]["HasMinimal"], serde_json::json!(["x", "y"]));
    assert_eq!(v["minimal_triangulation"], serde_json::json!(["x", "y"]));
}

#[test]
fn minimize_removes_subdivision_point() {
    for order in ["first", "last"] {
        let o = bin(&["skeleton", "minimize", "--order", order, "--input", &fixture("subdivided_theta.json")]);
        assert_eq!(stdout(&o), "{\"triangulation\":[\"x\",\"y\"],\"removed\":[\"s\"]}\n");
    }
    let o = bin(&["skeleton", "minimize", "--set", "x", "--input", &fixture("subdivided_theta.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_code(&o.stderr), "missing_node");
}

#[test]
fn marking_tate_curve_makes_it_hyperbolic() {
    let o = bin(&["skeleton", "mark", "--markings", &fixture("mark_v.json"), "--input", &fixture("tate.json")]);
    assert_eq!(o.status.code(), Some(0));
    let (code, out, _) = run_stdin(&["skeleton", "classify"], &stdout(&o));
    assert_eq!(code, 0);
    assert_eq!(out, "{\"hyperbolic\":true,\"certificate\":\"FiniteGraphMixedCusps\"}\n");
}

#[test]
fn harmonic_commands() {
    let v = json(&bin(&["harm", "basis", "--modulus", "3", "--input", &fixture("tripod.json")]));
    assert_eq!(v["rank"], 2);
    let v = json(&bin(&["harm", "construct", "--modulus", "5", "--open", "o0,o1,o2", "--a", "1", "--a-prime", "2", "--input", &fixture("tripod.json")]));
    assert_eq!(v["values"], serde_json::json!({"o0": 1, "o1": 2, "o2": 2}));
    let v = json(&bin(&["harm", "h1rank", "--ell", "3", "--input", &fixture("thrice_punctured.json")]));
    assert_eq!(v["h1_rank"], 2);
    let v = json(&bin(&["harm", "h1rank", "--ell", "2", "--input", &fixture("tate.json")]));
    assert_eq!(v["h1_rank"], 2);
    let o = bin(&["harm", "h1rank", "--ell", "3", "--input", &fixture("tate.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_code(&o.stderr), "ell_equals_p");
    let o = bin(&["harm", "construct", "--modulus", "5", "--open", "o0,o1", "--a", "1", "--a-prime", "2", "--input", &fixture("tripod.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wild_profile_formats() {
    let v = json(&bin(&["wild", "profile", "--L", "3", "--eps", "1/2", "--p", "3", "--h", "2"]));
    assert_eq!(v["counts"], serde_json::json!([1, 3, 9]));
    assert_eq!(v["breakpoints"], serde_json::json!(["1/2", "3/2"]));
    let ascii = stdout(&bin(&["wild", "profile", "--L", "3", "--eps", "1/2", "--p", "3", "--h", "2", "--format", "ascii"]));
    assert!(ascii.contains("#########"));
    let dot = stdout(&bin(&["wild", "profile", "--L", "3", "--eps", "1/2", "--p", "3", "--h", "2", "--format", "dot"]));
    assert!(dot.starts_with("graph layout {"));
    let o = bin(&["wild", "profile", "--L", "1", "--eps", "1/2", "--p", "3", "--h", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn kummer_summary() {
    let v = json(&bin(&["wild", "kummer", "--L", "6", "--ell", "6", "--class", "4"]));
    assert_eq!(v, serde_json::json!({"ell": 6, "class": 4, "components": 2, "component_length": "2/1", "component_degree": 3}));
    assert_eq!(bin(&["wild", "kummer", "--L", "6", "--ell", "6", "--class", "6"]).status.code(), Some(1));
}

#[test]
fn gog_validate_and_screen() {
    let v = json(&bin(&["gog", "validate", "--input", &fixture("amalgam.json")]));
    assert_eq!(v["vertex_orders"], serde_json::json!({"a": 4, "b": 4}));
    assert!(v.get("screen").is_none());
    let v = json(&bin(&["gog", "validate", "--symbolic", &fixture("symbolic.json"), "--input", &fixture("amalgam.json")]));
    assert_eq!(v["screen"]["pass"], false);
    assert_eq!(v["screen"]["failures"][0]["pattern"], "disc");
}

#[test]
fn gog_cover_and_tower() {
    let v = json(&bin(&["gog", "cover", "--action", &fixture("cycle3.json"), "--input", &fixture("circle_gog.json")]));
    assert_eq!(v["degree"], 3);
    assert_eq!(v["cover"]["graph"]["vertices"].as_array().unwrap().len(), 3);
    let v = json(&bin(&["gog", "tower", "--action", &fixture("cycle3.json"), "--action", &fixture("cycle6.json"), "--input", &fixture("circle_gog.json")]));
    assert_eq!(v["nested"], true);
    assert_eq!(v["levels"][1]["rank"], 1);
}

#[test]
fn ball_then_reconstruct() {
    let ball = bin(&["gog", "ball", "--radius", "2", "--input", &fixture("amalgam.json")]);
    assert_eq!(ball.status.code(), Some(0));
    let (code, out, _) = run_stdin(&["gog", "reconstruct"], &stdout(&ball));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["vertex_orders"], serde_json::json!({"a": 4, "b": 4}));
    assert_eq!(v["edge_orders"], serde_json::json!({"e": 2}));
    let v = json(&bin(&["gog", "reconstruct", "--radius", "2", "--input", &fixture("amalgam.json")]));
    assert_eq!(v["isomorphic_to_input"], true);
    let o = bin(&["gog", "reconstruct", "--radius", "0", "--input", &fixture("amalgam.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_code(&o.stderr), "radius_too_small");
}

#[test]
fn export_dot_detects_kind() {
    assert!(stdout(&bin(&["export", "dot", "--input", &fixture("amalgam.json")])).starts_with("graph gog {"));
    assert!(stdout(&bin(&["export", "dot", "--input", &fixture("tate.json")])).starts_with("graph skeleton {"));
    assert!(stdout(&bin(&["export", "dot", "--input", &fixture("tripod.json")])).starts_with("graph semigraph {"));
    let forced = stdout(&bin(&["export", "dot", "--kind", "semigraph", "--input", &fixture("tate.json")]));
    assert!(forced.starts_with("graph semigraph {"));
}

#[test]
fn parallel_batch_preserves_input_order() {
    let inputs = ["tate.json", "subdivided_theta.json", "thrice_punctured.json", "tate.json"];
    let mut args = vec!["skeleton".to_string(), "classify".into()];
    for name in inputs {
        args.push("--input".into());
        args.push(fixture(name));
    }
    let serial: Vec<&str> = args.iter().map(String::as_str).collect();
    let mut parallel = serial.clone();
    parallel.extend(["--jobs", "3"]);
    let (a, b) = (bin(&serial), bin(&parallel));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], lines[3]);
    assert_eq!(lines[1], "{\"hyperbolic\":true,\"certificate\":\"RelCompact\"}");
}

#[test]
fn batch_with_one_bad_input_reports_it() {
    let o = bin(&["skeleton", "classify", "--input", &fixture("tate.json"), "--input", &fixture("infinite_closed_edge.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 1);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"]["input"].as_str().unwrap().ends_with("infinite_closed_edge.json"));
}

#[test]
fn selftest_is_seeded() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_skeletonkit"))
            .args(["selftest", "--cases", "8"])
            .env("SKELETONKIT_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b) = (run("7"), run("7"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
    let bad = run("seven");
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(error_code(&bad.stderr), "bad_seed");
}
