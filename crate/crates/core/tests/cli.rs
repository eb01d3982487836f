use std::fs;

use pauli_polar::cli::run;
use serde_json::Value;
use tempfile::TempDir;

fn cli(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("pauli-polar").chain(args.iter().copied()));
    (out.code, out.stdout)
}

fn json(args: &[&str]) -> Value {
    let (code, stdout) = cli(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn hyperplane_census_output_is_exact() {
    let (code, out) = cli(&["space", "hyperplanes", "-n", "2", "--census"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"perp\":15,\"hyperbolic\":10,\"elliptic\":6,\"total\":31}\n"
    );
}

#[test]
fn pentagram_enumeration_output_is_exact() {
    let (code, out) = cli(&["magic", "enumerate-pentagrams"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"count\":12096,\"all_magic\":true}\n");
}

#[test]
fn space_builds() {
    for (n, p, l) in [(1, 3, 0), (2, 15, 15), (3, 63, 315), (4, 255, 5355)] {
        let v = json(&["space", "build", "-n", &n.to_string()]);
        assert_eq!(
            (v["points"].as_u64(), v["lines"].as_u64()),
            (Some(p), Some(l))
        );
    }
    assert_eq!(json(&["space", "build", "-n", "3"])["planes"], 135);
    assert_eq!(
        json(&["space", "build", "-n", "2"])["generalized_quadrangle"],
        true
    );
    let (code, dot) = cli(&["space", "build", "-n", "2", "--dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph polar_space {"));
    assert_eq!(dot.matches(" -- ").count(), 30);
}

#[test]
fn hyperplane_listing() {
    let v = json(&["space", "hyperplanes", "-n", "2"]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 31);
    let sizes: Vec<u64> = list.iter().map(|h| h["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 7).count(), 15);
    assert_eq!(sizes.iter().filter(|&&s| s == 9).count(), 10);
    assert_eq!(sizes.iter().filter(|&&s| s == 5).count(), 6);
    let ovoid = list.iter().find(|h| h["type"] == "elliptic").unwrap();
    assert_eq!(ovoid["points"].as_array().unwrap().len(), 5);
}

#[test]
fn veldkamp_census() {
    let v = json(&["space", "veldkamp", "-n", "2"]);
    assert_eq!(v["hyperplanes"], 31);
    assert_eq!(v["lines"], 155);
    assert_eq!(v["by_type"].as_object().unwrap().len(), 5);
    assert_eq!(cli(&["space", "veldkamp", "-n", "5"]).0, 1);
    assert_eq!(cli(&["space", "veldkamp", "-n", "1"]).0, 1);
}

#[test]
fn magic_configurations() {
    let sq = json(&["magic", "square", "--verify"]);
    assert_eq!(sq["verified"], true);
    assert_eq!(sq["magic"], true);
    assert_eq!(sq["negative_contexts"].as_array().unwrap().len(), 1);
    let pg = json(&["magic", "pentagram", "--verify"]);
    assert_eq!(pg["negative_contexts"], serde_json::json!([0]));
    let (code, dot) = cli(&["magic", "pentagram", "--dot"]);
    assert_eq!(code, 0);
    assert!(dot.contains("style=dashed"));
    let grids = json(&["magic", "enumerate-grids"]);
    assert_eq!(
        (grids["count"].as_u64(), grids["all_magic"].as_bool()),
        (Some(10), Some(true))
    );
}

#[test]
fn pentagrams_within_files() {
    let dir = TempDir::new().unwrap();
    let canonical = write(
        &dir,
        "ten.json",
        r#"["XXX","XZZ","ZXZ","ZZX","XII","IXI","IIX","ZII","IZI","IIZ"]"#,
    );
    assert_eq!(
        json(&["magic", "enumerate-pentagrams", "--within", &canonical])["count"],
        1
    );
    let core = write(
        &dir,
        "core.json",
        r#"["YYI","YIY","IYY","ZZI","ZIZ","IZZ","XXI","XIX","IXX","ZXI","ZIX","IZX","XZI","XIZ","IXZ"]"#,
    );
    assert_eq!(
        json(&["magic", "enumerate-pentagrams", "--within", &core])["count"],
        0
    );
    let bad = write(&dir, "bad.json", r#"["XX"]"#);
    assert_eq!(
        cli(&["magic", "enumerate-pentagrams", "--within", &bad]).0,
        1
    );
    let garbage = write(&dir, "garbage.json", "not json");
    assert_eq!(
        cli(&["magic", "enumerate-pentagrams", "--within", &garbage]).0,
        1
    );
}

#[test]
fn game_value_from_files() {
    let dir = TempDir::new().unwrap();
    let (_, square) = cli(&["magic", "square"]);
    let path = write(&dir, "square.json", &square);
    let v = json(&["magic", "game-value", &path]);
    assert_eq!(v["value"], "8/9");
    assert_eq!(v["magic"], true);

    let mut doc: Value = serde_json::from_str(&square).unwrap();
    for ctx in doc["contexts"].as_array_mut().unwrap() {
        ctx["sign"] = 1.into();
    }
    let path = write(&dir, "plus.json", &doc.to_string());
    let v = json(&["magic", "game-value", &path]);
    assert_eq!(
        (v["value"].as_str(), v["magic"].as_bool()),
        (Some("1/1"), Some(false))
    );

    let path = write(&dir, "missing.json", r#"{"points":["XX"],"contexts":[]}"#);
    assert_eq!(cli(&["magic", "game-value", &path]).0, 1);
    assert_eq!(cli(&["magic", "game-value", "/nonexistent/file.json"]).0, 1);
}

#[test]
fn magic_line_commands() {
    let show = json(&["magicline", "show"]);
    assert_eq!(show["perp"]["size"], 31);
    assert_eq!(show["elliptic"]["size"], 27);
    assert_eq!(show["hyperbolic"]["size"], 35);
    assert_eq!(show["core"].as_array().unwrap().len(), 15);
    assert_eq!(show["core_is_doily"], true);
    let w = json(&["magicline", "weights"]);
    assert_eq!(w["highest"], "ZIZ");
    assert_eq!(w["nodes"].as_array().unwrap().len(), 15);
    assert_eq!(w["quintuples_found"], 48);
    assert_eq!(cli(&["magicline", "weights", "--index", "48"]).0, 1);
    let pf = json(&["magicline", "pfaffian-check", "--samples", "20"]);
    assert!((pf["constant"].as_f64().unwrap() - 48.0).abs() < 1e-6);
    assert_eq!(pf["labelings"], 720);
}

#[test]
fn slocc_commands() {
    let dir = TempDir::new().unwrap();
    let ghz = write(
        &dir,
        "ghz.json",
        r#"{"format":[2,2,2],"re":[1,0,0,0,0,0,0,1]}"#,
    );
    let w = write(
        &dir,
        "w.json",
        r#"{"format":[2,2,2],"re":[0,1,1,0,1,0,0,0]}"#,
    );
    let bell = write(&dir, "bell.json", r#"{"format":[2,2],"re":[1,0,0,1]}"#);
    let product = write(&dir, "prod.json", r#"{"format":[2,2],"re":[1,1,1,1]}"#);
    assert_eq!(json(&["slocc", "classify", &ghz])["class"], "GHZ");
    assert_eq!(json(&["slocc", "classify", &w])["class"], "W");
    assert_eq!(json(&["slocc", "classify", &bell])["class"], "ENTANGLED");
    assert_eq!(json(&["slocc", "classify", &product])["class"], "SEP");
    let short = write(&dir, "short.json", r#"{"format":[2,2,2],"re":[1,0]}"#);
    assert_eq!(cli(&["slocc", "classify", &short]).0, 1);

    let s = json(&["slocc", "secant-dim", "--format", "2,2,2", "-k", "2"]);
    assert_eq!(s["affine_dimension"], 8);
    assert_eq!(s["zak"]["branch"], 1);
    assert_eq!(
        json(&["slocc", "secant-dim", "--format", "2,2", "-k", "2"])["zak"]["branch"],
        2
    );

    let mut amps = vec![0; 16];
    for k in ["0000", "1011", "1101", "1110"] {
        amps[usize::from_str_radix(k, 2).unwrap()] = 1;
    }
    let d4 = write(
        &dir,
        "d4.json",
        &format!(r#"{{"format":[2,2,2,2],"re":{amps:?}}}"#),
    );
    let v = json(&["slocc", "singularity", &d4, "--chart", "0,1,1,1"]);
    assert_eq!(v["polynomial"], "y*z*t + x*y + x*z + x*t");
    assert_eq!(
        (v["milnor_number"].as_u64(), v["hessian_corank"].as_u64()),
        (Some(4), Some(2))
    );
    assert_eq!(v["type"], "D4");
    assert_eq!(cli(&["slocc", "singularity", &d4, "--chart", "0,1"]).0, 1);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(cli(&["bogus"]).0, 1);
    assert_eq!(cli(&["space", "build"]).0, 1);
    assert_eq!(cli(&["space", "build", "-n", "0"]).0, 1);
    assert_eq!(cli(&[]).0, 1);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    for args in [
        &["magicline", "pfaffian-check", "--seed", "7"][..],
        &[
            "slocc",
            "secant-dim",
            "--format",
            "3,3",
            "-k",
            "2",
            "--seed",
            "3",
        ],
        &["magic", "enumerate-grids"],
    ] {
        let first = cli(args);
        assert_eq!(first, cli(args));
        let mut threaded = vec!["--threads", "1"];
        threaded.extend_from_slice(args);
        assert_eq!(first, cli(&threaded));
    }
}
