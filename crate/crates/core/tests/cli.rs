use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use qhopf::groups::{braiding_of_cochain, coboundary, octonion_cochain, FiniteGroup, GroupSpec};

fn qhopf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qhopf-bin-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn octonion_bosonisation_suite() {
    let (code, out, _) = qhopf(&["suite", "--preset", "octonion-bosonisation"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("associativity: 262144/262144 triples pass"), "{out}");
}

#[test]
fn garbage_input_fails_to_parse() {
    let path = scratch("garbage").join("garbage.json");
    std::fs::write(&path, "][").unwrap();
    let (code, _, err) = qhopf(&["verify", "--input", path.to_str().unwrap()]);
    assert_ne!(code, 0);
    assert!(err.contains("cannot read input"), "{err}");
}

#[test]
fn sigma_on_z2_cubed_passes() {
    let (code, out, _) = qhopf(&["iso-check", "sigma", "--preset", "z2cubed"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn sigma_from_files_matches_the_preset() {
    let g = Arc::new(FiniteGroup::cyclic_product(&[2, 2, 2]).unwrap());
    let f = octonion_cochain(&g).unwrap();
    let dir = scratch("files");
    let write = |name: &str, v: serde_json::Value| {
        let p = dir.join(name);
        std::fs::write(&p, v.to_string()).unwrap();
        p.to_str().unwrap().to_string()
    };
    let group = write("g.json", serde_json::to_value(GroupSpec::Cyclic(vec![2, 2, 2])).unwrap());
    let cocycle = write("phi.json", serde_json::to_value(coboundary(&f).unwrap().dump()).unwrap());
    let rfun = write("r.json", serde_json::to_value(braiding_of_cochain(&f).unwrap().dump()).unwrap());
    let from_files = qhopf(&["iso-check", "sigma", "--group", &group, "--cocycle", &cocycle, "--rfun", &rfun, "--json"]);
    let preset = qhopf(&["iso-check", "sigma", "--preset", "z2cubed", "--json"]);
    assert_eq!(from_files.0, 0, "{}", from_files.2);
    assert_eq!(from_files.1, preset.1);

    let kphi = dir.join("kphi.json");
    let (code, _, err) = qhopf(&[
        "build",
        "kphi",
        "--group",
        &group,
        "--cocycle",
        &cocycle,
        "--rfun",
        &rfun,
        "--output",
        kphi.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = qhopf(&["transmute", "--input", kphi.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("comult_characterization: 8/8 elements pass"), "{out}");
}

#[test]
fn octonion_algebra_round_trips_through_a_file() {
    let path = scratch("oct").join("oct.json");
    assert_eq!(qhopf(&["build", "octonions", "--output", path.to_str().unwrap()]).0, 0);
    let (code, out, _) = qhopf(&["bosonise-algebra", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("associativity: 262144/262144 triples pass"), "{out}");
}

#[test]
fn failed_checks_exit_one() {
    let dir = scratch("bad");
    let good = dir.join("h.json");
    let (code, _, _) = qhopf(&["build", "--preset", "z2", "--output", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    // Negate one R-matrix entry and keep the stored inverse.
    v["r"]["entries"][0][2] = serde_json::json!([1, ["-1/1"]]);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let (code, out, _) = qhopf(&["verify", "--input", bad.to_str().unwrap(), "--json"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(false));
    assert_eq!(code, 1);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let a = qhopf(&["iso-check", "chi", "--preset", "z2", "--json"]);
    let b = qhopf(&["iso-check", "chi", "--preset", "z2", "--json"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a.1, b.1);
}
