mod support;

use support::{ok, scratch, surftower, tree_hashes};

fn objects(manifest: &serde_json::Value) -> Vec<String> {
    manifest["objects"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
}

#[test]
fn enumerate_stores_every_subgroup() {
    let ws = scratch("enumerate");
    let m = ok(&ws, &["enumerate", "--genus", "2", "--max-index", "2"]).1.json();
    assert_eq!(m["schema"], "manifest/1");
    assert_eq!(m["total"], 16);
    assert_eq!(m["counts"], serde_json::json!([1, 15]));
    for h in objects(&m) {
        assert!(ws.join("objects").join(format!("{h}.json")).exists());
    }
    let index: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(ws.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["schema"], "index/1");
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    let first = support::full_pipeline(&a);
    let second = support::full_pipeline(&b);
    assert_eq!(first, second);
    assert_eq!(tree_hashes(&a), tree_hashes(&b));
    // running again in place adds nothing new
    let before = tree_hashes(&a);
    support::full_pipeline(&a);
    assert_eq!(before, tree_hashes(&a));
}

#[test]
fn core_of_an_index_two_file_is_the_homology_cover() {
    let ws = scratch("core");
    let m = ok(&ws, &["enumerate", "--genus", "2", "--max-index", "2"]).1.json();
    let h2 = ok(&ws, &["char", "homology", "--genus", "2", "--n", "2"]).1.json();
    assert_eq!(h2["index"], 16);
    assert_eq!(h2["certificate"]["kind"], "HomologyLevel");
    for h in objects(&m).iter().skip(1).step_by(5) {
        let core = ok(&ws, &["char", "core", h]).1.json();
        assert_eq!(core["table"], h2["table"]);
    }
}

#[test]
fn intersecting_a_file_with_itself_is_a_fixed_point() {
    let ws = scratch("self");
    let m = ok(&ws, &["enumerate", "--genus", "2", "--max-index", "2"]).1.json();
    let h = &objects(&m)[3];
    let (hash, _) = ok(&ws, &["intersect", h, h]);
    assert_eq!(&hash, h);
    let h2 = ok(&ws, &["char", "homology", "--genus", "2", "--n", "2"]).0;
    assert_eq!(ok(&ws, &["intersect", &h2, &h2]).0, h2);
    // a six-character prefix is enough to name an object
    assert_eq!(ok(&ws, &["intersect", &h[..6], &h[..8]]).0, *h);
}

#[test]
fn ledger_on_a_built_tower() {
    let ws = scratch("ledger");
    let tower = ok(&ws, &["tower", "build", "--genus", "2", "--homology", "2"]).0;
    let report = ok(&ws, &["ledger", "check", "--tower", &tower, "--m-range", "-10..10"]).1.json();
    assert_eq!(report["schema"], "ledger/1");
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let strata = report["perStratum"].as_array().unwrap();
    let top = strata.iter().find(|s| s["nI"] == 16).unwrap();
    let m2 = top["exponents"].as_array().unwrap().iter().find(|e| e["m"] == 2).unwrap();
    assert_eq!(m2["exponent"], "13/16");
    let dot = ok(&ws, &["export", "--dot", &tower]).1.stdout;
    assert!(dot.starts_with("digraph"));
}

#[test]
fn virtual_automorphism_commands() {
    let ws = scratch("vaut");
    let h2 = ok(&ws, &["char", "homology", "--genus", "2", "--n", "2"]).0;
    let id = ok(&ws, &["vaut", "identity", &h2]).0;
    let swap = ok(&ws, &["vaut", "from-aut", &h2, "--aut", "handle-shift"]).0;
    let square = ok(&ws, &["vaut", "compose", &swap, &swap]).0;
    let inv = ok(&ws, &["vaut", "invert", &swap]).0;
    let eq = |a: &str, b: &str| ok(&ws, &["vaut", "germ-eq", a, b]).1.json()["equal"].as_bool().unwrap();
    assert!(eq(&square, &id));
    assert!(eq(&inv, &swap));
    assert!(!eq(&swap, &id));
    let cycle = ok(&ws, &["vaut", "cycle", &swap, &swap]).0;
    let left = ok(&ws, &["vaut", "reduce", &cycle, "--order", "leftmost"]).0;
    let right = ok(&ws, &["vaut", "reduce", &cycle, "--order", "rightmost"]).0;
    assert!(eq(&left, &right) && eq(&left, &id));
}

#[test]
fn genus_one_commands() {
    let ws = scratch("genus1");
    let p = ok(&ws, &["genus1", "act", "--matrix", "2,1;0,1", "--tau", "i"]).1.json();
    assert_eq!((p["re"]["num"].clone(), p["im"]["num"].clone()), (1.into(), 2.into()));
    let o = ok(&ws, &["genus1", "orbit", "--target", "1+2i", "--eps", "1e-9"]).1.json();
    assert_eq!(o["error"], 0.0);
    let o = ok(&ws, &["genus1", "orbit", "--target", "-3.25+0.04i", "--eps", "1e-7"]).1.json();
    assert!(o["error"].as_f64().unwrap() < 1e-6);
    let m = ok(&ws, &["genus1", "modulus-map", "--lattice", "3,0;0,1"]).1.json();
    assert_eq!(m["schema"], "mobius/1");
}

#[test]
fn failures_have_distinct_codes_and_json_diagnostics() {
    let ws = scratch("errors");
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["enumerate", "--genus", "2", "--max-index", "7"], 3, "BudgetExceeded"),
        (vec!["char", "homology", "--genus", "1", "--n", "2"], 4, "InvalidGenus"),
        (vec!["genus1", "modulus-map", "--lattice", "1,2;2,4"], 19, "SingularMatrix"),
        (vec!["genus1", "act", "--matrix", "0,1;1,0"], 21, "OrientationReversing"),
        (vec!["char", "core", "deadbeef00"], 33, "NotFound"),
        (vec!["ledger", "check", "--tower", "x", "--m-range", "nonsense"], 32, "Argument"),
    ];
    for (args, code, kind) in cases {
        let r = surftower(&ws, &args);
        assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
        let d = r.diagnostic();
        assert_eq!(d["error"], kind);
        assert_eq!(d["code"], code);
        assert!(r.stdout.is_empty());
    }
    let bad = ws.join("bad.json");
    std::fs::write(&bad, "{\"schema\": \"subgroup/1\", \"genus\": 2}").unwrap();
    let r = surftower(&ws, &["char", "core", bad.to_str().unwrap()]);
    assert_eq!(r.code, 25, "{}", r.stderr);
}

#[test]
fn config_file_sets_budget() {
    let ws = scratch("config");
    let cfg = ws.join("run.toml");
    std::fs::write(&cfg, "seed = 5\n[budget]\nmax_result_index = 10\n").unwrap();
    let r = surftower(&ws, &["--config", cfg.to_str().unwrap(), "char", "homology", "--genus", "2", "--n", "2"]);
    assert_eq!(r.diagnostic()["error"], "IndexOverflow");
    assert_eq!(r.code, 11);
    std::fs::write(&cfg, "unknown = 1\n").unwrap();
    let r = surftower(&ws, &["--config", cfg.to_str().unwrap(), "genus1", "act", "--matrix", "1,0;0,1"]);
    assert_eq!(r.code, 31);
}
