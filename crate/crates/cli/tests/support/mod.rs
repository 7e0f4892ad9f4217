#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use sha2::{Digest, Sha256};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad stdout ({e}): {}", self.stdout))
    }

    pub fn diagnostic(&self) -> serde_json::Value {
        serde_json::from_str(self.stderr.trim()).unwrap_or_else(|e| panic!("bad stderr ({e}): {}", self.stderr))
    }

    pub fn hash(&self) -> String {
        sha(self.stdout.as_bytes())
    }
}

/// A fresh, empty workspace directory under the system temp dir.
pub fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("surftower-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

pub fn surftower(ws: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_surftower"))
        .arg("--workspace")
        .arg(ws)
        .args(args)
        .env_remove("SURFTOWER_WORKSPACE")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Runs and insists on success, returning the stored object's hash.
pub fn ok(ws: &Path, args: &[&str]) -> (String, Run) {
    let r = surftower(ws, args);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    (r.hash(), r)
}

pub fn sha(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Relative path to content hash for every file below `root`.
pub fn tree_hashes(root: &Path) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, sha(&std::fs::read(&path).unwrap()));
            }
        }
    }
    out
}

/// Exercises every command once. Returns the stdout hash of each step, which
/// is also the stored object's name.
pub fn full_pipeline(ws: &Path) -> Vec<(String, String)> {
    let mut log = Vec::new();
    let mut step = |label: &str, args: &[&str]| -> (String, Run) {
        let (hash, r) = ok(ws, args);
        log.push((label.to_string(), hash.clone()));
        (hash, r)
    };
    let manifest = step("enumerate", &["enumerate", "--genus", "2", "--max-index", "2"]).1.json();
    let objects: Vec<String> =
        manifest["objects"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let (h, k) = (&objects[1], &objects[2]);
    step("char core", &["char", "core", h]);
    let h2 = step("char homology", &["char", "homology", "--genus", "2", "--n", "2"]).0;
    step("intersect plain", &["intersect", h, k]);
    step("intersect certified", &["intersect", &h2, &h2]);
    let tower = step("tower", &["tower", "build", "--genus", "2", "--homology", "2", "--core", h]).0;
    step("ledger", &["ledger", "check", "--tower", &tower, "--m-range", "-3..4"]);
    step("export dot", &["export", "--dot", &tower]);
    step("export json", &["export", "--json", &tower]);
    let id = step("vaut identity", &["vaut", "identity", h]).0;
    let swap = step("vaut from-aut", &["vaut", "from-aut", &h2, "--aut", "handle-shift"]).0;
    let inner = step("vaut inner", &["vaut", "from-aut", k, "--aut", "inner:1,-3"]).0;
    step("vaut compose", &["vaut", "compose", &swap, &swap]);
    step("vaut invert", &["vaut", "invert", &inner]);
    step("vaut germ-eq", &["vaut", "germ-eq", &id, &id]);
    let cycle = step("vaut cycle", &["vaut", "cycle", &swap, &inner]).0;
    step("vaut reduce left", &["vaut", "reduce", &cycle, "--order", "leftmost"]);
    step("vaut reduce right", &["vaut", "reduce", &cycle, "--order", "rightmost"]);
    step("vaut mcl-search", &["vaut", "mcl-search", &swap, "--depth", "2"]);
    step("genus1 modulus-map", &["genus1", "modulus-map", "--lattice", "2,1;0,3"]);
    step("genus1 act", &["genus1", "act", "--matrix", "2,1;0,1", "--tau", "i"]);
    step("genus1 orbit", &["genus1", "orbit", "--target", "0.3+1.7i", "--eps", "1e-7"]);
    log
}
