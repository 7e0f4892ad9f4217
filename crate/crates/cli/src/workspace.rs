//! Content-addressed object store with an index file.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::failure::{Failure, Outcome};

pub const INDEX_SCHEMA: &str = "index/1";

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Index {
    pub schema: String,
    pub objects: BTreeMap<String, IndexEntry>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct IndexEntry {
    pub schema: String,
    pub producers: BTreeSet<String>,
}

pub struct Workspace {
    root: PathBuf,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// The `schema` tag of a JSON document, if it has one.
pub fn schema_of(text: &str) -> Option<String> {
    let v: serde_json::Value = serde_json::from_str(text).ok()?;
    v.get("schema")?.as_str().map(str::to_owned)
}

impl Workspace {
    pub fn open(root: &Path) -> Outcome<Self> {
        fs::create_dir_all(root.join("objects"))?;
        Ok(Workspace { root: root.to_path_buf() })
    }

    fn index_path(&self) -> PathBuf {
        self.root.join("index.json")
    }

    pub fn object_path(&self, hash: &str) -> PathBuf {
        self.root.join("objects").join(format!("{hash}.json"))
    }

    pub fn index(&self) -> Outcome<Index> {
        let path = self.index_path();
        if !path.exists() {
            return Ok(Index { schema: INDEX_SCHEMA.into(), objects: BTreeMap::new() });
        }
        let idx: Index = serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Failure::Core(surface_tower::Error::Schema(format!("index.json: {e}"))))?;
        if idx.schema != INDEX_SCHEMA {
            return Err(Failure::Core(surface_tower::Error::Schema(format!("index.json has schema {}", idx.schema))));
        }
        Ok(idx)
    }

    /// Stores a document and returns its hash.
    pub fn put(&self, text: &str, producer: &str) -> Outcome<String> {
        let hash = digest(text);
        let path = self.object_path(&hash);
        if !path.exists() {
            fs::write(&path, text)?;
        }
        let mut idx = self.index()?;
        let entry = idx.objects.entry(hash.clone()).or_default();
        entry.schema = schema_of(text).unwrap_or_default();
        entry.producers.insert(producer.to_string());
        let mut out = serde_json::to_string_pretty(&idx).expect("plain index");
        out.push('\n');
        fs::write(self.index_path(), out)?;
        Ok(hash)
    }

    /// A path to an existing file, or a hash (prefix) of a stored object.
    pub fn read(&self, reference: &str) -> Outcome<String> {
        let p = Path::new(reference);
        if p.is_file() {
            return Ok(fs::read_to_string(p)?);
        }
        let prefix = reference.trim_start_matches('@');
        if prefix.len() >= 6 && prefix.chars().all(|c| c.is_ascii_hexdigit()) {
            let idx = self.index()?;
            let hits: Vec<&String> = idx.objects.keys().filter(|h| h.starts_with(prefix)).collect();
            match hits.as_slice() {
                [one] => return Ok(fs::read_to_string(self.object_path(one))?),
                [] => {}
                _ => return Err(Failure::Argument(format!("hash prefix {prefix} is ambiguous"))),
            }
        }
        Err(Failure::NotFound(format!("no file or stored object named {reference}")))
    }
}
