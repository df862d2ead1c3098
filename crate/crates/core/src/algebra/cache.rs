//! On-disk cache of class-sum structure constants and block idempotents.
//!
//! One JSON file per (group spec, p, d). The payload is stored as a string
//! together with its SHA-256; a file whose checksum, key or class list does
//! not match is ignored and later overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CentralAlgebra, GroupBlocks};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::perm::{PermGroup, Permutation};

const FORMAT: &str = "brauer-commuting-blocks";
const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: String,
    version: u32,
    code_version: String,
    checksum: String,
    payload: String,
}

#[derive(Serialize, Deserialize, PartialEq)]
struct Payload {
    group: String,
    p: u32,
    d: u32,
    modulus: Vec<u32>,
    class_reps: Vec<Permutation>,
    constants: Vec<(u32, u32, u32, u32)>,
    blocks: Vec<Vec<u32>>,
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Clone, Debug)]
pub struct BlockCache {
    dir: PathBuf,
}

impl BlockCache {
    pub fn new(dir: impl Into<PathBuf>) -> BlockCache {
        BlockCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File holding the entry for `(group_key, field)`.
    pub fn path_for(&self, group_key: &str, field: &Field) -> PathBuf {
        let key = format!(
            "{group_key}|{}|{}|{:?}|{FORMAT_VERSION}|{}",
            field.p(),
            field.d(),
            field.modulus(),
            env!("CARGO_PKG_VERSION")
        );
        self.dir.join(format!("{}.json", &sha256_hex(key.as_bytes())[..24]))
    }

    /// A cached entry for `group`, or `None` when absent, stale or corrupt.
    pub fn load(&self, group_key: &str, group: &PermGroup, field: &Field) -> Option<GroupBlocks> {
        let text = fs::read_to_string(self.path_for(group_key, field)).ok()?;
        let env: Envelope = serde_json::from_str(&text).ok()?;
        if env.format != FORMAT
            || env.version != FORMAT_VERSION
            || env.code_version != env!("CARGO_PKG_VERSION")
            || env.checksum != sha256_hex(env.payload.as_bytes())
        {
            return None;
        }
        let payload: Payload = serde_json::from_str(&env.payload).ok()?;
        if payload.group != group_key
            || payload.p != field.p()
            || payload.d != field.d()
            || payload.modulus != field.modulus()
        {
            return None;
        }
        let classes = group.conjugacy_classes();
        let reps: Vec<&Permutation> = classes.classes.iter().map(|c| &c.representative).collect();
        if reps.len() != payload.class_reps.len() || reps.iter().zip(&payload.class_reps).any(|(a, b)| *a != b) {
            return None;
        }
        let n = reps.len();
        let mut dense = vec![vec![vec![Fe::ZERO; n]; n]; n];
        for &(i, j, k, v) in &payload.constants {
            let (i, j, k) = (i as usize, j as usize, k as usize);
            if i >= n || j >= n || k >= n || v >= field.q() {
                return None;
            }
            dense[i][j][k] = Fe(v);
        }
        let identity = classes.class_of[group.index_of(&group.identity())?] as usize;
        let algebra = CentralAlgebra::from_dense(&dense, identity);
        let idempotents: Vec<Vec<Fe>> = payload
            .blocks
            .iter()
            .map(|b| b.iter().map(|&c| Fe(c)).collect())
            .collect();
        if idempotents.iter().any(|b| b.len() != n) {
            return None;
        }
        GroupBlocks::assemble(group.clone(), field.clone(), classes, algebra, idempotents).ok()
    }

    /// Writes an entry atomically (temporary file, then rename).
    pub fn store(&self, group_key: &str, blocks: &GroupBlocks) -> Result<PathBuf> {
        let field = blocks.field();
        let payload = Payload {
            group: group_key.to_string(),
            p: field.p(),
            d: field.d(),
            modulus: field.modulus().to_vec(),
            class_reps: blocks
                .classes()
                .classes
                .iter()
                .map(|c| c.representative.clone())
                .collect(),
            constants: blocks
                .algebra()
                .nonzero_constants()
                .map(|(i, j, k, c)| (i as u32, j as u32, k as u32, c.0))
                .collect(),
            blocks: blocks
                .blocks()
                .iter()
                .map(|b| b.coords.iter().map(|c| c.0).collect())
                .collect(),
        };
        let payload = serde_json::to_string(&payload).map_err(|e| Error::Cache(e.to_string()))?;
        let env = Envelope {
            format: FORMAT.into(),
            version: FORMAT_VERSION,
            code_version: env!("CARGO_PKG_VERSION").into(),
            checksum: sha256_hex(payload.as_bytes()),
            payload,
        };
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let path = self.path_for(group_key, field);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&env).map_err(|e| Error::Cache(e.to_string()))?).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(path)
    }

    /// Cached blocks if valid, else computes and stores them.
    pub fn get_or_compute(&self, group_key: &str, group: &PermGroup, field: &Field) -> Result<GroupBlocks> {
        if let Some(gb) = self.load(group_key, group, field) {
            return Ok(gb);
        }
        let gb = GroupBlocks::compute(group, field)?;
        self.store(group_key, &gb)?;
        Ok(gb)
    }
}
