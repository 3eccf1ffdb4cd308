//! The run manifest: every artifact a run produced, with a content hash,
//! plus the fully resolved configuration that produced it. The manifest is
//! the only output allowed to carry a timestamp; everything else must be
//! byte-identical across reruns with the same config and inputs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use mesotext_core::export::write_atomic;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    /// Seconds since the Unix epoch at the time of the build.
    pub created: u64,
    pub config: RunConfig,
    pub documents: Vec<DocumentStatus>,
    /// Output path relative to the run directory, mapped to the sha256 of
    /// the file contents. Sorted by construction.
    pub files: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocumentStatus {
    pub id: String,
    pub path: PathBuf,
    /// "ok" or the error that stopped this document.
    pub status: String,
}

impl Manifest {
    pub fn new(config: RunConfig) -> Self {
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Manifest {
            created,
            config,
            documents: Vec::new(),
            files: BTreeMap::new(),
        }
    }

    /// Loads the manifest of a previous build, or explains what to run.
    pub fn load(output: &Path) -> Result<Self> {
        let path = output.join(MANIFEST_NAME);
        if !path.is_file() {
            bail!(
                "no manifest at {}; run `mesotext build` first to produce the networks",
                path.display()
            );
        }
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Document ids that built cleanly, in corpus order.
    pub fn ok_documents(&self) -> Vec<String> {
        self.documents
            .iter()
            .filter(|d| d.status == "ok")
            .map(|d| d.id.clone())
            .collect()
    }

    pub fn save(&self, output: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        write_atomic(&output.join(MANIFEST_NAME), text.as_bytes())?;
        Ok(())
    }
}

/// Writes `contents` under the run directory and records its hash.
/// `rel` is the manifest key, always with forward slashes.
pub fn write_tracked(
    manifest: &mut Manifest,
    output: &Path,
    rel: &str,
    contents: &[u8],
) -> Result<()> {
    let path = output.join(rel);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    write_atomic(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    manifest
        .files
        .insert(rel.to_string(), hex_digest(contents));
    Ok(())
}

pub fn hex_digest(contents: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(contents);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Seed for one document's null realization: mixes the run seed with the
/// document id and class tag, so adding or reordering corpus files never
/// changes another document's shuffle.
pub fn class_seed(base: u64, doc_id: &str, class_tag: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base.to_le_bytes());
    hasher.update(doc_id.as_bytes());
    hasher.update([0u8]);
    hasher.update(class_tag.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("sha256 yields 32 bytes"))
}
