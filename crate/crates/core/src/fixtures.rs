//! Checksummed data files: class polynomials and reference curves.
//!
//! The manifest compiled into the library is the trust anchor. Files read from a
//! directory at runtime are checked against it, so a tampered copy is rejected even
//! if its neighbouring manifest was edited too.

use std::path::PathBuf;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

const EMBEDDED: &[(&str, &str)] = &[
    ("cyclic17.txt", include_str!("../fixtures/cyclic17.txt")),
    ("dihedral11.txt", include_str!("../fixtures/dihedral11.txt")),
    ("curves.json", include_str!("../fixtures/curves.json")),
];

#[derive(Clone, Debug, Deserialize, serde::Serialize)]
pub struct ManifestEntry {
    pub id: String,
    pub file: String,
    pub sha256: String,
    pub description: String,
}

#[derive(Deserialize)]
struct Manifest {
    fixtures: Vec<ManifestEntry>,
}

pub fn manifest() -> Vec<ManifestEntry> {
    serde_json::from_str::<Manifest>(MANIFEST).expect("embedded manifest is valid JSON").fixtures
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Where fixture text comes from.
#[derive(Clone, Debug, Default)]
pub enum FixtureStore {
    #[default]
    Embedded,
    Dir(PathBuf),
}

impl FixtureStore {
    pub fn entry(id: &str) -> Result<ManifestEntry> {
        let m = manifest();
        m.iter().find(|e| e.id == id).cloned().ok_or_else(|| {
            let known: Vec<_> = m.iter().map(|e| e.id.as_str()).collect();
            Error::Fixture(format!("unknown fixture {id}; known: {}", known.join(", ")))
        })
    }

    /// Raw text of a fixture after the checksum check.
    pub fn text(&self, id: &str) -> Result<String> {
        let e = Self::entry(id)?;
        let text = match self {
            FixtureStore::Embedded => EMBEDDED
                .iter()
                .find(|(f, _)| *f == e.file)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| Error::Internal(format!("{} is not embedded", e.file)))?,
            FixtureStore::Dir(d) => {
                let path = d.join(&e.file);
                std::fs::read_to_string(&path)
                    .map_err(|err| Error::Fixture(format!("cannot read {}: {err}", path.display())))?
            }
        };
        let got = sha256_hex(text.as_bytes());
        if got != e.sha256 {
            return Err(Error::Fixture(format!("checksum mismatch for {id}: expected {}, got {got}", e.sha256)));
        }
        Ok(text)
    }
}
