//! Provenance record written next to every output.

use std::fs::File;
use std::io;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, inputs: Vec<InputDigest>) -> Self {
        RunManifest {
            command: command.to_owned(),
            arguments: std::env::args().skip(1).collect(),
            config,
            inputs,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

/// SHA-256 of a file, or of every file below a directory in name order
/// (each file's relative path is hashed before its bytes).
pub fn digest(path: &Path) -> io::Result<InputDigest> {
    let mut hasher = Sha256::new();
    if path.is_dir() {
        for entry in walkdir::WalkDir::new(path).sort_by_file_name() {
            let entry = entry.map_err(io::Error::other)?;
            if entry.file_type().is_file() {
                let rel = entry.path().strip_prefix(path).unwrap_or(entry.path());
                hasher.update(rel.to_string_lossy().as_bytes());
                hasher.update([0]);
                io::copy(&mut File::open(entry.path())?, &mut hasher)?;
            }
        }
    } else {
        io::copy(&mut File::open(path)?, &mut hasher)?;
    }
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(hasher.finalize()),
    })
}
