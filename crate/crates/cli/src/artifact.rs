//! Run directories and manifests.
//!
//! Every invocation gets its own directory under the configured output
//! root — timestamped by default, a fixed name under `--no-timestamp` so
//! reruns land on byte-identical paths. All artifacts funnel through
//! [`RunDir::write_artifact`], which records size and SHA-256 digest; the
//! manifest is written last so its presence certifies the listed files
//! were flushed. A `latest` pointer file in the root names the most
//! recent run directory for scripting.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const LATEST_POINTER: &str = "latest";

#[derive(Debug, Clone, Serialize)]
pub struct ArtifactRecord {
    /// Path relative to the run directory, forward slashes.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema_version: &'static str,
    tool: &'static str,
    tool_version: &'static str,
    command: &'a str,
    /// "complete", "incomplete" (sweep aborted part-way), or "failed".
    status: &'a str,
    /// RFC 3339 UTC start time; empty under `--no-timestamp`.
    timestamp_utc: &'a str,
    /// Wall-clock duration; zero under `--no-timestamp`.
    duration_ms: u64,
    config: &'a serde_json::Value,
    artifacts: &'a [ArtifactRecord],
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Debug)]
pub struct RunDir {
    root: PathBuf,
    path: PathBuf,
    name: String,
    command: String,
    no_timestamp: bool,
    timestamp_utc: String,
    started: Instant,
    artifacts: Vec<ArtifactRecord>,
}

impl RunDir {
    /// Creates `<root>/<command>-<UTC stamp>` (appending `-2`, `-3`, … on
    /// collision) or reuses `<root>/<command>` under `--no-timestamp`.
    pub fn create(root: &Path, command: &str, no_timestamp: bool) -> io::Result<RunDir> {
        fs::create_dir_all(root)?;
        let (name, timestamp_utc) = if no_timestamp {
            let name = command.to_string();
            fs::create_dir_all(root.join(&name))?;
            (name, String::new())
        } else {
            let now = chrono::Utc::now();
            let stamp = now.format("%Y%m%dT%H%M%SZ").to_string();
            let base = format!("{command}-{stamp}");
            let mut name = base.clone();
            let mut k = 2u32;
            loop {
                match fs::create_dir(root.join(&name)) {
                    Ok(()) => break,
                    Err(e) if e.kind() == io::ErrorKind::AlreadyExists && k <= 1000 => {
                        name = format!("{base}-{k}");
                        k += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
            (
                name,
                now.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            )
        };
        let path = root.join(&name);
        Ok(RunDir {
            root: root.to_path_buf(),
            path,
            name,
            command: command.to_string(),
            no_timestamp,
            timestamp_utc,
            started: Instant::now(),
            artifacts: Vec::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The RFC 3339 start stamp, or `None` under `--no-timestamp` —
    /// charts use this for their generation corner note.
    pub fn timestamp(&self) -> Option<&str> {
        if self.no_timestamp {
            None
        } else {
            Some(&self.timestamp_utc)
        }
    }

    /// Writes one artifact (creating case sub-directories as needed) and
    /// records its size and SHA-256.
    pub fn write_artifact(&mut self, rel: &str, bytes: &[u8]) -> io::Result<()> {
        let full = self.path.join(rel);
        if let Some(parent) = full.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&full, bytes)?;
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        let digest = hasher.finalize();
        let mut sha256 = String::with_capacity(64);
        for byte in digest {
            use std::fmt::Write;
            write!(sha256, "{byte:02x}").expect("writing to a String cannot fail");
        }
        self.artifacts.push(ArtifactRecord {
            path: rel.to_string(),
            bytes: bytes.len() as u64,
            sha256,
        });
        Ok(())
    }

    pub fn artifacts(&self) -> &[ArtifactRecord] {
        &self.artifacts
    }

    /// Writes the manifest (always the last file of the run) and updates
    /// the `latest` pointer. Returns the manifest path.
    pub fn finish(
        &self,
        status: &str,
        config: &serde_json::Value,
        error: Option<&str>,
    ) -> io::Result<PathBuf> {
        let duration_ms = if self.no_timestamp {
            0
        } else {
            self.started.elapsed().as_millis() as u64
        };
        let manifest = Manifest {
            schema_version: "1",
            tool: "quasicryst",
            tool_version: env!("CARGO_PKG_VERSION"),
            command: &self.command,
            status,
            timestamp_utc: &self.timestamp_utc,
            duration_ms,
            config,
            artifacts: &self.artifacts,
            error,
        };
        let mut text =
            serde_json::to_string_pretty(&manifest).expect("manifest serializes to JSON");
        text.push('\n');
        let manifest_path = self.path.join(MANIFEST_FILE);
        fs::write(&manifest_path, text)?;
        fs::write(self.root.join(LATEST_POINTER), format!("{}\n", self.name))?;
        Ok(manifest_path)
    }
}
