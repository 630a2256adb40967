//! Run manifests: what was run, with which inputs and seeds, and how long it
//! took. Timestamps live here only, so data outputs stay byte-identical
//! across reruns.

use std::io::Write;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use netcoherence::rng::RNG_ALGORITHM;
use netcoherence::GenSpec;
use serde::Serialize;

use crate::io::STDIO;

/// Where a graph came from and what ingestion did to it.
#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    /// Comment lines from the file header, e.g. a generator description.
    pub header: Vec<String>,
    pub vertices_read: usize,
    pub edges_read: usize,
    pub vertices_used: usize,
    pub edges_used: usize,
    pub dropped_vertices: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command_line: Vec<String>,
    pub subcommand: &'static str,
    pub rng: &'static str,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GenSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    /// Subcommand-specific settings such as a sweep plan or simulator config.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<serde_json::Value>,
    pub outputs: Vec<String>,
    pub started_unix_seconds: f64,
    pub wall_clock_seconds: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunManifest {
    pub fn start(subcommand: &'static str) -> RunManifest {
        let epoch = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0.0, |d| d.as_secs_f64());
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command_line: std::env::args().collect(),
            subcommand,
            rng: RNG_ALGORITHM,
            seeds: Vec::new(),
            generator: None,
            input: None,
            parameters: None,
            outputs: Vec::new(),
            started_unix_seconds: epoch,
            wall_clock_seconds: 0.0,
            started: Some(Instant::now()),
        }
    }

    /// Manifest location for a data output: `<out>.manifest.json`, or
    /// standard error when the data goes to standard output.
    pub fn path_for(out: &str) -> String {
        if out == STDIO {
            "stderr".to_string()
        } else {
            format!("{out}.manifest.json")
        }
    }

    /// Stamps the elapsed time and writes the manifest next to `out`.
    pub fn finish(mut self, out: &str) -> std::io::Result<()> {
        self.wall_clock_seconds = self.started.map_or(0.0, |t| t.elapsed().as_secs_f64());
        if out != STDIO {
            self.outputs.push(out.to_string());
        }
        let json = serde_json::to_string_pretty(&self).expect("manifest serializes");
        if out == STDIO {
            let mut err = std::io::stderr().lock();
            writeln!(err, "{json}")
        } else {
            std::fs::write(Self::path_for(out), json + "\n")
        }
    }
}
