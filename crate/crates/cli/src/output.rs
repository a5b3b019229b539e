use std::fs::File;
use std::io::{self, BufWriter, LineWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;

/// Sidecar written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub subcommand: &'a str,
    pub params: &'a P,
    pub seed: Option<u64>,
    pub version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub outputs: Vec<PathBuf>,
}

impl<'a, P: Serialize> RunManifest<'a, P> {
    pub fn new(subcommand: &'a str, params: &'a P, seed: Option<u64>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self { subcommand, params, seed, version: env!("CARGO_PKG_VERSION"), timestamp, outputs: Vec::new() }
    }

    /// Writes `<first output>.manifest.json`; does nothing when every output went to stdout.
    pub fn write(&self) -> Result<()> {
        let Some(first) = self.outputs.first() else { return Ok(()) };
        let path = manifest_path(first);
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Line-buffered sink, so an interrupted JSONL stream still ends on a whole record.
pub fn open_lines(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Box::new(LineWriter::new(f))
        }
        None => Box::new(LineWriter::new(io::stdout())),
    })
}

pub fn write_all(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            w.write_all(body.as_bytes())?;
            w.flush()?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
