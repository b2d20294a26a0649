//! Optional `key = value` configuration file. Flags given on the command
//! line take precedence over anything set here.

use std::path::{Path, PathBuf};

use sumdiff_core::{Error, Limits, Result};

#[derive(Debug, Clone, Default)]
pub struct Config {
    pub limits: Limits,
    pub threads: Option<usize>,
    /// Base directory for relative `--out` paths.
    pub output_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidParameter(format!(
                    "config line {}: expected key = value, got {raw:?}",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "threads" => {
                    let n = value.parse().map_err(|_| {
                        Error::InvalidParameter(format!("threads expects a positive integer, got {value:?}"))
                    })?;
                    cfg.threads = Some(n);
                }
                "output_dir" => cfg.output_dir = Some(PathBuf::from(value)),
                _ => cfg.limits.set(key, value)?,
            }
        }
        Ok(cfg)
    }

    pub fn resolve_output(&self, path: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }
}
