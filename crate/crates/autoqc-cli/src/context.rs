//! Shared run state: resolved output directory, optional config file, seed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

use autoqc_core::report::RunReport;
use autoqc_core::{Error, Result};

/// Environment variable that overrides the default output directory.
pub const OUT_DIR_ENV: &str = "AUTOQC_OUT";

pub struct RunContext {
    out: PathBuf,
    cfg: serde_json::Value,
    pub seed: u64,
}

impl RunContext {
    pub fn new(config: Option<&Path>, out: Option<&Path>, seed: Option<u64>) -> Result<Self> {
        let cfg = match config {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
            None => serde_json::Value::Object(Default::default()),
        };
        let out = out
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        let mut ctx = RunContext { out, cfg, seed: 0 };
        ctx.seed = ctx.resolve(seed, "seed", 0)?;
        Ok(ctx)
    }

    /// Field from the config file, when present and well typed.
    pub fn lookup<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        match self.cfg.get(key) {
            None => Ok(None),
            Some(value) => serde_json::from_value(value.clone()).map(Some).map_err(|e| {
                Error::InvalidParameter(format!("config field '{key}': {e}"))
            }),
        }
    }

    /// Flag value if given, else the config field, else the default.
    pub fn resolve<T: DeserializeOwned>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.lookup(key)?.unwrap_or(default)),
        }
    }

    pub fn write_text(&self, name: &str, contents: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out)?;
        let path = self.out.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }

    /// Writes the command's report JSON, with an optional summary block
    /// holding the run's numeric results.
    pub fn write_report(
        &self,
        name: &str,
        report: &RunReport,
        summary: serde_json::Value,
    ) -> Result<()> {
        let mut value = serde_json::to_value(report)?;
        if !summary.is_null() {
            value
                .as_object_mut()
                .expect("reports serialize to objects")
                .insert("summary".into(), summary);
        }
        let text = serde_json::to_string_pretty(&value)?;
        self.write_text(name, &text)?;
        Ok(())
    }
}

/// Joins CSV rows under a header line with a trailing newline.
pub fn csv_document(header: &str, rows: &[String]) -> String {
    let mut doc = String::with_capacity(rows.len() * 64 + header.len() + 1);
    doc.push_str(header);
    doc.push('\n');
    for row in rows {
        doc.push_str(row);
        doc.push('\n');
    }
    doc
}
