use std::path::Path;

use btrack_core::{Error, ExactRational, FieldConfig, Result};

use crate::args::Options;

/// Defaults, then the `BTRACK_CONFIG` file, then flags.
pub fn resolve(opts: &Options) -> Result<FieldConfig> {
    let mut cfg = FieldConfig::default();
    if let Some(path) = std::env::var_os("BTRACK_CONFIG") {
        apply_file(&mut cfg, Path::new(&path))?;
    }
    if let Some(t) = opts.truncation {
        cfg.truncation_order = t;
    }
    if let Some(p) = opts.precision {
        cfg.working_precision = p;
    }
    if let Some(c) = opts.cutoff {
        cfg.sequence_cutoff = c;
    }
    if let Some(t) = &opts.tol {
        cfg.st_tolerance = t.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn apply_file(cfg: &mut FieldConfig, path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| Error::InvalidConfig(format!("{}:{}: {why}", path.display(), i + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
        let value = value.trim();
        match key.trim() {
            "truncation" | "truncation_order" => {
                cfg.truncation_order = value.parse().map_err(|_| bad("not an integer"))?
            }
            "precision" | "working_precision" => {
                cfg.working_precision = value.parse().map_err(|_| bad("not an integer"))?
            }
            "cutoff" | "sequence_cutoff" => cfg.sequence_cutoff = value.parse().map_err(|_| bad("not an integer"))?,
            "tol" | "st_tolerance" => {
                cfg.st_tolerance = value.parse::<ExactRational>().map_err(|_| bad("not a number"))?
            }
            other => return Err(bad(&format!("unknown key `{other}`"))),
        }
    }
    Ok(())
}
