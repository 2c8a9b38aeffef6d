//! Golden fixtures: each `fixtures/NAME.args` holds `# exit CODE` and one
//! argument per line; `NAME.stdout` is the expected human output and
//! `NAME.stderr`, when present, the expected diagnostics.
//! `BTRACK_BLESS=1 cargo test -p btrack-cli --test golden` rewrites the
//! expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub struct Fixture {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn fixtures() -> Vec<Fixture> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let mut lines = text.lines();
            let exit = lines.next().and_then(|l| l.strip_prefix("# exit ")).expect("header").trim().parse().unwrap();
            Fixture {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                args: lines.map(str::to_string).collect(),
                exit,
            }
        })
        .collect()
}

pub fn btrack(args: &[String]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_btrack"))
        .args(args)
        .env_remove("BTRACK_CONFIG")
        .output()
        .expect("btrack runs");
    let text = |b: Vec<u8>| String::from_utf8(b).unwrap();
    (text(out.stdout), text(out.stderr), out.status.code().expect("exit code"))
}

fn compare_golden(name: &str, ext: &str, got: &str) -> Result<(), String> {
    let path = fixtures_dir().join(format!("{name}.{ext}"));
    if std::env::var_os("BTRACK_BLESS").is_some() {
        if got.is_empty() && ext != "stdout" {
            let _ = std::fs::remove_file(&path);
        } else {
            std::fs::write(&path, got).unwrap();
        }
    }
    let expected = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(_) if ext != "stdout" => String::new(),
        Err(e) => return Err(format!("{}: {e}", path.display())),
    };
    if got != expected {
        return Err(format!("{name}: {ext} differs\n--- expected\n{expected}--- got\n{got}"));
    }
    Ok(())
}

/// Compares human output byte for byte and validates the JSON form.
pub fn check(f: &Fixture) -> Result<(), String> {
    let (stdout, stderr, code) = btrack(&f.args);
    if code != f.exit {
        return Err(format!("{}: exit {code}, expected {}", f.name, f.exit));
    }
    compare_golden(&f.name, "stdout", &stdout)?;
    compare_golden(&f.name, "stderr", &stderr)?;
    let mut json_args = f.args.clone();
    json_args.push("--json".into());
    let (json, _, json_code) = btrack(&json_args);
    if json_code != f.exit {
        return Err(format!("{}: --json exit {json_code}, expected {}", f.name, f.exit));
    }
    let v: Value = serde_json::from_str(&json).map_err(|e| format!("{}: invalid JSON: {e}", f.name))?;
    validate_schema(&v).map_err(|e| format!("{}: {e}", f.name))?;
    agree(&stdout, &v).map_err(|e| format!("{}: {e}", f.name))
}

fn string_map(v: &Value, key: &str) -> Result<(), String> {
    match v.get(key) {
        Some(Value::Object(m)) if m.values().all(Value::is_string) => Ok(()),
        _ => Err(format!("`{key}` is not a map of strings")),
    }
}

fn validate_schema(v: &Value) -> Result<(), String> {
    if v.get("error").is_some() {
        for key in ["error", "message", "remedy"] {
            v.get(key).and_then(Value::as_str).ok_or(format!("error object lacks `{key}`"))?;
        }
        return Ok(());
    }
    v.get("operation").and_then(Value::as_str).ok_or("missing operation")?;
    v.get("verdict").and_then(Value::as_str).ok_or("missing verdict")?;
    for key in ["inputs", "values", "tolerances"] {
        string_map(v, key)?;
    }
    let probes = v.get("probes").and_then(Value::as_array).ok_or("missing probes")?;
    for p in probes {
        if !p.as_object().is_some_and(|m| m.values().all(Value::is_string)) {
            return Err("probe is not a map of strings".into());
        }
    }
    Ok(())
}

/// Every `key  value` row of the human table matches the JSON value.
fn agree(stdout: &str, v: &Value) -> Result<(), String> {
    let Some(Value::Object(values)) = v.get("values") else { return Ok(()) };
    for line in stdout.lines() {
        let Some((key, rest)) = line.split_once("  ") else { continue };
        if let Some(Value::String(json)) = values.get(key) {
            if rest.trim_start() != json {
                return Err(format!("`{key}`: human `{}` vs json `{json}`", rest.trim_start()));
            }
        }
    }
    Ok(())
}
