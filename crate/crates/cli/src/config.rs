//! Optional `key=value` run files. Each key names a long flag of the chosen
//! subcommand; flags on the command line take precedence.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{config, CliResult};

/// Parsed `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config(format!("config line {}: expected key=value, got `{raw}`", i + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(config(format!("config line {}: empty key", i + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Removes `--config FILE` from `args` and appends the file's settings for
/// every flag the command line does not already set.
pub fn merge_config_args(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy().into_owned();
        if s == "--config" {
            path = Some(it.next().ok_or_else(|| config("--config needs a file"))?);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| config(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let given: Vec<String> = rest
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    for (k, v) in parse_config(&text)? {
        if given.iter().any(|g| *g == k) {
            continue;
        }
        match v.as_str() {
            "true" => rest.push(format!("--{k}").into()),
            "false" => {}
            _ => rest.push(format!("--{k}={v}").into()),
        }
    }
    Ok(rest)
}
