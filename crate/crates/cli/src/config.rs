//! `--config <file>` support. The file is turned into flags placed right
//! after the subcommand, ahead of the user's own flags, so that the command
//! line overrides it.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// `true` / `false` values switch boolean flags.
pub fn parse(text: &str, path: &Path) -> Result<Vec<String>, String> {
    let mut flags = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected `key = value`", path.display(), lineno + 1))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim().trim_matches('"');
        if key.is_empty() || key == "config" {
            return Err(format!("{}:{}: invalid key", path.display(), lineno + 1));
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            v => {
                flags.push(format!("--{key}"));
                flags.push(v.to_string());
            }
        }
    }
    Ok(flags)
}

/// Returns `args` with the config file's flags spliced in after the
/// subcommand, or unchanged when no `--config` is given.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text =
        fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let flags = parse(&text, &path)?;

    // the subcommand is the first bare word, skipping `--config <file>`
    let mut at = None;
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy();
        if s == "--config" {
            i += 2;
            continue;
        }
        if !s.starts_with('-') {
            at = Some(i + 1);
            break;
        }
        i += 1;
    }
    let Some(at) = at else {
        return Ok(args);
    };
    let mut out = args[..at].to_vec();
    out.extend(flags.into_iter().map(OsString::from));
    out.extend_from_slice(&args[at..]);
    Ok(out)
}
