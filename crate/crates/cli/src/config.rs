//! `key = value` config files.
//!
//! Each key is a long flag name without the leading dashes. The pairs are
//! spliced into the argument list directly after the subcommand, so any flag
//! given on the command line is parsed later and wins.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got {raw:?}", n + 1);
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.starts_with('-') || k.contains(char::is_whitespace) {
            bail!("config line {}: bad key {k:?}", n + 1);
        }
        if k == "config" {
            bail!("config line {}: nested config files are not supported", n + 1);
        }
        pairs.push((k.to_string(), v.to_string()));
    }
    Ok(pairs)
}

/// Remove `--config PATH` from `args` and splice the file's pairs in after
/// the subcommand.
pub fn expand(args: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().context("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path)).with_context(|| format!("reading config {path}"))?;
    let pairs = parse(&text)?;
    // the subcommand is the first argument after the program name that is
    // not a flag
    let Some(sub) = rest.iter().skip(1).position(|a| !a.starts_with('-')).map(|i| i + 2) else {
        return Ok(rest);
    };
    let mut spliced: Vec<String> = rest[..sub].to_vec();
    spliced.extend(pairs.into_iter().map(|(k, v)| format!("--{k}={v}")));
    spliced.extend_from_slice(&rest[sub..]);
    Ok(spliced)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let p = parse("# header\nr1 = 3\n\nalpha=0.5  # trailing\n").unwrap();
        assert_eq!(p, vec![("r1".into(), "3".into()), ("alpha".into(), "0.5".into())]);
        assert!(parse("r1 3").is_err());
        assert!(parse("--r1 = 3").is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = std::env::temp_dir().join(format!("chtri-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let f = dir.join("c.cfg");
        fs::write(&f, "r1 = 2\nr2 = 1.5\n").unwrap();
        let args: Vec<String> = ["chtri", "classify", "--config", f.to_str().unwrap(), "--r1", "3"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out = expand(args).unwrap();
        assert_eq!(out, vec!["chtri", "classify", "--r1=2", "--r2=1.5", "--r1", "3"]);
        fs::remove_dir_all(&dir).unwrap();
    }
}
