//! `key = value` configuration files, spliced into the argument list so
//! that explicit flags override them.

use std::ffi::OsString;
use std::fs;

use crate::error::{Error, ParseErrorKind, Result};

/// Turns each `key = value` line into `--key value`. Blank lines and lines
/// starting with `#` are skipped; `true` gives a bare `--key` and `false`
/// drops the key.
pub fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .filter(|(k, _)| !k.is_empty() && !k.starts_with('-') && !k.contains(char::is_whitespace))
            .ok_or(Error::Parse { line: i + 1, kind: ParseErrorKind::MalformedLine })?;
        match value {
            "false" => {}
            "true" => args.push(format!("--{key}")),
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

/// Removes `--config FILE` (or `--config=FILE`) from `args` and inserts the
/// file's flags right after the subcommand.
pub fn splice_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            let file = iter.next().ok_or_else(|| Error::InvalidParameter("--config needs a file".into()))?;
            path = Some(file);
        } else if let Some(file) = text.strip_prefix("--config=") {
            path = Some(OsString::from(file));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let flags = parse_config(&fs::read_to_string(&path)?)?;
    let at = rest.len().min(2);
    rest.splice(at..at, flags.into_iter().map(OsString::from));
    Ok(rest)
}
