//! `key = value` configuration files for the command line. Each entry
//! becomes a `--key value` flag placed ahead of the user's own flags, so
//! anything given on the command line wins.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{Error, Result};

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; a value of `true` becomes a bare flag and `false` drops it.
pub fn parse_config(text: &str, path: &Path) -> Result<Vec<OsString>> {
    let mut args = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { path: path.to_owned(), line: k + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(err(format!("invalid key '{key}'")));
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            "true" => args.push(flag.into()),
            "false" => {}
            "" => return Err(err(format!("missing value for '{key}'"))),
            v => {
                args.push(flag.into());
                args.push(v.into());
            }
        }
    }
    Ok(args)
}

/// Removes `--config <path>` / `--config=<path>` from `argv` and splices the
/// file's flags in right after the subcommand name.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut config = None;
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            match iter.next() {
                Some(path) => config = Some(path),
                // leave it for the parser to report
                None => rest.push(arg),
            }
        } else if let Some(path) = text.strip_prefix("--config=") {
            config = Some(path.into());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let injected = parse_config(&text, path)?;
    // argv[0] is the program, argv[1] the subcommand
    let at = rest.len().min(2);
    rest.splice(at..at, injected);
    Ok(rest)
}
