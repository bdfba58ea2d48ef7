//! `--config FILE` support: `key = value` lines become `--key=value` flags
//! placed right after the subcommand, ahead of the user's own flags, so the
//! command line wins.

use std::ffi::OsString;
use std::path::PathBuf;

use crate::CliError;

pub fn parse(text: &str) -> Result<Vec<OsString>, CliError> {
    let mut flags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config line {}: expected key = value",
                i + 1
            )));
        };
        let key = key.trim().trim_start_matches('-');
        let value = value.trim();
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        match value {
            "true" => flags.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => flags.push(OsString::from(format!("--{key}={value}"))),
        }
    }
    Ok(flags)
}

pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut files = Vec::new();
    let mut it = argv.into_iter();
    if let Some(prog) = it.next() {
        rest.push(prog);
    }
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            match it.next() {
                Some(p) => files.push(PathBuf::from(p)),
                None => return Err(CliError::Usage("--config needs a file".into())),
            }
        } else if let Some(p) = s.strip_prefix("--config=") {
            files.push(PathBuf::from(p));
        } else {
            rest.push(a);
        }
    }
    if files.is_empty() {
        return Ok(rest);
    }
    let mut injected = Vec::new();
    for path in files {
        let text =
            std::fs::read_to_string(&path).map_err(|source| CliError::Io { path, source })?;
        injected.extend(parse(&text)?);
    }
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 2)
        .unwrap_or(rest.len());
    rest.splice(at..at, injected);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_become_flags() {
        let f =
            parse("# cavity\nL = 2\nmassless = true\nbeta=false\ntheta = -0.5  # twist\n").unwrap();
        assert_eq!(f, vec!["--L=2", "--massless", "--theta=-0.5"]);
        assert!(parse("L 2").is_err());
    }

    #[test]
    fn injected_after_subcommand() {
        let dir = std::env::temp_dir().join(format!("casimir-config-{}", std::process::id()));
        std::fs::write(&dir, "L = 3\n").unwrap();
        let argv: Vec<OsString> = [
            "casimir",
            "pressure",
            "--config",
            dir.to_str().unwrap(),
            "--L",
            "2",
        ]
        .iter()
        .map(OsString::from)
        .collect();
        let out = expand(argv).unwrap();
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(out, vec!["casimir", "pressure", "--L=3", "--L", "2"]);
    }
}
