//! Flat `key=value` preset files. Keys are long flag names without the
//! dashes; blank lines and `#` comments are skipped. Flags given on the
//! command line win over the file.

use std::fs;

use clap::{ArgAction, Command};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("config line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("config key `{0}` is not a flag of this command")]
    Unknown(String),
    #[error("config key `{key}`: expected true or false, got `{value}`")]
    Bool { key: String, value: String },
}

pub fn parse(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: k + 1 })?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(ConfigError::Syntax { line: k + 1 });
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Long flag → whether it takes a value, for the root and each subcommand
/// named on the command line.
fn known_flags(cmd: &mut Command, argv: &[String]) -> Vec<(String, bool)> {
    cmd.build();
    let mut flags = Vec::new();
    let mut cur = cmd.clone();
    let mut tokens = argv.iter().skip(1);
    loop {
        for a in cur.get_arguments() {
            if let Some(l) = a.get_long() {
                let takes = !matches!(a.get_action(), ArgAction::SetTrue | ArgAction::SetFalse | ArgAction::Count);
                flags.push((l.to_string(), takes));
            }
        }
        let next = tokens.by_ref().find_map(|t| cur.find_subcommand(t).cloned());
        match next {
            Some(sub) => cur = sub,
            None => break,
        }
    }
    flags
}

/// Appends the file's presets for every flag absent from `argv`.
pub fn apply(mut argv: Vec<String>, cmd: &mut Command) -> Result<Vec<String>, ConfigError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path).map_err(|source| ConfigError::Read { path: path.clone(), source })?;
    let pairs = parse(&text)?;
    let flags = known_flags(cmd, &argv);
    let mut extra = Vec::new();
    for (key, value) in pairs {
        let Some(&(_, takes)) = flags.iter().find(|f| f.0 == key) else {
            return Err(ConfigError::Unknown(key));
        };
        let long = format!("--{key}");
        let given = argv.iter().any(|a| *a == long || a.starts_with(&format!("{long}=")));
        if given || key == "config" {
            continue;
        }
        if takes {
            extra.push(format!("{long}={value}"));
        } else {
            match value.as_str() {
                "true" => extra.push(long),
                "false" => {}
                _ => return Err(ConfigError::Bool { key, value }),
            }
        }
    }
    argv.extend(extra);
    Ok(argv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lines() {
        let p = parse("# preset\nseed = 7\n\n--tol=1e-6\n").unwrap();
        assert_eq!(p, vec![("seed".into(), "7".into()), ("tol".into(), "1e-6".into())]);
        assert!(parse("seed 7").is_err());
        assert!(parse("=3").is_err());
    }
}
