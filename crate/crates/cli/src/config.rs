//! `key = value` configuration files. Each key names a long flag of the
//! subcommand; values are spliced into the argument list unless the flag was
//! given explicitly.

use std::ffi::OsString;

use clap::{ArgAction, Command};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Blank lines and lines starting with `#` are skipped; keys accept `_` in
/// place of `-`.
pub fn parse_config(text: &str) -> CliResult<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::usage(format!("config line {}: empty key", i + 1)));
        }
        out.push(Entry { key, value: v.trim().to_string(), line: i + 1 });
    }
    Ok(out)
}

/// Returns `args` with config-file values inserted after the subcommand name.
/// Keys accepted by another subcommand only are skipped; keys no subcommand
/// accepts are an error.
pub fn inject_config(cmd: &Command, args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let strs: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(sub_pos) = strs.iter().skip(1).position(|a| !a.starts_with('-')).map(|p| p + 1) else {
        return Ok(args);
    };
    let Some(sub) = cmd.find_subcommand(&strs[sub_pos]) else {
        return Ok(args);
    };
    let tail = &strs[sub_pos + 1..];
    let path = tail.iter().enumerate().find_map(|(i, a)| {
        if a == "--config" {
            tail.get(i + 1).cloned()
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        }
    });
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;

    let mut injected: Vec<OsString> = Vec::new();
    for e in parse_config(&text)? {
        if e.key == "config" {
            return Err(CliError::usage(format!("{path}:{}: config files cannot nest", e.line)));
        }
        let Some(arg) = sub.get_arguments().find(|a| {
            a.get_long() == Some(e.key.as_str())
                || a.get_all_aliases().is_some_and(|al| al.contains(&e.key.as_str()))
        }) else {
            let known = cmd.get_subcommands().any(|s| {
                s.get_arguments().any(|a| a.get_long() == Some(e.key.as_str()))
            });
            if known {
                continue;
            }
            return Err(CliError::usage(format!("{path}:{}: unknown key {:?}", e.line, e.key)));
        };
        let mut names: Vec<&str> = arg.get_long().into_iter().collect();
        names.extend(arg.get_all_aliases().unwrap_or_default());
        let given = tail.iter().any(|a| {
            names.iter().any(|n| {
                a.strip_prefix("--").is_some_and(|rest| rest == *n || rest.starts_with(&format!("{n}=")))
            })
        });
        if given {
            continue;
        }
        let long = format!("--{}", arg.get_long().expect("config keys map to long flags"));
        match arg.get_action() {
            ArgAction::SetTrue => match e.value.as_str() {
                "true" | "yes" | "1" => injected.push(long.into()),
                "false" | "no" | "0" => {}
                other => {
                    return Err(CliError::usage(format!(
                        "{path}:{}: {} expects true or false, got {other:?}",
                        e.line, e.key
                    )))
                }
            },
            _ => injected.push(format!("{long}={}", e.value).into()),
        }
    }
    let mut out = args;
    out.splice(sub_pos + 1..sub_pos + 1, injected);
    Ok(out)
}
