//! Preset files: INI sections named after subcommands, keys named after
//! long flags. Keys outside any section, or in `[output]`, apply to every
//! subcommand.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ini::Ini;

const GLOBAL_KEYS: [&str; 2] = ["out", "format"];

/// Arguments contributed by a preset, split into global and subcommand flags.
#[derive(Debug, Default, PartialEq)]
pub struct PresetArgs {
    pub global: Vec<OsString>,
    pub command: Vec<OsString>,
}

pub fn load(path: &Path, command: &str) -> Result<PresetArgs> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading preset {}", path.display()))?;
    parse(&text, command).with_context(|| format!("in preset {}", path.display()))
}

pub fn parse(text: &str, command: &str) -> Result<PresetArgs> {
    let ini = Ini::load_from_str(text)?;
    let mut out = PresetArgs::default();
    for (section, props) in ini.iter() {
        let applies = match section {
            None | Some("output") => true,
            Some(s) => s == command,
        };
        if !applies {
            continue;
        }
        for (key, value) in props.iter() {
            let key = key.trim().replace('_', "-");
            if key == "preset" {
                bail!("presets cannot include other presets");
            }
            let value: String = value
                .split(',')
                .map(str::trim)
                .collect::<Vec<_>>()
                .join(",");
            let flag = OsString::from(format!("--{key}={value}"));
            if GLOBAL_KEYS.contains(&key.as_str()) {
                out.global.push(flag);
            } else if section.is_none() || section == Some("output") {
                bail!("key '{key}' must sit in a [{command}] section");
            } else {
                out.command.push(flag);
            }
        }
    }
    Ok(out)
}

/// Splices preset flags into a command line: globals right after the
/// program name, subcommand flags right after the subcommand, so that every
/// flag given explicitly comes later and wins.
pub fn splice(argv: &[OsString], command: &str, preset: PresetArgs) -> Vec<OsString> {
    let pos = argv
        .iter()
        .position(|a| a == command)
        .unwrap_or(argv.len().saturating_sub(1));
    let mut out = Vec::with_capacity(argv.len() + preset.global.len() + preset.command.len());
    out.extend(argv.first().cloned());
    out.extend(preset.global);
    out.extend(argv[1..=pos].iter().cloned());
    out.extend(preset.command);
    out.extend(argv[pos + 1..].iter().cloned());
    out
}
