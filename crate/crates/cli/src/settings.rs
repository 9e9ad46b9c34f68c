//! Option defaults: command-line flag, then config file, then environment,
//! then built-in values.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Eager,
    Lazy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Surface,
    Raw,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub engine: Option<Engine>,
    pub format: Option<Format>,
    pub max: Option<usize>,
    pub max_len: Option<usize>,
}

pub fn load(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("config {}", path.display()))
}

#[derive(Debug)]
pub struct Settings {
    pub engine: Engine,
    pub format: Format,
    pub max: usize,
    pub max_len: usize,
}

impl Settings {
    pub fn resolve(
        engine: Option<Engine>,
        format: Option<Format>,
        max: Option<usize>,
        max_len: Option<usize>,
        file: Option<&ConfigFile>,
        env_engine: Option<&str>,
    ) -> Result<Settings> {
        let env = match env_engine {
            None | Some("") => None,
            Some("lazy") => Some(Engine::Lazy),
            Some("eager") => Some(Engine::Eager),
            Some(other) => bail!("REDUP_ENGINE must be `lazy` or `eager`, got {other:?}"),
        };
        let f = |pick: fn(&ConfigFile) -> Option<_>| file.and_then(pick);
        Ok(Settings {
            engine: engine.or(file.and_then(|c| c.engine)).or(env).unwrap_or(Engine::Eager),
            format: format.or(file.and_then(|c| c.format)).unwrap_or(Format::Surface),
            max: max.or(f(|c| c.max)).unwrap_or(1000),
            max_len: max_len.or(f(|c| c.max_len)).unwrap_or(40),
        })
    }
}
