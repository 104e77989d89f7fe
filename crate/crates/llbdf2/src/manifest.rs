//! Manifest written next to every command's outputs.
//!
//! The manifest uses the config syntax: a `command` line, the resolved
//! parameters, and an `outputs` line listing the files the command wrote. For
//! `run` the parameter block is a complete config, so
//! `llbdf2 run --config out/manifest.cfg` reproduces the run.

use std::path::Path;

use crate::config::{parse_pairs, Pairs};
use crate::error::{CliError, Result};

pub const FILE_NAME: &str = "manifest.cfg";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub command: String,
    pub params: Pairs,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, params: Pairs) -> Self {
        Self {
            command: command.to_string(),
            params,
            outputs: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# llbdf2 {} manifest\ncommand = {}\n", self.command, self.command);
        for (k, v) in &self.params {
            s += &format!("{k} = {v}\n");
        }
        s += &format!("outputs = {}\n", self.outputs.join(", "));
        s
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut command = None;
        let mut outputs = Vec::new();
        let mut params = Vec::new();
        for (k, v) in parse_pairs(text, origin)? {
            match k.as_str() {
                "command" => command = Some(v),
                "outputs" => {
                    outputs = v
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect()
                }
                _ => params.push((k, v)),
            }
        }
        let command = command.ok_or_else(|| CliError::Invalid(format!("{origin}: manifest has no `command` line")))?;
        Ok(Self {
            command,
            params,
            outputs,
        })
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(FILE_NAME);
        std::fs::write(&path, self.to_text()).map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}
