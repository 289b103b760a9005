//! Run configuration: flat `key = value` text, overridable field by field.

use crate::error::{Error, Result};
use crate::modeops::DENSE_EIGEN_CAP;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "URFOCK_CONFIG";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub n_max: usize,
    /// grid extent `L` (points span `[−L/2, L/2]` per axis)
    pub grid_l: f64,
    pub grid_h: f64,
    /// multiplies every check tolerance
    pub tol: f64,
    pub dense_cap: usize,
    pub objects: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_max: 6,
            grid_l: 8.0,
            grid_h: 0.05,
            tol: 1.0,
            dense_cap: DENSE_EIGEN_CAP,
            objects: 2,
            seed: 7,
            out: None,
        }
    }
}

impl RunConfig {
    /// Parses `key = value` lines over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by [`CONFIG_ENV`], or the defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::from_file(Path::new(&p)),
            None => Ok(RunConfig::default()),
        }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Config(format!("bad value for {key}: `{v}`")))
        }
        match key {
            "n_max" => self.n_max = num(key, value)?,
            "grid_l" => self.grid_l = num(key, value)?,
            "grid_h" => self.grid_h = num(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "dense_cap" => self.dense_cap = num(key, value)?,
            "objects" => self.objects = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.grid_l > 0.0 && self.grid_l.is_finite() && self.grid_h > 0.0 && self.grid_h.is_finite()) {
            return Err(Error::Config("grid extent and step must be positive".into()));
        }
        if self.dense_cap == 0 || self.objects == 0 {
            return Err(Error::Config("caps and object count must be positive".into()));
        }
        if self.n_max > crate::fock::N_MAX_CAP {
            return Err(Error::Config(format!("n_max {} above cap {}", self.n_max, crate::fock::N_MAX_CAP)));
        }
        Ok(())
    }
}
