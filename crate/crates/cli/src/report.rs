//! Run reports, exit codes and environment configuration.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use cptkit::cpt::{CountSummary, DEFAULT_ENUMERATION_CAP};
use cptkit::oracle::DEFAULT_SEARCH_CAP;
use cptkit::stretch::{DEFAULT_ANGLE_EPS, DEFAULT_SNAP_BITS};
use cptkit::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

/// A failed command: exit code plus diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Embedding(_) | Error::Input(_) | Error::CapExceeded { .. } => EXIT_INPUT,
            Error::Precondition(_) => EXIT_FALSE,
            Error::StretchFailed { .. } | Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type CmdResult<T> = Result<T, Failure>;

/// Caps and tolerances, overridable through the environment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Config {
    pub gl_cap: usize,
    pub search_cap: usize,
    pub angle_eps: f64,
    pub snap_bits: u32,
    pub seed: u64,
    pub iters: usize,
}

fn env_or<T: std::str::FromStr>(name: &str, default: T) -> CmdResult<T> {
    match std::env::var(name) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::input(format!("cannot parse {name}={s:?}"))),
        Err(_) => Ok(default),
    }
}

impl Config {
    pub fn from_env(seed: u64, iters: usize) -> CmdResult<Self> {
        let cfg = Config {
            gl_cap: env_or("CPT_GL_CAP", DEFAULT_ENUMERATION_CAP)?,
            search_cap: env_or("CPT_SEARCH_CAP", DEFAULT_SEARCH_CAP)?,
            angle_eps: env_or("CPT_ANGLE_EPS", DEFAULT_ANGLE_EPS)?,
            snap_bits: env_or("CPT_SNAP_BITS", DEFAULT_SNAP_BITS)?,
            seed,
            iters,
        };
        if !(1..=52).contains(&cfg.snap_bits) {
            return Err(Failure::input(format!("CPT_SNAP_BITS must lie in 1..=52, got {}", cfg.snap_bits)));
        }
        if !(cfg.angle_eps >= 0.0 && cfg.angle_eps < 0.5) {
            return Err(Failure::input(format!("CPT_ANGLE_EPS must lie in [0, 0.5), got {}", cfg.angle_eps)));
        }
        Ok(cfg)
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: &'static str,
    pub exit_code: i32,
    /// SHA-256 of every input file, keyed by role.
    pub inputs: BTreeMap<String, String>,
    pub config: Config,
    pub verdicts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountSummary>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn new(command: &str, config: Config, timings: bool) -> Self {
        RunReport {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION"),
            exit_code: EXIT_OK,
            inputs: BTreeMap::new(),
            config,
            verdicts: BTreeMap::new(),
            counts: None,
            diagnostics: Vec::new(),
            timings_ms: timings.then(BTreeMap::new),
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        self.verdicts.insert(key.to_string(), serde_json::to_value(value).expect("serializable verdict"));
    }

    /// Runs `f`, recording its wall time when timings are enabled.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.timings_ms {
            t.insert(stage.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    /// Reads an input file and records its digest.
    pub fn read_input(&mut self, role: &str, path: &Path) -> CmdResult<Vec<u8>> {
        let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.insert(role.to_string(), hex::encode(Sha256::digest(&bytes)));
        Ok(bytes)
    }
}
