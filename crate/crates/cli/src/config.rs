//! `key = value` configuration with flag > environment > file > default precedence.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use mills_core::exactnum::parse_rational;
use mills_core::{Error, Result};
use num_rational::BigRational;

pub const CACHE_ENV: &str = "MILLS_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".mills-cache";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    /// Decimals requested from digit certification.
    pub digits: usize,
    /// Root enclosure width for `pisot root`.
    pub eps: BigRational,
    pub candidate_cap: u64,
    pub backtrack_limit: u64,
    pub cache_dir: PathBuf,
    /// 0 leaves the thread pool at its default size.
    pub threads: usize,
    pub seq: Option<String>,
    pub horizon: usize,
    pub depth: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            digits: 30,
            eps: BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(25)),
            candidate_cap: 10_000,
            backtrack_limit: 10_000,
            cache_dir: PathBuf::from(DEFAULT_CACHE_DIR),
            threads: 0,
            seq: None,
            horizon: 30,
            depth: 6,
        }
    }
}

const KEYS: [&str; 9] = ["digits", "eps", "candidate_cap", "backtrack_limit", "cache_dir", "threads", "seq", "horizon", "depth"];

fn positive<T: std::str::FromStr + PartialEq + Default>(line: usize, key: &str, v: &str) -> Result<T> {
    match v.parse::<T>() {
        Ok(x) if x != T::default() => Ok(x),
        _ => Err(Error::Parse { line, message: format!("`{key}` must be a positive integer, got {v:?}") }),
    }
}

impl CliConfig {
    /// Apply a config file's settings over the defaults. A relative `seq`
    /// path is resolved against the file's directory.
    pub fn from_text(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut c = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| Error::Parse { line, message: format!("expected `key = value`, got {body:?}") })?;
            let (k, v) = (k.trim().replace('-', "_"), v.trim());
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::Parse { line, message: format!("unknown key `{k}`") });
            }
            if seen.insert(k.clone(), line).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate key `{k}`") });
            }
            match k.as_str() {
                "digits" => c.digits = positive(line, &k, v)?,
                "eps" => {
                    let e = parse_rational(v).map_err(|e| Error::Parse { line, message: e.to_string() })?;
                    if e <= BigRational::from_integer(0.into()) {
                        return Err(Error::Parse { line, message: "`eps` must be positive".into() });
                    }
                    c.eps = e;
                }
                "candidate_cap" => c.candidate_cap = positive(line, &k, v)?,
                "backtrack_limit" => c.backtrack_limit = positive(line, &k, v)?,
                "cache_dir" => c.cache_dir = PathBuf::from(v),
                "threads" => c.threads = positive(line, &k, v)?,
                "seq" => {
                    let p = Path::new(v);
                    c.seq = Some(match base {
                        Some(b) if p.is_relative() && b.join(p).exists() => b.join(p).display().to_string(),
                        _ => v.to_string(),
                    });
                }
                "horizon" => c.horizon = positive(line, &k, v)?,
                "depth" => c.depth = positive(line, &k, v)?,
                _ => unreachable!("key list checked above"),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_text(&text, path.parent())
    }

    /// Cache directory from flag, then environment, then this config.
    pub fn resolve_cache_dir(&mut self, flag: Option<PathBuf>, env: Option<String>) {
        if let Some(f) = flag {
            self.cache_dir = f;
        } else if let Some(e) = env.filter(|e| !e.is_empty()) {
            self.cache_dir = PathBuf::from(e);
        }
    }
}
