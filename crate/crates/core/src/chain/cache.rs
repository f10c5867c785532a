//! On-disk chain cache.
//!
//! ```text
//! # mills chain cache v1
//! fingerprint = <sha256 of the canonical family text>
//! sequence = <shorthand>
//! strategy = greedy_min
//! candidate_cap = 10000
//! backtrack_limit = 10000
//! ---
//! 2 deterministic
//! 11 deterministic
//! ```
//!
//! One prime per level below the `---` line. Deeper levels are appended; lines
//! already written are never rewritten.

use std::fs::{self, File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use super::{bounds_for, build_chain, extend_chain, validate_chain, ChainMode, ChainStrategy, PrimeChain};
use crate::error::{Error, Result};
use crate::exactnum::prime::Certainty;
use crate::sequences::specfile::fingerprint;
use crate::sequences::ExponentSequence;

pub const MAGIC: &str = "# mills chain cache v1";

/// `<first 16 hex digits of the fingerprint>-<mode>-<cap>-<limit>.chain`
pub fn file_name(seq: &ExponentSequence, strategy: &ChainStrategy) -> String {
    let fp = fingerprint(seq.family());
    format!("{}-{}-{}-{}.chain", &fp[..16], strategy.mode, strategy.candidate_cap, strategy.backtrack_limit)
}

pub fn header(seq: &ExponentSequence, strategy: &ChainStrategy) -> String {
    format!(
        "{MAGIC}\nfingerprint = {}\nsequence = {}\nstrategy = {}\ncandidate_cap = {}\nbacktrack_limit = {}\n---\n",
        fingerprint(seq.family()),
        seq.family(),
        strategy.mode,
        strategy.candidate_cap,
        strategy.backtrack_limit
    )
}

fn level_line(p: &BigUint, c: Certainty) -> String {
    format!("{p} {c}\n")
}

/// Full file contents for a chain.
pub fn render(chain: &PrimeChain) -> String {
    let mut s = header(&chain.sequence, &chain.strategy);
    for (p, c) in chain.primes.iter().zip(&chain.certainty) {
        s.push_str(&level_line(p, *c));
    }
    s
}

/// Parse cache text for `seq`; levels past the horizon are dropped.
/// Intervals are re-checked, primality flags are taken as recorded.
pub fn parse(text: &str, seq: &ExponentSequence, strategy: &ChainStrategy) -> Result<PrimeChain> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let bad = |line: usize, msg: String| Error::parse(line, msg);
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(bad(1, "missing cache header".into())),
    }
    let expected = header(seq, strategy);
    let mut expected_lines = expected.lines().skip(1);
    for (n, l) in lines.by_ref() {
        let want = expected_lines.next().expect("header ends with ---");
        if l != want {
            return Err(bad(n, format!("header mismatch: expected {want:?}, found {l:?}")));
        }
        if l == "---" {
            break;
        }
    }
    let mut primes = Vec::new();
    let mut certainty = Vec::new();
    for (n, l) in lines {
        if primes.len() == seq.horizon() {
            break;
        }
        let (p, c) = l.split_once(' ').ok_or_else(|| bad(n, format!("expected `prime certainty`, found {l:?}")))?;
        let p: BigUint = p.parse().map_err(|_| bad(n, format!("not a natural number: {p:?}")))?;
        primes.push(p);
        certainty.push(Certainty::parse(c).ok_or_else(|| bad(n, format!("unknown certainty {c:?}")))?);
    }
    validate_chain(seq, &primes, false)?;
    let mut bounds = Vec::with_capacity(primes.len());
    for level in 1..=primes.len() {
        let prev = if level == 1 { None } else { Some(&primes[level - 2]) };
        let b = bounds_for(seq, level, prev)?.ok_or_else(|| Error::Internal(format!("level {level} has no interval")))?;
        bounds.push(b);
    }
    Ok(PrimeChain { sequence: seq.clone(), primes, certainty, bounds, strategy: strategy.clone(), backtracks: 0 })
}

/// `None` when the file does not exist.
pub fn load(path: &Path, seq: &ExponentSequence, strategy: &ChainStrategy) -> Result<Option<PrimeChain>> {
    let mut file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    file.lock_shared()?;
    let mut text = String::new();
    file.read_to_string(&mut text)?;
    file.unlock()?;
    parse(&text, seq, strategy).map(Some)
}

/// Write levels `stored+1..=depth` of `chain`, creating the file when `stored == 0`.
pub fn store(path: &Path, chain: &PrimeChain, stored: usize) -> Result<()> {
    if stored >= chain.depth() {
        return Ok(());
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.lock()?;
    let mut out = String::new();
    if stored == 0 {
        if file.metadata()?.len() != 0 {
            file.unlock()?;
            return Err(std::io::Error::new(std::io::ErrorKind::AlreadyExists, format!("{} appeared while writing", path.display())).into());
        }
        out.push_str(&header(&chain.sequence, &chain.strategy));
    }
    for i in stored..chain.depth() {
        out.push_str(&level_line(&chain.primes[i], chain.certainty[i]));
    }
    file.write_all(out.as_bytes())?;
    file.sync_data()?;
    file.unlock()?;
    Ok(())
}

/// Chain of the requested depth, reusing and extending the cache in `dir`.
#[derive(Debug, Clone)]
pub struct CachedChain {
    pub chain: PrimeChain,
    pub path: PathBuf,
    /// Levels read from the cache.
    pub reused: usize,
    /// Levels appended to the cache.
    pub appended: usize,
}

pub fn cached_chain(dir: &Path, seq: &ExponentSequence, depth: usize, strategy: &ChainStrategy) -> Result<CachedChain> {
    if depth == 0 {
        return Err(Error::arg("depth must be at least 1"));
    }
    if depth > seq.horizon() {
        return Err(Error::OutOfRange { index: depth as u64, horizon: seq.horizon() as u64 });
    }
    let path = dir.join(file_name(seq, strategy));
    let greedy = strategy.mode == ChainMode::GreedyMin;
    let Some(mut chain) = load(&path, seq, strategy)? else {
        let chain = build_chain(seq, depth, strategy)?;
        store(&path, &chain, 0)?;
        return Ok(CachedChain { chain, path, reused: 0, appended: depth });
    };
    let stored = chain.depth();
    if stored >= depth {
        // A prefix of the least deeper chain need not be the least shorter chain.
        if greedy || stored == depth {
            chain.primes.truncate(depth);
            chain.certainty.truncate(depth);
            chain.bounds.truncate(depth);
            return Ok(CachedChain { chain, path, reused: depth, appended: 0 });
        }
        let chain = build_chain(seq, depth, strategy)?;
        return Ok(CachedChain { chain, path, reused: 0, appended: 0 });
    }
    // A successful extension of the least depth-`stored` chain is the least
    // chain of the new depth; a failed one says nothing.
    match extend_chain(&mut chain, depth) {
        Ok(()) => {
            store(&path, &chain, stored)?;
            Ok(CachedChain { chain, path, reused: stored, appended: depth - stored })
        }
        Err(Error::SearchExhausted { .. }) if !greedy => {
            let chain = build_chain(seq, depth, strategy)?;
            Ok(CachedChain { chain, path, reused: 0, appended: 0 })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::Family;

    #[test]
    fn round_trip_and_append() {
        let dir = tempfile::tempdir().unwrap();
        let seq = ExponentSequence::mills(10);
        let s = ChainStrategy::greedy();
        let a = cached_chain(dir.path(), &seq, 3, &s).unwrap();
        assert_eq!((a.reused, a.appended), (0, 3));
        let before = fs::read_to_string(&a.path).unwrap();
        assert!(before.starts_with(MAGIC));
        assert!(before.ends_with("2 deterministic\n11 deterministic\n1361 deterministic\n"));

        let b = cached_chain(dir.path(), &seq, 5, &s).unwrap();
        assert_eq!((b.reused, b.appended), (3, 2));
        let after = fs::read_to_string(&b.path).unwrap();
        assert!(after.starts_with(&before));
        assert_eq!(after, render(&b.chain));
        assert_eq!(b.chain, build_chain(&seq, 5, &s).unwrap());

        let c = cached_chain(dir.path(), &seq, 2, &s).unwrap();
        assert_eq!(c.chain.primes, vec![BigUint::from(2u32), BigUint::from(11u32)]);
        assert_eq!(fs::read_to_string(&b.path).unwrap(), after);
    }

    #[test]
    fn rejects_tampering() {
        let seq = ExponentSequence::mills(10);
        let s = ChainStrategy::greedy();
        let good = render(&build_chain(&seq, 3, &s).unwrap());
        assert!(parse(&good, &seq, &s).is_ok());
        assert!(parse(&good.replace("\n11 ", "\n13 "), &seq, &s).is_err());
        assert!(parse(&good, &ExponentSequence::shifted(1, 3, -1, 10).unwrap(), &s).is_err());
        assert!(parse(&good, &seq, &ChainStrategy::dfs()).is_err());
        assert!(matches!(parse(&good.replace("11 deterministic", "11"), &seq, &s), Err(Error::Parse { .. })));
    }

    #[test]
    fn dfs_prefix_is_not_reused_for_shorter_depth() {
        let dir = tempfile::tempdir().unwrap();
        let seq = ExponentSequence::new(Family::Literal([3u32, 9, 27, 81].map(BigUint::from).to_vec()), 4).unwrap();
        let s = ChainStrategy::dfs();
        let deep = cached_chain(dir.path(), &seq, 4, &s).unwrap();
        let short = cached_chain(dir.path(), &seq, 2, &s).unwrap();
        assert_eq!(short.chain, build_chain(&seq, 2, &s).unwrap());
        assert_eq!(deep.chain.primes[..2], short.chain.primes[..]);
    }
}
