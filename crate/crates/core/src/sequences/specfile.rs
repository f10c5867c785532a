//! Text form of exponent sequences.
//!
//! A sequence file is a list of `key = value` lines. Blank lines and
//! anything after `#` are ignored; keys may appear at most once.
//!
//! ```text
//! family = geometric_floor      # or shifted_geometric, linear_recurrence, literal
//! alpha = 1                     # geometric_floor: C_k = ⌊alpha·b^k⌋, alpha defaults to 1
//! b = 2.414213562373095         # decimals and fractions such as 21/40 are exact
//! r = 1                         # shifted_geometric: C_k = r·s^k + t
//! s = 3
//! t = -1
//! coefficients = 2, 1           # linear_recurrence: a_{d-1}, ..., a_1, a_0
//! initial = 2, 6                # R_1, ..., R_d
//! terms = 1, 3, 9               # literal: C_1, ..., C_n
//! horizon = 30                  # optional
//! ```
//!
//! The same families have a one-line shorthand: `mills`, `geometric(1, 3)`,
//! `shifted(1, 3, -1)`, `recurrence(2, 1; 2, 6)` and `literal(1, 3, 9)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use sha2::{Digest, Sha256};

use super::{ExponentSequence, Family, RecurrenceSpec, DEFAULT_HORIZON};
use crate::error::{Error, Result};
use crate::exactnum::enclosure::{format_rational, parse_rational};

/// A parsed sequence file: the family plus an optional horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    pub family: Family,
    pub horizon: Option<usize>,
}

impl SequenceSpec {
    pub fn build(&self, default_horizon: usize) -> Result<ExponentSequence> {
        ExponentSequence::new(self.family.clone(), self.horizon.unwrap_or(default_horizon))
    }
}

pub fn parse_spec_text(text: &str) -> Result<SequenceSpec> {
    let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, format!("expected `key = value`, got {line:?}")))?;
        let key = key.trim().to_ascii_lowercase();
        if fields.insert(key.clone(), (line_no, value.trim().to_string())).is_some() {
            return Err(Error::parse(line_no, format!("duplicate key `{key}`")));
        }
    }
    let mut take = |key: &str| fields.remove(key);
    let (fam_line, fam) = take("family").ok_or_else(|| Error::parse(0, "missing `family`"))?;
    let need = |v: Option<(usize, String)>, key: &str| {
        v.ok_or_else(|| Error::parse(fam_line, format!("family `{fam}` needs `{key}`")))
    };
    let family = match fam.as_str() {
        "geometric_floor" => {
            let alpha = match take("alpha") {
                Some((l, v)) => rational_at(l, &v)?,
                None => BigRational::one(),
            };
            let (l, b) = need(take("b"), "b")?;
            let b = rational_at(l, &b)?;
            geometric(alpha, b).map_err(|e| Error::parse(l, e.to_string()))?
        }
        "shifted_geometric" => {
            let (lr, r) = need(take("r"), "r")?;
            let (ls, s) = need(take("s"), "s")?;
            let (lt, t) = need(take("t"), "t")?;
            Family::ShiftedGeometric { r: natural_at(lr, &r)?, s: natural_at(ls, &s)?, t: integer_at(lt, &t)? }
        }
        "linear_recurrence" => {
            let (lc, c) = need(take("coefficients"), "coefficients")?;
            let (li, i) = need(take("initial"), "initial")?;
            let coeffs = list(lc, &c, |l, x| integer_at(l, x).and_then(|v| small(l, &v)))?;
            let initial = list(li, &i, natural_at)?;
            Family::LinearRecurrence(RecurrenceSpec::new(&coeffs, initial).map_err(|e| Error::parse(lc, e.to_string()))?)
        }
        "literal" => {
            let (lt, t) = need(take("terms"), "terms")?;
            Family::Literal(list(lt, &t, natural_at)?)
        }
        other => return Err(Error::parse(fam_line, format!("unknown family `{other}`"))),
    };
    let horizon = match take("horizon") {
        Some((l, v)) => Some(v.parse::<usize>().map_err(|_| Error::parse(l, format!("bad horizon {v:?}")))?),
        None => None,
    };
    if let Some((key, (line, _))) = fields.into_iter().next() {
        return Err(Error::parse(line, format!("unexpected key `{key}` for family `{fam}`")));
    }
    Ok(SequenceSpec { family, horizon })
}

fn geometric(alpha: BigRational, b: BigRational) -> Result<Family> {
    if !alpha.is_positive() || b < BigRational::one() {
        return Err(Error::arg("geometric_floor needs alpha > 0 and b >= 1"));
    }
    Ok(Family::GeometricFloor { alpha, b })
}

fn rational_at(line: usize, v: &str) -> Result<BigRational> {
    parse_rational(v).map_err(|e| Error::parse(line, e.to_string()))
}

fn natural_at(line: usize, v: &str) -> Result<BigUint> {
    v.trim().parse::<BigUint>().map_err(|_| Error::parse(line, format!("not a natural number: {v:?}")))
}

fn integer_at(line: usize, v: &str) -> Result<BigInt> {
    v.trim().parse::<BigInt>().map_err(|_| Error::parse(line, format!("not an integer: {v:?}")))
}

fn small(line: usize, v: &BigInt) -> Result<i64> {
    i64::try_from(v.clone()).map_err(|_| Error::parse(line, format!("coefficient {v} out of range")))
}

fn list<T>(line: usize, v: &str, f: impl Fn(usize, &str) -> Result<T>) -> Result<Vec<T>> {
    v.split(',').map(|x| f(line, x.trim())).collect()
}

/// Parse a one-line shorthand such as `shifted(1,3,-1)`.
pub fn parse_shorthand(s: &str) -> Result<Family> {
    let s = s.trim();
    if s == "mills" {
        return Ok(Family::GeometricFloor { alpha: BigRational::one(), b: BigRational::from_integer(3.into()) });
    }
    let (name, rest) = s.split_once('(').ok_or_else(|| Error::arg(format!("not a sequence shorthand: {s:?}")))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::arg(format!("missing `)` in {s:?}")))?;
    let args: Vec<&str> = body.split(',').map(str::trim).collect();
    let wrap = |e: Error| Error::arg(format!("{s:?}: {e}"));
    match name.trim() {
        "geometric" => {
            if args.len() != 2 {
                return Err(Error::arg("geometric(alpha, b) takes two arguments"));
            }
            geometric(parse_rational(args[0])?, parse_rational(args[1])?)
        }
        "shifted" => {
            if args.len() != 3 {
                return Err(Error::arg("shifted(r, s, t) takes three arguments"));
            }
            Ok(Family::ShiftedGeometric {
                r: natural_at(0, args[0]).map_err(wrap)?,
                s: natural_at(0, args[1]).map_err(wrap)?,
                t: integer_at(0, args[2]).map_err(wrap)?,
            })
        }
        "recurrence" => {
            let (c, i) = body
                .split_once(';')
                .ok_or_else(|| Error::arg("recurrence(a_{d-1}, ..., a_0; R_1, ..., R_d) needs a `;`"))?;
            let coeffs = list(0, c, |l, x| integer_at(l, x).and_then(|v| small(l, &v))).map_err(wrap)?;
            let initial = list(0, i, natural_at).map_err(wrap)?;
            Ok(Family::LinearRecurrence(RecurrenceSpec::new(&coeffs, initial)?))
        }
        "literal" => Ok(Family::Literal(list(0, body, natural_at).map_err(wrap)?)),
        other => Err(Error::arg(format!("unknown sequence shorthand `{other}`"))),
    }
}

/// Canonical `key = value` text of a family, without horizon.
pub fn canonical_family_text(family: &Family) -> String {
    let join = |v: Vec<String>| v.join(", ");
    match family {
        Family::GeometricFloor { alpha, b } => format!(
            "family = geometric_floor\nalpha = {}\nb = {}\n",
            format_rational(alpha),
            format_rational(b)
        ),
        Family::ShiftedGeometric { r, s, t } => {
            format!("family = shifted_geometric\nr = {r}\ns = {s}\nt = {t}\n")
        }
        Family::LinearRecurrence(rec) => format!(
            "family = linear_recurrence\ncoefficients = {}\ninitial = {}\n",
            join(rec.coeffs_high_first().iter().map(|x| x.to_string()).collect()),
            join(rec.initial().iter().map(|x| x.to_string()).collect())
        ),
        Family::Literal(v) => format!("family = literal\nterms = {}\n", join(v.iter().map(|x| x.to_string()).collect())),
    }
}

/// Canonical sequence-file text including the horizon.
pub fn canonical_text(seq: &ExponentSequence) -> String {
    format!("{}horizon = {}\n", canonical_family_text(seq.family()), seq.horizon())
}

/// Hex SHA-256 of the canonical family text; identifies a sequence in caches.
pub fn fingerprint(family: &Family) -> String {
    hex::encode(Sha256::digest(canonical_family_text(family).as_bytes()))
}

/// Accept either shorthand or full sequence-file text.
pub fn parse_any(text: &str) -> Result<SequenceSpec> {
    if text.contains('=') {
        parse_spec_text(text)
    } else {
        Ok(SequenceSpec { family: parse_shorthand(text)?, horizon: None })
    }
}

/// Parse and build with [`DEFAULT_HORIZON`] when the text names none.
pub fn sequence_from_text(text: &str) -> Result<ExponentSequence> {
    parse_any(text)?.build(DEFAULT_HORIZON)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::enclosure::rat;

    #[test]
    fn parse_file_forms() {
        let spec = parse_spec_text("# Mills\nfamily = geometric_floor\nb = 3\nhorizon = 12\n").unwrap();
        assert_eq!(spec.horizon, Some(12));
        assert_eq!(spec.family, Family::GeometricFloor { alpha: rat(1, 1), b: rat(3, 1) });

        let spec = parse_spec_text("family = linear_recurrence\ncoefficients = 2, 1\ninitial = 2, 6").unwrap();
        let seq = spec.build(10).unwrap();
        assert_eq!(seq.eval_c(3).unwrap(), &BigUint::from(14u32));

        let spec = parse_spec_text("family=shifted_geometric\nr=1\ns=3\nt=-1").unwrap();
        assert_eq!(spec.family, parse_shorthand("shifted(1,3,-1)").unwrap());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_spec_text("family = literal\nterms = 1, x").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_spec_text("family = literal\nterms = 1\nterms = 2").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_spec_text("family = literal\nterms = 1\nb = 2").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(parse_spec_text("family = nope").is_err());
        assert!(parse_spec_text("b = 3").is_err());
        assert!(parse_spec_text("family = geometric_floor").is_err());
        assert!(parse_spec_text("just text").is_err());
    }

    #[test]
    fn shorthand_forms() {
        assert_eq!(parse_shorthand("mills").unwrap(), parse_shorthand("geometric(1, 3)").unwrap());
        assert!(matches!(parse_shorthand("recurrence(1, 1; 1, 1)").unwrap(), Family::LinearRecurrence(_)));
        assert_eq!(parse_shorthand("literal(1)").unwrap(), Family::Literal(vec![BigUint::one()]));
        assert!(parse_shorthand("shifted(1,3)").is_err());
        assert!(parse_shorthand("cubes(3)").is_err());
        assert!(parse_shorthand("recurrence(1, 2; 1, 1)").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["mills", "geometric(1, 2.414213562373095)", "shifted(7, 3, -1)", "recurrence(2, 1; 2, 6)", "literal(1, 3, 9)"] {
            let fam = parse_shorthand(s).unwrap();
            let text = canonical_family_text(&fam);
            assert_eq!(parse_spec_text(&text).unwrap().family, fam, "{s}");
        }
        let a = fingerprint(&parse_shorthand("geometric(1, 3)").unwrap());
        let b = fingerprint(&parse_shorthand("geometric(2/2, 3.0)").unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
    }
}
