//! Admissibility profiles A, B, B' and C, checked up to a finite horizon.
//!
//! Universally quantified conditions can only be confirmed on a finite range;
//! those verdicts are `PassAtHorizon`, never `Pass`. Existence conditions are
//! settled by exhibiting a witness index, found by search or by a
//! family-specific construction and then verified exactly.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::agcd::{agcd, agcd_closed_form};
use super::recurrence::recurrence_period_mod;
use super::{ExponentSequence, Family};
use crate::error::{Error, Result};
use crate::exactnum::enclosure::{decimal_truncated, format_rational, rat};
use crate::exactnum::factor::euler_phi;

/// 40/19, the growth threshold shared by profiles A and B.
pub fn forty_nineteenths() -> BigRational {
    rat(40, 19)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Profile {
    A,
    B,
    /// Recurrence form of B.
    BPrime,
    /// Divisibility and agcd profile with growth constant c.
    C { c: BigRational },
}

impl Profile {
    /// `A`, `B`, `B'` (or `BP`), `C` (c = 3) or `C:c`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Profile::A),
            "B" => Ok(Profile::B),
            "B'" | "BP" | "BPRIME" => Ok(Profile::BPrime),
            "C" => Ok(Profile::C { c: rat(3, 1) }),
            other => match other.strip_prefix("C:") {
                Some(c) => {
                    let c = crate::exactnum::parse_rational(c)?;
                    Ok(Profile::C { c })
                }
                None => Err(Error::arg(format!("unknown profile {s:?}; expected A, B, B' or C"))),
            },
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::A => f.write_str("A"),
            Profile::B => f.write_str("B"),
            Profile::BPrime => f.write_str("B'"),
            Profile::C { c } => write!(f, "C (c = {})", format_rational(c)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Holds for every index.
    Pass,
    /// Holds on every index examined; not a proof.
    PassAtHorizon,
    /// Violated at `index`.
    Fail { index: usize },
    /// Neither confirmed nor refuted.
    Unknown,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassAtHorizon)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::PassAtHorizon => f.write_str("pass-at-horizon"),
            Verdict::Fail { index } => write!(f, "fail@{index}"),
            Verdict::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub id: &'static str,
    pub statement: String,
    pub verdict: Verdict,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub profile: Profile,
    pub horizon: usize,
    pub conditions: Vec<ConditionVerdict>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict.is_pass())
    }

    pub fn get(&self, id: &str) -> Option<&ConditionVerdict> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// `id | verdict | witness` lines.
    pub fn machine_lines(&self) -> Vec<String> {
        self.conditions
            .iter()
            .map(|c| format!("{} | {} | {}", c.id, c.verdict, c.witness))
            .collect()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profile {} at horizon {}", self.profile, self.horizon)?;
        for c in &self.conditions {
            writeln!(f, "  {:<4} {:<16} {}  [{}]", c.id, c.verdict.to_string(), c.statement, c.witness)?;
        }
        Ok(())
    }
}

/// Search bounds for existence conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    /// Existence conditions are checked for m = 1..=witness_m_max.
    pub witness_m_max: usize,
    /// Congruence conditions are checked for L = 1..=witness_l_max.
    pub witness_l_max: u64,
    pub agcd_m_max: usize,
    pub agcd_window: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { witness_m_max: 10, witness_l_max: 10, agcd_m_max: 10, agcd_window: 10 }
    }
}

fn short(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        decimal_truncated(x, 6)
    }
}

struct Ctx<'a> {
    seq: &'a ExponentSequence,
    ratios: Vec<BigRational>,
    opts: &'a CheckOptions,
}

impl<'a> Ctx<'a> {
    fn horizon(&self) -> usize {
        self.seq.horizon()
    }

    /// Indices k of the tail, where c_{k+1} is known.
    fn tail(&self) -> std::ops::RangeInclusive<usize> {
        let last = self.horizon() - 1;
        last.div_ceil(2).max(1)..=last
    }

    fn c_next(&self, k: usize) -> &BigRational {
        &self.ratios[k - 1]
    }

    fn first(&self, id: &'static str, what: &str) -> ConditionVerdict {
        let c1 = self.seq.first_ratio();
        let verdict = if c1 >= BigRational::one() { Verdict::Pass } else { Verdict::Fail { index: 1 } };
        ConditionVerdict { id, statement: format!("{what} >= 1"), verdict, witness: format!("{what} = {}", short(&c1)) }
    }

    fn growth(&self, id: &'static str, bound: &BigRational) -> ConditionVerdict {
        let statement = format!("c_(k+1) >= {} for all k", format_rational(bound));
        for k in 1..self.horizon() {
            if self.c_next(k) < bound {
                return ConditionVerdict {
                    id,
                    statement,
                    verdict: Verdict::Fail { index: k },
                    witness: format!("c_{} = {}", k + 1, format_rational(self.c_next(k))),
                };
            }
        }
        let (k, min) = (1..self.horizon()).map(|k| (k, self.c_next(k))).min_by(|a, b| a.1.cmp(b.1)).expect("horizon >= 2");
        ConditionVerdict {
            id,
            statement,
            verdict: Verdict::PassAtHorizon,
            witness: format!("min c_(k+1) = {} at k = {k}", short(min)),
        }
    }

    /// Estimated limsup of c_{k+1}: the closed-form limit if known, else the tail maximum.
    fn limsup_estimate(&self) -> (BigRational, usize, bool) {
        let (k, max) = self.tail().map(|k| (k, self.c_next(k).clone())).max_by(|a, b| a.1.cmp(&b.1)).expect("tail");
        match self.seq.family().exact_ratio_limit() {
            Some(l) => (l, k, true),
            None => (max, k, false),
        }
    }

    fn limsup(&self, id: &'static str) -> ConditionVerdict {
        let bound = forty_nineteenths();
        let (est, k, exact) = self.limsup_estimate();
        let tail_max = self.tail().map(|k| self.c_next(k).clone()).max().expect("tail");
        let source = if exact { "closed-form limit" } else { "tail sup" };
        let witness = format!("{source} {} ; observed tail sup {}", short(&est), short(&tail_max));
        let verdict = if est > bound {
            Verdict::PassAtHorizon
        } else {
            // Last tail index not exceeding the threshold.
            let idx = self.tail().rev().find(|&j| *self.c_next(j) <= bound).unwrap_or(k);
            Verdict::Fail { index: idx }
        };
        ConditionVerdict { id, statement: "limsup c_(k+1) > 40/19".into(), verdict, witness }
    }

    fn liminf(&self, id: &'static str) -> ConditionVerdict {
        let bound = forty_nineteenths();
        let (k, min) = self.tail().map(|k| (k, self.c_next(k).clone())).min_by(|a, b| a.1.cmp(&b.1)).expect("tail");
        let verdict = if min > bound { Verdict::PassAtHorizon } else { Verdict::Fail { index: k } };
        ConditionVerdict {
            id,
            statement: "liminf R_(k+1)/R_k > 40/19".into(),
            verdict,
            witness: format!("observed tail inf {} at k = {k}", short(&min)),
        }
    }

    fn integrality(&self, id: &'static str) -> ConditionVerdict {
        let statement = "C_k is a positive integer for all k".to_string();
        let proven = match self.seq.family() {
            // Non-decreasing integer families with C_1 >= 1.
            Family::GeometricFloor { .. } | Family::Literal(_) => true,
            Family::ShiftedGeometric { s, .. } => !s.is_zero(),
            Family::LinearRecurrence(_) => false,
        };
        let verdict = if proven { Verdict::Pass } else { Verdict::PassAtHorizon };
        let witness = if proven {
            "integer-valued and non-decreasing family with C_1 >= 1".into()
        } else {
            format!("positive integers on 1..={}", self.horizon())
        };
        ConditionVerdict { id, statement, verdict, witness }
    }

    fn recurrence_form(&self, id: &'static str) -> ConditionVerdict {
        let statement = "R_(k+d) = a_(d-1) R_(k+d-1) + ... + a_0 R_k, a_0 = ±1".to_string();
        match self.seq.family() {
            Family::LinearRecurrence(rec) => ConditionVerdict {
                id,
                statement,
                verdict: Verdict::Pass,
                witness: format!("order {} with a_0 = {}", rec.order(), rec.coeff(0)),
            },
            other => ConditionVerdict {
                id,
                statement,
                verdict: Verdict::Unknown,
                witness: format!("{} family is not given as a recurrence", other.kind()),
            },
        }
    }

    /// I = {k : c_{k+1} >= 40/19 + eps} with eps half the gap to the limsup estimate.
    fn i_threshold(&self) -> Option<BigRational> {
        let bound = forty_nineteenths();
        let (est, _, _) = self.limsup_estimate();
        (est > bound).then(|| (&bound + &est) / rat(2, 1))
    }

    fn in_i(&self, k: usize, thr: &BigRational) -> IMember {
        if k < self.horizon() {
            return if self.c_next(k) >= thr { IMember::Yes } else { IMember::No };
        }
        match self.seq.family() {
            Family::ShiftedGeometric { r, s, t } => {
                // r s^{k+1} + t >= thr (r s^k + t)  <=>  r s^k (s - thr) >= t (thr - 1)
                let s_r = BigRational::from_integer(BigInt::from(s.clone()));
                let lead = &s_r - thr;
                if !lead.is_positive() {
                    return IMember::No;
                }
                let rhs = BigRational::from_integer(t.clone()) * (thr - BigRational::one()) / lead;
                if !rhs.is_positive() {
                    return IMember::Yes;
                }
                let r_r = BigRational::from_integer(BigInt::from(r.clone()));
                // r s^j is increasing, so checking the first j reaching rhs decides all k >= j.
                let mut j = 0usize;
                while &r_r * Pow::pow(&s_r, j as u32) < rhs {
                    j += 1;
                }
                if k >= j { IMember::Yes } else { IMember::No }
            }
            _ => {
                let tail_ok = self.tail().all(|j| self.c_next(j) >= thr);
                if tail_ok { IMember::Assumed } else { IMember::No }
            }
        }
    }

    /// Least k > m (within the candidates tried) with C_k ≡ C_m (mod L·C_m),
    /// optionally restricted to I.
    fn witness(&self, m: usize, l: u64, i_thr: Option<&BigRational>) -> Result<Option<(usize, IMember)>> {
        let c_m = self.seq.term_unbounded(m)?;
        let modulus = &c_m * BigUint::from(l);
        let target = &c_m % &modulus;
        let accept = |k: usize| -> Result<Option<IMember>> {
            let member = match i_thr {
                Some(thr) => self.in_i(k, thr),
                None => IMember::Yes,
            };
            if member == IMember::No {
                return Ok(None);
            }
            let res = self.seq.family().term_mod(k, &modulus)?;
            Ok((res == target).then_some(member))
        };
        let scan_end = match (self.seq.family(), i_thr) {
            (Family::GeometricFloor { .. }, _) => 4 * self.horizon(),
            (_, Some(_)) => self.horizon() - 1,
            _ => self.horizon(),
        };
        for k in m + 1..=scan_end {
            if let Some(member) = accept(k)? {
                return Ok(Some((k, member)));
            }
        }
        let mut candidates: Vec<usize> = Vec::new();
        match self.seq.family() {
            Family::ShiftedGeometric { s, .. } => {
                // Strip the primes of s from the modulus; s^j ≡ 1 on the rest for j = φ(rest).
                let mut rest = modulus.clone();
                let g0 = rest.gcd(s);
                if !g0.is_one() {
                    loop {
                        let g = rest.gcd(s);
                        if g.is_one() {
                            break;
                        }
                        rest /= g;
                    }
                }
                let phi = euler_phi(&rest)?;
                for i in 1..=3u32 {
                    if let Some(j) = (&phi * i).to_usize() {
                        candidates.push(m + j);
                    }
                }
                if let Some(j) = euler_phi(&c_m)?.to_usize() {
                    candidates.push(m * j + m);
                }
            }
            Family::LinearRecurrence(rec) => {
                if let Some(q) = modulus.to_u64() {
                    if let Ok(p) = recurrence_period_mod(rec, q) {
                        for i in 1..=3u64 {
                            candidates.push(m + (p * i) as usize);
                        }
                    }
                }
            }
            _ => {}
        }
        candidates.sort_unstable();
        candidates.dedup();
        for k in candidates.into_iter().filter(|&k| k > scan_end) {
            if let Some(member) = accept(k)? {
                return Ok(Some((k, member)));
            }
        }
        Ok(None)
    }

    fn existence(&self, id: &'static str, statement: &str, l_max: u64, need_i: bool) -> Result<ConditionVerdict> {
        let thr = if need_i {
            match self.i_threshold() {
                Some(t) => Some(t),
                None => {
                    return Ok(ConditionVerdict {
                        id,
                        statement: statement.into(),
                        verdict: Verdict::Unknown,
                        witness: "I is empty at this horizon".into(),
                    })
                }
            }
        } else {
            None
        };
        let mut found = Vec::new();
        let mut assumed = false;
        for m in 1..=self.opts.witness_m_max {
            for l in 1..=l_max {
                match self.witness(m, l, thr.as_ref())? {
                    Some((k, member)) => {
                        assumed |= member == IMember::Assumed;
                        if l == 1 || l_max == 1 {
                            found.push(format!("m={m}:k={k}"));
                        }
                    }
                    None => {
                        return Ok(ConditionVerdict {
                            id,
                            statement: statement.into(),
                            verdict: Verdict::Unknown,
                            witness: format!("no witness found for m = {m}, L = {l}"),
                        })
                    }
                }
            }
        }
        let mut witness = if l_max > 1 {
            format!("witnesses for m <= {}, L <= {l_max}; L=1: {}", self.opts.witness_m_max, found.join(" "))
        } else {
            found.join(" ")
        };
        if let Some(t) = &thr {
            witness.push_str(&format!("; I uses c_(k+1) >= {}", short(t)));
        }
        if assumed {
            witness.push_str("; I-membership past the horizon assumed from the tail");
        }
        Ok(ConditionVerdict { id, statement: statement.into(), verdict: Verdict::PassAtHorizon, witness })
    }

    fn agcd_finite(&self, id: &'static str) -> Result<ConditionVerdict> {
        let a = agcd(self.seq, self.opts.agcd_m_max, self.opts.agcd_window)?;
        let trace: Vec<String> = a.trace.iter().map(|g| g.to_string()).collect();
        let statement = "agcd(C_k) < ∞".to_string();
        Ok(match &a.value {
            Some(v) => {
                let mut witness = format!("agcd = {v}");
                if let Some(closed) = agcd_closed_form(self.seq) {
                    witness.push_str(&format!(" (closed form {closed})"));
                }
                let verdict = match agcd_closed_form(self.seq) {
                    Some(c) if c == *v => Verdict::Pass,
                    Some(_) => Verdict::Fail { index: self.opts.agcd_m_max },
                    None => Verdict::PassAtHorizon,
                };
                ConditionVerdict { id, statement, verdict, witness }
            }
            None => {
                let n = a.trace.len();
                let rising = n >= 3 && a.trace[n - 3] < a.trace[n - 2] && a.trace[n - 2] < a.trace[n - 1];
                let verdict = if rising { Verdict::Fail { index: n } } else { Verdict::Unknown };
                ConditionVerdict { id, statement, verdict, witness: format!("unbounded-suspected; g_m = {}", trace.join(",")) }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IMember {
    Yes,
    No,
    Assumed,
}

/// Evaluate a profile on C_1, ..., C_horizon.
pub fn check_conditions(
    seq: &ExponentSequence,
    profile: &Profile,
    horizon: usize,
    opts: &CheckOptions,
) -> Result<ConditionReport> {
    if horizon < 2 {
        return Err(Error::arg("horizon must be at least 2"));
    }
    let seq = seq.with_horizon(horizon)?;
    if seq.horizon() < 2 {
        return Err(Error::arg("sequence has fewer than two terms"));
    }
    let ratios = (1..seq.horizon()).map(|k| seq.ratio(k)).collect::<Result<Vec<_>>>()?;
    let ctx = Ctx { seq: &seq, ratios, opts };
    let two = rat(2, 1);
    let conditions = match profile {
        Profile::A => vec![ctx.first("A1", "c_1"), ctx.growth("A2", &two), ctx.limsup("A3"), ctx.integrality("A4")],
        Profile::B => vec![
            ctx.first("B1", "c_1"),
            ctx.growth("B2", &two),
            ctx.limsup("B3"),
            ctx.integrality("B4"),
            ctx.existence("B5", "for all m there is k in I, k > m, with C_m | C_k", 1, true)?,
            ctx.existence("B6", "for all m, L there is k in I, k > m, with C_k ≡ C_m mod L·C_m", opts.witness_l_max, true)?,
        ],
        Profile::BPrime => vec![
            ctx.first("B1'", "R_1"),
            ctx.growth("B2'", &two),
            ctx.liminf("B3'"),
            ctx.recurrence_form("B4'"),
            ctx.existence("B5", "for all m there is k in I, k > m, with C_m | C_k", 1, true)?,
            ctx.existence("B6", "for all m, L there is k in I, k > m, with C_k ≡ C_m mod L·C_m", opts.witness_l_max, true)?,
        ],
        Profile::C { c } => vec![
            ctx.first("C1", "c_1"),
            ctx.growth("C2", c),
            ctx.integrality("C3"),
            ctx.existence("C4", "for all m there is k > m with C_m | C_k", 1, false)?,
            ctx.agcd_finite("C5")?,
        ],
    };
    Ok(ConditionReport { profile: profile.clone(), horizon: seq.horizon(), conditions })
}
