//! One PASS/FAIL line per acceptance criterion.
//!
//! The process fails when a criterion fails that is not in `KNOWN_RED`;
//! known-red criteria still print FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mills_core::chain::{build_chain, certified_digits, floor_recovery_holds, idealineq_check_rational, nested_at, ChainStrategy};
use mills_core::exactnum::enclosure::{decimal_truncated, rat};
use mills_core::exactnum::parse_rational;
use mills_core::pisot::poly::Sturm;
use mills_core::pisot::{akiyama_criterion, coefficient_box, enumerate_cubic_pisot, floor_power, floor_power_by_enclosure, gcd_power, trace_power, PisotNumber};
use mills_core::sequences::recurrence::brute_force_period;
use mills_core::sequences::{check_conditions, recurrence_period_mod, CheckOptions, ExponentSequence, Family, Profile, RecurrenceSpec, Verdict};
use mills_core::verify::threshold::{threshold, PRINTED_LOG_EXPONENT, PRINTED_THRESHOLD};
use mills_core::verify::{verify_agcd_formula, verify_floor_table, verify_table2, MILLS_DIGITS};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The exact threshold for x_0 = exp(3·exp(32.76)) is 400296054181892.32, not
/// the printed 400296054181891.5; the printed value is what binary64 gives.
const KNOWN_RED: &[u32] = &[3];

struct Line {
    id: u32,
    name: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, limit: Duration, f: impl FnOnce() -> Result<(bool, String), String>) -> Line {
    let t = Instant::now();
    let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = t.elapsed();
    let in_time = elapsed <= limit;
    let detail = if in_time { detail } else { format!("{detail}; over the {:.0} s limit", limit.as_secs_f64()) };
    Line { id, name, ok: ok && in_time, detail, elapsed }
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn table2() -> Result<(bool, String), String> {
    let r = verify_table2().map_err(e)?;
    let rows = r.checks.iter().filter(|c| c.id.starts_with("table2.row") && c.passed()).count();
    Ok((r.all_pass() && rows == 20, format!("{rows} of 20 rows match, count check {}", r.get("table2.count").map_or("missing", |c| if c.passed() { "ok" } else { "wrong" }))))
}

fn mills_digits() -> Result<(bool, String), String> {
    let seq = ExponentSequence::mills(8);
    let d6 = certified_digits(&build_chain(&seq, 6, &ChainStrategy::greedy()).map_err(e)?, 20).map_err(e)?;
    let ok6 = d6.decimals >= 20 && d6.text.starts_with("1.30637788386308069046");
    let d8 = certified_digits(&build_chain(&seq, 8, &ChainStrategy::greedy()).map_err(e)?, 30).map_err(e)?;
    let ok8 = d8.text == MILLS_DIGITS;
    Ok((ok6 && ok8, format!("depth 6: {} ({} decimals); depth 8: {} ({} decimals)", d6.text, d6.decimals, d8.text, d8.decimals)))
}

fn threshold_constant() -> Result<(bool, String), String> {
    let t = threshold(&parse_rational(PRINTED_LOG_EXPONENT).map_err(e)?, 160).map_err(e)?;
    let printed = parse_rational(PRINTED_THRESHOLD).map_err(e)?;
    let tol = rat(1, 20);
    let ok = (t.lo() - &printed).abs() <= tol && (t.hi() - &printed).abs() <= tol;
    Ok((ok, format!("computed {} against printed {PRINTED_THRESHOLD} ± 0.05", decimal_truncated(t.lo(), 10))))
}

fn floors() -> Result<(bool, String), String> {
    let r = verify_floor_table().map_err(e)?;
    let values = r.checks.iter().filter(|c| !c.id.ends_with(".k1")).count();
    let big = r.get("floors.sqrt-alpha9.k4").map(|c| c.computed.clone()).unwrap_or_default();
    let composite = r.checks.iter().filter(|c| c.computed.contains("composite")).count();
    Ok((r.all_pass() && values == 18, format!("{values} floor values, {composite} confirmed composite; α_9: {big}")))
}

fn agcd() -> Result<(bool, String), String> {
    let r = verify_agcd_formula(50).map_err(e)?;
    let ok = r.checks.len() == 50 && r.all_pass();
    Ok((ok, format!("{} of 50 values of r agree", r.checks.iter().filter(|c| c.passed()).count())))
}

fn properties() -> Result<(bool, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d696c6c73);
    let mut violations = Vec::new();

    let mut ideal = 0;
    for _ in 0..10_000 {
        let x = BigRational::new(rng.gen_range(1_000u64..=100_000).into(), 1000.into());
        let d: u64 = rng.gen_range(1..=12);
        let c = BigRational::new(rng.gen_range(d..=6 * d).into(), d.into());
        if !idealineq_check_rational(&x, &c).map_err(e)?.implication_holds() {
            ideal += 1;
        }
    }
    violations.push(("idealineq", ideal));

    let table = enumerate_cubic_pisot(&rat(3, 1)).map_err(e)?;
    let mut trace = 0;
    let mut closure = 0;
    for p in &table {
        for n in 1..=40 {
            let f = floor_power(p, n).map_err(e)?;
            let s = trace_power(p, n).map_err(e)?;
            let near = (BigInt::from(f.clone()) - s).abs() <= BigInt::from(2);
            if !near || f != floor_power_by_enclosure(p, n).map_err(e)? {
                trace += 1;
            }
        }
        for m in 2..=4 {
            if p.power(m).map_err(e)?.is_none() {
                closure += 1;
            }
        }
    }
    let phi = PisotNumber::golden_ratio();
    for (n, m) in [(2, 3), (4, 6), (6, 9)] {
        if gcd_power(&phi, n, m).map_err(e)? != phi.power(num_integer::gcd(n, m)).map_err(e)? {
            closure += 1;
        }
    }
    violations.push(("trace", trace));
    violations.push(("powers", closure));

    let mut period = 0;
    for _ in 0..50 {
        let order = rng.gen_range(2..=3);
        let mut coeffs: Vec<i64> = (0..order - 1).map(|_| rng.gen_range(-3..=3)).collect();
        coeffs.push(if rng.gen_bool(0.5) { 1 } else { -1 });
        let init: Vec<BigUint> = (0..order).map(|_| BigUint::from(rng.gen_range(0u32..50))).collect();
        let q: u64 = rng.gen_range(1..=50);
        let rec = RecurrenceSpec::new(&coeffs, init).map_err(e)?;
        let got = recurrence_period_mod(&rec, q).map_err(e)?;
        let terms = rec.terms_mod(2 * (q as usize).pow(order as u32) + 2 * order, q);
        if brute_force_period(&terms) != Some(got as usize) {
            period += 1;
        }
    }
    violations.push(("period", period));

    let mut chains = 0;
    for seq in [ExponentSequence::mills(10), ExponentSequence::shifted(1, 3, -1, 10).map_err(e)?] {
        let c = build_chain(&seq, 5, &ChainStrategy::greedy()).map_err(e)?;
        for k in 1..=5 {
            if (k < 5 && !nested_at(&c, k).map_err(e)?) || !floor_recovery_holds(&c, k).map_err(e)? {
                chains += 1;
            }
        }
    }
    violations.push(("chains", chains));

    let m = rat(3, 1);
    let cands = coefficient_box(&m).map_err(e)?;
    let mut akiyama = 0;
    for c in &cands {
        let in_range = Sturm::new(&c.poly()).map_err(e)?.count_above(&m) == 0;
        let crit = akiyama_criterion(c).map_err(e)? && in_range;
        let oracle = PisotNumber::from_cubic(c).map_err(e)?.is_some() && in_range;
        if crit != oracle {
            akiyama += 1;
        }
    }
    violations.push(("akiyama", akiyama));

    let total: usize = violations.iter().map(|v| v.1).sum();
    let parts: Vec<String> = violations.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok((total == 0 && cands.len() == 260, format!("violations: {} over {} box candidates", parts.join(", "), cands.len())))
}

fn profiles() -> Result<(bool, String), String> {
    let opts = CheckOptions::default();
    let geometric = |b: &str| -> Result<ExponentSequence, String> {
        ExponentSequence::new(Family::GeometricFloor { alpha: BigRational::one(), b: parse_rational(b).map_err(e)? }, 30).map_err(e)
    };
    let silver = check_conditions(&geometric("2.414213562373095")?, &Profile::A, 30, &opts).map_err(e)?;
    let binary = check_conditions(&geometric("2")?, &Profile::A, 30, &opts).map_err(e)?;
    let a3 = binary.get("A3").map(|c| c.verdict.clone());
    let mut c_ok = true;
    for r in [1, 2, 7] {
        let rep = check_conditions(&ExponentSequence::shifted(r, 3, -1, 30).map_err(e)?, &Profile::parse("C").map_err(e)?, 30, &opts).map_err(e)?;
        c_ok &= ["C1", "C2", "C3", "C4", "C5"].iter().all(|id| rep.get(id).is_some_and(|c| c.verdict.is_pass()));
    }
    let ok = silver.all_pass() && matches!(a3, Some(Verdict::Fail { .. })) && c_ok;
    Ok((ok, format!("A(1+√2) {}, A3(2) {}, C(r = 1, 2, 7) {}", if silver.all_pass() { "pass" } else { "fail" }, a3.map_or("missing".into(), |v| v.to_string()), if c_ok { "pass" } else { "fail" })))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let lines = [
        run(1, "table2", s(10), table2),
        run(2, "mills-digits", s(300), mills_digits),
        run(3, "threshold", s(1), threshold_constant),
        run(4, "floors", s(30), floors),
        run(5, "agcd", s(5), agcd),
        run(6, "properties", s(600), properties),
        run(7, "profiles", s(60), profiles),
    ];
    let mut unexpected = false;
    for l in &lines {
        let verdict = if l.ok { "PASS" } else { "FAIL" };
        let known = !l.ok && KNOWN_RED.contains(&l.id);
        println!("{verdict} {} {:<13} {:>7.3} s  {}{}", l.id, l.name, l.elapsed.as_secs_f64(), l.detail, if known { " [known]" } else { "" });
        unexpected |= !l.ok && !known;
    }
    if unexpected { ExitCode::FAILURE } else { ExitCode::SUCCESS }
}
