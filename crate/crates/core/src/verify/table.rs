//! Cubic Pisot numbers up to 3 and the floors of their powers.

use num_bigint::BigUint;
use num_rational::BigRational;

use super::report::{Check, Comparison, Outcome, VerificationReport};
use crate::error::Result;
use crate::exactnum::factor::factorize;
use crate::exactnum::prime::is_prime;
use crate::pisot::{enumerate_cubic_pisot, floor_power, PisotNumber};

/// Printed root digits and minimal polynomial of α_1 < ... < α_20.
pub const TABLE2: [(&str, &str); 20] = [
    ("1.32471795724474602596", "X^3 - X - 1"),
    ("1.46557123187676802665", "X^3 - X^2 - 1"),
    ("1.75487766624669276004", "X^3 - 2X^2 + X - 1"),
    ("1.83928675521416113255", "X^3 - X^2 - X - 1"),
    ("2.14789903570478735402", "X^3 - X^2 - 2X - 1"),
    ("2.20556943040059031170", "X^3 - 2X^2 - 1"),
    ("2.24697960371746706105", "X^3 - 2X^2 - X + 1"),
    ("2.26953084208114277085", "X^3 - X^2 - 2X - 2"),
    ("2.32471795724474602596", "X^3 - 3X^2 + 2X - 1"),
    ("2.35930408597177642073", "X^3 - 2X^2 - 2"),
    ("2.51154714169453198401", "X^3 - X^2 - 3X - 2"),
    ("2.52137970680456756960", "X^3 - 3X^2 + 2X - 2"),
    ("2.54681827688408207913", "X^3 - 2X^2 - X - 1"),
    ("2.65896708191699407934", "X^3 - 2X^2 - X - 2"),
    ("2.76929235423863141524", "X^3 - 3X^2 + X - 1"),
    ("2.83117720720833690413", "X^3 - 2X^2 - 2X - 1"),
    ("2.83928675521416113255", "X^3 - 4X^2 + 4X - 2"),
    ("2.87938524157181676810", "X^3 - 3X^2 + 1"),
    ("2.89328919630449778890", "X^3 - 3X^2 + X - 2"),
    ("2.91963956583941814511", "X^3 - 2X^2 - 2X - 2"),
];

/// (j, k, value, factorization): ⌊(α_j^{1/2})^{3^k − 1}⌋ = ⌊α_j^{(3^k − 1)/2}⌋.
pub const FLOORS: [(usize, u32, &str, &str); 16] = [
    (5, 2, "21", "3·7"),
    (6, 3, "29226", "2·3·4871"),
    (7, 2, "25", "5^2"),
    (8, 2, "26", "2·13"),
    (9, 4, "451659150174378", "2·3·43·1750616861141"),
    (10, 2, "30", "2·3·5"),
    (11, 2, "39", "3·13"),
    (12, 2, "40", "2^3·5"),
    (13, 2, "42", "2·3·7"),
    (14, 2, "49", "7^2"),
    (15, 2, "58", "2·29"),
    (16, 2, "64", "2^6"),
    (17, 2, "64", "2^6"),
    (18, 2, "68", "2^2·17"),
    (19, 2, "70", "2·5·7"),
    (20, 2, "72", "2^3·3^2"),
];

/// (j, exponent of α_j, value): ⌊α_1^{3−1}⌋ and ⌊α_2^{3^2−1}⌋.
pub const FLOORS_SMALL: [(usize, u64, &str); 2] = [(1, 2, "1"), (2, 8, "21")];

fn table() -> Result<Vec<PisotNumber>> {
    enumerate_cubic_pisot(&BigRational::from_integer(3.into()))
}

pub fn verify_table2() -> Result<VerificationReport> {
    let found = table()?;
    let mut r = VerificationReport::default();
    r.push(Check::new(
        "table2.count",
        "cubic Pisot numbers up to 3",
        "20",
        found.len().to_string(),
        Comparison::Exact,
        Outcome::from_bool(found.len() == TABLE2.len()),
    ));
    for (i, (digits, poly)) in TABLE2.iter().enumerate() {
        let (computed, ok) = match found.get(i) {
            Some(p) => {
                let d = p.dominant_root().certified_digits(20);
                let poly_c = p.poly().to_string();
                let ok = d.decimals == 20 && d.text == *digits && poly_c == *poly;
                (format!("{}, {}", d.text, poly_c), ok)
            }
            None => ("missing".to_string(), false),
        };
        r.push(Check::new(
            format!("table2.row{:02}", i + 1),
            format!("cubic Pisot table, row {}", i + 1),
            format!("{digits}, {poly}"),
            computed,
            Comparison::Exact,
            Outcome::from_bool(ok),
        ));
    }
    Ok(r)
}

fn floor_check(id: String, location: String, p: &PisotNumber, n: u64, value: &str, factors: Option<&str>) -> Result<Check> {
    let f = floor_power(p, n)?;
    let expected_value: BigUint = value.parse().expect("table literal");
    let (expected, computed, ok) = match factors {
        Some(fs) => {
            let fact = factorize(&f)?;
            let ok = f == expected_value && fact.render() == fs && fact.is_composite();
            let tag = if fact.is_composite() { "composite" } else { "not composite" };
            (format!("{value} = {fs}, composite"), format!("{f} = {}, {tag}", fact.render()), ok)
        }
        None => {
            let prime = is_prime(&f);
            let tag = if prime { "prime" } else { "not prime" };
            (format!("{value}, not prime"), format!("{f}, {tag}"), f == expected_value && !prime)
        }
    };
    Ok(Check::new(id, location, expected, computed, Comparison::Exact, Outcome::from_bool(ok)))
}

pub fn verify_floor_table() -> Result<VerificationReport> {
    let t = table()?;
    let mut r = VerificationReport::default();
    for (j, n, value) in FLOORS_SMALL {
        r.push(floor_check(
            format!("floors.alpha{j}"),
            format!("floor of α_{j}^{n}"),
            &t[j - 1],
            n,
            value,
            if j == 2 { Some("3·7") } else { None },
        )?);
    }
    for j in 1..=4 {
        r.push(floor_check(format!("floors.sqrt-alpha{j}.k1"), format!("floor of (α_{j}^(1/2))^(3^1 − 1)"), &t[j - 1], 1, "1", None)?);
    }
    for (j, k, value, fs) in FLOORS {
        let n = (3u64.pow(k) - 1) / 2;
        r.push(floor_check(
            format!("floors.sqrt-alpha{j}.k{k}"),
            format!("floor of (α_{j}^(1/2))^(3^{k} − 1)"),
            &t[j - 1],
            n,
            value,
            Some(fs),
        )?);
    }
    Ok(r)
}
