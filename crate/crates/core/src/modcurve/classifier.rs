//! Levels n for which a non-cuspidal odd-degree point on X1(n) can sit
//! above a given j-invariant.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::isogeny_allowed;
use crate::arith::int::{factorize_u64, gcd_u64, prime_divisors};
use crate::arith::{fmt_rat, parse_rat, Rat};
use crate::{Error, Result};

pub const SPECIAL_J: &str = "3^3*5*7^5/2^7";

pub const X0_21_J: [&str; 4] = [
    "-3^2*5^6/2^3",
    "3^3*5^3/2",
    "-3^2*5^3*101^3/2^21",
    "-3^3*5^3*383^3/2^7",
];

/// j-invariants where a 2-power can sit next to a p^b-torsion point with a = 2.
pub const EXCEPTION_J: [&str; 2] = ["-3^3*13*479^3/2^14", "3^3*13/2^2"];

/// Class number one orders: (discriminant, j).
pub const CM_J: [(i64, &str); 13] = [
    (-3, "0"),
    (-4, "1728"),
    (-7, "-3375"),
    (-8, "8000"),
    (-11, "-32768"),
    (-12, "54000"),
    (-16, "287496"),
    (-19, "-884736"),
    (-27, "-12288000"),
    (-28, "16581375"),
    (-43, "-884736000"),
    (-67, "-147197952000"),
    (-163, "-262537412640768000"),
];

pub fn cm_discriminant_of(j: &Rat) -> Option<i64> {
    CM_J.iter()
        .find(|(_, s)| parse_rat(s).unwrap() == *j)
        .map(|&(d, _)| d)
}

/// Fundamental discriminant of an imaginary quadratic discriminant.
pub fn fundamental_discriminant(d: i64) -> i64 {
    let mut d = d;
    for f in [2i64, 3, 5, 7, 11, 13] {
        while d % (f * f) == 0 && matches!((d / (f * f)).rem_euclid(4), 0 | 1) {
            d /= f * f;
        }
    }
    d
}

fn in_list(j: &Rat, list: &[&str]) -> bool {
    list.iter().any(|s| parse_rat(s).unwrap() == *j)
}

/// Flags attached to a j-invariant. The isogeny set lists degrees of rational
/// cyclic isogenies known for the curve; it is closed under divisors and
/// coprime products before use.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct JFlags {
    #[serde(default)]
    pub cm: Option<i64>,
    #[serde(default)]
    pub isogenies: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JContext {
    pub j: Rat,
    pub cm: Option<i64>,
    pub isogenies: BTreeSet<u64>,
}

impl JContext {
    pub fn new(j: Rat, flags: JFlags) -> Result<Self> {
        let found = cm_discriminant_of(&j);
        let cm = match (flags.cm, found) {
            (Some(d), Some(e)) if d == e => Some(d),
            (Some(d), _) => {
                return Err(Error::Invalid(format!(
                    "j = {} is not the j-invariant of the order of discriminant {d}",
                    fmt_rat(&j)
                )))
            }
            (None, f) => f,
        };
        let isogenies = close_isogenies(&flags.isogenies);
        if let Some(&bad) = isogenies.iter().find(|&&n| !isogeny_allowed(n)) {
            return Err(Error::Invalid(format!(
                "a rational cyclic {bad}-isogeny does not exist over Q"
            )));
        }
        if cm.is_none() && isogenies.contains(&21) && !in_list(&j, &X0_21_J) {
            return Err(Error::Invalid(format!(
                "j = {} is not a non-cuspidal rational point of X0(21)",
                fmt_rat(&j)
            )));
        }
        Ok(JContext { j, cm, isogenies })
    }

    pub fn parse(j: &str, flags_json: Option<&str>) -> Result<Self> {
        let j = parse_rat(j)?;
        let flags = match flags_json {
            Some(s) => serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?,
            None => JFlags::default(),
        };
        Self::new(j, flags)
    }

    pub fn is_special(&self) -> bool {
        self.j == parse_rat(SPECIAL_J).unwrap()
    }

    pub fn in_x0_21_list(&self) -> bool {
        in_list(&self.j, &X0_21_J)
    }

    pub fn in_exception_pair(&self) -> bool {
        in_list(&self.j, &EXCEPTION_J)
    }

    fn odd_isogeny_primes(&self) -> BTreeSet<u64> {
        self.isogenies
            .iter()
            .flat_map(|&n| prime_divisors(n))
            .filter(|&p| p != 2)
            .collect()
    }
}

fn close_isogenies(given: &[u64]) -> BTreeSet<u64> {
    let mut s: BTreeSet<u64> = BTreeSet::new();
    for &n in given.iter().filter(|&&n| n > 1) {
        s.extend(crate::arith::int::divisors(n).into_iter().filter(|&d| d > 1));
    }
    // p- and q-isogenies with coprime kernels compose to a cyclic pq-isogeny
    loop {
        let v: Vec<u64> = s.iter().copied().collect();
        let mut added = false;
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                if gcd_u64(a, b) == 1 && a * b < 1_000_000 && s.insert(a * b) {
                    added = true;
                }
            }
        }
        if !added {
            return s;
        }
    }
}

/// n = 2^a * m with the odd part m supported on `odd_primes`, a <= max_a,
/// and a <= max_a_if_odd when m > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub odd_primes: Vec<u64>,
    pub max_a: u32,
    pub max_a_if_odd: u32,
}

impl Branch {
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let a = n.trailing_zeros();
        let m = n >> a;
        if m > 1 && !factorize_u64(m).iter().all(|(p, _)| self.odd_primes.contains(p)) {
            return false;
        }
        a <= if m > 1 { self.max_a_if_odd } else { self.max_a }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = ["b", "c", "d", "e"];
        let mut s = String::from("2^a");
        for (p, v) in self.odd_primes.iter().zip(vars) {
            s += &format!("*{p}^{v}");
        }
        write!(f, "{s} : a <= {}", self.max_a)?;
        if self.max_a_if_odd < self.max_a {
            write!(f, "; a <= {} if the odd part is > 1", self.max_a_if_odd)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelConstraint {
    pub rule: String,
    pub branches: Vec<Branch>,
}

impl LevelConstraint {
    pub fn contains(&self, n: u64) -> bool {
        self.branches.iter().any(|b| b.contains(n))
    }

    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&n| self.contains(n)).collect()
    }
}

impl fmt::Display for LevelConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.branches.iter().map(|b| format!("{{{b}}}")).collect();
        write!(f, "{} ({})", parts.join(" or "), self.rule)
    }
}

/// The set of n such that X1(n) may carry a non-cuspidal odd-degree point
/// over the given j. Always a superset of the truth.
pub fn allowed_odd_degree_levels(ctx: &JContext) -> LevelConstraint {
    let br = |odd_primes: Vec<u64>, max_a, max_a_if_odd| Branch {
        odd_primes,
        max_a,
        max_a_if_odd,
    };
    if ctx.is_special() {
        return LevelConstraint {
            rule: "special j".into(),
            branches: vec![br(vec![7], 1, 1)],
        };
    }
    if let Some(d) = ctx.cm {
        let dk = fundamental_discriminant(d);
        let odd = if dk % 2 != 0 { vec![-dk as u64] } else { vec![] };
        return LevelConstraint {
            rule: format!("CM by discriminant {d}"),
            branches: vec![br(odd, 2, 1)],
        };
    }
    if ctx.in_x0_21_list() || ctx.isogenies.contains(&21) {
        return LevelConstraint {
            rule: "rational 21-isogeny".into(),
            branches: vec![br(vec![3, 7], 1, 1)],
        };
    }
    if ctx.isogenies.contains(&15) {
        return LevelConstraint {
            rule: "rational 15-isogeny".into(),
            branches: vec![br(vec![3], 1, 1), br(vec![5], 1, 1)],
        };
    }
    const CANDIDATES: [u64; 9] = [3, 5, 7, 11, 13, 19, 43, 67, 163];
    let primes: Vec<u64> = ctx
        .odd_isogeny_primes()
        .into_iter()
        .filter(|p| CANDIDATES.contains(p))
        .collect();
    let exception = ctx.in_exception_pair();
    let mut branches: Vec<Branch> = primes
        .iter()
        .map(|&p| br(vec![p], 3, if p >= 5 && !exception { 1 } else { 2 }))
        .collect();
    if branches.is_empty() {
        branches.push(br(vec![], 3, 3));
    }
    LevelConstraint {
        rule: "non-CM".into(),
        branches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(j: &str, flags: &str) -> Result<JContext> {
        JContext::parse(j, Some(flags))
    }

    #[test]
    fn special_j_branch() {
        let c = allowed_odd_degree_levels(&ctx(SPECIAL_J, "{}").unwrap());
        assert_eq!(c.branches, vec![Branch { odd_primes: vec![7], max_a: 1, max_a_if_odd: 1 }]);
        assert!(c.contains(14) && c.contains(49 * 2) && !c.contains(28) && !c.contains(21));
    }

    #[test]
    fn twenty_one_isogeny() {
        let c = allowed_odd_degree_levels(&ctx("-3^2*5^6/2^3", r#"{"isogenies":[21]}"#).unwrap());
        assert_eq!(c.branches, vec![Branch { odd_primes: vec![3, 7], max_a: 1, max_a_if_odd: 1 }]);
        assert!(c.contains(42) && c.contains(63) && !c.contains(84));
    }

    #[test]
    fn five_isogeny_refined() {
        let c = allowed_odd_degree_levels(&ctx("1/3", r#"{"isogenies":[5]}"#).unwrap());
        assert_eq!(c.branches, vec![Branch { odd_primes: vec![5], max_a: 3, max_a_if_odd: 1 }]);
        assert!(c.contains(8) && c.contains(50) && !c.contains(20) && !c.contains(15));
    }

    #[test]
    fn exception_pair_keeps_a_two() {
        let c = allowed_odd_degree_levels(&ctx("3^3*13/2^2", r#"{"isogenies":[7]}"#).unwrap());
        assert!(c.contains(28));
        let c = allowed_odd_degree_levels(&ctx("3^3*13/2^3", r#"{"isogenies":[7]}"#).unwrap());
        assert!(!c.contains(28));
        let c = allowed_odd_degree_levels(&ctx("1/7", r#"{"isogenies":[3]}"#).unwrap());
        assert!(c.contains(12) && !c.contains(24) && c.contains(8));
    }

    #[test]
    fn cm_orders() {
        let c = allowed_odd_degree_levels(&ctx("-884736000", "{}").unwrap());
        assert!(c.contains(43 * 43 * 2) && !c.contains(4 * 43) && c.contains(4) && !c.contains(8));
        let c = allowed_odd_degree_levels(&ctx("54000", r#"{"cm":-12}"#).unwrap());
        assert!(c.contains(18) && !c.contains(5));
        let c = allowed_odd_degree_levels(&ctx("1728", "{}").unwrap());
        assert_eq!(c.branches[0].odd_primes, Vec::<u64>::new());
        assert_eq!(fundamental_discriminant(-28), -7);
        assert_eq!(fundamental_discriminant(-16), -4);
        assert_eq!(fundamental_discriminant(-8), -8);
    }

    #[test]
    fn fifteen_isogeny_from_closure() {
        let c = allowed_odd_degree_levels(&ctx("1/11", r#"{"isogenies":[3,5]}"#).unwrap());
        assert_eq!(c.branches.len(), 2);
        assert!(c.contains(6) && c.contains(10) && !c.contains(15) && !c.contains(12));
    }

    #[test]
    fn inconsistent_rejected() {
        assert!(ctx("1/3", r#"{"isogenies":[5,7]}"#).is_err());
        assert!(ctx("1/3", r#"{"isogenies":[23]}"#).is_err());
        assert!(ctx("1/3", r#"{"isogenies":[21]}"#).is_err());
        assert!(ctx("1/3", r#"{"cm":-7}"#).is_err());
    }
}
