//! Elliptic curves over Q in long Weierstrass form.

pub mod divpoly;
pub mod frobenius;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{fmt_rat, int, parse_rat, Rat};
use crate::{Error, Result};

pub use divpoly::{
    division_poly_set, primitive_division_poly, weber_setup, x1_degrees_from_poly, x1_point_degrees,
    DivisionPolySet, Weber, X1Degrees,
};
pub use frobenius::{frobenius_scan, trace_of_frobenius};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCurveQ {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

impl EllipticCurveQ {
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<Self> {
        let e = EllipticCurveQ { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4]))
    }

    /// y^2 = x^3 + a x + b
    pub fn short(a: Rat, b: Rat) -> Result<Self> {
        Self::new(Rat::zero(), Rat::zero(), Rat::zero(), a, b)
    }

    /// Parses five comma-separated coefficients "a1,a2,a3,a4,a6".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim_matches(['[', ']']).split(',').collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!("expected five coefficients, got {s:?}")));
        }
        let v = parts
            .iter()
            .map(|t| parse_rat(t.trim().trim_matches('"')))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone())
    }

    pub fn coeffs(&self) -> [Rat; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    pub fn b2(&self) -> Rat {
        &self.a1 * &self.a1 + int(4) * &self.a2
    }

    pub fn b4(&self) -> Rat {
        &self.a1 * &self.a3 + int(2) * &self.a4
    }

    pub fn b6(&self) -> Rat {
        &self.a3 * &self.a3 + int(4) * &self.a6
    }

    pub fn b8(&self) -> Rat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> Rat {
        let b2 = self.b2();
        &b2 * &b2 - int(24) * self.b4()
    }

    pub fn c6(&self) -> Rat {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + int(36) * &b2 * &b4 - int(216) * &b6
    }

    pub fn discriminant(&self) -> Rat {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - int(8) * &b4 * &b4 * &b4 - int(27) * &b6 * &b6
            + int(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Rat {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    /// A curve with the given j-invariant: y^2 = x^3 + 1 for j = 0,
    /// y^2 = x^3 + x for j = 1728, otherwise y^2 = x^3 + A x + A with
    /// A = 27j / (4(1728 - j)), cleared to integers and reduced by twisting.
    pub fn from_j(j: &Rat) -> Self {
        if j.is_zero() {
            return Self::short(Rat::zero(), Rat::one()).unwrap();
        }
        if *j == int(1728) {
            return Self::short(Rat::one(), Rat::zero()).unwrap();
        }
        let a = int(27) * j / (int(4) * (int(1728) - j));
        let (n, d) = (a.numer().clone(), a.denom().clone());
        let d3 = &d * &d * &d;
        let aa = &n * &d3;
        let bb = &n * &d3 * &d * &d;
        let (aa, bb) = reduce_twist(aa, bb);
        Self::short(Rat::from_integer(aa), Rat::from_integer(bb)).unwrap()
    }

    /// Integral short model y^2 = x^3 + A x + B, twist-equivalent to self
    /// (same j-invariant) and reduced so no q has q^2 | A and q^3 | B for
    /// small primes q. Only used where quantities are twist invariant.
    pub fn short_twist_model(&self) -> (BigInt, BigInt) {
        let a = int(-27) * self.c4();
        let b = int(-54) * self.c6();
        let u = a.denom().lcm(b.denom());
        let u2 = &u * &u;
        let u4 = &u2 * &u2;
        let aa = (a * Rat::from_integer(u4.clone())).to_integer();
        let bb = (b * Rat::from_integer(&u4 * &u2)).to_integer();
        reduce_twist(aa, bb)
    }

    /// Quadratic twist by d: y^2 = x^3 + d^2 A x + d^3 B on the short model.
    pub fn quadratic_twist(&self, d: i64) -> Self {
        let a = int(-27) * self.c4();
        let b = int(-54) * self.c6();
        let dd = int(d);
        Self::short(&dd * &dd * a, &dd * &dd * &dd * b).unwrap()
    }

    /// Integral long model y^2 + ... with a_i' = u^i a_i, and u.
    pub fn integral_model(&self) -> (EllipticCurveQ, BigInt) {
        let mut u = BigInt::one();
        for a in self.coeffs().iter() {
            u = u.lcm(a.denom());
        }
        let ur = Rat::from_integer(u.clone());
        let c = self.coeffs();
        let pw = |k: u32| {
            let mut r = Rat::one();
            for _ in 0..k {
                r *= &ur;
            }
            r
        };
        let e = EllipticCurveQ::new(
            &c[0] * pw(1),
            &c[1] * pw(2),
            &c[2] * pw(3),
            &c[3] * pw(4),
            &c[4] * pw(6),
        )
        .expect("isomorphic model is smooth");
        (e, u)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|a| a.is_integer())
    }

    /// Primes dividing the numerator of the discriminant or any denominator.
    pub fn has_good_reduction(&self, p: u64) -> bool {
        let pb = BigInt::from(p);
        if self.coeffs().iter().any(|a| (a.denom() % &pb).is_zero()) {
            return false;
        }
        let d = self.discriminant();
        !(d.numer() % &pb).is_zero()
    }

    pub fn to_strings(&self) -> [String; 5] {
        let c = self.coeffs();
        [
            fmt_rat(&c[0]),
            fmt_rat(&c[1]),
            fmt_rat(&c[2]),
            fmt_rat(&c[3]),
            fmt_rat(&c[4]),
        ]
    }
}

/// Divides out q^2 from A and q^3 from B for every small prime q where both
/// allow it.
fn reduce_twist(mut a: BigInt, mut b: BigInt) -> (BigInt, BigInt) {
    let g = a.gcd(&b);
    if g.is_zero() {
        return (a, b);
    }
    let mut rest = g.abs();
    let mut q = 2u64;
    while q < 1_000_000 && rest > BigInt::one() {
        let qb = BigInt::from(q);
        if (&rest % &qb).is_zero() {
            while (&rest % &qb).is_zero() {
                rest /= &qb;
            }
            let q2 = &qb * &qb;
            let q3 = &q2 * &qb;
            while (&a % &q2).is_zero() && (&b % &q3).is_zero() {
                a /= &q2;
                b /= &q3;
            }
        }
        q += 1;
    }
    // a leftover large prime is left alone; the result is still a twist
    (a, b)
}

impl Serialize for EllipticCurveQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EllipticCurveQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 5 {
            return Err(serde::de::Error::custom("expected five coefficients"));
        }
        let r = v
            .iter()
            .map(|t| parse_rat(t))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        EllipticCurveQ::new(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone(), r[4].clone())
            .map_err(serde::de::Error::custom)
    }
}

/// The curve of j-invariant 3^3*5*7^5/2^7 used throughout the mod-49 analysis.
pub fn special_curve() -> EllipticCurveQ {
    EllipticCurveQ::from_ints([1, -1, 0, -107, -379]).unwrap()
}

pub fn rat_from_big(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_rat, rat};

    #[test]
    fn special_j() {
        assert_eq!(EllipticCurveQ::from_ints([0, 0, 0, 0, 1]).unwrap().j_invariant(), int(0));
        assert_eq!(
            EllipticCurveQ::from_ints([0, 0, 0, 1, 0]).unwrap().j_invariant(),
            int(1728)
        );
        assert_eq!(
            special_curve().j_invariant(),
            parse_rat("3^3*5*7^5/2^7").unwrap()
        );
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(EllipticCurveQ::from_ints([0, 0, 0, 0, 0]), Err(Error::Singular));
        assert!(EllipticCurveQ::from_ints([0, 0, 0, -3, 2]).is_err());
    }

    #[test]
    fn model_from_j_has_that_j() {
        for j in [rat(-140625, 8), rat(351, 4), rat(1, 3), rat(-5, 7), int(8000)] {
            let e = EllipticCurveQ::from_j(&j);
            assert_eq!(e.j_invariant(), j);
            assert!(e.is_integral());
        }
        assert_eq!(EllipticCurveQ::from_j(&int(0)).j_invariant(), int(0));
        assert_eq!(EllipticCurveQ::from_j(&int(1728)).j_invariant(), int(1728));
    }

    #[test]
    fn short_twist_model_keeps_j() {
        let e = special_curve();
        let (a, b) = e.short_twist_model();
        let s = EllipticCurveQ::short(rat_from_big(a), rat_from_big(b)).unwrap();
        assert_eq!(s.j_invariant(), e.j_invariant());
        let t = e.quadratic_twist(-3);
        assert_eq!(t.j_invariant(), e.j_invariant());
    }

    #[test]
    fn parse_and_json() {
        let e = EllipticCurveQ::parse("1,-1,0,-107,-379").unwrap();
        assert_eq!(e, special_curve());
        let s = serde_json::to_string(&e).unwrap();
        let back: EllipticCurveQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
