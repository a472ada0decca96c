//! Frobenius traces by character sums over F_p.

use rayon::prelude::*;

use super::EllipticCurveQ;
use crate::arith::fp::rat_mod;
use crate::arith::int::is_prime_u64;
use crate::{Error, Result};

/// a_p = p + 1 - #E(F_p) for an odd prime p of good reduction.
pub fn trace_of_frobenius(e: &EllipticCurveQ, p: u64) -> Result<i64> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    if p >= 1 << 31 {
        return Err(Error::Infeasible(format!("p = {p} too large for a table scan")));
    }
    if !e.has_good_reduction(p) {
        return Err(Error::BadReduction(p));
    }
    let b2 = rat_mod(&e.b2(), p).unwrap();
    let b4 = rat_mod(&e.b4(), p).unwrap();
    let b6 = rat_mod(&e.b6(), p).unwrap();
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=(p / 2) {
        chi[(y * y % p) as usize] = 1;
    }
    let c2 = b2;
    let c1 = 2 * b4 % p;
    let mut s: i64 = 0;
    for x in 0..p {
        let v = (((4 * x + c2) % p * x + c1) % p * x + b6) % p;
        s += chi[v as usize] as i64;
    }
    Ok(-s)
}

/// Traces for every good odd prime in `primes`, computed in parallel and
/// returned in input order. Bad primes are skipped.
pub fn frobenius_scan(e: &EllipticCurveQ, primes: &[u64]) -> Vec<(u64, i64)> {
    primes
        .par_iter()
        .filter(|&&p| p != 2 && e.has_good_reduction(p))
        .map(|&p| (p, trace_of_frobenius(e, p).expect("good odd prime")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supersingular_example() {
        let e = EllipticCurveQ::from_ints([0, 0, 0, 1, 0]).unwrap();
        assert_eq!(trace_of_frobenius(&e, 3).unwrap(), 0);
        // p = 3 mod 4 is supersingular for y^2 = x^3 + x
        for p in [7u64, 11, 19, 23, 31, 43] {
            assert_eq!(trace_of_frobenius(&e, p).unwrap(), 0);
        }
    }

    #[test]
    fn bad_primes_rejected() {
        let e = super::super::special_curve();
        let d = e.discriminant();
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let bad = (d.numer() % p) == num_bigint::BigInt::from(0);
            assert_eq!(trace_of_frobenius(&e, p).is_err(), bad, "p = {p}");
        }
        assert!(trace_of_frobenius(&e, 2).is_err());
        assert!(trace_of_frobenius(&e, 9).is_err());
    }

    #[test]
    fn hasse_bound() {
        let e = super::super::special_curve();
        let primes = crate::arith::int::primes_up_to(3000);
        for (p, a) in frobenius_scan(&e, &primes) {
            assert!((a * a) as u64 <= 4 * p, "p = {p}, a = {a}");
        }
    }
}
