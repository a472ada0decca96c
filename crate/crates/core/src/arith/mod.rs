//! Exact scalar and polynomial arithmetic.

pub mod factor;
pub mod fp;
pub mod int;
pub mod poly;
pub mod resultant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use factor::{factor_over_q, Factorization};
pub use fp::FpPoly;
pub use int::{kronecker, kronecker_big};
pub use poly::{Coeff, IntPoly, Poly, RatPoly};
pub use resultant::resultant;

use crate::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Always "num/den", denominator positive.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "a", "a/b", or a signed product of prime powers such as
/// "-3^2*5^6/2^3" (one '/' at most, exponents with '^').
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(&t)),
    };
    let mut halves = body.split('/');
    let num = halves.next().ok_or_else(bad)?;
    let den = halves.next();
    if halves.next().is_some() {
        return Err(bad());
    }
    let product = |e: &str| -> Result<BigInt, Error> {
        let mut acc = BigInt::one();
        for f in e.split('*') {
            let mut it = f.split('^');
            let base: BigInt = it.next().unwrap_or("").parse().map_err(|_| bad())?;
            let exp: u32 = match it.next() {
                Some(x) => x.parse().map_err(|_| bad())?,
                None => 1,
            };
            if it.next().is_some() {
                return Err(bad());
            }
            acc *= base.pow(exp);
        }
        Ok(acc)
    };
    let n = product(num)?;
    let d = match den {
        Some(d) => product(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    let r = BigRational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Exact rational cube root, if one exists.
pub fn rational_cbrt(r: &Rat) -> Option<Rat> {
    let n = int::exact_cbrt(r.numer())?;
    let d = int::exact_cbrt(r.denom())?;
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("-3^2*5^6/2^3").unwrap(), rat(-140625, 8));
        assert_eq!(parse_rat("3^3*5*7^5/2^7").unwrap(), rat(27 * 5 * 16807, 128));
        assert_eq!(parse_rat("12/8").unwrap(), rat(3, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(-6, 4)), "-3/2");
    }

    #[test]
    fn cube_roots() {
        assert_eq!(rational_cbrt(&rat(-1, 19683)), Some(rat(-1, 27)));
        assert_eq!(rational_cbrt(&rat(1, 2)), None);
    }
}
