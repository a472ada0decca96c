//! Modular-curve bookkeeping: map degrees, genera, Riemann-Roch bounds and
//! the rational cyclic isogeny predicate.

pub mod classifier;

use crate::arith::int::{divisors, euler_phi, jordan_j2, kronecker, prime_divisors};
use crate::{Error, Result};

pub use classifier::{allowed_odd_degree_levels, Branch, JContext, LevelConstraint};

/// deg(X1(ab) -> X1(a)), [E, P] -> [E, bP].
pub fn deg_x1_to_x1(ab: u64, a: u64) -> Result<u64> {
    if a == 0 || ab == 0 || ab % a != 0 {
        return Err(Error::NotDivisible(a, ab));
    }
    let b = ab / a;
    let mut d = b * b;
    for p in prime_divisors(b) {
        if a % p != 0 {
            d = d / (p * p) * (p * p - 1);
        }
    }
    if a <= 2 && ab > 2 {
        debug_assert!(d % 2 == 0);
        d /= 2;
    }
    Ok(d)
}

/// deg(X1(N) -> X0(N)).
pub fn deg_x1_to_x0(n: u64) -> u64 {
    if n <= 2 {
        1
    } else {
        euler_phi(n) / 2
    }
}

pub fn genus_x1(n: u64) -> u64 {
    assert!(n >= 1);
    if n <= 4 {
        return 0;
    }
    // g = 1 + mu/12 - nu/2 with mu = J(N)/2 and nu = (1/2) sum phi(d) phi(N/d)
    let mu = jordan_j2(n) / 2;
    let s: u64 = divisors(n)
        .into_iter()
        .map(|d| euler_phi(d) * euler_phi(n / d))
        .sum();
    let num = 12 + mu as i64 - 3 * s as i64;
    assert!(num >= 0 && num % 12 == 0, "genus formula not integral at N = {n}");
    (num / 12) as u64
}

pub fn index_x0(n: u64) -> u64 {
    let mut r = n;
    for p in prime_divisors(n) {
        r = r / p * (p + 1);
    }
    r
}

pub fn genus_x0(n: u64) -> u64 {
    assert!(n >= 1);
    let mu = index_x0(n) as i64;
    let primes = prime_divisors(n);
    let nu2: i64 = if n % 4 == 0 {
        0
    } else {
        primes
            .iter()
            .map(|&p| 1 + kronecker(-4, p as i64) as i64)
            .product()
    };
    let nu3: i64 = if n % 9 == 0 {
        0
    } else {
        primes
            .iter()
            .map(|&p| 1 + kronecker(-3, p as i64) as i64)
            .product()
    };
    let cusps: i64 = divisors(n)
        .into_iter()
        .map(|d| euler_phi(num_integer::gcd(d, n / d)) as i64)
        .sum();
    let num = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    assert!(num >= 0 && num % 12 == 0, "genus formula not integral at N = {n}");
    (num / 12) as u64
}

/// Riemann-Roch lower bound max(1, deg - genus + 1) for a degree `deg`
/// effective divisor.
pub fn rr_lower_bound(deg: u64, genus: u64) -> u64 {
    let b = deg as i64 - genus as i64 + 1;
    b.max(1) as u64
}

/// A point whose divisor has a Riemann-Roch space of dimension >= 2 moves in
/// a pencil, so is not P^1-isolated.
pub fn not_p1_isolated(deg: u64, genus: u64) -> bool {
    rr_lower_bound(deg, genus) >= 2
}

/// Degrees N of rational cyclic N-isogenies over Q.
pub fn isogeny_allowed(n: u64) -> bool {
    n >= 1 && (n <= 19 || matches!(n, 21 | 25 | 27 | 37 | 43 | 67 | 163))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_degrees() {
        assert_eq!(deg_x1_to_x1(50, 25).unwrap(), 3);
        assert_eq!(deg_x1_to_x1(36, 12).unwrap(), 9);
        assert_eq!(deg_x1_to_x1(4, 2).unwrap(), 2);
        assert_eq!(deg_x1_to_x1(2, 1).unwrap(), 3);
        assert_eq!(deg_x1_to_x1(7, 7).unwrap(), 1);
        assert!(deg_x1_to_x1(10, 3).is_err());
        assert_eq!(deg_x1_to_x0(2), 1);
        assert_eq!(deg_x1_to_x0(5), 2);
        assert_eq!(deg_x1_to_x0(25), 10);
    }

    #[test]
    fn x1_degree_to_the_j_line() {
        // deg(X1(N) -> X1(1)) = J(N)/2 for N >= 3
        for n in 3..60 {
            assert_eq!(deg_x1_to_x1(n, 1).unwrap(), jordan_j2(n) / 2);
        }
    }

    #[test]
    fn genera() {
        for (n, g) in [
            (11, 1),
            (13, 2),
            (14, 1),
            (18, 2),
            (21, 5),
            (22, 6),
            (25, 12),
            (26, 10),
            (27, 13),
            (28, 10),
            (36, 17),
            (42, 25),
            (43, 57),
            (67, 155),
            (163, 1027),
        ] {
            assert_eq!(genus_x1(n), g, "X1({n})");
        }
        for n in (1..=10).chain([12]) {
            assert_eq!(genus_x1(n), 0, "X1({n})");
        }
        assert_eq!(genus_x0(27), 1);
        assert_eq!(genus_x0(13), 0);
        assert_eq!(genus_x0(37), 2);
        assert_eq!(genus_x0(11), 1);
        assert_eq!(genus_x0(1), 0);
        assert_eq!(genus_x0(64), 3);
    }

    #[test]
    fn riemann_roch() {
        assert_eq!(rr_lower_bound(63, 5), 59);
        assert_eq!(rr_lower_bound(27, 17), 11);
        assert_eq!(rr_lower_bound(4, 4), 1);
        assert!(!not_p1_isolated(4, 4));
        assert!(not_p1_isolated(63, 5));
        // the degree-9 point on X1(28): the bound says nothing
        assert_eq!(rr_lower_bound(9, 10), 1);
    }

    #[test]
    fn isogenies() {
        assert!(isogeny_allowed(21));
        assert!(!isogeny_allowed(50));
        assert!(!isogeny_allowed(36));
        assert!(isogeny_allowed(163));
        assert!(!isogeny_allowed(20));
        assert!(isogeny_allowed(18));
    }
}
