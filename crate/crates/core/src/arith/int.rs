//! Small-integer number theory: primes, factorization, totients, symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Trial-division factorization, ascending primes.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize_u64(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut k = i * i;
            while k <= n {
                sieve[k] = false;
                k += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for (p, _) in factorize_u64(n) {
        r = r / p * (p - 1);
    }
    r
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// J(N) = N^2 prod (1 - p^-2): the number of vectors of exact order N in (Z/N)^2.
pub fn jordan_j2(n: u64) -> u64 {
    let mut r = n * n;
    for p in prime_divisors(n) {
        r = r / (p * p) * (p * p - 1);
    }
    r
}

/// Kronecker symbol (a | n).
pub fn kronecker_big(a: &BigInt, n: &BigInt) -> i32 {
    assert!(!n.is_zero(), "kronecker symbol needs n != 0");
    let mut a = a.clone();
    let mut n = n.clone();
    let mut t = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            t = -t;
        }
    }
    let two = BigInt::from(2);
    let mut v = 0u32;
    while n.is_even() {
        n /= &two;
        v += 1;
    }
    if v > 0 {
        if a.is_even() {
            return 0;
        }
        let r8 = a.mod_floor(&BigInt::from(8)).to_u32().unwrap();
        if v % 2 == 1 && (r8 == 3 || r8 == 5) {
            t = -t;
        }
    }
    // n is now odd and positive: Jacobi symbol
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let r8 = n.mod_floor(&BigInt::from(8)).to_u32().unwrap();
            if r8 == 3 || r8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let three = BigInt::from(3);
        let four = BigInt::from(4);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

pub fn kronecker(a: i64, n: i64) -> i32 {
    kronecker_big(&BigInt::from(a), &BigInt::from(n))
}

/// Exact integer cube root, if `n` is a perfect cube.
pub fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    if &(&r * &r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-43, 43), 0);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-11, 2), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(5, 4), 1);
        assert_eq!(kronecker(-1, -1), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in -50i64..50 {
                let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let want = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(kronecker(a, p as i64), want, "({a}|{p})");
            }
        }
    }

    #[test]
    fn totient_and_j2() {
        assert_eq!(euler_phi(25), 20);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(jordan_j2(21), 384);
        assert_eq!(jordan_j2(4), 12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primality() {
        let small = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), small.binary_search(&n).is_ok());
        }
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn cube_roots() {
        assert_eq!(exact_cbrt(&BigInt::from(-27)), Some(BigInt::from(-3)));
        assert_eq!(exact_cbrt(&BigInt::from(-324)), None);
    }
}
