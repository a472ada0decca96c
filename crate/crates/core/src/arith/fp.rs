//! Polynomials over F_p for word-sized primes, with distinct-degree and
//! equal-degree factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::int::{inv_mod, pow_mod};
use super::poly::IntPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    /// Coefficients ascending, reduced into [0, p). Requires p < 2^32.
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        assert!(p >= 2 && p < (1 << 32));
        let mut f = FpPoly {
            p,
            c: c.into_iter().map(|a| a % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_int_poly(p: u64, f: &IntPoly) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|a| a.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let s = self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0);
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FpPoly::new(p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                if a >= b {
                    a - b
                } else {
                    a + p - b
                }
            })
            .collect();
        FpPoly::new(p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        // accumulate in u128 lanes, reduce once
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] += (a * b) as u128;
            }
        }
        FpPoly::new(p, acc.into_iter().map(|v| (v % p as u128) as u64).collect())
    }

    pub fn scale(&self, a: u64) -> Self {
        let p = self.p;
        FpPoly::new(p, self.c.iter().map(|&x| x * (a % p) % p).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p).expect("p prime"))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let dd = d.deg();
        let inv = inv_mod(d.lc(), p).expect("p prime");
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd] * inv % p;
            if t == 0 {
                continue;
            }
            let nt = p - t;
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + nt * b) % p;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| a * (i as u64 % p) % p)
                .collect(),
        )
    }

    pub fn powmod(&self, mut e: BigInt, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        let two = BigInt::from(2);
        while e > BigInt::from(0) {
            if e.is_odd() {
                r = r.mul(&base).rem(m);
            }
            e /= &two;
            if e > BigInt::from(0) {
                base = base.mul(&base).rem(m);
            }
        }
        r
    }

    fn powmod_u64(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).deg() == 0
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = (acc * x + a) % self.p;
        }
        acc
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    /// Returns (d, product of all irreducible factors of degree d), plus
    /// the leftover whose factors all have degree > `max_deg`.
    pub fn distinct_degree(&self, max_deg: Option<usize>) -> (Vec<(usize, FpPoly)>, FpPoly) {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            if max_deg.is_some_and(|m| d > m) {
                return (out, f);
            }
            h = h.powmod_u64(p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.deg() > 0 {
            if max_deg.is_some_and(|m| f.deg() > m) {
                return (out, f);
            }
            out.push((f.deg(), f.clone()));
        }
        (out, FpPoly::one(p))
    }

    /// Splits a monic product of distinct degree-d irreducibles (odd p).
    pub fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<FpPoly> {
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        let e: BigInt = (BigInt::from(p).pow(d as u32) - BigInt::from(1)) / BigInt::from(2);
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = a.powmod(e.clone(), self).sub(&FpPoly::one(p));
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.monic().equal_degree(d, rng));
                return out;
            }
        }
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Brute-force root count, used by tests.
    pub fn count_roots(&self) -> usize {
        (0..self.p).filter(|&x| self.eval(x) == 0).count()
    }
}

/// Residue of a rational number modulo p, `None` if p divides the denominator.
pub fn rat_mod(r: &num_rational::BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    Some(n * inv_mod(d, p)? % p)
}

pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn ddf_and_edf() {
        // (x-1)(x-2)(x^2+1) mod 7: x^2+1 irreducible since -1 is a non-residue
        let p = 7;
        let f = FpPoly::new(p, vec![6, 1])
            .mul(&FpPoly::new(p, vec![5, 1]))
            .mul(&FpPoly::new(p, vec![1, 0, 1]));
        let (parts, rest) = f.distinct_degree(None);
        assert_eq!(rest.deg(), 0);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 1);
        assert_eq!(parts[0].1.deg(), 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut lin = parts[0].1.equal_degree(1, &mut rng);
        lin.sort_by_key(|g| g.coeffs().to_vec());
        assert_eq!(lin, vec![FpPoly::new(p, vec![5, 1]), FpPoly::new(p, vec![6, 1])]);
    }

    #[test]
    fn ddf_cap_leaves_large_factors() {
        let p = 5;
        // x^3 + x + 1 is irreducible mod 5 (no roots)
        let cubic = FpPoly::new(p, vec![1, 1, 0, 1]);
        assert_eq!(cubic.count_roots(), 0);
        let f = cubic.mul(&FpPoly::new(p, vec![1, 1]));
        let (parts, rest) = f.distinct_degree(Some(2));
        assert_eq!(parts.len(), 1);
        assert_eq!(rest, cubic);
    }

    #[test]
    fn legendre_symbol() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(14, 7), 0);
    }
}
