//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_rat, parse_rat};

/// Exact coefficient ring. Reference arithmetic avoids cloning big values.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
}

macro_rules! impl_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            #[inline]
            fn add_ref(&self, o: &Self) -> Self {
                self + o
            }
            #[inline]
            fn sub_ref(&self, o: &Self) -> Self {
                self - o
            }
            #[inline]
            fn mul_ref(&self, o: &Self) -> Self {
                self * o
            }
            #[inline]
            fn neg_ref(&self) -> Self {
                -self
            }
            #[inline]
            fn div_exact(&self, o: &Self) -> Self {
                self / o
            }
        }
    };
}
impl_coeff!(BigInt);
impl_coeff!(BigRational);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    c: Vec<C>,
}

pub type RatPoly = Poly<BigRational>;
pub type IntPoly = Poly<BigInt>;

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![C::one()] }
    }

    pub fn x() -> Self {
        Poly::monomial(C::one(), 1)
    }

    pub fn constant(a: C) -> Self {
        Poly::new(vec![a])
    }

    pub fn monomial(a: C, k: usize) -> Self {
        let mut c = vec![C::zero(); k + 1];
        c[k] = a;
        Poly::new(c)
    }

    /// Coefficients in ascending degree.
    pub fn new(c: Vec<C>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> C {
        self.c.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, a: &C) -> Self {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.c.iter().map(|x| x.mul_ref(a)).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![C::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul_ref(x).add_ref(a);
        }
        acc
    }

    /// self(g(x))
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(a.clone());
        }
        acc
    }

    /// self(x^k)
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![C::zero(); self.deg() * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * k] = a.clone();
        }
        Poly { c }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.c.len().saturating_sub(1));
        let mut k = C::zero();
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                out.push(a.mul_ref(&k));
            }
            k = k.add_ref(&C::one());
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut r = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        r
    }

    /// Multiplicity of x as a factor.
    pub fn x_valuation(&self) -> usize {
        self.c.iter().take_while(|a| a.is_zero()).count()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.c.iter().map(f).collect())
    }

    /// Quotient when `d` is known to divide `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            debug_assert!(self.is_zero(), "inexact polynomial division");
            return Poly::zero();
        }
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![C::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            if r[k + dd].is_zero() {
                continue;
            }
            let t = r[k + dd].div_exact(&lc);
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] = r[k + j].sub_ref(&t.mul_ref(b));
                }
            }
            q[k] = t;
        }
        debug_assert!(r[..dd].iter().all(|a| a.is_zero()), "inexact polynomial division");
        Poly::new(q)
    }
}

fn mul_slices<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        let n = self.c.len().max(o.c.len());
        let z = C::zero();
        let c = (0..n)
            .map(|i| {
                self.c
                    .get(i)
                    .unwrap_or(&z)
                    .add_ref(o.c.get(i).unwrap_or(&z))
            })
            .collect();
        Poly::new(c)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        let n = self.c.len().max(o.c.len());
        let z = C::zero();
        let c = (0..n)
            .map(|i| {
                self.c
                    .get(i)
                    .unwrap_or(&z)
                    .sub_ref(o.c.get(i).unwrap_or(&z))
            })
            .collect();
        Poly::new(c)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        Poly::new(mul_slices(&self.c, &o.c))
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.c.iter().map(|a| a.neg_ref()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                (&self).$m(&o)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: &Poly<C>) -> Poly<C> {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})*x")?,
                _ => write!(f, "({a})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}

// Q[x] as a coefficient ring, giving bivariate polynomials Poly<RatPoly>.
impl Coeff for RatPoly {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl RatPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(
            c.iter()
                .map(|&a| BigRational::from_integer(BigInt::from(a)))
                .collect(),
        )
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        p.map(|a| BigRational::from_integer(a.clone()))
    }

    /// Long division over Q.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut q = vec![BigRational::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] = &r[k + j] - &(&t * b);
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd, computed through primitive integer remainder sequences.
    pub fn gcd(&self, o: &Self) -> Self {
        let (_, a) = self.to_primitive();
        let (_, b) = o.to_primitive();
        RatPoly::from_int_poly(&a.gcd(&b)).monic()
    }

    /// Splits into rational content and primitive integer part with positive
    /// leading coefficient: self = content * prim.
    pub fn to_primitive(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (BigRational::zero(), Poly::zero());
        }
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| a.numer() * (&den / a.denom()))
            .collect();
        let ip = Poly::new(ints);
        let mut cont = ip.content();
        if ip.lc().is_negative() {
            cont = -cont;
        }
        let prim = ip.map(|a| a / &cont);
        (BigRational::new(cont, den), prim)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.eval(x)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(fmt_rat).collect()
    }

    pub fn from_strings<S: AsRef<str>>(v: &[S]) -> Result<Self, crate::Error> {
        let c = v
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(c))
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        RatPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

impl IntPoly {
    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for a in &self.c {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.map(|a| a / &g)
    }

    /// Exact quotient over Z, `None` if `d` does not divide `self` in Z[x].
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            if r[k + dd].is_zero() {
                continue;
            }
            let (t, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] -= &t * b;
                }
            }
            q[k] = t;
        }
        if r[..dd].iter().all(|a| a.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder: lc(d)^(deg self - deg d + 1) * self mod d.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        if self.c.len() < d.c.len() {
            return self.clone();
        }
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.c.clone();
        for k in (0..=(r.len() - 1 - dd)).rev() {
            let t = r[k + dd].clone();
            for a in r.iter_mut() {
                *a *= &lc;
            }
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &t * b;
                }
            }
        }
        r.truncate(dd);
        Poly::new(r)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.c.iter().map(|a| a.abs()).max().unwrap_or_default()
    }

    /// Squared Euclidean norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.c.iter().map(|a| a * a).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(&a * &b, IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(a.pow(3), IntPoly::from_i64(&[1, 3, 3, 1]));
        assert_eq!(
            IntPoly::from_i64(&[0, 0, 1]).compose(&a),
            IntPoly::from_i64(&[1, 2, 1])
        );
        assert_eq!(
            IntPoly::from_i64(&[5, 1, 2]).derivative(),
            IntPoly::from_i64(&[1, 4])
        );
    }

    #[test]
    fn division_and_gcd() {
        let f = RatPoly::from_ints(&[-1, 0, 0, 1]);
        let g = RatPoly::from_ints(&[-1, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, RatPoly::from_ints(&[1, 1, 1]));
        let h = RatPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(f.gcd(&h), g);
        let a = IntPoly::from_i64(&[6, 5, 1]);
        assert_eq!(
            a.exact_div(&IntPoly::from_i64(&[2, 1])),
            Some(IntPoly::from_i64(&[3, 1]))
        );
        assert_eq!(a.exact_div(&IntPoly::from_i64(&[1, 2])), None);
    }

    #[test]
    fn primitive_split() {
        let f = RatPoly::from_strings(&["-1/2", "0", "3/4"]).unwrap();
        let (c, p) = f.to_primitive();
        assert_eq!(p, IntPoly::from_i64(&[-2, 0, 3]));
        assert_eq!(&RatPoly::from_int_poly(&p).scale(&c), &f);
    }

    #[test]
    fn json_roundtrip() {
        let f = RatPoly::from_strings(&["1/3", "-2", "0", "7/5"]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["1/3","-2/1","0/1","7/5"]"#);
        let g: RatPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
