//! Division polynomials in x alone, and the degrees of points on X1(N)
//! above a given j-invariant.
//!
//! Convention: f_n = psi_n for odd n and f_n = psi_n / psi_2 for even n,
//! where psi_2^2 = F2 = 4x^3 + b2 x^2 + 2 b4 x + b6. Then
//! T_n = f_n (n odd), f_n * F2 (n even) vanishes exactly at the x-coordinates
//! of the nonzero n-torsion, and the primitive part Lambda_n is T_n divided
//! by Lambda_d for all proper divisors 1 < d < n.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::EllipticCurveQ;
use crate::arith::{factor_over_q, Coeff, IntPoly, Poly, RatPoly};
use crate::{Error, Result};

#[derive(Clone)]
pub struct DivisionPolySet<C: Coeff> {
    b2: C,
    b4: C,
    b6: C,
    b8: C,
    f2: Poly<C>,
    memo: HashMap<usize, Poly<C>>,
    prim: HashMap<usize, Poly<C>>,
}

impl<C: Coeff> DivisionPolySet<C> {
    pub fn from_b(b2: C, b4: C, b6: C, b8: C) -> Self {
        let two = C::one().add_ref(&C::one());
        let four = two.add_ref(&two);
        let f2 = Poly::new(vec![b6.clone(), two.mul_ref(&b4), b2.clone(), four]);
        DivisionPolySet {
            b2,
            b4,
            b6,
            b8,
            f2,
            memo: HashMap::new(),
            prim: HashMap::new(),
        }
    }

    fn k(n: i64) -> C {
        let mut r = C::zero();
        let one = C::one();
        for _ in 0..n.unsigned_abs() {
            r = r.add_ref(&one);
        }
        if n < 0 {
            r.neg_ref()
        } else {
            r
        }
    }

    /// 4x^3 + b2 x^2 + 2 b4 x + b6
    pub fn two_torsion(&self) -> &Poly<C> {
        &self.f2
    }

    /// f_n in the convention of the module docs.
    pub fn f(&mut self, n: usize) -> Poly<C> {
        if let Some(p) = self.memo.get(&n) {
            return p.clone();
        }
        let (b2, b4, b6, b8) = (&self.b2, &self.b4, &self.b6, &self.b8);
        let k = Self::k;
        let r = match n {
            0 => Poly::zero(),
            1 | 2 => Poly::one(),
            3 => Poly::new(vec![
                b8.clone(),
                k(3).mul_ref(b6),
                k(3).mul_ref(b4),
                b2.clone(),
                k(3),
            ]),
            4 => Poly::new(vec![
                b4.mul_ref(b8).sub_ref(&b6.mul_ref(b6)),
                b2.mul_ref(b8).sub_ref(&b4.mul_ref(b6)),
                k(10).mul_ref(b8),
                k(10).mul_ref(b6),
                k(5).mul_ref(b4),
                b2.clone(),
                k(2),
            ]),
            _ if n % 2 == 1 => {
                let m = (n - 1) / 2;
                let fm = self.f(m);
                let fm2 = self.f(m + 2);
                let fm1 = self.f(m - 1);
                let fp1 = self.f(m + 1);
                let f2sq = &self.f2 * &self.f2;
                let a = &fm2 * &fm.pow(3);
                let b = &fm1 * &fp1.pow(3);
                if m % 2 == 0 {
                    &(&f2sq * &a) - &b
                } else {
                    &a - &(&f2sq * &b)
                }
            }
            _ => {
                let m = n / 2;
                let fm = self.f(m);
                let fm2 = self.f(m + 2);
                let fm1 = self.f(m - 1);
                let fmm2 = self.f(m - 2);
                let fp1 = self.f(m + 1);
                let inner = &(&fm2 * &fm1.pow(2)) - &(&fmm2 * &fp1.pow(2));
                &fm * &inner
            }
        };
        self.memo.insert(n, r.clone());
        r
    }

    /// Vanishes exactly at x(P) for the nonzero n-torsion points P.
    pub fn torsion_x(&mut self, n: usize) -> Poly<C> {
        assert!(n >= 2);
        let f = self.f(n);
        if n % 2 == 0 {
            &f * &self.f2
        } else {
            f
        }
    }

    /// Lambda_n: vanishes exactly at x(P) for P of exact order n.
    pub fn primitive(&mut self, n: usize) -> Poly<C> {
        assert!(n >= 2);
        if let Some(p) = self.prim.get(&n) {
            return p.clone();
        }
        let mut t = self.torsion_x(n);
        for d in crate::arith::int::divisors(n as u64) {
            let d = d as usize;
            if d > 1 && d < n {
                let ld = self.primitive(d);
                t = t.div_exact(&ld);
            }
        }
        self.prim.insert(n, t.clone());
        t
    }
}

impl DivisionPolySet<BigRational> {
    pub fn new(e: &EllipticCurveQ) -> Self {
        Self::from_b(e.b2(), e.b4(), e.b6(), e.b8())
    }
}

impl DivisionPolySet<BigInt> {
    /// y^2 = x^3 + A x + B with integer A, B.
    pub fn short_int(a: &BigInt, b: &BigInt) -> Self {
        Self::from_b(BigInt::zero(), a * 2, b * 4, -(a * a))
    }

    /// Integer-coefficient set; requires an integral model.
    pub fn integral(e: &EllipticCurveQ) -> Self {
        assert!(e.is_integral());
        let z = |r: BigRational| r.to_integer();
        Self::from_b(z(e.b2()), z(e.b4()), z(e.b6()), z(e.b8()))
    }
}

pub fn division_poly_set(e: &EllipticCurveQ) -> DivisionPolySet<BigRational> {
    DivisionPolySet::new(e)
}

/// The primitive N-division polynomial of `e` in its own x-coordinate,
/// scaled to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_division_poly(e: &EllipticCurveQ, n: usize) -> Result<RatPoly> {
    if n < 2 {
        return Err(Error::Invalid(format!("division polynomial level {n} < 2")));
    }
    let (ei, u) = e.integral_model();
    let mut set = DivisionPolySet::integral(&ei);
    let lam = RatPoly::from_int_poly(&set.primitive(n));
    // x' = u^2 x on the integral model
    let lam = if u == BigInt::from(1) {
        lam
    } else {
        let u2 = BigRational::from_integer(&u * &u);
        lam.compose(&RatPoly::new(vec![BigRational::zero(), u2]))
    };
    let (_, p) = lam.to_primitive();
    Ok(RatPoly::from_int_poly(&p))
}

/// Weber function used for the residue fields of points above j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weber {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "x^2")]
    X2,
    #[serde(rename = "x^3")]
    X3,
}

impl Weber {
    pub fn exponent(self) -> usize {
        match self {
            Weber::X => 1,
            Weber::X2 => 2,
            Weber::X3 => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X1Degrees {
    pub level: usize,
    pub weber: Weber,
    /// Degrees of the closed points found, ascending.
    pub degrees: Vec<usize>,
    /// Total degree (in the Weber variable) not resolved under the cap.
    pub unresolved_degree: usize,
    pub cap: Option<usize>,
}

impl X1Degrees {
    pub fn min(&self) -> Option<usize> {
        self.degrees.first().copied()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.degrees.contains(&d)
    }
}

/// Short model used for degree computations, its Weber function and
/// primitive N-division polynomial.
pub fn weber_setup(e: &EllipticCurveQ, n: usize) -> (BigInt, BigInt, Weber, IntPoly) {
    let (a, b) = e.short_twist_model();
    let weber = if a.is_zero() {
        Weber::X3
    } else if b.is_zero() {
        Weber::X2
    } else {
        Weber::X
    };
    let lam = DivisionPolySet::short_int(&a, &b).primitive(n);
    (a, b, weber, lam)
}

/// Degrees of the closed points of X1(N) above j(E): irreducible factor
/// degrees of the primitive division polynomial, read through the Weber
/// function.
pub fn x1_point_degrees(e: &EllipticCurveQ, n: usize, cap: Option<usize>) -> Result<X1Degrees> {
    if n < 2 {
        return Err(Error::Invalid(format!("level {n} < 2")));
    }
    let (_, _, weber, lam) = weber_setup(e, n);
    x1_degrees_from_poly(&lam, weber, n, cap)
}

/// Same as [`x1_point_degrees`], starting from a precomputed Lambda_N of the
/// short model.
pub fn x1_degrees_from_poly(
    lam: &IntPoly,
    weber: Weber,
    n: usize,
    cap: Option<usize>,
) -> Result<X1Degrees> {
    let k = weber.exponent();
    let v = lam.x_valuation();
    let coeffs = lam.coeffs();
    let mut deflated = Vec::new();
    for (i, c) in coeffs.iter().enumerate().skip(v) {
        if (i - v) % k == 0 {
            deflated.push(BigRational::from_integer(c.clone()));
        } else if !c.is_zero() {
            return Err(Error::Invalid(
                "division polynomial is not a polynomial in the Weber function".into(),
            ));
        }
    }
    let r = RatPoly::new(deflated);
    let mut degrees = Vec::new();
    let mut unresolved = 0;
    if v > 0 {
        // h(P) = 0: one rational point
        degrees.push(1);
    }
    if r.deg() > 0 {
        let fz = factor_over_q(&r, cap);
        degrees.extend(fz.degrees());
        unresolved = fz.unresolved_degree();
    }
    degrees.sort_unstable();
    Ok(X1Degrees {
        level: n,
        weber,
        degrees,
        unresolved_degree: unresolved,
        cap,
    })
}

/// J(N)/2 for N >= 3, and 3 for N = 2.
pub fn expected_primitive_degree(n: usize) -> usize {
    if n == 2 {
        3
    } else {
        (crate::arith::int::jordan_j2(n as u64) / 2) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn three_division_short_model() {
        let e = EllipticCurveQ::from_ints([0, 0, 0, 1, 1]).unwrap();
        let l3 = primitive_division_poly(&e, 3).unwrap();
        assert_eq!(l3, RatPoly::from_ints(&[-1, 12, 6, 0, 3]));
        let e = EllipticCurveQ::short(rat(2, 3), rat(-5, 7)).unwrap();
        let mut set = division_poly_set(&e);
        let (a, b) = (rat(2, 3), rat(-5, 7));
        let want = RatPoly::new(vec![
            -(&a * &a),
            int(12) * &b,
            int(6) * &a,
            int(0),
            int(3),
        ]);
        assert_eq!(set.f(3), want);
    }

    #[test]
    fn primitive_degrees() {
        let e = super::super::special_curve();
        let mut set = DivisionPolySet::integral(&e);
        for n in 2..=16 {
            assert_eq!(set.primitive(n).deg(), expected_primitive_degree(n), "n = {n}");
        }
    }

    #[test]
    fn divisor_sum_matches_torsion_degree() {
        let e = EllipticCurveQ::from_ints([0, 1, 1, -2, 0]).unwrap();
        let mut set = DivisionPolySet::integral(&e);
        for n in 2..=12usize {
            let total: usize = crate::arith::int::divisors(n as u64)
                .into_iter()
                .filter(|&d| d > 1)
                .map(|d| set.primitive(d as usize).deg())
                .sum();
            assert_eq!(total, set.torsion_x(n).deg());
        }
    }

    #[test]
    fn four_torsion_on_x3_plus_x() {
        // j = 1728: Lambda_4 has degree 6 and is even in x
        let e = EllipticCurveQ::from_ints([0, 0, 0, 1, 0]).unwrap();
        let l4 = primitive_division_poly(&e, 4).unwrap();
        assert_eq!(l4.deg(), 6);
        assert!(l4.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero()));
        // psi_4 = psi_2 * f_4 and f_4 = 2x^6 + 10 x^4 - 10 x^2 - 2 for a=1, b=0
        let mut set = division_poly_set(&e);
        assert_eq!(set.f(4), RatPoly::from_ints(&[-2, 0, -10, 0, 10, 0, 2]));
    }

    #[test]
    fn rational_model_matches_integral_up_to_scaling() {
        let e = EllipticCurveQ::short(rat(1, 4), rat(3, 8)).unwrap();
        let lam = primitive_division_poly(&e, 5).unwrap();
        let mut set = division_poly_set(&e);
        let direct = set.primitive(5);
        let (_, p) = direct.to_primitive();
        assert_eq!(lam, RatPoly::from_int_poly(&p));
    }
}
