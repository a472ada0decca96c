//! Resultants: Euclidean recursion over Q, and a fraction-free Sylvester
//! determinant over any exact coefficient domain (used for elimination in
//! two variables).

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Coeff, Poly, RatPoly};

/// Resultant of two univariate polynomials over Q.
pub fn resultant(f: &RatPoly, g: &RatPoly) -> BigRational {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = BigRational::one();
    loop {
        let m = a.deg();
        let n = b.deg();
        if n == 0 {
            return acc * pow(&b.lc(), m);
        }
        if m == 0 {
            return acc * pow(&a.lc(), n);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return BigRational::zero();
        }
        // res(a, b) = (-1)^(mn) lc(b)^(m - deg r) res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow(&b.lc(), m - r.deg());
        a = b;
        b = r;
    }
}

fn pow(a: &BigRational, e: usize) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e {
        r *= a;
    }
    r
}

/// Sylvester matrix of f and g (deg f + deg g square).
pub fn sylvester<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Vec<Vec<C>> {
    let m = f.deg();
    let n = g.deg();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![C::zero(); size];
        for (k, a) in f.coeffs().iter().rev().enumerate() {
            row[i + k] = a.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![C::zero(); size];
        for (k, a) in g.coeffs().iter().rev().enumerate() {
            row[i + k] = a.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det<C: Coeff>(mut a: Vec<Vec<C>>) -> C {
    let n = a.len();
    if n == 0 {
        return C::one();
    }
    let mut sign = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return C::zero();
            };
            a.swap(k, sw);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg_ref()
    } else {
        d
    }
}

/// Resultant via the Sylvester determinant, over any exact domain.
pub fn resultant_sylvester<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> C {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    if f.deg() == 0 && g.deg() == 0 {
        return C::one();
    }
    bareiss_det(sylvester(f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn linear_and_common_factor() {
        let a = RatPoly::from_ints(&[-3, 1]);
        let b = RatPoly::from_ints(&[-5, 1]);
        // res(t - a, t - b) = a - b
        assert_eq!(resultant(&a, &b), r(3 - 5));
        assert_eq!(resultant_sylvester(&a, &b), r(3 - 5));
        let c = RatPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(resultant(&c, &c), r(0));
    }

    #[test]
    fn euclid_matches_sylvester() {
        let f = RatPoly::from_ints(&[3, -1, 4, 1, -5]);
        let g = RatPoly::from_ints(&[9, 2, -6, 5]);
        assert_eq!(resultant(&f, &g), resultant_sylvester(&f, &g));
        let h = RatPoly::from_ints(&[7]);
        assert_eq!(resultant(&f, &h), r(7).pow(4));
        assert_eq!(resultant_sylvester(&f, &h), r(7).pow(4));
    }
}
