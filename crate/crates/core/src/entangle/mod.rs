//! Entanglement of the 2-division cubic field with a 27-isogeny field.
//!
//! Polynomials in two variables are `Poly<RatPoly>`: the outer variable is t
//! (or x, or y) and coefficients are polynomials in x9, the coordinate on
//! X0(9).

pub mod lift;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, int, Coeff, Poly, Rat, RatPoly};
use crate::{Error, Result};

pub use lift::{verify_xy_curves, JClass, XYReport, YPoint, YPointReport};

pub type BiPoly = Poly<RatPoly>;

/// t^3 + A2 t + A3 with A2, A3 in Q[x9].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepressedCubic {
    pub a2: RatPoly,
    pub a3: RatPoly,
}

impl DepressedCubic {
    pub fn as_bipoly(&self) -> BiPoly {
        Poly::new(vec![self.a3.clone(), self.a2.clone(), RatPoly::zero(), RatPoly::one()])
    }

    pub fn at(&self, x9: &Rat) -> RatPoly {
        RatPoly::new(vec![
            self.a3.eval(x9),
            self.a2.eval(x9),
            Rat::zero(),
            Rat::one(),
        ])
    }
}

/// The sextic whose roots are t1 t4 + t2 t5 + t3 t6 over all pairings of the
/// roots of t^3 + A2 t + A3 and t^3 + B2 t + B3.
pub fn resolvent_f<C: Coeff>(a2: &C, a3: &C, b2: &C, b3: &C) -> Poly<C> {
    let k = |n: i64| -> C {
        let mut r = C::zero();
        let one = C::one();
        for _ in 0..n.abs() {
            r = r.add_ref(&one);
        }
        if n < 0 {
            r.neg_ref()
        } else {
            r
        }
    };
    let m = |xs: &[&C]| xs.iter().fold(C::one(), |acc, x| acc.mul_ref(x));
    let a22 = a2.mul_ref(a2);
    let b22 = b2.mul_ref(b2);
    let a23 = a22.mul_ref(a2);
    let b23 = b22.mul_ref(b2);
    let c0 = m(&[&k(-4), &a23, &b23])
        .sub_ref(&m(&[&k(27), &a23, b3, b3]))
        .sub_ref(&m(&[&k(27), a3, a3, &b23]));
    let c1 = m(&[&k(81), a2, a3, b2, b3]);
    let c2 = m(&[&k(9), &a22, &b22]);
    let c3 = m(&[&k(-27), a3, b3]);
    let c4 = m(&[&k(-6), a2, b2]);
    Poly::new(vec![c0, c1, c2, c3, c4, C::zero(), C::one()])
}

/// The cubic x^3 + A2 x + A3 shifted to kill the x^2 term, for monic cubics.
pub fn depress(f: &RatPoly) -> Result<(Rat, Rat)> {
    if f.degree() != Some(3) {
        return Err(Error::Invalid("expected a cubic".into()));
    }
    let f = f.monic();
    let shift = -f.coeff(2) / int(3);
    let g = f.compose(&RatPoly::new(vec![shift, Rat::one()]));
    Ok((g.coeff(1), g.coeff(0)))
}

pub fn jmap_numerator() -> RatPoly {
    let a = RatPoly::from_ints(&[9, 1]);
    let b = RatPoly::from_ints(&[6561, 2187, 243, 1]);
    &a.pow(3) * &b.pow(3)
}

pub fn jmap_denominator() -> RatPoly {
    RatPoly::monomial(Rat::one(), 9) * RatPoly::from_ints(&[27, 9, 1])
}

/// The j-line map on X0(9).
pub fn jmap_x09(x9: &Rat) -> Result<Rat> {
    let d = jmap_denominator().eval(x9);
    if d.is_zero() {
        return Err(Error::Pole(format!("x9 = {} is a cusp", fmt_rat(x9))));
    }
    Ok(jmap_numerator().eval(x9) / d)
}

/// y^2 + y = x^3 - 7
pub fn on_x027(x: &Rat, y: &Rat) -> bool {
    y * y + y == x * x * x - int(7)
}

/// X0(27) -> X0(9), (x, y) -> -3 + (y + 5)/x.
pub fn phi_x027_to_x09(x: &Rat, y: &Rat) -> Result<Rat> {
    if !on_x027(x, y) {
        return Err(Error::Invalid(format!(
            "({}, {}) is not on y^2 + y = x^3 - 7",
            fmt_rat(x),
            fmt_rat(y)
        )));
    }
    if x.is_zero() {
        return Err(Error::Pole("x = 0".into()));
    }
    Ok(int(-3) + (y + int(5)) / x)
}

/// x^3 - (x9 + 3)^2 x^2 + (9 x9 + 27) x - 27, as a polynomial in x over Q[x9].
pub fn fiber_cubic() -> BiPoly {
    let s = RatPoly::from_ints(&[3, 1]);
    Poly::new(vec![
        RatPoly::from_ints(&[-27]),
        RatPoly::from_ints(&[27, 9]),
        -s.pow(2),
        RatPoly::one(),
    ])
}

/// 27 * fiber_cubic((t + (x9 + 3)^2) / 3), which is monic and depressed.
pub fn depressed_p1() -> Result<DepressedCubic> {
    let s = RatPoly::from_ints(&[3, 1]).pow(2);
    let third = RatPoly::constant(Rat::new(1.into(), 3.into()));
    let sub = Poly::new(vec![&s * &third, third]);
    let p = fiber_cubic().compose(&sub).scale(&RatPoly::from_ints(&[27]));
    if p.degree() != Some(3) || !p.coeff(2).is_zero() || p.coeff(3) != RatPoly::one() {
        return Err(Error::Invalid("substitution did not depress the fiber cubic".into()));
    }
    Ok(DepressedCubic { a2: p.coeff(1), a3: p.coeff(0) })
}

/// Closed form of the depressed cubic, for comparison with `depressed_p1`.
pub fn p1_closed_form() -> DepressedCubic {
    DepressedCubic {
        a2: -RatPoly::from_ints(&[0, 243, 162, 36, 3]),
        a3: -RatPoly::from_ints(&[0, 729, 1701, 999, 270, 36, 2]),
    }
}

/// Cubic cutting out the 2-division field of the curve above x9:
/// t^3 - j t - 16 j.
pub fn p2_at(x9: &Rat) -> Result<RatPoly> {
    let j = jmap_x09(x9)?;
    Ok(RatPoly::new(vec![-int(16) * &j, -j, Rat::zero(), Rat::one()]))
}

/// B2 = -j, B3 = -16 j at a rational x9.
pub fn p2_coefficients(x9: &Rat) -> Result<(Rat, Rat)> {
    let j = jmap_x09(x9)?;
    Ok((-j.clone(), -int(16) * j))
}

/// Coefficient of y (resp. t^3) and constant term shared by X and Y.
fn xy_coefficients() -> (RatPoly, RatPoly) {
    (
        RatPoly::from_ints(&[0, -54, -18, -2]),
        RatPoly::from_ints(&[0, 729, 972, 513, 135, 18, 1]),
    )
}

/// Y : y^2 + c(x9) y + d(x9) = 0
pub fn y_curve() -> BiPoly {
    let (c, d) = xy_coefficients();
    Poly::new(vec![d, c, RatPoly::one()])
}

/// X : t^6 + c(x9) t^3 + d(x9) = 0
pub fn x_curve() -> BiPoly {
    let (c, d) = xy_coefficients();
    Poly::new(vec![
        d,
        RatPoly::zero(),
        RatPoly::zero(),
        c,
        RatPoly::zero(),
        RatPoly::zero(),
        RatPoly::one(),
    ])
}

/// Substitutes y = t^3 into Y and compares with X.
pub fn x_maps_to_y() -> bool {
    y_curve().inflate(3) == x_curve()
}

/// Evaluates a polynomial in (outer, x9) at rational values.
pub fn eval2(f: &BiPoly, outer: &Rat, x9: &Rat) -> Rat {
    let inner: RatPoly = RatPoly::new(f.coeffs().iter().map(|c| c.eval(x9)).collect());
    inner.eval(outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_rat, rat};

    #[test]
    fn jmap_values() {
        assert!(matches!(jmap_x09(&int(0)), Err(Error::Pole(_))));
        assert_eq!(jmap_x09(&int(-9)).unwrap(), int(0));
        assert_eq!(jmap_x09(&int(-3)).unwrap(), parse_rat("-2^15*3*5^3").unwrap());
    }

    #[test]
    fn phi_on_rational_points() {
        assert_eq!(phi_x027_to_x09(&int(3), &int(4)).unwrap(), int(0));
        assert_eq!(phi_x027_to_x09(&int(3), &int(-5)).unwrap(), int(-3));
        assert!(phi_x027_to_x09(&int(2), &int(1)).is_err());
        // fiber consistency: x is a root of the fiber cubic over phi(x, y)
        for (x, y) in [(3, 4), (3, -5)] {
            let x9 = phi_x027_to_x09(&int(x), &int(y)).unwrap();
            assert!(eval2(&fiber_cubic(), &int(x), &x9).is_zero());
        }
    }

    #[test]
    fn p1_is_depressed_and_matches_closed_form() {
        let p1 = depressed_p1().unwrap();
        assert_eq!(p1, p1_closed_form());
    }

    #[test]
    fn resolvent_identical_cubics() {
        let (a2, a3) = (rat(-7, 1), rat(5, 2));
        let f = resolvent_f(&a2, &a3, &a2, &a3);
        assert!(f.eval(&(int(-2) * &a2)).is_zero());
        let g = resolvent_f(&int(0), &int(4), &int(0), &int(3));
        assert_eq!(
            g,
            RatPoly::new(vec![int(0), int(0), int(0), int(-324), int(0), int(0), int(1)])
        );
    }

    #[test]
    fn x_covers_y() {
        assert!(x_maps_to_y());
    }
}
