//! Rational points of Y and whether they lift to X along t^3 = y.
//!
//! A rational place P of Y lifts to a rational place of X exactly when
//! v_P(y) is prime to 3 (the cover is totally ramified there) or the leading
//! coefficient of y in a uniformizer at P is a rational cube.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{depressed_p1, jmap_denominator, jmap_numerator, jmap_x09, p1_closed_form, x_maps_to_y, y_curve};
use crate::arith::{fmt_rat, int, rational_cbrt, Rat, RatPoly};
use crate::{Error, Result};

pub const Y_RATIONAL_POINTS: [[i64; 3]; 6] = [
    [-324, -9, 1],
    [0, 0, 1],
    [1, 0, 0],
    [-162, -9, 1],
    [0, -3, 1],
    [-54, -3, 1],
];

#[derive(Clone, Debug, PartialEq)]
pub enum YPoint {
    Affine { y: Rat, x9: Rat },
    Infinity,
}

impl YPoint {
    /// From projective coordinates (y : x9 : z).
    pub fn from_projective(p: [i64; 3]) -> Self {
        if p[2] == 0 {
            YPoint::Infinity
        } else {
            YPoint::Affine {
                y: Rat::new(p[0].into(), p[2].into()),
                x9: Rat::new(p[1].into(), p[2].into()),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "j")]
pub enum JClass {
    Cusp,
    Finite(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct YPointReport {
    pub point: String,
    pub on_curve: bool,
    pub j: JClass,
    /// y is a rational cube at an affine point
    pub naive_cube: Option<bool>,
    pub valuation: i64,
    pub leading: String,
    pub ramified: bool,
    pub lifts: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XYReport {
    pub points: Vec<YPointReport>,
    pub all_on_curve: bool,
    pub lifting: usize,
    pub cusps: usize,
    pub j_zero: usize,
    pub j_other: Vec<String>,
    pub lifted_are_cusps: bool,
    pub x_maps_to_y: bool,
    pub p1_depressed: bool,
    pub p1_matches_closed_form: bool,
}

fn trunc(f: &RatPoly, n: usize) -> RatPoly {
    RatPoly::new(f.coeffs().iter().take(n).cloned().collect())
}

fn inv_series(f: &RatPoly, n: usize) -> RatPoly {
    let f0 = f.coeff(0);
    assert!(!f0.is_zero());
    let mut g = RatPoly::constant(f0.recip());
    let two = RatPoly::constant(int(2));
    let mut prec = 1;
    while prec < n {
        prec *= 2;
        g = trunc(&(&g * &(&two - &trunc(&(f * &g), prec))), prec);
    }
    trunc(&g, n)
}

/// (valuation, leading coefficient) of y at a point of y^2 + c y + d = 0.
type Local = (i64, Rat);

fn analyse_affine(c: &RatPoly, d: &RatPoly, y0: &Rat, x0: &Rat) -> Result<Local> {
    let fy = int(2) * y0 + c.eval(x0);
    if !fy.is_zero() {
        // x9 - x0 is a uniformizer; expand y as a power series in it
        if !y0.is_zero() {
            return Ok((0, y0.clone()));
        }
        const N: usize = 24;
        let shift = RatPoly::new(vec![x0.clone(), Rat::one()]);
        let (cs, ds) = (c.compose(&shift), d.compose(&shift));
        let mut y = RatPoly::constant(y0.clone());
        for _ in 0..6 {
            let f = &(&(&y * &y) + &(&cs * &y)) + &ds;
            let df = &y.scale(&int(2)) + &cs;
            y = trunc(&(&y - &trunc(&(&f * &inv_series(&df, N)), N)), N);
        }
        if y.is_zero() {
            return Err(Error::Infeasible("y vanishes to high order".into()));
        }
        let v = y.x_valuation();
        return Ok((v as i64, y.coeff(v)));
    }
    let fx = c.derivative().eval(x0) * y0 + d.derivative().eval(x0);
    if fx.is_zero() {
        return Err(Error::Invalid("singular point of the plane model".into()));
    }
    // y - y0 is a uniformizer
    if y0.is_zero() {
        Ok((1, Rat::one()))
    } else {
        Ok((0, y0.clone()))
    }
}

fn reversed(p: &RatPoly, width: usize) -> RatPoly {
    RatPoly::new((0..=width).map(|i| p.coeff(width - i)).collect())
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

/// Rational places of y^2 + c y + d = 0 over x9 = infinity, with c of degree
/// <= 3 and d of degree <= 6. With u = 1/x9 and y = Y/u^3 the curve becomes
/// Y^2 + C(u) Y + D(u) = 0.
fn analyse_infinity(c: &RatPoly, d: &RatPoly) -> Result<Vec<Local>> {
    let cu = reversed(c, 3);
    let du = reversed(d, 6);
    let delta = &(&cu * &cu) - &du.scale(&int(4));
    if delta.is_zero() {
        return Err(Error::Invalid("reducible curve".into()));
    }
    let e = delta.x_valuation();
    let de = delta.coeff(e);
    let c0 = cu.coeff(0);
    let mut out = Vec::new();
    if e == 0 {
        // unramified over u = 0; u is a uniformizer and y ~ Y0 u^-3
        if let Some(r) = rational_sqrt(&de) {
            for s in [r.clone(), -r] {
                let y0 = (-&c0 + s) / int(2);
                if y0.is_zero() {
                    return Err(Error::Infeasible("Y vanishes at infinity".into()));
                }
                out.push((-3, y0));
            }
        }
        out.dedup();
        return Ok(out);
    }
    let y0 = -c0 / int(2);
    if y0.is_zero() {
        return Err(Error::Infeasible("Y vanishes at infinity".into()));
    }
    if e % 2 == 1 {
        // one place, u = k s^2 with k = delta_e making sqrt(delta) rational in s
        let k = de;
        return Ok(vec![(-6, &y0 / (&k * &k * &k))]);
    }
    if rational_sqrt(&de).is_some() {
        out.push((-3, y0.clone()));
        out.push((-3, y0));
    }
    Ok(out)
}

/// Value of the degree-6 homogenization of Y at (y : x9 : z).
fn on_projective_closure(p: [i64; 3]) -> bool {
    let f = y_curve();
    let (y, x, z) = (int(p[0]), int(p[1]), int(p[2]));
    let mut s = Rat::zero();
    for (i, ci) in f.coeffs().iter().enumerate() {
        for (k, a) in ci.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = 6 - i - k;
            let mut t = a.clone();
            for _ in 0..i {
                t *= &y;
            }
            for _ in 0..k {
                t *= &x;
            }
            for _ in 0..w {
                t *= &z;
            }
            s += t;
        }
    }
    s.is_zero()
}

fn j_class_at_infinity() -> JClass {
    let (n, d) = (jmap_numerator(), jmap_denominator());
    if n.deg() > d.deg() {
        JClass::Cusp
    } else if n.deg() < d.deg() {
        JClass::Finite(fmt_rat(&Rat::zero()))
    } else {
        JClass::Finite(fmt_rat(&(n.lc() / d.lc())))
    }
}

pub fn analyse_point(p: [i64; 3]) -> Result<YPointReport> {
    let f = y_curve();
    let (c, d) = (f.coeff(1), f.coeff(0));
    let on_curve = on_projective_closure(p);
    let label = format!("({} : {} : {})", p[0], p[1], p[2]);
    let (j, local, naive) = match YPoint::from_projective(p) {
        YPoint::Affine { y, x9 } => {
            let j = match jmap_x09(&x9) {
                Ok(v) => JClass::Finite(fmt_rat(&v)),
                Err(Error::Pole(_)) => JClass::Cusp,
                Err(e) => return Err(e),
            };
            let local = if on_curve {
                analyse_affine(&c, &d, &y, &x9)?
            } else {
                (0, y.clone())
            };
            (j, local, Some(rational_cbrt(&y).is_some()))
        }
        YPoint::Infinity => {
            let places = analyse_infinity(&c, &d)?;
            if places.len() != 1 {
                return Err(Error::Invalid(format!(
                    "{} rational places over x9 = infinity",
                    places.len()
                )));
            }
            (j_class_at_infinity(), places[0].clone(), None)
        }
    };
    let (v, lead) = local;
    let ramified = v % 3 != 0;
    Ok(YPointReport {
        point: label,
        on_curve,
        j,
        naive_cube: naive,
        valuation: v,
        leading: fmt_rat(&lead),
        ramified,
        lifts: on_curve && (ramified || rational_cbrt(&lead).is_some()),
    })
}

pub fn verify_xy_curves() -> Result<XYReport> {
    let points = Y_RATIONAL_POINTS
        .iter()
        .map(|&p| analyse_point(p))
        .collect::<Result<Vec<_>>>()?;
    let is_cusp = |r: &YPointReport| r.j == JClass::Cusp;
    let j_other = points
        .iter()
        .filter_map(|r| match &r.j {
            JClass::Finite(s) if *s != fmt_rat(&Rat::zero()) => Some(s.clone()),
            _ => None,
        })
        .collect();
    let p1 = depressed_p1();
    Ok(XYReport {
        all_on_curve: points.iter().all(|r| r.on_curve),
        lifting: points.iter().filter(|r| r.lifts).count(),
        cusps: points.iter().filter(|r| is_cusp(r)).count(),
        j_zero: points.iter().filter(|r| r.j == JClass::Finite(fmt_rat(&Rat::zero()))).count(),
        j_other,
        lifted_are_cusps: points.iter().filter(|r| r.lifts).all(is_cusp),
        x_maps_to_y: x_maps_to_y(),
        p1_depressed: p1.is_ok(),
        p1_matches_closed_form: p1.map(|p| p == p1_closed_form()).unwrap_or(false),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_points() {
        let r = verify_xy_curves().unwrap();
        assert!(r.all_on_curve);
        assert_eq!(r.lifting, 2);
        assert_eq!(r.cusps, 2);
        assert_eq!(r.j_zero, 2);
        assert_eq!(r.j_other, vec!["-12288000/1".to_string(); 2]);
        assert!(r.lifted_are_cusps);
        assert!(r.x_maps_to_y && r.p1_depressed && r.p1_matches_closed_form);
    }

    #[test]
    fn local_data() {
        let p = analyse_point([0, -3, 1]).unwrap();
        assert_eq!(p.naive_cube, Some(true));
        assert_eq!((p.valuation, p.leading.as_str(), p.lifts), (3, "1/2", false));
        let p = analyse_point([0, 0, 1]).unwrap();
        assert!(p.ramified && p.lifts);
        let p = analyse_point([-324, -9, 1]).unwrap();
        assert_eq!(p.naive_cube, Some(false));
        assert!(!p.lifts);
        let p = analyse_point([1, 0, 0]).unwrap();
        assert_eq!(p.valuation, -6);
        assert!(p.lifts);
        assert!(!analyse_point([1, 1, 1]).unwrap().on_curve);
    }
}
