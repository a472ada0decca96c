//! Slow, independent reference computations. Nothing here calls into the
//! optimized code it is used to check.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::fp::rat_mod;
use crate::elliptic::EllipticCurveQ;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub oracle: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl OracleReport {
    pub fn compare<T: std::fmt::Debug + PartialEq>(oracle: &str, inputs: String, expected: T, got: T) -> Self {
        OracleReport {
            oracle: oracle.into(),
            inputs,
            pass: expected == got,
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
        }
    }
}

/// #E(F_p) by trying every (x, y), plus the point at infinity.
pub fn naive_count_points(e: &EllipticCurveQ, p: u64) -> u64 {
    assert!(p <= 200, "naive count is for p <= 200");
    let a = e.coeffs().map(|c| rat_mod(&c, p).expect("p-integral model"));
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + a[0] * x % p * y + a[2] * y) % p;
            let rhs = (x * x % p * x + a[1] * x % p * x + a[3] * x + a[4]) % p;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Partition of `points` into orbits under the full list of group elements,
/// with `act(g, v)` the action.
pub fn naive_orbit<G, F>(elements: &[G], points: &[u64], act: F) -> Vec<Vec<u64>>
where
    F: Fn(&G, u64) -> u64,
{
    assert!(points.len() <= 100_000);
    let mut assigned: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for &v in points {
        if assigned.contains_key(&v) {
            continue;
        }
        let k = out.len();
        let mut orbit = vec![v];
        assigned.insert(v, k);
        let mut i = 0;
        while i < orbit.len() {
            let w = orbit[i];
            for g in elements {
                let u = act(g, w);
                if let std::collections::hash_map::Entry::Vacant(e) = assigned.entry(u) {
                    e.insert(k);
                    orbit.push(u);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Matrix-on-column-vector action on (Z/N)^2 with v = x*N + y.
pub fn matrix_action(n: u64) -> impl Fn(&[u64; 4], u64) -> u64 {
    move |g, v| {
        let (x, y) = (v / n, v % n);
        ((g[0] * x + g[1] * y) % n) * n + (g[2] * x + g[3] * y) % n
    }
}

/// Additive order of (x, y) in (Z/N)^2 by repeated addition.
fn additive_order(x: u64, y: u64, n: u64) -> u64 {
    let (mut a, mut b, mut k) = (x, y, 1);
    while a != 0 || b != 0 {
        a = (a + x) % n;
        b = (b + y) % n;
        k += 1;
    }
    k
}

/// Number of vectors of exact order N in (Z/N)^2.
pub fn count_exact_order(n: u64) -> u64 {
    assert!(n <= 10_000);
    let mut c = 0;
    for x in 0..n {
        for y in 0..n {
            if additive_order(x, y, n) == n {
                c += 1;
            }
        }
    }
    c
}

/// All complex roots of a polynomial (coefficients ascending) by the
/// Durand-Kerner iteration.
pub fn numeric_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lc = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c / lc, 0.0)).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32) * bound).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * bound {
            break;
        }
    }
    z
}

/// Coefficients (ascending) of prod (t - r) for the given roots.
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c
}

/// The six sums t1 s_sigma(1) + t2 s_sigma(2) + t3 s_sigma(3) over all
/// permutations sigma, from numerically computed roots of the two depressed
/// cubics, and the sextic they span.
pub fn pairing_sextic(a2: f64, a3: f64, b2: f64, b3: f64) -> Vec<Complex64> {
    let t = numeric_roots(&[a3, a2, 0.0, 1.0]);
    let s = numeric_roots(&[b3, b2, 0.0, 1.0]);
    let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let thetas: Vec<Complex64> = perms
        .iter()
        .map(|p| t[0] * s[p[0]] + t[1] * s[p[1]] + t[2] * s[p[2]])
        .collect();
    expand_roots(&thetas)
}

/// Compares exact rational coefficients against the numeric sextic.
pub fn resolvent_numeric_check(
    exact: &[num_rational::BigRational],
    a: [f64; 4],
) -> OracleReport {
    let numeric = pairing_sextic(a[0], a[1], a[2], a[3]);
    let ex: Vec<f64> = exact.iter().map(|c| c.to_f64().unwrap()).collect();
    let scale = 1.0 + ex.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let ok = numeric.len() == ex.len()
        && numeric
            .iter()
            .zip(&ex)
            .all(|(n, e)| (n.re - e).abs() <= 1e-8 * scale && n.im.abs() <= 1e-8 * scale);
    OracleReport {
        oracle: "resolvent-numeric".into(),
        inputs: format!("{a:?}"),
        expected: format!("{ex:?}"),
        got: format!("{:?}", numeric.iter().map(|c| c.re).collect::<Vec<_>>()),
        pass: ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        let e = EllipticCurveQ::from_ints([0, 0, 0, 1, 0]).unwrap();
        assert_eq!(naive_count_points(&e, 3), 4);
    }

    #[test]
    fn exact_order_counts() {
        assert_eq!(count_exact_order(4), 12);
        assert_eq!(count_exact_order(21), 384);
        assert_eq!(count_exact_order(13), 168);
    }

    #[test]
    fn orbits_of_small_groups() {
        let pts: Vec<u64> = (1..9).collect();
        let triv = naive_orbit(&[[1u64, 0, 0, 1]], &pts, matrix_action(3));
        assert_eq!(triv.len(), 8);
    }

    #[test]
    fn roots() {
        // (t - 1)(t - 2)(t + 3) = t^3 - 7t + 6
        let mut r: Vec<f64> = numeric_roots(&[6.0, -7.0, 0.0, 1.0]).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, y) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}
