//! Factorization over Q: square-free decomposition, modular factorization,
//! per-factor quadratic Hensel lifting and Zassenhaus recombination.
//!
//! With a degree cap only irreducible factors of degree at most the cap are
//! searched for; whatever remains is returned unresolved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;

use super::fp::FpPoly;
use super::int::is_prime_u64;
use super::poly::{IntPoly, Poly, RatPoly};

#[derive(Clone, Debug)]
pub struct Factorization {
    pub content: BigRational,
    /// Irreducible primitive factors with positive leading coefficient.
    pub factors: Vec<(RatPoly, usize)>,
    /// Parts whose irreducible factors all exceed the degree cap.
    pub unresolved: Vec<(RatPoly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> RatPoly {
        let mut acc = RatPoly::constant(self.content.clone());
        for (f, m) in self.factors.iter().chain(self.unresolved.iter()) {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    /// Degrees of the irreducible factors, with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.deg()).take(*m))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn unresolved_degree(&self) -> usize {
        self.unresolved.iter().map(|(f, m)| f.deg() * m).sum()
    }
}

/// Factors `f` over Q. See the module docs for the meaning of `degree_cap`.
pub fn factor_over_q(f: &RatPoly, degree_cap: Option<usize>) -> Factorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let (_, prim) = f.to_primitive();
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    let mut unresolved: Vec<(IntPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&prim) {
        let (found, rest) = factor_squarefree(&part, degree_cap);
        factors.extend(found.into_iter().map(|g| (g, mult)));
        if let Some(r) = rest {
            unresolved.push((r, mult));
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    unresolved.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    let mut lc_prod = BigInt::one();
    for (g, m) in factors.iter().chain(unresolved.iter()) {
        lc_prod *= g.lc().pow(*m as u32);
    }
    let content = f.lc() / BigRational::from_integer(lc_prod);
    Factorization {
        content,
        factors: factors
            .iter()
            .map(|(g, m)| (RatPoly::from_int_poly(g), *m))
            .collect(),
        unresolved: unresolved
            .iter()
            .map(|(g, m)| (RatPoly::from_int_poly(g), *m))
            .collect(),
    }
}

fn cmp_poly(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Square-free decomposition of a primitive polynomial: pairs (part, i)
/// with f = prod part^i, each part primitive and square-free.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    // a square-free image mod a prime of good reduction settles the common case
    let mut p = 1000u64;
    for _ in 0..8 {
        p = next_good_prime(p, f);
        if FpPoly::from_int_poly(p, f).is_squarefree() {
            return vec![(f.primitive_part(), 1)];
        }
    }
    // Yun's algorithm over Q
    let fr = RatPoly::from_int_poly(f);
    let df = fr.derivative();
    let a0 = fr.gcd(&df);
    let mut b = fr.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        d = &nc - &nb.derivative();
        if a.deg() > 0 {
            out.push((a.to_primitive().1, i));
        }
        b = nb;
        i += 1;
    }
    out
}

fn next_good_prime(after: u64, f: &IntPoly) -> u64 {
    let lc = f.lc();
    let mut p = after + 1;
    loop {
        if is_prime_u64(p) && !(lc.clone() % p).is_zero() {
            return p;
        }
        p += 1;
    }
}

struct PrimeChoice {
    p: u64,
    /// distinct-degree parts of degree <= the search bound
    parts: Vec<(usize, FpPoly)>,
    small_count: usize,
}

/// Factors a primitive square-free polynomial. Returns the irreducible factors
/// found and, in capped mode, the unresolved remainder.
fn factor_squarefree(f: &IntPoly, cap: Option<usize>) -> (Vec<IntPoly>, Option<IntPoly>) {
    let mut found = Vec::new();
    let mut g = f.primitive_part();
    if g.deg() == 0 {
        return (found, None);
    }
    if g.coeff(0).is_zero() {
        found.push(IntPoly::x());
        g = g.exact_div(&IntPoly::x()).expect("x divides");
    }
    if g.deg() == 0 {
        return (found, None);
    }
    if g.deg() == 1 {
        found.push(g);
        return (found, None);
    }
    let cap = cap.filter(|&c| c < g.deg());
    let bound_deg = cap.unwrap_or(g.deg());

    // try several primes; intersect the possible factor degrees
    let mut allowed = vec![true; bound_deg + 1];
    let mut best: Option<PrimeChoice> = None;
    let mut p = 2u64;
    let tries = if cap.is_some() { 10 } else { 6 };
    let mut used = 0;
    while used < tries {
        p = next_good_prime(p, &g);
        let gp = FpPoly::from_int_poly(p, &g);
        if gp.deg() != g.deg() || !gp.is_squarefree() {
            continue;
        }
        used += 1;
        let (parts, _rest) = gp.distinct_degree(cap);
        let mut sums = vec![false; bound_deg + 1];
        sums[0] = true;
        let mut small = 0;
        for (d, part) in &parts {
            let k = part.deg() / d;
            small += k;
            for _ in 0..k {
                for s in (*d..=bound_deg).rev() {
                    if sums[s - d] {
                        sums[s] = true;
                    }
                }
            }
        }
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
        if best.as_ref().is_none_or(|b| small < b.small_count) {
            best = Some(PrimeChoice {
                p,
                parts,
                small_count: small,
            });
        }
    }
    let full_deg = g.deg();
    let possible: Vec<usize> = (1..=bound_deg)
        .filter(|&d| allowed[d] && (cap.is_some() || d < full_deg))
        .collect();
    if possible.is_empty() {
        if cap.is_some() {
            return (found, Some(g));
        }
        found.push(g);
        return (found, None);
    }
    let choice = best.expect("at least one prime");
    let p = choice.p;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(p);
    let mut modular: Vec<FpPoly> = Vec::new();
    for (d, part) in &choice.parts {
        modular.extend(part.equal_degree(*d, &mut rng));
    }
    modular.sort_by(|a, b| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });

    // coefficient bound for lc(g) * (monic factor of degree <= bound_deg)
    let norm = g.norm2_sq().sqrt() + BigInt::one();
    let binom = binomial(bound_deg as u64, bound_deg as u64 / 2);
    let bound = BigInt::from(2) * g.lc().abs() * binom * norm;
    let pb = BigInt::from(p);
    let mut q = pb.clone();
    while q <= bound {
        q *= &pb;
    }
    let lifted: Vec<IntPoly> = modular
        .iter()
        .map(|u| hensel_lift_factor(&g, u, &q))
        .collect();

    let degs: Vec<usize> = modular.iter().map(|u| u.deg()).collect();
    let (more, rest) = recombine(g, lifted, degs, &q, &allowed, cap);
    found.extend(more);
    (found, rest)
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn reduce(f: &IntPoly, q: &BigInt) -> IntPoly {
    f.map(|a| a.mod_floor(q))
}

fn symmetric(a: &BigInt, q: &BigInt) -> BigInt {
    let r = a.mod_floor(q);
    if &r * 2 > *q {
        r - q
    } else {
        r
    }
}

fn mul_mod(a: &IntPoly, b: &IntPoly, q: &BigInt) -> IntPoly {
    reduce(&(a * b), q)
}

/// Division by a monic polynomial with coefficients taken mod q.
fn divrem_monic(f: &IntPoly, u: &IntPoly, q: &BigInt) -> (IntPoly, IntPoly) {
    debug_assert!(u.lc().is_one());
    let du = u.deg();
    let mut r: Vec<BigInt> = f.coeffs().iter().map(|a| a.mod_floor(q)).collect();
    if r.len() <= du {
        return (IntPoly::zero(), Poly::new(r));
    }
    let uc = u.coeffs();
    let mut quo = vec![BigInt::zero(); r.len() - du];
    for k in (0..quo.len()).rev() {
        let t = r[k + du].mod_floor(q);
        if !t.is_zero() {
            for j in 0..du {
                r[k + j] = (&r[k + j] - &t * &uc[j]).mod_floor(q);
            }
        }
        quo[k] = t;
    }
    r.truncate(du);
    (Poly::new(quo), Poly::new(r))
}

fn rem_monic(f: &IntPoly, u: &IntPoly, q: &BigInt) -> IntPoly {
    divrem_monic(f, u, q).1
}

/// Inverse of `a` modulo `m` over F_p.
fn fp_inverse(a: &FpPoly, m: &FpPoly) -> FpPoly {
    let p = m.modulus();
    let (mut r0, mut r1) = (m.clone(), a.rem(m));
    let (mut s0, mut s1) = (FpPoly::zero(p), FpPoly::one(p));
    while !r1.is_zero() {
        let (qt, r) = r0.div_rem(&r1);
        let s = s0.sub(&qt.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    assert_eq!(r0.deg(), 0, "modular factor not coprime to its cofactor");
    let inv = super::int::inv_mod(r0.lc(), p).unwrap();
    s0.scale(inv).rem(m)
}

/// Lifts a monic factor `u` of f mod p to a monic factor mod q = p^e.
fn hensel_lift_factor(f: &IntPoly, u: &FpPoly, q: &BigInt) -> IntPoly {
    let p = u.modulus();
    let pb = BigInt::from(p);
    let fp = FpPoly::from_int_poly(p, f);
    let cof = fp.div_rem(u).0;
    let mut s = fp_inverse(&cof, u).to_int_poly();
    let mut uu = u.to_int_poly();
    let mut m = pb.clone();
    while &m < q {
        let m2 = if &(&m * &m) > q { q.clone() } else { &m * &m };
        let (quo, r) = divrem_monic(f, &uu, &m2);
        let delta = rem_monic(&mul_mod(&r, &s, &m2), &uu, &m2);
        uu = reduce(&(&uu + &delta), &m2);
        // Newton step for the inverse of the new quotient modulo uu
        let quo = if delta.is_zero() {
            quo
        } else {
            divrem_monic(f, &uu, &m2).0
        };
        let qs = rem_monic(&mul_mod(&quo, &s, &m2), &uu, &m2);
        let two_minus = reduce(&(&IntPoly::constant(BigInt::from(2)) - &qs), &m2);
        s = rem_monic(&mul_mod(&s, &two_minus, &m2), &uu, &m2);
        m = m2;
    }
    uu
}

fn recombine(
    mut g: IntPoly,
    mut lifted: Vec<IntPoly>,
    mut degs: Vec<usize>,
    q: &BigInt,
    allowed: &[bool],
    cap: Option<usize>,
) -> (Vec<IntPoly>, Option<IntPoly>) {
    let mut found = Vec::new();
    let mut s = 1;
    loop {
        let r = lifted.len();
        if cap.is_none() && 2 * s > r {
            break;
        }
        if s > r {
            break;
        }
        let max_deg = cap.unwrap_or(g.deg());
        let mut min_sum: Vec<usize> = degs.clone();
        min_sum.sort_unstable();
        if min_sum.iter().take(s).sum::<usize>() > max_deg {
            break;
        }
        match search_size(&g, &lifted, &degs, s, q, allowed, max_deg) {
            Some((subset, h, quo)) => {
                found.push(h);
                g = quo;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                    degs.remove(i);
                }
                if g.deg() == 0 {
                    return (found, None);
                }
            }
            None => s += 1,
        }
    }
    if g.deg() == 0 {
        return (found, None);
    }
    match cap {
        Some(c) if g.deg() > c => (found, Some(g)),
        _ => {
            found.push(g);
            (found, None)
        }
    }
}

type Hit = (Vec<usize>, IntPoly, IntPoly);

/// First subset of size `s` (lexicographic order) giving a true factor.
fn search_size(
    g: &IntPoly,
    lifted: &[IntPoly],
    degs: &[usize],
    s: usize,
    q: &BigInt,
    allowed: &[bool],
    max_deg: usize,
) -> Option<Hit> {
    let r = lifted.len();
    let lc = g.lc();
    let g0 = g.coeff(0);
    let target0 = &lc * &g0;
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        let dsum: usize = idx.iter().map(|&i| degs[i]).sum();
        if dsum <= max_deg && dsum < allowed.len() && allowed[dsum] {
            // constant-term filter before the full product
            let mut c0 = lc.clone();
            for &i in &idx {
                c0 = (c0 * lifted[i].coeff(0)).mod_floor(q);
            }
            let c0 = symmetric(&c0, q);
            if !c0.is_zero() && (&target0 % &c0).is_zero() {
                let mut h = IntPoly::constant(lc.clone());
                for &i in &idx {
                    h = mul_mod(&h, &lifted[i], q);
                }
                let h = h.map(|a| symmetric(a, q)).primitive_part();
                if let Some(quo) = g.exact_div(&h) {
                    return Some((idx, h, quo));
                }
            }
        }
        // next combination
        let mut k = s;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if idx[k] < r - s + k {
                break;
            }
            if k == 0 {
                return None;
            }
        }
        idx[k] += 1;
        for j in k + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True if `f` has a rational root, i.e. a linear factor over Q.
pub fn has_rational_root(f: &IntPoly) -> bool {
    if f.deg() == 0 {
        return false;
    }
    let fz = factor_over_q(&RatPoly::from_int_poly(f), Some(1));
    fz.factors.iter().any(|(g, _)| g.deg() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn difference_of_squares() {
        let fz = factor_over_q(&ip(&[-1, 0, 1]), None);
        assert_eq!(fz.factors, vec![(ip(&[-1, 1]), 1), (ip(&[1, 1]), 1)]);
        assert!(fz.unresolved.is_empty());
    }

    #[test]
    fn cyclotomic_seven_irreducible() {
        let fz = factor_over_q(&ip(&[1, 1, 1, 1, 1, 1, 1]), None);
        assert_eq!(fz.degrees(), vec![6]);
    }

    #[test]
    fn multiplicities_and_content() {
        // 6 (x-1)^2 (x^2+1)^3 x
        let f = &(&ip(&[-1, 1]).pow(2) * &ip(&[1, 0, 1]).pow(3)) * &ip(&[0, 6]);
        let fz = factor_over_q(&f, None);
        assert_eq!(fz.product(), f);
        let mut got: Vec<(usize, usize)> = fz.factors.iter().map(|(g, m)| (g.deg(), *m)).collect();
        got.sort();
        assert_eq!(got, vec![(1, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn swinnerton_dyer_like_many_modular_factors() {
        // x^4 - 10x^2 + 1 splits into quadratics mod every prime
        let fz = factor_over_q(&ip(&[1, 0, -10, 0, 1]), None);
        assert_eq!(fz.degrees(), vec![4]);
    }

    #[test]
    fn capped_mode_reports_remainder() {
        // (x^2 - 2)(x^7 - 3)
        let f = &ip(&[-2, 0, 1]) * &ip(&[-3, 0, 0, 0, 0, 0, 0, 1]);
        let fz = factor_over_q(&f, Some(3));
        assert_eq!(fz.degrees(), vec![2]);
        assert_eq!(fz.unresolved_degree(), 7);
        assert_eq!(fz.product(), f);
    }

    #[test]
    fn large_coefficients() {
        let a = ip(&[123456789, -987654321, 0, 1]);
        let b = ip(&[-1000000007, 3, 17]);
        let c = ip(&[5, 0, 0, 0, 0, 1]);
        let f = &(&a * &b) * &c;
        let fz = factor_over_q(&f, None);
        assert_eq!(fz.product(), f);
        assert_eq!(fz.degrees(), vec![2, 3, 5]);
    }

    #[test]
    fn rational_root_probe() {
        assert!(has_rational_root(&IntPoly::from_i64(&[-1, 2])));
        assert!(!has_rational_root(&IntPoly::from_i64(&[-2, 0, 1])));
    }
}
