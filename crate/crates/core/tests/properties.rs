use num_traits::One;
use proptest::prelude::*;

use oddpts_core::arith::factor::{factor_over_q, has_rational_root};
use oddpts_core::arith::int::{divisors, is_prime_u64, jordan_j2, kronecker, prime_divisors};
use oddpts_core::arith::resultant::{resultant, resultant_sylvester};
use oddpts_core::arith::{int, Poly, Rat, RatPoly};
use oddpts_core::cm::{reduced_orbit_sizes, CartanModule, QuadOrder, CM_LEVEL_DATA};
use oddpts_core::elliptic::{trace_of_frobenius, x1_point_degrees, EllipticCurveQ};
use oddpts_core::entangle::{depress, resolvent_f};
use oddpts_core::gl2::{self, GL2Sub};
use oddpts_core::modcurve::{self, allowed_odd_degree_levels, JContext};
use oddpts_core::oracles;

fn small_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| RatPoly::from_ints(&c))
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    small_poly(max_deg).prop_filter("non-constant", |f| f.deg() >= 1)
}

fn curve() -> impl Strategy<Value = EllipticCurveQ> {
    prop::array::uniform5(-12i64..=12).prop_filter_map("singular", |a| EllipticCurveQ::from_ints(a).ok())
}

fn odd_prime_upto(n: u64) -> impl Strategy<Value = u64> {
    (3..=n).prop_filter("prime", |&p| is_prime_u64(p))
}

fn matrix(n: u64) -> impl Strategy<Value = [u64; 4]> {
    prop::array::uniform4(0..n).prop_filter("invertible", move |g| {
        let d = (g[0] * g[3] + n * n - g[1] * g[2] % n) % n;
        num_integer::gcd(d, n) == 1
    })
}

fn group(max_level: u64) -> impl Strategy<Value = GL2Sub> {
    (3..=max_level).prop_flat_map(|n| {
        prop::collection::vec(matrix(n), 1..=2).prop_map(move |mut gens| {
            gens.push([n - 1, 0, 0, n - 1]);
            GL2Sub::new(n, gens).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factor_round_trip(fs in prop::collection::vec(nonconstant(3), 1..=3)) {
        let f = fs.iter().fold(RatPoly::one(), |acc, g| &acc * g);
        let fz = factor_over_q(&f, None);
        prop_assert_eq!(fz.product(), f);
        prop_assert!(fz.unresolved.is_empty());
    }

    #[test]
    fn resultant_symmetry(f in nonconstant(4), g in nonconstant(4)) {
        let sign = if f.deg() * g.deg() % 2 == 1 { -Rat::one() } else { Rat::one() };
        prop_assert_eq!(resultant(&f, &g), sign * resultant(&g, &f));
        prop_assert_eq!(resultant(&f, &g), resultant_sylvester(&f, &g));
    }

    #[test]
    fn kronecker_multiplicative(a in -200i64..200, m in 1i64..200, n in 1i64..200) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn twist_invariance(e in curve(), d in prop::sample::select(vec![-3i64, -1, 2, 5, -7]), n in 2usize..=7) {
        let base = x1_point_degrees(&e, n, None).unwrap();
        let tw = x1_point_degrees(&e.quadratic_twist(d), n, None).unwrap();
        prop_assert_eq!(base.degrees, tw.degrees);
    }

    #[test]
    fn orbit_sum_and_naive_orbits(g in group(12)) {
        let n = g.level();
        let degs = gl2::x1_orbit_degrees(&g).unwrap();
        prop_assert_eq!(degs.iter().sum::<u64>(), jordan_j2(n) / 2);
        let elems: Vec<[u64; 4]> = g.iter().collect();
        let naive = oracles::naive_orbit(&elems, &gl2::order_n_vectors(n), oracles::matrix_action(n));
        let mut sizes: Vec<u64> = naive.iter().map(|o| o.len() as u64 / 2).collect();
        sizes.sort_unstable();
        prop_assert_eq!(sizes, degs);
    }

    #[test]
    fn fingerprint_conjugation_invariant(g in group(9), seed in any::<u64>()) {
        let n = g.level();
        let mut s = seed;
        let h = loop {
            let m = [s % n, s / 7 % n, s / 53 % n, s / 401 % n];
            if let Ok(c) = g.conjugate(&m) {
                break c;
            }
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        };
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.fingerprint(), g.fingerprint());
    }

    #[test]
    fn degree_tower_multiplicative(a in 1u64..=20, b in 1u64..=20, c in 1u64..=20) {
        let top = modcurve::deg_x1_to_x1(a * b * c, a).unwrap();
        let upper = modcurve::deg_x1_to_x1(a * b * c, a * b).unwrap();
        let lower = modcurve::deg_x1_to_x1(a * b, a).unwrap();
        prop_assert_eq!(top, upper * lower);
    }

    #[test]
    fn tschirnhaus_resolvent_root(a2 in -9i64..=9, a3 in -9i64..=9, c in prop::array::uniform3(-4i64..=4)) {
        prop_assume!(c[1] != 0 || c[2] != 0);
        let g: Poly<RatPoly> = Poly::new(vec![
            RatPoly::from_ints(&[a3]),
            RatPoly::from_ints(&[a2]),
            RatPoly::zero(),
            RatPoly::one(),
        ]);
        // X - h(t) as a polynomial in t over Q[X]
        let h: Poly<RatPoly> = Poly::new(vec![
            RatPoly::from_ints(&[-c[0], 1]),
            RatPoly::from_ints(&[-c[1]]),
            RatPoly::from_ints(&[-c[2]]),
        ]);
        let charpoly = resultant_sylvester(&g, &h);
        prop_assume!(charpoly.deg() == 3);
        let (b2, b3) = depress(&charpoly).unwrap();
        let f = resolvent_f(&int(a2), &int(a3), &b2, &b3);
        prop_assert!(has_rational_root(&f.to_primitive().1));
    }

    #[test]
    fn resolvent_matches_numeric_roots(a in prop::array::uniform4(-20i64..=20)) {
        let f = resolvent_f(&int(a[0]), &int(a[1]), &int(a[2]), &int(a[3]));
        let r = oracles::resolvent_numeric_check(f.coeffs(), a.map(|x| x as f64));
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn classifier_monotone_under_divisors(
        j in prop::sample::select(vec!["1/3", "5/7", "-11/2"]),
        flags in prop::sample::select(vec![r#"{}"#, r#"{"isogenies":[5]}"#, r#"{"isogenies":[3]}"#, r#"{"isogenies":[7]}"#, r#"{"isogenies":[15]}"#]),
    ) {
        let ctx = JContext::parse(j, Some(flags)).unwrap();
        let c = allowed_odd_degree_levels(&ctx);
        for n in c.members_up_to(2000) {
            let odd = prime_divisors(n).into_iter().filter(|&p| p != 2).collect::<Vec<_>>();
            for d in divisors(n) {
                let same = prime_divisors(d).into_iter().filter(|&p| p != 2).collect::<Vec<_>>() == odd;
                if same {
                    prop_assert!(c.contains(d), "{} passes but {} does not", n, d);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn hasse_bound_against_naive_count(e in curve(), p in odd_prime_upto(200)) {
        prop_assume!(e.has_good_reduction(p));
        let a = trace_of_frobenius(&e, p).unwrap();
        prop_assert_eq!(a, p as i64 + 1 - oracles::naive_count_points(&e, p) as i64);
        prop_assert!((a * a) as u64 <= 4 * p);
    }
}

/// b = log_p |O.P| - a for P of order p^a.
fn log_p(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

#[test]
fn ramified_orbit_formula_matches_brute_force() {
    for (disc, p) in [(-3i64, 3u64), (-7, 7), (-11, 11), (-12, 3), (-27, 3)] {
        for a in 1..=2u32 {
            let n = p.pow(a);
            if n * n > 20_000 {
                continue;
            }
            let m = CartanModule::new(QuadOrder::new(disc).unwrap(), n).unwrap();
            let (ids, sizes) = m.orbits();
            for x in 0..m.size() {
                if !m.has_order_n(x) {
                    continue;
                }
                let b = log_p(m.submodule_order(x), p) - a;
                let got = sizes[ids[x as usize].unwrap()];
                let disc_ok = QuadOrder::new(disc).unwrap().field_disc() % p as i64 == 0;
                if disc_ok && disc % (p * p) as i64 != 0 {
                    assert_eq!(got, oddpts_core::cm::ramified_orbit_formula(p, a, b), "{disc} {p} {a} {x}");
                }
            }
        }
    }
}

#[test]
fn table_genus_column() {
    for r in CM_LEVEL_DATA {
        let pm = r.p.pow(r.m);
        assert_eq!(modcurve::genus_x1(pm), r.genus_pm, "{}", r.disc);
        if let Some(g) = r.genus_2pm {
            assert_eq!(modcurve::genus_x1(2 * pm), g, "{}", r.disc);
        }
        if pm > 2 {
            assert_eq!(reduced_orbit_sizes(r.disc, pm).unwrap()[0], r.d_disc, "{}", r.disc);
        }
    }
}
