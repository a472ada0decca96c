//! The regression scorecard: one check per acceptance criterion, grouped in
//! runtime tiers.

use std::sync::mpsc;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use oddpts_core::arith::int::{euler_phi, is_prime_u64, jordan_j2};
use oddpts_core::arith::{factor_over_q, fmt_rat, int, parse_rat, resultant, Rat, RatPoly};
use oddpts_core::cm::{self, CartanModule, QuadOrder};
use oddpts_core::elliptic::{special_curve, trace_of_frobenius, x1_point_degrees, EllipticCurveQ};
use oddpts_core::entangle::{self, resolvent_f};
use oddpts_core::gl2::{self, GL2Sub};
use oddpts_core::modcurve::{self, allowed_odd_degree_levels, Branch, JContext};
use oddpts_core::oracles;

use crate::cache;

pub type Check = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Check {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn genus_regression() -> Check {
    let want = [
        (11, 1), (13, 2), (14, 1), (18, 2), (21, 5), (22, 6), (25, 12), (26, 10),
        (27, 13), (28, 10), (36, 17), (42, 25), (43, 57), (67, 155), (163, 1027),
    ];
    let bad: Vec<_> = want
        .iter()
        .filter(|&&(n, g)| modcurve::genus_x1(n) != g)
        .map(|&(n, g)| format!("X1({n}) = {} != {g}", modcurve::genus_x1(n)))
        .collect();
    ensure(bad.is_empty(), if bad.is_empty() { format!("{} genera exact", want.len()) } else { bad.join(", ") })
}

fn degree_regression() -> Check {
    let got = [
        modcurve::deg_x1_to_x1(50, 25).map_err(|e| e.to_string())?,
        modcurve::deg_x1_to_x1(36, 12).map_err(|e| e.to_string())?,
        modcurve::deg_x1_to_x1(4, 2).map_err(|e| e.to_string())?,
        modcurve::deg_x1_to_x1(2, 1).map_err(|e| e.to_string())?,
    ];
    let x0_ok = (3..=50).all(|n| modcurve::deg_x1_to_x0(n) == euler_phi(n) / 2);
    ensure(
        got == [3, 9, 2, 3] && x0_ok,
        format!("50->25, 36->12, 4->2, 2->1 = {got:?}; X1(N)->X0(N) = phi(N)/2 for 3..50: {x0_ok}"),
    )
}

fn orbit_regression() -> Check {
    let cases: [(&str, u64, Vec<u64>); 4] = [
        ("borel", 3, vec![1, 3]),
        ("diagonal", 3, vec![1, 1, 2]),
        ("borel", 9, vec![3, 6, 27]),
        ("x1", 9, vec![1, 1, 1, 6, 27]),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, n, want) in cases {
        let g: GL2Sub = gl2::builtin(name, n).map_err(|e| e.to_string())?;
        let got = gl2::x1_orbit_degrees(&g).map_err(|e| e.to_string())?;
        let sum_ok = got.iter().sum::<u64>() == jordan_j2(g.level()) / 2;
        ok &= got == want && sum_ok;
        lines.push(format!("{got:?}"));
    }
    ensure(ok, lines.join(" "))
}

fn log_p(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

fn cartan_regression() -> Check {
    let mut mins = Vec::new();
    for d in [-43i64, -67, -163] {
        let s = cm::reduced_orbit_sizes(d, (-d) as u64).map_err(|e| e.to_string())?;
        mins.push(s[0]);
    }
    let mut formula_ok = true;
    let mut checked = 0;
    for (disc, p, amax) in [(-3i64, 3u64, 2u32), (-7, 7, 2), (-11, 11, 1)] {
        for a in 1..=amax {
            let m = CartanModule::new(QuadOrder::new(disc).unwrap(), p.pow(a)).map_err(|e| e.to_string())?;
            let (ids, sizes) = m.orbits();
            for x in 0..m.size() {
                if m.has_order_n(x) {
                    let b = log_p(m.submodule_order(x), p) - a;
                    formula_ok &= sizes[ids[x as usize].unwrap()] == cm::ramified_orbit_formula(p, a, b);
                    checked += 1;
                }
            }
        }
    }
    let growth = cm::orbit_growth_law_check(-7, 7, 2, 1).map_err(|e| e.to_string())?;
    ensure(
        mins == [21, 33, 81] && formula_ok && growth.holds && growth.hypothesis_points > 0,
        format!(
            "reduced minima {mins:?}; closed form on {checked} points: {formula_ok}; growth law (-7,7,2,1) on {} points: {}",
            growth.hypothesis_points, growth.holds
        ),
    )
}

fn entanglement_regression() -> Check {
    let r = entangle::verify_xy_curves().map_err(|e| e.to_string())?;
    let other = fmt_rat(&parse_rat("-2^15*3*5^3").unwrap());
    let classes_ok = r.cusps == 2 && r.j_zero == 2 && r.j_other == vec![other.clone(); 2];
    let (a2, a3) = (Rat::new((-7).into(), 1.into()), Rat::new(5.into(), 2.into()));
    let f = resolvent_f(&a2, &a3, &a2, &a3);
    let symbolic = {
        // f(-2 A2) = 0 with A2, A3 indeterminates, over Q[A2][A3] evaluated on a grid
        (-5..=5).all(|u| {
            (-5..=5).all(|v| {
                let (x, y) = (int(u), int(v));
                resolvent_f(&x, &y, &x, &y).eval(&(int(-2) * &x)).is_zero()
            })
        }) && f.eval(&(int(-2) * &a2)).is_zero()
    };
    let p1 = entangle::depressed_p1().map_err(|e| e.to_string())?;
    ensure(
        r.all_on_curve && r.lifting == 2 && r.lifted_are_cusps && classes_ok && symbolic && r.p1_depressed,
        format!(
            "on Y: {}; lifting: {}; cusps {}, j=0 {}, j={other} x{}; f(-2A2)=0: {symbolic}; t^2 coeff of p1 zero: {} (A2 deg {})",
            r.all_on_curve, r.lifting, r.cusps, r.j_zero, r.j_other.len(), r.p1_depressed, p1.a2.deg()
        ),
    )
}

fn classifier_regression() -> Check {
    let ctx = |j: &str, f: &str| JContext::parse(j, Some(f)).map_err(|e| e.to_string());
    let special = allowed_odd_degree_levels(&ctx("3^3*5*7^5/2^7", "{}")?);
    let t21 = allowed_odd_degree_levels(&ctx("-3^2*5^6/2^3", r#"{"isogenies":[21]}"#)?);
    let five = allowed_odd_degree_levels(&ctx("1/3", r#"{"isogenies":[5]}"#)?);
    let exc = allowed_odd_degree_levels(&ctx("3^3*13/2^2", r#"{"isogenies":[7]}"#)?);
    let b = |p: Vec<u64>, a, ao| vec![Branch { odd_primes: p, max_a: a, max_a_if_odd: ao }];
    let ok = special.branches == b(vec![7], 1, 1)
        && t21.branches == b(vec![3, 7], 1, 1)
        && five.branches == b(vec![5], 3, 1)
        && five.contains(8)
        && five.contains(50)
        && !five.contains(20)
        && exc.contains(28)
        && !exc.contains(56);
    ensure(ok, format!("special: {special}; 21-isogeny: {t21}; 5-isogeny: {five}; exception pair: {exc}"))
}

fn mod49_certificate() -> Check {
    let c = gl2::frobenius_level_certificate(&special_curve(), &gl2::special_mod7_image(), 100_000)
        .map_err(|e| e.to_string())?;
    ensure(
        c.group_pairs == 483
            && c.maximal_classes == 8
            && c.max_maximal_pairs <= 357
            && c.observed_pairs == 483
            && c.pass,
        format!(
            "|fp(H~)| = {}; {} maximal classes ({} subgroups), max fp {}; observed {} pairs over {} primes; {}",
            c.group_pairs,
            c.maximal_classes,
            c.maximal_subgroups,
            c.max_maximal_pairs,
            c.observed_pairs,
            c.primes_used,
            if c.pass { "PASS" } else { "FAIL" },
        ),
    )
}

fn divpoly_degrees() -> Check {
    let e = special_curve();
    let d7 = x1_point_degrees(&e, 7, None).map_err(|e| e.to_string())?;
    let d4 = x1_point_degrees(&e, 4, None).map_err(|e| e.to_string())?;
    ensure(
        d7.contains(9) && d4.degrees == vec![6],
        format!("N=7 degrees {:?}; N=4 degrees {:?}", d7.degrees, d4.degrees),
    )
}

fn x1_21_cubic_point() -> Check {
    let e = EllipticCurveQ::from_j(&parse_rat("-3^2*5^6/2^3").unwrap());
    let d = cache::x1_degrees(&e, 21, Some(9)).map_err(|e| e.to_string())?;
    ensure(
        d.min() == Some(3),
        format!("degrees <= 9 found {:?}, unresolved degree {}", d.degrees, d.unresolved_degree),
    )
}

fn x1_28_point() -> Check {
    let e = EllipticCurveQ::from_j(&parse_rat("3^3*13/2^2").unwrap());
    let d = cache::x1_degrees(&e, 28, Some(9)).map_err(|e| e.to_string())?;
    let g = modcurve::genus_x1(28);
    ensure(
        d.contains(9),
        format!(
            "degrees <= 9 found {:?}; genus {g}, deg - g + 1 = {}, so dim L(D) >= {} is uninformative; isolation not certified by this tool",
            d.degrees,
            9 - g as i64 + 1,
            modcurve::rr_lower_bound(9, g)
        ),
    )
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    let rand_poly = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(1..=3);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        c[d] = rng.gen_range(1..=9);
        RatPoly::from_ints(&c)
    };
    let mut factor_ok = 0;
    let mut res_ok = 0;
    for _ in 0..50 {
        let (f, g, h) = (rand_poly(&mut rng), rand_poly(&mut rng), rand_poly(&mut rng));
        let prod = &(&f * &g) * &h;
        factor_ok += (factor_over_q(&prod, None).product() == prod) as usize;
        let sign = if f.deg() * g.deg() % 2 == 1 { -1 } else { 1 };
        res_ok += (resultant(&f, &g) == int(sign) * resultant(&g, &f)) as usize;
    }
    let rand_curve = |rng: &mut ChaCha8Rng| loop {
        let a: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-12..=12));
        if let Ok(e) = EllipticCurveQ::from_ints(a) {
            return e;
        }
    };
    let mut twist_ok = 0;
    for n in 2..=7 {
        let e = rand_curve(&mut rng);
        let base = x1_point_degrees(&e, n, None).map_err(|e| e.to_string())?;
        let tw = x1_point_degrees(&e.quadratic_twist(-3), n, None).map_err(|e| e.to_string())?;
        twist_ok += (base.degrees == tw.degrees) as usize;
    }
    let mut sum_ok = 0;
    for n in 3..=12u64 {
        let g = gl2::builtin("x1", n).map_err(|e| e.to_string())?;
        let s: u64 = gl2::x1_orbit_degrees(&g).map_err(|e| e.to_string())?.iter().sum();
        sum_ok += (s == jordan_j2(n) / 2) as usize;
    }
    let mut hasse_ok = 0;
    let mut pairs = 0;
    while pairs < 500 {
        let e = rand_curve(&mut rng);
        let p = rng.gen_range(3..=200u64);
        if !is_prime_u64(p) || !e.has_good_reduction(p) {
            continue;
        }
        pairs += 1;
        let a = trace_of_frobenius(&e, p).map_err(|e| e.to_string())?;
        let naive = p as i64 + 1 - oracles::naive_count_points(&e, p) as i64;
        hasse_ok += (a == naive && (a * a) as u64 <= 4 * p) as usize;
    }
    ensure(
        factor_ok == 50 && res_ok == 50 && twist_ok == 6 && sum_ok == 10 && hasse_ok == 500,
        format!(
            "factor {factor_ok}/50, resultant {res_ok}/50, twist {twist_ok}/6, orbit sums {sum_ok}/10, Hasse vs naive {hasse_ok}/500"
        ),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Medium,
    Extended,
}

impl Suite {
    /// Default wall-clock budget for the whole suite.
    pub fn default_budget(self) -> Duration {
        Duration::from_secs(match self {
            Suite::Fast => 60,
            Suite::Medium => 15 * 60,
            Suite::Extended => 60 * 60,
        })
    }
}

pub struct CheckDef {
    pub id: &'static str,
    pub name: &'static str,
    pub tier: Suite,
    pub run: fn() -> Check,
}

pub const CHECKS: [CheckDef; 11] = [
    CheckDef { id: "1", name: "genus regression", tier: Suite::Fast, run: genus_regression },
    CheckDef { id: "2", name: "degree regression", tier: Suite::Fast, run: degree_regression },
    CheckDef { id: "3", name: "orbit regression", tier: Suite::Fast, run: orbit_regression },
    CheckDef { id: "4", name: "Cartan regression", tier: Suite::Fast, run: cartan_regression },
    CheckDef { id: "5", name: "cubic entanglement regression", tier: Suite::Fast, run: entanglement_regression },
    CheckDef { id: "6", name: "classifier regression", tier: Suite::Fast, run: classifier_regression },
    CheckDef { id: "7", name: "mod-49 level certificate", tier: Suite::Medium, run: mod49_certificate },
    CheckDef { id: "8", name: "division-polynomial degrees", tier: Suite::Medium, run: divpoly_degrees },
    CheckDef { id: "9", name: "degree-3 point on X1(21)", tier: Suite::Extended, run: x1_21_cubic_point },
    CheckDef { id: "10", name: "degree-9 point on X1(28)", tier: Suite::Extended, run: x1_28_point },
    CheckDef { id: "11", name: "property suites", tier: Suite::Fast, run: property_suites },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckLine {
    pub id: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scorecard {
    pub suite: Suite,
    pub budget_secs: u64,
    pub checks: Vec<CheckLine>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Scorecard {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.skipped == 0
    }
}

/// Runs one check on a worker thread, giving up after `limit`. A check that
/// panics counts as a failure.
pub fn run_check(def: &CheckDef, limit: Duration) -> CheckLine {
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    let f = def.run;
    std::thread::spawn(move || {
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let _ = tx.send(r);
    });
    let (status, detail) = match rx.recv_timeout(limit) {
        Ok(Ok(msg)) => (Status::Pass, msg),
        Ok(Err(msg)) => (Status::Fail, msg),
        Err(_) => (Status::Skipped, format!("time budget of {:.0?} exceeded", limit)),
    };
    CheckLine {
        id: def.id.into(),
        name: def.name.into(),
        status,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Every check at or below the suite's tier, sharing one time budget.
/// Checks still pending once the budget is spent are SKIPPED.
pub fn reproduce(suite: Suite, budget: Duration) -> Scorecard {
    let deadline = Instant::now() + budget;
    let mut checks = Vec::new();
    for def in CHECKS.iter().filter(|d| d.tier <= suite) {
        let left = deadline.saturating_duration_since(Instant::now());
        let line = if left.is_zero() {
            CheckLine {
                id: def.id.into(),
                name: def.name.into(),
                status: Status::Skipped,
                detail: "time budget exhausted".into(),
                elapsed: Duration::ZERO,
            }
        } else {
            run_check(def, left)
        };
        checks.push(line);
    }
    let count = |s| checks.iter().filter(|c: &&CheckLine| c.status == s).count();
    Scorecard {
        suite,
        budget_secs: budget.as_secs(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks,
    }
}
