//! Output records. Every variant serializes to a JSON object that
//! deserializes back to the same record.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use oddpts_core::cm::LevelReduction;
use oddpts_core::elliptic::X1Degrees;
use oddpts_core::entangle::{JClass, XYReport};
use oddpts_core::gl2::{LevelCertificate, MaximalReport};
use oddpts_core::modcurve::LevelConstraint;

use crate::reproduce::{Scorecard, Status};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenusReport {
    pub curve: String,
    pub n: u64,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub source: String,
    pub target: String,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelsReport {
    pub j: String,
    pub cm: Option<i64>,
    pub isogenies: Vec<u64>,
    pub constraint: LevelConstraint,
    pub summary: String,
    pub levels_up_to: u64,
    pub levels: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub group: String,
    pub level: u64,
    pub order: usize,
    pub degrees: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CmOrbitsReport {
    pub disc: i64,
    pub n: u64,
    pub reduced: bool,
    pub sizes: Vec<u64>,
    pub min: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreesReport {
    pub curve: [String; 5],
    pub degrees: X1Degrees,
}

#[derive(Clone, Debug)]
pub enum Report {
    Genus(GenusReport),
    Degree(DegreeReport),
    Levels(LevelsReport),
    Orbits(OrbitsReport),
    Maximal(MaximalReport),
    Certificate(LevelCertificate),
    CmOrbits(CmOrbitsReport),
    Reduction(LevelReduction),
    Entangle(XYReport),
    Degrees(DegreesReport),
    Scorecard(Scorecard),
}

impl Report {
    /// False when the command ran but its check did not pass.
    pub fn passed(&self) -> bool {
        match self {
            Report::Certificate(c) => c.pass,
            Report::Scorecard(s) => s.all_passed(),
            _ => true,
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Report::Genus(r) => serde_json::to_string_pretty(r),
            Report::Degree(r) => serde_json::to_string_pretty(r),
            Report::Levels(r) => serde_json::to_string_pretty(r),
            Report::Orbits(r) => serde_json::to_string_pretty(r),
            Report::Maximal(r) => serde_json::to_string_pretty(r),
            Report::Certificate(r) => serde_json::to_string_pretty(r),
            Report::CmOrbits(r) => serde_json::to_string_pretty(r),
            Report::Reduction(r) => serde_json::to_string_pretty(r),
            Report::Entangle(r) => serde_json::to_string_pretty(r),
            Report::Degrees(r) => serde_json::to_string_pretty(r),
            Report::Scorecard(r) => serde_json::to_string_pretty(r),
        };
        v.expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Genus(r) => writeln!(s, "genus {}({}) = {}", r.curve, r.n, r.genus),
            Report::Degree(r) => writeln!(s, "deg({} -> {}) = {}", r.source, r.target, r.degree),
            Report::Levels(r) => {
                writeln!(s, "j = {}", r.j).unwrap();
                if let Some(d) = r.cm {
                    writeln!(s, "CM by the order of discriminant {d}").unwrap();
                }
                writeln!(s, "isogeny degrees: {:?}", r.isogenies).unwrap();
                writeln!(s, "allowed levels: {}", r.summary).unwrap();
                writeln!(s, "up to {}: {:?}", r.levels_up_to, r.levels)
            }
            Report::Orbits(r) => {
                writeln!(s, "group {} at level {}, order {}", r.group, r.level, r.order).unwrap();
                writeln!(s, "point degrees: {:?}", r.degrees)
            }
            Report::Maximal(r) => {
                writeln!(s, "p = {}: |H| = {}, |H~| = {}, |fingerprint(H~)| = {}", r.p, r.h_order, r.lifted_order, r.lifted_fingerprint).unwrap();
                writeln!(s, "{} classes of maximal subgroups ({} subgroups):", r.classes.len(), r.total_subgroups).unwrap();
                for c in &r.classes {
                    writeln!(s, "  {:?} order {} index {} conjugates {} fingerprint {}", c.kind, c.order, c.index, c.class_size, c.fingerprint_size).unwrap();
                }
                writeln!(s, "largest maximal fingerprint: {}", r.max_fingerprint)
            }
            Report::Certificate(c) => {
                writeln!(s, "level {}: scanned {} primes up to {}", c.level, c.primes_used, c.p_bound).unwrap();
                writeln!(s, "observed {} of {} (trace, det) pairs; maximal subgroups reach at most {}", c.observed_pairs, c.group_pairs, c.max_maximal_pairs).unwrap();
                writeln!(s, "{}", if c.pass { "PASS" } else { "FAIL" })
            }
            Report::CmOrbits(r) => {
                let kind = if r.reduced { "reduced Cartan" } else { "Cartan" };
                writeln!(s, "{kind} orbits, disc {}, N = {}: {:?}", r.disc, r.n, r.sizes).unwrap();
                match r.min {
                    Some(m) => writeln!(s, "min {m}"),
                    None => writeln!(s, "no points of order N"),
                }
            }
            Report::Reduction(r) => writeln!(
                s,
                "disc {}, N = {}: p = {}, p^m = {}^{}, 2 {} => level {}",
                r.disc,
                r.n,
                r.p,
                r.p,
                r.m,
                if r.two_inert { "inert" } else { "not inert" },
                r.reduced_level
            ),
            Report::Entangle(r) => {
                for p in &r.points {
                    let j = match &p.j {
                        JClass::Cusp => "cusp".to_string(),
                        JClass::Finite(v) => format!("j = {v}"),
                    };
                    writeln!(
                        s,
                        "{:<16} on Y: {:<5} {:<20} v(y) = {:>2} lead {:<6} {}",
                        p.point,
                        p.on_curve,
                        j,
                        p.valuation,
                        p.leading,
                        if p.lifts { "lifts" } else { "does not lift" }
                    )
                    .unwrap();
                }
                writeln!(s, "{} of {} points lift to X; all lifted points are cusps: {}", r.lifting, r.points.len(), r.lifted_are_cusps).unwrap();
                writeln!(s, "X -> Y by y = t^3: {}; p1 depressed: {}", r.x_maps_to_y, r.p1_depressed)
            }
            Report::Degrees(r) => {
                let d = &r.degrees;
                writeln!(s, "curve [{}], level {}, Weber {:?}", r.curve.join(", "), d.level, d.weber).unwrap();
                writeln!(s, "point degrees: {:?}", d.degrees).unwrap();
                if d.unresolved_degree > 0 {
                    writeln!(s, "unresolved degree {} (no factor of degree <= {:?})", d.unresolved_degree, d.cap).unwrap();
                }
                Ok(())
            }
            Report::Scorecard(r) => {
                for c in &r.checks {
                    let tag = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skipped => "SKIPPED",
                    };
                    writeln!(s, "{tag} [{}] {} ({:.1?}): {}", c.id, c.name, c.elapsed, c.detail).unwrap();
                }
                writeln!(s, "{:?}: {} passed, {} failed, {} skipped", r.suite, r.passed, r.failed, r.skipped)
            }
        }
        .unwrap();
        s
    }
}
