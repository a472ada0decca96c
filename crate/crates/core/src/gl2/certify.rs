//! Certifying that a mod-p^2 image is the full preimage of its mod-p image
//! by counting Frobenius (trace, det) pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{maximal_subgroup_fingerprints, preimage_at_level, GL2Sub};
use crate::arith::int::primes_up_to;
use crate::elliptic::{frobenius_scan, EllipticCurveQ};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelCertificate {
    pub level: u64,
    pub p_bound: u64,
    pub primes_used: usize,
    pub observed_pairs: usize,
    pub group_pairs: usize,
    pub max_maximal_pairs: usize,
    pub maximal_classes: usize,
    pub maximal_subgroups: usize,
    /// every observed pair lies in the fingerprint of the preimage
    pub observed_within_group: bool,
    pub pass: bool,
}

/// The set {(a_l mod p^2, l mod p^2)} over good primes l <= p_bound, l != p,
/// compared with the fingerprints of the preimage G~ of `h` and of its
/// maximal subgroups. A pass means the mod-p^2 image is all of G~.
pub fn frobenius_level_certificate(
    e: &EllipticCurveQ,
    h: &GL2Sub,
    p_bound: u64,
) -> Result<LevelCertificate> {
    let p = h.level();
    let q = p * p;
    let report = maximal_subgroup_fingerprints(h)?;
    let group = preimage_at_level(h, q)?.fingerprint();
    let primes: Vec<u64> = primes_up_to(p_bound).into_iter().filter(|&l| l % p != 0).collect();
    let traces = frobenius_scan(e, &primes);
    let qi = q as i64;
    let observed: BTreeSet<(u64, u64)> = traces
        .iter()
        .map(|&(l, a)| (a.rem_euclid(qi) as u64, l % q))
        .collect();
    let within = observed.iter().all(|&(t, d)| group.contains(t, d));
    Ok(LevelCertificate {
        level: q,
        p_bound,
        primes_used: traces.len(),
        observed_pairs: observed.len(),
        group_pairs: group.len(),
        max_maximal_pairs: report.max_fingerprint,
        maximal_classes: report.classes.len(),
        maximal_subgroups: report.total_subgroups,
        observed_within_group: within,
        pass: within && observed.len() > report.max_fingerprint,
    })
}
