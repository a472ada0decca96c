//! Maximal subgroups of the full mod-p^2 preimage G~ of a group H mod p.
//!
//! With K = ker(G~ -> H) = I + p*M2(F_p), a maximal M either contains K
//! (then M is the preimage of a maximal subgroup of H) or maps onto H with
//! M n K = I + p*W for a maximal H-stable subspace W of M2(F_p); the second
//! kind are the complements of K/W in G~/W.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{det, inverse, mul, pack, preimage_at_level, reduce, trace, GL2Sub, M2, IDENTITY};
use crate::arith::int::is_prime_u64;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaximalKind {
    /// contains the kernel of reduction
    Preimage,
    /// surjects onto H, meets the kernel in a maximal H-stable submodule
    Complement,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaximalClass {
    pub kind: MaximalKind,
    pub order: usize,
    pub index: usize,
    /// number of conjugates in G~
    pub class_size: usize,
    pub fingerprint_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaximalReport {
    pub p: u64,
    pub h_order: usize,
    pub lifted_order: usize,
    pub lifted_fingerprint: usize,
    pub classes: Vec<MaximalClass>,
    pub total_subgroups: usize,
    pub max_fingerprint: usize,
}

type Vec4 = [u64; 4];

fn conj_set(set: &[u64], g: &M2, n: u64) -> Vec<u64> {
    let gi = inverse(g, n).unwrap();
    let mut v: Vec<u64> = set
        .iter()
        .map(|&k| pack(&mul(&mul(g, &super::unpack(k, n), n), &gi, n), n))
        .collect();
    v.sort_unstable();
    v
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// All subgroups of a small group, found by repeatedly adjoining elements.
fn all_subgroups(h: &GL2Sub) -> Vec<Vec<u64>> {
    let n = h.level();
    let elems: Vec<M2> = h.iter().collect();
    let mut found: HashMap<Vec<u64>, Vec<M2>> = HashMap::new();
    let mut queue = VecDeque::new();
    for g in std::iter::once(IDENTITY).chain(elems.iter().copied()) {
        let s = super::closure(n, &[g]);
        if !found.contains_key(&s) {
            found.insert(s.clone(), vec![g]);
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let gens = found[&s].clone();
        for g in &elems {
            if s.binary_search(&pack(g, n)).is_ok() {
                continue;
            }
            let mut gg = gens.clone();
            gg.push(*g);
            let t = super::closure(n, &gg);
            if !found.contains_key(&t) {
                found.insert(t.clone(), gg);
                queue.push_back(t);
            }
        }
    }
    found.into_keys().collect()
}

fn maximal_among(subs: &[Vec<u64>], order: usize) -> Vec<Vec<u64>> {
    let proper: Vec<&Vec<u64>> = subs.iter().filter(|s| s.len() < order).collect();
    proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.len() > s.len() && t.len() % s.len() == 0 && is_subset(s, t))
        })
        .map(|s| (*s).clone())
        .collect()
}

/// Orbits of a family of sets under a conjugation action, as class sizes
/// with a representative.
fn classes<F>(items: Vec<Vec<u64>>, conj: F, gens: &[M2]) -> Vec<(Vec<u64>, usize)>
where
    F: Fn(&[u64], &M2) -> Vec<u64>,
{
    let mut left: HashSet<Vec<u64>> = items.into_iter().collect();
    let mut out = Vec::new();
    let mut order: Vec<Vec<u64>> = left.iter().cloned().collect();
    order.sort();
    for s in order {
        if !left.contains(&s) {
            continue;
        }
        let mut orbit = HashSet::from([s.clone()]);
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(t) = queue.pop_front() {
            for g in gens {
                let u = conj(&t, g);
                if orbit.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        for t in &orbit {
            left.remove(t);
        }
        out.push((s, orbit.len()));
    }
    out
}

/// Subspace of F_p^4 in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Subspace {
    rows: Vec<(usize, Vec4)>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &Vec4, p: u64) -> Vec4 {
        let mut v = *v;
        for (c, r) in &self.rows {
            let f = v[*c];
            if f != 0 {
                for i in 0..4 {
                    v[i] = (v[i] + (p - f) * r[i]) % p;
                }
            }
        }
        v
    }

    fn contains(&self, v: &Vec4, p: u64) -> bool {
        self.reduce(v, p) == [0; 4]
    }

    fn within(&self, o: &Subspace, p: u64) -> bool {
        self.rows.iter().all(|(_, r)| o.contains(r, p))
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..4).filter(|c| !self.rows.iter().any(|(pc, _)| pc == c)).collect()
    }
}

fn all_subspaces(p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    for mask in 0u32..16 {
        let pivots: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        // free slots: (row, col) with col > pivot and col not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pv = pivots.clone();
                ((pc + 1)..4)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = p.pow(slots.len() as u32);
        for mut t in 0..count {
            let mut rows: Vec<(usize, Vec4)> = pivots
                .iter()
                .map(|&pc| {
                    let mut r = [0; 4];
                    r[pc] = 1;
                    (pc, r)
                })
                .collect();
            for &(r, c) in &slots {
                rows[r].1[c] = t % p;
                t /= p;
            }
            out.push(Subspace { rows });
        }
    }
    out
}

/// X -> h X h^-1 on M2(F_p).
fn adjoint(h: &M2, x: &Vec4, p: u64) -> Vec4 {
    let hi = inverse(h, p).unwrap();
    mul(&mul(h, x, p), &hi, p)
}

/// Maximal proper subspaces of M2(F_p) stable under conjugation by H.
fn maximal_stable_subspaces(h: &GL2Sub, p: u64) -> Vec<Subspace> {
    let stable: Vec<Subspace> = all_subspaces(p)
        .into_iter()
        .filter(|w| w.dim() < 4)
        .filter(|w| {
            h.generators()
                .iter()
                .all(|g| w.rows.iter().all(|(_, r)| w.contains(&adjoint(g, r, p), p)))
        })
        .collect();
    stable
        .iter()
        .filter(|w| !stable.iter().any(|o| o.dim() > w.dim() && w.within(o, p)))
        .cloned()
        .collect()
}

/// Coset keys for G~/W: g = s(h)(I + pY) with s the naive lift, key (h, Y mod W).
struct Quotient<'a> {
    p: u64,
    q: u64,
    w: &'a Subspace,
}

impl Quotient<'_> {
    fn key(&self, g: &M2) -> u64 {
        let (p, q) = (self.p, self.q);
        let h = reduce(g, p);
        let y = mul(&inverse(&h, q).unwrap(), g, q);
        let yv: Vec4 = [
            (y[0] + q - 1) % q / p,
            y[1] / p,
            y[2] / p,
            (y[3] + q - 1) % q / p,
        ];
        let r = self.w.reduce(&yv, p);
        pack(&h, p) * p * p * p * p + pack(&r, p)
    }

    fn element(&self, h: &M2, y: &Vec4) -> M2 {
        let (p, q) = (self.p, self.q);
        let k = [1 + p * y[0], p * y[1], p * y[2], 1 + p * y[3]];
        mul(h, &reduce(&k, q), q)
    }

    /// Closure in G~/W; `None` once it exceeds `cap`.
    fn closure(&self, gens: &[M2], cap: usize) -> Option<HashMap<u64, M2>> {
        let q = self.q;
        let id = reduce(&IDENTITY, q);
        let mut seen = HashMap::from([(self.key(&id), id)]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = mul(&g, s, q);
                let k = self.key(&h);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                    e.insert(h);
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(h);
                }
            }
        }
        Some(seen)
    }
}

/// A short generating list for a small group.
fn small_generating_set(h: &GL2Sub) -> Vec<M2> {
    let n = h.level();
    let order = h.order();
    let elems: Vec<M2> = h.iter().collect();
    for g in &elems {
        if super::closure(n, &[*g]).len() == order {
            return vec![*g];
        }
    }
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if super::closure(n, &[*a, *b]).len() == order {
                return vec![*a, *b];
            }
        }
    }
    h.generators().to_vec()
}

fn fingerprint_size<'a>(it: impl Iterator<Item = &'a M2>, q: u64) -> usize {
    it.map(|g| (trace(g, q), det(g, q)))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Fingerprints of all maximal subgroups of the mod-p^2 preimage of `h`,
/// grouped by conjugacy class.
pub fn maximal_subgroup_fingerprints(h: &GL2Sub) -> Result<MaximalReport> {
    let p = h.level();
    if !is_prime_u64(p) || p > 13 {
        return Err(Error::Invalid(format!(
            "maximal subgroup search needs a prime level <= 13, got {p}"
        )));
    }
    let q = p * p;
    let h_order = h.order();
    let lifted = preimage_at_level(h, q)?;
    let big: Vec<M2> = lifted.iter().collect();
    let mut out = Vec::new();

    // preimages of maximal subgroups of H
    let maxes = maximal_among(&all_subgroups(h), h_order);
    let hgens = h.generators().to_vec();
    for (rep, size) in classes(maxes, |s, g| conj_set(s, g, p), &hgens) {
        let members = big.iter().filter(|g| rep.binary_search(&pack(&reduce(g, p), p)).is_ok());
        out.push(MaximalClass {
            kind: MaximalKind::Preimage,
            order: rep.len() * (q * q) as usize,
            index: h_order / rep.len(),
            class_size: size,
            fingerprint_size: fingerprint_size(members, q),
        });
    }

    // complements of K/W in G~/W
    let sgens = small_generating_set(h);
    for w in maximal_stable_subspaces(h, p) {
        let quo = Quotient { p, q, w: &w };
        let free = w.free_columns();
        let reps: Vec<Vec4> = (0..p.pow(free.len() as u32))
            .map(|mut t| {
                let mut v = [0; 4];
                for &c in &free {
                    v[c] = t % p;
                    t /= p;
                }
                v
            })
            .collect();
        let mut comps: HashMap<Vec<u64>, HashMap<u64, M2>> = HashMap::new();
        let choices = reps.len().pow(sgens.len() as u32);
        for mut t in 0..choices {
            let gens: Vec<M2> = sgens
                .iter()
                .map(|s| {
                    let y = reps[t % reps.len()];
                    t /= reps.len();
                    quo.element(s, &y)
                })
                .collect();
            if let Some(c) = quo.closure(&gens, h_order) {
                if c.len() == h_order {
                    let mut keys: Vec<u64> = c.keys().copied().collect();
                    keys.sort_unstable();
                    comps.entry(keys).or_insert(c);
                }
            }
        }
        let reps_of: HashMap<Vec<u64>, HashMap<u64, M2>> = comps.clone();
        let conj = |s: &[u64], g: &M2| {
            let c = &reps_of[s];
            let gi = inverse(g, q).unwrap();
            let mut v: Vec<u64> = c
                .values()
                .map(|x| quo.key(&mul(&mul(g, x, q), &gi, q)))
                .collect();
            v.sort_unstable();
            v
        };
        let found: Vec<Vec<u64>> = comps.keys().cloned().collect();
        for (rep, size) in classes(found, conj, lifted.generators()) {
            let set: HashSet<u64> = rep.into_iter().collect();
            let members = big.iter().filter(|g| set.contains(&quo.key(g)));
            let index = p.pow((4 - w.dim()) as u32) as usize;
            out.push(MaximalClass {
                kind: MaximalKind::Complement,
                order: lifted.order() / index,
                index,
                class_size: size,
                fingerprint_size: fingerprint_size(members, q),
            });
        }
    }
    out.sort_by_key(|c| (c.kind, std::cmp::Reverse(c.order), c.fingerprint_size));
    Ok(MaximalReport {
        p,
        h_order,
        lifted_order: lifted.order(),
        lifted_fingerprint: lifted.fingerprint().len(),
        total_subgroups: out.iter().map(|c| c.class_size).sum(),
        max_fingerprint: out.iter().map(|c| c.fingerprint_size).max().unwrap_or(0),
        classes: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::{borel, special_mod7_image};

    #[test]
    fn subspace_counts() {
        // Gaussian binomials for F_3^4: 1, 40, 130, 40, 1
        assert_eq!(all_subspaces(3).len(), 212);
    }

    #[test]
    fn special_group_has_eight_maximal_classes() {
        let r = maximal_subgroup_fingerprints(&special_mod7_image()).unwrap();
        assert_eq!(r.h_order, 36);
        assert_eq!(r.lifted_order, 86436);
        assert_eq!(r.lifted_fingerprint, 483);
        assert_eq!(r.classes.len(), 8);
        assert!(r.max_fingerprint <= 357, "{r:?}");
        for c in &r.classes {
            assert!(c.order < r.lifted_order);
            assert_eq!(c.order * c.index, r.lifted_order);
        }
    }

    #[test]
    fn borel_three() {
        let r = maximal_subgroup_fingerprints(&borel(3).unwrap()).unwrap();
        assert!(r.classes.iter().all(|c| c.fingerprint_size <= r.lifted_fingerprint));
        assert!(r.classes.iter().any(|c| c.kind == MaximalKind::Complement));
    }
}
