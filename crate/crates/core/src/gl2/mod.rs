//! Subgroups of GL2(Z/N): closure, orbits on torsion vectors, level raising
//! and (trace, det) fingerprints.

pub mod certify;
pub mod maximal;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::int::{gcd_u64, inv_mod};
use crate::{Error, Result};

pub use certify::{frobenius_level_certificate, LevelCertificate};
pub use maximal::{maximal_subgroup_fingerprints, MaximalClass, MaximalKind, MaximalReport};

/// [a, b, c, d] for the matrix [[a, b], [c, d]], entries reduced mod N.
pub type M2 = [u64; 4];

pub const IDENTITY: M2 = [1, 0, 0, 1];

pub fn mul(x: &M2, y: &M2, n: u64) -> M2 {
    [
        (x[0] * y[0] + x[1] * y[2]) % n,
        (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n,
        (x[2] * y[1] + x[3] * y[3]) % n,
    ]
}

pub fn det(x: &M2, n: u64) -> u64 {
    (x[0] * x[3] % n + n - x[1] * x[2] % n) % n
}

pub fn trace(x: &M2, n: u64) -> u64 {
    (x[0] + x[3]) % n
}

pub fn inverse(x: &M2, n: u64) -> Option<M2> {
    let di = inv_mod(det(x, n), n)?;
    Some([
        x[3] * di % n,
        (n - x[1]) % n * di % n,
        (n - x[2]) % n * di % n,
        x[0] * di % n,
    ])
}

pub fn reduce(x: &M2, n: u64) -> M2 {
    [x[0] % n, x[1] % n, x[2] % n, x[3] % n]
}

pub fn from_signed(x: [i64; 4], n: u64) -> M2 {
    x.map(|v| v.rem_euclid(n as i64) as u64)
}

pub fn pack(x: &M2, n: u64) -> u64 {
    ((x[0] * n + x[1]) * n + x[2]) * n + x[3]
}

pub fn unpack(k: u64, n: u64) -> M2 {
    [k / (n * n * n), k / (n * n) % n, k / n % n, k % n]
}

/// Sorted packed elements of the group generated by `gens`.
pub fn closure(n: u64, gens: &[M2]) -> Vec<u64> {
    let id = reduce(&IDENTITY, n);
    let mut seen = HashSet::new();
    seen.insert(pack(&id, n));
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = mul(&g, s, n);
            if seen.insert(pack(&h, n)) {
                queue.push_back(h);
            }
        }
    }
    let mut v: Vec<u64> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// A subgroup of GL2(Z/N) given by generators; elements computed on demand.
#[derive(Clone, Debug)]
pub struct GL2Sub {
    n: u64,
    gens: Vec<M2>,
    elems: OnceLock<Vec<u64>>,
}

impl GL2Sub {
    pub fn new(n: u64, gens: Vec<M2>) -> Result<Self> {
        if !(2..65536).contains(&n) {
            return Err(Error::Invalid(format!("modulus {n} out of range 2..65536")));
        }
        let gens: Vec<M2> = gens.iter().map(|g| reduce(g, n)).collect();
        for g in &gens {
            if gcd_u64(det(g, n), n) != 1 {
                return Err(Error::NotInvertible { modulus: n, matrix: *g });
            }
        }
        Ok(GL2Sub { n, gens, elems: OnceLock::new() })
    }

    pub fn from_signed(n: u64, gens: &[[i64; 4]]) -> Result<Self> {
        Self::new(n, gens.iter().map(|g| from_signed(*g, n)).collect())
    }

    fn with_elements(n: u64, gens: Vec<M2>, elems: Vec<u64>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(elems);
        GL2Sub { n, gens, elems: cell }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn generators(&self) -> &[M2] {
        &self.gens
    }

    pub fn elements(&self) -> &[u64] {
        self.elems.get_or_init(|| closure(self.n, &self.gens))
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn iter(&self) -> impl Iterator<Item = M2> + '_ {
        self.elements().iter().map(|&k| unpack(k, self.n))
    }

    pub fn contains(&self, x: &M2) -> bool {
        self.elements()
            .binary_search(&pack(&reduce(x, self.n), self.n))
            .is_ok()
    }

    pub fn contains_minus_identity(&self) -> bool {
        let n = self.n;
        self.contains(&[n - 1, 0, 0, n - 1])
    }

    /// g G g^-1
    pub fn conjugate(&self, g: &M2) -> Result<GL2Sub> {
        let n = self.n;
        let gi = inverse(g, n).ok_or(Error::NotInvertible { modulus: n, matrix: *g })?;
        let gens = self.gens.iter().map(|s| mul(&mul(g, s, n), &gi, n)).collect();
        Ok(GL2Sub::new(n, gens)?)
    }

    /// Image under reduction mod m.
    pub fn reduce_to(&self, m: u64) -> Result<GL2Sub> {
        if m < 2 || self.n % m != 0 {
            return Err(Error::NotDivisible(m, self.n));
        }
        GL2Sub::new(m, self.gens.iter().map(|g| reduce(g, m)).collect())
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let n = self.n;
        Fingerprint(self.iter().map(|g| (trace(&g, n), det(&g, n))).collect())
    }
}

impl PartialEq for GL2Sub {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.elements() == o.elements()
    }
}

/// The set {(trace g, det g)}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint(pub BTreeSet<(u64, u64)>);

impl Fingerprint {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: u64, d: u64) -> bool {
        self.0.contains(&(t, d))
    }
}

fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&u| gcd_u64(u, n) == 1).collect()
}

pub fn full_group(n: u64) -> Result<GL2Sub> {
    let mut gens = vec![[1, 1, 0, 1], [1, 0, 1, 1]];
    gens.extend(units(n).into_iter().map(|u| [u, 0, 0, 1]));
    GL2Sub::new(n, gens)
}

/// Invertible upper-triangular matrices.
pub fn borel(n: u64) -> Result<GL2Sub> {
    let mut gens = vec![[1, 1, 0, 1]];
    for u in units(n) {
        gens.push([u, 0, 0, 1]);
        gens.push([1, 0, 0, u]);
    }
    GL2Sub::new(n, gens)
}

pub fn split_cartan(n: u64) -> Result<GL2Sub> {
    let mut gens = vec![];
    for u in units(n) {
        gens.push([u, 0, 0, 1]);
        gens.push([1, 0, 0, u]);
    }
    if gens.is_empty() {
        gens.push(IDENTITY);
    }
    GL2Sub::new(n, gens)
}

/// Upper-triangular matrices with top-left entry +-1: the image attached to
/// a rational point of order N up to sign.
pub fn x1_type(n: u64) -> Result<GL2Sub> {
    let mut gens = vec![[n - 1, 0, 0, n - 1], [1, 1, 0, 1]];
    gens.extend(units(n).into_iter().map(|u| [1, 0, 0, u]));
    GL2Sub::new(n, gens)
}

/// The mod-7 image <[[2,0],[0,4]], [[0,2],[1,0]], -I> of the curve with
/// j = 3^3*5*7^5/2^7.
pub fn special_mod7_image() -> GL2Sub {
    GL2Sub::from_signed(7, &[[2, 0, 0, 4], [0, 2, 1, 0], [-1, 0, 0, -1]]).unwrap()
}

pub fn scalars(n: u64) -> Result<GL2Sub> {
    GL2Sub::new(n, units(n).into_iter().map(|u| [u, 0, 0, u]).collect())
}

/// Built-in group by name at level N: full, borel, diagonal, x1, scalars,
/// and special-7 (N = 7 only).
pub fn builtin(name: &str, n: u64) -> Result<GL2Sub> {
    match name {
        "full" | "gl2" => full_group(n),
        "borel" => borel(n),
        "diagonal" | "split-cartan" => split_cartan(n),
        "x1" => x1_type(n),
        "scalars" => scalars(n),
        "special-7" if n == 7 => Ok(special_mod7_image()),
        "special-7" => Err(Error::Invalid("special-7 lives at level 7".into())),
        _ => Err(Error::Invalid(format!("unknown group {name:?}"))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub level: u64,
    pub generators: Vec<[[i64; 2]; 2]>,
}

impl GeneratorFile {
    pub fn into_group(self) -> Result<GL2Sub> {
        let gens: Vec<[i64; 4]> = self
            .generators
            .iter()
            .map(|m| [m[0][0], m[0][1], m[1][0], m[1][1]])
            .collect();
        GL2Sub::from_signed(self.level, &gens)
    }
}

pub fn load_generator_file(path: &Path) -> Result<GL2Sub> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let f: GeneratorFile = serde_json::from_str(&s).map_err(|e| Error::Parse(e.to_string()))?;
    f.into_group()
}

/// Vectors of exact order N in (Z/N)^2, as packed x*N + y.
pub fn order_n_vectors(n: u64) -> Vec<u64> {
    (0..n * n)
        .filter(|&k| gcd_u64(gcd_u64(k / n, k % n), n) == 1)
        .collect()
}

fn act(g: &M2, v: u64, n: u64) -> u64 {
    let (x, y) = (v / n, v % n);
    ((g[0] * x + g[1] * y) % n) * n + (g[2] * x + g[3] * y) % n
}

/// Orbit sizes of G on order-N vectors modulo +-1, sorted. These are the
/// degrees of the closed points of X1(N) above a j whose mod-N image is G.
pub fn x1_orbit_degrees(g: &GL2Sub) -> Result<Vec<u64>> {
    if !g.contains_minus_identity() {
        return Err(Error::MinusIdentityMissing);
    }
    let n = g.n;
    let mut seen = vec![false; (n * n) as usize];
    let mut out = Vec::new();
    for v in order_n_vectors(n) {
        if seen[v as usize] {
            continue;
        }
        seen[v as usize] = true;
        let mut stack = vec![v];
        let mut size = 1u64;
        while let Some(w) = stack.pop() {
            for s in &g.gens {
                let u = act(s, w, n);
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    size += 1;
                    stack.push(u);
                }
            }
        }
        out.push(if n > 2 { size / 2 } else { size });
    }
    out.sort_unstable();
    Ok(out)
}

/// Full preimage of G (mod m) under GL2(Z/M) -> GL2(Z/m).
pub fn preimage_at_level(g: &GL2Sub, big: u64) -> Result<GL2Sub> {
    let m = g.n;
    if big % m != 0 {
        return Err(Error::NotDivisible(m, big));
    }
    let r = big / m;
    let mut elems = Vec::with_capacity(g.order() * (r * r * r * r) as usize);
    for h in g.iter() {
        for t in 0..r * r * r * r {
            let x = [
                h[0] + m * (t % r),
                h[1] + m * (t / r % r),
                h[2] + m * (t / (r * r) % r),
                h[3] + m * (t / (r * r * r)),
            ];
            if gcd_u64(det(&x, big), big) == 1 {
                elems.push(pack(&x, big));
            }
        }
    }
    elems.sort_unstable();
    // generators: lifted generators plus generators of the congruence kernel
    let mut gens: Vec<M2> = g.gens.clone();
    for t in [[1, m, 0, 1], [1, 0, m, 1]] {
        gens.push(reduce(&t, big));
    }
    for u in units(big).into_iter().filter(|u| u % m == 1) {
        gens.push([u, 0, 0, 1]);
        gens.push([1, 0, 0, u]);
    }
    Ok(GL2Sub::with_elements(big, gens, elems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::jordan_j2;

    #[test]
    fn closure_sizes() {
        assert_eq!(full_group(3).unwrap().order(), 48);
        assert_eq!(borel(3).unwrap().order(), 12);
        assert_eq!(full_group(4).unwrap().order(), 96);
        assert_eq!(special_mod7_image().order(), 36);
        assert!(GL2Sub::new(6, vec![[2, 0, 0, 1]]).is_err());
    }

    #[test]
    fn appendix_orbits() {
        assert_eq!(x1_orbit_degrees(&borel(3).unwrap()).unwrap(), vec![1, 3]);
        assert_eq!(x1_orbit_degrees(&split_cartan(3).unwrap()).unwrap(), vec![1, 1, 2]);
        assert_eq!(x1_orbit_degrees(&borel(9).unwrap()).unwrap(), vec![3, 6, 27]);
        assert_eq!(x1_orbit_degrees(&x1_type(9).unwrap()).unwrap(), vec![1, 1, 1, 6, 27]);
        assert_eq!(x1_orbit_degrees(&special_mod7_image()).unwrap(), vec![6, 9, 9]);
        let no_minus = GL2Sub::new(3, vec![[1, 1, 0, 1]]).unwrap();
        assert_eq!(x1_orbit_degrees(&no_minus), Err(Error::MinusIdentityMissing));
    }

    #[test]
    fn orbit_sums() {
        for n in 3..=12 {
            for g in [full_group(n), borel(n), x1_type(n)] {
                let s: u64 = x1_orbit_degrees(&g.unwrap()).unwrap().iter().sum();
                assert_eq!(s, jordan_j2(n) / 2);
            }
        }
    }

    #[test]
    fn preimages() {
        let triv = GL2Sub::new(7, vec![IDENTITY]).unwrap();
        let k = preimage_at_level(&triv, 49).unwrap();
        assert_eq!(k.order(), 2401);
        assert!(k.iter().all(|g| reduce(&g, 7) == IDENTITY));
        let b = borel(3).unwrap();
        let b9 = preimage_at_level(&b, 9).unwrap();
        assert_eq!(b9.order(), 12 * 81);
        assert_eq!(b9.reduce_to(3).unwrap(), b);
        assert_eq!(closure(9, b9.generators()).len(), b9.order());
        assert!(preimage_at_level(&b, 10).is_err());
    }

    #[test]
    fn special_group_fingerprint() {
        let h = special_mod7_image();
        let ht = preimage_at_level(&h, 49).unwrap();
        assert_eq!(ht.order(), 36 * 2401);
        assert_eq!(closure(49, ht.generators()).len(), ht.order());
        assert_eq!(ht.fingerprint().len(), 483);
        assert_eq!(scalars(7).unwrap().fingerprint().len(), 6);
    }
}
