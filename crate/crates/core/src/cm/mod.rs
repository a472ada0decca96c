//! Imaginary quadratic orders mod N and Cartan orbits on points of order N.

use serde::{Deserialize, Serialize};

use crate::arith::int::{factorize_u64, gcd_u64, is_prime_u64, kronecker};
use crate::{Error, Result};

/// Largest N^2 for brute-force orbit enumeration.
pub const BRUTE_FORCE_CEILING: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadOrder {
    pub disc: i64,
}

impl QuadOrder {
    pub fn new(disc: i64) -> Result<Self> {
        if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
            return Err(Error::Invalid(format!("{disc} is not an imaginary quadratic discriminant")));
        }
        Ok(QuadOrder { disc })
    }

    /// (f, disc_K) with disc = f^2 disc_K.
    pub fn conductor(&self) -> (u64, i64) {
        let mut f = 1u64;
        let mut d = self.disc;
        for (p, e) in factorize_u64(self.disc.unsigned_abs()) {
            let mut e = e;
            while e >= 2 {
                let pp = (p * p) as i64;
                let rest = d / pp;
                if matches!(rest.rem_euclid(4), 0 | 1) {
                    d = rest;
                    f *= p;
                    e -= 2;
                } else {
                    break;
                }
            }
        }
        (f, d)
    }

    pub fn field_disc(&self) -> i64 {
        self.conductor().1
    }

    /// omega = (disc + sqrt(disc))/2 satisfies w^2 = disc*w - (disc^2 - disc)/4.
    pub fn omega_min_poly(&self) -> (i64, i64) {
        let d = self.disc;
        (d, (d * d - d) / 4)
    }

    /// Norm of u + v*omega.
    pub fn norm(&self, u: i64, v: i64) -> i64 {
        let (t, n) = self.omega_min_poly();
        u * u + t * u * v + n * v * v
    }

    /// The units of the order as (u, v).
    pub fn units(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for v in -2..=2i64 {
            for u in -8..=8i64 {
                if self.norm(u, v) == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// O/NO with elements u + v*omega packed as u*N + v.
#[derive(Clone, Debug)]
pub struct CartanModule {
    pub order: QuadOrder,
    pub n: u64,
    t: u64,
    c: u64,
}

impl CartanModule {
    pub fn new(order: QuadOrder, n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Invalid("N must be positive".into()));
        }
        if n * n > BRUTE_FORCE_CEILING {
            return Err(Error::Infeasible(format!(
                "N = {n}: brute force needs N^2 <= {BRUTE_FORCE_CEILING}"
            )));
        }
        let (t, c) = order.omega_min_poly();
        let m = n as i64;
        Ok(CartanModule {
            order,
            n,
            t: t.rem_euclid(m) as u64,
            c: c.rem_euclid(m) as u64,
        })
    }

    pub fn size(&self) -> u64 {
        self.n * self.n
    }

    pub fn element(&self, u: i64, v: i64) -> u64 {
        let m = self.n as i64;
        u.rem_euclid(m) as u64 * self.n + v.rem_euclid(m) as u64
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let n = self.n;
        let (a, b) = (x / n, x % n);
        let (c, d) = (y / n, y % n);
        // (a + b w)(c + d w) with w^2 = t w - c0
        let bd = b * d % n;
        let u = (a * c + n * n - bd * self.c % n) % n;
        let v = (a * d + b * c + bd * self.t) % n;
        u * n + v
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let n = self.n;
        ((x / n + y / n) % n) * n + (x % n + y % n) % n
    }

    pub fn norm_mod(&self, x: u64) -> u64 {
        let n = self.n;
        let (a, b) = (x / n, x % n);
        (a * a + self.t * a % n * b + self.c * b % n * b) % n
    }

    pub fn is_unit(&self, x: u64) -> bool {
        gcd_u64(self.norm_mod(x), self.n) == 1
    }

    pub fn units(&self) -> Vec<u64> {
        (0..self.size()).filter(|&x| self.is_unit(x)).collect()
    }

    /// |(O/NO)^x| = N^2 prod (1 - 1/p)(1 - (disc/p)/p).
    pub fn unit_count_formula(&self) -> u64 {
        let mut r = self.n * self.n;
        for (p, _) in factorize_u64(self.n) {
            let k = kronecker(self.order.disc, p as i64) as i64;
            r = r / (p * p) * (p - 1) * (p as i64 - k) as u64;
        }
        r
    }

    pub fn has_order_n(&self, x: u64) -> bool {
        let n = self.n;
        gcd_u64(gcd_u64(x / n, x % n), n) == 1
    }

    /// |O x|, the order of the submodule generated by x.
    pub fn submodule_order(&self, x: u64) -> u64 {
        let mut seen = vec![false; self.size() as usize];
        let mut count = 0;
        for y in 0..self.size() {
            let z = self.mul(y, x) as usize;
            if !seen[z] {
                seen[z] = true;
                count += 1;
            }
        }
        count
    }

    /// Orbit partition of the unit group on the points of order N: for each
    /// point its orbit index, plus the orbit sizes.
    pub fn orbits(&self) -> (Vec<Option<usize>>, Vec<u64>) {
        let units = self.units();
        let mut id = vec![None; self.size() as usize];
        let mut sizes = Vec::new();
        for x in 0..self.size() {
            if !self.has_order_n(x) || id[x as usize].is_some() {
                continue;
            }
            let k = sizes.len();
            let mut s = 0;
            for &u in &units {
                let y = self.mul(u, x) as usize;
                if id[y].is_none() {
                    id[y] = Some(k);
                    s += 1;
                }
            }
            sizes.push(s);
        }
        (id, sizes)
    }

    fn unit_images(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .order
            .units()
            .into_iter()
            .map(|(u, w)| self.element(u, w))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn check_level(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid("N must be at least 2".into()));
    }
    Ok(())
}

/// Sizes of the (O/NO)^x-orbits on points of order N, sorted.
pub fn cartan_orbit_sizes(disc: i64, n: u64) -> Result<Vec<u64>> {
    check_level(n)?;
    let m = CartanModule::new(QuadOrder::new(disc)?, n)?;
    let mut s = m.orbits().1;
    s.sort_unstable();
    Ok(s)
}

/// Orbit sizes of the reduced Cartan (O/NO)^x / O^x on O^x-classes of
/// points of order N, sorted.
pub fn reduced_orbit_sizes(disc: i64, n: u64) -> Result<Vec<u64>> {
    if n <= 2 {
        return Err(Error::Invalid("reduced orbits need N > 2".into()));
    }
    let m = CartanModule::new(QuadOrder::new(disc)?, n)?;
    let units = m.unit_images();
    let (id, sizes) = m.orbits();
    let mut classes = vec![0u64; sizes.len()];
    for x in 0..m.size() {
        if let Some(k) = id[x as usize] {
            // count each class once, at its smallest member
            let canon = units.iter().map(|&u| m.mul(u, x)).min().unwrap();
            if canon == x {
                classes[k] += 1;
            }
        }
    }
    classes.sort_unstable();
    Ok(classes)
}

/// Closed form p^(a+b-1)(p-1) for the orbit of a point of order
/// p^a whose submodule is Z/p^a x Z/p^b.
pub fn ramified_orbit_formula(p: u64, a: u32, b: u32) -> u64 {
    p.pow(a + b - 1) * (p - 1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthCheck {
    pub disc: i64,
    pub p: u64,
    pub a: u32,
    pub m: u32,
    /// points of order p^a whose image at level p^m has orbit > phi(p^m)
    pub hypothesis_points: u64,
    pub violations: u64,
    pub holds: bool,
}

/// For every point P of order p^a whose image p^(a-m)P in O/p^m O has
/// orbit larger than phi(p^m), compares the orbit of P with p^(2(a-m))
/// times the orbit of the image.
pub fn orbit_growth_law_check(disc: i64, p: u64, a: u32, m: u32) -> Result<GrowthCheck> {
    if !is_prime_u64(p) || p == 2 {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    if kronecker(disc, p as i64) == 1 {
        return Err(Error::Invalid(format!("{p} splits in the order of discriminant {disc}")));
    }
    if m > a {
        return Err(Error::Invalid("need m <= a".into()));
    }
    let order = QuadOrder::new(disc)?;
    let (na, nm) = (p.pow(a), p.pow(m));
    let top = CartanModule::new(order, na)?;
    let (id_top, size_top) = top.orbits();
    let mut out = GrowthCheck {
        disc,
        p,
        a,
        m,
        hypothesis_points: 0,
        violations: 0,
        holds: true,
    };
    if m == 0 {
        // O/O is trivial; every orbit there has size 1 = phi(1)
        return Ok(out);
    }
    let low = CartanModule::new(order, nm)?;
    let (id_low, size_low) = low.orbits();
    let phi = nm / p * (p - 1);
    let factor = p.pow(2 * (a - m));
    for x in 0..top.size() {
        let Some(k) = id_top[x as usize] else { continue };
        let img = (x / na % nm) * nm + (x % na) % nm;
        let kl = id_low[img as usize].expect("image has order p^m");
        if size_low[kl] > phi {
            out.hypothesis_points += 1;
            if size_top[k] != factor * size_low[kl] {
                out.violations += 1;
            }
        }
    }
    out.holds = out.violations == 0;
    Ok(out)
}

/// One row of the CM table: discriminant, p, m, genus of X1(p^m), least
/// degree of a CM point on X1(p^m), genus of X1(2p^m) when 2 is not inert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmLevelRow {
    pub disc: i64,
    pub p: u64,
    pub m: u32,
    pub genus_pm: u64,
    pub d_disc: u64,
    pub genus_2pm: Option<u64>,
}

const fn row(disc: i64, p: u64, m: u32, genus_pm: u64, d_disc: u64, genus_2pm: Option<u64>) -> CmLevelRow {
    CmLevelRow { disc, p, m, genus_pm, d_disc, genus_2pm }
}

pub const CM_LEVEL_DATA: [CmLevelRow; 10] = [
    row(-3, 3, 2, 0, 3, None),
    row(-7, 7, 1, 0, 3, Some(1)),
    row(-11, 11, 1, 1, 5, None),
    row(-12, 3, 1, 0, 1, Some(0)),
    row(-19, 19, 1, 7, 9, None),
    row(-27, 3, 3, 13, 9, None),
    row(-28, 7, 1, 0, 3, Some(1)),
    row(-43, 43, 1, 57, 21, None),
    row(-67, 67, 1, 155, 33, None),
    row(-163, 163, 1, 1027, 81, None),
];

pub fn cm_level_row(disc: i64) -> Option<CmLevelRow> {
    CM_LEVEL_DATA.iter().copied().find(|r| r.disc == disc)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelReduction {
    pub disc: i64,
    pub n: u64,
    pub p: u64,
    pub m: u32,
    pub two_inert: bool,
    pub reduced_level: u64,
}

/// An isolated odd-degree CM point on X1(N) maps to an isolated point on
/// X1(gcd(N, p^m)) when 2 is inert in the order, else on X1(gcd(N, 2p^m)).
pub fn cm_reduce_level(disc: i64, n: u64) -> Result<LevelReduction> {
    let order = QuadOrder::new(disc)?;
    let dk = order.field_disc();
    let p = (-dk) as u64;
    if !(is_prime_u64(p) && p % 4 == 3) {
        return Err(Error::Invalid(format!(
            "the field of discriminant {dk} is not Q(sqrt(-p)) with p = 3 mod 4"
        )));
    }
    let odd = if n % 2 == 0 { n / 2 } else { n };
    let mut k = odd;
    while k % p == 0 {
        k /= p;
    }
    if k != 1 || n == 0 || n % 4 == 0 {
        return Err(Error::Invalid(format!("N = {n} is not p^r or 2p^r for p = {p}")));
    }
    let row = cm_level_row(disc)
        .ok_or_else(|| Error::Invalid(format!("no tabulated m for discriminant {disc}")))?;
    let pm = p.pow(row.m);
    let two_inert = kronecker(disc, 2) == -1;
    let target = if two_inert { pm } else { 2 * pm };
    Ok(LevelReduction {
        disc,
        n,
        p,
        m: row.m,
        two_inert,
        reduced_level: gcd_u64(n, target),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(QuadOrder::new(-12).unwrap().conductor(), (2, -3));
        assert_eq!(QuadOrder::new(-27).unwrap().conductor(), (3, -3));
        assert_eq!(QuadOrder::new(-28).unwrap().conductor(), (2, -7));
        assert_eq!(QuadOrder::new(-16).unwrap().conductor(), (2, -4));
        assert_eq!(QuadOrder::new(-8).unwrap().conductor(), (1, -8));
        assert!(QuadOrder::new(-5).is_err());
        assert_eq!(QuadOrder::new(-3).unwrap().units().len(), 6);
        assert_eq!(QuadOrder::new(-4).unwrap().units().len(), 4);
        assert_eq!(QuadOrder::new(-43).unwrap().units().len(), 2);
    }

    #[test]
    fn unit_counts() {
        for d in [-3, -4, -7, -8, -11, -12, -43] {
            for n in [2, 3, 4, 5, 7, 9, 12, 25] {
                let m = CartanModule::new(QuadOrder::new(d).unwrap(), n).unwrap();
                assert_eq!(m.units().len() as u64, m.unit_count_formula(), "{d} {n}");
            }
        }
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(cartan_orbit_sizes(-43, 43).unwrap(), vec![42, 1806]);
        assert_eq!(cartan_orbit_sizes(-3, 3).unwrap(), vec![2, 6]);
        assert_eq!(reduced_orbit_sizes(-43, 43).unwrap(), vec![21, 903]);
        assert_eq!(reduced_orbit_sizes(-67, 67).unwrap()[0], 33);
        assert_eq!(reduced_orbit_sizes(-163, 163).unwrap()[0], 81);
        assert!(matches!(cartan_orbit_sizes(-3, 400), Err(Error::Infeasible(_))));
    }

    #[test]
    fn growth_law() {
        assert!(orbit_growth_law_check(-7, 7, 2, 1).unwrap().holds);
        let c = orbit_growth_law_check(-7, 3, 2, 1).unwrap();
        assert!(c.holds && c.hypothesis_points > 0);
        // 3 splits in Q(sqrt(-11))
        assert!(orbit_growth_law_check(-11, 3, 2, 1).is_err());
        assert!(orbit_growth_law_check(-7, 7, 1, 1).unwrap().holds);
        assert!(orbit_growth_law_check(-7, 2, 2, 1).is_err());
        assert!(orbit_growth_law_check(-7, 11, 2, 1).is_err());
    }

    #[test]
    fn level_reduction() {
        assert_eq!(cm_reduce_level(-43, 43 * 43).unwrap().reduced_level, 43);
        assert_eq!(cm_reduce_level(-7, 98).unwrap().reduced_level, 14);
        assert_eq!(cm_reduce_level(-11, 22).unwrap().reduced_level, 11);
        assert_eq!(cm_reduce_level(-27, 2 * 243).unwrap().reduced_level, 27);
        assert!(cm_reduce_level(-4, 4).is_err());
        assert!(cm_reduce_level(-7, 21).is_err());
        assert!(cm_reduce_level(-7, 28).is_err());
    }
}
