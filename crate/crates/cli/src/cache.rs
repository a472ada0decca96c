//! On-disk cache of primitive division polynomials, keyed by the short model
//! and the level. Enabled by setting `ODDPTS_CACHE_DIR`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use oddpts_core::arith::IntPoly;
use oddpts_core::elliptic::{x1_degrees_from_poly, DivisionPolySet, EllipticCurveQ, Weber, X1Degrees};
use oddpts_core::Result;

pub const CACHE_ENV: &str = "ODDPTS_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    a: String,
    b: String,
    n: usize,
    coeffs: Vec<String>,
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn path_for(dir: &std::path::Path, a: &BigInt, b: &BigInt, n: usize) -> PathBuf {
    let mut h = DefaultHasher::new();
    (a.to_string(), b.to_string()).hash(&mut h);
    dir.join(format!("lambda-{n}-{:016x}.json", h.finish()))
}

fn load(a: &BigInt, b: &BigInt, n: usize) -> Option<IntPoly> {
    let dir = cache_dir()?;
    let text = std::fs::read_to_string(path_for(&dir, a, b, n)).ok()?;
    let e: Entry = serde_json::from_str(&text).ok()?;
    if e.a != a.to_string() || e.b != b.to_string() || e.n != n {
        return None;
    }
    let c = e.coeffs.iter().map(|s| s.parse::<BigInt>().ok()).collect::<Option<Vec<_>>>()?;
    Some(IntPoly::new(c))
}

fn store(a: &BigInt, b: &BigInt, n: usize, lam: &IntPoly) {
    let Some(dir) = cache_dir() else { return };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let e = Entry {
        a: a.to_string(),
        b: b.to_string(),
        n,
        coeffs: lam.coeffs().iter().map(|c| c.to_string()).collect(),
    };
    // a failed write only costs a recomputation next time
    let tmp = path_for(&dir, a, b, n).with_extension("tmp");
    if std::fs::write(&tmp, serde_json::to_string(&e).unwrap()).is_ok() {
        let _ = std::fs::rename(&tmp, path_for(&dir, a, b, n));
    }
}

/// The primitive N-division polynomial of the short model of `e`, read from
/// or written to the cache when one is configured.
pub fn primitive_lambda(e: &EllipticCurveQ, n: usize) -> (Weber, IntPoly) {
    let (a, b) = e.short_twist_model();
    let weber = if a.is_zero() {
        Weber::X3
    } else if b.is_zero() {
        Weber::X2
    } else {
        Weber::X
    };
    if let Some(lam) = load(&a, &b, n) {
        return (weber, lam);
    }
    let lam = DivisionPolySet::short_int(&a, &b).primitive(n);
    store(&a, &b, n, &lam);
    (weber, lam)
}

/// `x1_point_degrees` going through the cache.
pub fn x1_degrees(e: &EllipticCurveQ, n: usize, cap: Option<usize>) -> Result<X1Degrees> {
    if n < 2 {
        return Err(oddpts_core::Error::Invalid(format!("level {n} < 2")));
    }
    let (weber, lam) = primitive_lambda(e, n);
    x1_degrees_from_poly(&lam, weber, n, cap)
}
