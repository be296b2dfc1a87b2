//! The skein (HOMFLY) polynomial P(l, m) with l⁻¹P(L₊) + lP(L₋) = −mP(L₀) and
//! P(unknot) = 1, computed by resolving diagrams towards descending ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{remove_crossing, Crossing, Diagram};
use crate::polynomials::{normalize_alexander, LaurentPoly};

/// Largest diagram `homfly` accepts.
pub const MAX_CROSSINGS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("{0} crossings exceed the limit of {MAX_CROSSINGS}")]
    TooManyCrossings(usize),
    #[error("zero polynomial")]
    Zero,
    #[error("not the skein polynomial of a knot: {0}")]
    NotKnot(String),
}

/// Laurent polynomial in l and m; keys are (l-exponent, m-exponent).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SkeinPoly {
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl SkeinPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(l: i64, m: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(l, m, c.into());
        p
    }

    pub fn add_term(&mut self, l: i64, m: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((l, m)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(l, m));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, l: i64, m: i64) -> BigInt {
        self.coeffs.get(&(l, m)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    /// c·l^a·m^b times self.
    pub fn times_monomial(&self, a: i64, b: i64, c: i64) -> Self {
        let c = BigInt::from(c);
        SkeinPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(l, m), v)| ((l + a, m + b), v * &c))
                .collect(),
        }
    }

    pub fn add(&self, other: &SkeinPoly) -> Self {
        let mut out = self.clone();
        for (&(l, m), c) in &other.coeffs {
            out.add_term(l, m, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SkeinPoly) -> Self {
        let mut out = SkeinPoly::zero();
        for (&(l1, m1), c1) in &self.coeffs {
            for (&(l2, m2), c2) in &other.coeffs {
                out.add_term(l1 + l2, m1 + m2, c1 * c2);
            }
        }
        out
    }

    /// l ↔ l⁻¹, the effect of mirroring.
    pub fn mirror_l(&self) -> Self {
        SkeinPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(l, m), v)| ((-l, m), v.clone()))
                .collect(),
        }
    }

    /// Value on the k-component unlink: (−(l + l⁻¹)/m)^{k−1}.
    pub fn unlink(k: usize) -> Self {
        let delta = SkeinPoly::monomial(1, -1, -1).add(&SkeinPoly::monomial(-1, -1, -1));
        (1..k).fold(SkeinPoly::one(), |p, _| p.mul(&delta))
    }
}

impl fmt::Display for SkeinPoly {
    /// Terms ordered by m-degree, then l-degree, e.g. "-2l^2 - l^4 + l^2m^2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(i64, i64)> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(l, m)| (m, l));
        for (i, (l, m)) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&(l, m)];
            let neg = c.sign() == num_bigint::Sign::Minus;
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut mono = String::new();
            for (v, e) in [("l", l), ("m", m)] {
                match e {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&format!("{v}^{e}")),
                }
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SkeinPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

type Key = (Vec<Crossing>, usize);

/// Memo table shared across evaluations. Entries depend only on their key, so
/// concurrent use cannot change results.
#[derive(Default)]
pub struct HomflyCache {
    map: Mutex<HashMap<Key, SkeinPoly>>,
}

impl HomflyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, k: &Key) -> Option<SkeinPoly> {
        self.map.lock().unwrap().get(k).cloned()
    }

    fn insert(&self, k: Key, p: SkeinPoly) -> SkeinPoly {
        self.map.lock().unwrap().entry(k).or_insert(p).clone()
    }
}

pub fn homfly(d: &Diagram) -> Result<SkeinPoly, SkeinError> {
    homfly_cached(d, &HomflyCache::new())
}

pub fn homfly_cached(d: &Diagram, cache: &HomflyCache) -> Result<SkeinPoly, SkeinError> {
    if d.crossing_count() > MAX_CROSSINGS {
        return Err(SkeinError::TooManyCrossings(d.crossing_count()));
    }
    Ok(resolve(normalize(d), cache))
}

/// Strip kinks and relabel; basepoints are the smallest labels of each component.
fn normalize(d: &Diagram) -> Diagram {
    let mut d = d.clone();
    'outer: loop {
        for (i, c) in d.crossings().iter().enumerate() {
            let e = c.edges;
            for k in 0..4 {
                if e[k] == e[(k + 1) % 4] {
                    let (a, b) = (e[(k + 2) % 4], e[(k + 3) % 4]);
                    let pair = if c.is_incoming((k + 2) % 4) {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    d = remove_crossing(&d, i, &[pair]);
                    continue 'outer;
                }
            }
        }
        break;
    }
    d.relabeled()
}

/// First crossing met as an under-strand before being met as an over-strand.
fn first_ascending(d: &Diagram) -> Option<usize> {
    let mut head = HashMap::new();
    for (i, c) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            if c.is_incoming(s) {
                head.insert(c.edges[s], (i, s));
            }
        }
    }
    let mut seen = vec![false; d.crossing_count()];
    for comp in d.component_edges() {
        for e in comp {
            let (c, s) = head[&e];
            if !seen[c] {
                if s == 0 {
                    return Some(c);
                }
                seen[c] = true;
            }
        }
    }
    None
}

fn key_of(d: &Diagram) -> Key {
    let mut cs = d.crossings().to_vec();
    cs.sort_unstable();
    (cs, d.free_loops())
}

fn resolve(d: Diagram, cache: &HomflyCache) -> SkeinPoly {
    let key = key_of(&d);
    if let Some(p) = cache.get(&key) {
        return p;
    }
    let p = match first_ascending(&d) {
        None => SkeinPoly::unlink(d.component_count()),
        Some(c) => {
            let x = d.crossings()[c];
            let mut switched = d.crossings().to_vec();
            switched[c] = x.switched();
            let other = resolve(
                Diagram::from_parts_unchecked(switched, d.free_loops()),
                cache,
            );
            let e = x.edges;
            let smoothed = remove_crossing(
                &d,
                c,
                &[(e[0], e[x.over_out()]), (e[x.over_in as usize], e[2])],
            );
            let zero = resolve(normalize(&smoothed), cache);
            if x.sign() > 0 {
                // P(L₊) = −l²P(L₋) − lmP(L₀)
                other
                    .times_monomial(2, 0, -1)
                    .add(&zero.times_monomial(1, 1, -1))
            } else {
                // P(L₋) = −l⁻²P(L₊) − l⁻¹mP(L₀)
                other
                    .times_monomial(-2, 0, -1)
                    .add(&zero.times_monomial(-1, 1, -1))
            }
        }
    };
    cache.insert(key, p)
}

/// (mindeg_l, maxdeg_l)
pub fn l_span(p: &SkeinPoly) -> Result<(i64, i64), SkeinError> {
    let lo = p.coeffs.keys().map(|k| k.0).min().ok_or(SkeinError::Zero)?;
    let hi = p.coeffs.keys().map(|k| k.0).max().ok_or(SkeinError::Zero)?;
    Ok((lo, hi))
}

/// δ(P) = max(mindeg_l P, −maxdeg_l P)
pub fn delta_p(p: &SkeinPoly) -> Result<i64, SkeinError> {
    let (lo, hi) = l_span(p)?;
    Ok(lo.max(-hi))
}

/// Δ(t) = P(−i, i(t^{1/2} − t^{−1/2})), normalized.
pub fn alexander_from_homfly(p: &SkeinPoly) -> Result<LaurentPoly, SkeinError> {
    // c·l^a·m^b ↦ c·(−1)^a·i^{a+b}·(u − u⁻¹)^b with u = t^{1/2}.
    let mut out = LaurentPoly::zero();
    for ((a, b), c) in p.terms() {
        if (a + b) % 2 != 0 || b % 2 != 0 || b < 0 {
            return Err(SkeinError::NotKnot(format!("term l^{a}m^{b}")));
        }
        let sign = if a.rem_euclid(2) == 1 { -1 } else { 1 }
            * if (a + b).rem_euclid(4) == 2 { -1 } else { 1 };
        for j in 0..=b {
            let s = if j % 2 == 1 { -sign } else { sign };
            out.add_term(
                b / 2 - j,
                c * binomial(BigInt::from(b), BigInt::from(j)) * s,
            );
        }
    }
    normalize_alexander(&out).map_err(|e| SkeinError::NotKnot(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{mirror, parse_pd};

    const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(homfly(&Diagram::unknot()).unwrap(), SkeinPoly::one());
        let kink = parse_pd("X(1,2,2,1)").unwrap();
        assert_eq!(homfly(&kink).unwrap(), SkeinPoly::one());
        let two = Diagram::from_crossings(vec![], 2).unwrap();
        assert_eq!(homfly(&two).unwrap().to_string(), "-l^-1m^-1 - lm^-1");
    }

    #[test]
    fn trefoil_and_mirror() {
        let d = parse_pd(TREFOIL).unwrap();
        let p = homfly(&d).unwrap();
        assert_eq!(p.to_string(), "-2l^2 - l^4 + l^2m^2");
        assert_eq!(l_span(&p).unwrap(), (2, 4));
        assert_eq!(delta_p(&p).unwrap(), 2);
        assert_eq!(homfly(&mirror(&d)).unwrap(), p.mirror_l());
        assert_eq!(alexander_from_homfly(&p).unwrap().to_string(), "(1 [-1] 1)");
    }

    #[test]
    fn figure_eight() {
        let p = homfly(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap();
        assert_eq!(p.to_string(), "-l^-2 - 1 - l^2 + m^2");
        assert_eq!(delta_p(&p).unwrap(), -2);
        assert_eq!(
            alexander_from_homfly(&p).unwrap().to_string(),
            "(-1 [3] -1)"
        );
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(delta_p(&SkeinPoly::one()).unwrap(), 0);
        assert_eq!(l_span(&SkeinPoly::zero()), Err(SkeinError::Zero));
        let p = SkeinPoly::monomial(-4, 0, 1).add(&SkeinPoly::monomial(-2, 2, 1));
        assert_eq!(delta_p(&p).unwrap(), 2);
    }

    #[test]
    fn guard() {
        let d = crate::diagram::braid_closure(2, &[1; 21]).unwrap();
        assert_eq!(homfly(&d), Err(SkeinError::TooManyCrossings(21)));
    }
}
