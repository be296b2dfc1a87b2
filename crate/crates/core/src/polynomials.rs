//! Integer Laurent polynomials in one variable t.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

mod factor;
mod roots;

pub use factor::{factor_over_z, Factorization};
pub use roots::{unit_circle_roots, z_polynomial, z_sign, UnitCircleRoot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an Alexander polynomial: {0}")]
    NotAlexander(String),
    #[error("degree {0} exceeds the factorization cap")]
    DegreeCap(usize),
    #[error("{0} is even")]
    EvenDeterminant(u64),
    #[error("zero polynomial")]
    Zero,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Coefficients listed from exponent `low` upwards.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(low: i64, cs: &[T]) -> Self {
        let mut p = Self::zero();
        for (i, c) in cs.iter().enumerate() {
            p.add_term(low + i as i64, c.clone().into());
        }
        p
    }

    /// t - 2 + t^{-1}
    pub fn z_squared() -> Self {
        Self::from_coeffs(-1, &[1, -2, 1])
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Width of the exponent range (the breadth).
    pub fn span(&self) -> i64 {
        match (self.min_deg(), self.max_deg()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// p(1/t)
    pub fn reciprocal(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// p(t^k)
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.coeffs {
            p.add_term(*e, c * k);
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&BigRational::from_integer(t.into()))
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            acc += BigRational::from_integer(c.clone()) * pow_rat(t, *e);
        }
        acc
    }

    /// p(t) = p(1/t)
    pub fn is_symmetric(&self) -> bool {
        *self == self.reciprocal()
    }

    /// Dense coefficients from the minimal exponent.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        let Some(lo) = self.min_deg() else {
            return (0, vec![]);
        };
        let hi = self.max_deg().unwrap();
        (lo, (lo..=hi).map(|e| self.coeff(e)).collect())
    }

    /// Content (positive gcd of coefficients).
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Equal up to multiplication by ±t^k.
    pub fn equals_up_to_units(&self, other: &LaurentPoly) -> bool {
        match (self.min_deg(), other.min_deg()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let x = self.shift(-a);
                let y = other.shift(-b);
                x == y || x == -&y
            }
            _ => false,
        }
    }
}

fn pow_rat(t: &BigRational, e: i64) -> BigRational {
    let mut r = BigRational::one();
    let base = if e < 0 { t.recip() } else { t.clone() };
    for _ in 0..e.unsigned_abs() {
        r *= &base;
    }
    r
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.coeffs {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.coeffs {
            p.add_term(*e, -c);
        }
        p
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    /// Coefficient list with the absolute term bracketed, e.g. "(1 [-1] 0 -1)".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.min_deg().unwrap_or(0).min(0);
        let hi = self.max_deg().unwrap_or(0).max(0);
        write!(f, "(")?;
        for e in lo..=hi {
            if e > lo {
                write!(f, " ")?;
            }
            if e == 0 {
                write!(f, "[{}]", self.coeff(0))?;
            } else {
                write!(f, "{}", self.coeff(e))?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Parses "(1 [-1] 0 -1)". Without a bracket the first entry is the absolute term.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim().replace('−', "-");
        let body = s
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| PolyError::Parse(format!("expected parenthesized list: {s:?}")))?;
        let mut coeffs = Vec::new();
        let mut zero_at = None;
        for tok in body.split_whitespace() {
            let (tok, bracketed) = match tok.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
                Some(inner) => (inner, true),
                None => (tok, false),
            };
            if bracketed {
                if zero_at.is_some() {
                    return Err(PolyError::Parse("more than one bracketed term".into()));
                }
                zero_at = Some(coeffs.len());
            }
            let c: BigInt = tok
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient {tok:?}")))?;
            coeffs.push(c);
        }
        let low = -(zero_at.unwrap_or(0) as i64);
        Ok(LaurentPoly::from_coeffs(low, &coeffs))
    }
}

/// Symmetric representative with p(1) = 1.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    let (Some(lo), Some(hi)) = (p.min_deg(), p.max_deg()) else {
        return Err(PolyError::NotAlexander("zero polynomial".into()));
    };
    let at_one = p.eval_int(1);
    let sign = if at_one == BigRational::one() {
        BigInt::one()
    } else if at_one == -BigRational::one() {
        -BigInt::one()
    } else {
        return Err(PolyError::NotAlexander(format!("value {at_one} at t = 1")));
    };
    if (lo + hi) % 2 != 0 {
        return Err(PolyError::NotAlexander("odd span".into()));
    }
    let q = p.shift(-(lo + hi) / 2).scale(&sign);
    if !q.is_symmetric() {
        return Err(PolyError::NotAlexander("not symmetric".into()));
    }
    Ok(q)
}

/// |p(-1)|
pub fn determinant_of(p: &LaurentPoly) -> BigInt {
    p.eval_int(-1).to_integer().abs()
}

/// Some f ∈ Z[t] with f(t)·f(1/t) ≐ Δ, if one exists.
pub fn milnor_fox(delta: &LaurentPoly) -> Result<Option<LaurentPoly>, PolyError> {
    if delta.is_zero() {
        return Err(PolyError::Zero);
    }
    let det = determinant_of(delta);
    let root = det.sqrt();
    if &root * &root != det {
        return Ok(None);
    }
    let fac = factor_over_z(delta)?;
    if !fac.content.abs().is_one() {
        return Ok(None);
    }
    let mut f = LaurentPoly::one();
    let mut used = vec![false; fac.factors.len()];
    for i in 0..fac.factors.len() {
        if used[i] {
            continue;
        }
        let (g, m) = &fac.factors[i];
        let gs = factor::reciprocal_normalized(g);
        if &gs == g {
            if m % 2 == 1 {
                return Ok(None);
            }
            f = &f * &g.pow(m / 2);
            used[i] = true;
            continue;
        }
        let Some(j) =
            (0..fac.factors.len()).find(|&j| !used[j] && j != i && fac.factors[j].0 == gs)
        else {
            return Ok(None);
        };
        let mj = fac.factors[j].1;
        if mj != *m {
            return Ok(None);
        }
        f = &(&f * &g.pow((m + 1) / 2)) * &gs.pow(m / 2);
        used[i] = true;
        used[j] = true;
    }
    if f.eval_int(1) < BigRational::zero() {
        f = -&f;
    }
    let f = f.shift(-f.min_deg().unwrap_or(0));
    if determinant_of(&f) != root {
        return Ok(None);
    }
    let check = normalize_alexander(&(&f * &f.reciprocal()))?;
    if check.equals_up_to_units(delta) {
        Ok(Some(f))
    } else {
        Ok(None)
    }
}

/// Alexander polynomial Δ(t) = ∇(t^{1/2} - t^{-1/2}) from Conway coefficients cₖ of z^{2k}.
pub fn conway_to_alexander(c: &[BigInt]) -> LaurentPoly {
    let z2 = LaurentPoly::z_squared();
    let mut acc = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    for ck in c {
        acc = &acc + &power.scale(ck);
        power = &power * &z2;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Base4Realization {
    pub d: u64,
    /// Coefficients of z^{2k} in the Conway polynomial.
    pub conway: Vec<i64>,
    pub alexander: LaurentPoly,
    pub has_unit_circle_roots: bool,
}

fn base4_digits(mut n: u64) -> Vec<i64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % 4) as i64);
        n /= 4;
    }
    out
}

/// Alexander polynomial with |Δ(-1)| = d built from the base-4 digits of d
/// (Δ(-1) = d when d ≡ 1 mod 4, and -d when d ≡ 3 mod 4).
pub fn base4_conway(d: u64) -> Result<Vec<i64>, PolyError> {
    if d % 2 == 0 {
        return Err(PolyError::EvenDeterminant(d));
    }
    let conway: Vec<i64> = if d % 4 == 1 {
        base4_digits(d)
            .iter()
            .enumerate()
            .map(|(i, &e)| if i % 2 == 0 { e } else { -e })
            .collect()
    } else {
        let tail = base4_digits((d + 1) / 4);
        std::iter::once(1)
            .chain(
                tail.iter()
                    .enumerate()
                    .map(|(j, &f)| if j % 2 == 0 { f } else { -f }),
            )
            .collect()
    };
    Ok(conway)
}

pub fn base4_realization(d: u64) -> Result<Base4Realization, PolyError> {
    let conway = base4_conway(d)?;
    let big: Vec<BigInt> = conway.iter().map(|&c| BigInt::from(c)).collect();
    let alexander = conway_to_alexander(&big);
    let has_unit_circle_roots = !unit_circle_roots(&alexander)?.is_empty();
    Ok(Base4Realization {
        d,
        conway,
        alexander,
        has_unit_circle_roots,
    })
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "(1 [-1] 0 -1)",
            "([1])",
            "(4 -16 [25] -16 4)",
            "([0] -1 1)",
            "(1 -2 0 [0])",
        ] {
            assert_eq!(lp(s).to_string(), s);
        }
        assert_eq!(lp("(1 [−1] 0 −1)"), lp("(1 [-1] 0 -1)"));
        assert_eq!(lp("(1 2)"), LaurentPoly::from_coeffs(0, &[1, 2]));
        assert!("1 2".parse::<LaurentPoly>().is_err());
        assert!("([1] [2])".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(
            normalize_alexander(&LaurentPoly::one()).unwrap(),
            LaurentPoly::one()
        );
        assert!(normalize_alexander(&LaurentPoly::from_coeffs(1, &[-1, 1])).is_err());
        let p = LaurentPoly::from_coeffs(1, &[-1, 1, -1]);
        assert_eq!(normalize_alexander(&p).unwrap(), lp("(1 [-1] 1)"));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant_of(&LaurentPoly::one()), BigInt::from(1));
        assert_eq!(determinant_of(&lp("(1 [-1] 1)")), BigInt::from(3));
        assert_eq!(
            determinant_of(&lp("(1 -8 32 -82 152 -216 [243] -216 152 -82 32 -8 1)")),
            BigInt::from(1225)
        );
    }

    #[test]
    fn milnor_fox_examples() {
        let d = lp("(1 -8 32 -82 152 -216 [243] -216 152 -82 32 -8 1)");
        assert_eq!(milnor_fox(&d).unwrap(), Some(lp("([1] -4 8 -9 8 -4 1)")));
        assert_eq!(
            milnor_fox(&LaurentPoly::one()).unwrap(),
            Some(LaurentPoly::one())
        );
        assert_eq!(milnor_fox(&lp("(1 [-1] 1)")).unwrap(), None);
        let d = lp("(1 -10 43 -100 [133] -100 43 -10 1)");
        let f = milnor_fox(&d).unwrap().expect("factor exists");
        assert_eq!(normalize_alexander(&(&f * &f.reciprocal())).unwrap(), d);
        // 6_1: Δ = -2t + 5 - 2t^{-1} = (2 - t)(2 - t^{-1}) up to sign.
        let f = milnor_fox(&lp("(-2 [5] -2)")).unwrap().unwrap();
        assert!(f.equals_up_to_units(&lp("([2] -1)")) || f.equals_up_to_units(&lp("([1] -2)")));
    }

    #[test]
    fn base4_examples() {
        assert_eq!(base4_realization(1).unwrap().alexander, LaurentPoly::one());
        let r = base4_realization(5).unwrap();
        assert_eq!(r.conway, vec![1, -1]);
        assert_eq!(r.alexander, lp("(-1 [3] -1)"));
        let r = base4_realization(65).unwrap();
        assert_eq!(r.conway, vec![1, 0, 0, -1]);
        assert_eq!(
            r.alexander.eval_int(-1),
            BigRational::from_integer(65.into())
        );
        let r = base4_realization(3).unwrap();
        assert_eq!(
            r.alexander.eval_int(-1),
            BigRational::from_integer((-3).into())
        );
        assert_eq!(r.alexander.eval_int(1), BigRational::one());
        assert!(base4_realization(4).is_err());
    }
}
