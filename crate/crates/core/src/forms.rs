//! Linking forms on finite abelian groups of odd order.
//!
//! A form is stored against a list of generators gᵢ of order dᵢ; the pairing
//! λ(gᵢ, gⱼ) is kept as an integer numerator over the group exponent e = lcm(dᵢ).
//! Elements are coordinate vectors with entry i reduced mod dᵢ.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::numtheory::{
    factorize, is_perfect_square, is_quadratic_residue, isqrt, mod_inverse, sqrt_mod,
};

pub const DEFAULT_BOUND: u64 = 1_000_000;

/// Cap on the number of distinct subgroups held in one search layer.
const MAX_LAYER: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator order {0} is not odd")]
    EvenOrder(u64),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("pairing is not well defined on generator {0}")]
    IllDefined(usize),
    #[error("form is degenerate")]
    Degenerate,
    #[error("{a} is not a unit mod {d}")]
    NonUnit { a: i64, d: u64 },
    #[error("enumeration bound exceeded ({size} > {bound})")]
    BoundExceeded { size: u64, bound: u64 },
    #[error("criterion and brute force disagree")]
    CriterionMismatch,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("group order overflows 64 bits")]
    Overflow,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinkingForm {
    orders: Vec<u64>,
    exponent: u64,
    gram: Vec<Vec<u64>>,
}

pub type Element = Vec<u64>;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl LinkingForm {
    /// Build from numerators: λ(gᵢ, gⱼ) = gram[i][j] / exponent, exponent = lcm(orders).
    fn from_numerators(
        orders: Vec<u64>,
        gram: Vec<Vec<i128>>,
        denom: u64,
    ) -> Result<Self, FormError> {
        for &d in &orders {
            if d % 2 == 0 {
                return Err(FormError::EvenOrder(d));
            }
        }
        let k = orders.len();
        if gram.len() != k || gram.iter().any(|r| r.len() != k) {
            return Err(FormError::Parse("gram size does not match group".into()));
        }
        let e = orders.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let mut out = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in 0..k {
                // value = gram/denom; rescale to denominator e.
                let num = gram[i][j] * e as i128;
                if num % denom as i128 != 0 {
                    return Err(FormError::IllDefined(i.min(j)));
                }
                out[i][j] = (num / denom as i128).rem_euclid(e as i128) as u64;
            }
        }
        let f = LinkingForm {
            orders,
            exponent: e,
            gram: out,
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), FormError> {
        let k = self.orders.len();
        for i in 0..k {
            for j in 0..k {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(FormError::NotSymmetric);
                }
                if mulmod(self.orders[i], self.gram[i][j], self.exponent) != 0 {
                    return Err(FormError::IllDefined(i));
                }
            }
        }
        Ok(())
    }

    /// Build from exact rationals (reduced mod 1 here).
    pub fn from_rationals(orders: Vec<u64>, gram: &[Vec<BigRational>]) -> Result<Self, FormError> {
        let e = orders.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let eb = BigInt::from(e);
        let mut nums = Vec::new();
        for row in gram {
            let mut r = Vec::new();
            for v in row {
                let scaled = v * BigRational::from_integer(eb.clone());
                if !scaled.is_integer() {
                    return Err(FormError::IllDefined(0));
                }
                let n = scaled.to_integer().mod_floor(&eb);
                r.push(n.to_i128().ok_or(FormError::Overflow)?);
            }
            nums.push(r);
        }
        Self::from_numerators(orders, nums, e)
    }

    /// Build from fractions (numerator, denominator).
    pub fn from_fractions(orders: Vec<u64>, gram: &[Vec<(i64, u64)>]) -> Result<Self, FormError> {
        let rows: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                    .collect()
            })
            .collect();
        Self::from_rationals(orders, &rows)
    }

    pub fn trivial() -> Self {
        LinkingForm {
            orders: vec![],
            exponent: 1,
            gram: vec![],
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// |H|, or None on overflow.
    pub fn order(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |a, &d| a.checked_mul(d))
    }

    /// λ(gᵢ, gⱼ) as a reduced fraction (n, d) with 0 ≤ n < d.
    pub fn gram_entry(&self, i: usize, j: usize) -> (u64, u64) {
        reduce(self.gram[i][j], self.exponent)
    }

    /// Numerator of λ(x, y) over the exponent.
    pub fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        let e = self.exponent as u128;
        let mut acc: u128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row: u128 = 0;
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    row = (row + self.gram[i][j] as u128 * yj as u128) % e;
                }
            }
            acc = (acc + row * xi as u128) % e;
        }
        acc as u64
    }

    /// Numerator of λ(x, x).
    pub fn q(&self, x: &[u64]) -> u64 {
        self.pair(x, x)
    }

    pub fn value(&self, x: &[u64], y: &[u64]) -> (u64, u64) {
        reduce(self.pair(x, y), self.exponent)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(a, &d)| mulmod(k % d, *a, d))
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| (d - a) % d)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    pub fn normalize(&self, x: &[i64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| a.rem_euclid(d as i64) as u64)
            .collect()
    }

    /// Mixed-radix index of an element.
    pub fn index_of(&self, x: &[u64]) -> u64 {
        let mut idx = 0u64;
        for (a, d) in x.iter().zip(&self.orders).rev() {
            idx = idx * d + a;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> Element {
        self.orders
            .iter()
            .map(|&d| {
                let a = idx % d;
                idx /= d;
                a
            })
            .collect()
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.order().unwrap_or(0);
        (0..n).map(move |i| self.element_at(i))
    }

    fn check_bound(&self, bound: u64) -> Result<u64, FormError> {
        let n = self.order().ok_or(FormError::Overflow)?;
        if n > bound {
            return Err(FormError::BoundExceeded { size: n, bound });
        }
        Ok(n)
    }

    /// The form with every value negated (the form of the mirror image).
    pub fn negated(&self) -> Self {
        let e = self.exponent;
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&v| (e - v) % e).collect())
            .collect();
        LinkingForm {
            orders: self.orders.clone(),
            exponent: e,
            gram,
        }
    }

    /// Nondegeneracy: x ↦ λ(x, ·) is injective.
    pub fn is_nondegenerate(&self) -> bool {
        use crate::intlinalg::{smith_normal_form, IntMatrix};
        let k = self.rank();
        if k == 0 {
            return true;
        }
        let e = BigInt::from(self.exponent);
        let rows: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        // Index of {x : N x ≡ 0 mod e} in Zᵏ.
        let mut index = BigInt::from(1);
        for i in 0..k {
            let d = &snf.d[(i, i)];
            index *= &e / e.gcd(d);
        }
        self.order().map(BigInt::from) == Some(index)
    }

    fn require_nondegenerate(&self) -> Result<(), FormError> {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(FormError::Degenerate)
        }
    }
}

fn reduce(n: u64, d: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let g = n.gcd(&d);
    (n / g, d / g)
}

impl fmt::Display for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group: Vec<String> = self.orders.iter().map(|d| d.to_string()).collect();
        write!(f, "group=[{}] gram=[", group.join(","))?;
        for i in 0..self.rank() {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<String> = (0..self.rank())
                .map(|j| {
                    let (n, d) = self.gram_entry(i, j);
                    format!("{n}/{d}")
                })
                .collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LinkingForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for LinkingForm {
    type Err = FormError;

    fn from_str(text: &str) -> Result<Self, FormError> {
        let text = text.replace('−', "-");
        let err = |m: &str| FormError::Parse(m.to_string());
        let g = text.find("group=").ok_or_else(|| err("missing group="))?;
        let r = text.find("gram=").ok_or_else(|| err("missing gram="))?;
        let group_part = text[g + 6..].trim_start();
        let close = group_part
            .find(']')
            .ok_or_else(|| err("unterminated group list"))?;
        let inner = group_part
            .strip_prefix('[')
            .ok_or_else(|| err("group list must start with ["))?;
        let orders: Vec<u64> = inner[..close - 1]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| err(&format!("bad group order {s:?}")))
            })
            .collect::<Result<_, _>>()?;
        let gram_part = text[r + 5..].trim();
        let body = gram_part
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err("gram must be [[...],...]"))?;
        let mut rows: Vec<Vec<(i64, u64)>> = Vec::new();
        for chunk in body.split(']') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let chunk = chunk
                .strip_prefix('[')
                .ok_or_else(|| err("gram row must start with ["))?;
            let mut row = Vec::new();
            for entry in chunk.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (n, d) = match entry.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (entry, "1"),
                };
                let n: i64 = n
                    .parse()
                    .map_err(|_| err(&format!("bad numerator {n:?}")))?;
                let d: u64 = d
                    .parse()
                    .map_err(|_| err(&format!("bad denominator {d:?}")))?;
                if d == 0 {
                    return Err(err("zero denominator"));
                }
                row.push((n, d));
            }
            rows.push(row);
        }
        if rows.len() != orders.len() || rows.iter().any(|r| r.len() != orders.len()) {
            return Err(err("gram size does not match group"));
        }
        LinkingForm::from_fractions(orders, &rows)
    }
}

/// Form on Z_d with λ(g, g) = a/d.
pub fn cyclic_form(d: u64, a: i64) -> Result<LinkingForm, FormError> {
    if d % 2 == 0 {
        return Err(FormError::EvenOrder(d));
    }
    if d == 1 {
        return Ok(LinkingForm::trivial());
    }
    if a.gcd(&(d as i64)) != 1 {
        return Err(FormError::NonUnit { a, d });
    }
    LinkingForm::from_fractions(vec![d], &[vec![(a, d)]])
}

/// Block-diagonal sum on the product group.
pub fn direct_sum(f1: &LinkingForm, f2: &LinkingForm) -> LinkingForm {
    let e = f1.exponent.lcm(&f2.exponent);
    let (k1, k2) = (f1.rank(), f2.rank());
    let mut gram = vec![vec![0u64; k1 + k2]; k1 + k2];
    for i in 0..k1 {
        for j in 0..k1 {
            gram[i][j] = f1.gram[i][j] * (e / f1.exponent);
        }
    }
    for i in 0..k2 {
        for j in 0..k2 {
            gram[k1 + i][k1 + j] = f2.gram[i][j] * (e / f2.exponent);
        }
    }
    let orders = f1.orders.iter().chain(&f2.orders).copied().collect();
    LinkingForm {
        orders,
        exponent: e,
        gram,
    }
}

pub fn direct_sum_all<'a>(forms: impl IntoIterator<Item = &'a LinkingForm>) -> LinkingForm {
    forms
        .into_iter()
        .fold(LinkingForm::trivial(), |acc, f| direct_sum(&acc, f))
}

/// A p-primary component with its inclusion into the ambient group.
#[derive(Debug, Clone)]
pub struct PrimaryComponent {
    pub p: u64,
    pub form: LinkingForm,
    /// For component generator i: (ambient generator index, multiplier).
    embed: Vec<(usize, u64)>,
    ambient_orders: Vec<u64>,
}

impl PrimaryComponent {
    /// Image of a component element in ambient coordinates.
    pub fn embed(&self, y: &[u64]) -> Element {
        let mut x = vec![0u64; self.ambient_orders.len()];
        for (&(idx, m), &yi) in self.embed.iter().zip(y) {
            let d = self.ambient_orders[idx];
            x[idx] = (x[idx] + mulmod(yi, m, d)) % d;
        }
        x
    }
}

pub fn p_primary_component(f: &LinkingForm, p: u64) -> PrimaryComponent {
    let mut embed = Vec::new();
    let mut orders = Vec::new();
    for (i, &d) in f.orders.iter().enumerate() {
        let mut pp = 1u64;
        while d % (pp * p) == 0 {
            pp *= p;
        }
        if pp > 1 {
            embed.push((i, d / pp));
            orders.push(pp);
        }
    }
    let e = orders.iter().fold(1u64, |a, &d| a.lcm(&d));
    let k = orders.len();
    let mut gram = vec![vec![0u64; k]; k];
    for a in 0..k {
        for b in 0..k {
            let (i, mi) = embed[a];
            let (j, mj) = embed[b];
            let num = mulmod(mulmod(f.gram[i][j], mi, f.exponent), mj, f.exponent);
            // num / f.exponent has denominator dividing e.
            gram[a][b] = ((num as u128 * e as u128 / f.exponent as u128) % e as u128) as u64;
        }
    }
    PrimaryComponent {
        p,
        form: LinkingForm {
            orders,
            exponent: e,
            gram,
        },
        embed,
        ambient_orders: f.orders.clone(),
    }
}

/// Restriction of f to its p-primary component.
pub fn p_primary(f: &LinkingForm, p: u64) -> LinkingForm {
    p_primary_component(f, p).form
}

/// Primes dividing |H|, increasing.
pub fn primes_of(f: &LinkingForm) -> Vec<u64> {
    let mut ps: Vec<u64> = f
        .orders
        .iter()
        .flat_map(|&d| factorize(d).into_iter().map(|(p, _)| p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

pub fn primary_components(f: &LinkingForm) -> Vec<PrimaryComponent> {
    primes_of(f)
        .into_iter()
        .map(|p| p_primary_component(f, p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub size: u64,
    pub elements: Option<Vec<Element>>,
}

fn cone_of_component(f: &LinkingForm) -> Vec<Element> {
    f.elements().filter(|x| f.q(x) == 0).collect()
}

/// The isotropic cone Λ₀ = {g : λ(g, g) = 0}.
pub fn isotropic_cone(f: &LinkingForm, bound: u64, want_elements: bool) -> Result<Cone, FormError> {
    f.check_bound(bound)?;
    let comps = primary_components(f);
    let cones: Vec<Vec<Element>> = comps.iter().map(|c| cone_of_component(&c.form)).collect();
    let size = cones.iter().map(|c| c.len() as u64).product();
    let elements = want_elements.then(|| {
        let mut all = vec![f.zero()];
        for (comp, cone) in comps.iter().zip(&cones) {
            let mut next = Vec::with_capacity(all.len() * cone.len());
            for x in &all {
                for y in cone {
                    next.push(f.add(x, &comp.embed(y)));
                }
            }
            all = next;
        }
        all.sort_by_key(|x| f.index_of(x));
        all
    });
    Ok(Cone { size, elements })
}

/// Brute-force test Λ₀ = {0}, stopping at the first nonzero cone element.
pub fn cone_is_trivial(f: &LinkingForm, bound: u64) -> Result<bool, FormError> {
    let n = f.check_bound(bound)?;
    Ok((1..n).all(|i| f.q(&f.element_at(i)) != 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    pub generators: Vec<Element>,
    pub order: u64,
}

impl Subgroup {
    /// The subgroup generated by `gens`, with its order computed by closure.
    pub fn generated(f: &LinkingForm, gens: Vec<Element>) -> Subgroup {
        let order = closure(f, &gens).len() as u64;
        Subgroup {
            generators: gens,
            order,
        }
    }

    pub fn elements(&self, f: &LinkingForm) -> Vec<Element> {
        let mut v: Vec<Element> = closure(f, &self.generators).into_iter().collect();
        v.sort_by_key(|x| f.index_of(x));
        v
    }

    pub fn contains(&self, f: &LinkingForm, x: &[u64]) -> bool {
        closure(f, &self.generators).contains(x)
    }
}

fn closure(f: &LinkingForm, gens: &[Element]) -> HashSet<Element> {
    let mut set: HashSet<Element> = HashSet::from([f.zero()]);
    for g in gens {
        if set.contains(g) {
            continue;
        }
        let ord = f.element_order(g);
        let current: Vec<Element> = set.iter().cloned().collect();
        let mut m = g.clone();
        for _ in 1..ord {
            for s in &current {
                set.insert(f.add(s, &m));
            }
            m = f.add(&m, g);
        }
    }
    set
}

/// G⊥ = {x : λ(x, g) = 0 for all g ∈ G}.
pub fn annihilator(f: &LinkingForm, g: &Subgroup, bound: u64) -> Result<Subgroup, FormError> {
    f.require_nondegenerate()?;
    f.check_bound(bound)?;
    let members: Vec<Element> = f
        .elements()
        .filter(|x| g.generators.iter().all(|h| f.pair(x, h) == 0))
        .collect();
    Ok(Subgroup {
        order: members.len() as u64,
        generators: minimal_generators(f, members),
    })
}

/// A small generating set for a subgroup given by its element list.
fn minimal_generators(f: &LinkingForm, mut members: Vec<Element>) -> Vec<Element> {
    members.sort_by_key(|x| (std::cmp::Reverse(f.element_order(x)), f.index_of(x)));
    let target = members.len();
    let mut gens = Vec::new();
    let mut span = HashSet::from([f.zero()]);
    for x in members {
        if span.len() == target {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = closure(f, &gens);
        }
    }
    gens
}

/// Isotropic subgroups of a p-group form, searched layer by layer (each layer
/// multiplies the order by p). Returns the largest found and whether `target` was hit.
fn isotropic_search(
    f: &LinkingForm,
    p: u64,
    target: Option<u64>,
) -> Result<Vec<Element>, FormError> {
    let cone: Vec<Element> = cone_of_component(f);
    let mut layer: Vec<(Vec<Element>, Vec<u64>)> = vec![(vec![], vec![0])];
    let mut best: Vec<Element> = vec![];
    let mut order = 1u64;
    loop {
        if target == Some(order) {
            return Ok(best);
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        for (gens, members) in &layer {
            let member_set: HashSet<u64> = members.iter().copied().collect();
            for x in &cone {
                let ix = f.index_of(x);
                if member_set.contains(&ix) {
                    continue;
                }
                if !member_set.contains(&f.index_of(&f.scale(p, x))) {
                    continue;
                }
                if gens.iter().any(|g| f.pair(g, x) != 0) {
                    continue;
                }
                let mut new_members = Vec::with_capacity(members.len() * p as usize);
                let mut m = f.zero();
                for _ in 0..p {
                    for &s in members {
                        new_members.push(f.index_of(&f.add(&f.element_at(s), &m)));
                    }
                    m = f.add(&m, x);
                }
                new_members.sort_unstable();
                if seen.insert(new_members.clone()) {
                    let mut g2 = gens.clone();
                    g2.push(x.clone());
                    next.push((g2, new_members));
                    if next.len() > MAX_LAYER {
                        return Err(FormError::BoundExceeded {
                            size: next.len() as u64,
                            bound: MAX_LAYER as u64,
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            return Ok(if target.is_some() { vec![] } else { best });
        }
        order *= p;
        best = next[0].0.clone();
        layer = next;
        if target.is_some_and(|t| order > t) {
            return Ok(vec![]);
        }
    }
}

/// A metabolizer M (|M|² = |H|, M = M⊥), if one exists.
pub fn find_metabolizer(f: &LinkingForm, bound: u64) -> Result<Option<Subgroup>, FormError> {
    f.require_nondegenerate()?;
    let n = f.check_bound(bound)?;
    if !is_perfect_square(n) {
        return Ok(None);
    }
    let mut gens = Vec::new();
    for comp in primary_components(f) {
        let size = comp.form.order().ok_or(FormError::Overflow)?;
        if !is_perfect_square(size) {
            return Ok(None);
        }
        let target = isqrt(size);
        let found = isotropic_search(&comp.form, comp.p, Some(target))?;
        if found.is_empty() && target > 1 {
            return Ok(None);
        }
        gens.extend(found.iter().map(|y| comp.embed(y)));
    }
    Ok(Some(Subgroup {
        order: isqrt(n),
        generators: gens,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem1Case {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "has-metabolizer")]
    HasMetabolizer,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl fmt::Display for Theorem1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem1Case::A => "a",
            Theorem1Case::B => "b",
            Theorem1Case::C => "c",
            Theorem1Case::HasMetabolizer => "has-metabolizer",
            Theorem1Case::NotApplicable => "not-applicable",
        })
    }
}

pub fn classify_case(group_order: u64, cone_size: u64, largest_subgroup: u64) -> Theorem1Case {
    if !is_perfect_square(group_order) {
        return Theorem1Case::NotApplicable;
    }
    let root = isqrt(group_order);
    if largest_subgroup >= root {
        Theorem1Case::HasMetabolizer
    } else if cone_size == 1 {
        Theorem1Case::A
    } else if cone_size < root {
        Theorem1Case::B
    } else {
        Theorem1Case::C
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargestConeSubgroup {
    pub order: u64,
    pub witness: Subgroup,
    pub cone_size: u64,
    pub case: Theorem1Case,
}

/// Largest subgroup contained in Λ₀, with the resulting case.
pub fn largest_cone_subgroup(
    f: &LinkingForm,
    bound: u64,
) -> Result<LargestConeSubgroup, FormError> {
    let n = f.check_bound(bound)?;
    let mut gens = Vec::new();
    let mut order = 1u64;
    let mut cone_size = 1u64;
    for comp in primary_components(f) {
        cone_size *= cone_of_component(&comp.form).len() as u64;
        let found = isotropic_search(&comp.form, comp.p, None)?;
        order *= comp.p.pow(found.len() as u32);
        gens.extend(found.iter().map(|y| comp.embed(y)));
    }
    Ok(LargestConeSubgroup {
        order,
        witness: Subgroup {
            generators: gens,
            order,
        },
        cone_size,
        case: classify_case(n, cone_size, order),
    })
}

/// Diagonalize a symmetric matrix over F_p; returns (diagonal, basis rows).
fn diagonalize_mod_p(mut b: Vec<Vec<u64>>, p: u64) -> (Vec<u64>, Vec<Vec<u64>>) {
    let n = b.len();
    let mut basis: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let pi = p as i64;
    for k in 0..n {
        if b[k][k] == 0 {
            if let Some(i) = (k + 1..n).find(|&i| b[i][i] != 0) {
                b.swap(k, i);
                for r in b.iter_mut() {
                    r.swap(k, i);
                }
                basis.swap(k, i);
            } else if let Some(j) = (k + 1..n).find(|&j| b[k][j] != 0) {
                // e_k += e_j makes the diagonal 2·b_kj.
                for r in 0..n {
                    b[r][k] = (b[r][k] + b[r][j]) % p;
                }
                for c in 0..n {
                    b[k][c] = (b[k][c] + b[j][c]) % p;
                }
                for c in 0..n {
                    basis[k][c] = (basis[k][c] + basis[j][c]) % p;
                }
            } else {
                continue;
            }
        }
        let inv = mod_inverse(b[k][k] as i64, pi).unwrap() as u64;
        for i in k + 1..n {
            if b[i][k] == 0 {
                continue;
            }
            let c = mulmod(b[i][k], inv, p);
            // e_i -= c e_k, applied as a congruence.
            for r in 0..n {
                b[r][i] = (b[r][i] + p - mulmod(c, b[r][k], p)) % p;
            }
            for col in 0..n {
                b[i][col] = (b[i][col] + p - mulmod(c, b[k][col], p)) % p;
            }
            for col in 0..n {
                basis[i][col] = (basis[i][col] + p - mulmod(c, basis[k][col], p)) % p;
            }
        }
    }
    ((0..n).map(|i| b[i][i]).collect(), basis)
}

/// Solve a·x² + b·y² ≡ -c (mod p) for units a, b.
fn solve_conic(a: u64, b: u64, c: u64, p: u64) -> Option<(u64, u64)> {
    let pi = p as i64;
    let b_inv = mod_inverse(b as i64, pi)?;
    for x in 0..p {
        let rhs = (pi - (c as i64 + mulmod(a, mulmod(x, x, p), p) as i64) % pi) % pi;
        let t = (rhs * b_inv).rem_euclid(pi);
        if let Some(y) = sqrt_mod(t, p) {
            return Some((x, y));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeBlock {
    pub p: u64,
    /// Basis of the p-primary component in ambient coordinates.
    pub basis: Vec<Element>,
    /// For rank-2 blocks, the non-residue β with λ = (e₁² + β e₂²)/p.
    pub beta: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TrivialConeVerdict {
    Inapplicable {
        prime: u64,
    },
    Trivial {
        q_prime: u64,
        q: u64,
        blocks: Vec<PrimeBlock>,
    },
    Nontrivial {
        witness: Element,
    },
}

/// Trivial-cone classification for forms without 4k+3 torsion: Λ₀ = {0} iff
/// H = Z_{q'} ⊕ Z_q with q | q' squarefree and each rank-2 block ≅ e₁² + βe₂², β a non-residue.
pub fn trivial_cone_classify(f: &LinkingForm) -> TrivialConeVerdict {
    let primes = primes_of(f);
    if let Some(&p) = primes.iter().find(|&&p| p % 4 == 3) {
        return TrivialConeVerdict::Inapplicable { prime: p };
    }
    let mut q_prime = 1;
    let mut q = 1;
    let mut blocks = Vec::new();
    for p in primes {
        let comp = p_primary_component(f, p);
        let g = &comp.form;
        // A cyclic factor of order p^v, v ≥ 2, gives the witness p^{v-1}·h.
        if let Some(i) = g.orders.iter().position(|&d| d > p) {
            let mut y = g.zero();
            y[i] = g.orders[i] / p;
            return TrivialConeVerdict::Nontrivial {
                witness: comp.embed(&y),
            };
        }
        let k = g.rank();
        // Elementary abelian: λ = B/p with B symmetric over F_p.
        let bmat: Vec<Vec<u64>> = g.gram.clone();
        let (diag, basis) = diagonalize_mod_p(bmat, p);
        let vec_of = |coeffs: &[u64]| -> Element {
            let mut y = vec![0u64; k];
            for (c, row) in coeffs.iter().zip(&basis) {
                for (t, &r) in y.iter_mut().zip(row) {
                    *t = (*t + mulmod(*c, r, p)) % p;
                }
            }
            y
        };
        let unit = |i: usize| -> Vec<u64> { (0..k).map(|j| u64::from(i == j)).collect() };
        if let Some(i) = diag.iter().position(|&a| a == 0) {
            return TrivialConeVerdict::Nontrivial {
                witness: comp.embed(&vec_of(&unit(i))),
            };
        }
        match k {
            1 => {
                q_prime *= p;
                blocks.push(PrimeBlock {
                    p,
                    basis: vec![comp.embed(&vec_of(&unit(0)))],
                    beta: None,
                });
            }
            2 => {
                let (a1, a2) = (diag[0], diag[1]);
                let ratio = mulmod(p - a2, mod_inverse(a1 as i64, p as i64).unwrap() as u64, p);
                if let Some(x) = sqrt_mod(ratio as i64, p) {
                    return TrivialConeVerdict::Nontrivial {
                        witness: comp.embed(&vec_of(&[x, 1])),
                    };
                }
                // Exactly one of a1, a2 is a square; scale it to 1.
                let (sq, other, order) = if is_quadratic_residue(a1 as i64, p) {
                    (a1, a2, [0, 1])
                } else {
                    (a2, a1, [1, 0])
                };
                let r = sqrt_mod(sq as i64, p).unwrap();
                let s = mod_inverse(r as i64, p as i64).unwrap() as u64;
                let mut c0 = vec![0u64; 2];
                c0[order[0]] = s;
                let e1 = comp.embed(&vec_of(&c0));
                let e2 = comp.embed(&vec_of(&unit(order[1])));
                q_prime *= p;
                q *= p;
                blocks.push(PrimeBlock {
                    p,
                    basis: vec![e1, e2],
                    beta: Some(other),
                });
            }
            _ => {
                let (a, b, c) = (diag[0], diag[1], diag[2]);
                let (x, y) = solve_conic(a, b, c, p).expect("ternary forms over F_p are isotropic");
                let mut coeffs = vec![0u64; k];
                coeffs[0] = x;
                coeffs[1] = y;
                coeffs[2] = 1;
                return TrivialConeVerdict::Nontrivial {
                    witness: comp.embed(&vec_of(&coeffs)),
                };
            }
        }
    }
    TrivialConeVerdict::Trivial { q_prime, q, blocks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubledCriterion {
    pub determinant: u64,
    /// d is a product of distinct primes, all 3 mod 4.
    pub predicts_trivial: bool,
    /// Brute-force result on f ⊕ f, when within the bound.
    pub brute_force: Option<bool>,
}

/// Trivial-cone criterion for the doubled form f ⊕ f, cross-checked by enumeration.
pub fn doubled_trivial_cone_criterion(
    f: &LinkingForm,
    bound: u64,
) -> Result<DoubledCriterion, FormError> {
    let d = f.order().ok_or(FormError::Overflow)?;
    let predicts_trivial = factorize(d).iter().all(|&(p, e)| e == 1 && p % 4 == 3);
    let doubled = direct_sum(f, f);
    let brute_force = match cone_is_trivial(&doubled, bound) {
        Ok(b) => Some(b),
        Err(FormError::BoundExceeded { .. }) | Err(FormError::Overflow) => None,
        Err(e) => return Err(e),
    };
    if brute_force.is_some_and(|b| b != predicts_trivial) {
        return Err(FormError::CriterionMismatch);
    }
    Ok(DoubledCriterion {
        determinant: d,
        predicts_trivial,
        brute_force,
    })
}

/// Smallest prime p ≡ 3 mod 4 whose Sylow subgroup is cyclic of odd exponent.
pub fn livingston_naik_applies(orders: &[u64]) -> Option<u64> {
    let mut ps: Vec<u64> = orders
        .iter()
        .flat_map(|&d| factorize(d).into_iter().map(|(p, _)| p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps.into_iter().filter(|p| p % 4 == 3).find(|&p| {
        let exps: Vec<u32> = orders
            .iter()
            .filter_map(|&d| {
                factorize(d)
                    .into_iter()
                    .find(|&(q, _)| q == p)
                    .map(|(_, e)| e)
            })
            .collect();
        exps.len() == 1 && exps[0] % 2 == 1
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WittClass {
    /// p ≡ 1 mod 4: (rank mod 2, discriminant is a non-square) in Z₂ ⊕ Z₂.
    Klein {
        p: u64,
        odd_rank: bool,
        nonsquare_discriminant: bool,
    },
    /// p ≡ 3 mod 4: element of Z₄ generated by ⟨1⟩.
    Cyclic { p: u64, value: u8 },
}

impl WittClass {
    pub fn is_identity(&self) -> bool {
        match *self {
            WittClass::Klein {
                odd_rank,
                nonsquare_discriminant,
                ..
            } => !odd_rank && !nonsquare_discriminant,
            WittClass::Cyclic { value, .. } => value == 0,
        }
    }
}

/// Orthogonal splitting of a nondegenerate p-group form into cyclic summands
/// ⟨a/p^v⟩; returns (v, a mod p) per summand.
pub fn jordan_splitting(f: &LinkingForm, p: u64) -> Result<Vec<(u32, u64)>, FormError> {
    let comp = p_primary(f, p);
    let e = comp.exponent;
    let mut gens: Vec<Element> = (0..comp.rank())
        .map(|i| (0..comp.rank()).map(|j| u64::from(i == j)).collect())
        .collect();
    let val = |n: u64| -> u32 {
        // exponent of the denominator of n/e
        let (_, d) = reduce(n, e);
        let mut v = 0;
        let mut d = d;
        while d > 1 {
            d /= p;
            v += 1;
        }
        v
    };
    let mut out = Vec::new();
    while !gens.is_empty() {
        let top = gens.iter().map(|g| comp.element_order(g)).max().unwrap();
        let mut m = 0u32;
        for a in 0..gens.len() {
            for b in a..gens.len() {
                m = m.max(val(comp.pair(&gens[a], &gens[b])));
            }
        }
        let diag = (0..gens.len()).find(|&a| val(comp.q(&gens[a])) == m);
        let best = match diag {
            Some(a) => (m, a, a),
            None => {
                let (a, b) = (0..gens.len())
                    .flat_map(|a| (a + 1..gens.len()).map(move |b| (a, b)))
                    .find(|&(a, b)| val(comp.pair(&gens[a], &gens[b])) == m)
                    .unwrap();
                (m, a, b)
            }
        };
        let (m, i, j) = best;
        if p.pow(m) != top {
            return Err(FormError::Degenerate);
        }
        if i != j {
            gens[i] = comp.add(&gens[i], &gens[j]);
        }
        let x = gens.remove(i);
        let pm = p.pow(m);
        let scale = e / pm;
        let a = comp.q(&x) / scale;
        let a_inv = mod_inverse(a as i64, pm as i64).ok_or(FormError::Degenerate)? as u64;
        for y in gens.iter_mut() {
            let b = comp.pair(y, &x) / scale;
            let c = mulmod(b, a_inv, pm);
            *y = comp.add(y, &comp.neg(&comp.scale(c, &x)));
        }
        gens.retain(|g| comp.element_order(g) > 1);
        out.push((m, a % p));
    }
    Ok(out)
}

/// Class of the p-primary part of f in the Witt group of F_p forms.
pub fn witt_class_mod_p(f: &LinkingForm, p: u64) -> Result<WittClass, FormError> {
    if p < 3 || !crate::numtheory::is_prime(p) {
        return Err(FormError::NotOddPrime(p));
    }
    let units: Vec<u64> = jordan_splitting(f, p)?
        .into_iter()
        .filter(|&(v, _)| v % 2 == 1)
        .map(|(_, a)| a)
        .collect();
    Ok(if p % 4 == 1 {
        let disc = units.iter().fold(1u64, |acc, &a| mulmod(acc, a, p));
        WittClass::Klein {
            p,
            odd_rank: units.len() % 2 == 1,
            nonsquare_discriminant: !is_quadratic_residue(disc as i64, p),
        }
    } else {
        let v = units
            .iter()
            .map(|&a| {
                if is_quadratic_residue(a as i64, p) {
                    1u32
                } else {
                    3
                }
            })
            .sum::<u32>()
            % 4;
        WittClass::Cyclic { p, value: v as u8 }
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub groups: usize,
    pub forms_checked: usize,
    pub degenerate_skipped: usize,
    pub trivial_cones: usize,
    pub disagreements: Vec<String>,
}

/// All invariant-factor chains d₁ | d₂ | … with product ≤ max_order built from primes ≡ 1 mod 4.
pub fn groups_without_4k3_torsion(max_order: u64) -> Vec<Vec<u64>> {
    fn extend(chain: &mut Vec<u64>, prod: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if !chain.is_empty() {
            out.push(chain.clone());
        }
        let last = chain.last().copied().unwrap_or(1);
        let mut d = if last == 1 { 5 } else { last };
        while prod * d <= max {
            let ok = factorize(d).iter().all(|&(p, _)| p % 4 == 1);
            if ok && d % last == 0 {
                chain.push(d);
                extend(chain, prod * d, max, out);
                chain.pop();
            }
            d += if last == 1 { 1 } else { last };
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out
}

/// Compare trivial_cone_classify with brute force on diagonal and
/// one-off-diagonal Gram families over every group of order ≤ max_order
/// without 4k+3 torsion.
pub fn trivial_cone_sweep(max_order: u64) -> SweepSummary {
    let mut s = SweepSummary::default();
    for orders in groups_without_4k3_torsion(max_order) {
        s.groups += 1;
        let k = orders.len();
        let mut diag_choices: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..k {
            diag_choices = diag_choices
                .into_iter()
                .flat_map(|c| {
                    [1i64, 2, 3]
                        .into_iter()
                        .map(move |a| [c.clone(), vec![a]].concat())
                })
                .collect();
        }
        let mut offdiag: Vec<Option<(usize, usize, i64)>> = vec![None];
        for i in 0..k {
            for j in i + 1..k {
                for b in [1i64, 2] {
                    offdiag.push(Some((i, j, b)));
                }
            }
        }
        for diag in &diag_choices {
            for off in &offdiag {
                let mut gram: Vec<Vec<(i64, u64)>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| if i == j { (diag[i], orders[i]) } else { (0, 1) })
                            .collect()
                    })
                    .collect();
                if let Some((i, j, b)) = *off {
                    let g = orders[i].gcd(&orders[j]);
                    gram[i][j] = (b, g);
                    gram[j][i] = (b, g);
                }
                let f = LinkingForm::from_fractions(orders.clone(), &gram)
                    .expect("well-defined family");
                if !f.is_nondegenerate() {
                    s.degenerate_skipped += 1;
                    continue;
                }
                s.forms_checked += 1;
                let brute = cone_is_trivial(&f, u64::MAX).expect("unbounded");
                let verdict = trivial_cone_classify(&f);
                let agrees = match &verdict {
                    TrivialConeVerdict::Trivial { q_prime, q, blocks } => {
                        brute
                            && f.order() == Some(q_prime * q)
                            && blocks.iter().all(|b| {
                                b.beta
                                    .map_or(true, |beta| !is_quadratic_residue(beta as i64, b.p))
                            })
                    }
                    TrivialConeVerdict::Nontrivial { witness } => {
                        !brute && f.q(witness) == 0 && witness.iter().any(|&c| c != 0)
                    }
                    TrivialConeVerdict::Inapplicable { .. } => false,
                };
                if brute {
                    s.trivial_cones += 1;
                }
                if !agrees {
                    s.disagreements.push(f.to_string());
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> LinkingForm {
        s.parse().unwrap()
    }

    #[test]
    fn literal_round_trip() {
        for s in [
            "group=[35,35] gram=[[8/35,18/35],[18/35,4/35]]",
            "group=[5,5] gram=[[1/5,0/1],[0/1,2/5]]",
            "group=[] gram=[]",
            "group=[135,15] gram=[[2/135,1/15],[1/15,7/15]]",
        ] {
            assert_eq!(lit(s).to_string(), s);
        }
        assert_eq!(
            lit("group=[5] gram=[[-1/5]]").to_string(),
            "group=[5] gram=[[4/5]]"
        );
        assert!("group=[5] gram=[[1/7]]".parse::<LinkingForm>().is_err());
        assert!("group=[4] gram=[[1/4]]".parse::<LinkingForm>().is_err());
        assert!("group=[5,5] gram=[[1/5,1/5],[2/5,1/5]]"
            .parse::<LinkingForm>()
            .is_err());
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_form(1, 7).unwrap().order(), Some(1));
        assert_eq!(
            cyclic_form(65, 14).unwrap().to_string(),
            "group=[65] gram=[[14/65]]"
        );
        assert!(cyclic_form(21, 7).is_err());
    }

    #[test]
    fn sums_and_components() {
        let f = cyclic_form(3, 1).unwrap();
        assert_eq!(
            direct_sum(&f, &f).to_string(),
            "group=[3,3] gram=[[1/3,0/1],[0/1,1/3]]"
        );
        assert_eq!(direct_sum(&f, &LinkingForm::trivial()), f);
        let g = lit("group=[35,35] gram=[[8/35,18/35],[18/35,4/35]]");
        let c5 = p_primary(&g, 5);
        assert_eq!(c5.orders(), &[5, 5]);
        assert_eq!(p_primary(&g, 3).order(), Some(1));
        // values on 7·g transported: λ(7g,7g) = 49·8/35 = 56/5 ≡ 1/5.
        assert_eq!(c5.gram_entry(0, 0), (1, 5));
        let d = cyclic_form(21, 2).unwrap();
        let c3 = p_primary(&direct_sum(&d, &d), 3);
        // λ(7g,7g) = 98/21 = 14/3 ≡ 2/3.
        assert_eq!(c3.to_string(), "group=[3,3] gram=[[2/3,0/1],[0/1,2/3]]");
    }

    #[test]
    fn cone_examples() {
        let g = lit("group=[35,35] gram=[[8/35,18/35],[18/35,4/35]]");
        assert_eq!(isotropic_cone(&g, DEFAULT_BOUND, false).unwrap().size, 1);
        let h = lit("group=[5,5] gram=[[1/5,0/1],[0/1,1/5]]");
        let c = isotropic_cone(&h, DEFAULT_BOUND, true).unwrap();
        assert_eq!(c.size, 9);
        let brute = h
            .elements()
            .filter(|x| (x[0] * x[0] + x[1] * x[1]) % 5 == 0)
            .count();
        assert_eq!(brute, 9);
        assert_eq!(c.elements.unwrap().len(), 9);
        assert!(isotropic_cone(&h, 10, false).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let h = lit("group=[5,5] gram=[[1/5,0/1],[0/1,1/5]]");
        let g = Subgroup::generated(&h, vec![vec![1, 2]]);
        let a = annihilator(&h, &g, DEFAULT_BOUND).unwrap();
        assert_eq!(a.order, 5);
        assert!(a.contains(&h, &[1, 2]));
        let zero = Subgroup::generated(&h, vec![]);
        assert_eq!(annihilator(&h, &zero, DEFAULT_BOUND).unwrap().order, 25);
        let all = Subgroup::generated(&h, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(annihilator(&h, &all, DEFAULT_BOUND).unwrap().order, 1);
    }

    #[test]
    fn metabolizer_examples() {
        let h = lit("group=[5,5] gram=[[1/5,0/1],[0/1,1/5]]");
        let m = find_metabolizer(&h, DEFAULT_BOUND).unwrap().unwrap();
        assert_eq!(m.order, 5);
        let els = m.elements(&h);
        assert!(els.iter().all(|x| h.q(x) == 0));
        let g = lit("group=[35,35] gram=[[8/35,18/35],[18/35,4/35]]");
        assert!(find_metabolizer(&g, DEFAULT_BOUND).unwrap().is_none());
        assert!(find_metabolizer(&cyclic_form(3, 1).unwrap(), DEFAULT_BOUND)
            .unwrap()
            .is_none());
        let nine = cyclic_form(9, 2).unwrap();
        let m = find_metabolizer(&nine, DEFAULT_BOUND).unwrap().unwrap();
        assert_eq!(m.elements(&nine), vec![vec![0], vec![3], vec![6]]);
    }

    #[test]
    fn largest_subgroup_examples() {
        let t = lit("group=[5,5] gram=[[1/5,0/1],[0/1,2/5]]");
        let r = largest_cone_subgroup(&t, DEFAULT_BOUND).unwrap();
        assert_eq!((r.order, r.case), (1, Theorem1Case::A));
        // On Z135 ⊕ Z15 with this Gram, Λ₀ = {(0,0),(45,0),(90,0)}.
        let f = lit("group=[135,15] gram=[[2/135,0/1],[0/1,11/15]]");
        let cone = isotropic_cone(&f, DEFAULT_BOUND, true).unwrap();
        assert_eq!(
            cone.elements.unwrap(),
            vec![vec![0, 0], vec![45, 0], vec![90, 0]]
        );
        let r = largest_cone_subgroup(&f, DEFAULT_BOUND).unwrap();
        assert_eq!((r.order, r.case), (3, Theorem1Case::B));
    }

    #[test]
    fn witt_examples() {
        let f = lit("group=[5,5] gram=[[1/5,0/1],[0/1,4/5]]");
        assert!(witt_class_mod_p(&f, 5).unwrap().is_identity());
        let c = cyclic_form(3, 1).unwrap();
        assert_eq!(
            witt_class_mod_p(&c, 3).unwrap(),
            WittClass::Cyclic { p: 3, value: 1 }
        );
        let two = direct_sum(&c, &c);
        assert_eq!(
            witt_class_mod_p(&two, 3).unwrap(),
            WittClass::Cyclic { p: 3, value: 2 }
        );
        assert!(witt_class_mod_p(&direct_sum(&two, &two), 3)
            .unwrap()
            .is_identity());
        assert!(witt_class_mod_p(&cyclic_form(9, 1).unwrap(), 3)
            .unwrap()
            .is_identity());
        assert!(witt_class_mod_p(&lit("group=[5,5] gram=[[1/5,0/1],[0/1,0/1]]"), 5).is_err());
    }

    #[test]
    fn trivial_cone_examples() {
        let t = lit("group=[5,5] gram=[[1/5,0/1],[0/1,2/5]]");
        match trivial_cone_classify(&t) {
            TrivialConeVerdict::Trivial {
                q_prime: 5,
                q: 5,
                blocks,
            } => assert_eq!(blocks[0].beta, Some(2)),
            v => panic!("{v:?}"),
        }
        let n = lit("group=[5,5] gram=[[1/5,0/1],[0/1,1/5]]");
        match trivial_cone_classify(&n) {
            TrivialConeVerdict::Nontrivial { witness } => {
                assert_eq!(n.q(&witness), 0);
                assert_ne!(witness, vec![0, 0]);
            }
            v => panic!("{v:?}"),
        }
        match trivial_cone_classify(&cyclic_form(25, 1).unwrap()) {
            TrivialConeVerdict::Nontrivial { witness } => assert_eq!(witness, vec![5]),
            v => panic!("{v:?}"),
        }
        assert_eq!(
            trivial_cone_classify(&cyclic_form(21, 2).unwrap()),
            TrivialConeVerdict::Inapplicable { prime: 3 }
        );
    }

    #[test]
    fn doubled_examples() {
        let c =
            doubled_trivial_cone_criterion(&cyclic_form(21, 2).unwrap(), DEFAULT_BOUND).unwrap();
        assert!(c.predicts_trivial && c.brute_force == Some(true));
        let c =
            doubled_trivial_cone_criterion(&cyclic_form(65, 14).unwrap(), DEFAULT_BOUND).unwrap();
        assert!(!c.predicts_trivial);
        let c = doubled_trivial_cone_criterion(&cyclic_form(9, 1).unwrap(), DEFAULT_BOUND).unwrap();
        assert!(!c.predicts_trivial && c.brute_force == Some(false));
    }

    #[test]
    fn livingston_naik_examples() {
        assert_eq!(livingston_naik_applies(&[165]), Some(3));
        assert_eq!(livingston_naik_applies(&[21, 21]), None);
        assert_eq!(livingston_naik_applies(&[65]), None);
        assert_eq!(livingston_naik_applies(&[27]), Some(3));
        assert_eq!(livingston_naik_applies(&[9]), None);
    }

    #[test]
    fn nondegeneracy() {
        assert!(lit("group=[35,35] gram=[[8/35,18/35],[18/35,4/35]]").is_nondegenerate());
        assert!(!lit("group=[5,5] gram=[[1/5,1/5],[1/5,1/5]]").is_nondegenerate());
        assert!(!lit("group=[25] gram=[[5/25]]").is_nondegenerate());
        assert!(LinkingForm::trivial().is_nondegenerate());
    }

    #[test]
    fn group_enumeration() {
        let gs = groups_without_4k3_torsion(130);
        assert!(gs.contains(&vec![5, 5]));
        assert!(gs.contains(&vec![5, 25]));
        assert!(gs.contains(&vec![65]));
        assert!(!gs.iter().any(|g| g.iter().any(|d| d % 3 == 0)));
    }

    #[test]
    fn small_sweep_agrees() {
        let s = trivial_cone_sweep(400);
        assert!(s.forms_checked > 100, "{s:?}");
        assert!(s.trivial_cones > 0);
        assert!(s.disagreements.is_empty(), "{:?}", s.disagreements);
    }
}
