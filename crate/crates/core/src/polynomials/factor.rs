//! Factorization over Z: Berlekamp mod p, Hensel lifting, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LaurentPoly, PolyError};
use crate::numtheory::is_prime;

const DEGREE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Signed content.
    pub content: BigInt,
    /// Power of t split off as a unit.
    pub shift: i64,
    /// Primitive irreducible factors with positive leading coefficient and
    /// nonzero constant term, in deterministic order.
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(self.shift, self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deg(v: &[BigInt]) -> usize {
    v.len().saturating_sub(1)
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient a / b over Z, if b divides a.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = trim(a.to_vec());
    if b.is_empty() {
        return None;
    }
    if r.len() < b.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap();
        if !lr.is_multiple_of(lb) {
            return None;
        }
        let c = lr / lb;
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    if r.is_empty() {
        Some(trim(q))
    } else {
        None
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> ZPoly {
    let c = content(v);
    if c.is_zero() {
        return vec![];
    }
    let sign = if v.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    v.iter().map(|x| x / &c * &sign).collect()
}

fn derivative(v: &[BigInt]) -> ZPoly {
    trim(
        v.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

type QPoly = Vec<BigRational>;

fn to_q(v: &[BigInt]) -> QPoly {
    v.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn qtrim(mut v: QPoly) -> QPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub(crate) fn qrem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r = qtrim(a.to_vec());
    let b = qtrim(b.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        r.pop();
        r = qtrim(r);
    }
    r
}

/// Primitive integer gcd computed over Q.
fn zgcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut x, mut y) = (to_q(a), to_q(b));
    while !qtrim(y.clone()).is_empty() {
        let r = qrem(&x, &y);
        x = y;
        y = r;
    }
    let x = qtrim(x);
    let den = x.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = x
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    primitive(&ints)
}

// ---- arithmetic mod a small prime ----

type PPoly = Vec<u64>;

fn ptrim(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pinv(a: u64, p: u64) -> u64 {
    crate::numtheory::mod_pow(a, p - 2, p)
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let mut r = ptrim(a.to_vec());
    let b = ptrim(b.to_vec());
    let inv = pinv(*b.last().expect("nonzero divisor"), p);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() * inv % p;
        let shift = r.len() - b.len();
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        q[shift] = c;
        r = ptrim(r);
    }
    (ptrim(q), r)
}

fn pmonic(a: &[u64], p: u64) -> PPoly {
    let a = ptrim(a.to_vec());
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = pinv(l, p);
            a.iter().map(|x| x * inv % p).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut x, mut y) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y, p);
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn reduce_mod(v: &[BigInt], p: u64) -> PPoly {
    let pb = BigInt::from(p);
    ptrim(
        v.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

/// Extended gcd over F_p: (s, t) with s·a + t·b = 1, assuming coprime.
fn pxgcd(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant.
    let inv = pinv(r0[0], p);
    (
        s0.iter().map(|x| x * inv % p).collect(),
        t0.iter().map(|x| x * inv % p).collect(),
    )
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(u: &[u64], p: u64) -> Vec<PPoly> {
    let n = deg_p(u);
    if n <= 1 {
        return vec![u.to_vec()];
    }
    // Row i of Q: x^{ip} mod u.
    let mut q = vec![vec![0u64; n]; n];
    let (_, xp) = pdivrem(&ppow_x(p, u, p), u, p);
    let mut cur = vec![1u64];
    for row in q.iter_mut() {
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        cur = pdivrem(&pmul(&cur, &xp, p), u, p).1;
    }
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let basis = left_nullspace(&q, p);
    let r = basis.len();
    let mut factors = vec![u.to_vec()];
    for v in &basis {
        if factors.len() >= r {
            break;
        }
        let v = ptrim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for w in factors {
            if deg_p(&w) <= 1 || next.len() + 1 > r {
                next.push(w);
                continue;
            }
            let mut rest = w;
            for s in 0..p {
                if deg_p(&rest) <= 1 {
                    break;
                }
                let shifted = psub(&v, &[s], p);
                let g = pgcd(&rest, &shifted, p);
                if deg_p(&g) >= 1 && deg_p(&g) < deg_p(&rest) {
                    rest = pmonic(&pdivrem(&rest, &g, p).0, p);
                    next.push(g);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors.sort();
    factors
}

fn deg_p(v: &[u64]) -> usize {
    v.len().saturating_sub(1)
}

/// x^e mod u
fn ppow_x(e: u64, u: &[u64], p: u64) -> PPoly {
    let mut result = vec![1u64];
    let mut base = pdivrem(&[0, 1], u, p).1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = pdivrem(&pmul(&result, &base, p), u, p).1;
        }
        base = pdivrem(&pmul(&base, &base, p), u, p).1;
        e >>= 1;
    }
    result
}

/// Basis of {v : v·M = 0} over F_p.
fn left_nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    // Transpose, then solve Mᵀ x = 0 by Gauss-Jordan.
    let mut a: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = pinv(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..n {
                    a[r][c] = (a[r][c] + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][fc]) % p;
            }
            v
        })
        .collect()
}

// ---- Hensel lifting ----

fn mod_sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zmod(v: &[BigInt], m: &BigInt) -> ZPoly {
    trim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn to_z(v: &[u64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift F ≡ g·h (mod p), F monic mod p^k, to F ≡ G·H (mod p^k).
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (s, t) = pxgcd(g, h, p);
    let pb = BigInt::from(p);
    let mut gg = to_z(g);
    let mut hh = to_z(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let diff = zmod(&zsub(f, &zmul(&gg, &hh)), &next);
        let e: PPoly = ptrim(
            diff.iter()
                .map(|c| (c / &pj).mod_floor(&pb).to_u64().unwrap())
                .collect(),
        );
        if !e.is_empty() {
            let (q, r) = pdivrem(&pmul(&e, &t, p), g, p);
            let a = r;
            let b = psub(&pmul(&e, &s, p), &[], p);
            let b = padd(&b, &pmul(&q, h, p), p);
            gg = zmod(
                &zadd(&gg, &to_z(&a).iter().map(|c| c * &pj).collect::<Vec<_>>()),
                &next,
            );
            hh = zmod(
                &zadd(&hh, &to_z(&b).iter().map(|c| c * &pj).collect::<Vec<_>>()),
                &next,
            );
        }
        pj = next;
    }
    (gg, hh)
}

fn padd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Lift a monic factorization of F mod p to mod p^k.
fn hensel_multi(f: &[BigInt], factors: &[PPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![zmod(f, &m)];
    }
    let mid = factors.len() / 2;
    let g = factors[..mid]
        .iter()
        .fold(vec![1u64], |acc, x| pmul(&acc, x, p));
    let h = factors[mid..]
        .iter()
        .fold(vec![1u64], |acc, x| pmul(&acc, x, p));
    let (gg, hh) = hensel_pair(f, &g, &h, p, k);
    let mut out = hensel_multi(&gg, &factors[..mid], p, k);
    out.extend(hensel_multi(&hh, &factors[mid..], p, k));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 1.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = deg(f);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let df = derivative(f);
    // Pick the candidate prime (among a few good ones) with the fewest modular factors.
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 6 {
        if is_prime(p) && !lc.is_multiple_of(&BigInt::from(p)) {
            let fp = reduce_mod(f, p);
            if deg_p(&fp) == n && deg_p(&pgcd(&fp, &reduce_mod(&df, p), p)) == 0 {
                let facs = berlekamp(&pmonic(&fp, p), p);
                tried += 1;
                if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
                    best = Some((p, facs));
                }
            }
        }
        p += 2;
    }
    let (p, modular) = best.unwrap();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Coefficient bound for factors of lc·f.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = lc.abs() * BigInt::from(2).pow(n as u32) * norm2 * 2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    while pb.pow(k) <= bound {
        k += 1;
    }
    let m = pb.pow(k);
    let lc_inv = lc.modinv(&m).unwrap();
    let monic: ZPoly = f.iter().map(|c| (c * &lc_inv).mod_floor(&m)).collect();
    let mut lifted = hensel_multi(&monic, &modular, p, k);
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lcr = rest.last().unwrap().clone();
            let mut cand: ZPoly = vec![lcr.clone()];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &lifted[i]), &m);
            }
            let cand: ZPoly = trim(cand.iter().map(|c| mod_sym(c, &m)).collect());
            let cand = primitive(&cand);
            if let Some(q) = zdiv_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if deg(&rest) >= 1 {
        out.push(primitive(&rest));
    }
    out
}

fn to_laurent(v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, v)
}

/// t^{deg g}·g(1/t), with positive leading coefficient.
pub(crate) fn reciprocal_normalized(g: &LaurentPoly) -> LaurentPoly {
    let (_, mut dense) = g.dense();
    dense.reverse();
    to_laurent(&primitive(&dense))
}

/// Factorization over Z, units ±t^k split off.
pub fn factor_over_z(p: &LaurentPoly) -> Result<Factorization, PolyError> {
    let (low, dense) = p.dense();
    if dense.is_empty() {
        return Err(PolyError::Zero);
    }
    if dense.len() - 1 > DEGREE_CAP {
        return Err(PolyError::DegreeCap(dense.len() - 1));
    }
    let c = content(&dense);
    let sign = if dense.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let prim = primitive(&dense);
    let mut factors: Vec<(ZPoly, u32)> = Vec::new();
    if deg(&prim) >= 1 {
        let g = zgcd(&prim, &derivative(&prim));
        let sqfree = zdiv_exact(&prim, &g).expect("gcd divides");
        for irr in zassenhaus(&primitive(&sqfree)) {
            let mut mult = 0;
            let mut rest = prim.clone();
            while let Some(q) = zdiv_exact(&rest, &irr) {
                rest = q;
                mult += 1;
            }
            factors.push((irr, mult));
        }
    }
    let mut out: Vec<(LaurentPoly, u32)> = factors
        .into_iter()
        .map(|(f, m)| (to_laurent(&f), m))
        .collect();
    out.sort_by(|a, b| (a.0.span(), a.0.dense().1).cmp(&(b.0.span(), b.0.dense().1)));
    Ok(Factorization {
        content: c * sign,
        shift: low,
        factors: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn check(p: &LaurentPoly) -> Factorization {
        let f = factor_over_z(p).unwrap();
        assert_eq!(&f.expand(), p, "{f:?}");
        f
    }

    #[test]
    fn examples() {
        let f = check(&lp("([-1] 0 1)"));
        assert_eq!(f.factors, vec![(lp("([-1] 1)"), 1), (lp("([1] 1)"), 1)]);
        let f = check(&lp("([1] 0 0 0 1)"));
        assert_eq!(f.factors.len(), 1);
        let xyz = &(&lp("([1] -1 1)").pow(2) * &lp("([1] -3 1)").pow(2)) * &lp("([2] -3 2)").pow(2);
        let f = check(&xyz.shift(-6));
        assert_eq!(
            f.factors,
            vec![
                (lp("([1] -3 1)"), 2),
                (lp("([1] -1 1)"), 2),
                (lp("([2] -3 2)"), 2)
            ]
        );
        check(&lp("(6 [0] -6)"));
        check(&lp("(-4 [0] 0 12)"));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 splits into quadratics mod every prime.
        let f = check(&lp("([1] 0 -10 0 1)"));
        assert_eq!(f.factors.len(), 1);
        let f = check(&lp("([1] 0 -10 0 1)").pow(2).shift(3));
        assert_eq!(f.factors[0].1, 2);
        assert_eq!(f.shift, 3);
    }

    #[test]
    fn products_of_cyclotomics() {
        let phi = [
            lp("([-1] 1)"),
            lp("([1] 1)"),
            lp("([1] 1 1)"),
            lp("([1] 0 1)"),
            lp("([1] 1 1 1 1)"),
            lp("([1] -1 1)"),
        ];
        let mut p = LaurentPoly::one();
        for q in &phi {
            p = &p * q;
        }
        let f = check(&p.scale(&BigInt::from(-6)));
        assert_eq!(f.factors.len(), phi.len());
        assert_eq!(f.content, BigInt::from(-6));
    }
}
