//! Exact isolation of unit-circle roots through z = t + 1/t and Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::{factor_over_z, qrem};
use super::{rat_to_f64, LaurentPoly, PolyError};

/// A conjugate pair e^{±iθ} of roots (a single root when z = ±2), located by an
/// isolating interval [z_lo, z_hi] for z = 2cos θ. The interval is a single
/// point exactly when the root is rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitCircleRoot {
    #[serde(serialize_with = "ser_rat")]
    pub z_lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub z_hi: BigRational,
    pub multiplicity: u32,
    /// Irreducible factor of the z-polynomial vanishing here.
    #[serde(skip)]
    pub factor: Vec<BigInt>,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl UnitCircleRoot {
    pub fn is_exact(&self) -> bool {
        self.z_lo == self.z_hi
    }

    /// Number of roots t on the circle represented (2 for a conjugate pair).
    pub fn circle_count(&self) -> u32 {
        let two = BigRational::from_integer(2.into());
        if self.is_exact() && self.z_lo.abs() == two {
            1
        } else {
            2
        }
    }

    /// Angle interval in degrees, θ ∈ [0, 180].
    pub fn angle_degrees(&self) -> (f64, f64) {
        let a = |z: &BigRational| (rat_to_f64(z) / 2.0).clamp(-1.0, 1.0).acos().to_degrees();
        (a(&self.z_hi), a(&self.z_lo))
    }

    /// Shrink the isolating interval below `width`.
    pub fn refine(&mut self, width: &BigRational) {
        let f = to_q(&self.factor);
        let chain = sturm_chain(&f);
        while &self.z_hi - &self.z_lo > *width {
            let mid = (&self.z_lo + &self.z_hi) / BigRational::from_integer(2.into());
            if eval(&f, &mid).is_zero() {
                self.z_lo = mid.clone();
                self.z_hi = mid;
                return;
            }
            if count_roots(&chain, &self.z_lo, &mid) > 0 {
                self.z_hi = mid;
            } else {
                self.z_lo = mid;
            }
        }
    }
}

type QPoly = Vec<BigRational>;

fn to_q(v: &[BigInt]) -> QPoly {
    v.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_chain(p: &[BigRational]) -> Vec<QPoly> {
    let dp: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect();
    let mut chain = vec![p.to_vec(), dp];
    loop {
        let n = chain.len();
        if chain[n - 1].iter().all(|c| c.is_zero()) || chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = qrem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(chain: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| sign_of(&eval(p, x)))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in (a, b] of a squarefree polynomial.
fn count_roots(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    variations(chain, a).saturating_sub(variations(chain, b))
}

fn isolate(
    chain: &[QPoly],
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    let n = count_roots(chain, &lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((lo, hi));
        return;
    }
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    isolate(chain, lo, mid.clone(), out);
    isolate(chain, mid, hi, out);
}

/// The polynomial g with g(t + 1/t) = p(t) for symmetric p; for other p,
/// the same for p(t)·p(1/t), which has the same roots on the circle.
pub fn z_polynomial(p: &LaurentPoly) -> Vec<BigInt> {
    let (Some(lo), Some(hi)) = (p.min_deg(), p.max_deg()) else {
        return vec![];
    };
    let sym = if (lo + hi) % 2 == 0 && p.shift(-(lo + hi) / 2).is_symmetric() {
        p.shift(-(lo + hi) / 2)
    } else {
        p * &p.reciprocal()
    };
    let n = sym.max_deg().unwrap_or(0).max(0) as usize;
    // Chebyshev-like basis: P0 = 2, P1 = z, P(k+1) = z·Pk − P(k−1), with t^k + t^{-k} = Pk(z).
    let mut basis: Vec<Vec<BigInt>> =
        vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 1..n {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in basis[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in basis[k - 1].iter().enumerate() {
            next[i] -= c;
        }
        basis.push(next);
    }
    let mut g = vec![BigInt::zero(); n + 1];
    g[0] += sym.coeff(0);
    for k in 1..=n {
        let c = sym.coeff(k as i64);
        for (i, b) in basis[k].iter().enumerate() {
            g[i] += &c * b;
        }
    }
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    g
}

/// Roots of p on the unit circle, ordered by increasing z (decreasing angle).
pub fn unit_circle_roots(p: &LaurentPoly) -> Result<Vec<UnitCircleRoot>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let g = z_polynomial(p);
    if g.len() <= 1 {
        return Ok(vec![]);
    }
    let two = BigRational::from_integer(2.into());
    let fac = factor_over_z(&LaurentPoly::from_coeffs(0, &g))?;
    let mut roots: Vec<UnitCircleRoot> = Vec::new();
    for (h, m) in &fac.factors {
        let (_, dense) = h.dense();
        if dense.len() == 2 {
            // linear: a + b z
            let r = BigRational::new(-dense[0].clone(), dense[1].clone());
            if r.abs() <= two {
                roots.push(UnitCircleRoot {
                    z_lo: r.clone(),
                    z_hi: r,
                    multiplicity: *m,
                    factor: dense,
                });
            }
            continue;
        }
        let q = to_q(&dense);
        let chain = sturm_chain(&q);
        let mut found = Vec::new();
        isolate(&chain, -two.clone(), two.clone(), &mut found);
        for (lo, hi) in found {
            roots.push(UnitCircleRoot {
                z_lo: lo,
                z_hi: hi,
                multiplicity: *m,
                factor: dense.clone(),
            });
        }
    }
    // Separate intervals from different factors, then order.
    loop {
        roots.sort_by(|a, b| a.z_lo.cmp(&b.z_lo).then(a.z_hi.cmp(&b.z_hi)));
        let clash = (1..roots.len()).find(|&i| roots[i].z_lo <= roots[i - 1].z_hi);
        match clash {
            None => break,
            Some(i) => {
                for j in [i - 1, i] {
                    if !roots[j].is_exact() {
                        let w =
                            (&roots[j].z_hi - &roots[j].z_lo) / BigRational::from_integer(2.into());
                        roots[j].refine(&w);
                    }
                }
                // Exact rational points may coincide with an endpoint of the other interval.
                if roots[i].is_exact() && roots[i - 1].is_exact() {
                    break;
                }
                let (a, b) = (&roots[i - 1], &roots[i]);
                if a.is_exact() && b.z_lo == a.z_lo {
                    let w = (&b.z_hi - &b.z_lo) / BigRational::from_integer(4.into());
                    let lo = &a.z_lo + &w;
                    let chain = sturm_chain(&to_q(&b.factor));
                    if count_roots(&chain, &a.z_lo, &lo) == 0 {
                        roots[i].z_lo = lo;
                    }
                } else if b.is_exact() && a.z_hi == b.z_lo {
                    let w = (&a.z_hi - &a.z_lo) / BigRational::from_integer(4.into());
                    let hi = &b.z_lo - &w;
                    let chain = sturm_chain(&to_q(&a.factor));
                    if count_roots(&chain, &hi, &b.z_lo) == 0 {
                        roots[i - 1].z_hi = hi;
                    }
                }
            }
        }
    }
    Ok(roots)
}

/// Sign of p at z (for symmetric p this is the sign of p(e^{iθ}), z = 2cos θ).
pub fn z_sign(g: &[BigInt], z: &BigRational) -> i8 {
    sign_of(&eval(&to_q(g), z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert!(unit_circle_roots(&lp("(-1 [3] -1)")).unwrap().is_empty());
        let r = unit_circle_roots(&lp("(1 [-1] 1)")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].z_lo, BigRational::one());
        let (a, b) = r[0].angle_degrees();
        assert!((a - 60.0).abs() < 1e-9 && (b - 60.0).abs() < 1e-9);
        assert!(unit_circle_roots(&lp("(4 -16 [25] -16 4)"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn z_substitution() {
        assert_eq!(
            z_polynomial(&lp("(1 [-1] 1)")),
            vec![BigInt::from(-1), BigInt::from(1)]
        );
        // t^2 + t^-2 = z^2 - 2
        assert_eq!(
            z_polynomial(&lp("(1 0 [0] 0 1)")),
            vec![BigInt::from(-2), BigInt::zero(), BigInt::from(1)]
        );
    }

    #[test]
    fn irrational_and_boundary_roots() {
        // 5_1: t^2 - t + 1 - t^-1 + t^-2 has roots at 36° and 108°.
        let mut r = unit_circle_roots(&lp("(1 -1 [1] -1 1)")).unwrap();
        assert_eq!(r.len(), 2);
        for x in r.iter_mut() {
            x.refine(&BigRational::new(1.into(), 1000.into()));
        }
        let mut ang: Vec<f64> = r.iter().map(|x| x.angle_degrees().0).collect();
        ang.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(
            (ang[0] - 36.0).abs() < 0.1 && (ang[1] - 108.0).abs() < 0.1,
            "{ang:?}"
        );
        // t + 2 + 1/t vanishes at t = -1 (z = -2).
        let r = unit_circle_roots(&lp("(1 [2] 1)")).unwrap();
        assert_eq!(r[0].circle_count(), 1);
        assert_eq!(r[0].multiplicity, 1);
        // non-symmetric input
        let r = unit_circle_roots(&lp("([1] 1)")).unwrap();
        assert_eq!(r.len(), 1);
    }
}
