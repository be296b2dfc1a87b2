//! Murasugi and Tristram-Levine signatures from a Seifert matrix.
//!
//! At ξ = e^{iθ} the Hermitian form (1−ξ)V + (1−ξ̄)Vᵀ is a positive multiple of
//! S + i·c·(Vᵀ − V) with S = V + Vᵀ and c = cot(θ/2). Its signature is half the
//! signature of the real symmetric form [[S, cA], [−cA, S]], A = V − Vᵀ. Sample
//! points are chosen with rational c, so z = 2cos θ = 2(c²−1)/(c²+1) is rational
//! and every signature is computed exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::intlinalg::{determinant, signature_symmetric, IntMatrix, LinAlgError};
use crate::polynomials::{
    normalize_alexander, rat_to_f64, unit_circle_roots, z_polynomial, z_sign, LaurentPoly,
    PolyError, UnitCircleRoot,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Alexander polynomial is zero; V is not a knot's Seifert matrix")]
    Degenerate,
}

/// One open arc of the upper semicircle with its constant signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plateau {
    /// Arc in z = 2cos θ, as (lower, upper) bounds; θ runs from the upper end.
    #[serde(serialize_with = "ser_rat")]
    pub z_lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub z_hi: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub sample_z: BigRational,
    pub value: i64,
    /// Sign of Δ(ξ) at the sample point.
    pub delta_sign: i8,
}

impl Plateau {
    /// Angle range in degrees (from, to).
    pub fn angles(&self) -> (f64, f64) {
        let a = |z: &BigRational| (rat_to_f64(z) / 2.0).clamp(-1.0, 1.0).acos().to_degrees();
        (a(&self.z_hi), a(&self.z_lo))
    }

    /// σ_ξ ≡ 0 mod 4 exactly when Δ(ξ) > 0 (with Δ(1) = 1).
    pub fn satisfies_mod4_law(&self) -> bool {
        (self.value.rem_euclid(4) == 0) == (self.delta_sign > 0)
    }
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureFunction {
    /// Roots of Δ on the upper semicircle, ordered by increasing angle.
    pub jump_angles: Vec<UnitCircleRoot>,
    /// Arcs between consecutive jumps, ordered by increasing angle.
    pub plateaus: Vec<Plateau>,
    /// σ at ξ = −1 when Δ(−1) ≠ 0.
    pub value_at_minus_one: Option<i64>,
}

impl SignatureFunction {
    pub fn plateau_values(&self) -> Vec<i64> {
        self.plateaus.iter().map(|p| p.value).collect()
    }

    /// Value at the nonsingular point z = 2cos θ, if z avoids every jump interval.
    pub fn value_at_z(&self, z: &BigRational) -> Option<i64> {
        self.plateaus
            .iter()
            .find(|p| &p.z_lo < z && z < &p.z_hi)
            .map(|p| p.value)
            .or_else(|| {
                if z == &-BigRational::from_integer(2.into()) {
                    self.value_at_minus_one
                } else {
                    None
                }
            })
    }
}

/// Signature of V + Vᵀ; the positive trefoil has +2.
pub fn murasugi_signature(v: &IntMatrix) -> Result<i64, SignatureError> {
    Ok(signature_symmetric(&v.add(&v.transpose())?)?)
}

/// Normalized Alexander polynomial det(V − tVᵀ), obtained by interpolation.
pub fn alexander_from_seifert(v: &IntMatrix) -> Result<LaurentPoly, SignatureError> {
    let n = v.rows();
    if !v.is_square() {
        return Err(LinAlgError::NotSquare(v.rows(), v.cols()).into());
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let vt = v.transpose();
    // values at t = 0..=n, then Newton divided differences
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let mut ys: Vec<BigRational> = Vec::with_capacity(n + 1);
    for x in &xs {
        let m = v.sub(&vt.scale(x))?;
        ys.push(BigRational::from_integer(determinant(&m)?));
    }
    let mut coef = ys.clone();
    for j in 1..=n {
        for i in (j..=n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / BigRational::from_integer(&xs[i] - &xs[i - j]);
        }
    }
    // expand Newton form into monomials
    let mut poly = vec![BigRational::zero(); n + 1];
    let mut basis = vec![BigRational::one()];
    for (k, c) in coef.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            poly[i] += c * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * BigRational::from_integer(xs[k].clone());
        }
        basis = next;
    }
    let ints: Vec<BigInt> = poly.iter().map(|c| c.to_integer()).collect();
    let p = LaurentPoly::from_coeffs(0, &ints);
    if p.is_zero() {
        return Err(SignatureError::Degenerate);
    }
    Ok(normalize_alexander(&p)?)
}

/// z = 2(c² − 1)/(c² + 1).
pub fn z_of_c(c: &BigRational) -> BigRational {
    let c2 = c * c;
    BigRational::from_integer(2.into()) * (&c2 - BigRational::one()) / (&c2 + BigRational::one())
}

/// A rational c = p/q with z(c) strictly inside (lo, hi).
pub fn sample_c(lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let z0 = (lo + hi) / &two;
    let r = (&two + &z0) / (&two - &z0);
    let mut k = 0u32;
    loop {
        let scale = BigInt::from(4).pow(k);
        let s = (r.numer() * &scale / r.denom()).sqrt();
        let c = BigRational::new(s, BigInt::from(2).pow(k));
        let z = z_of_c(&c);
        if lo < &z && &z < hi {
            return c;
        }
        k += 1;
    }
}

/// Hermitian signature of (1−ξ)V + (1−ξ̄)Vᵀ at cot(θ/2) = c.
pub fn tristram_levine_at(v: &IntMatrix, c: &BigRational) -> Result<i64, SignatureError> {
    let s = v.add(&v.transpose())?;
    let a = v.sub(&v.transpose())?;
    let p = c.numer();
    let q = c.denom();
    let qs = s.scale(q);
    let pa = a.scale(p);
    let m = IntMatrix::blocks(&qs, &pa, &pa.neg(), &qs)?;
    Ok(signature_symmetric(&m)? / 2)
}

/// The Tristram-Levine signature function on the upper semicircle.
pub fn tristram_levine_function(
    v: &IntMatrix,
    delta: &LaurentPoly,
) -> Result<SignatureFunction, SignatureError> {
    let two = BigRational::from_integer(2.into());
    let mut roots = unit_circle_roots(delta)?;
    // increasing angle is decreasing z
    roots.reverse();
    let g = z_polynomial(delta);
    let sign_at = |z: &BigRational| -> i8 {
        let s = z_sign(&g, z);
        let at_one = z_sign(&g, &two);
        if at_one < 0 {
            -s
        } else {
            s
        }
    };
    let mut plateaus = Vec::new();
    let mut upper = two.clone();
    let bounds: Vec<(BigRational, BigRational)> = roots
        .iter()
        .map(|r| (r.z_lo.clone(), r.z_hi.clone()))
        .collect();
    let mut arcs: Vec<(BigRational, BigRational)> = Vec::new();
    for (lo, hi) in &bounds {
        if hi < &upper {
            arcs.push((hi.clone(), upper.clone()));
        }
        upper = lo.clone();
    }
    if upper > -two.clone() {
        arcs.push((-two.clone(), upper.clone()));
    }
    for (lo, hi) in arcs {
        let c = sample_c(&lo, &hi);
        let z = z_of_c(&c);
        let value = tristram_levine_at(v, &c)?;
        let delta_sign = sign_at(&z);
        plateaus.push(Plateau {
            z_lo: lo,
            z_hi: hi,
            sample_z: z,
            value,
            delta_sign,
        });
    }
    let minus_one_singular = roots.iter().any(|r| r.is_exact() && r.z_lo == -two.clone());
    let value_at_minus_one = if minus_one_singular {
        None
    } else {
        Some(murasugi_signature(v)?)
    };
    Ok(SignatureFunction {
        jump_angles: roots,
        plateaus,
        value_at_minus_one,
    })
}

/// True iff every nonsingular Tristram-Levine signature is zero.
pub fn all_nonsingular_signatures_vanish(
    v: &IntMatrix,
    delta: &LaurentPoly,
) -> Result<bool, SignatureError> {
    let f = tristram_levine_function(v, delta)?;
    Ok(f.plateaus.iter().all(|p| p.value == 0) && f.value_at_minus_one.map_or(true, |s| s == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{mirror, parse_pd, seifert_matrix};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn murasugi_examples() {
        assert_eq!(murasugi_signature(&IntMatrix::zeros(0, 0)).unwrap(), 0);
        let t = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_eq!(murasugi_signature(&seifert_matrix(&t).unwrap()).unwrap(), 2);
        assert_eq!(
            murasugi_signature(&seifert_matrix(&mirror(&t)).unwrap()).unwrap(),
            -2
        );
        let f = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        assert_eq!(murasugi_signature(&seifert_matrix(&f).unwrap()).unwrap(), 0);
    }

    #[test]
    fn alexander_examples() {
        let t = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert_eq!(
            alexander_from_seifert(&seifert_matrix(&t).unwrap()).unwrap(),
            lp("(1 [-1] 1)")
        );
        let f = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        assert_eq!(
            alexander_from_seifert(&seifert_matrix(&f).unwrap()).unwrap(),
            lp("(-1 [3] -1)")
        );
        assert_eq!(
            alexander_from_seifert(&IntMatrix::zeros(0, 0)).unwrap(),
            LaurentPoly::one()
        );
    }

    #[test]
    fn trefoil_function() {
        let t = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        let v = seifert_matrix(&t).unwrap();
        let f = tristram_levine_function(&v, &lp("(1 [-1] 1)")).unwrap();
        assert_eq!(f.jump_angles.len(), 1);
        assert!((f.jump_angles[0].angle_degrees().0 - 60.0).abs() < 1e-9);
        assert_eq!(f.plateau_values(), vec![0, 2]);
        assert_eq!(f.value_at_minus_one, Some(2));
        assert!(f.plateaus.iter().all(Plateau::satisfies_mod4_law));
        // θ = π/2 is c = 1
        assert_eq!(tristram_levine_at(&v, &BigRational::one()).unwrap(), 2);
        assert!(!all_nonsingular_signatures_vanish(&v, &lp("(1 [-1] 1)")).unwrap());
        let vm = seifert_matrix(&mirror(&t)).unwrap();
        assert_eq!(
            tristram_levine_function(&vm, &lp("(1 [-1] 1)"))
                .unwrap()
                .plateau_values(),
            vec![0, -2]
        );
    }

    #[test]
    fn constant_functions() {
        let u = tristram_levine_function(&IntMatrix::zeros(0, 0), &LaurentPoly::one()).unwrap();
        assert_eq!(u.plateau_values(), vec![0]);
        let f = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        let v = seifert_matrix(&f).unwrap();
        let s = tristram_levine_function(&v, &lp("(-1 [3] -1)")).unwrap();
        assert!(s.jump_angles.is_empty());
        assert_eq!(s.plateau_values(), vec![0]);
        assert!(all_nonsingular_signatures_vanish(&v, &lp("(-1 [3] -1)")).unwrap());
    }
}
