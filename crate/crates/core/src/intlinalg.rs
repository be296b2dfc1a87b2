//! Exact integer linear algebra: Smith normal form, determinants, signatures of
//! symmetric matrices and the linking pairing on a cokernel.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::forms::LinkingForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch")]
    Shape,
    #[error("torsion order {0} does not fit in 64 bits")]
    Overflow(BigInt),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Shape);
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &IntMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntMatrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::Shape);
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    /// Block diagonal sum.
    pub fn block_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn blocks(
        a: &IntMatrix,
        b: &IntMatrix,
        c: &IntMatrix,
        d: &IntMatrix,
    ) -> Result<IntMatrix, LinAlgError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(LinAlgError::Shape);
        }
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [
            (a, 0, 0),
            (b, 0, a.cols),
            (c, a.rows, 0),
            (d, a.rows, a.cols),
        ] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m[(r0 + i, c0 + j)] = blk[(i, j)].clone();
                }
            }
        }
        Ok(m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// The nonzero diagonal entries of D.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Row operations recorded on U (and on U^{-1} by the inverse column operation).
struct RowTracker {
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl RowTracker {
    fn swap(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }
    fn add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.u.add_row(dst, src, q);
        self.u_inv.add_col(src, dst, &-q);
    }
    fn negate(&mut self, r: usize) {
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }
}

fn snf_with_inverse(a: &IntMatrix) -> (SnfDecomposition, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut rt = RowTracker {
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
    };
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // Pivot of minimal absolute value in the trailing block.
        let pick = |d: &IntMatrix| {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pick(&d) else { break };
        d.swap_rows(t, pi);
        rt.swap(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &-&q);
                rt.add(i, t, &-&q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &-&q);
                v.add_col(j, t, &-&q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t..m {
                    let x = &d[(i, t)];
                    if !x.is_zero() && x.abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    let x = &d[(t, j)];
                    if !x.is_zero() && x.abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    rt.swap(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // Divisibility: fold an offending row into row t.
            let p = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    rt.add(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            rt.negate(t);
        }
    }
    let RowTracker { u, u_inv } = rt;
    (SnfDecomposition { u, d, v }, u_inv)
}

/// Smith normal form: U·A·V = D with d₁ | d₂ | … and U, V unimodular.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    snf_with_inverse(a).0
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare(a.rows, a.cols));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    Ok(if n == 0 {
        sign
    } else {
        sign * &m[(n - 1, n - 1)]
    })
}

/// Signature (#positive − #negative eigenvalues) of a symmetric integer matrix,
/// by exact congruence diagonalization.
pub fn signature_symmetric(a: &IntMatrix) -> Result<i64, LinAlgError> {
    if !a.is_symmetric() {
        return Err(if a.is_square() {
            LinAlgError::NotSymmetric
        } else {
            LinAlgError::NotSquare(a.rows, a.cols)
        });
    }
    let mut m = a.to_rows();
    let mut sig = 0i64;
    while !m.is_empty() {
        let n = m.len();
        let content = m.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        if content.is_zero() {
            break;
        }
        if !content.is_one() {
            for x in m.iter_mut().flatten() {
                *x /= &content;
            }
        }
        // Pivot on the smallest nonzero diagonal entry; failing that, create one.
        let piv = (0..n)
            .filter(|&i| !m[i][i].is_zero())
            .min_by_key(|&i| m[i][i].abs());
        let k = match piv {
            Some(k) => k,
            None => {
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero())
                    .expect("nonzero content");
                // Congruence by x_i -> x_i + x_j: a_ii becomes 2a_ij + a_jj = 2a_ij.
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                i
            }
        };
        let p = m[k][k].clone();
        let positive = p.is_positive();
        sig += if positive { 1 } else { -1 };
        let row = m[k].clone();
        let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        // Schur complement scaled by |p|: sign(p)·(p·a_ij − a_ik·a_kj).
        let next: Vec<Vec<BigInt>> = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| {
                        let v = &p * &m[i][j] - &row[i] * &row[j];
                        if positive {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        m = next;
    }
    Ok(sig)
}

/// Exact inverse over the rationals.
pub fn rational_inverse(a: &IntMatrix) -> Result<Vec<Vec<BigRational>>, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare(a.rows, a.cols));
    }
    let n = a.rows;
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(a[(i, j)].clone())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or(LinAlgError::Singular)?;
        m.swap(k, piv);
        let inv = m[k][k].recip();
        for x in m[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in 0..2 * n {
                    let v = &m[k][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The group coker(A) in invariant-factor form, with λ(x, y) = xᵀA⁻¹y mod 1.
pub fn cokernel_with_pairing(a: &IntMatrix) -> Result<LinkingForm, LinAlgError> {
    if !a.is_symmetric() {
        return Err(if a.is_square() {
            LinAlgError::NotSymmetric
        } else {
            LinAlgError::NotSquare(a.rows, a.cols)
        });
    }
    let inv = rational_inverse(a)?;
    let (snf, w) = snf_with_inverse(a);
    let n = a.rows;
    // U·A·V = D, so x ↦ Ux identifies coker A with ⊕ Z/dᵢ; generator i lifts to column i of U⁻¹.
    let keep: Vec<usize> = (0..n).filter(|&i| !snf.d[(i, i)].is_one()).collect();
    let mut orders = Vec::with_capacity(keep.len());
    for &i in &keep {
        let d = &snf.d[(i, i)];
        orders.push(d.to_u64().ok_or_else(|| LinAlgError::Overflow(d.clone()))?);
    }
    let col = |i: usize| -> Vec<BigRational> {
        (0..n)
            .map(|r| BigRational::from_integer(w[(r, i)].clone()))
            .collect()
    };
    let lifts: Vec<Vec<BigRational>> = keep.iter().map(|&i| col(i)).collect();
    let k = keep.len();
    let mut gram = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        let ax: Vec<BigRational> = (0..n)
            .map(|r| (0..n).fold(BigRational::zero(), |s, c| s + &inv[r][c] * &lifts[i][c]))
            .collect();
        for j in 0..k {
            let v = lifts[j]
                .iter()
                .zip(&ax)
                .fold(BigRational::zero(), |s, (x, y)| s + x * y);
            gram[i][j] = v.clone() - v.floor();
        }
    }
    LinkingForm::from_rationals(orders, &gram).map_err(|_| LinAlgError::Singular)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_snf(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(determinant(&s.u).unwrap().abs(), BigInt::one());
        assert_eq!(determinant(&s.v).unwrap().abs(), BigInt::one());
        let diag = s.invariant_factors();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            smith_normal_form(&IntMatrix::identity(3)).d,
            IntMatrix::identity(3)
        );
        assert_eq!(
            smith_normal_form(&m(&[vec![2, 0], vec![0, 3]])).d,
            m(&[vec![1, 0], vec![0, 6]])
        );
        assert_eq!(
            smith_normal_form(&m(&[vec![-2, 1], vec![1, -2]])).d,
            m(&[vec![1, 0], vec![0, 3]])
        );
        check_snf(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        check_snf(&m(&[vec![0, 0], vec![0, 0], vec![1, 2]]));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
        assert_eq!(determinant(&m(&[vec![3]])).unwrap(), BigInt::from(3));
        assert_eq!(
            determinant(&m(&[vec![-2, 1], vec![1, -2]])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            determinant(&m(&[vec![0, 1], vec![1, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert!(determinant(&m(&[vec![1, 2]])).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            signature_symmetric(&m(&[vec![1, 0], vec![0, -1]])).unwrap(),
            0
        );
        assert_eq!(
            signature_symmetric(&m(&[vec![-2, 1], vec![1, -2]])).unwrap(),
            -2
        );
        assert_eq!(
            signature_symmetric(&m(&[vec![2, 1], vec![1, 2]])).unwrap(),
            2
        );
        assert_eq!(
            signature_symmetric(&m(&[vec![0, 1], vec![1, 0]])).unwrap(),
            0
        );
        assert_eq!(
            signature_symmetric(&m(&[vec![0, 0], vec![0, 0]])).unwrap(),
            0
        );
        assert!(signature_symmetric(&m(&[vec![0, 1], vec![0, 0]])).is_err());
    }

    #[test]
    fn cokernel_examples() {
        let f = cokernel_with_pairing(&m(&[vec![3]])).unwrap();
        assert_eq!(f.to_string(), "group=[3] gram=[[1/3]]");
        let f = cokernel_with_pairing(&m(&[vec![-2, 1], vec![1, -2]])).unwrap();
        assert_eq!(f.orders(), &[3]);
        assert!(
            f.to_string() == "group=[3] gram=[[1/3]]" || f.to_string() == "group=[3] gram=[[2/3]]"
        );
        let f = cokernel_with_pairing(&m(&[vec![5, 0], vec![0, 5]])).unwrap();
        assert_eq!(f.to_string(), "group=[5,5] gram=[[1/5,0/1],[0/1,1/5]]");
        assert!(cokernel_with_pairing(&m(&[vec![1, 1], vec![1, 1]])).is_err());
    }
}
