//! Small dense square matrices over [`LaurentPoly`] and the division-free
//! characteristic polynomial.

use std::ops::Mul;

use crate::ring::LaurentPoly;
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![LaurentPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows do not form a square.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Companion matrix of a monic polynomial of positive degree `d`: ones on
    /// the superdiagonal and the negated low coefficients in the last row, so
    /// that it advances the window `(s_n, .., s_{n+d-1})` by one step.
    pub fn companion(f: &UPoly) -> Self {
        assert!(f.is_monic(), "companion matrix needs a monic polynomial");
        let d = f.degree().expect("monic polynomial is nonzero");
        assert!(d >= 1, "companion matrix needs positive degree");
        let mut m = Self::zero(d);
        for i in 0..d - 1 {
            m.set(i, i + 1, LaurentPoly::one());
        }
        for j in 0..d {
            m.set(d - 1, j, -f.coeff(j));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn trace(&self) -> LaurentPoly {
        let mut t = LaurentPoly::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let n = self.n * other.n;
        let mut out = Matrix::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.n + k, j * other.n + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The submatrix with the first row and column removed.
    fn trailing_minor(&self) -> Matrix {
        let m = self.n - 1;
        let mut out = Matrix::zero(m);
        for i in 0..m {
            for j in 0..m {
                out.set(i, j, self.get(i + 1, j + 1).clone());
            }
        }
        out
    }

    fn mul_vec(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        (0..self.n)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect()
    }

    /// Monic characteristic polynomial `det(x I - M)` by Berkowitz's
    /// algorithm. Uses only ring operations, so no fractions appear.
    pub fn charpoly(&self) -> UPoly {
        // Coefficient vectors are kept highest degree first.
        let mut vector = vec![LaurentPoly::one()];
        if self.n == 0 {
            return UPoly::one();
        }
        // Minors from the bottom-right corner outward.
        let mut minors = Vec::with_capacity(self.n);
        let mut cur = self.clone();
        minors.push(cur.clone());
        while cur.n > 1 {
            cur = cur.trailing_minor();
            minors.push(cur.clone());
        }
        for m in minors.iter().rev() {
            vector = m.toeplitz_times(&vector);
        }
        UPoly::from_coeffs_high(vector)
    }

    /// Multiplies the Berkowitz Toeplitz matrix of `self` by `v`, the
    /// coefficient vector of the trailing minor.
    fn toeplitz_times(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let n = self.n;
        debug_assert_eq!(v.len(), n);
        let a = self.get(0, 0).clone();
        let mut diags = vec![LaurentPoly::one(), -a];
        if n > 1 {
            let minor = self.trailing_minor();
            let row: Vec<LaurentPoly> = (1..n).map(|j| self.get(0, j).clone()).collect();
            let mut col: Vec<LaurentPoly> = (1..n).map(|i| self.get(i, 0).clone()).collect();
            for step in 0..n - 1 {
                if step > 0 {
                    col = minor.mul_vec(&col);
                }
                let mut dot = LaurentPoly::zero();
                for (r, c) in row.iter().zip(col.iter()) {
                    if !r.is_zero() && !c.is_zero() {
                        dot += &(r * c);
                    }
                }
                diags.push(-dot);
            }
        }
        (0..=n)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    let t = &diags[i - j];
                    if !t.is_zero() && !vj.is_zero() {
                        acc += &(t * vj);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.entries[i * n + j] + &(a * b);
                        out.entries[i * n + j] = cur;
                    }
                }
            }
        }
        out
    }
}
