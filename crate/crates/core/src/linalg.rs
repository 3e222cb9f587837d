//! Dense and banded direct solvers.
//!
//! Enriched systems are dense (corrector rows couple to everything) and
//! stay at desk scale, so a row-major dense LU with partial pivoting plus
//! one step of iterative refinement covers them. Reference solves on
//! Shishkin meshes are large but banded (tridiagonal in 1D, bandwidth
//! `nx + 1` for the lexicographic 2D tensor grid) and use a LAPACK-style
//! band factorization with partial pivoting and `kl` fill rows.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SolveError {
    #[error("matrix is singular to working precision at pivot column {column}")]
    Singular { column: usize },
    #[error("dimension mismatch: matrix is {rows}x{cols}, vector has {len}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        len: usize,
    },
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        DenseMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `out = A x`.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(out.len(), self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            *o = acc;
        }
    }

    /// Coordinate-format text export (1-based indices, zeros skipped).
    pub fn to_matrix_market(&self) -> String {
        let mut body = String::new();
        let mut nnz = 0usize;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0.0 {
                    nnz += 1;
                    let _ = writeln!(body, "{} {} {v}", i + 1, j + 1);
                }
            }
        }
        let mut out = String::from("%%MatrixMarket matrix coordinate real general\n");
        let _ = writeln!(out, "{} {} {nnz}", self.rows, self.cols);
        out.push_str(&body);
        out
    }
}

/// LU factors of a dense square matrix, with the pivot sequence.
#[derive(Clone, Debug)]
pub struct LuFactors {
    lu: DenseMatrix,
    ipiv: Vec<usize>,
    /// max |U| / max |A|, the pivot growth factor.
    growth: f64,
}

impl LuFactors {
    pub fn factor(a: &DenseMatrix) -> Result<Self, SolveError> {
        assert_eq!(a.rows, a.cols, "LU needs a square matrix");
        let n = a.rows;
        let mut lu = a.clone();
        let mut ipiv = vec![0usize; n];
        let max_a = lu.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for k in 0..n {
            let mut p = k;
            let mut best = lu.get(k, k).abs();
            for i in k + 1..n {
                let v = lu.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(SolveError::Singular { column: k });
            }
            ipiv[k] = p;
            if p != k {
                for j in 0..n {
                    let tmp = lu.get(k, j);
                    lu.set(k, j, lu.get(p, j));
                    lu.set(p, j, tmp);
                }
            }
            let pivot = lu.get(k, k);
            for i in k + 1..n {
                let l = lu.get(i, k) / pivot;
                lu.set(i, k, l);
                if l != 0.0 {
                    let (head, tail) = lu.data.split_at_mut(i * n);
                    let row_k = &head[k * n..k * n + n];
                    let row_i = &mut tail[..n];
                    for j in k + 1..n {
                        row_i[j] -= l * row_k[j];
                    }
                }
            }
        }
        let max_u = {
            let mut m = 0.0f64;
            for i in 0..n {
                for j in i..n {
                    m = m.max(lu.get(i, j).abs());
                }
            }
            m
        };
        Ok(LuFactors {
            lu,
            ipiv,
            growth: if max_a > 0.0 { max_u / max_a } else { 1.0 },
        })
    }

    pub fn n(&self) -> usize {
        self.lu.rows
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.ipiv[k]);
        }
        // forward (unit lower)
        for i in 1..n {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for (j, xv) in x[..i].iter().enumerate() {
                acc -= row[j] * xv;
            }
            x[i] = acc;
        }
        // backward (upper)
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= row[j] * x[j];
            }
            x[i] = acc / row[i];
        }
        x
    }

    /// Growth-scaled diagonal ratio, a cheap stand-in for the condition
    /// number; reliable as an order-of-magnitude warning only.
    pub fn condition_proxy(&self) -> f64 {
        let n = self.n();
        let mut dmax = 0.0f64;
        let mut dmin = f64::INFINITY;
        for i in 0..n {
            let d = self.lu.get(i, i).abs();
            dmax = dmax.max(d);
            dmin = dmin.min(d);
        }
        self.growth * dmax / dmin
    }

    pub fn growth(&self) -> f64 {
        self.growth
    }
}

/// Result of a dense direct solve with one refinement pass.
#[derive(Clone, Debug)]
pub struct DirectSolve {
    pub coefficients: Vec<f64>,
    /// Infinity norm of `A x - f` after refinement.
    pub residual_inf: f64,
    /// Set when the condition proxy exceeds 1e14.
    pub condition_warning: Option<f64>,
}

/// LU solve with partial pivoting and one iterative-refinement step.
///
/// The refined residual satisfies `|A x - f|_inf <= 1e-10 (1 + |f|_inf)`
/// for the systems assembled in this crate; callers can check
/// `residual_inf` when they need the guarantee.
pub fn solve_direct(a: &DenseMatrix, f: &[f64]) -> Result<DirectSolve, SolveError> {
    if a.rows != a.cols || f.len() != a.rows {
        return Err(SolveError::DimensionMismatch {
            rows: a.rows,
            cols: a.cols,
            len: f.len(),
        });
    }
    let factors = LuFactors::factor(a)?;
    Ok(solve_refined(a, &factors, f))
}

/// Solve + one refinement step with precomputed factors (for batches of
/// right-hand sides sharing one matrix).
pub fn solve_refined(a: &DenseMatrix, factors: &LuFactors, f: &[f64]) -> DirectSolve {
    let n = f.len();
    let mut x = factors.solve(f);
    let mut ax = vec![0.0; n];
    a.matvec(&x, &mut ax);
    let mut r = vec![0.0; n];
    for i in 0..n {
        r[i] = f[i] - ax[i];
    }
    let dx = factors.solve(&r);
    for i in 0..n {
        x[i] += dx[i];
    }
    a.matvec(&x, &mut ax);
    let mut resid = 0.0f64;
    for i in 0..n {
        resid = resid.max((f[i] - ax[i]).abs());
    }
    let proxy = factors.condition_proxy();
    DirectSolve {
        coefficients: x,
        residual_inf: resid,
        condition_warning: (proxy > 1e14).then_some(proxy),
    }
}

/// Band matrix in LAPACK `gb` storage with `kl` fill rows: element
/// `(i, j)` lives at `data[j * ldab + (i - j + kl + ku)]`,
/// `ldab = 2 kl + ku + 1`.
#[derive(Clone, Debug)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        BandedMatrix {
            n,
            kl,
            ku,
            ldab,
            data: vec![0.0; ldab * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i + self.ku + self.kl >= j && j + self.kl >= i, "outside band");
        j * self.ldab + (i + self.kl + self.ku - j)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i + self.ku + self.kl < j || j + self.kl < i {
            return 0.0;
        }
        self.data[self.slot(i, j)]
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.data[s] = v;
    }

    /// In-place band LU with partial pivoting (unblocked `gbtf2` scheme).
    pub fn factor(mut self) -> Result<BandedLu, SolveError> {
        let (n, kl, ku, ldab) = (self.n, self.kl, self.ku, self.ldab);
        let kv = kl + ku; // superdiagonals including fill
        let mut ipiv = vec![0usize; n];
        let mut ju = 0usize; // last column updated so far
        for k in 0..n {
            let km = kl.min(n - 1 - k);
            // pivot search in column k, rows k..=k+km
            let mut p = 0usize;
            let mut best = 0.0f64;
            for i in 0..=km {
                // slot(k+i, k) = k*ldab + kv + i
                let v = self.data[k * ldab + kv + i].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(SolveError::Singular { column: k });
            }
            ipiv[k] = k + p;
            ju = ju.max((k + ku + p).min(n - 1));
            if p != 0 {
                // swap rows k and k+p across columns k..=ju
                for j in k..=ju {
                    let s1 = self.slot(k, j);
                    let s2 = self.slot(k + p, j);
                    self.data.swap(s1, s2);
                }
            }
            let pivot = self.data[k * ldab + kv];
            for i in 1..=km {
                self.data[k * ldab + kv + i] /= pivot;
            }
            for j in k + 1..=ju {
                let f = self.data[j * ldab + (k + kl + ku - j)];
                if f != 0.0 {
                    let col_k = k * ldab + kv;
                    let col_j = j * ldab + (k + kl + ku - j);
                    for i in 1..=km {
                        self.data[col_j + i] -= self.data[col_k + i] * f;
                    }
                }
            }
        }
        Ok(BandedLu {
            mat: self,
            ipiv,
        })
    }
}

/// Factored band matrix.
#[derive(Clone, Debug)]
pub struct BandedLu {
    mat: BandedMatrix,
    ipiv: Vec<usize>,
}

impl BandedLu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let m = &self.mat;
        let (n, kl, ku) = (m.n, m.kl, m.ku);
        let kv = kl + ku;
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        // L solve with row swaps interleaved, as stored
        for k in 0..n {
            let p = self.ipiv[k];
            if p != k {
                x.swap(k, p);
            }
            let km = kl.min(n - 1 - k);
            let base = k * m.ldab + kv;
            let xk = x[k];
            if xk != 0.0 {
                for i in 1..=km {
                    x[k + i] -= m.data[base + i] * xk;
                }
            }
        }
        // U solve, bandwidth kv
        for k in (0..n).rev() {
            let mut acc = x[k];
            for j in k + 1..n.min(k + kv + 1) {
                acc -= m.data[j * m.ldab + (k + kv - j)] * x[j];
            }
            x[k] = acc / m.data[k * m.ldab + kv];
        }
        x
    }
}
