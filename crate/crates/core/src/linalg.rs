//! Small dense complex matrices and vectors.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

pub type CVector<T> = Vec<Complex<T>>;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn column(v: &[Complex<T>]) -> Self {
        Self::from_vec(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn col(&self, j: usize) -> CVector<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, s: Complex<T>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> CVector<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Largest singular value by power iteration on `A^† A`.
    pub fn op_norm(&self) -> T {
        if self.data.is_empty() {
            return T::zero();
        }
        let ata = &self.adjoint() * self;
        let mut v: CVector<T> = (0..self.cols)
            .map(|i| Complex::new(T::one(), T::lit(0.1 * i as f64)))
            .collect();
        let mut lambda = T::zero();
        for _ in 0..500 {
            let w = ata.mul_vec(&v);
            let n = norm(&w);
            if n == T::zero() {
                return T::zero();
            }
            let next = n / norm(&v);
            v = w.into_iter().map(|z| z / n).collect();
            if (next - lambda).abs() <= T::epsilon() * next * T::lit(4.0) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        lambda.sqrt()
    }

    pub fn dist(&self, other: &Self) -> T {
        (self - other).max_abs()
    }

    /// Orthonormal basis of the null space, computed by Gaussian elimination
    /// with partial pivoting followed by Gram-Schmidt.
    pub fn nullspace(&self, tol: T) -> Vec<CVector<T>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let scale = a.max_abs().max(T::one());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let (best, val) = (row..m)
                .map(|r| (r, a[(r, col)].norm()))
                .fold((row, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if val <= tol * scale {
                continue;
            }
            a.swap_rows(row, best);
            let p = a[(row, col)];
            for j in col..n {
                a[(row, j)] = a[(row, j)] / p;
            }
            for r in 0..m {
                if r != row {
                    let f = a[(r, col)];
                    if f != Complex::zero() {
                        for j in col..n {
                            let x = a[(row, j)];
                            a[(r, j)] -= f * x;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<CVector<T>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Complex::zero(); n];
                v[fc] = Complex::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(r, fc)];
                }
                v
            })
            .collect();
        gram_schmidt(raw, tol)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex::zero() {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

/// Hermitian inner product `Σ conj(a_i) b_i`.
pub fn vdot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (x, &y)| acc + x.conj() * y)
}

pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

pub fn sub_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> CVector<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn scale_vec<T: Real>(v: &[Complex<T>], s: Complex<T>) -> CVector<T> {
    v.iter().map(|&x| x * s).collect()
}

pub fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> CVector<T> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Modified Gram-Schmidt; vectors whose residual norm falls below `tol`
/// (relative to their original norm) are dropped.
pub fn gram_schmidt<T: Real>(vectors: Vec<CVector<T>>, tol: T) -> Vec<CVector<T>> {
    let mut basis: Vec<CVector<T>> = Vec::new();
    for mut v in vectors {
        let n0 = norm(&v);
        for _ in 0..2 {
            for b in &basis {
                let c = vdot(b, &v);
                for (x, &y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let n = norm(&v);
        if n > tol * n0.max(T::one()) {
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    basis
}

/// Rotate `v` so that its first entry of largest modulus (up to a relative
/// slack) is real and positive.
pub fn fix_phase<T: Real>(v: &mut [Complex<T>]) {
    let max = v.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    if max == T::zero() {
        return;
    }
    if let Some(z) = v.iter().find(|z| z.norm() >= max * T::lit(0.5)).copied() {
        let phase = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn product_and_kron_shapes() {
        let a = CMatrix::from_fn(2, 3, |i, j| c((i + j) as f64, 0.0));
        let b = CMatrix::from_fn(3, 1, |i, _| c(i as f64, 1.0));
        let p = &a * &b;
        assert_eq!((p.rows(), p.cols()), (2, 1));
        assert_eq!(p[(0, 0)], c(0.0 + 1.0 + 4.0, 0.0 + 1.0 + 2.0));
        let k = a.kron(&CMatrix::identity(2));
        assert_eq!((k.rows(), k.cols()), (4, 6));
        assert_eq!(k[(2, 4)], a[(1, 2)]);
        assert_eq!(k[(3, 4)], c(0.0, 0.0));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = CMatrix::from_vec(1, 3, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(norm(&m.mul_vec(v)) < 1e-12);
            assert!((norm(v) - 1.0).abs() < 1e-12);
        }
        assert!(vdot(&ns[0], &ns[1]).norm() < 1e-12);
    }

    #[test]
    fn op_norm_of_diagonal() {
        let d = CMatrix::diagonal(&[c(1.0, 0.0), c(0.0, -3.0), c(2.0, 0.0)]);
        assert!((d.op_norm() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn phase_fixing() {
        let mut v = vec![c(0.0, 0.1), c(0.0, -2.0), c(1.0, 0.0)];
        fix_phase(&mut v);
        assert!(v[1].im.abs() < 1e-15 && v[1].re > 0.0);
    }
}
