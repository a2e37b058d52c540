//! Explicit SU(2) representations in orthonormal weight bases.
//!
//! `V_m` has basis `v_0, …, v_m` with `h v_k = (m - 2k) v_k`; `e` raises and
//! `f` lowers with non-negative real matrix elements.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::CMatrix;
use crate::scalar::Real;

/// Lie algebra generators `(e, f, h)` of `V_m`.
pub fn generators<T: Real>(m: usize) -> (CMatrix<T>, CMatrix<T>, CMatrix<T>) {
    let d = m + 1;
    let mut e = CMatrix::zeros(d, d);
    let mut f = CMatrix::zeros(d, d);
    let mut h = CMatrix::zeros(d, d);
    for k in 0..d {
        h[(k, k)] = Complex::new(T::lit(m as f64 - 2.0 * k as f64), T::zero());
        if k >= 1 {
            let x = T::lit((k * (m - k + 1)) as f64).sqrt();
            e[(k - 1, k)] = Complex::new(x, T::zero());
            f[(k, k - 1)] = Complex::new(x, T::zero());
        }
    }
    (e, f, h)
}

/// Torus element `diag(e^{iθ}, e^{-iθ})` in `V_m`.
pub fn torus<T: Real>(m: usize, theta: T) -> CMatrix<T> {
    let entries: Vec<Complex<T>> =
        (0..=m).map(|k| Complex::from_polar(T::one(), T::lit(m as f64 - 2.0 * k as f64) * theta)).collect();
    CMatrix::diagonal(&entries)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `π^m(g)` for a 2x2 matrix `g`, realized on homogeneous polynomials of
/// degree `m`.
pub fn rep<T: Real>(m: usize, g: &CMatrix<T>) -> CMatrix<T> {
    let (a, b, c, d) = (g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]);
    let pow = |z: Complex<T>, n: usize| -> Vec<Complex<T>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = Complex::<T>::one();
        for _ in 0..=n {
            out.push(acc);
            acc *= z;
        }
        out
    };
    let (pa, pb, pc, pd) = (pow(a, m), pow(b, m), pow(c, m), pow(d, m));
    let norms: Vec<T> = (0..=m).map(|k| T::lit(binomial(m, k)).sqrt()).collect();
    let mut out = CMatrix::zeros(m + 1, m + 1);
    for k in 0..=m {
        // (a x + c y)^{m-k} (b x + d y)^k
        for i in 0..=m - k {
            let left = pa[m - k - i] * pc[i] * T::lit(binomial(m - k, i));
            for j in 0..=k {
                let right = pb[k - j] * pd[j] * T::lit(binomial(k, j));
                out[(i + j, k)] += left * right;
            }
        }
        for l in 0..=m {
            out[(l, k)] = out[(l, k)] * norms[k] / norms[l];
        }
    }
    out
}

/// `[[a, -conj(b)], [b, conj(a)]]` for `|a|² + |b|² = 1`.
pub fn element<T: Real>(a: Complex<T>, b: Complex<T>) -> CMatrix<T> {
    CMatrix::from_vec(2, 2, vec![a, -b.conj(), b, a.conj()])
}

pub fn diag<T: Real>(theta: T) -> CMatrix<T> {
    torus(1, theta)
}

/// Representative `[[0, -1], [1, 0]]` of the nontrivial Weyl element.
pub fn weyl_lift<T: Real>() -> CMatrix<T> {
    let (z, o) = (Complex::zero(), Complex::one());
    CMatrix::from_vec(2, 2, vec![z, -o, o, z])
}

/// Haar-random SU(2) element from a normalized Gaussian 4-vector.
pub fn random<T: Real, R: Rng + ?Sized>(rng: &mut R) -> CMatrix<T> {
    loop {
        let v: [f64; 4] = [gauss(rng), gauss(rng), gauss(rng), gauss(rng)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            let a = Complex::new(T::lit(v[0] / n), T::lit(v[1] / n));
            let b = Complex::new(T::lit(v[2] / n), T::lit(v[3] / n));
            return element(a, b);
        }
    }
}

fn gauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Real character `χ_m` as a function of `x = tr(g)`, via the Chebyshev
/// recursion `U_m(x/2)`.
pub fn character_of_trace<T: Real>(m: usize, x: T) -> T {
    let (mut prev, mut cur) = (T::one(), x);
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Embed an operator acting on factor `pos` of `⊗ V_{dims}`.
pub fn embed<T: Real>(op: &CMatrix<T>, dims: &[usize], pos: usize) -> CMatrix<T> {
    dims.iter().enumerate().fold(CMatrix::identity(1), |acc, (i, &d)| {
        if i == pos {
            acc.kron(op)
        } else {
            acc.kron(&CMatrix::identity(d))
        }
    })
}

/// Embed `a ⊗ b` acting on factors `i` and `k` (`i ≠ k`) of `⊗ V_{dims}`.
pub fn embed_pair<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, dims: &[usize], i: usize, k: usize) -> CMatrix<T> {
    assert_ne!(i, k, "pair must act on distinct factors");
    dims.iter().enumerate().fold(CMatrix::identity(1), |acc, (p, &d)| {
        if p == i {
            acc.kron(a)
        } else if p == k {
            acc.kron(b)
        } else {
            acc.kron(&CMatrix::identity(d))
        }
    })
}
