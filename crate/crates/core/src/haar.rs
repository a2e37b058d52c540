//! Numerical integration over SU(2) and over maximal tori.
//!
//! The SU(2) rule writes `g = [[a, -conj(b)], [b, conj(a)]]` with
//! `a = √t e^{iφ}`, `b = √(1-t) e^{iψ}`; normalized Haar measure is uniform in
//! `t ∈ [0,1]` and both phases. It uses Gauss-Legendre nodes in `t` and the
//! trapezoid rule in the phases, so it is exact for polynomials in the matrix
//! entries of total degree below the resolution.
//!
//! Class functions on any `SU(n)` are integrated by Weyl's formula
//! `(1/|W|) ∫_T f |δ|² dq/(2π)^r` with a Gauss-Legendre product rule.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lie::{weyl_denominator, CartanPoint, HighestWeight, RootSystem};
use crate::linalg::{CMatrix, CVector};
use crate::scalar::Real;
use crate::tensor::{cg_intertwiner, invariant_vectors, su2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    EulerGrid,
    TorusGauss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub resolution: usize,
}

impl QuadratureSpec {
    pub fn group(resolution: usize) -> Self {
        Self { scheme: Scheme::EulerGrid, resolution }
    }

    pub fn torus(resolution: usize) -> Self {
        Self { scheme: Scheme::TorusGauss, resolution }
    }

    pub fn reported_error_model(&self) -> String {
        match self.scheme {
            Scheme::EulerGrid => format!(
                "exact (to rounding) for polynomials in matrix entries of degree < {}; \
                 exponential convergence for analytic integrands",
                self.resolution
            ),
            Scheme::TorusGauss => format!(
                "Gauss-Legendre product rule with {} nodes per angle; exponential convergence \
                 for trigonometric integrands, rounding-level once frequencies are resolved",
                self.resolution
            ),
        }
    }
}

/// Values that can be summed with real weights.
pub trait Accumulate<T>: Send + Sized {
    fn scaled(self, w: T) -> Self;
    fn add_scaled(&mut self, other: Self, w: T);
}

impl<T: Real> Accumulate<T> for Complex<T> {
    fn scaled(self, w: T) -> Self {
        self * w
    }
    fn add_scaled(&mut self, other: Self, w: T) {
        *self += other * w;
    }
}

macro_rules! accumulate_float {
    ($($t:ty),*) => {$(
        impl Accumulate<$t> for $t {
            fn scaled(self, w: $t) -> Self {
                self * w
            }
            fn add_scaled(&mut self, other: Self, w: $t) {
                *self += other * w;
            }
        }
    )*};
}

accumulate_float!(f32, f64);

impl<T: Real> Accumulate<T> for CMatrix<T> {
    fn scaled(self, w: T) -> Self {
        self.scale_real(w)
    }
    fn add_scaled(&mut self, other: Self, w: T) {
        CMatrix::add_scaled(self, &other, Complex::new(w, T::zero()));
    }
}

impl<T: Real> Accumulate<T> for CVector<T> {
    fn scaled(self, w: T) -> Self {
        self.into_iter().map(|z| z * w).collect()
    }
    fn add_scaled(&mut self, other: Self, w: T) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b * w;
        }
    }
}

const CHUNK: usize = 256;

/// Weighted sum over nodes, parallel over fixed-size chunks and reduced in
/// chunk order so the result does not depend on the thread count.
pub fn weighted_sum<P, T, V, F>(nodes: &[(P, T)], f: F) -> V
where
    P: Sync,
    T: Real,
    V: Accumulate<T>,
    F: Fn(&P) -> V + Sync,
{
    assert!(!nodes.is_empty(), "empty quadrature rule");
    let partial: Vec<V> = nodes
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut iter = chunk.iter();
            let (p, w) = iter.next().expect("non-empty chunk");
            let mut acc = f(p).scaled(*w);
            for (p, w) in iter {
                acc.add_scaled(f(p), *w);
            }
            acc
        })
        .collect();
    let mut iter = partial.into_iter();
    let mut total = iter.next().expect("non-empty");
    for v in iter {
        total.add_scaled(v, T::one());
    }
    total
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes.into_iter().map(T::lit).collect(), weights.into_iter().map(T::lit).collect())
}

/// Nodes and weights of the SU(2) product rule (`n³` points, weights summing
/// to one).
pub fn su2_grid<T: Real>(n: usize) -> Vec<(CMatrix<T>, T)> {
    let (x, w) = gauss_legendre::<f64>(n);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(n * n * n);
    for (xi, wi) in x.iter().zip(&w) {
        let t = 0.5 * (xi + 1.0);
        let weight = 0.5 * wi / (n * n) as f64;
        for j in 0..n {
            let phi = two_pi * j as f64 / n as f64;
            for k in 0..n {
                let psi = two_pi * k as f64 / n as f64;
                let a = Complex::from_polar(T::lit(t.sqrt()), T::lit(phi));
                let b = Complex::from_polar(T::lit((1.0 - t).sqrt()), T::lit(psi));
                out.push((su2::element(a, b), T::lit(weight)));
            }
        }
    }
    out
}

/// Weyl-integration rule on the maximal torus of `rs`; weights include
/// `|δ|²/(|W| (2π)^r)` and sum to one.
pub fn torus_rule<T: Real>(rs: &RootSystem, n: usize) -> Vec<(CartanPoint<T>, T)> {
    let r = rs.rank();
    let (x, w) = gauss_legendre::<f64>(n);
    let pi = std::f64::consts::PI;
    let weyl = rs.weyl_order() as f64;
    let mut out = Vec::with_capacity(n.pow(r as u32));
    let mut idx = vec![0usize; r];
    loop {
        let angles: Vec<T> = idx.iter().map(|&i| T::lit(pi * (x[i] + 1.0))).collect();
        let weight: f64 = idx.iter().map(|&i| 0.5 * w[i]).product();
        let q = CartanPoint::new(angles);
        let d = weyl_denominator(rs, &q).norm_sqr();
        out.push((q, d * T::lit(weight / weyl)));
        let mut pos = 0;
        while pos < r {
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
    }
    out
}

/// Haar integral over SU(2).
pub fn integrate_group<T, V, F>(spec: &QuadratureSpec, f: F) -> V
where
    T: Real,
    V: Accumulate<T>,
    F: Fn(&CMatrix<T>) -> V + Sync,
{
    weighted_sum(&su2_grid::<T>(spec.resolution), f)
}

/// Haar integral of a class function given by its torus values.
pub fn integrate_class<T, V, F>(rs: &RootSystem, spec: &QuadratureSpec, f: F) -> V
where
    T: Real,
    V: Accumulate<T>,
    F: Fn(&CartanPoint<T>) -> V + Sync,
{
    weighted_sum(&torus_rule::<T>(rs, spec.resolution), f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Integ2,
    Integ3,
    Projector,
}

impl std::str::FromStr for Identity {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integ-2" => Ok(Self::Integ2),
            "integ-3" => Ok(Self::Integ3),
            "projector" => Ok(Self::Projector),
            other => Err(invalid(format!("unknown identity {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub reps: Vec<usize>,
    pub resolution: usize,
    pub residual: f64,
}

/// Max-entry residual between the quadrature of a Haar identity and its
/// closed form.
///
/// - `integ-2` `(λ, μ)`: `∫ π^λ(h⁻¹)_{ij} π^μ(h)_{kl} = δ_{λμ} δ_{il} δ_{jk} / dim λ`;
/// - `integ-3` `(μ₁, μ₂, μ₃)`: `∫ π^{μ₁}(h⁻¹)_{ij} π^{μ₂}(h)_{kl} π^{μ₃}(h)_{st}
///   = c_{(ks)j} conj(c_{(lt)i}) / dim μ₁` with `c` the normalized intertwiner
///   `V_{μ₁} → V_{μ₂} ⊗ V_{μ₃}`;
/// - `projector` `(μ₁, …, μ_m)`: `∫ ⊗ π^{μ_i}(h) = P₀`.
pub fn verify_identity<T: Real>(which: &Identity, reps: &[usize], spec: &QuadratureSpec) -> Result<IdentityReport> {
    let expected_len = match which {
        Identity::Integ2 => Some(2),
        Identity::Integ3 => Some(3),
        Identity::Projector => None,
    };
    if let Some(n) = expected_len {
        if reps.len() != n {
            return Err(invalid(format!("{which:?} needs {n} representations, got {}", reps.len())));
        }
    }
    if reps.is_empty() {
        return Err(invalid("projector identity needs at least one representation"));
    }
    let quad: CMatrix<T> = integrate_group(spec, |h: &CMatrix<T>| {
        let hinv = h.adjoint();
        match which {
            Identity::Integ2 | Identity::Integ3 => reps[1..]
                .iter()
                .fold(su2::rep(reps[0], &hinv), |acc, &m| acc.kron(&su2::rep(m, h))),
            Identity::Projector => reps[1..].iter().fold(su2::rep(reps[0], h), |acc, &m| acc.kron(&su2::rep(m, h))),
        }
    });
    let exact = match which {
        Identity::Integ2 => integ2_closed_form::<T>(reps[0], reps[1]),
        Identity::Integ3 => integ3_closed_form::<T>(reps[0], reps[1], reps[2]),
        Identity::Projector => invariant_projector::<T>(reps),
    };
    Ok(IdentityReport {
        identity: which.clone(),
        reps: reps.to_vec(),
        resolution: spec.resolution,
        residual: quad.dist(&exact).to_f64().unwrap_or(f64::NAN),
    })
}

fn integ2_closed_form<T: Real>(l: usize, m: usize) -> CMatrix<T> {
    let (dl, dm) = (l + 1, m + 1);
    CMatrix::from_fn(dl * dm, dl * dm, |row, col| {
        let (i, k) = (row / dm, row % dm);
        let (j, ll) = (col / dm, col % dm);
        if l == m && i == ll && j == k {
            Complex::new(T::one() / T::lit(dl as f64), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

fn integ3_closed_form<T: Real>(m1: usize, m2: usize, m3: usize) -> CMatrix<T> {
    let (d1, d2, d3) = (m1 + 1, m2 + 1, m3 + 1);
    let n = d1 * d2 * d3;
    let c = match cg_intertwiner::<T>(&HighestWeight::su2(m1 as u32), &HighestWeight::su2(m2 as u32), &HighestWeight::su2(m3 as u32)) {
        Ok(c) => c.matrix,
        Err(_) => return CMatrix::zeros(n, n),
    };
    let inv = T::one() / T::lit(d1 as f64);
    CMatrix::from_fn(n, n, |row, col| {
        let (i, k, s) = (row / (d2 * d3), (row / d3) % d2, row % d3);
        let (j, l, t) = (col / (d2 * d3), (col / d3) % d2, col % d3);
        c[(k * d3 + s, j)] * c[(l * d3 + t, i)].conj() * inv
    })
}

/// Orthogonal projector onto the invariants of `⊗ V_{m_i}`.
pub fn invariant_projector<T: Real>(reps: &[usize]) -> CMatrix<T> {
    let legs: Vec<(usize, bool)> = reps.iter().map(|&m| (m, true)).collect();
    let n: usize = reps.iter().map(|m| m + 1).product();
    let mut p = CMatrix::zeros(n, n);
    for v in invariant_vectors::<T>(&legs) {
        let col = CMatrix::column(&v);
        p = &p + &(&col * &col.adjoint());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre::<f64>(7);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((m - 2.0 / 13.0).abs() < 1e-14);
    }

    #[test]
    fn normalizations() {
        let one: Complex<f64> = integrate_group(&QuadratureSpec::group(8), |_| Complex::new(1.0, 0.0));
        assert!((one.re - 1.0).abs() < 1e-12);
        let rs = RootSystem::su(3).unwrap();
        let one: Complex<f64> = integrate_class(&rs, &QuadratureSpec::torus(24), |_| Complex::new(1.0, 0.0));
        assert!((one.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_element_vanishes() {
        let spec = QuadratureSpec::group(8);
        let z: Complex<f64> = integrate_group(&spec, |h| su2::rep(1, h)[(0, 0)]);
        assert!(z.norm() < 1e-14);
        let c: Complex<f64> = integrate_group(&spec, |h| {
            let x = h.trace();
            x * x.conj()
        });
        assert!((c.re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn identity_argument_checks() {
        let spec = QuadratureSpec::group(8);
        assert!(verify_identity::<f64>(&Identity::Integ2, &[1], &spec).is_err());
        assert!(verify_identity::<f64>(&Identity::Integ3, &[1, 1], &spec).is_err());
        assert!(verify_identity::<f64>(&Identity::Projector, &[], &spec).is_err());
    }
}
