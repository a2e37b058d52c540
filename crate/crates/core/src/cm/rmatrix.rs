//! Felder's dynamical r-matrix for SU(2) spins and its structural identities.
//!
//! With `h = h_α = e^{i(α,q)}`,
//! `r(q) = -¼ H⊗H - f⊗e/(1 - h⁻¹) - e⊗f/(1 - h)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lie::{CartanPoint, HighestWeight, RootSystem};
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::tensor::{su2, Intertwiner};

/// `r_{ik}(q)` embedded in `⊗ V_{μ}` with its first leg on factor `i`.
#[derive(Clone, Debug)]
pub struct DynamicalR<T> {
    pub q: CartanPoint<T>,
    pub pair: (usize, usize),
    pub matrix: CMatrix<T>,
}

fn check_regular<T: Real>(q: &CartanPoint<T>) -> Result<()> {
    if q.rank() != 1 {
        return Err(Error::Unsupported("dynamical r-matrices are implemented for SU(2)".into()));
    }
    if !RootSystem::su2().is_regular(q, T::lit(1e-9)) {
        return Err(Error::Singular(format!("q = {:?} lies on a root hyperplane", q.angles[0].to_f64())));
    }
    Ok(())
}

fn h_alpha<T: Real>(q: &CartanPoint<T>) -> Complex<T> {
    Complex::from_polar(T::one(), T::lit(2.0) * q.angles[0])
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Coefficients `(c_{fe}, c_{ef})` of `f⊗e` and `e⊗f` in `r(q)`.
fn coefficients<T: Real>(q: &CartanPoint<T>) -> (Complex<T>, Complex<T>) {
    let h = h_alpha(q);
    (-one::<T>() / (one::<T>() - h.inv()), -one::<T>() / (one::<T>() - h))
}

/// Derivatives of [`coefficients`] along `x = (α, λ)` with `h = e^x`.
fn coefficient_derivatives<T: Real>(q: &CartanPoint<T>) -> (Complex<T>, Complex<T>) {
    let y = h_alpha(q);
    let g1 = -y / ((y - one::<T>()) * (y - one::<T>()));
    let g2 = y / ((one::<T>() - y) * (one::<T>() - y));
    (-g1, -g2)
}

fn assemble<T: Real>(
    spins: &[usize],
    first: usize,
    second: usize,
    cartan: Complex<T>,
    fe: Complex<T>,
    ef: Complex<T>,
) -> CMatrix<T> {
    let dims: Vec<usize> = spins.iter().map(|m| m + 1).collect();
    let (e1, f1, h1) = su2::generators::<T>(spins[first]);
    let (e2, f2, h2) = su2::generators::<T>(spins[second]);
    let mut out = su2::embed_pair(&h1, &h2, &dims, first, second).scale(cartan);
    out.add_scaled(&su2::embed_pair(&f1, &e2, &dims, first, second), fe);
    out.add_scaled(&su2::embed_pair(&e1, &f2, &dims, first, second), ef);
    out
}

fn r_embedded<T: Real>(q: &CartanPoint<T>, spins: &[usize], first: usize, second: usize) -> CMatrix<T> {
    let (fe, ef) = coefficients(q);
    assemble(spins, first, second, Complex::new(T::lit(-0.25), T::zero()), fe, ef)
}

fn dr_embedded<T: Real>(q: &CartanPoint<T>, spins: &[usize], first: usize, second: usize) -> CMatrix<T> {
    let (fe, ef) = coefficient_derivatives(q);
    assemble(spins, first, second, Complex::new(T::zero(), T::zero()), fe, ef)
}

/// Mixed Casimir `Ω = ½ H⊗H + e⊗f + f⊗e` on factors `(i, k)`.
pub fn mixed_casimir<T: Real>(spins: &[usize], i: usize, k: usize) -> CMatrix<T> {
    let o = one::<T>();
    assemble(spins, i, k, Complex::new(T::lit(0.5), T::zero()), o, o)
}

fn spin_labels(spins: &[HighestWeight]) -> Result<Vec<usize>> {
    if spins.iter().any(|s| s.rank() != 1) {
        return Err(Error::Unsupported("dynamical r-matrices are implemented for SU(2)".into()));
    }
    Ok(spins.iter().map(|s| s.m()).collect())
}

/// `r_{ik}(q)` acting on `⊗ V_{μ_j}`.
pub fn felder_r<T: Real>(q: &CartanPoint<T>, pair: (usize, usize), spins: &[HighestWeight]) -> Result<DynamicalR<T>> {
    check_regular(q)?;
    let labels = spin_labels(spins)?;
    let (i, k) = pair;
    if i == k || i >= labels.len() || k >= labels.len() {
        return Err(crate::error::invalid(format!("invalid factor pair ({i}, {k}) for {} spins", labels.len())));
    }
    Ok(DynamicalR { q: q.clone(), pair, matrix: r_embedded(q, &labels, i, k) })
}

fn rel<T: Real>(diff: &CMatrix<T>, scale: T) -> f64 {
    (diff.max_abs() / scale.max(T::one())).to_f64().unwrap_or(f64::NAN)
}

/// Residuals of the r-matrix identities at `q` on `V_{m1} ⊗ V_{m2}` (and
/// `⊗ V_{m3}` for the Yang-Baxter equation), each relative to the size of the
/// terms involved.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixResiduals {
    /// `r(-q) = r²¹(q)`.
    pub flip: f64,
    /// `r(q) + r(-q) = -Ω`.
    pub casimir: f64,
    /// `(t⁻¹)₂ r₁₂ t₂ = -½ H⊗H - r₂₁` for the torus element `t` of `q`.
    pub conjugation: f64,
    /// `[t⊗t, r] = 0` for an independent torus element `t`.
    pub weight_zero: f64,
    /// Dynamical Yang-Baxter equation.
    pub yang_baxter: f64,
}

impl RMatrixResiduals {
    pub fn max(&self) -> f64 {
        [self.flip, self.casimir, self.conjugation, self.weight_zero, self.yang_baxter]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn r_matrix_residuals<T: Real>(q: &CartanPoint<T>, spins: [usize; 3], probe: T) -> Result<RMatrixResiduals> {
    check_regular(q)?;
    let pair = [spins[0], spins[1]];
    let r12 = r_embedded(q, &pair, 0, 1);
    let r21 = r_embedded(q, &pair, 1, 0);
    let rm = r_embedded(&q.neg(), &pair, 0, 1);
    let scale = r12.max_abs().max(rm.max_abs());
    let flip = rel(&(&rm - &r21), scale);

    let omega = mixed_casimir::<T>(&pair, 0, 1);
    let casimir = rel(&(&(&r12 + &rm) + &omega), scale);

    let theta = q.angles[0];
    let t2 = su2::embed(&su2::torus(spins[1], theta), &[pair[0] + 1, pair[1] + 1], 1);
    let t2inv = su2::embed(&su2::torus(spins[1], -theta), &[pair[0] + 1, pair[1] + 1], 1);
    let conj = &(&t2inv * &r12) * &t2;
    let (_, _, h1) = su2::generators::<T>(pair[0]);
    let (_, _, h2) = su2::generators::<T>(pair[1]);
    let hh = h1.kron(&h2).scale_real(T::lit(0.5));
    let conjugation = rel(&(&(&conj + &hh) + &r21), scale.max(conj.max_abs()));

    let tt = su2::torus(pair[0], probe).kron(&su2::torus(pair[1], probe));
    let ttinv = su2::torus(pair[0], -probe).kron(&su2::torus(pair[1], -probe));
    let weight_zero = rel(&(&(&(&tt * &r12) * &ttinv) - &r12), scale);

    let s = &spins[..];
    let dims: Vec<usize> = s.iter().map(|m| m + 1).collect();
    let (r12, r13, r23) = (r_embedded(q, s, 0, 1), r_embedded(q, s, 0, 2), r_embedded(q, s, 1, 2));
    let (d12, d13, d23) = (dr_embedded(q, s, 0, 1), dr_embedded(q, s, 0, 2), dr_embedded(q, s, 1, 2));
    let comm = |a: &CMatrix<T>, b: &CMatrix<T>| &(a * b) - &(b * a);
    let h = |pos: usize| su2::embed(&su2::generators::<T>(s[pos]).2, &dims, pos);
    let classical = &(&comm(&r12, &r13) + &comm(&r12, &r23)) + &comm(&r13, &r23);
    let dynamical = &(&(&h(0) * &d23) - &(&h(1) * &d13)) + &(&h(2) * &d12);
    let yb_scale = classical.max_abs().max(dynamical.max_abs());
    let yang_baxter = rel(&(&classical + &dynamical), yb_scale);

    Ok(RMatrixResiduals { flip, casimir, conjugation, weight_zero, yang_baxter })
}

/// Operator-norm residual of `(c₂(ν) - c₂(μ) - c₂(η))/2 · b = -(r₁₂ + r₂₁) b`
/// for `b: V_ν → V_μ ⊗ V_η`.
pub fn intertwiner_casimir_identity<T: Real>(b: &Intertwiner<T>, q: &CartanPoint<T>) -> Result<T> {
    check_regular(q)?;
    let rs = RootSystem::su2();
    let (mu, eta) = (&b.targets.0, &b.targets.1);
    let pair = [mu.m(), eta.m()];
    let sym = &r_embedded(q, &pair, 0, 1) + &r_embedded(q, &pair, 1, 0);
    let scalar = T::from_rational(&((rs.casimir2_exact(&b.source) - rs.casimir2_exact(mu) - rs.casimir2_exact(eta))
        / crate::scalar::Rational::from_integer(2)));
    let lhs = b.matrix.scale_real(scalar);
    let rhs = (&sym * &b.matrix).scale_real(-T::one());
    Ok((&lhs - &rhs).op_norm())
}
