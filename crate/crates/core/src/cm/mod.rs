//! Spin Calogero-Moser chain: trace functions on the torus, radial
//! Hamiltonian and KZB operators, and trace-function orthogonality.
//!
//! Trace functions are built for SU(2) spins. Tensor factors of `⊗ V_{μ_i}`
//! are ordered ascending in `i`, with the last factor varying fastest.

mod propagator;
mod rmatrix;

use num_complex::Complex;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::haar::{self, QuadratureSpec, Scheme};
use crate::lie::{weyl_denominator, weyl_numerator, CartanPoint, HighestWeight, RootSystem};
use crate::linalg::{norm, vdot, CMatrix, CVector};
use crate::scalar::Real;
use crate::tensor::{admissible, cg_intertwiner, schur_pairing, su2, Intertwiner};

pub use propagator::{
    compose_propagators, cylinder_propagator_integral, cylinder_propagator_spectral, gauge_fixed_holonomies, operator_product,
    sector_gram, SpectralPropagator,
};
pub use rmatrix::{
    felder_r, intertwiner_casimir_identity, mixed_casimir, r_matrix_residuals, DynamicalR, RMatrixResiduals,
};

/// Cyclic chain of intertwiners `b_i: V_{ν_i} → V_{ν_{i-1}} ⊗ V_{μ_i}`
/// (indices mod `N`).
#[derive(Clone, Debug)]
pub struct SpinChainConfig<T> {
    spins: Vec<HighestWeight>,
    sectors: Vec<HighestWeight>,
    chain: Vec<Intertwiner<T>>,
}

fn check_su2_labels(ws: &[HighestWeight]) -> Result<()> {
    if ws.iter().any(|w| w.rank() != 1) {
        return Err(Error::Unsupported("trace functions are implemented for SU(2)".into()));
    }
    Ok(())
}

impl<T: Real> SpinChainConfig<T> {
    /// Chain of normalized Clebsch-Gordan intertwiners.
    pub fn new(spins: Vec<HighestWeight>, sectors: Vec<HighestWeight>) -> Result<Self> {
        Self::check_shape(&spins, &sectors)?;
        let n = spins.len();
        let chain = (0..n)
            .map(|i| cg_intertwiner(&sectors[i], &sectors[(i + n - 1) % n], &spins[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spins, sectors, chain })
    }

    /// Chain with caller-supplied intertwiners.
    pub fn with_chain(spins: Vec<HighestWeight>, sectors: Vec<HighestWeight>, chain: Vec<Intertwiner<T>>) -> Result<Self> {
        Self::check_shape(&spins, &sectors)?;
        let n = spins.len();
        if chain.len() != n {
            return Err(invalid(format!("chain has {} intertwiners for {n} spins", chain.len())));
        }
        for (i, b) in chain.iter().enumerate() {
            if b.source != sectors[i] || b.targets != (sectors[(i + n - 1) % n].clone(), spins[i].clone()) {
                return Err(Error::SectorMismatch(format!("intertwiner {i} does not map V_{} into V_{} ⊗ V_{}", sectors[i], sectors[(i + n - 1) % n], spins[i])));
            }
        }
        Ok(Self { spins, sectors, chain })
    }

    fn check_shape(spins: &[HighestWeight], sectors: &[HighestWeight]) -> Result<()> {
        if spins.is_empty() {
            return Err(invalid("a spin chain needs at least one site"));
        }
        if spins.len() != sectors.len() {
            return Err(invalid(format!("{} spins but {} sectors", spins.len(), sectors.len())));
        }
        check_su2_labels(spins)?;
        check_su2_labels(sectors)
    }

    pub fn n(&self) -> usize {
        self.spins.len()
    }

    pub fn spins(&self) -> &[HighestWeight] {
        &self.spins
    }

    pub fn sectors(&self) -> &[HighestWeight] {
        &self.sectors
    }

    pub fn chain(&self) -> &[Intertwiner<T>] {
        &self.chain
    }

    pub fn spin_labels(&self) -> Vec<usize> {
        self.spins.iter().map(|s| s.m()).collect()
    }

    /// `dim ⊗ V_{μ_i}`.
    pub fn dim(&self) -> usize {
        self.spins.iter().map(|s| s.m() + 1).product()
    }

    /// Contracts blocks `b_i π^{ν_i}(g_i)` and traces over `V_{ν_N}`.
    fn contract(&self, blocks: Vec<CMatrix<T>>) -> CVector<T> {
        let n = self.n();
        let mut iter = blocks.into_iter().rev();
        let mut m = iter.next().expect("non-empty chain");
        let mut rest = self.spins[n - 1].m() + 1;
        for (offset, b) in iter.enumerate() {
            let i = n - 2 - offset;
            m = apply_left(&b, rest, &m);
            rest *= self.spins[i].m() + 1;
        }
        let dn = self.sectors[n - 1].m() + 1;
        (0..rest).map(|r| (0..dn).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + m[(i * rest + r, i)])).collect()
    }

    /// `Ψ(g_1, …, g_N) = Tr_{V_{ν_N}} (b_1 π(g_1) ⊗ 1)(…)(b_N π(g_N))`.
    pub fn trace_function_at(&self, gs: &[CMatrix<T>]) -> Result<CVector<T>> {
        if gs.len() != self.n() {
            return Err(invalid(format!("{} group elements for {} sites", gs.len(), self.n())));
        }
        let blocks = self.chain.iter().zip(&self.sectors).zip(gs).map(|((b, nu), g)| &b.matrix * &su2::rep(nu.m(), g)).collect();
        Ok(self.contract(blocks))
    }

    /// Trace function at `(1, …, 1, e^{iq·H})`.
    pub fn trace_function(&self, q: &CartanPoint<T>) -> Result<CVector<T>> {
        if q.rank() != 1 {
            return Err(invalid("SU(2) trace functions take a rank-one Cartan point"));
        }
        let n = self.n();
        let mut blocks: Vec<CMatrix<T>> = self.chain.iter().map(|b| b.matrix.clone()).collect();
        blocks[n - 1] = &blocks[n - 1] * &su2::torus(self.sectors[n - 1].m(), q.angles[0]);
        Ok(self.contract(blocks))
    }

    /// `F = δ Ψ`.
    pub fn normalized_trace(&self, q: &CartanPoint<T>) -> Result<CVector<T>> {
        if !RootSystem::su2().is_regular(q, T::lit(1e-9)) {
            return Err(Error::Singular("normalized trace function at a singular point".into()));
        }
        let d = weyl_denominator(&RootSystem::su2(), q);
        Ok(self.trace_function(q)?.into_iter().map(|z| z * d).collect())
    }

    /// `π(n) = ⊗ π^{μ_i}(n)` for the Weyl lift `n`.
    pub fn weyl_action(&self) -> CMatrix<T> {
        let n = su2::weyl_lift::<T>();
        self.spins.iter().fold(CMatrix::identity(1), |acc, s| acc.kron(&su2::rep(s.m(), &n)))
    }
}

/// `(b ⊗ 1_rest) m`.
fn apply_left<T: Real>(b: &CMatrix<T>, rest: usize, m: &CMatrix<T>) -> CMatrix<T> {
    let (rows, inner, cols) = (b.rows(), b.cols(), m.cols());
    let mut out = CMatrix::zeros(rows * rest, cols);
    for a in 0..rows {
        for k in 0..inner {
            let x = b[(a, k)];
            if x.re == T::zero() && x.im == T::zero() {
                continue;
            }
            for r in 0..rest {
                for c in 0..cols {
                    out[(a * rest + r, c)] += x * m[(k * rest + r, c)];
                }
            }
        }
    }
    out
}

/// Sectors `ν⃗` with `c₂(ν_i) ≤ cutoff` satisfying `ν_i ⊂ ν_{i-1} ⊗ μ_i`
/// cyclically, in lexicographic order.
pub fn admissible_sectors(spins: &[HighestWeight], cutoff: f64) -> Result<Vec<Vec<HighestWeight>>> {
    check_su2_labels(spins)?;
    let rs = RootSystem::su2();
    let labels = rs.dominant_weights_below(cutoff)?;
    let n = spins.len();
    let mut out = Vec::new();
    let mut current: Vec<HighestWeight> = Vec::with_capacity(n);
    fn extend(
        rs: &RootSystem,
        spins: &[HighestWeight],
        labels: &[HighestWeight],
        current: &mut Vec<HighestWeight>,
        out: &mut Vec<Vec<HighestWeight>>,
    ) {
        let n = spins.len();
        let i = current.len();
        if i == n {
            if admissible(rs, &current[0], &current[n - 1], &spins[0]) {
                out.push(current.clone());
            }
            return;
        }
        for nu in labels {
            if i == 0 || admissible(rs, nu, &current[i - 1], &spins[i]) {
                current.push(nu.clone());
                extend(rs, spins, labels, current, out);
                current.pop();
            }
        }
    }
    let mut sorted = labels.clone();
    sorted.sort();
    extend(&rs, spins, &sorted, &mut current, &mut out);
    Ok(out)
}

/// Uniform random point of the torus at distance at least `margin` from
/// every root hyperplane.
pub fn random_regular_point<T: Real, R: Rng + ?Sized>(rs: &RootSystem, rng: &mut R, margin: f64) -> CartanPoint<T> {
    let two_pi = 2.0 * std::f64::consts::PI;
    loop {
        let q = CartanPoint::new((0..rs.rank()).map(|_| T::lit(rng.gen::<f64>() * two_pi)).collect());
        if rs.is_regular(&q, T::lit(margin)) {
            return q;
        }
    }
}

/// Output of a radial operator applied to a trace function at one point.
#[derive(Clone, Debug)]
pub struct RadialOperatorResult<T> {
    pub value: CVector<T>,
    pub function: CVector<T>,
    pub eigenvalue: T,
    pub fd_step: T,
    /// `‖value - eigenvalue · function‖ / ‖function‖`.
    pub residual: T,
    /// Relative norm of `value` outside the zero-weight subspace.
    pub zero_weight_leakage: T,
}

fn relative<T: Real>(diff: T, scale: T) -> T {
    if scale > T::zero() {
        diff / scale
    } else {
        diff
    }
}

impl<T: Real> RadialOperatorResult<T> {
    fn new(spins: &[usize], value: CVector<T>, function: CVector<T>, eigenvalue: T, fd_step: T) -> Self {
        let diff: CVector<T> = value.iter().zip(&function).map(|(&v, &f)| v - f * eigenvalue).collect();
        let residual = relative(norm(&diff), norm(&function));
        let zero_weight_leakage = zero_weight_leakage(spins, &value);
        Self { value, function, eigenvalue, fd_step, residual, zero_weight_leakage }
    }
}

/// Relative norm of the components of `v ∈ ⊗ V_{m_i}` with nonzero weight.
pub fn zero_weight_leakage<T: Real>(spins: &[usize], v: &[Complex<T>]) -> T {
    let mut off = T::zero();
    for (idx, z) in v.iter().enumerate() {
        let mut rem = idx;
        let mut weight = 0i64;
        for &m in spins.iter().rev() {
            let k = rem % (m + 1);
            rem /= m + 1;
            weight += m as i64 - 2 * k as i64;
        }
        if weight != 0 {
            off += z.norm_sqr();
        }
    }
    relative(off.sqrt(), norm(v))
}

fn check_stencil<T: Real>(rs: &RootSystem, q: &CartanPoint<T>, step: T) -> Result<()> {
    if !(step > T::zero()) {
        return Err(invalid("finite-difference step must be positive"));
    }
    if !rs.is_regular(q, step * T::lit(2.0)) {
        return Err(Error::Singular("finite-difference stencil touches a root hyperplane".into()));
    }
    Ok(())
}

fn axpy<T: Real>(acc: &mut [Complex<T>], x: &[Complex<T>], s: Complex<T>) {
    for (a, &b) in acc.iter_mut().zip(x) {
        *a += b * s;
    }
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `Δ_λ f = -Σ_{jk} (ω_j, ω_k) ∂_j ∂_k f` by central differences.
pub fn laplacian<T, F>(rs: &RootSystem, f: F, q: &CartanPoint<T>, step: T) -> CVector<T>
where
    T: Real,
    F: Fn(&CartanPoint<T>) -> CVector<T>,
{
    let r = rs.rank();
    let f0 = f(q);
    let mut out = vec![Complex::new(T::zero(), T::zero()); f0.len()];
    let form = rs.bilinear_form();
    let h2 = step * step;
    for j in 0..r {
        for k in j..r {
            let g = T::from_rational(&form[j][k]);
            if g == T::zero() {
                continue;
            }
            let second: CVector<T> = if j == k {
                let (fp, fm) = (f(&q.shifted(j, step)), f(&q.shifted(j, -step)));
                (0..f0.len()).map(|i| (fp[i] - f0[i] * T::lit(2.0) + fm[i]) / h2).collect()
            } else {
                let pp = f(&q.shifted(j, step).shifted(k, step));
                let pm = f(&q.shifted(j, step).shifted(k, -step));
                let mp = f(&q.shifted(j, -step).shifted(k, step));
                let mm = f(&q.shifted(j, -step).shifted(k, -step));
                (0..f0.len()).map(|i| (pp[i] - pm[i] - mp[i] + mm[i]) / (h2 * T::lit(4.0))).collect()
            };
            let mult = if j == k { g } else { g * T::lit(2.0) };
            axpy(&mut out, &second, real(-mult));
        }
    }
    out
}

/// `H F = Δ F + 2 π(f e) F / ((1 - h_α)(1 - h_α⁻¹)) - ‖ρ‖² F` on the
/// normalized trace function; eigenvalue `c₂(ν_N)`.
pub fn apply_cm_hamiltonian<T: Real>(cfg: &SpinChainConfig<T>, q: &CartanPoint<T>, fd_step: T) -> Result<RadialOperatorResult<T>> {
    let rs = RootSystem::su2();
    check_stencil(&rs, q, fd_step)?;
    let eval = |p: &CartanPoint<T>| cfg.normalized_trace(p).expect("regular stencil point");
    let f = eval(q);
    let mut out = laplacian(&rs, eval, q, fd_step);
    let spins = cfg.spin_labels();
    let dims: Vec<usize> = spins.iter().map(|m| m + 1).collect();
    let total = |which: usize| {
        spins.iter().enumerate().fold(CMatrix::<T>::zeros(cfg.dim(), cfg.dim()), |acc, (pos, &m)| {
            let g = su2::generators::<T>(m);
            let x = if which == 0 { g.0 } else { g.1 };
            &acc + &su2::embed(&x, &dims, pos)
        })
    };
    let fe = &total(1) * &total(0);
    let h = Complex::from_polar(T::one(), T::lit(2.0) * q.angles[0]);
    let one = real(T::one());
    let coeff = real(T::lit(2.0)) / ((one - h) * (one - h.inv()));
    axpy(&mut out, &fe.mul_vec(&f), coeff);
    axpy(&mut out, &f, real(-T::from_rational(&rs.rho_norm_sq())));
    let eigenvalue = T::from_rational(&rs.casimir2_exact(&cfg.sectors[cfg.n() - 1]));
    Ok(RadialOperatorResult::new(&spins, out, f, eigenvalue, fd_step))
}

/// Which trace function the KZB operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KzbVariant {
    /// `F = δΨ` with `D_i = (h^{(i)}, ∂_λ) - Σ_{k<i} r_{ki} + Σ_{k>i} r_{ik}`.
    Normalized,
    /// `Ψ` with the extra `d(λ)_i = ½ (ξ_α + ξ_{-α})/(ξ_α - ξ_{-α}) H^{(i)}`.
    Unnormalized,
}

/// KZB operator on factor `i` (0-based). The eigenvalue is
/// `(c₂(ν_i) - c₂(ν_{i-1}))/2` with `ν_{-1} = ν_{N-1}`.
pub fn apply_kzb<T: Real>(
    cfg: &SpinChainConfig<T>,
    i: usize,
    q: &CartanPoint<T>,
    fd_step: T,
    variant: KzbVariant,
) -> Result<RadialOperatorResult<T>> {
    let n = cfg.n();
    if i >= n {
        return Err(invalid(format!("KZB index {i} out of range for {n} sites")));
    }
    let rs = RootSystem::su2();
    check_stencil(&rs, q, fd_step)?;
    let eval = |p: &CartanPoint<T>| match variant {
        KzbVariant::Normalized => cfg.normalized_trace(p).expect("regular stencil point"),
        KzbVariant::Unnormalized => cfg.trace_function(p).expect("rank-one point"),
    };
    let f = eval(q);
    let (fp, fm) = (eval(&q.shifted(0, fd_step)), eval(&q.shifted(0, -fd_step)));
    let derivative: CVector<T> = fp.iter().zip(&fm).map(|(&a, &b)| (a - b) / (fd_step * T::lit(2.0))).collect();
    let spins = cfg.spin_labels();
    let dims: Vec<usize> = spins.iter().map(|m| m + 1).collect();
    let h = su2::embed(&su2::generators::<T>(spins[i]).2, &dims, i);
    // (h^{(i)}, ∂_λ) = -i (H^{(i)}/2) ∂_θ
    let mut out = h.mul_vec(&derivative).into_iter().map(|z| z * Complex::new(T::zero(), T::lit(-0.5))).collect::<Vec<_>>();
    for k in 0..n {
        if k < i {
            axpy(&mut out, &felder_r(q, (k, i), &cfg.spins)?.matrix.mul_vec(&f), real(-T::one()));
        } else if k > i {
            axpy(&mut out, &felder_r(q, (i, k), &cfg.spins)?.matrix.mul_vec(&f), real(T::one()));
        }
    }
    if variant == KzbVariant::Unnormalized {
        let x = Complex::from_polar(T::one(), q.angles[0]);
        let d = (x + x.inv()) / (x - x.inv()) * T::lit(0.5);
        axpy(&mut out, &h.mul_vec(&f), d);
    }
    let c2 = |w: &HighestWeight| rs.casimir2_exact(w);
    let eig = (c2(&cfg.sectors[i]) - c2(&cfg.sectors[(i + n - 1) % n])) / crate::scalar::Rational::from_integer(2);
    Ok(RadialOperatorResult::new(&spins, out, f, T::from_rational(&eig), fd_step))
}

/// `|Δ_λ(δ⁻¹) + ‖ρ‖² δ⁻¹ + D(δ⁻¹)| / |δ⁻¹|` with
/// `D = Σ_{α>0} (ξ_α + ξ_{-α})/(ξ_α - ξ_{-α}) (α, ∂_λ)`.
pub fn delta_lemma_residual<T: Real>(rs: &RootSystem, q: &CartanPoint<T>, fd_step: T) -> Result<T> {
    check_stencil(rs, q, fd_step)?;
    let inv = |p: &CartanPoint<T>| vec![weyl_denominator(rs, p).inv()];
    let s = inv(q)[0];
    let lap = laplacian(rs, inv, q, fd_step)[0];
    let mut d = Complex::new(T::zero(), T::zero());
    let half = T::lit(0.5);
    for (alpha, expansion) in rs.positive_roots().iter().zip(rs.positive_roots_simple()) {
        let xi = Complex::from_polar(T::one(), half * q.pair(alpha));
        let coeff = (xi + xi.inv()) / (xi - xi.inv());
        let mut plus = q.clone();
        let mut minus = q.clone();
        for (j, &c) in expansion.iter().enumerate() {
            plus.angles[j] += T::lit(c as f64) * fd_step;
            minus.angles[j] -= T::lit(c as f64) * fd_step;
        }
        let directional = (inv(&plus)[0] - inv(&minus)[0]) / (fd_step * T::lit(2.0));
        // (α, ∂_λ) = -i (α, ∂_q)
        d += coeff * directional * Complex::new(T::zero(), -T::one());
    }
    let rho = T::from_rational(&rs.rho_norm_sq());
    Ok((lap + s * rho + d).norm() / s.norm())
}

/// `|(Δ_λ - ‖ρ‖²) N_ν - c₂(ν) N_ν| / |N_ν|` for the Weyl numerator `N_ν`.
pub fn weyl_numerator_residual<T: Real>(rs: &RootSystem, nu: &HighestWeight, q: &CartanPoint<T>, fd_step: T) -> Result<T> {
    check_stencil(rs, q, fd_step)?;
    let f = |p: &CartanPoint<T>| vec![weyl_numerator(rs, nu, p)];
    let n0 = f(q)[0];
    let lap = laplacian(rs, f, q, fd_step)[0];
    let rho = T::from_rational(&rs.rho_norm_sq());
    let c2 = T::from_rational(&rs.casimir2_exact(nu));
    Ok(relative((lap - n0 * rho - n0 * c2).norm(), n0.norm()))
}

/// `‖F(-q) + π(n) F(q)‖ / ‖F(q)‖`.
pub fn weyl_antiinvariance_residual<T: Real>(cfg: &SpinChainConfig<T>, q: &CartanPoint<T>) -> Result<T> {
    let f = cfg.normalized_trace(q)?;
    let fm = cfg.normalized_trace(&q.neg())?;
    let nf = cfg.weyl_action().mul_vec(&f);
    let diff: CVector<T> = fm.iter().zip(&nf).map(|(&a, &b)| a + b).collect();
    Ok(relative(norm(&diff), norm(&f)))
}

/// Quadrature of `∫ (Ψ_b, Ψ_a)` next to the predicted `Π δ_{ν ν'} Π (b_i, a_i)`.
#[derive(Clone, Debug)]
pub struct OrthogonalityReport<T> {
    pub value: Complex<T>,
    pub expected: Complex<T>,
    /// Difference between the rule and a coarser rule of the same scheme.
    pub error_estimate: T,
}

impl<T: Real> OrthogonalityReport<T> {
    pub fn residual(&self) -> T {
        (self.value - self.expected).norm()
    }
}

fn expected_pairing<T: Real>(a: &SpinChainConfig<T>, b: &SpinChainConfig<T>) -> Result<Complex<T>> {
    if a.sectors != b.sectors {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    a.chain.iter().zip(&b.chain).try_fold(Complex::new(T::one(), T::zero()), |acc, (x, y)| Ok(acc * schur_pairing(x, y)?))
}

fn gauge_fixed_pairing<T: Real>(a: &SpinChainConfig<T>, b: &SpinChainConfig<T>, resolution: usize) -> Complex<T> {
    haar::integrate_class(&RootSystem::su2(), &QuadratureSpec::torus(resolution), |q: &CartanPoint<T>| {
        vdot(&b.trace_function(q).expect("rank one"), &a.trace_function(q).expect("rank one"))
    })
}

fn group_pairing<T: Real>(a: &SpinChainConfig<T>, b: &SpinChainConfig<T>, resolution: usize) -> Result<Complex<T>> {
    let spec = QuadratureSpec::group(resolution);
    match a.n() {
        1 => Ok(haar::integrate_group(&spec, |g: &CMatrix<T>| {
            let gs = [g.clone()];
            vdot(&b.trace_function_at(&gs).expect("one site"), &a.trace_function_at(&gs).expect("one site"))
        })),
        2 => {
            let grid = haar::su2_grid::<T>(resolution);
            let blocks = |cfg: &SpinChainConfig<T>, site: usize| -> Vec<CMatrix<T>> {
                grid.iter().map(|(g, _)| &cfg.chain[site].matrix * &su2::rep(cfg.sectors[site].m(), g)).collect()
            };
            let (a1, a2, b1, b2) = (blocks(a, 0), blocks(a, 1), blocks(b, 0), blocks(b, 1));
            let indexed: Vec<(usize, T)> = grid.iter().enumerate().map(|(i, (_, w))| (i, *w)).collect();
            Ok(haar::weighted_sum(&indexed, |&i: &usize| {
                indexed.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &(j, w)| {
                    let va = a.contract(vec![a1[i].clone(), a2[j].clone()]);
                    let vb = b.contract(vec![b1[i].clone(), b2[j].clone()]);
                    acc + vdot(&vb, &va) * w
                })
            }))
        }
        n => Err(Error::Unsupported(format!("full-group orthogonality quadrature for N = {n} > 2"))),
    }
}

/// `∫_{G^N} (Ψ_b(g), Ψ_a(g)) dg`, by gauge fixing to the torus
/// (`torus-gauss`) or on the full product grid (`euler-grid`, `N ≤ 2`).
pub fn trace_orthogonality<T: Real>(a: &SpinChainConfig<T>, b: &SpinChainConfig<T>, spec: &QuadratureSpec) -> Result<OrthogonalityReport<T>> {
    if a.spins != b.spins {
        return Err(Error::SectorMismatch("trace functions with different spins live in different spaces".into()));
    }
    let coarse = (spec.resolution / 2).max(1);
    let (value, rough) = match spec.scheme {
        Scheme::TorusGauss => (gauge_fixed_pairing(a, b, spec.resolution), gauge_fixed_pairing(a, b, coarse)),
        Scheme::EulerGrid => (group_pairing(a, b, spec.resolution)?, group_pairing(a, b, coarse)?),
    };
    Ok(OrthogonalityReport { value, expected: expected_pairing(a, b)?, error_estimate: (value - rough).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(m: u32) -> HighestWeight {
        HighestWeight::su2(m)
    }

    fn cfg(spins: &[u32], sectors: &[u32]) -> SpinChainConfig<f64> {
        SpinChainConfig::new(spins.iter().map(|&m| w(m)).collect(), sectors.iter().map(|&m| w(m)).collect()).unwrap()
    }

    #[test]
    fn trivial_spin_gives_character() {
        let c = cfg(&[0], &[3]);
        let th = 0.7f64;
        let psi = c.trace_function(&CartanPoint::su2(th)).unwrap();
        assert!((psi[0].re - (4.0 * th).sin() / th.sin()).abs() < 1e-12);
        let f = c.normalized_trace(&CartanPoint::su2(th)).unwrap();
        let num = weyl_numerator(&RootSystem::su2(), &w(3), &CartanPoint::su2(th));
        assert!((f[0] - num).norm() < 1e-12);
    }

    #[test]
    fn inadmissible_chain_rejected() {
        let r = SpinChainConfig::<f64>::new(vec![w(1)], vec![w(1)]);
        assert!(matches!(r, Err(Error::Admissibility(_))));
        let b = cg_intertwiner::<f64>(&w(0), &w(1), &w(1)).unwrap();
        assert!(matches!(SpinChainConfig::with_chain(vec![w(1), w(1)], vec![w(1), w(0)], vec![b.clone(), b]), Err(Error::SectorMismatch(_))));
    }

    #[test]
    fn identity_point_is_chain_product() {
        let c = cfg(&[1, 1], &[1, 0]);
        let psi = c.trace_function(&CartanPoint::su2(0.0)).unwrap();
        // Tr_{V_0} (b_1 ⊗ 1) b_2 as a vector in V_1 ⊗ V_1
        let (b1, b2) = (&c.chain()[0].matrix, &c.chain()[1].matrix);
        let mut expect = vec![Complex::new(0.0, 0.0); 4];
        for x in 0..2 {
            for y in 0..2 {
                for k in 0..2 {
                    expect[x * 2 + y] += b1[(x, k)] * b2[(k * 2 + y, 0)];
                }
            }
        }
        assert!(norm(&crate::linalg::sub_vec(&psi, &expect)) < 1e-13);
    }

    #[test]
    fn hamiltonian_and_kzb_eigenvalues() {
        let q = CartanPoint::su2(0.9);
        for (spins, sectors) in [(&[2u32][..], &[1u32][..]), (&[1, 1], &[1, 0]), (&[2, 1, 1], &[2, 1, 0])] {
            let c = cfg(spins, sectors);
            let h = apply_cm_hamiltonian(&c, &q, 1e-3).unwrap();
            assert!(h.residual < 1e-5, "{spins:?} {}", h.residual);
            assert!(h.zero_weight_leakage < 1e-10);
            for i in 0..c.n() {
                for v in [KzbVariant::Normalized, KzbVariant::Unnormalized] {
                    let d = apply_kzb(&c, i, &q, 1e-4, v).unwrap();
                    assert!(d.residual < 1e-6, "{spins:?} D{i} {v:?} {}", d.residual);
                }
            }
        }
        let d = apply_kzb(&cfg(&[1, 1], &[1, 0]), 1, &q, 1e-3, KzbVariant::Normalized).unwrap();
        assert_eq!(d.eigenvalue, -0.75);
    }

    #[test]
    fn delta_lemma_and_numerator() {
        let q = CartanPoint::su2(0.8);
        let rs = RootSystem::su2();
        let r1: f64 = delta_lemma_residual(&rs, &q, 1e-3).unwrap();
        let r2 = delta_lemma_residual(&rs, &q, 5e-4).unwrap();
        assert!(r1 < 1e-5 && (r1 / r2 - 4.0).abs() < 0.5, "{r1} {r2}");
        let su3 = RootSystem::su(3).unwrap();
        let p = CartanPoint::<f64>::new(vec![0.7, 1.9]);
        let adj = HighestWeight::new(vec![1, 1]).unwrap();
        let (d1, d2) = (delta_lemma_residual(&su3, &p, 1e-3).unwrap(), delta_lemma_residual(&su3, &p, 5e-4).unwrap());
        assert!(d1 < 1e-3 && (d1 / d2 - 4.0).abs() < 0.5, "{d1} {d2}");
        let (n1, n2) = (weyl_numerator_residual(&su3, &adj, &p, 1e-3).unwrap(), weyl_numerator_residual(&su3, &adj, &p, 5e-4).unwrap());
        assert!(n1 < 1e-3 && (n1 / n2 - 4.0).abs() < 0.5, "{n1} {n2}");
    }

    #[test]
    fn weyl_antiinvariance() {
        for (spins, sectors) in [(&[1u32, 1][..], &[1u32, 0][..]), (&[2], &[2]), (&[1, 2, 1], &[1, 1, 2])] {
            let r = weyl_antiinvariance_residual(&cfg(spins, sectors), &CartanPoint::su2(0.61)).unwrap();
            assert!(r < 1e-12, "{spins:?} {r}");
        }
    }

    #[test]
    fn sector_enumeration() {
        let s = admissible_sectors(&[w(1), w(1)], 10.0).unwrap();
        // ν_1 = ν_2 ± 1 with both ≤ 3
        assert_eq!(s.len(), 6);
        assert!(admissible_sectors(&[w(1)], 40.0).unwrap().is_empty());
    }

    #[test]
    fn orthogonality_on_the_torus() {
        let a = cfg(&[1, 1], &[1, 0]);
        let b = cfg(&[1, 1], &[1, 2]);
        let spec = QuadratureSpec::torus(64);
        assert!(trace_orthogonality(&a, &a, &spec).unwrap().residual() < 1e-12);
        assert!(trace_orthogonality(&a, &b, &spec).unwrap().residual() < 1e-12);
        let g = trace_orthogonality(&a, &b, &QuadratureSpec::group(8)).unwrap();
        assert!(g.residual() < 1e-10, "{g:?}");
    }

    #[test]
    fn random_points_are_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rs = RootSystem::su(3).unwrap();
        for _ in 0..20 {
            let q: CartanPoint<f64> = random_regular_point(&rs, &mut rng, 0.01);
            assert!(rs.is_regular(&q, 0.01));
        }
    }
}
