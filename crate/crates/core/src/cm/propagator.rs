//! Multi-time propagators of the spin chain: the spectral sum over sectors and
//! the Haar-integral form of the cylinder partition function.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::haar::{self, QuadratureSpec, Scheme};
use crate::lie::{CartanPoint, HighestWeight, RootSystem};
use crate::linalg::{vdot, CMatrix, CVector};
use crate::scalar::Real;
use crate::tensor::su2;

use super::{admissible_sectors, SpinChainConfig};

/// `U(g⃗, g⃗′) = Σ_{ν⃗} e^{-Σ c₂(ν_i) A_i} Ψ_{ν⃗}(g⃗) Ψ_{ν⃗}(g⃗′)^†` over the
/// sectors with `c₂(ν_i) ≤ cutoff`.
#[derive(Clone, Debug)]
pub struct SpectralPropagator<T> {
    spins: Vec<HighestWeight>,
    areas: Vec<T>,
    cutoff: f64,
    sectors: Vec<SpinChainConfig<T>>,
}

fn check_areas<T: Real>(spins: &[HighestWeight], areas: &[T]) -> Result<()> {
    if spins.len() != areas.len() {
        return Err(invalid(format!("{} spins but {} areas", spins.len(), areas.len())));
    }
    if let Some(a) = areas.iter().find(|a| !(**a > T::zero())) {
        return Err(Error::DivergentSeries(a.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

impl<T: Real> SpectralPropagator<T> {
    pub fn new(spins: Vec<HighestWeight>, areas: Vec<T>, cutoff: f64) -> Result<Self> {
        check_areas(&spins, &areas)?;
        let sectors = admissible_sectors(&spins, cutoff)?
            .into_iter()
            .map(|nu| SpinChainConfig::new(spins.clone(), nu))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spins, areas, cutoff, sectors })
    }

    pub fn spins(&self) -> &[HighestWeight] {
        &self.spins
    }

    pub fn areas(&self) -> &[T] {
        &self.areas
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn sectors(&self) -> &[SpinChainConfig<T>] {
        &self.sectors
    }

    pub fn dim(&self) -> usize {
        self.spins.iter().map(|s| s.m() + 1).product()
    }

    /// `e^{-Σ c₂(ν_i) A_i}` per sector.
    pub fn weights(&self) -> Vec<T> {
        let rs = RootSystem::su2();
        self.sectors
            .iter()
            .map(|s| {
                let e = s.sectors().iter().zip(&self.areas).fold(T::zero(), |acc, (nu, &a)| acc + T::from_rational(&rs.casimir2_exact(nu)) * a);
                (-e).exp()
            })
            .collect()
    }

    fn values(&self, gs: &[CMatrix<T>]) -> Result<Vec<CVector<T>>> {
        self.sectors.iter().map(|s| s.trace_function_at(gs)).collect()
    }

    pub fn kernel(&self, gs: &[CMatrix<T>], gps: &[CMatrix<T>]) -> Result<CMatrix<T>> {
        let (left, right) = (self.values(gs)?, self.values(gps)?);
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for ((l, r), w) in left.iter().zip(&right).zip(self.weights()) {
            add_outer(&mut out, l, r, Complex::new(w, T::zero()));
        }
        Ok(out)
    }
}

/// `out += s · l r^†`.
fn add_outer<T: Real>(out: &mut CMatrix<T>, l: &[Complex<T>], r: &[Complex<T>], s: Complex<T>) {
    for (i, &x) in l.iter().enumerate() {
        let xs = x * s;
        for (j, y) in r.iter().enumerate() {
            out[(i, j)] += xs * y.conj();
        }
    }
}

/// Spectral form of the cylinder kernel with `N` parallel Wilson lines.
pub fn cylinder_propagator_spectral<T: Real>(
    spins: &[HighestWeight],
    areas: &[T],
    gs: &[CMatrix<T>],
    gps: &[CMatrix<T>],
    cutoff: f64,
) -> Result<CMatrix<T>> {
    SpectralPropagator::new(spins.to_vec(), areas.to_vec(), cutoff)?.kernel(gs, gps)
}

/// `U_A U_B = U_{A+B}` on the spectral side.
pub fn compose_propagators<T: Real>(u1: &SpectralPropagator<T>, u2: &SpectralPropagator<T>) -> Result<SpectralPropagator<T>> {
    if u1.spins != u2.spins || u1.cutoff != u2.cutoff {
        return Err(Error::SectorMismatch("propagators with different spins or cutoffs do not compose".into()));
    }
    let areas = u1.areas.iter().zip(&u2.areas).map(|(&a, &b)| a + b).collect();
    Ok(SpectralPropagator { spins: u1.spins.clone(), areas, cutoff: u1.cutoff, sectors: u1.sectors.clone() })
}

/// `G_{νν'} = ∫_{G^N} Ψ_ν^† Ψ_{ν'}` by gauge fixing to the torus.
pub fn sector_gram<T: Real>(u: &SpectralPropagator<T>, resolution: usize) -> CMatrix<T> {
    let rule = haar::torus_rule::<T>(&RootSystem::su2(), resolution);
    let values: Vec<Vec<CVector<T>>> = rule
        .iter()
        .map(|(q, _)| u.sectors.iter().map(|s| s.trace_function(q).expect("rank one")).collect())
        .collect();
    let n = u.sectors.len();
    CMatrix::from_fn(n, n, |a, b| {
        values.iter().zip(&rule).fold(Complex::new(T::zero(), T::zero()), |acc, (v, (_, w))| acc + vdot(&v[a], &v[b]) * *w)
    })
}

/// Kernel of the operator product `∫ U₁(g⃗, h⃗) U₂(h⃗, g⃗′) dh⃗`, with the
/// sector overlaps computed by torus quadrature.
pub fn operator_product<T: Real>(
    u1: &SpectralPropagator<T>,
    u2: &SpectralPropagator<T>,
    gs: &[CMatrix<T>],
    gps: &[CMatrix<T>],
    resolution: usize,
) -> Result<CMatrix<T>> {
    if u1.spins != u2.spins || u1.cutoff != u2.cutoff {
        return Err(Error::SectorMismatch("propagators with different spins or cutoffs do not compose".into()));
    }
    let gram = sector_gram(u1, resolution);
    let (left, right) = (u1.values(gs)?, u2.values(gps)?);
    let (w1, w2) = (u1.weights(), u2.weights());
    let d = u1.dim();
    let mut out = CMatrix::zeros(d, d);
    for (a, l) in left.iter().enumerate() {
        for (b, r) in right.iter().enumerate() {
            let s = gram[(a, b)] * w1[a] * w2[b];
            if s.norm() > T::zero() {
                add_outer(&mut out, l, r, s);
            }
        }
    }
    Ok(out)
}

type M2<T> = [Complex<T>; 4];

fn m2<T: Real>(g: &CMatrix<T>) -> M2<T> {
    [g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]]
}

fn m2_mul<T: Real>(a: &M2<T>, b: &M2<T>) -> M2<T> {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

/// `Re tr(a b)`.
fn re_trace<T: Real>(a: &M2<T>, b: &M2<T>) -> T {
    (a[0] * b[0] + a[1] * b[2] + a[2] * b[1] + a[3] * b[3]).re
}

/// Heat kernel `Z_A(x) = Σ_m (m+1) e^{-A c₂(m)} χ_m(x)` as a function of the
/// trace `x`.
struct HeatKernel<T> {
    coefficients: Vec<T>,
}

impl<T: Real> HeatKernel<T> {
    fn new(area: T, cutoff: f64) -> Result<Self> {
        let rs = RootSystem::su2();
        let coefficients = rs
            .dominant_weights_below(cutoff)?
            .iter()
            .map(|l| T::lit((l.m() + 1) as f64) * (-area * T::from_rational(&rs.casimir2_exact(l))).exp())
            .collect();
        Ok(Self { coefficients })
    }

    fn eval(&self, x: T) -> T {
        let (mut prev, mut cur) = (T::one(), x);
        let mut acc = self.coefficients[0];
        for (k, &c) in self.coefficients.iter().enumerate().skip(1) {
            if k > 1 {
                let next = x * cur - prev;
                prev = cur;
                cur = next;
            }
            acc += c * cur;
        }
        acc
    }
}

/// Integral form of the cylinder kernel,
/// `∫ Π_i Z_{A_i}(g′_i⁻¹ h_i⁻¹ g_i h_{i+1}) ⊗_i π^{μ_i}(h_i) dh⃗`
/// (`h_{N+1} = h_1`), on the SU(2) product grid for `N ≤ 2`.
pub fn cylinder_propagator_integral<T: Real>(
    spins: &[HighestWeight],
    areas: &[T],
    gs: &[CMatrix<T>],
    gps: &[CMatrix<T>],
    spec: &QuadratureSpec,
    cutoff: f64,
) -> Result<CMatrix<T>> {
    check_areas(spins, areas)?;
    if spins.iter().any(|s| s.rank() != 1) {
        return Err(Error::Unsupported("integral propagators are implemented for SU(2)".into()));
    }
    if spec.scheme != Scheme::EulerGrid {
        return Err(Error::Unsupported("integral propagators need the full-group quadrature".into()));
    }
    let n = spins.len();
    if gs.len() != n || gps.len() != n {
        return Err(invalid("boundary holonomies do not match the number of lines"));
    }
    let kernels = areas.iter().map(|&a| HeatKernel::new(a, cutoff)).collect::<Result<Vec<_>>>()?;
    let grid = haar::su2_grid::<T>(spec.resolution);
    match n {
        1 => {
            let (g, gp_inv) = (m2(&gs[0]), m2(&gps[0].adjoint()));
            let m = spins[0].m();
            Ok(haar::weighted_sum(&grid, |h: &CMatrix<T>| {
                let (hm, hinv) = (m2(h), m2(&h.adjoint()));
                let x = re_trace(&m2_mul(&gp_inv, &hinv), &m2_mul(&g, &hm));
                su2::rep(m, h).scale_real(kernels[0].eval(x))
            }))
        }
        2 => Ok(two_line_integral(spins, &kernels, gs, gps, &grid)),
        _ => Err(Error::Unsupported(format!("integral propagator for N = {n} > 2 lines"))),
    }
}

fn two_line_integral<T: Real>(
    spins: &[HighestWeight],
    kernels: &[HeatKernel<T>],
    gs: &[CMatrix<T>],
    gps: &[CMatrix<T>],
    grid: &[(CMatrix<T>, T)],
) -> CMatrix<T> {
    let (g1, g2) = (m2(&gs[0]), m2(&gs[1]));
    let (gp1_inv, gp2_inv) = (m2(&gps[0].adjoint()), m2(&gps[1].adjoint()));
    let hs: Vec<M2<T>> = grid.iter().map(|(h, _)| m2(h)).collect();
    // region 1: tr(C1(h1) h2) with C1(h) = g1'⁻¹ h⁻¹ g1; region 2: tr(D2(h2) h1)
    let inv: Vec<M2<T>> = grid.iter().map(|(h, _)| m2(&h.adjoint())).collect();
    let c1: Vec<M2<T>> = inv.iter().map(|hi| m2_mul(&m2_mul(&gp1_inv, hi), &g1)).collect();
    let d2: Vec<M2<T>> = inv.iter().map(|hi| m2_mul(&m2_mul(&gp2_inv, hi), &g2)).collect();
    let r2: Vec<CMatrix<T>> = grid.iter().map(|(h, _)| su2::rep(spins[1].m(), h)).collect();
    let d = spins[1].m() + 1;
    let indexed: Vec<(usize, T)> = grid.iter().enumerate().map(|(i, (_, w))| (i, *w)).collect();
    haar::weighted_sum(&indexed, |&i: &usize| {
        let mut s = vec![Complex::new(T::zero(), T::zero()); d * d];
        for (j, (_, w)) in grid.iter().enumerate() {
            let z = kernels[0].eval(re_trace(&c1[i], &hs[j])) * kernels[1].eval(re_trace(&d2[j], &hs[i]));
            let scale = *w * z;
            for (acc, &x) in s.iter_mut().zip(r2[j].data()) {
                *acc += x * scale;
            }
        }
        su2::rep(spins[0].m(), &grid[i].0).kron(&CMatrix::from_vec(d, d, s))
    })
}

/// Boundary holonomies on the torus, `g⃗ = (1, …, 1, e^{iθ H})`.
pub fn gauge_fixed_holonomies<T: Real>(n: usize, q: &CartanPoint<T>) -> Vec<CMatrix<T>> {
    let mut gs = vec![CMatrix::identity(2); n];
    gs[n - 1] = su2::diag(q.angles[0]);
    gs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(m: u32) -> HighestWeight {
        HighestWeight::su2(m)
    }

    #[test]
    fn trivial_spin_is_heat_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (g, gp): (CMatrix<f64>, CMatrix<f64>) = (su2::random(&mut rng), su2::random(&mut rng));
        let k = cylinder_propagator_spectral(&[w(0)], &[0.6], &[g.clone()], &[gp.clone()], 30.0).unwrap();
        let (x, y) = (g.trace().re, gp.trace().re);
        let expect: f64 = (0..7).map(|m| su2::character_of_trace(m, x) * su2::character_of_trace(m, y) * (-0.6 * (m * (m + 2)) as f64 / 2.0).exp()).sum();
        assert!((k[(0, 0)].re - expect).abs() < 1e-12);
    }

    #[test]
    fn spectral_matches_integral_one_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let gs = vec![su2::random::<f64, _>(&mut rng)];
        let gps = vec![su2::random::<f64, _>(&mut rng)];
        let s = cylinder_propagator_spectral(&[w(2)], &[0.8], &gs, &gps, 40.0).unwrap();
        let q = cylinder_propagator_integral(&[w(2)], &[0.8], &gs, &gps, &QuadratureSpec::group(16), 40.0).unwrap();
        assert!(s.dist(&q) < 1e-6, "{}", s.dist(&q));
    }

    #[test]
    fn composition_matches_operator_product() {
        let spins = vec![w(1), w(1)];
        let u1 = SpectralPropagator::new(spins.clone(), vec![0.3, 0.7], 20.0).unwrap();
        let u2 = SpectralPropagator::new(spins.clone(), vec![0.7, 0.3], 20.0).unwrap();
        let u12 = compose_propagators(&u1, &u2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let gs: Vec<CMatrix<f64>> = (0..2).map(|_| su2::random(&mut rng)).collect();
        let gps: Vec<CMatrix<f64>> = (0..2).map(|_| su2::random(&mut rng)).collect();
        let direct = operator_product(&u1, &u2, &gs, &gps, 64).unwrap();
        assert!(direct.dist(&u12.kernel(&gs, &gps).unwrap()) < 1e-10);
        assert!(matches!(SpectralPropagator::new(spins, vec![0.0, 1.0], 20.0), Err(Error::DivergentSeries(_))));
    }
}
