//! Verification suites: every algebraic identity of the crate checked against
//! an independent numerical oracle, reported in the shared record format.
//!
//! All randomness flows from [`VerifyConfig::seed`] through one ChaCha stream
//! per suite, so reports are reproducible bit for bit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cm::{
    admissible_sectors, apply_cm_hamiltonian, apply_kzb, compose_propagators, cylinder_propagator_integral,
    cylinder_propagator_spectral, operator_product, r_matrix_residuals, random_regular_point, trace_orthogonality,
    KzbVariant, SpectralPropagator, SpinChainConfig,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{cylinder_surface, evaluate_partition, BoundaryData};
use crate::haar::{integrate_class, integrate_group, verify_identity, Identity, QuadratureSpec};
use crate::lie::{character, CartanPoint, HighestWeight, RootSystem};
use crate::linalg::CMatrix;
use crate::report::{VerificationRecord, VerificationReport};
use crate::scalar::Rational;
use crate::surface::{disc_kernel, glue, insert_observable, ClassSeries, PointObservable};
use crate::tensor::su2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rmatrix,
    Eigen,
    Kzb,
    Haar,
    Gluing,
    Orthogonality,
    All,
}

impl Suite {
    /// The individual suites, in the order `all` runs them.
    pub const EACH: [Suite; 6] = [Suite::Rmatrix, Suite::Eigen, Suite::Kzb, Suite::Haar, Suite::Gluing, Suite::Orthogonality];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rmatrix => "rmatrix",
            Suite::Eigen => "eigen",
            Suite::Kzb => "kzb",
            Suite::Haar => "haar",
            Suite::Gluing => "gluing",
            Suite::Orthogonality => "orthogonality",
            Suite::All => "all",
        }
    }

    /// Default tolerance of the suite's primary checks.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Rmatrix => 1e-10,
            Suite::Eigen | Suite::Kzb => 1e-4,
            Suite::Haar | Suite::Gluing | Suite::Orthogonality | Suite::All => 1e-6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| invalid(format!("unknown suite {s}; expected rmatrix, eigen, kzb, haar, gluing, orthogonality or all")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Points per dimension of the SU(2) product grid.
    pub resolution: usize,
    /// Gauss points per dimension of the torus rule.
    pub torus_resolution: usize,
    pub fd_step: f64,
    /// Casimir cutoff on sectors for the eigen, kzb and orthogonality sweeps.
    pub sector_cutoff: f64,
    /// Casimir cutoff of the propagators in the composition check.
    pub propagator_cutoff: f64,
    /// Random regular points per configuration.
    pub points: usize,
    /// Replaces every suite default when set.
    pub tolerance: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20240917,
            resolution: 16,
            torus_resolution: 64,
            fd_step: 1e-3,
            sector_cutoff: 10.0,
            propagator_cutoff: 40.0,
            points: 5,
            tolerance: None,
        }
    }
}

impl VerifyConfig {
    pub fn check(&self) -> Result<()> {
        if self.resolution < 8 || self.torus_resolution < 8 {
            return Err(invalid("quadrature resolution must be at least 8"));
        }
        if !(self.fd_step > 0.0 && self.fd_step <= 0.1) {
            return Err(invalid(format!("fd_step must lie in (0, 0.1], got {}", self.fd_step)));
        }
        if !(self.sector_cutoff > 0.0 && self.propagator_cutoff > 0.0) {
            return Err(invalid("cutoffs must be positive"));
        }
        if self.points == 0 {
            return Err(invalid("at least one sample point is needed"));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) {
                return Err(invalid(format!("tolerance must be non-negative, got {t}")));
            }
        }
        Ok(())
    }

    fn tolerance(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (suite as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Runs one suite (or all of them, in [`Suite::EACH`] order).
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.check()?;
    match suite {
        Suite::Rmatrix => rmatrix(cfg),
        Suite::Eigen => eigen(cfg),
        Suite::Kzb => kzb(cfg),
        Suite::Haar => haar_suite(cfg),
        Suite::Gluing => gluing(cfg),
        Suite::Orthogonality => orthogonality(cfg),
        Suite::All => {
            let mut out = VerificationReport::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, cfg)?);
            }
            Ok(out)
        }
    }
}

fn w(m: usize) -> HighestWeight {
    HighestWeight::su2(m as u32)
}

fn labels(ws: &[HighestWeight]) -> String {
    format!("[{}]", ws.iter().map(|x| x.m().to_string()).collect::<Vec<_>>().join(","))
}

fn list(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// All spin tuples of length `1..=max_len` with entries in `0..=max_spin`.
pub fn spin_tuples(max_len: usize, max_spin: usize) -> Vec<Vec<HighestWeight>> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        let total = (max_spin + 1).pow(n as u32);
        for code in 0..total {
            let mut rem = code;
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = rem % (max_spin + 1);
                rem /= max_spin + 1;
            }
            out.push(t.into_iter().map(w).collect());
        }
    }
    out
}

fn sweep(cfg: &VerifyConfig, max_len: usize) -> Result<Vec<SpinChainConfig<f64>>> {
    let mut out = Vec::new();
    for spins in spin_tuples(max_len, 2) {
        for sectors in admissible_sectors(&spins, cfg.sector_cutoff)? {
            out.push(SpinChainConfig::new(spins.clone(), sectors)?);
        }
    }
    Ok(out)
}

fn points(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<CartanPoint<f64>> {
    let rs = RootSystem::su2();
    (0..cfg.points).map(|_| random_regular_point(&rs, rng, 0.3)).collect()
}

fn chain_label(c: &SpinChainConfig<f64>) -> String {
    format!("spins={} sectors={}", labels(c.spins()), labels(c.sectors()))
}

/// Dynamical r-matrix identities for every spin triple with entries `≤ 2`.
fn rmatrix(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerance(Suite::Rmatrix.default_tolerance());
    let mut rng = cfg.rng(Suite::Rmatrix);
    let rs = RootSystem::su2();
    let qs: Vec<CartanPoint<f64>> = (0..20).map(|_| random_regular_point(&rs, &mut rng, 0.05)).collect();
    let probe = rng.gen::<f64>() * std::f64::consts::TAU;
    let mut out = VerificationReport::new();
    for spins in spin_tuples(3, 2).into_iter().filter(|s| s.len() == 3) {
        let s = [spins[0].m(), spins[1].m(), spins[2].m()];
        let mut worst = BTreeMap::<&str, f64>::new();
        for q in &qs {
            let r = r_matrix_residuals(q, s, probe)?;
            for (k, v) in [
                ("flip", r.flip),
                ("casimir", r.casimir),
                ("conjugation", r.conjugation),
                ("weight-zero", r.weight_zero),
                ("yang-baxter", r.yang_baxter),
            ] {
                let e = worst.entry(k).or_insert(0.0);
                *e = e.max(v);
            }
        }
        for (k, v) in worst {
            out.push(VerificationRecord::new("rmatrix", k, format!("spins={} points=20", list(&s)), None, v, tol));
        }
    }
    Ok(out)
}

/// Relative residual of `H F = c₂ F` and its step-halving ratio.
fn eigen(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerance(Suite::Eigen.default_tolerance());
    let mut rng = cfg.rng(Suite::Eigen);
    let qs = points(cfg, &mut rng);
    let mut out = VerificationReport::new();
    for c in sweep(cfg, 3)? {
        let mut worst = 0.0f64;
        let mut coarse = 0.0f64;
        let mut fine = 0.0f64;
        for q in &qs {
            let r = apply_cm_hamiltonian(&c, q, cfg.fd_step)?;
            if r.residual > worst {
                worst = r.residual;
                coarse = r.residual;
                fine = apply_cm_hamiltonian(&c, q, cfg.fd_step / 2.0)?.residual;
            }
        }
        let label = chain_label(&c);
        out.push(VerificationRecord::new("eigen", "hamiltonian", label.clone(), Some(cfg.fd_step), worst, tol));
        out.push(VerificationRecord::new("eigen", "order", label, Some(cfg.fd_step), (coarse / fine - 4.0).abs(), 0.5));
    }
    Ok(out)
}

/// KZB eigenvalue equations `D_i F = (c₂(ν_i) - c₂(ν_{i-1}))/2 F` on every site.
fn kzb(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerance(Suite::Kzb.default_tolerance());
    let mut rng = cfg.rng(Suite::Kzb);
    let qs = points(cfg, &mut rng);
    let mut out = VerificationReport::new();
    for c in sweep(cfg, 3)? {
        for (variant, name) in [(KzbVariant::Normalized, "normalized"), (KzbVariant::Unnormalized, "unnormalized")] {
            for i in 0..c.n() {
                let mut worst = 0.0f64;
                for q in &qs {
                    worst = worst.max(apply_kzb(&c, i, q, cfg.fd_step, variant)?.residual);
                }
                let label = format!("{} site={i}", chain_label(&c));
                out.push(VerificationRecord::new("kzb", name, label, Some(cfg.fd_step), worst, tol));
            }
        }
    }
    Ok(out)
}

fn haar_suite(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerance(Suite::Haar.default_tolerance());
    let mut rng = cfg.rng(Suite::Haar);
    let group = QuadratureSpec::group(cfg.resolution);
    let torus = QuadratureSpec::torus(cfg.torus_resolution);
    let step = Some(cfg.resolution as f64);
    let mut out = VerificationReport::new();
    let su2_rs = RootSystem::su2();

    let one = integrate_group(&group, |_: &CMatrix<f64>| num_complex::Complex::new(1.0, 0.0));
    out.push(VerificationRecord::new("haar", "normalization", "group", step, (one - 1.0).norm(), 1e-12));
    let one_t = integrate_class(&su2_rs, &torus, |_: &CartanPoint<f64>| num_complex::Complex::new(1.0, 0.0));
    out.push(VerificationRecord::new("haar", "normalization", "torus", Some(cfg.torus_resolution as f64), (one_t - 1.0).norm(), 1e-12));

    for rs in [su2_rs.clone(), RootSystem::su(3)?] {
        let cut = if rs.rank() == 1 { 24.0 } else { 8.0 };
        let ws = rs.dominant_weights_below(cut)?;
        let mut worst = 0.0f64;
        for a in &ws {
            for b in &ws {
                let v = integrate_class(&rs, &torus, |q: &CartanPoint<f64>| character(&rs, a, q) * character(&rs, b, q).conj());
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - expect).norm());
            }
        }
        let label = format!("su{} weights={}", rs.rank() + 1, ws.len());
        out.push(VerificationRecord::new("haar", "character-orthonormality", label, Some(cfg.torus_resolution as f64), worst, 1e-8));
    }

    for l in 0..=3 {
        for m in 0..=3 {
            let r = verify_identity::<f64>(&Identity::Integ2, &[l, m], &group)?;
            out.push(VerificationRecord::new("haar", "integ-2", format!("reps={}", list(&[l, m])), step, r.residual, tol));
        }
    }
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                let r = verify_identity::<f64>(&Identity::Integ3, &[a, b, c], &group)?;
                out.push(VerificationRecord::new("haar", "integ-3", format!("reps={}", list(&[a, b, c])), step, r.residual, tol));
            }
        }
    }
    for reps in spin_tuples(3, 3).into_iter().filter(|s| s.len() >= 2) {
        let reps: Vec<usize> = reps.iter().map(HighestWeight::m).collect();
        let r = verify_identity::<f64>(&Identity::Projector, &reps, &group)?;
        out.push(VerificationRecord::new("haar", "projector", format!("reps={}", list(&reps)), step, r.residual, tol));
    }

    // random class functions Σ c_m χ_m evaluated on group elements and on the torus
    for k in 0..10 {
        let coeffs: Vec<f64> = (0..=6).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let f = |x: f64| -> f64 {
            let s: f64 = coeffs.iter().enumerate().map(|(m, c)| c * su2::character_of_trace(m, x)).sum();
            s * s
        };
        let on_group = integrate_group(&group, |g: &CMatrix<f64>| num_complex::Complex::new(f(g.trace().re), 0.0));
        let on_torus = integrate_class(&su2_rs, &torus, |q: &CartanPoint<f64>| num_complex::Complex::new(f(2.0 * q.angles[0].cos()), 0.0));
        out.push(VerificationRecord::new("haar", "group-vs-class", format!("class-function={k}"), step, (on_group - on_torus).norm(), tol));
    }
    Ok(out)
}

fn series_distance(a: &ClassSeries<Rational>, b: &ClassSeries<Rational>) -> f64 {
    let keys: std::collections::BTreeSet<&HighestWeight> = a.amplitudes().keys().chain(b.amplitudes().keys()).collect();
    let mut worst = if a.area() == b.area() { 0.0f64 } else { f64::INFINITY };
    for l in keys {
        let d = a.amplitude(l) - b.amplitude(l);
        worst = worst.max((*d.numer() as f64 / *d.denom() as f64).abs());
    }
    worst
}

fn random_observable(rng: &mut ChaCha8Rng, ws: &[HighestWeight]) -> PointObservable<Rational> {
    let mut values = BTreeMap::new();
    for l in ws {
        if rng.gen_bool(0.7) {
            values.insert(l.clone(), Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        }
    }
    PointObservable::new(values)
}

fn cylinder_boundary(gs: &[CMatrix<f64>], gps: &[CMatrix<f64>]) -> BoundaryData<f64> {
    let mut data = BoundaryData::new();
    for (i, (g, gp)) in gs.iter().zip(gps).enumerate() {
        data.insert(format!("t{i}"), g.clone());
        data.insert(format!("b{i}"), gp.clone());
    }
    data
}

fn gluing(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerance(Suite::Gluing.default_tolerance());
    let mut rng = cfg.rng(Suite::Gluing);
    let group = QuadratureSpec::group(cfg.resolution);
    let mut out = VerificationReport::new();
    let su2_rs = RootSystem::su2();

    // coefficient-exact gluing and point-observable algebra
    for rs in [su2_rs.clone(), RootSystem::su(3)?] {
        let cut = 30.0;
        let (a, b) = (Rational::new(3, 10), Rational::new(7, 10));
        let glued = glue(&disc_kernel(&rs, a, cut)?, &disc_kernel(&rs, b, cut)?)?;
        let label = format!("su{} areas=3/10+7/10", rs.rank() + 1);
        out.push(VerificationRecord::new("gluing", "disc-exact", label, None, series_distance(&glued, &disc_kernel(&rs, a + b, cut)?), 0.0));
        let ws = rs.dominant_weights_below(cut)?;
        for k in 0..5 {
            let (f, g) = (random_observable(&mut rng, &ws), random_observable(&mut rng, &ws));
            let left = glue(&insert_observable(&disc_kernel(&rs, a, cut)?, &f), &insert_observable(&disc_kernel(&rs, b, cut)?, &g))?;
            let right = insert_observable(&disc_kernel(&rs, a + b, cut)?, &f.product(&g));
            let label = format!("su{} observables={k}", rs.rank() + 1);
            out.push(VerificationRecord::new("gluing", "observable-algebra", label, None, series_distance(&left, &right), 0.0));
        }
    }

    // ∫ Z_A(x h) Z_B(h⁻¹ y) dh = Z_{A+B}(x y)
    let cut = 20.0;
    let (za, zb) = (disc_kernel(&su2_rs, 0.3, cut)?, disc_kernel(&su2_rs, 0.7, cut)?);
    let zab = glue(&za, &zb)?;
    for k in 0..5 {
        let (x, y): (CMatrix<f64>, CMatrix<f64>) = (su2::random(&mut rng), su2::random(&mut rng));
        let quad = integrate_group(&group, |h: &CMatrix<f64>| {
            let v = za.evaluate_su2_trace((&x * h).trace().re) * zb.evaluate_su2_trace((&h.adjoint() * &y).trace().re);
            num_complex::Complex::new(v, 0.0)
        });
        let exact = zab.evaluate_su2_trace((&x * &y).trace().re);
        out.push(VerificationRecord::new("gluing", "disc-quadrature", format!("point={k} areas=0.3+0.7"), Some(cfg.resolution as f64), (quad.re - exact).abs(), tol));
    }

    // U_A ∘ U_B = U_{A+B} with quadrature overlaps
    for spins in spin_tuples(3, 2) {
        let n = spins.len();
        let mut worst = 0.0f64;
        for a in [0.3, 0.7] {
            for b in [0.3, 0.7] {
                let u1 = SpectralPropagator::new(spins.clone(), vec![a; n], cfg.propagator_cutoff)?;
                let u2 = SpectralPropagator::new(spins.clone(), vec![b; n], cfg.propagator_cutoff)?;
                let u12 = compose_propagators(&u1, &u2)?;
                let gs: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut rng)).collect();
                let gps: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut rng)).collect();
                let direct = operator_product(&u1, &u2, &gs, &gps, cfg.torus_resolution)?;
                worst = worst.max(direct.dist(&u12.kernel(&gs, &gps)?));
            }
        }
        out.push(VerificationRecord::new("gluing", "composition", format!("spins={}", labels(&spins)), Some(cfg.torus_resolution as f64), worst, 1e-8f64.max(cfg.tolerance.unwrap_or(0.0))));
    }

    // graph evaluation of the cylinder against the spectral propagator
    for spins in [vec![w(1)], vec![w(2)], vec![w(1), w(1)], vec![w(1), w(2), w(1)]] {
        let n = spins.len();
        let areas: Vec<f64> = (0..n).map(|i| 0.4 + 0.2 * i as f64).collect();
        let gs: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut rng)).collect();
        let gps: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut rng)).collect();
        let state = evaluate_partition(&cylinder_surface(&spins, &areas)?, &su2_rs, &cylinder_boundary(&gs, &gps), None, cfg.propagator_cutoff)?;
        let rows: Vec<String> = (0..n).map(|i| format!("top{i}")).collect();
        let cols: Vec<String> = (0..n).map(|i| format!("bot{i}")).collect();
        let r: Vec<&str> = rows.iter().map(String::as_str).collect();
        let c: Vec<&str> = cols.iter().map(String::as_str).collect();
        let got = state.matrix(&r, &c)?;
        let expect = cylinder_propagator_spectral(&spins, &areas, &gs, &gps, cfg.propagator_cutoff)?;
        out.push(VerificationRecord::new("gluing", "graph-cylinder", format!("spins={}", labels(&spins)), None, got.dist(&expect), tol));
    }

    // spectral and integral propagators
    for spins in [vec![w(1)], vec![w(2)], vec![w(1), w(1)]] {
        let n = spins.len();
        let mut worst = 0.0f64;
        for area in [0.5, 0.8] {
            for _ in 0..3 {
                let gs: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut rng)).collect();
                let gps: Vec<CMatrix<f64>> = (0..n).map(|_| su2::random(&mut rng)).collect();
                let areas = vec![area; n];
                let spectral = cylinder_propagator_spectral(&spins, &areas, &gs, &gps, cfg.propagator_cutoff)?;
                let integral = cylinder_propagator_integral(&spins, &areas, &gs, &gps, &group, cfg.propagator_cutoff)?;
                worst = worst.max(spectral.dist(&integral));
            }
        }
        out.push(VerificationRecord::new("gluing", "spectral-vs-integral", format!("spins={} areas=0.5,0.8", labels(&spins)), Some(cfg.resolution as f64), worst, 1e-3f64.max(cfg.tolerance.unwrap_or(0.0))));
    }
    Ok(out)
}

/// `∫ (Ψ_b, Ψ_a)` against `Π δ_{νν'} (b_i, a_i)` for all sector pairs.
fn orthogonality(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let tol = cfg.tolerance(Suite::Orthogonality.default_tolerance());
    let torus = QuadratureSpec::torus(cfg.torus_resolution);
    let group = QuadratureSpec::group(cfg.resolution);
    let mut out = VerificationReport::new();
    for spins in spin_tuples(2, 2) {
        let configs: Vec<SpinChainConfig<f64>> = admissible_sectors(&spins, cfg.sector_cutoff)?
            .into_iter()
            .map(|s| SpinChainConfig::new(spins.clone(), s))
            .collect::<Result<_>>()?;
        let (mut diag, mut off) = (0.0f64, 0.0f64);
        let mut group_worst = 0.0f64;
        for a in &configs {
            for b in &configs {
                let r = trace_orthogonality(a, b, &torus)?.residual();
                if a.sectors() == b.sectors() {
                    diag = diag.max(r);
                } else {
                    off = off.max(r);
                }
                if spins.len() == 1 {
                    group_worst = group_worst.max(trace_orthogonality(a, b, &group)?.residual());
                }
            }
        }
        if configs.is_empty() {
            continue;
        }
        let label = format!("spins={} sectors={}", labels(&spins), configs.len());
        let step = Some(cfg.torus_resolution as f64);
        out.push(VerificationRecord::new("orthogonality", "diagonal", label.clone(), step, diag, tol));
        out.push(VerificationRecord::new("orthogonality", "off-diagonal", label.clone(), step, off, tol));
        if spins.len() == 1 {
            out.push(VerificationRecord::new("orthogonality", "full-group", label, Some(cfg.resolution as f64), group_worst, tol));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_invariants() {
        assert!(VerifyConfig::default().check().is_ok());
        for bad in [
            VerifyConfig { resolution: 7, ..Default::default() },
            VerifyConfig { fd_step: 0.0, ..Default::default() },
            VerifyConfig { fd_step: 0.2, ..Default::default() },
            VerifyConfig { sector_cutoff: 0.0, ..Default::default() },
            VerifyConfig { tolerance: Some(-1.0), ..Default::default() },
        ] {
            assert!(bad.check().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn spin_tuple_enumeration() {
        let t = spin_tuples(3, 2);
        assert_eq!(t.len(), 3 + 9 + 27);
        assert_eq!(t[3], vec![w(0), w(0)]);
    }

    #[test]
    fn tolerance_override_fails_everything() {
        let cfg = VerifyConfig { tolerance: Some(0.0), points: 1, ..Default::default() };
        let report = run_suite(Suite::Rmatrix, &cfg).unwrap();
        assert!(!report.all_pass());
    }
}
