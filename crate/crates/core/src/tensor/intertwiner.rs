use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::lie::HighestWeight;
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::tensor::su2;

/// Equivariant map `V_ν → V_{ν'} ⊗ V_μ` (SU(2)), stored as a
/// `(dim ν' · dim μ) × dim ν` matrix with the `ν'` index major.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwiner<T> {
    pub source: HighestWeight,
    pub targets: (HighestWeight, HighestWeight),
    pub matrix: CMatrix<T>,
}

fn check_su2(ws: &[&HighestWeight]) -> Result<()> {
    if ws.iter().any(|w| w.rank() != 1) {
        return Err(Error::Unsupported("explicit intertwiners are implemented for SU(2) only".into()));
    }
    Ok(())
}

fn equivariance_system<T: Real>(nu: usize, nup: usize, mu: usize) -> CMatrix<T> {
    let (dn, dt) = (nu + 1, (nup + 1) * (mu + 1));
    let (gn, gp, gm) = (su2::generators::<T>(nu), su2::generators::<T>(nup), su2::generators::<T>(mu));
    let pairs = [(&gn.0, &gp.0, &gm.0), (&gn.1, &gp.1, &gm.1), (&gn.2, &gp.2, &gm.2)];
    let mut rows: Vec<Complex<T>> = Vec::new();
    for (x, y, z) in pairs {
        let xt = &y.kron(&CMatrix::identity(mu + 1)) + &CMatrix::identity(nup + 1).kron(z);
        // row-major vec(X_t a - a X) = (X_t ⊗ 1 - 1 ⊗ X^T) vec(a)
        let block = &xt.kron(&CMatrix::identity(dn)) - &CMatrix::identity(dt).kron(&x.transpose());
        rows.extend_from_slice(block.data());
    }
    let n = dt * dn;
    CMatrix::from_vec(rows.len() / n, n, rows)
}

/// Basis of `Hom_G(V_ν, V_{ν'} ⊗ V_μ)` by solving the equivariance system.
pub fn intertwiner_space<T: Real>(nu: usize, nup: usize, mu: usize) -> Vec<CMatrix<T>> {
    let (dn, dt) = (nu + 1, (nup + 1) * (mu + 1));
    equivariance_system::<T>(nu, nup, mu)
        .nullspace(T::lit(1e3) * T::epsilon())
        .into_iter()
        .map(|v| CMatrix::from_vec(dt, dn, v))
        .collect()
}

/// Clebsch-Gordan intertwiner normalized by `(a, a) = 1`, with the
/// highest-weight-to-highest-weight entry real and positive.
pub fn cg_intertwiner<T: Real>(
    nu: &HighestWeight,
    nup: &HighestWeight,
    mu: &HighestWeight,
) -> Result<Intertwiner<T>> {
    check_su2(&[nu, nup, mu])?;
    let (n, p, m) = (nu.m(), nup.m(), mu.m());
    let space = intertwiner_space::<T>(n, p, m);
    match space.len() {
        0 => {
            return Err(Error::Admissibility(format!("V_{n} is not contained in V_{p} ⊗ V_{m}")));
        }
        1 => {}
        k => return Err(Error::Admissibility(format!("multiplicity {k} slot rejected"))),
    }
    let mut a = space.into_iter().next().expect("one solution");
    let pairing = (&a.adjoint() * &a)[(0, 0)].re;
    a = a.scale_real(T::one() / pairing.sqrt());
    let j = (m + p - n) / 2;
    let entry = a[(j, 0)];
    a = a.scale(entry.conj() / entry.norm());
    Ok(Intertwiner { source: nu.clone(), targets: (nup.clone(), mu.clone()), matrix: a })
}

impl<T: Real> Intertwiner<T> {
    pub fn new(
        source: HighestWeight,
        targets: (HighestWeight, HighestWeight),
        matrix: CMatrix<T>,
    ) -> Result<Self> {
        check_su2(&[&source, &targets.0, &targets.1])?;
        let (n, p, m) = (source.m(), targets.0.m(), targets.1.m());
        if matrix.rows() != (p + 1) * (m + 1) || matrix.cols() != n + 1 {
            return Err(invalid(format!(
                "intertwiner matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                (p + 1) * (m + 1),
                n + 1
            )));
        }
        Ok(Self { source, targets, matrix })
    }

    pub fn identity(nu: &HighestWeight) -> Result<Self> {
        check_su2(&[nu])?;
        let d = nu.m() + 1;
        Ok(Self { source: nu.clone(), targets: (nu.clone(), HighestWeight::su2(0)), matrix: CMatrix::identity(d) })
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self { matrix: self.matrix.scale(c), ..self.clone() }
    }

    /// Largest entry of `(π^{ν'}(X) ⊗ 1 + 1 ⊗ π^μ(X)) a - a π^ν(X)` over
    /// `X ∈ {e, f, h}`.
    pub fn equivariance_residual(&self) -> T {
        let (n, p, m) = (self.source.m(), self.targets.0.m(), self.targets.1.m());
        let (gn, gp, gm) = (su2::generators::<T>(n), su2::generators::<T>(p), su2::generators::<T>(m));
        let pairs = [(&gn.0, &gp.0, &gm.0), (&gn.1, &gp.1, &gm.1), (&gn.2, &gp.2, &gm.2)];
        pairs
            .iter()
            .map(|(x, y, z)| {
                let xt = &y.kron(&CMatrix::identity(m + 1)) + &CMatrix::identity(p + 1).kron(z);
                (&(&xt * &self.matrix) - &(&self.matrix * x)).max_abs()
            })
            .fold(T::zero(), T::max)
    }

    pub fn same_sector(&self, other: &Self) -> bool {
        self.source == other.source && self.targets == other.targets
    }
}

/// `(b, a)` defined by `b^† a = (b, a) id_{V_ν}`.
pub fn schur_pairing<T: Real>(a: &Intertwiner<T>, b: &Intertwiner<T>) -> Result<Complex<T>> {
    if !a.same_sector(b) {
        return Err(invalid("schur pairing of intertwiners from different sectors"));
    }
    let prod = &b.matrix.adjoint() * &a.matrix;
    let d = prod.rows();
    Ok(prod.trace() / T::lit(d as f64))
}

/// Orthonormal basis (under the Schur pairing) of the invariant vectors in
/// `V_{m_1}^{ε_1} ⊗ … ⊗ V_{m_k}^{ε_k}`, where `ε = false` marks a dual factor.
pub fn invariant_vectors<T: Real>(legs: &[(usize, bool)]) -> Vec<Vec<Complex<T>>> {
    let dims: Vec<usize> = legs.iter().map(|&(m, _)| m + 1).collect();
    let total: usize = dims.iter().product();
    let mut rows: Vec<Complex<T>> = Vec::new();
    for g in 0..3 {
        let mut op = CMatrix::zeros(total, total);
        for (pos, &(m, primal)) in legs.iter().enumerate() {
            let gens = su2::generators::<T>(m);
            let x = [gens.0, gens.1, gens.2][g].clone();
            let x = if primal { x } else { x.transpose().scale_real(-T::one()) };
            op = &op + &su2::embed(&x, &dims, pos);
        }
        rows.extend_from_slice(op.data());
    }
    let system = CMatrix::from_vec(3 * total, total, rows);
    let mut basis = system.nullspace(T::lit(1e3) * T::epsilon());
    for v in basis.iter_mut() {
        crate::linalg::fix_phase(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: u32) -> HighestWeight {
        HighestWeight::su2(m)
    }

    #[test]
    fn identity_for_trivial_spin() {
        let a = cg_intertwiner::<f64>(&w(3), &w(3), &w(0)).unwrap();
        assert!(a.matrix.dist(&CMatrix::identity(4)) < 1e-13);
    }

    #[test]
    fn singlet_convention() {
        let a = cg_intertwiner::<f64>(&w(0), &w(1), &w(1)).unwrap();
        let s = 0.5f64.sqrt();
        let expect = [0.0, s, -s, 0.0];
        for (i, e) in expect.iter().enumerate() {
            assert!((a.matrix[(i, 0)] - Complex::new(*e, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn inadmissible_rejected() {
        assert!(matches!(cg_intertwiner::<f64>(&w(3), &w(1), &w(1)), Err(Error::Admissibility(_))));
        assert!(matches!(cg_intertwiner::<f64>(&w(1), &w(1), &w(1)), Err(Error::Admissibility(_))));
    }

    #[test]
    fn pairing_is_sesquilinear() {
        let a = cg_intertwiner::<f64>(&w(2), &w(1), &w(1)).unwrap();
        let two = a.scaled(Complex::new(2.0, 0.0));
        assert!((schur_pairing(&a, &a).unwrap() - Complex::new(1.0, 0.0)).norm() < 1e-13);
        assert!((schur_pairing(&two, &a).unwrap() - Complex::new(2.0, 0.0)).norm() < 1e-13);
        let b = cg_intertwiner::<f64>(&w(0), &w(1), &w(1)).unwrap();
        assert!(schur_pairing(&a, &b).is_err());
    }

    #[test]
    fn invariants_of_two_spin_halves() {
        let v = invariant_vectors::<f64>(&[(1, true), (1, true)]);
        assert_eq!(v.len(), 1);
        let v = invariant_vectors::<f64>(&[(1, true), (1, false)]);
        assert_eq!(v.len(), 1);
        let s = 0.5f64.sqrt();
        assert!((v[0][0] - Complex::new(s, 0.0)).norm() < 1e-13);
        assert!((v[0][3] - Complex::new(s, 0.0)).norm() < 1e-13);
        assert_eq!(invariant_vectors::<f64>(&[(1, true), (1, true), (1, true), (1, true)]).len(), 2);
    }
}
