use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;
use num_traits::Zero;

use crate::lie::root_system::{CartanPoint, HighestWeight, RootSystem};
use crate::scalar::{Rational, Real};

/// Weight multiplicities of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest: HighestWeight,
    pub entries: BTreeMap<Vec<i64>, u64>,
}

impl WeightSystem {
    /// Freudenthal recursion over the dominant weights below `λ`, expanded to
    /// full Weyl orbits.
    pub fn freudenthal(rs: &RootSystem, lambda: &HighestWeight) -> Self {
        let r = rs.rank();
        let lam = lambda.coords().to_vec();
        let form = rs.bilinear_form();
        // λ in simple-root coordinates bounds the depth λ - μ of dominant μ.
        let depth: Vec<i64> = (0..r)
            .map(|i| {
                let x: Rational = (0..r).map(|j| form[i][j] * lam[j]).sum();
                x.floor().to_integer()
            })
            .collect();
        let mut dominant: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut k = vec![0i64; r];
        loop {
            let mut mu = lam.clone();
            for (i, &ki) in k.iter().enumerate() {
                for (m, &c) in mu.iter_mut().zip(&rs.cartan_matrix()[i]) {
                    *m -= ki * c;
                }
            }
            if mu.iter().all(|&c| c >= 0) {
                dominant.push((k.iter().sum(), mu));
            }
            let mut pos = 0;
            while pos < r {
                k[pos] += 1;
                if k[pos] <= depth[pos] {
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
        dominant.sort();
        let rho = rs.rho();
        let shifted = |w: &[i64]| -> Vec<i64> { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
        let top = rs.norm_sq(&shifted(&lam));
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        for (_, mu) in &dominant {
            if *mu == lam {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let mut acc = Rational::zero();
            for alpha in rs.positive_roots() {
                let mut step = 1;
                loop {
                    let nu: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m + step * a).collect();
                    let (dom, _) = rs.to_dominant(&nu);
                    match mult.get(&dom) {
                        Some(&m) => acc += rs.inner(&nu, alpha) * (m as i64),
                        None => break,
                    }
                    step += 1;
                }
            }
            let denom = top - rs.norm_sq(&shifted(mu));
            let value = acc * 2 / denom;
            debug_assert!(value.is_integer());
            mult.insert(mu.clone(), value.to_integer() as u64);
        }
        let mut entries = BTreeMap::new();
        for (_, mu) in &dominant {
            let m = mult[mu];
            if m == 0 {
                continue;
            }
            for w in rs.orbit(mu) {
                entries.insert(w, m);
            }
        }
        Self { highest: lambda.clone(), entries }
    }

    pub fn multiplicity(&self, weight: &[i64]) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `Σ_μ mult(μ) e^{i(μ, q)}`.
    pub fn character<T: Real>(&self, q: &CartanPoint<T>) -> Complex<T> {
        self.entries.iter().fold(Complex::zero(), |acc, (w, &m)| {
            acc + Complex::from_polar(T::lit(m as f64), q.pair(w))
        })
    }
}

/// Character by the weight-multiplicity sum; valid at every torus point.
pub fn character<T: Real>(rs: &RootSystem, lambda: &HighestWeight, q: &CartanPoint<T>) -> Complex<T> {
    rs.weights(lambda).character(q)
}

/// Weyl numerator `Σ_w det(w) e^{i(w(λ+ρ), q)}`.
pub fn weyl_numerator<T: Real>(rs: &RootSystem, lambda: &HighestWeight, q: &CartanPoint<T>) -> Complex<T> {
    let shifted: Vec<i64> = lambda.coords().iter().map(|c| c + 1).collect();
    rs.weyl_group().iter().fold(Complex::zero(), |acc, w| {
        let v = rs.weyl_act_weight(w, &shifted);
        acc + Complex::from_polar(T::lit(w.det as f64), q.pair(&v))
    })
}

/// `δ(q) = Π_{α>0} (ξ_α - ξ_{-α})` with `ξ_α = e^{i(α,q)/2}`.
pub fn weyl_denominator<T: Real>(rs: &RootSystem, q: &CartanPoint<T>) -> Complex<T> {
    let half = T::lit(0.5);
    rs.positive_roots().iter().fold(Complex::new(T::one(), T::zero()), |acc, alpha| {
        acc * Complex::new(T::zero(), (half * q.pair(alpha)).sin() * T::lit(2.0))
    })
}

/// Character by the Weyl quotient; only meaningful at regular points.
pub fn character_weyl_quotient<T: Real>(
    rs: &RootSystem,
    lambda: &HighestWeight,
    q: &CartanPoint<T>,
) -> Complex<T> {
    weyl_numerator(rs, lambda, q) / weyl_denominator(rs, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_string() {
        let rs = RootSystem::su2();
        let ws = rs.weight_system(&HighestWeight::su2(3));
        let keys: Vec<i64> = ws.entries.keys().map(|w| w[0]).collect();
        assert_eq!(keys, vec![-3, -1, 1, 3]);
        assert!(ws.entries.values().all(|&m| m == 1));
    }

    #[test]
    fn su3_adjoint_zero_weight() {
        let rs = RootSystem::su(3).unwrap();
        let ws = rs.weight_system(&HighestWeight::new(vec![1, 1]).unwrap());
        assert_eq!(ws.multiplicity(&[0, 0]), 2);
        assert_eq!(ws.total(), 8);
    }

    #[test]
    fn trivial_weight_system() {
        let rs = RootSystem::a(3).unwrap();
        let ws = rs.weight_system(&HighestWeight::zero(3));
        assert_eq!(ws.entries.len(), 1);
        assert_eq!(ws.multiplicity(&[0, 0, 0]), 1);
    }

    #[test]
    fn su2_character_closed_form() {
        let rs = RootSystem::su2();
        let th = 0.37f64;
        for m in 0..6u32 {
            let chi = character(&rs, &HighestWeight::su2(m), &CartanPoint::su2(th));
            let exact = (((m + 1) as f64) * th).sin() / th.sin();
            assert!((chi.re - exact).abs() < 1e-12 && chi.im.abs() < 1e-12);
        }
        let d = weyl_denominator(&rs, &CartanPoint::su2(th));
        assert!((d - Complex::new(0.0, 2.0 * th.sin())).norm() < 1e-15);
    }
}
