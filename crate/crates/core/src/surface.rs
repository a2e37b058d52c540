//! Heat-kernel class functions `Σ_λ f_λ χ_λ` and their gluing algebra.
//!
//! A [`ClassSeries`] stores each coefficient as `f_λ = a_λ e^{-A c₂(λ)}` with
//! a common area `A`. Amplitudes `a_λ` live in any [`Coefficient`] field, so
//! gluing and observable insertion are exact when the field is exact.

use std::collections::BTreeMap;
use std::io;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lie::{character, CartanPoint, HighestWeight, RootSystem};
use crate::scalar::{pow_int, Coefficient, Real};

/// Bound model for the discarded tail: `|a_λ| ≤ scale · dim(λ)^exponent`.
#[derive(Clone, Debug, PartialEq)]
struct TailModel {
    exponent: i64,
    scale: f64,
}

#[derive(Clone, Debug)]
pub struct ClassSeries<S> {
    rs: RootSystem,
    cutoff: f64,
    area: S,
    amplitudes: BTreeMap<HighestWeight, S>,
    tail: Option<TailModel>,
}

impl<S: Coefficient> PartialEq for ClassSeries<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rs == other.rs
            && self.cutoff == other.cutoff
            && self.area == other.area
            && self.amplitudes == other.amplitudes
    }
}

fn check_area<S: Coefficient>(area: &S) -> Result<()> {
    if area.is_negative_or_zero() {
        return Err(Error::DivergentSeries(area.to_f64_lossy()));
    }
    Ok(())
}

/// Disc partition function `Σ dim(λ) e^{-A c₂(λ)} χ_λ` truncated at `c₂ ≤ cutoff`.
pub fn disc_kernel<S: Coefficient>(rs: &RootSystem, area: S, cutoff: f64) -> Result<ClassSeries<S>> {
    region_kernel(rs, area, 0, cutoff)
}

/// Region of genus `g` with one boundary circle:
/// `Σ dim(λ)^{1-2g} e^{-A c₂(λ)} χ_λ`.
pub fn region_kernel<S: Coefficient>(rs: &RootSystem, area: S, genus: u32, cutoff: f64) -> Result<ClassSeries<S>> {
    check_area(&area)?;
    let exponent = 1 - 2 * genus as i64;
    let amplitudes = rs
        .dominant_weights_below(cutoff)?
        .into_iter()
        .map(|l| {
            let d = S::from_u64_exact(rs.weyl_dim(&l));
            (l, pow_int(&d, exponent))
        })
        .collect();
    Ok(ClassSeries {
        rs: rs.clone(),
        cutoff,
        area,
        amplitudes,
        tail: Some(TailModel { exponent, scale: 1.0 }),
    })
}

/// Coefficient-wise gluing `c_λ = f_λ g_λ / dim(λ)`.
pub fn glue<S: Coefficient>(k1: &ClassSeries<S>, k2: &ClassSeries<S>) -> Result<ClassSeries<S>> {
    if k1.rs != k2.rs {
        return Err(invalid(format!("cannot glue {:?} to {:?}", k1.rs, k2.rs)));
    }
    let cutoff = k1.cutoff.min(k2.cutoff);
    let amplitudes = k1
        .amplitudes
        .iter()
        .filter(|(l, _)| k1.rs.casimir2(l) <= cutoff)
        .filter_map(|(l, a)| {
            k2.amplitudes.get(l).map(|b| {
                let d = S::from_u64_exact(k1.rs.weyl_dim(l));
                (l.clone(), a.clone() * b.clone() / d)
            })
        })
        .collect();
    let tail = match (&k1.tail, &k2.tail) {
        (Some(a), Some(b)) => Some(TailModel { exponent: a.exponent + b.exponent - 1, scale: a.scale * b.scale }),
        _ => None,
    };
    Ok(ClassSeries { rs: k1.rs.clone(), cutoff, area: k1.area.clone() + k2.area.clone(), amplitudes, tail })
}

/// Multiplier `F_λ` (equal to one outside its table).
#[derive(Clone, Debug, PartialEq)]
pub struct PointObservable<S> {
    pub values: BTreeMap<HighestWeight, S>,
}

impl<S: Coefficient> PointObservable<S> {
    pub fn new(values: BTreeMap<HighestWeight, S>) -> Self {
        Self { values }
    }

    pub fn one() -> Self {
        Self { values: BTreeMap::new() }
    }

    pub fn value(&self, lambda: &HighestWeight) -> S {
        self.values.get(lambda).cloned().unwrap_or_else(S::one)
    }

    /// `F_λ = δ_{λ, λ*}` on the weights with `c₂ ≤ cutoff`.
    pub fn orientation(rs: &RootSystem, cutoff: f64) -> Result<Self> {
        let values = rs
            .dominant_weights_below(cutoff)?
            .into_iter()
            .map(|l| {
                let v = if rs.dual(&l) == l { S::one() } else { S::zero() };
                (l, v)
            })
            .collect();
        Ok(Self { values })
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut values = self.values.clone();
        for (l, g) in &other.values {
            let f = self.value(l);
            values.insert(l.clone(), f * g.clone());
        }
        Self { values }
    }
}

/// `c_λ = f_λ F_λ`.
pub fn insert_observable<S: Coefficient>(k: &ClassSeries<S>, f: &PointObservable<S>) -> ClassSeries<S> {
    let amplitudes = k.amplitudes.iter().map(|(l, a)| (l.clone(), a.clone() * f.value(l))).collect();
    let beyond = f
        .values
        .iter()
        .filter(|(l, _)| k.rs.casimir2(l) > k.cutoff)
        .map(|(_, v)| v.to_f64_lossy().abs())
        .fold(1.0f64, f64::max);
    let tail = k.tail.as_ref().map(|t| TailModel { exponent: t.exponent, scale: t.scale * beyond });
    ClassSeries { amplitudes, tail, ..k.clone() }
}

impl<S: Coefficient> ClassSeries<S> {
    pub fn zero(rs: &RootSystem, cutoff: f64) -> Self {
        Self { rs: rs.clone(), cutoff, area: S::zero(), amplitudes: BTreeMap::new(), tail: None }
    }

    /// The gluing identity `f_λ = dim(λ)` (zero area).
    pub fn unit(rs: &RootSystem, cutoff: f64) -> Result<Self> {
        let amplitudes = rs
            .dominant_weights_below(cutoff)?
            .into_iter()
            .map(|l| {
                let d = S::from_u64_exact(rs.weyl_dim(&l));
                (l, d)
            })
            .collect();
        Ok(Self { rs: rs.clone(), cutoff, area: S::zero(), amplitudes, tail: None })
    }

    /// Series with explicit coefficients and no area factor.
    pub fn from_coefficients(rs: &RootSystem, cutoff: f64, coefficients: BTreeMap<HighestWeight, S>) -> Result<Self> {
        for l in coefficients.keys() {
            if l.rank() != rs.rank() {
                return Err(invalid(format!("weight {l} has wrong rank")));
            }
            if rs.casimir2(l) > cutoff {
                return Err(invalid(format!("weight {l} lies beyond the cutoff {cutoff}")));
            }
        }
        Ok(Self { rs: rs.clone(), cutoff, area: S::zero(), amplitudes: coefficients, tail: None })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn area(&self) -> &S {
        &self.area
    }

    pub fn amplitudes(&self) -> &BTreeMap<HighestWeight, S> {
        &self.amplitudes
    }

    pub fn amplitude(&self, lambda: &HighestWeight) -> S {
        self.amplitudes.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// `f_λ = a_λ e^{-A c₂(λ)}`.
    pub fn coefficient<T: Real>(&self, lambda: &HighestWeight) -> T {
        match self.amplitudes.get(lambda) {
            Some(a) => self.term::<T>(lambda, a),
            None => T::zero(),
        }
    }

    fn term<T: Real>(&self, lambda: &HighestWeight, a: &S) -> T {
        let decay = T::from_rational(&self.rs.casimir2_exact(lambda)) * T::lit(self.area.to_f64_lossy());
        T::lit(a.to_f64_lossy()) * (-decay).exp()
    }

    /// Coefficients in Casimir order.
    pub fn coefficients<T: Real>(&self) -> Vec<(HighestWeight, T)> {
        let mut out: Vec<(HighestWeight, T)> =
            self.amplitudes.iter().map(|(l, a)| (l.clone(), self.term::<T>(l, a))).collect();
        out.sort_by(|a, b| self.rs.casimir2_exact(&a.0).cmp(&self.rs.casimir2_exact(&b.0)).then(a.0.cmp(&b.0)));
        out
    }

    /// `Σ_λ f_λ χ_λ(q)`.
    pub fn evaluate<T: Real>(&self, q: &CartanPoint<T>) -> Complex<T> {
        self.coefficients::<T>()
            .iter()
            .fold(Complex::zero(), |acc, (l, f)| acc + character(&self.rs, l, q) * *f)
    }

    /// Evaluate at a group element of SU(2) through its trace.
    pub fn evaluate_su2_trace<T: Real>(&self, trace: T) -> T {
        self.coefficients::<T>()
            .iter()
            .fold(T::zero(), |acc, (l, f)| acc + *f * crate::tensor::su2::character_of_trace(l.m(), trace))
    }

    /// Upper bound on `|Σ_{c₂(λ) > cutoff} f_λ χ_λ|` at every group element.
    /// Available for SU(2) kernels built from region kernels.
    pub fn tail_bound(&self) -> Option<f64> {
        let tail = self.tail.as_ref()?;
        let area = self.area.to_f64_lossy();
        if self.rs.rank() != 1 || tail.exponent > 1 || !(area > 0.0) {
            return None;
        }
        Some(tail.scale * su2_sphere_tail(area, self.cutoff))
    }
}

/// Bound on `Σ_{c₂(m) > cutoff} (m+1)² e^{-A c₂(m)}` for SU(2).
pub fn su2_sphere_tail(area: f64, cutoff: f64) -> f64 {
    // c₂ = (u² - 1)/2 with u = m + 1
    let b = area / 2.0;
    let kept = ((2.0 * cutoff.max(0.0) + 1.0).sqrt()).floor() as u64;
    let first = kept + 1;
    let turn = (1.0 / b.sqrt()).ceil() as u64 + 1;
    let start = first.max(turn);
    let term = |u: f64| u * u * (-b * (u * u - 1.0)).exp();
    let explicit: f64 = (first..start).map(|u| term(u as f64)).sum();
    let l = (start - 1) as f64;
    let integral = (-b * (l * l - 1.0)).exp() * (l / (2.0 * b) + 1.0 / (4.0 * b * b * l));
    explicit + integral
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDocument {
    rank: usize,
    cutoff: f64,
    area: f64,
    terms: Vec<SeriesTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesTerm {
    weight: Vec<i64>,
    amplitude: f64,
    coefficient: f64,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    weight: String,
    coefficient: f64,
}

impl<S: Coefficient> ClassSeries<S> {
    /// Two-column CSV `weight,coefficient`; weight labels are space separated.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (l, f) in self.coefficients::<f64>() {
            w.serialize(CsvRow { weight: l.to_string(), coefficient: f })
                .map_err(|e| Error::Schema(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Schema(e.to_string()))
    }

    /// Reads coefficients written by [`ClassSeries::write_csv`]; the result
    /// carries zero area.
    pub fn read_csv<R: io::Read>(rs: &RootSystem, cutoff: f64, input: R) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(input);
        let mut coefficients = BTreeMap::new();
        for row in reader.deserialize::<CsvRow>() {
            let row = row.map_err(|e| Error::Schema(e.to_string()))?;
            let coords = row
                .weight
                .split_whitespace()
                .map(|s| s.parse::<i64>().map_err(|e| Error::Schema(format!("weight '{}': {e}", row.weight))))
                .collect::<Result<Vec<_>>>()?;
            let value = S::from_f64(row.coefficient).ok_or_else(|| Error::Schema("coefficient".into()))?;
            coefficients.insert(HighestWeight::new(coords)?, value);
        }
        Self::from_coefficients(rs, cutoff, coefficients)
    }

    pub fn to_json(&self) -> String {
        let doc = SeriesDocument {
            rank: self.rs.rank(),
            cutoff: self.cutoff,
            area: self.area.to_f64_lossy(),
            terms: self
                .coefficients::<f64>()
                .into_iter()
                .map(|(l, f)| SeriesTerm {
                    amplitude: self.amplitudes[&l].to_f64_lossy(),
                    weight: l.coords().to_vec(),
                    coefficient: f,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("series serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let rs = RootSystem::a(doc.rank)?;
        let conv = |x: f64| S::from_f64(x).ok_or_else(|| Error::Schema(format!("value {x}")));
        let mut amplitudes = BTreeMap::new();
        for t in doc.terms {
            amplitudes.insert(HighestWeight::new(t.weight)?, conv(t.amplitude)?);
        }
        let mut series = Self::from_coefficients(&rs, doc.cutoff, amplitudes)?;
        series.area = conv(doc.area)?;
        Ok(series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn disc_coefficients() {
        let rs = RootSystem::su2();
        let k = disc_kernel(&rs, 1.0f64, 20.0).unwrap();
        assert_eq!(k.coefficient::<f64>(&HighestWeight::su2(0)), 1.0);
        assert!((k.coefficient::<f64>(&HighestWeight::su2(1)) - 2.0 * (-1.5f64).exp()).abs() < 1e-15);
        assert!((k.coefficient::<f64>(&HighestWeight::su2(2)) - 3.0 * (-4.0f64).exp()).abs() < 1e-15);
        assert!(matches!(disc_kernel(&rs, 0.0f64, 20.0), Err(Error::DivergentSeries(_))));
        assert!(matches!(disc_kernel(&rs, -1.0f64, 20.0), Err(Error::DivergentSeries(_))));
    }

    #[test]
    fn genus_two_coefficient() {
        let rs = RootSystem::su2();
        let k = region_kernel(&rs, 1.0f64, 2, 20.0).unwrap();
        let expect = (-1.5f64).exp() / 8.0;
        assert!((k.coefficient::<f64>(&HighestWeight::su2(1)) - expect).abs() < 1e-16);
        assert_eq!(region_kernel(&rs, 0.7f64, 0, 9.0).unwrap(), disc_kernel(&rs, 0.7f64, 9.0).unwrap());
    }

    #[test]
    fn exact_gluing_with_rationals() {
        let rs = RootSystem::su(3).unwrap();
        let a = Rational::new(3, 10);
        let b = Rational::new(7, 10);
        let glued = glue(&disc_kernel(&rs, a, 12.0).unwrap(), &disc_kernel(&rs, b, 12.0).unwrap()).unwrap();
        assert_eq!(glued, disc_kernel(&rs, a + b, 12.0).unwrap());
        let unit = ClassSeries::<Rational>::unit(&rs, 12.0).unwrap();
        let k = region_kernel(&rs, a, 1, 12.0).unwrap();
        assert_eq!(glue(&k, &unit).unwrap().amplitudes(), k.amplitudes());
    }

    #[test]
    fn cutoff_is_minimum() {
        let rs = RootSystem::su2();
        let g = glue(&disc_kernel(&rs, 1.0f64, 4.0).unwrap(), &disc_kernel(&rs, 1.0f64, 10.0).unwrap()).unwrap();
        assert_eq!(g.cutoff(), 4.0);
        assert_eq!(g.len(), 3);
        assert!(glue(&g, &disc_kernel(&RootSystem::su(3).unwrap(), 1.0f64, 4.0).unwrap()).is_err());
    }

    #[test]
    fn csv_and_json_round_trip() {
        let rs = RootSystem::su(3).unwrap();
        let k = disc_kernel(&rs, 0.5f64, 8.0).unwrap();
        let mut buf = Vec::new();
        k.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("weight,coefficient\n0 0,1"), "{text}");
        let back = ClassSeries::<f64>::read_csv(&rs, 8.0, buf.as_slice()).unwrap();
        for (l, f) in k.coefficients::<f64>() {
            assert_eq!(back.coefficient::<f64>(&l), f);
        }
        let j = ClassSeries::<f64>::from_json(&k.to_json()).unwrap();
        assert_eq!(j, k);
        assert!(ClassSeries::<f64>::from_json("{\"rank\":1,\"cutoff\":1,\"area\":0,\"terms\":[],\"x\":1}").is_err());
    }
}
