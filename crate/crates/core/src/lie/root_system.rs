use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lie::freudenthal::WeightSystem;
use crate::scalar::{Rational, Real};

/// Dominant integral weight in Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().any(|&c| c < 0) {
            return Err(invalid(format!("highest weight {coords:?} has a negative label")));
        }
        Ok(Self(coords))
    }

    pub fn su2(m: u32) -> Self {
        Self(vec![m as i64])
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The single label of an SU(2) weight.
    pub fn m(&self) -> usize {
        self.0[0] as usize
    }
}

impl TryFrom<Vec<i64>> for HighestWeight {
    type Error = crate::Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<HighestWeight> for Vec<i64> {
    fn from(w: HighestWeight) -> Vec<i64> {
        w.0
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Angles `q` in coroot coordinates: the torus element `exp(i q·H)` acts on a
/// weight `μ` (Dynkin labels) by `e^{i Σ μ_j q_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartanPoint<T> {
    pub angles: Vec<T>,
}

impl<T: Real> CartanPoint<T> {
    pub fn new(angles: Vec<T>) -> Self {
        Self { angles }
    }

    pub fn origin(rank: usize) -> Self {
        Self { angles: vec![T::zero(); rank] }
    }

    /// SU(2) point with `h = diag(e^{iθ}, e^{-iθ})`.
    pub fn su2(theta: T) -> Self {
        Self { angles: vec![theta] }
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    /// `(μ, q)` for a weight in Dynkin labels.
    pub fn pair(&self, weight: &[i64]) -> T {
        weight.iter().zip(&self.angles).fold(T::zero(), |acc, (&w, &q)| acc + T::lit(w as f64) * q)
    }

    pub fn shifted(&self, k: usize, step: T) -> Self {
        let mut angles = self.angles.clone();
        angles[k] += step;
        Self { angles }
    }

    pub fn neg(&self) -> Self {
        Self { angles: self.angles.iter().map(|&x| -x).collect() }
    }

    pub fn cast<U: Real>(&self) -> CartanPoint<U> {
        CartanPoint { angles: self.angles.iter().map(|x| U::lit(x.to_f64().unwrap())).collect() }
    }
}

/// Element of the Weyl group, stored as a reduced-enough word in simple
/// reflections together with its matrix on Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub det: i64,
}

/// Root system of type `A_r` (the Lie algebra of `SU(r+1)`).
#[derive(Clone)]
pub struct RootSystem {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    form: Vec<Vec<Rational>>,
    positive_roots: Vec<Vec<i64>>,
    weyl: Arc<OnceLock<Vec<WeylElement>>>,
    weights: Arc<Mutex<HashMap<HighestWeight, Arc<WeightSystem>>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem(A{})", self.rank)
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    /// `A_rank`.
    pub fn a(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(invalid("rank must be positive"));
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let n = (rank + 1) as i64;
        let form = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let (a, b) = ((i.min(j) + 1) as i64, (i.max(j) + 1) as i64);
                        Rational::new(a * (n - b), n)
                    })
                    .collect()
            })
            .collect();
        let mut positive_roots = Vec::new();
        for i in 0..rank {
            for j in i..rank {
                let mut root = vec![0i64; rank];
                for k in i..=j {
                    for (l, r) in root.iter_mut().enumerate() {
                        *r += cartan[k][l];
                    }
                }
                positive_roots.push(root);
            }
        }
        Ok(Self {
            rank,
            cartan,
            form,
            positive_roots,
            weyl: Arc::new(OnceLock::new()),
            weights: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    /// `SU(n)`, `n ≥ 2`.
    pub fn su(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("SU({n}) is not simple")));
        }
        Self::a(n - 1)
    }

    pub fn su2() -> Self {
        Self::a(1).expect("rank 1")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix `(ω_i, ω_j)` of the fundamental weights; equals the inverse
    /// Cartan matrix because every root has `(α, α) = 2`.
    pub fn bilinear_form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    /// Positive roots as Dynkin labels.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots expanded in simple roots.
    pub fn positive_roots_simple(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in 0..r {
            for j in i..r {
                out.push((0..r).map(|k| i64::from(k >= i && k <= j)).collect());
            }
        }
        out
    }

    /// Simple roots in the orthogonal ambient coordinates of `R^{r+1}`.
    pub fn simple_roots_ambient(&self) -> Vec<Vec<Rational>> {
        let n = self.rank + 1;
        (0..self.rank)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        Rational::from_integer(if k == i {
                            1
                        } else if k == i + 1 {
                            -1
                        } else {
                            0
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Fundamental weights `ω_i = e_1 + … + e_i - (i/n)(e_1 + … + e_n)`.
    pub fn fundamental_weights_ambient(&self) -> Vec<Vec<Rational>> {
        let n = (self.rank + 1) as i64;
        (0..self.rank)
            .map(|i| {
                let shift = Rational::new(i as i64 + 1, n);
                (0..n as usize)
                    .map(|k| Rational::from_integer(i64::from(k <= i)) - shift)
                    .collect()
            })
            .collect()
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn weyl_order(&self) -> u64 {
        (1..=(self.rank as u64 + 1)).product()
    }

    /// Exact inner product of two weights given in Dynkin labels.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += self.form[i][j] * (a[i] * b[j]);
            }
        }
        acc
    }

    pub fn norm_sq(&self, a: &[i64]) -> Rational {
        self.inner(a, a)
    }

    pub fn rho_norm_sq(&self) -> Rational {
        self.norm_sq(&self.rho())
    }

    /// `c₂(λ) = (λ, λ + 2ρ)`.
    pub fn casimir2_exact(&self, lambda: &HighestWeight) -> Rational {
        let shifted: Vec<i64> = lambda.coords().iter().map(|&c| c + 2).collect();
        self.inner(lambda.coords(), &shifted)
    }

    pub fn casimir2(&self, lambda: &HighestWeight) -> f64 {
        self.casimir2_exact(lambda).to_f64().expect("finite casimir")
    }

    /// Weyl dimension formula `Π_{α>0} (λ+ρ, α)/(ρ, α)`.
    pub fn weyl_dim(&self, lambda: &HighestWeight) -> u64 {
        self.check_weight(lambda);
        let mut num = Rational::from_integer(1);
        for alpha in self.positive_roots_simple() {
            let a: i64 = alpha.iter().zip(lambda.coords()).map(|(&c, &l)| c * (l + 1)).sum();
            let b: i64 = alpha.iter().sum();
            num *= Rational::new(a, b);
        }
        debug_assert!(num.is_integer());
        num.to_integer() as u64
    }

    /// Dual weight `λ* = -w₀(λ)`, the dominant element of the orbit of `-λ`.
    pub fn dual(&self, lambda: &HighestWeight) -> HighestWeight {
        let neg: Vec<i64> = lambda.coords().iter().map(|&c| -c).collect();
        HighestWeight(self.to_dominant(&neg).0)
    }

    /// Simple reflection `s_i` on Dynkin labels.
    pub fn reflect(&self, i: usize, weight: &mut [i64]) {
        let c = weight[i];
        for (w, &a) in weight.iter_mut().zip(&self.cartan[i]) {
            *w -= c * a;
        }
    }

    /// Simple reflection on torus angles; satisfies `(s μ, s q) = (μ, q)`.
    pub fn reflect_point<T: Real>(&self, i: usize, q: &mut CartanPoint<T>) {
        let s = self.cartan[i]
            .iter()
            .zip(&q.angles)
            .fold(T::zero(), |acc, (&c, &x)| acc + T::lit(c as f64) * x);
        q.angles[i] -= s;
    }

    /// Dominant representative of the Weyl orbit together with the parity of
    /// the number of reflections used.
    pub fn to_dominant(&self, weight: &[i64]) -> (Vec<i64>, i64) {
        let mut w = weight.to_vec();
        let mut sign = 1;
        while let Some(i) = w.iter().position(|&c| c < 0) {
            self.reflect(i, &mut w);
            sign = -sign;
        }
        (w, sign)
    }

    pub fn orbit(&self, weight: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(weight.to_vec());
        queue.push_back(weight.to_vec());
        let mut out = Vec::new();
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                if w[i] != 0 {
                    let mut v = w.clone();
                    self.reflect(i, &mut v);
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
            out.push(w);
        }
        out.sort();
        out
    }

    /// All Weyl group elements, enumerated once by breadth-first search.
    pub fn weyl_group(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| {
            let r = self.rank;
            let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
            let mut seen: HashMap<Vec<Vec<i64>>, ()> = HashMap::new();
            let mut out = vec![WeylElement { word: vec![], matrix: id.clone(), det: 1 }];
            seen.insert(id, ());
            let mut head = 0;
            while head < out.len() {
                let cur = out[head].clone();
                head += 1;
                for i in 0..r {
                    let mut m = cur.matrix.clone();
                    for col in 0..r {
                        let mut v: Vec<i64> = (0..r).map(|row| m[row][col]).collect();
                        self.reflect(i, &mut v);
                        for row in 0..r {
                            m[row][col] = v[row];
                        }
                    }
                    if seen.insert(m.clone(), ()).is_none() {
                        let mut word = vec![i];
                        word.extend(&cur.word);
                        out.push(WeylElement { word, matrix: m, det: -cur.det });
                    }
                }
            }
            out
        })
    }

    pub fn weyl_act_weight(&self, w: &WeylElement, weight: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| w.matrix[i][j] * weight[j]).sum()).collect()
    }

    pub fn weyl_act_point<T: Real>(&self, w: &WeylElement, q: &CartanPoint<T>) -> CartanPoint<T> {
        let mut out = q.clone();
        for &i in w.word.iter().rev() {
            self.reflect_point(i, &mut out);
        }
        out
    }

    /// Dominant weights with `c₂ ≤ cutoff`, sorted by Casimir then
    /// lexicographically.
    pub fn dominant_weights_below(&self, cutoff: f64) -> Result<Vec<HighestWeight>> {
        if !(cutoff > 0.0) {
            return Err(invalid(format!("casimir cutoff must be positive, got {cutoff}")));
        }
        let mut found = Vec::new();
        let mut current = vec![0i64; self.rank];
        self.scan(0, &mut current, cutoff, &mut found);
        let mut keyed: Vec<(Rational, HighestWeight)> =
            found.into_iter().map(|w| (self.casimir2_exact(&w), w)).collect();
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, w)| w).collect())
    }

    fn scan(&self, pos: usize, current: &mut Vec<i64>, cutoff: f64, out: &mut Vec<HighestWeight>) {
        if pos == self.rank {
            out.push(HighestWeight(current.clone()));
            return;
        }
        loop {
            let w = HighestWeight(current.clone());
            if self.casimir2(&w) > cutoff {
                break;
            }
            self.scan(pos + 1, current, cutoff, out);
            current[pos] += 1;
        }
        current[pos] = 0;
    }

    /// Memoized weight system of `V_λ`.
    pub fn weights(&self, lambda: &HighestWeight) -> Arc<WeightSystem> {
        self.check_weight(lambda);
        if let Some(ws) = self.weights.lock().expect("weight cache").get(lambda) {
            return ws.clone();
        }
        let ws = Arc::new(WeightSystem::freudenthal(self, lambda));
        self.weights.lock().expect("weight cache").insert(lambda.clone(), ws.clone());
        ws
    }

    pub fn weight_system(&self, lambda: &HighestWeight) -> WeightSystem {
        (*self.weights(lambda)).clone()
    }

    /// Is `(α, q) ∉ 2πℤ` with at least `margin` to spare for every root?
    pub fn is_regular<T: Real>(&self, q: &CartanPoint<T>, margin: T) -> bool {
        let two_pi = T::PI() + T::PI();
        self.positive_roots.iter().all(|alpha| {
            let x = q.pair(alpha);
            let r = x - (x / two_pi).floor() * two_pi;
            r.min(two_pi - r) >= margin
        })
    }

    pub(crate) fn check_weight(&self, lambda: &HighestWeight) {
        assert_eq!(lambda.rank(), self.rank, "weight {lambda} does not match rank {}", self.rank);
    }
}
