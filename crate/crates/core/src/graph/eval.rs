//! Partition functions of surfaces with open Wilson graphs.
//!
//! The spectral path expands every region kernel in characters and performs
//! each internal-edge Haar integral exactly with the invariant projector of
//! `V_L ⊗ V̄_R ⊗ V_μ`, which leaves a finite tensor network per coloring of
//! the regions. The quadrature path integrates the defining integral directly.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::network::{contract_all, Tensor};
use super::{vertex_legs, EdgeKind, OpenGraphSurface, Orientation};
use crate::error::{invalid, Error, Result};
use crate::haar::{self, QuadratureSpec, Scheme};
use crate::lie::{HighestWeight, RootSystem};
use crate::linalg::{CMatrix, CVector};
use crate::scalar::Real;
use crate::tensor::{admissible, invariant_vectors, su2};

/// Holonomies of boundary edges; missing edges carry the identity.
#[derive(Clone, Debug, Default)]
pub struct BoundaryData<T> {
    holonomies: BTreeMap<String, CMatrix<T>>,
}

impl<T: Real> BoundaryData<T> {
    pub fn new() -> Self {
        Self { holonomies: BTreeMap::new() }
    }

    pub fn with(mut self, edge: impl Into<String>, g: CMatrix<T>) -> Self {
        self.insert(edge, g);
        self
    }

    pub fn insert(&mut self, edge: impl Into<String>, g: CMatrix<T>) {
        self.holonomies.insert(edge.into(), g);
    }

    pub fn get(&self, edge: &str) -> Option<&CMatrix<T>> {
        self.holonomies.get(edge)
    }

    pub fn is_empty(&self) -> bool {
        self.holonomies.is_empty()
    }

    /// Reads the `holonomy` fields of boundary edges.
    pub fn from_surface(gs: &OpenGraphSurface) -> Result<Self> {
        let mut out = Self::new();
        for e in gs.edges.iter().filter(|e| e.kind == EdgeKind::Boundary) {
            if let Some([ar, ai, br, bi]) = e.holonomy {
                let n = ar * ar + ai * ai + br * br + bi * bi;
                if (n - 1.0).abs() > 1e-9 {
                    return Err(invalid(format!("holonomy of {:?} is not unitary (|a|²+|b|² = {n})", e.id)));
                }
                let a = Complex::new(T::lit(ar), T::lit(ai));
                let b = Complex::new(T::lit(br), T::lit(bi));
                out.insert(e.id.clone(), su2::element(a, b));
            }
        }
        Ok(out)
    }
}

/// An outer edge as an axis of a boundary state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StubInfo {
    pub edge: String,
    pub vertex: String,
    pub color: HighestWeight,
    pub orientation: Orientation,
    pub dim: usize,
}

/// Connected component of the surface boundary: a circle when it has no
/// vertices, otherwise a cycle of intervals between boundary vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub edges: Vec<String>,
    pub vertices: Vec<String>,
}

impl BoundaryComponent {
    pub fn is_circle(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Contribution of one admissible coloring of the regions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColoringTerm<T> {
    pub regions: Vec<HighestWeight>,
    /// `Π_D dim(λ_D)^{1-2g_D} e^{-A_D c₂(λ_D)}`.
    pub weight: T,
    pub value: CVector<T>,
}

/// Value of a partition function at fixed boundary data: a tensor over the
/// outer edges (row-major, first stub slowest) with its spectral terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryState<T> {
    pub components: Vec<BoundaryComponent>,
    pub stubs: Vec<StubInfo>,
    pub value: CVector<T>,
    pub terms: Vec<ColoringTerm<T>>,
    pub warnings: Vec<String>,
}

impl<T: Real> BoundaryState<T> {
    pub fn dims(&self) -> Vec<usize> {
        self.stubs.iter().map(|s| s.dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.value.iter().all(|z| z.is_zero())
    }

    /// The value when there are no outer edges.
    pub fn scalar(&self) -> Option<Complex<T>> {
        if self.stubs.is_empty() {
            Some(self.value[0])
        } else {
            None
        }
    }

    fn position(&self, edge: &str) -> Result<usize> {
        self.stubs.iter().position(|s| s.edge == edge).ok_or_else(|| invalid(format!("no outer edge {edge:?}")))
    }

    /// Reshapes the value into a matrix with the given stubs as row and
    /// column axes; together they must list every stub once.
    pub fn matrix(&self, rows: &[&str], cols: &[&str]) -> Result<CMatrix<T>> {
        let order: Vec<usize> = rows.iter().chain(cols).map(|s| self.position(s)).collect::<Result<_>>()?;
        let mut sorted = order.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.stubs.len() || order.len() != self.stubs.len() {
            return Err(invalid("rows and columns must list every outer edge once"));
        }
        let t = Tensor::new((0..self.stubs.len()).collect(), self.dims(), self.value.clone());
        let data = contract_all(vec![t], &order);
        let r: usize = order[..rows.len()].iter().map(|&k| self.stubs[k].dim).product();
        Ok(CMatrix::from_vec(r, data.len() / r, data))
    }

    /// Contracts pairs of outer edges of opposite flags and equal color.
    pub fn contract_stubs(&self, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut labels: Vec<usize> = (0..self.stubs.len()).collect();
        for &(a, b) in pairs {
            let (i, j) = (self.position(a)?, self.position(b)?);
            let (sa, sb) = (&self.stubs[i], &self.stubs[j]);
            if i == j || sa.color != sb.color || sa.orientation == sb.orientation {
                return Err(invalid(format!("outer edges {a:?} and {b:?} cannot be contracted")));
            }
            labels[j] = labels[i];
        }
        let keep: Vec<usize> = (0..self.stubs.len()).filter(|k| labels[*k] == *k && !paired(&labels, *k)).collect();
        let apply = |v: &CVector<T>| {
            let t = Tensor::new(labels.clone(), self.dims(), v.clone());
            contract_all(vec![t], &keep)
        };
        Ok(Self {
            components: self.components.clone(),
            stubs: keep.iter().map(|&k| self.stubs[k].clone()).collect(),
            value: apply(&self.value),
            terms: self
                .terms
                .iter()
                .map(|t| ColoringTerm { regions: t.regions.clone(), weight: t.weight, value: apply(&t.value) })
                .collect(),
            warnings: self.warnings.clone(),
        })
    }
}

fn paired(labels: &[usize], k: usize) -> bool {
    labels.iter().enumerate().any(|(j, &l)| j != k && l == k)
}

struct Internal {
    edge: usize,
    pos: (usize, usize),
    neg: (usize, usize),
    color: HighestWeight,
    head: usize,
    tail: usize,
}

/// Index bookkeeping shared by both evaluation paths.
struct Prepared<'a> {
    gs: &'a OpenGraphSurface,
    words: Vec<Vec<(usize, bool)>>,
    slot_base: Vec<usize>,
    internal: Vec<Internal>,
    stubs: Vec<StubInfo>,
    open: Vec<usize>,
    stub_label: HashMap<String, usize>,
}

impl<'a> Prepared<'a> {
    fn new(gs: &'a OpenGraphSurface, rs: &RootSystem) -> Result<Self> {
        gs.check_structure(rs)?;
        let index: HashMap<&str, usize> = gs.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
        let words: Vec<Vec<(usize, bool)>> = gs
            .regions
            .iter()
            .map(|r| r.boundary_word.iter().map(|s| (index[s.edge.as_str()], s.forward)).collect())
            .collect();
        let mut slot_base = Vec::new();
        let mut next = 0;
        for w in &words {
            slot_base.push(next);
            next += w.len();
        }
        let mut internal = Vec::new();
        for (i, e) in gs.edges.iter().enumerate().filter(|(_, e)| e.kind == EdgeKind::Internal) {
            let mut pos = None;
            let mut neg = None;
            for (d, w) in words.iter().enumerate() {
                for (j, &(k, f)) in w.iter().enumerate() {
                    if k == i {
                        if f {
                            pos = Some((d, j));
                        } else {
                            neg = Some((d, j));
                        }
                    }
                }
            }
            let head = next;
            let tail = if e.tail.is_some() { next + 1 } else { next };
            next = tail + 1;
            internal.push(Internal {
                edge: i,
                pos: pos.expect("checked"),
                neg: neg.expect("checked"),
                color: e.color_or_zero(rs.rank()),
                head,
                tail,
            });
        }
        let mut stubs = Vec::new();
        let mut open = Vec::new();
        let mut stub_label = HashMap::new();
        for e in gs.outer_edges() {
            let vertex = gs.vertices.iter().find(|v| v.stubs.contains(&e.id)).expect("checked stub");
            let color = e.color_or_zero(rs.rank());
            stubs.push(StubInfo {
                edge: e.id.clone(),
                vertex: vertex.id.clone(),
                dim: rs.weyl_dim(&color) as usize,
                color,
                orientation: e.orientation.expect("checked"),
            });
            open.push(next);
            stub_label.insert(e.id.clone(), next);
            next += 1;
        }
        Ok(Self { gs, words, slot_base, internal, stubs, open, stub_label })
    }

    fn slot(&self, region: usize, j: usize) -> usize {
        self.slot_base[region] + j % self.words[region].len()
    }

    fn has_wilson_lines(&self) -> bool {
        self.internal.iter().any(|e| !e.color.is_zero()) || !self.stubs.is_empty()
    }

    /// Vertex tensors `a_v`, each block the chosen unit invariant scaled by
    /// the square root of the dimension of its first leg.
    fn vertex_tensors<T: Real>(&self) -> (Vec<Tensor<T>>, Vec<String>) {
        let mut tensors = Vec::new();
        let mut warnings = Vec::new();
        let ends: HashMap<usize, &Internal> = self.internal.iter().map(|e| (e.edge, e)).collect();
        for v in &self.gs.vertices {
            let legs = vertex_legs(self.gs, v);
            let labels: Vec<Option<usize>> = v
                .stubs
                .iter()
                .zip(&legs)
                .map(|(s, &(m, primal))| {
                    if let Some(&l) = self.stub_label.get(s) {
                        return Some(l);
                    }
                    if m == 0 {
                        return None;
                    }
                    let k = self.gs.edges.iter().position(|e| &e.id == s).expect("checked");
                    let e = ends[&k];
                    Some(if primal { e.tail } else { e.head })
                })
                .collect();
            let mut start = 0;
            for f in v.blocks() {
                let block = &legs[start..start + f.legs];
                let basis = invariant_vectors::<T>(block);
                let dims: Vec<usize> = block.iter().map(|&(m, _)| m + 1).collect();
                let size: usize = dims.iter().product();
                let data = match basis.get(f.basis) {
                    Some(b) => {
                        let s = T::lit(dims[0] as f64).sqrt();
                        b.iter().map(|z| *z * s).collect()
                    }
                    None => {
                        warnings.push(format!("vertex {:?} has no invariant with index {}", v.id, f.basis));
                        vec![Complex::zero(); size]
                    }
                };
                let kept: Vec<usize> = (start..start + f.legs).filter(|&k| labels[k].is_some()).collect();
                tensors.push(Tensor::new(
                    kept.iter().map(|&k| labels[k].expect("kept")).collect(),
                    kept.iter().map(|&k| legs[k].0 + 1).collect(),
                    data,
                ));
                start += f.legs;
            }
        }
        (tensors, warnings)
    }

    fn components(&self) -> Vec<BoundaryComponent> {
        let bedges: Vec<&super::Edge> = self.gs.edges.iter().filter(|e| e.kind == EdgeKind::Boundary).collect();
        let mut parent: Vec<usize> = (0..bedges.len()).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut by_vertex: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, e) in bedges.iter().enumerate() {
            for v in [&e.tail, &e.head].into_iter().flatten() {
                if let Some(&j) = by_vertex.get(v.as_str()) {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                } else {
                    by_vertex.insert(v, i);
                }
            }
        }
        let mut groups: BTreeMap<usize, BoundaryComponent> = BTreeMap::new();
        for (i, e) in bedges.iter().enumerate() {
            let r = root(&mut parent, i);
            let c = groups.entry(r).or_insert(BoundaryComponent { edges: vec![], vertices: vec![] });
            c.edges.push(e.id.clone());
            for v in [&e.tail, &e.head].into_iter().flatten() {
                if !c.vertices.contains(v) {
                    c.vertices.push(v.clone());
                }
            }
        }
        groups.into_values().collect()
    }
}

fn check_areas<T: Real>(gs: &OpenGraphSurface, areas: Option<&[T]>) -> Result<Vec<T>> {
    let out: Vec<T> = match areas {
        Some(a) => {
            if a.len() != gs.regions.len() {
                return Err(invalid(format!("{} areas for {} regions", a.len(), gs.regions.len())));
            }
            a.to_vec()
        }
        None => gs.regions.iter().map(|r| T::lit(r.area)).collect(),
    };
    for a in &out {
        if !(*a > T::zero()) {
            return Err(Error::DivergentSeries(a.to_f64().unwrap_or(f64::NAN)));
        }
    }
    Ok(out)
}

/// Depth-first enumeration of region colorings satisfying the coupling rule
/// at every internal edge, in lexicographic order of label indices.
fn enumerate(
    nregions: usize,
    nlabels: usize,
    constraints: &[(usize, usize, usize)],
    ok: &dyn Fn(usize, usize, usize) -> bool,
    first_only: bool,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(nregions);
    fn rec(
        k: usize,
        n: usize,
        nl: usize,
        cons: &[(usize, usize, usize)],
        ok: &dyn Fn(usize, usize, usize) -> bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        first: bool,
    ) {
        if first && !out.is_empty() {
            return;
        }
        if k == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..nl {
            cur.push(l);
            let fine = cons
                .iter()
                .filter(|&&(p, q, _)| p.max(q) == k)
                .all(|&(p, q, c)| ok(cur[p], cur[q], c));
            if fine {
                rec(k + 1, n, nl, cons, ok, cur, out, first);
            }
            cur.pop();
        }
    }
    rec(0, nregions, nlabels, constraints, ok, &mut cur, &mut out, first_only);
    out
}

fn constraints(p: &Prepared, colors: &mut Vec<HighestWeight>) -> Vec<(usize, usize, usize)> {
    p.internal
        .iter()
        .map(|e| {
            let c = colors.iter().position(|x| *x == e.color).unwrap_or_else(|| {
                colors.push(e.color.clone());
                colors.len() - 1
            });
            (e.pos.0, e.neg.0, c)
        })
        .collect()
}

fn colorings_with_labels(
    p: &Prepared,
    rs: &RootSystem,
    labels: &[HighestWeight],
    first_only: bool,
) -> Vec<Vec<usize>> {
    let mut edge_colors = Vec::new();
    let cons = constraints(p, &mut edge_colors);
    let table: Vec<Vec<Vec<bool>>> = edge_colors
        .iter()
        .map(|mu| labels.iter().map(|l| labels.iter().map(|r| admissible(rs, r, l, mu)).collect()).collect())
        .collect();
    let ok = |l: usize, r: usize, c: usize| table[c][l][r];
    enumerate(p.gs.regions.len(), labels.len(), &cons, &ok, first_only)
}

/// Region colorings with `c₂ ≤ cutoff` on every region that satisfy the
/// coupling rule at every internal edge.
pub fn admissible_colorings(gs: &OpenGraphSurface, rs: &RootSystem, cutoff: f64) -> Result<Vec<Vec<HighestWeight>>> {
    let p = Prepared::new(gs, rs)?;
    let labels = rs.dominant_weights_below(cutoff)?;
    Ok(colorings_with_labels(&p, rs, &labels, false)
        .into_iter()
        .map(|c| c.into_iter().map(|k| labels[k].clone()).collect())
        .collect())
}

/// Whether any admissible coloring exists without a cutoff. For SU(2) the
/// search is complete: shifting every region label by 2 preserves the
/// coupling rules once all labels exceed the largest line color, so some
/// coloring exists with labels below `2 + max μ + Σ μ` whenever one exists.
pub fn has_admissible_coloring(gs: &OpenGraphSurface, rs: &RootSystem) -> Result<bool> {
    let p = Prepared::new(gs, rs)?;
    if !p.internal.iter().any(|e| !e.color.is_zero()) {
        return Ok(true);
    }
    if rs.rank() != 1 {
        return Err(Error::Unsupported("coloring existence without cutoff is decided for SU(2) only".into()));
    }
    let ms: Vec<usize> = p.internal.iter().map(|e| e.color.m()).collect();
    let bound = 2 + ms.iter().max().copied().unwrap_or(0) + ms.iter().sum::<usize>();
    let labels: Vec<HighestWeight> = (0..=bound as u32).map(HighestWeight::su2).collect();
    Ok(!colorings_with_labels(&p, rs, &labels, true).is_empty())
}

fn weight<T: Real>(rs: &RootSystem, lambda: &HighestWeight, area: T, genus: u32) -> T {
    let d = T::lit(rs.weyl_dim(lambda) as f64);
    d.powi(1 - 2 * genus as i32) * (-area * T::lit(rs.casimir2(lambda))).exp()
}

/// Invariant projector of `V_L ⊗ V̄_R (⊗ V_μ)` as a row-major square matrix,
/// which equals `∫ π^L(g) ⊗ π̄^R(g) (⊗ π^μ(g)) dg`.
fn edge_projector<T: Real>(l: usize, r: usize, mu: usize) -> Vec<Complex<T>> {
    let mut legs = vec![(l, true), (r, false)];
    if mu > 0 {
        legs.push((mu, true));
    }
    let n: usize = legs.iter().map(|&(m, _)| m + 1).product();
    let mut out = vec![Complex::zero(); n * n];
    for v in invariant_vectors::<T>(&legs) {
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += v[i] * v[j].conj();
            }
        }
    }
    out
}

/// Partition function of the surface at the given boundary holonomies.
///
/// SU(2) surfaces are evaluated as a colored-state sum over region colorings
/// with `c₂ ≤ cutoff`. Higher rank is supported for surfaces without Wilson
/// lines or outer edges and with trivial boundary holonomies. When no
/// coloring survives the cutoff the zero state is returned, with a warning
/// if admissible colorings exist above the cutoff.
pub fn evaluate_partition<T: Real>(
    gs: &OpenGraphSurface,
    rs: &RootSystem,
    boundary: &BoundaryData<T>,
    areas: Option<&[T]>,
    cutoff: f64,
) -> Result<BoundaryState<T>> {
    let p = Prepared::new(gs, rs)?;
    let areas = check_areas(gs, areas)?;
    for id in boundary.holonomies.keys() {
        if gs.edge(id).map(|e| e.kind) != Some(EdgeKind::Boundary) {
            return Err(invalid(format!("boundary data for {id:?}, which is not a boundary edge")));
        }
    }
    if rs.rank() != 1 && (p.has_wilson_lines() || !boundary.is_empty()) {
        return Err(Error::Unsupported(
            "Wilson lines, outer edges and boundary holonomies are evaluated for SU(2) only".into(),
        ));
    }
    let labels = rs.dominant_weights_below(cutoff)?;
    let colorings = colorings_with_labels(&p, rs, &labels, false);
    let size: usize = p.stubs.iter().map(|s| s.dim).product();
    let mut warnings = Vec::new();
    if colorings.is_empty() && has_admissible_coloring(gs, rs).unwrap_or(true) {
        warnings.push(format!(
            "cutoff {cutoff} admits no coloring although admissible colorings exist above it; the state is truncated to zero"
        ));
    }
    let weights: Vec<T> = colorings
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .map(|(d, &k)| weight(rs, &labels[k], areas[d], gs.regions[d].genus))
                .fold(T::one(), |a, b| a * b)
        })
        .collect();
    let values: Vec<CVector<T>> = if rs.rank() == 1 {
        let (vertex_tensors, w) = p.vertex_tensors::<T>();
        warnings.extend(w);
        spectral_values(&p, boundary, &labels, &colorings, &vertex_tensors)
    } else {
        seam_values(&p, rs, &labels, &colorings)
    };
    let mut value = vec![Complex::zero(); size];
    let mut terms = Vec::with_capacity(colorings.len());
    for ((c, w), v) in colorings.iter().zip(weights).zip(values) {
        let v: CVector<T> = v.into_iter().map(|z| z * w).collect();
        for (a, b) in value.iter_mut().zip(&v) {
            *a += *b;
        }
        terms.push(ColoringTerm { regions: c.iter().map(|&k| labels[k].clone()).collect(), weight: w, value: v });
    }
    Ok(BoundaryState { components: p.components(), stubs: p.stubs.clone(), value, terms, warnings })
}

/// Unweighted network values, one per coloring, in coloring order.
fn spectral_values<T: Real>(
    p: &Prepared,
    boundary: &BoundaryData<T>,
    labels: &[HighestWeight],
    colorings: &[Vec<usize>],
    vertex_tensors: &[Tensor<T>],
) -> Vec<CVector<T>> {
    let mut reps: HashMap<(usize, bool, usize), CMatrix<T>> = HashMap::new();
    for w in &p.words {
        for &(e, f) in w {
            if p.gs.edges[e].kind != EdgeKind::Boundary {
                continue;
            }
            let g = boundary.get(&p.gs.edges[e].id).cloned().unwrap_or_else(|| CMatrix::identity(2));
            let g = if f { g } else { g.adjoint() };
            for (k, l) in labels.iter().enumerate() {
                reps.insert((e, f, k), su2::rep(l.m(), &g));
            }
        }
    }
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for c in colorings {
        for e in &p.internal {
            let key = (labels[c[e.pos.0]].m(), labels[c[e.neg.0]].m(), e.color.m());
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
    }
    let projectors: HashMap<(usize, usize, usize), Vec<Complex<T>>> =
        keys.par_iter().map(|&(l, r, mu)| ((l, r, mu), edge_projector(l, r, mu))).collect();
    colorings
        .par_iter()
        .map(|c| {
            let mut tensors: Vec<Tensor<T>> = vertex_tensors.to_vec();
            for (d, w) in p.words.iter().enumerate() {
                let lambda = &labels[c[d]];
                if w.is_empty() {
                    tensors.push(Tensor::scalar(Complex::new(T::lit((lambda.m() + 1) as f64), T::zero())));
                }
                for (j, &(e, f)) in w.iter().enumerate() {
                    if p.gs.edges[e].kind == EdgeKind::Boundary {
                        tensors.push(Tensor::from_matrix(p.slot(d, j), p.slot(d, j + 1), &reps[&(e, f, c[d])]));
                    }
                }
            }
            for e in &p.internal {
                let (l, r, mu) = (labels[c[e.pos.0]].m(), labels[c[e.neg.0]].m(), e.color.m());
                let a = p.slot(e.pos.0, e.pos.1);
                let b = p.slot(e.pos.0, e.pos.1 + 1);
                let d = p.slot(e.neg.0, e.neg.1);
                let cc = p.slot(e.neg.0, e.neg.1 + 1);
                let data = projectors[&(l, r, mu)].clone();
                let t = if mu == 0 {
                    Tensor::new(vec![a, cc, b, d], vec![l + 1, r + 1, l + 1, r + 1], data)
                } else {
                    Tensor::new(
                        vec![a, cc, e.head, b, d, e.tail],
                        vec![l + 1, r + 1, mu + 1, l + 1, r + 1, mu + 1],
                        data,
                    )
                };
                tensors.push(t);
            }
            contract_all(tensors, &p.open)
        })
        .collect()
}

/// Values for surfaces made of regions and seams only, for any rank: the
/// seam integrals reconnect the index loops of the region traces, each seam
/// contributing `1/dim` and each closed loop `dim`.
fn seam_values<T: Real>(p: &Prepared, rs: &RootSystem, labels: &[HighestWeight], colorings: &[Vec<usize>]) -> Vec<CVector<T>> {
    let nslots: usize = p.words.iter().map(|w| w.len()).sum();
    let nreg = p.words.len();
    // nodes: slots, then one per region (the region's own component anchor)
    let mut parent: Vec<usize> = (0..nslots + nreg).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    fn join(p: &mut [usize], a: usize, b: usize) {
        let (a, b) = (root(p, a), root(p, b));
        p[a.max(b)] = a.min(b);
    }
    for (d, w) in p.words.iter().enumerate() {
        for (j, &(e, _)) in w.iter().enumerate() {
            if p.gs.edges[e].kind == EdgeKind::Boundary {
                join(&mut parent, p.slot(d, j), p.slot(d, j + 1));
            }
        }
    }
    for e in &p.internal {
        join(&mut parent, p.slot(e.pos.0, e.pos.1), p.slot(e.neg.0, e.neg.1 + 1));
        join(&mut parent, p.slot(e.pos.0, e.pos.1 + 1), p.slot(e.neg.0, e.neg.1));
    }
    // region components through seams
    let mut rparent: Vec<usize> = (0..nreg).collect();
    for e in &p.internal {
        join(&mut rparent, e.pos.0, e.neg.0);
    }
    let mut exponent = vec![0i32; nreg];
    let mut seen = vec![false; nslots];
    for (d, w) in p.words.iter().enumerate() {
        let comp = root(&mut rparent, d);
        if w.is_empty() {
            exponent[comp] += 1;
        }
        for j in 0..w.len() {
            let r = root(&mut parent, p.slot(d, j));
            if !seen[r] {
                seen[r] = true;
                exponent[comp] += 1;
            }
        }
    }
    for e in &p.internal {
        let comp = root(&mut rparent, e.pos.0);
        exponent[comp] -= 1;
    }
    colorings
        .iter()
        .map(|c| {
            let mut v = T::one();
            for d in 0..nreg {
                if root(&mut rparent, d) == d {
                    v = v * T::lit(rs.weyl_dim(&labels[c[d]]) as f64).powi(exponent[d]);
                }
            }
            vec![Complex::new(v, T::zero())]
        })
        .collect()
}

/// Direct quadrature of the defining integral over the internal edges, for
/// SU(2) surfaces with at most two internal edges.
pub fn evaluate_partition_quadrature<T: Real>(
    gs: &OpenGraphSurface,
    rs: &RootSystem,
    boundary: &BoundaryData<T>,
    areas: Option<&[T]>,
    cutoff: f64,
    spec: &QuadratureSpec,
) -> Result<CVector<T>> {
    if rs.rank() != 1 {
        return Err(Error::Unsupported("quadrature of partition functions is implemented for SU(2)".into()));
    }
    if spec.scheme != Scheme::EulerGrid {
        return Err(Error::Unsupported("partition-function quadrature needs the full-group rule".into()));
    }
    let p = Prepared::new(gs, rs)?;
    let areas = check_areas(gs, areas)?;
    if p.internal.len() > 2 {
        return Err(Error::Unsupported("quadrature is limited to two internal edges".into()));
    }
    let labels = rs.dominant_weights_below(cutoff)?;
    let region_weights: Vec<Vec<(usize, T)>> = gs
        .regions
        .iter()
        .zip(&areas)
        .map(|(r, &a)| labels.iter().map(|l| (l.m(), weight(rs, l, a, r.genus))).collect())
        .collect();
    let (vertex_tensors, _) = p.vertex_tensors::<T>();
    let internal_slot: HashMap<usize, usize> = p.internal.iter().enumerate().map(|(k, e)| (e.edge, k)).collect();
    let integrand = |hs: &[&CMatrix<T>]| -> CVector<T> {
        let group = |e: usize| -> CMatrix<T> {
            match internal_slot.get(&e) {
                Some(&k) => hs[k].clone(),
                None => boundary.get(&gs.edges[e].id).cloned().unwrap_or_else(|| CMatrix::identity(2)),
            }
        };
        let mut z = T::one();
        for (d, w) in p.words.iter().enumerate() {
            let hol = w.iter().fold(CMatrix::identity(2), |acc, &(e, f)| {
                let g = group(e);
                &acc * &(if f { g } else { g.adjoint() })
            });
            let x = hol.trace().re;
            let zd = region_weights[d].iter().fold(T::zero(), |s, &(m, wt)| s + wt * su2::character_of_trace(m, x));
            z = z * zd;
        }
        let mut tensors = vertex_tensors.clone();
        for (k, e) in p.internal.iter().enumerate() {
            if !e.color.is_zero() {
                tensors.push(Tensor::from_matrix(e.head, e.tail, &su2::rep(e.color.m(), hs[k])));
            }
        }
        contract_all(tensors, &p.open).into_iter().map(|v| v * z).collect()
    };
    let grid = haar::su2_grid::<T>(spec.resolution);
    Ok(match p.internal.len() {
        0 => integrand(&[]),
        1 => haar::weighted_sum(&grid, |g| integrand(&[g])),
        _ => haar::weighted_sum(&grid, |g1| haar::weighted_sum(&grid, |g2| integrand(&[g1, g2]))),
    })
}
