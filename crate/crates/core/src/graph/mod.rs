//! Surfaces with open Wilson graphs, given as explicit cell complexes.
//!
//! A surface is a list of regions (area, genus, boundary word), a list of
//! edges and a list of vertices. Internal edges separate regions and carry a
//! Wilson-line color (zero for plain seams); boundary edges lie on the
//! boundary of the surface and carry fixed holonomies; outer edges are stubs
//! leaving the surface at a vertex, whose indices make the partition function
//! a tensor. Boundary words are products of holonomies, so `[+a, -b]` stands
//! for `g_a g_b⁻¹`.

mod eval;
mod network;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lie::{HighestWeight, RootSystem};
use crate::tensor::{admissible, invariant_vectors};

pub use eval::{
    admissible_colorings, evaluate_partition, evaluate_partition_quadrature, has_admissible_coloring,
    BoundaryComponent, BoundaryData, BoundaryState, ColoringTerm, StubInfo,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Internal,
    Boundary,
    Outer,
}

/// Orientation flag of an outer edge: `+` for a `V` leg, `-` for a `V*` leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Oriented edge reference in a boundary word, written `+id` or `-id`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignedEdge {
    pub edge: String,
    pub forward: bool,
}

impl SignedEdge {
    pub fn new(edge: impl Into<String>, forward: bool) -> Self {
        Self { edge: edge.into(), forward }
    }

    pub fn plus(edge: impl Into<String>) -> Self {
        Self::new(edge, true)
    }

    pub fn minus(edge: impl Into<String>) -> Self {
        Self::new(edge, false)
    }
}

impl TryFrom<String> for SignedEdge {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        let (forward, rest) = match s.chars().next() {
            Some('+') => (true, &s[1..]),
            Some('-') => (false, &s[1..]),
            _ => return Err(Error::Schema(format!("edge reference {s:?} must start with + or -"))),
        };
        if rest.is_empty() {
            return Err(Error::Schema(format!("edge reference {s:?} has no edge id")));
        }
        Ok(Self::new(rest, forward))
    }
}

impl From<SignedEdge> for String {
    fn from(e: SignedEdge) -> String {
        e.to_string()
    }
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.forward { '+' } else { '-' }, self.edge)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub area: f64,
    #[serde(default)]
    pub genus: u32,
    pub boundary_word: Vec<SignedEdge>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<HighestWeight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    /// SU(2) boundary holonomy `[[a, -b̄], [b, ā]]` as `[Re a, Im a, Re b, Im b]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holonomy: Option<[f64; 4]>,
}

impl Edge {
    pub fn internal(id: impl Into<String>, color: Option<HighestWeight>, tail: Option<&str>, head: Option<&str>) -> Self {
        Self {
            id: id.into(),
            kind: EdgeKind::Internal,
            color,
            tail: tail.map(String::from),
            head: head.map(String::from),
            orientation: None,
            holonomy: None,
        }
    }

    pub fn boundary(id: impl Into<String>, tail: Option<&str>, head: Option<&str>) -> Self {
        Self { kind: EdgeKind::Boundary, ..Self::internal(id, None, tail, head) }
    }

    pub fn outer(id: impl Into<String>, color: HighestWeight, orientation: Orientation) -> Self {
        Self { kind: EdgeKind::Outer, orientation: Some(orientation), ..Self::internal(id, Some(color), None, None) }
    }

    /// Color with the zero weight as default.
    pub fn color_or_zero(&self, rank: usize) -> HighestWeight {
        self.color.clone().unwrap_or_else(|| HighestWeight::zero(rank))
    }

    fn is_colored(&self) -> bool {
        self.color.as_ref().is_some_and(|c| !c.is_zero())
    }
}

/// Block of consecutive vertex legs carrying one basis invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub legs: usize,
    #[serde(default)]
    pub basis: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub id: String,
    /// Incident Wilson-line ends and outer edges in cyclic order. A loop edge
    /// is listed twice, head end first.
    #[serde(default)]
    pub stubs: Vec<String>,
    /// Index into the orthonormal invariant basis of all legs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intertwiner: Option<usize>,
    /// Tensor product of invariants over consecutive leg blocks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Factor>>,
}

impl Vertex {
    pub fn new(id: impl Into<String>, stubs: &[&str]) -> Self {
        Self { id: id.into(), stubs: stubs.iter().map(|s| s.to_string()).collect(), intertwiner: None, factors: None }
    }

    /// The leg blocks of the vertex tensor.
    pub fn blocks(&self) -> Vec<Factor> {
        match &self.factors {
            Some(f) => f.clone(),
            None if self.stubs.is_empty() => vec![],
            None => vec![Factor { legs: self.stubs.len(), basis: self.intertwiner.unwrap_or(0) }],
        }
    }
}

/// Circle inserted in a region by enrichment; its segments replace the
/// boundary intervals of that region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnrichedCircle {
    pub id: String,
    pub region: usize,
    pub word: Vec<SignedEdge>,
    pub segments: Vec<String>,
}

/// Oriented surface with an open Wilson graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenGraphSurface {
    pub regions: Vec<Region>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enrichment: Option<Vec<EnrichedCircle>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Structure,
    Admissibility,
    Invariance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

/// Region colors of a Wilson-graph coloring; edge colors and vertex
/// invariants are read from the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub regions: Vec<HighestWeight>,
}

impl OpenGraphSurface {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| {
            let text = s.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
            Error::Schema(format!("{e}; line {}: `{text}`", e.line()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface serializes")
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Outer edges in declaration order; this is the axis order of boundary
    /// states.
    pub fn outer_edges(&self) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Outer).collect()
    }

    /// Internal edges in declaration order.
    pub fn internal_edges(&self) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Internal).collect()
    }

    /// Euler characteristic of the cell decomposition: vertices (plus one per
    /// vertex-free edge) minus edges plus the regions, each counted as a
    /// genus-`g` surface with one hole, or none when its word is empty.
    pub fn computed_euler_characteristic(&self) -> i64 {
        let cells: Vec<&Edge> = self.edges.iter().filter(|e| e.kind != EdgeKind::Outer).collect();
        let loops = cells.iter().filter(|e| e.tail.is_none() && e.head.is_none()).count() as i64;
        let faces: i64 = self
            .regions
            .iter()
            .map(|r| if r.boundary_word.is_empty() { 2 } else { 1 } - 2 * r.genus as i64)
            .sum();
        self.vertices.len() as i64 + loops - cells.len() as i64 + faces
    }

    /// Every structural problem of the cell complex.
    pub fn structure_violations(&self, rs: &RootSystem) -> Vec<String> {
        let mut out = Vec::new();
        let mut ids = BTreeSet::new();
        for e in &self.edges {
            if !ids.insert(e.id.as_str()) {
                out.push(format!("duplicate edge id {:?}", e.id));
            }
        }
        let mut vids = BTreeSet::new();
        for v in &self.vertices {
            if !vids.insert(v.id.as_str()) {
                out.push(format!("duplicate vertex id {:?}", v.id));
            }
        }
        for (i, r) in self.regions.iter().enumerate() {
            if !(r.area.is_finite() && r.area > 0.0) {
                out.push(format!("region {i} has non-positive area {}", r.area));
            }
        }
        let mut occurrences: HashMap<&str, Vec<bool>> = HashMap::new();
        for (i, r) in self.regions.iter().enumerate() {
            for s in &r.boundary_word {
                match self.edge(&s.edge) {
                    None => out.push(format!("region {i} references unknown edge {:?}", s.edge)),
                    Some(e) if e.kind == EdgeKind::Outer => {
                        out.push(format!("region {i} references outer edge {:?}", s.edge))
                    }
                    Some(_) => occurrences.entry(s.edge.as_str()).or_default().push(s.forward),
                }
            }
        }
        for e in &self.edges {
            if let Some(c) = &e.color {
                if c.rank() != rs.rank() {
                    out.push(format!("edge {:?} color has rank {}, expected {}", e.id, c.rank(), rs.rank()));
                }
            }
            let occ = occurrences.get(e.id.as_str()).cloned().unwrap_or_default();
            match e.kind {
                EdgeKind::Internal => {
                    if occ.len() != 2 || occ[0] == occ[1] {
                        out.push(format!(
                            "internal edge {:?} must border region words exactly twice with opposite signs",
                            e.id
                        ));
                    }
                }
                EdgeKind::Boundary => {
                    if occ.len() != 1 {
                        out.push(format!("boundary edge {:?} must border exactly one region word", e.id));
                    }
                    if e.is_colored() {
                        out.push(format!("boundary edge {:?} cannot carry a Wilson line", e.id));
                    }
                }
                EdgeKind::Outer => {
                    if e.orientation.is_none() {
                        out.push(format!("outer edge {:?} needs an orientation flag", e.id));
                    }
                    if e.tail.is_some() || e.head.is_some() {
                        out.push(format!("outer edge {:?} is attached through vertex stubs, not endpoints", e.id));
                    }
                }
            }
            if e.kind != EdgeKind::Outer && e.orientation.is_some() {
                out.push(format!("only outer edges carry orientation flags ({:?})", e.id));
            }
            if e.kind != EdgeKind::Boundary && e.holonomy.is_some() {
                out.push(format!("only boundary edges carry holonomies ({:?})", e.id));
            }
            if e.tail.is_some() != e.head.is_some() {
                out.push(format!("edge {:?} must have both endpoints or none", e.id));
            }
            for end in [&e.tail, &e.head].into_iter().flatten() {
                if self.vertex(end).is_none() {
                    out.push(format!("edge {:?} references unknown vertex {end:?}", e.id));
                }
            }
        }
        // stubs and blocks at vertices
        let mut outer_seen: HashMap<&str, usize> = HashMap::new();
        for v in &self.vertices {
            let mut listed: HashMap<&str, usize> = HashMap::new();
            for s in &v.stubs {
                match self.edge(s) {
                    None => out.push(format!("vertex {:?} lists unknown stub {s:?}", v.id)),
                    Some(e) if e.kind == EdgeKind::Boundary => {
                        out.push(format!("vertex {:?} lists boundary edge {s:?} as a stub", v.id))
                    }
                    Some(e) if e.kind == EdgeKind::Outer => *outer_seen.entry(e.id.as_str()).or_default() += 1,
                    Some(_) => *listed.entry(s.as_str()).or_default() += 1,
                }
            }
            for e in self.edges.iter().filter(|e| e.kind == EdgeKind::Internal && e.is_colored()) {
                let expected = [&e.tail, &e.head].iter().filter(|x| x.as_deref() == Some(v.id.as_str())).count();
                let got = listed.get(e.id.as_str()).copied().unwrap_or(0);
                if expected != got {
                    out.push(format!(
                        "vertex {:?} lists Wilson line {:?} {got} times, expected {expected}",
                        v.id, e.id
                    ));
                }
            }
            if v.factors.is_some() && v.intertwiner.is_some() {
                out.push(format!("vertex {:?} sets both intertwiner and factors", v.id));
            }
            let legs: usize = v.blocks().iter().map(|f| f.legs).sum();
            if legs != v.stubs.len() {
                out.push(format!("vertex {:?} factors cover {legs} legs but it has {} stubs", v.id, v.stubs.len()));
            }
        }
        for e in self.outer_edges() {
            if outer_seen.get(e.id.as_str()).copied().unwrap_or(0) != 1 {
                out.push(format!("outer edge {:?} must be attached to exactly one vertex", e.id));
            }
        }
        // boundary vertices split boundary circles into intervals
        let mut ends: BTreeMap<&str, usize> = BTreeMap::new();
        for e in self.edges.iter().filter(|e| e.kind == EdgeKind::Boundary) {
            for end in [&e.tail, &e.head].into_iter().flatten() {
                *ends.entry(end.as_str()).or_default() += 1;
            }
        }
        for (v, n) in ends {
            if n != 2 {
                out.push(format!("boundary vertex {v:?} meets {n} boundary edge ends, expected 2"));
            }
        }
        if let Some(chi) = self.euler_characteristic {
            let got = self.computed_euler_characteristic();
            if got != chi {
                out.push(format!("declared Euler characteristic {chi} but the cell complex gives {got}"));
            }
        }
        out
    }

    pub fn check_structure(&self, rs: &RootSystem) -> Result<()> {
        let v = self.structure_violations(rs);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Structure(v.join("; ")))
        }
    }
}

/// Legs `(m, primal)` of each vertex block, for SU(2). Wilson lines enter as
/// `V*` at their head and `V` at their tail; outer edges by their flag.
pub(crate) fn vertex_legs(gs: &OpenGraphSurface, v: &Vertex) -> Vec<(usize, bool)> {
    let mut seen_loop: BTreeSet<&str> = BTreeSet::new();
    v.stubs
        .iter()
        .map(|s| {
            let e = gs.edge(s).expect("checked stub");
            let m = e.color.as_ref().map_or(0, |c| c.coords().first().copied().unwrap_or(0) as usize);
            match e.kind {
                EdgeKind::Outer => (m, e.orientation == Some(Orientation::Plus)),
                _ => {
                    let at_head = e.head.as_deref() == Some(v.id.as_str());
                    let at_tail = e.tail.as_deref() == Some(v.id.as_str());
                    if at_head && at_tail {
                        (m, !seen_loop.insert(s.as_str()))
                    } else {
                        (m, at_tail)
                    }
                }
            }
        })
        .collect()
}

/// Lists every violated structural, admissibility or invariance condition.
pub fn validate(gs: &OpenGraphSurface, rs: &RootSystem, coloring: &Coloring) -> ValidationReport {
    let mut report = ValidationReport::default();
    let structure = gs.structure_violations(rs);
    let broken = !structure.is_empty();
    for m in structure {
        report.push(ViolationKind::Structure, m);
    }
    if coloring.regions.len() != gs.regions.len() {
        report.push(
            ViolationKind::Structure,
            format!("coloring has {} region colors for {} regions", coloring.regions.len(), gs.regions.len()),
        );
        return report;
    }
    for (i, c) in coloring.regions.iter().enumerate() {
        if c.rank() != rs.rank() {
            report.push(ViolationKind::Structure, format!("region {i} color has the wrong rank"));
            return report;
        }
    }
    if broken {
        return report;
    }
    for e in gs.internal_edges() {
        let mut pos = None;
        let mut neg = None;
        for (i, r) in gs.regions.iter().enumerate() {
            for s in r.boundary_word.iter().filter(|s| s.edge == e.id) {
                if s.forward {
                    pos = Some(i);
                } else {
                    neg = Some(i);
                }
            }
        }
        let (l, r) = (pos.expect("checked"), neg.expect("checked"));
        let mu = e.color_or_zero(rs.rank());
        let (cl, cr) = (&coloring.regions[l], &coloring.regions[r]);
        if !admissible(rs, cr, cl, &mu) {
            report.push(
                ViolationKind::Admissibility,
                format!("edge {:?}: region colors [{cl}] and [{cr}] are not coupled by [{mu}]", e.id),
            );
        }
    }
    for v in &gs.vertices {
        let blocks = v.blocks();
        if blocks.is_empty() {
            continue;
        }
        if rs.rank() != 1 {
            let colored = v.stubs.iter().any(|s| gs.edge(s).is_some_and(|e| e.is_colored()));
            if colored {
                report.push(
                    ViolationKind::Invariance,
                    format!("vertex {:?}: invariant vectors are only available for SU(2)", v.id),
                );
            }
            continue;
        }
        let legs = vertex_legs(gs, v);
        let mut start = 0;
        for f in blocks {
            let basis = invariant_vectors::<f64>(&legs[start..start + f.legs]);
            if basis.is_empty() {
                report.push(
                    ViolationKind::Invariance,
                    format!("vertex {:?}: legs {}..{} admit no invariant vector", v.id, start, start + f.legs),
                );
            } else if f.basis >= basis.len() {
                report.push(
                    ViolationKind::Invariance,
                    format!(
                        "vertex {:?}: invariant index {} out of range (dimension {})",
                        v.id,
                        f.basis,
                        basis.len()
                    ),
                );
            }
            start += f.legs;
        }
    }
    report
}

/// Inserts one circle per region following its boundary; the boundary
/// intervals of the region become segments of that circle.
pub fn enrich(gs: &OpenGraphSurface, rs: &RootSystem) -> Result<OpenGraphSurface> {
    gs.check_structure(rs)?;
    let circles = gs
        .regions
        .iter()
        .enumerate()
        .map(|(i, r)| EnrichedCircle {
            id: format!("c{i}"),
            region: i,
            word: r.boundary_word.clone(),
            segments: r
                .boundary_word
                .iter()
                .filter(|s| gs.edge(&s.edge).is_some_and(|e| e.kind == EdgeKind::Boundary))
                .map(|s| s.edge.clone())
                .collect(),
        })
        .collect();
    Ok(OpenGraphSurface { enrichment: Some(circles), ..gs.clone() })
}

fn fresh(id: &str, taken: &BTreeSet<String>) -> String {
    let mut out = id.to_string();
    while taken.contains(&out) {
        out.push('\'');
    }
    out
}

/// Disjoint union; colliding ids of `s2` get primes appended. Returns the
/// renaming of `s2` edge ids.
fn disjoint_union(s1: &OpenGraphSurface, s2: &OpenGraphSurface) -> (OpenGraphSurface, HashMap<String, String>) {
    let mut edge_ids: BTreeSet<String> = s1.edges.iter().chain(&s2.edges).map(|e| e.id.clone()).collect();
    let mut vertex_ids: BTreeSet<String> = s1.vertices.iter().chain(&s2.vertices).map(|v| v.id.clone()).collect();
    let mut erename = HashMap::new();
    for e in &s2.edges {
        let new = if s1.edge(&e.id).is_some() { fresh(&e.id, &edge_ids) } else { e.id.clone() };
        edge_ids.insert(new.clone());
        erename.insert(e.id.clone(), new);
    }
    let mut vrename = HashMap::new();
    for v in &s2.vertices {
        let new = if s1.vertex(&v.id).is_some() { fresh(&v.id, &vertex_ids) } else { v.id.clone() };
        vertex_ids.insert(new.clone());
        vrename.insert(v.id.clone(), new);
    }
    let re = |id: &str| erename.get(id).cloned().unwrap_or_else(|| id.to_string());
    let rv = |id: &Option<String>| id.as_ref().map(|v| vrename.get(v).cloned().unwrap_or_else(|| v.clone()));
    let mut out = s1.clone();
    out.enrichment = None;
    out.euler_characteristic = None;
    out.regions.extend(s2.regions.iter().map(|r| Region {
        boundary_word: r.boundary_word.iter().map(|s| SignedEdge::new(re(&s.edge), s.forward)).collect(),
        ..r.clone()
    }));
    out.edges.extend(s2.edges.iter().map(|e| Edge { id: re(&e.id), tail: rv(&e.tail), head: rv(&e.head), ..e.clone() }));
    out.vertices.extend(s2.vertices.iter().map(|v| Vertex {
        id: vrename[&v.id].clone(),
        stubs: v.stubs.iter().map(|s| re(s)).collect(),
        ..v.clone()
    }));
    (out, erename)
}

/// Glues boundary edge `edge1` of `s1` to boundary edge `edge2` of `s2`. The
/// identified edge becomes internal, carrying the sandwich Wilson line when a
/// nonzero color is given.
pub fn glue_surfaces(
    s1: &OpenGraphSurface,
    edge1: &str,
    s2: &OpenGraphSurface,
    edge2: &str,
    sandwich: Option<HighestWeight>,
) -> Result<OpenGraphSurface> {
    let (union, rename) = disjoint_union(s1, s2);
    let e2 = rename.get(edge2).ok_or_else(|| invalid(format!("unknown edge {edge2:?} in the second surface")))?;
    glue_self(&union, edge1, e2, sandwich)
}

/// Identifies two boundary edges of one surface, reversing the orientation of
/// the second. Shared endpoints are allowed.
///
/// A nonzero sandwich color on an interval with endpoints adds a Wilson line
/// along the glued edge whose ends become new outer edges (`{id}.head` with
/// flag `+`, `{id}.tail` with flag `-`); on a circle it becomes a closed loop.
pub fn glue_self(
    s: &OpenGraphSurface,
    edge1: &str,
    edge2: &str,
    sandwich: Option<HighestWeight>,
) -> Result<OpenGraphSurface> {
    if edge1 == edge2 {
        return Err(invalid("cannot glue an edge to itself"));
    }
    let find = |id: &str| -> Result<&Edge> {
        let e = s.edge(id).ok_or_else(|| invalid(format!("unknown edge {id:?}")))?;
        if e.kind != EdgeKind::Boundary {
            return Err(invalid(format!("edge {id:?} is not a boundary edge")));
        }
        Ok(e)
    };
    let (e1, e2) = (find(edge1)?, find(edge2)?);
    if e1.tail.is_some() != e2.tail.is_some() {
        return Err(invalid("cannot glue an interval to a circle"));
    }
    let sign = |id: &str| -> Result<bool> {
        let occ: Vec<bool> =
            s.regions.iter().flat_map(|r| r.boundary_word.iter()).filter(|x| x.edge == id).map(|x| x.forward).collect();
        match occ.as_slice() {
            [f] => Ok(*f),
            _ => Err(invalid(format!("boundary edge {id:?} must occur in exactly one region word"))),
        }
    };
    let (f1, f2) = (sign(edge1)?, sign(edge2)?);
    // e2 runs along e1 when the two words traverse them oppositely
    let parallel = f1 != f2;
    let mut out = s.clone();
    out.enrichment = None;
    out.euler_characteristic = None;
    for r in &mut out.regions {
        for x in &mut r.boundary_word {
            if x.edge == edge2 {
                *x = SignedEdge::new(edge1, !f1);
            }
        }
    }
    // vertex identifications
    if let (Some(t1), Some(h1), Some(t2), Some(h2)) = (&e1.tail, &e1.head, &e2.tail, &e2.head) {
        let pairs = if parallel { [(t1, t2), (h1, h2)] } else { [(h1, t2), (t1, h2)] };
        let mut alias: HashMap<String, String> = HashMap::new();
        let resolve = |alias: &HashMap<String, String>, v: &str| -> String {
            let mut cur = v.to_string();
            while let Some(n) = alias.get(&cur) {
                cur = n.clone();
            }
            cur
        };
        for (keep, drop) in pairs {
            let (k, d) = (resolve(&alias, keep), resolve(&alias, drop));
            if k == d {
                continue;
            }
            let di = out.vertices.iter().position(|v| v.id == d).expect("checked vertex");
            let dv = out.vertices.remove(di);
            let kv = out.vertices.iter_mut().find(|v| v.id == k).expect("checked vertex");
            let mut blocks = kv.blocks();
            blocks.extend(dv.blocks());
            kv.stubs.extend(dv.stubs);
            kv.factors = if blocks.is_empty() { None } else { Some(blocks) };
            kv.intertwiner = None;
            alias.insert(d, k);
        }
        for e in &mut out.edges {
            for end in [&mut e.tail, &mut e.head].into_iter().flatten() {
                *end = resolve(&alias, end);
            }
        }
    }
    out.edges.retain(|e| e.id != edge2);
    let i1 = out.edges.iter().position(|e| e.id == edge1).expect("kept edge");
    let colored = sandwich.as_ref().is_some_and(|c| !c.is_zero());
    {
        let e = &mut out.edges[i1];
        e.kind = EdgeKind::Internal;
        e.holonomy = None;
        e.color = if colored { sandwich.clone() } else { None };
    }
    if colored {
        let mu = sandwich.expect("colored");
        let e = out.edges[i1].clone();
        if let (Some(t), Some(h)) = (&e.tail, &e.head) {
            let taken: BTreeSet<String> = out.edges.iter().map(|e| e.id.clone()).collect();
            let head_stub = fresh(&format!("{}.head", e.id), &taken);
            let tail_stub = fresh(&format!("{}.tail", e.id), &taken);
            for (v, stub) in [(h, &head_stub), (t, &tail_stub)] {
                let vx = out.vertices.iter_mut().find(|x| &x.id == v).expect("endpoint vertex");
                let mut blocks = vx.blocks();
                blocks.push(Factor { legs: 2, basis: 0 });
                vx.stubs.push(e.id.clone());
                vx.stubs.push(stub.clone());
                vx.factors = Some(blocks);
                vx.intertwiner = None;
            }
            out.edges.push(Edge::outer(head_stub, mu.clone(), Orientation::Plus));
            out.edges.push(Edge::outer(tail_stub, mu, Orientation::Minus));
        }
    }
    Ok(out)
}

/// Disc with a single boundary circle `b`.
pub fn disc_surface(area: f64, genus: u32) -> OpenGraphSurface {
    OpenGraphSurface {
        regions: vec![Region { area, genus, boundary_word: vec![SignedEdge::plus("b")] }],
        edges: vec![Edge::boundary("b", None, None)],
        vertices: vec![],
        euler_characteristic: Some(1 - 2 * genus as i64),
        enrichment: None,
    }
}

/// Closed surface of genus `g` as one region with an empty word.
pub fn closed_surface(area: f64, genus: u32) -> OpenGraphSurface {
    OpenGraphSurface {
        regions: vec![Region { area, genus, boundary_word: vec![] }],
        edges: vec![],
        vertices: vec![],
        euler_characteristic: Some(2 - 2 * genus as i64),
        enrichment: None,
    }
}

/// Cylinder with `N` parallel Wilson lines `e{i}` from bottom vertex `B{i}`
/// to top vertex `T{i}`. Region `i` has word `[-b{i}, -e{i}, +t{i}, +e{i+1}]`,
/// so with `t{i} = g_i` and `b{i} = g′_i` its holonomy is
/// `g′_i⁻¹ h_i⁻¹ g_i h_{i+1}`. Outer edges `top{i}` (flag `+`) come before
/// `bot{i}` (flag `-`), so the boundary state reads as the kernel matrix.
pub fn cylinder_surface(spins: &[HighestWeight], areas: &[f64]) -> Result<OpenGraphSurface> {
    let n = spins.len();
    if n == 0 || areas.len() != n {
        return Err(invalid("cylinder needs one area per Wilson line"));
    }
    let regions = (0..n)
        .map(|i| Region {
            area: areas[i],
            genus: 0,
            boundary_word: vec![
                SignedEdge::minus(format!("b{i}")),
                SignedEdge::minus(format!("e{i}")),
                SignedEdge::plus(format!("t{i}")),
                SignedEdge::plus(format!("e{}", (i + 1) % n)),
            ],
        })
        .collect();
    let mut edges = Vec::new();
    for (i, mu) in spins.iter().enumerate() {
        let color = if mu.is_zero() { None } else { Some(mu.clone()) };
        edges.push(Edge::internal(format!("e{i}"), color, Some(&format!("B{i}")), Some(&format!("T{i}"))));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        edges.push(Edge::boundary(format!("t{i}"), Some(&format!("T{j}")), Some(&format!("T{i}"))));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        edges.push(Edge::boundary(format!("b{i}"), Some(&format!("B{j}")), Some(&format!("B{i}"))));
    }
    for (i, mu) in spins.iter().enumerate() {
        edges.push(Edge::outer(format!("top{i}"), mu.clone(), Orientation::Plus));
    }
    for (i, mu) in spins.iter().enumerate() {
        edges.push(Edge::outer(format!("bot{i}"), mu.clone(), Orientation::Minus));
    }
    let mut vertices = Vec::new();
    for i in 0..n {
        vertices.push(Vertex::new(format!("T{i}"), &[&format!("e{i}"), &format!("top{i}")]));
        vertices.push(Vertex::new(format!("B{i}"), &[&format!("e{i}"), &format!("bot{i}")]));
    }
    Ok(OpenGraphSurface { regions, edges, vertices, euler_characteristic: Some(0), enrichment: None })
}

#[cfg(test)]
mod tests;
