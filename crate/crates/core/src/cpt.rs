//! Combinatorial pseudo-triangulation (CPT) labellings.
//!
//! A labelling assigns BIG or SMALL to every angle of a plane graph. It is a
//! CPT when every bounded face has exactly three SMALL angles, every angle of
//! the outer face is BIG and no vertex carries more than one BIG angle.
//! A vertex is *pointed* when it carries a BIG angle.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane_graph::{Angle, Dart, PlaneGraph, SubComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Big,
    Small,
}

impl Label {
    pub fn flipped(self) -> Label {
        match self {
            Label::Big => Label::Small,
            Label::Small => Label::Big,
        }
    }
}

/// A BIG/SMALL assignment on the angles of a plane graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CptLabelling {
    graph: PlaneGraph,
    /// `labels[f][i]`: angle at position `i` of face `f`.
    labels: Vec<Vec<Label>>,
}

/// On-disk labelling format, keyed by face trace position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabellingFile {
    pub angles: Vec<AngleEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleEntry {
    pub face: usize,
    pub index: usize,
    pub label: Label,
}

impl CptLabelling {
    pub fn from_fn(graph: PlaneGraph, mut f: impl FnMut(&Angle) -> Label) -> Self {
        let mut labels: Vec<Vec<Label>> = graph.faces().iter().map(|face| vec![Label::Small; face.len()]).collect();
        for a in graph.angles() {
            labels[a.face][a.index] = f(&a);
        }
        CptLabelling { graph, labels }
    }

    /// Labels keyed by the out-dart of each angle. Every angle must be covered.
    pub fn from_darts(graph: PlaneGraph, map: &HashMap<Dart, Label>) -> Result<Self> {
        let mut missing = Vec::new();
        let l = Self::from_fn(graph, |a| {
            map.get(&a.out_dart).copied().unwrap_or_else(|| {
                missing.push(a.out_dart);
                Label::Small
            })
        });
        if let Some(d) = missing.first() {
            return Err(Error::Input(format!("{} angles unlabelled (first: out-dart {}→{})", missing.len(), d.tail, d.head)));
        }
        Ok(l)
    }

    pub fn from_file(graph: PlaneGraph, file: &LabellingFile) -> Result<Self> {
        let mut labels: Vec<Vec<Option<Label>>> = graph.faces().iter().map(|f| vec![None; f.len()]).collect();
        for e in &file.angles {
            let slot = labels
                .get_mut(e.face)
                .and_then(|f| f.get_mut(e.index))
                .ok_or_else(|| Error::Input(format!("angle (face {}, index {}) does not exist", e.face, e.index)))?;
            if slot.is_some() {
                return Err(Error::Input(format!("angle (face {}, index {}) labelled twice", e.face, e.index)));
            }
            *slot = Some(e.label);
        }
        let mut out = Vec::with_capacity(labels.len());
        for (f, face) in labels.into_iter().enumerate() {
            let mut row = Vec::with_capacity(face.len());
            for (i, l) in face.into_iter().enumerate() {
                row.push(l.ok_or_else(|| Error::Input(format!("missing label for angle (face {f}, index {i})")))?);
            }
            out.push(row);
        }
        Ok(CptLabelling { graph, labels: out })
    }

    pub fn to_file(&self) -> LabellingFile {
        let mut angles = Vec::new();
        for (f, row) in self.labels.iter().enumerate() {
            for (i, &label) in row.iter().enumerate() {
                angles.push(AngleEntry { face: f, index: i, label });
            }
        }
        LabellingFile { angles }
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn label(&self, a: &Angle) -> Label {
        self.labels[a.face][a.index]
    }

    /// Label of the angle whose out-dart is `d`.
    pub fn label_of(&self, d: Dart) -> Label {
        let (f, i) = self.graph.dart_position(d).expect("dart of the graph");
        self.labels[f][i]
    }

    pub fn set_label(&mut self, d: Dart, label: Label) {
        let (f, i) = self.graph.dart_position(d).expect("dart of the graph");
        self.labels[f][i] = label;
    }

    /// Labels keyed by out-dart.
    pub fn dart_map(&self) -> HashMap<Dart, Label> {
        self.graph.angles().iter().map(|a| (a.out_dart, self.label(a))).collect()
    }

    pub fn big_count(&self, v: usize) -> usize {
        self.graph.rotation(v).iter().filter(|&&w| self.label_of(Dart::new(v, w)) == Label::Big).count()
    }

    pub fn is_pointed(&self, v: usize) -> bool {
        self.big_count(v) > 0
    }

    /// The BIG angle at `v`, if any (the first one in rotation order).
    pub fn big_angle(&self, v: usize) -> Option<Angle> {
        self.graph
            .rotation(v)
            .iter()
            .map(|&w| Dart::new(v, w))
            .find(|&d| self.label_of(d) == Label::Big)
            .map(|d| self.graph.angle_at(d))
    }

    pub fn pointed(&self) -> Vec<bool> {
        (0..self.graph.n()).map(|v| self.is_pointed(v)).collect()
    }

    /// `(x, y)`: non-pointed and pointed vertex counts.
    pub fn xy(&self) -> (usize, usize) {
        let y = (0..self.graph.n()).filter(|&v| self.is_pointed(v)).count();
        (self.graph.n() - y, y)
    }

    pub fn small_count_in_face(&self, f: usize) -> usize {
        self.labels[f].iter().filter(|&&l| l == Label::Small).count()
    }
}

/// Counting summary of a labelling or subcomplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSummary {
    pub e: usize,
    pub x: usize,
    pub y: usize,
    /// Bounded faces.
    pub f: usize,
    /// Outer boundary length.
    pub b: usize,
    pub c1: usize,
    pub c2: usize,
}

/// One violated CPT condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    BoundedFaceSmallCount { face: usize, small: usize },
    OuterAngleSmall { face_index: usize, vertex: usize },
    VertexBigCount { vertex: usize, big: usize },
    EdgeCount { e: usize, x: usize, y: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundedFaceSmallCount { face, small } => {
                write!(f, "bounded face {face} has {small} small angles (expected 3)")
            }
            Violation::OuterAngleSmall { face_index, vertex } => {
                write!(f, "outer-face angle {face_index} at vertex {vertex} is small")
            }
            Violation::VertexBigCount { vertex, big } => write!(f, "vertex {vertex} has {big} big angles"),
            Violation::EdgeCount { e, x, y } => write!(f, "e = {e} but 3x + 2y - 3 = {}", 3 * x + 2 * y - 3),
        }
    }
}

/// Checks the three CPT conditions and the edge count identity.
pub fn validate_cpt(l: &CptLabelling) -> std::result::Result<CountSummary, Vec<Violation>> {
    let g = l.graph();
    let mut problems = Vec::new();
    for f in 1..g.face_count() {
        let small = l.small_count_in_face(f);
        if small != 3 {
            problems.push(Violation::BoundedFaceSmallCount { face: f, small });
        }
    }
    for (i, d) in g.face(0).iter().enumerate() {
        if l.labels[0][i] == Label::Small {
            problems.push(Violation::OuterAngleSmall { face_index: i, vertex: d.tail });
        }
    }
    for v in 0..g.n() {
        let big = l.big_count(v);
        if big > 1 {
            problems.push(Violation::VertexBigCount { vertex: v, big });
        }
    }
    let (x, y) = l.xy();
    let e = g.edge_count();
    if problems.is_empty() && e + 3 != 3 * x + 2 * y {
        problems.push(Violation::EdgeCount { e, x, y });
    }
    if !problems.is_empty() {
        return Err(problems);
    }
    let whole = g.induced_subcomplex(&(0..g.n()).collect::<Vec<_>>()).remove(0);
    let report = corners(&whole, l);
    Ok(CountSummary { e, x, y, f: g.bounded_face_count(), b: whole.b(), c1: report.c1, c2: report.c2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CornerKind {
    /// Pointed, with its BIG angle in the subcomplex's outer face.
    Type1,
    /// Non-pointed, with two or more consecutive SMALL angles in the outer face.
    Type2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub vertex: usize,
    pub kind: CornerKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerReport {
    pub corners: Vec<Corner>,
    pub c1: usize,
    pub c2: usize,
}

/// Classifies the outer-boundary vertices of `h` as corners.
pub fn corners(h: &SubComplex, l: &CptLabelling) -> CornerReport {
    let g = l.graph();
    let in_h: Vec<bool> = {
        let mut m = vec![false; g.n()];
        for &v in &h.vertices {
            m[v] = true;
        }
        m
    };
    let mut out = Vec::new();
    for v in h.boundary_vertices() {
        let rot = g.rotation(v);
        let deg = rot.len();
        let in_outer = |i: usize| h.outer_faces[g.face_of_dart(Dart::new(v, rot[i]))];
        if l.is_pointed(v) {
            let big = l.big_angle(v).unwrap();
            if h.outer_faces[big.face] {
                out.push(Corner { vertex: v, kind: CornerKind::Type1 });
            }
            continue;
        }
        // Group parent angles into sub-angles: a group starts at each
        // subgraph neighbor.
        let starts: Vec<usize> = (0..deg).filter(|&i| in_h[rot[i]]).collect();
        let type2 = if starts.is_empty() {
            deg >= 2 && in_outer(0)
        } else {
            starts.iter().enumerate().any(|(k, &s)| {
                let next = starts[(k + 1) % starts.len()];
                let len = if next > s { next - s } else { next + deg - s };
                len >= 2 && in_outer(s)
            })
        };
        if type2 {
            out.push(Corner { vertex: v, kind: CornerKind::Type2 });
        }
    }
    let c1 = out.iter().filter(|c| c.kind == CornerKind::Type1).count();
    let c2 = out.len() - c1;
    CornerReport { corners: out, c1, c2 }
}

/// `(e, x, y, b)` of a subcomplex, with pointedness taken from `l`.
pub fn subcomplex_counts(h: &SubComplex, l: &CptLabelling) -> (usize, usize, usize, usize) {
    let y = h.vertices.iter().filter(|&&v| l.is_pointed(v)).count();
    (h.edge_count(), h.vertices.len() - y, y, h.b())
}

pub(crate) fn adjacency_masks(g: &PlaneGraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Default vertex cap for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 18;

/// Verdict of a generalized Laman check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlVerdict {
    pub holds: bool,
    /// Violating subset: smallest cardinality, then lexicographically first.
    pub witness: Option<Vec<usize>>,
}

/// Edge counts `e(S)` and capacities `3x + 2y` for every vertex subset.
fn subset_tables(l: &CptLabelling) -> (Vec<u16>, Vec<u16>) {
    let g = l.graph();
    let n = g.n();
    let adj = adjacency_masks(g);
    let cap_v: Vec<u16> = (0..n).map(|v| if l.is_pointed(v) { 2 } else { 3 }).collect();
    let size = 1usize << n;
    let mut edges = vec![0u16; size];
    let mut cap = vec![0u16; size];
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        edges[s] = edges[rest] + (adj[low] & rest as u64).count_ones() as u16;
        cap[s] = cap[rest] + cap_v[low];
    }
    (edges, cap)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > 30 {
        return Err(Error::CapExceeded { what: "vertices", size: n, cap: cap.min(30) });
    }
    Ok(())
}

/// Exhaustive generalized Laman check: every subset with `x + y >= 2`
/// spans at most `3x + 2y - 3` edges.
pub fn generalized_laman(l: &CptLabelling) -> Result<GlVerdict> {
    generalized_laman_capped(l, DEFAULT_ENUMERATION_CAP)
}

pub fn generalized_laman_capped(l: &CptLabelling, cap: usize) -> Result<GlVerdict> {
    let n = l.graph().n();
    check_cap(n, cap)?;
    let (edges, capacity) = subset_tables(l);
    let violates = |s: usize| s.count_ones() >= 2 && edges[s] as usize + 3 > capacity[s] as usize;
    if !(1..edges.len()).any(violates) {
        return Ok(GlVerdict { holds: true, witness: None });
    }
    for k in 2..=n {
        if let Some(s) = combinations(n, k).find(|&s| violates(s as usize)) {
            return Ok(GlVerdict { holds: false, witness: Some(mask_to_vec(s)) });
        }
    }
    unreachable!("a violating subset exists")
}

/// Dual form: every subset of `x'` non-pointed and `y'` pointed vertices
/// with `1 <= x' + y' <= n - 2` is incident to at least `3x' + 2y'` edges.
/// Evaluated directly on incident-edge counts.
pub fn generalized_laman_dual(l: &CptLabelling) -> Result<bool> {
    let g = l.graph();
    let n = g.n();
    check_cap(n, DEFAULT_ENUMERATION_CAP)?;
    let pointed = l.pointed();
    let edge_masks: Vec<u64> = g.edges().iter().map(|&(u, v)| (1u64 << u) | (1u64 << v)).collect();
    for s in 1u64..(1u64 << n) {
        let k = s.count_ones() as usize;
        if k + 2 > n {
            continue;
        }
        let need: usize = mask_to_vec(s).iter().map(|&v| if pointed[v] { 2 } else { 3 }).sum();
        let incident = edge_masks.iter().filter(|&&m| m & s != 0).count();
        if incident < need {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generalized Laman check by a pebble game with three pebbles on each
/// non-pointed vertex and two on each pointed one; an edge is accepted when
/// four pebbles can be gathered on its endpoints. For a valid CPT the
/// property holds iff every edge is accepted.
pub fn generalized_laman_pebble(l: &CptLabelling) -> bool {
    let g = l.graph();
    let n = g.n();
    let mut pebbles: Vec<u8> = (0..n).map(|v| if l.is_pointed(v) { 2 } else { 3 }).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let fetch = |pebbles: &mut Vec<u8>, out: &mut Vec<Vec<usize>>, target: usize, blocked: usize| -> bool {
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[target] = true;
        seen[blocked] = true;
        let mut stack = vec![target];
        while let Some(x) = stack.pop() {
            for k in 0..out[x].len() {
                let y = out[x][k];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if pebbles[y] > 0 {
                    pebbles[y] -= 1;
                    let mut z = y;
                    while z != target {
                        let p = parent[z];
                        let pos = out[p].iter().position(|&q| q == z).unwrap();
                        out[p].swap_remove(pos);
                        out[z].push(p);
                        z = p;
                    }
                    pebbles[target] += 1;
                    return true;
                }
                stack.push(y);
            }
        }
        false
    };
    for &(u, v) in g.edges() {
        let full_u = if l.is_pointed(u) { 2 } else { 3 };
        let full_v = if l.is_pointed(v) { 2 } else { 3 };
        while pebbles[u] < full_u && fetch(&mut pebbles, &mut out, u, v) {}
        while pebbles[v] < full_v && fetch(&mut pebbles, &mut out, v, u) {}
        if pebbles[u] + pebbles[v] < 4 {
            return false;
        }
        // Spend from whichever endpoint keeps the other with a pebble to spare.
        if pebbles[u] > 0 {
            pebbles[u] -= 1;
            out[u].push(v);
        } else {
            pebbles[v] -= 1;
            out[v].push(u);
        }
    }
    true
}

/// Connected vertex subsets of size at least 3 whose induced subcomplex has
/// fewer than three corners. Returns the first offender, if any.
pub fn three_corner_witness(l: &CptLabelling) -> Result<Option<Vec<usize>>> {
    let g = l.graph();
    let n = g.n();
    check_cap(n, DEFAULT_ENUMERATION_CAP)?;
    let adj = adjacency_masks(g);
    for k in 3..=n {
        for s in combinations(n, k) {
            if !mask_connected(s, &adj) {
                continue;
            }
            let verts = mask_to_vec(s);
            let h = g.induced_subcomplex(&verts).remove(0);
            let r = corners(&h, l);
            if r.c1 + r.c2 < 3 {
                return Ok(Some(verts));
            }
        }
    }
    Ok(None)
}

pub fn three_corner_property(l: &CptLabelling) -> Result<bool> {
    Ok(three_corner_witness(l)?.is_none())
}

pub(crate) fn mask_connected(s: u64, adj: &[u64]) -> bool {
    if s == 0 {
        return true;
    }
    let start = s & s.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & s & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == s
}

/// `k`-subsets of `0..n` as bitmasks, in lexicographic order of their
/// sorted element lists.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}
