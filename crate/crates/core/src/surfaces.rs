//! Combinatorial pseudo-triangulations of closed surfaces.
//!
//! A surface embedding is a rotation system plus a sign per edge; a
//! negative edge reverses the local orientation when it is traversed. Faces
//! are traced as orbits on (dart, local orientation) states; every face is
//! found twice, once per direction, and kept once. There is no outer face.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cpt::Label;
use crate::error::{Error, Result};
use crate::plane_graph::PlaneGraph;

/// An angle of a surface embedding: the wedge at `vertex` between rotation
/// entries `slot` and `slot + 1` (cyclically).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub vertex: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceGraph {
    rotations: Vec<Vec<usize>>,
    /// Sign per edge `(u, v)` with `u < v`; `true` for orientation-reversing.
    twisted: BTreeMap<(usize, usize), bool>,
    faces: Vec<Vec<Slot>>,
}

/// Surface graph file: the plane-graph format without an outer face, plus an
/// optional map from `"u-v"` to `+1`/`-1` (absent edges are positive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceGraphFile {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edge_signs: BTreeMap<String, i8>,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl SurfaceGraph {
    /// Builds a surface embedding. `twisted` lists orientation-reversing edges.
    pub fn new(rotations: Vec<Vec<usize>>, twisted: &[(usize, usize)]) -> Result<Self> {
        let n = rotations.len();
        let mut problems = Vec::new();
        let mut signs = BTreeMap::new();
        for (u, rot) in rotations.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in rot {
                if v >= n {
                    problems.push(format!("vertex {u} lists unknown neighbour {v}"));
                } else if v == u {
                    problems.push(format!("loop at vertex {u}"));
                } else if !seen.insert(v) {
                    problems.push(format!("vertex {u} lists neighbour {v} twice"));
                } else if !rotations[v].contains(&u) {
                    problems.push(format!("edge {u}-{v} is missing from the rotation of {v}"));
                } else {
                    signs.insert(edge_key(u, v), false);
                }
            }
        }
        for &(u, v) in twisted {
            match signs.get_mut(&edge_key(u, v)) {
                Some(s) => *s = true,
                None => problems.push(format!("signed pair {u}-{v} is not an edge")),
            }
        }
        if n == 0 || signs.is_empty() {
            problems.push("a surface graph needs at least one edge".into());
        }
        if problems.is_empty() && !connected(&rotations) {
            problems.push("graph is not connected".into());
        }
        if !problems.is_empty() {
            return Err(Error::Embedding(problems));
        }
        let mut g = SurfaceGraph { rotations, twisted: signs, faces: Vec::new() };
        g.faces = g.trace_faces();
        Ok(g)
    }

    /// The sphere embedding of a plane graph.
    pub fn from_plane(g: &PlaneGraph) -> Result<Self> {
        SurfaceGraph::new(g.rotations().to_vec(), &[])
    }

    pub fn from_file(file: &SurfaceGraphFile) -> Result<Self> {
        if file.rotations.len() != file.n {
            return Err(Error::Input(format!("n = {} but {} rotations given", file.n, file.rotations.len())));
        }
        let mut twisted = Vec::new();
        for (key, &sign) in &file.edge_signs {
            let parsed = key.split_once('-').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
            let Some((u, v)) = parsed else {
                return Err(Error::Input(format!("edge sign key {key:?} is not of the form \"u-v\"")));
            };
            match sign {
                1 => {}
                -1 => twisted.push((u, v)),
                s => return Err(Error::Input(format!("edge sign {s} for {key} is not +1 or -1"))),
            }
        }
        SurfaceGraph::new(file.rotations.clone(), &twisted)
    }

    pub fn to_file(&self) -> SurfaceGraphFile {
        SurfaceGraphFile {
            n: self.n(),
            rotations: self.rotations.clone(),
            outer: None,
            edge_signs: self.twisted.iter().filter(|(_, &t)| t).map(|(&(u, v), _)| (format!("{u}-{v}"), -1)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn is_twisted(&self, u: usize, v: usize) -> bool {
        self.twisted[&edge_key(u, v)]
    }

    /// Faces as cyclic sequences of the angles they contain.
    pub fn faces(&self) -> &[Vec<Slot>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Whether vertex orientations can be switched so that every edge is
    /// positive.
    pub fn is_orientable(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        side[0] = Some(false);
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &v in &self.rotations[u] {
                let want = su ^ self.is_twisted(u, v);
                match side[v] {
                    None => {
                        side[v] = Some(want);
                        stack.push(v);
                    }
                    Some(sv) if sv != want => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    fn position(&self, v: usize, w: usize) -> usize {
        self.rotations[v].iter().position(|&x| x == w).expect("adjacent")
    }

    /// One step of face tracing from the state "traversing `u -> v` with
    /// local orientation `s` at `u`". Returns the next state and the angle
    /// passed at `v`.
    fn step(&self, u: usize, v: usize, s: bool) -> ((usize, usize, bool), Slot) {
        let sv = s ^ self.is_twisted(u, v);
        let d = self.degree(v);
        let i = self.position(v, u);
        if !sv {
            let j = (i + d - 1) % d;
            ((v, self.rotations[v][j], sv), Slot { vertex: v, slot: j })
        } else {
            let j = (i + 1) % d;
            ((v, self.rotations[v][j], sv), Slot { vertex: v, slot: i })
        }
    }

    fn trace_faces(&self) -> Vec<Vec<Slot>> {
        let mut seen: HashSet<(usize, usize, bool)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.n() {
            for &v in &self.rotations[u] {
                if seen.contains(&(u, v, false)) {
                    continue;
                }
                let start = (u, v, false);
                let mut state = start;
                let mut face = Vec::new();
                loop {
                    seen.insert(state);
                    let (a, b, s) = state;
                    seen.insert((b, a, !(s ^ self.is_twisted(a, b))));
                    let (next, slot) = self.step(a, b, s);
                    face.push(slot);
                    state = next;
                    if state == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }
}

fn connected(rotations: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; rotations.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &rotations[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Orientability and genus (crosscap number when non-orientable), from the
/// Euler characteristic of the traced faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceType {
    pub orientable: bool,
    pub genus: usize,
}

pub fn genus_of(g: &SurfaceGraph) -> Result<SurfaceType> {
    let chi = g.euler_characteristic();
    let orientable = g.is_orientable();
    let genus = if orientable {
        if chi > 2 || chi % 2 != 0 {
            return Err(Error::Internal(format!("orientable embedding with Euler characteristic {chi}")));
        }
        (2 - chi) / 2
    } else {
        if chi > 1 {
            return Err(Error::Internal(format!("non-orientable embedding with Euler characteristic {chi}")));
        }
        2 - chi
    };
    Ok(SurfaceType { orientable, genus: genus as usize })
}

/// A BIG/SMALL assignment to the angles of a surface embedding, indexed
/// like the rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceCpt {
    pub graph: SurfaceGraph,
    pub labels: Vec<Vec<Label>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceAngleEntry {
    pub vertex: usize,
    pub slot: usize,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLabellingFile {
    pub angles: Vec<SurfaceAngleEntry>,
}

impl SurfaceCpt {
    pub fn from_fn(graph: SurfaceGraph, mut f: impl FnMut(Slot) -> Label) -> Self {
        let labels = (0..graph.n()).map(|v| (0..graph.degree(v)).map(|slot| f(Slot { vertex: v, slot })).collect()).collect();
        SurfaceCpt { graph, labels }
    }

    pub fn from_file(graph: SurfaceGraph, file: &SurfaceLabellingFile) -> Result<Self> {
        let mut labels: Vec<Vec<Option<Label>>> = (0..graph.n()).map(|v| vec![None; graph.degree(v)]).collect();
        for e in &file.angles {
            let cell = labels
                .get_mut(e.vertex)
                .and_then(|r| r.get_mut(e.slot))
                .ok_or_else(|| Error::Input(format!("no angle at vertex {} slot {}", e.vertex, e.slot)))?;
            if cell.replace(e.label).is_some() {
                return Err(Error::Input(format!("angle at vertex {} slot {} labelled twice", e.vertex, e.slot)));
            }
        }
        let mut out = Vec::with_capacity(labels.len());
        for (v, row) in labels.into_iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (slot, l) in row.into_iter().enumerate() {
                r.push(l.ok_or_else(|| Error::Input(format!("angle at vertex {v} slot {slot} is unlabelled")))?);
            }
            out.push(r);
        }
        Ok(SurfaceCpt { graph, labels: out })
    }

    pub fn to_file(&self) -> SurfaceLabellingFile {
        let mut angles = Vec::new();
        for (vertex, row) in self.labels.iter().enumerate() {
            for (slot, &label) in row.iter().enumerate() {
                angles.push(SurfaceAngleEntry { vertex, slot, label });
            }
        }
        SurfaceLabellingFile { angles }
    }

    pub fn label(&self, a: Slot) -> Label {
        self.labels[a.vertex][a.slot]
    }

    pub fn is_pointed(&self, v: usize) -> bool {
        self.labels[v].contains(&Label::Big)
    }

    /// `(x, y)`: non-pointed and pointed vertex counts.
    pub fn xy(&self) -> (usize, usize) {
        let y = (0..self.graph.n()).filter(|&v| self.is_pointed(v)).count();
        (self.graph.n() - y, y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceViolation {
    FaceSmallCount { face: usize, small: usize },
    VertexBigCount { vertex: usize, big: usize },
}

impl fmt::Display for SurfaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceViolation::FaceSmallCount { face, small } => write!(f, "face {face} has {small} small angles, expected 3"),
            SurfaceViolation::VertexBigCount { vertex, big } => write!(f, "vertex {vertex} has {big} big angles, expected at most 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub surface: SurfaceType,
    pub e: usize,
    pub x: usize,
    pub y: usize,
    pub f: usize,
    /// `3x + 2y - 6 + 6g` (orientable) or `3x + 2y - 6 + 3g`.
    pub predicted_e: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCheck {
    pub summary: SurfaceSummary,
    pub violations: Vec<SurfaceViolation>,
}

impl SurfaceCheck {
    pub fn is_cpt(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn identity_holds(&self) -> bool {
        self.summary.e as i64 == self.summary.predicted_e
    }
}

/// Edge count forced by the surface counting identity.
pub fn predicted_edges(surface: SurfaceType, x: usize, y: usize) -> i64 {
    let g = surface.genus as i64;
    3 * x as i64 + 2 * y as i64 - 6 + if surface.orientable { 6 * g } else { 3 * g }
}

/// Checks the CPT conditions and, separately, the counting identity. A
/// labelling that satisfies the conditions but not the identity signals an
/// inconsistent embedding and is reported as an internal error.
pub fn check_surface_cpt(sc: &SurfaceCpt) -> Result<SurfaceCheck> {
    let g = &sc.graph;
    let mut violations = Vec::new();
    for (face, slots) in g.faces().iter().enumerate() {
        let small = slots.iter().filter(|&&a| sc.label(a) == Label::Small).count();
        if small != 3 {
            violations.push(SurfaceViolation::FaceSmallCount { face, small });
        }
    }
    for v in 0..g.n() {
        let big = sc.labels[v].iter().filter(|&&l| l == Label::Big).count();
        if big > 1 {
            violations.push(SurfaceViolation::VertexBigCount { vertex: v, big });
        }
    }
    let surface = genus_of(g)?;
    let (x, y) = sc.xy();
    let summary =
        SurfaceSummary { surface, e: g.edge_count(), x, y, f: g.face_count(), predicted_e: predicted_edges(surface, x, y) };
    let check = SurfaceCheck { summary, violations };
    if check.is_cpt() && !check.identity_holds() {
        return Err(Error::Internal(format!(
            "valid surface CPT with e = {} but the counting identity predicts {}",
            check.summary.e, check.summary.predicted_e
        )));
    }
    Ok(check)
}

/// Whether the edge count admits a pointed CPT labelling of the embedding.
pub fn pointed_feasible(g: &SurfaceGraph) -> Result<bool> {
    Ok(g.edge_count() as i64 == predicted_edges(genus_of(g)?, 0, g.n()))
}

/// Every CPT labelling of a surface embedding, by backtracking over the
/// choice of three SMALL angles per face. Fails when the graph has more
/// than `cap` angles.
pub fn search_surface_cpts(g: &SurfaceGraph, cap: usize) -> Result<Vec<SurfaceCpt>> {
    let angles = 2 * g.edge_count();
    if angles > cap {
        return Err(Error::CapExceeded { what: "angles", size: angles, cap });
    }
    let mut labels: Vec<Vec<Label>> = (0..g.n()).map(|v| vec![Label::Big; g.degree(v)]).collect();
    let mut big: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    search_faces(g, 0, &mut labels, &mut big, &mut out);
    Ok(out)
}

fn search_faces(g: &SurfaceGraph, f: usize, labels: &mut [Vec<Label>], big: &mut [usize], out: &mut Vec<SurfaceCpt>) {
    if f == g.face_count() {
        if big.iter().all(|&b| b <= 1) {
            out.push(SurfaceCpt { graph: g.clone(), labels: labels.to_vec() });
        }
        return;
    }
    let face = &g.faces()[f];
    let k = face.len();
    if k < 3 {
        return;
    }
    for mask in crate::cpt::combinations(k, 3) {
        let chosen: Vec<Slot> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| face[i]).collect();
        for a in &chosen {
            labels[a.vertex][a.slot] = Label::Small;
            big[a.vertex] -= 1;
        }
        // Vertices whose angles are all assigned must already be fine.
        let ok = face.iter().all(|a| big[a.vertex] <= 1 || !all_assigned(g, a.vertex, f));
        if ok {
            search_faces(g, f + 1, labels, big, out);
        }
        for a in &chosen {
            labels[a.vertex][a.slot] = Label::Big;
            big[a.vertex] += 1;
        }
    }
}

fn all_assigned(g: &SurfaceGraph, v: usize, upto: usize) -> bool {
    g.faces()[upto + 1..].iter().all(|face| face.iter().all(|a| a.vertex != v))
}

/// Named surface embeddings.
pub mod fixtures {
    use super::*;
    use crate::corpus;

    /// The cube graph on the sphere.
    pub fn cube_sphere() -> SurfaceGraph {
        let coords = [(-3.0, -3.0), (3.0, -3.0), (3.0, 3.0), (-3.0, 3.0), (-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
        SurfaceGraph::from_plane(&corpus::from_drawing(&coords, &edges)).expect("plane drawing")
    }

    /// The cube CPT with non-pointed poles `0` and `6` (antipodal) and the
    /// six equator vertices pointed.
    pub fn cube_sphere_cpt() -> SurfaceCpt {
        search_surface_cpts(&cube_sphere(), 64)
            .expect("within cap")
            .into_iter()
            .find(|l| !l.is_pointed(0) && !l.is_pointed(6))
            .expect("a labelling with poles 0 and 6 exists")
    }

    /// The octahedron graph as a square tiling of the torus: six
    /// quadrilateral faces, opposite pairs `(0,4)`, `(1,5)`, `(2,3)`.
    pub fn octahedron_torus() -> SurfaceGraph {
        SurfaceGraph::new(
            vec![vec![1, 5, 3, 2], vec![0, 4, 3, 2], vec![0, 5, 1, 4], vec![0, 4, 1, 5], vec![1, 2, 3, 5], vec![0, 2, 3, 4]],
            &[],
        )
        .expect("valid rotation system")
    }

    pub fn octahedron_sphere() -> SurfaceGraph {
        SurfaceGraph::from_plane(&corpus::octahedron()).expect("plane graph")
    }

    pub fn prism_sphere() -> SurfaceGraph {
        SurfaceGraph::from_plane(&corpus::prism()).expect("plane graph")
    }

    /// K6 on the projective plane: hub `5` inside a pentagon `0..5`, the
    /// pentagram chords passing through the crosscap.
    pub fn k6_projective() -> SurfaceGraph {
        let rotations = (0..5)
            .map(|i| vec![5, (i + 4) % 5, (i + 2) % 5, (i + 3) % 5, (i + 1) % 5])
            .chain(std::iter::once((0..5).collect()))
            .collect();
        let chords: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 2) % 5)).collect();
        SurfaceGraph::new(rotations, &chords).expect("valid signed rotation system")
    }

    /// The star with four leaves, whose single face is a pseudo-triangle of
    /// the sphere.
    pub fn star_sphere() -> SurfaceGraph {
        SurfaceGraph::new(vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]], &[]).expect("tree")
    }
}
