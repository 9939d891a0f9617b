//! Straight-line realizations of CPT labellings and their exact verification.
//!
//! The solver pins the outer face to a convex polygon and places the
//! interior by one linear solve of convex-combination constraints (see
//! [`solve_placement`]). Every candidate is snapped to an integer grid and
//! accepted only when the verifier certifies it with exact predicates;
//! rejected candidates are reweighted and solved again.

use std::fmt;

use num_traits::{Float, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cpt::{self, CptLabelling, Label};
use crate::error::{Error, Result};
use crate::geometry::{classify_sweep, convex_hull, direction_cmp, edges_conflict, signed_area2, AngleClass, Point, Scalar};
use crate::linalg;
use crate::plane_graph::{Dart, PlaneGraph};

/// A plane graph with one point per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedGraph<T> {
    pub graph: PlaneGraph,
    pub coords: Vec<Point<T>>,
}

impl EmbeddedGraph<i64> {
    /// The same drawing with `i128` coordinates, for overflow-free predicates.
    pub fn widen(&self) -> EmbeddedGraph<i128> {
        EmbeddedGraph { graph: self.graph.clone(), coords: self.coords.iter().map(|p| Point::new(p.x as i128, p.y as i128)).collect() }
    }
}

impl<T: Scalar + ToPrimitive> EmbeddedGraph<T> {
    pub fn to_f64(&self) -> EmbeddedGraph<f64> {
        EmbeddedGraph {
            graph: self.graph.clone(),
            coords: self.coords.iter().map(|p| Point::new(p.x.to_f64().unwrap(), p.y.to_f64().unwrap())).collect(),
        }
    }

    pub fn to_file(&self) -> CoordsFile {
        CoordsFile { coords: self.coords.iter().map(|p| [p.x.to_f64().unwrap(), p.y.to_f64().unwrap()]).collect() }
    }
}

/// Coordinates file: `{"coords": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordsFile {
    pub coords: Vec<[f64; 2]>,
}

impl CoordsFile {
    pub fn embed(&self, graph: PlaneGraph) -> Result<EmbeddedGraph<f64>> {
        if self.coords.len() != graph.n() {
            return Err(Error::Input(format!("{} coordinates for {} vertices", self.coords.len(), graph.n())));
        }
        if self.coords.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Input("non-finite coordinate".into()));
        }
        Ok(EmbeddedGraph { graph, coords: self.coords.iter().map(|c| Point::new(c[0], c[1])).collect() })
    }

    /// Integer coordinates, when every entry is integral.
    pub fn embed_grid(&self, graph: PlaneGraph) -> Result<Option<EmbeddedGraph<i64>>> {
        let f = self.embed(graph)?;
        if f.coords.iter().any(|p| p.x.fract() != 0.0 || p.y.fract() != 0.0 || p.x.abs() > 2f64.powi(52) || p.y.abs() > 2f64.powi(52)) {
            return Ok(None);
        }
        Ok(Some(EmbeddedGraph { graph: f.graph, coords: f.coords.iter().map(|p| Point::new(p.x as i64, p.y as i64)).collect() }))
    }
}

/// Default half-width of the band around π treated as degenerate.
pub const DEFAULT_ANGLE_EPS: f64 = 1e-9;
/// Default grid resolution: coordinates are snapped into `[-2^(bits-1), 2^(bits-1)]`.
pub const DEFAULT_SNAP_BITS: u32 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchOptions {
    pub seed: u64,
    pub attempts: usize,
    pub snap_bits: u32,
    pub angle_eps: f64,
}

impl Default for StretchOptions {
    fn default() -> Self {
        StretchOptions { seed: 0, attempts: 200, snap_bits: DEFAULT_SNAP_BITS, angle_eps: DEFAULT_ANGLE_EPS }
    }
}

/// One reason a drawing fails to realize a labelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum StretchIssue {
    CoincidentVertices { u: usize, v: usize },
    Crossing { first: (usize, usize), second: (usize, usize) },
    RotationMismatch { vertex: usize },
    DegenerateAngle { vertex: usize, face: usize, index: usize },
    AngleMismatch { vertex: usize, face: usize, index: usize, label: Label },
    OuterFaceNotHull,
    OuterFaceOrientation,
    CountIdentity { e: usize, x: usize, y: usize },
}

impl fmt::Display for StretchIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StretchIssue::CoincidentVertices { u, v } => write!(f, "vertices {u} and {v} coincide"),
            StretchIssue::Crossing { first, second } => {
                write!(f, "edges {}-{} and {}-{} cross", first.0, first.1, second.0, second.1)
            }
            StretchIssue::RotationMismatch { vertex } => {
                write!(f, "neighbour order at vertex {vertex} differs from the rotation system")
            }
            StretchIssue::DegenerateAngle { vertex, face, index } => {
                write!(f, "angle at vertex {vertex} (face {face}, index {index}) is within tolerance of pi")
            }
            StretchIssue::AngleMismatch { vertex, face, index, label } => {
                let (want, got) = match label {
                    Label::Small => ("small", "not convex"),
                    Label::Big => ("big", "not reflex"),
                };
                write!(f, "{want} angle at vertex {vertex} (face {face}, index {index}) is {got}")
            }
            StretchIssue::OuterFaceNotHull => write!(f, "outer face is not the convex hull"),
            StretchIssue::OuterFaceOrientation => write!(f, "outer face is not traced clockwise"),
            StretchIssue::CountIdentity { e, x, y } => write!(f, "e = {e} but 3x + 2y - 3 = {}", 3 * x + 2 * y - 3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchReport {
    pub valid: bool,
    pub issues: Vec<StretchIssue>,
    pub e: usize,
    /// Geometrically non-pointed and pointed vertex counts.
    pub x: usize,
    pub y: usize,
}

/// Measured angle of a drawing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleMeasure {
    pub vertex: usize,
    pub face: usize,
    pub index: usize,
    pub radians: f64,
    pub class: AngleClass,
    /// Within the tolerance band around π.
    pub degenerate: bool,
}

impl AngleMeasure {
    /// SMALL below π, BIG above, `None` when degenerate.
    pub fn label(&self) -> Option<Label> {
        match (self.degenerate, self.class) {
            (false, AngleClass::Convex) => Some(Label::Small),
            (false, AngleClass::Reflex) => Some(Label::Big),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricAngleReport {
    pub angles: Vec<AngleMeasure>,
    pub pointed: Vec<bool>,
    /// SMALL angles per face (face 0 included).
    pub face_small: Vec<usize>,
    pub degenerate: usize,
}

impl GeometricAngleReport {
    /// The labelling read off the drawing, if no angle is degenerate.
    pub fn labelling(&self, g: &PlaneGraph) -> Option<CptLabelling> {
        if self.degenerate > 0 {
            return None;
        }
        let mut by_pos = vec![Vec::new(); g.face_count()];
        for (f, row) in by_pos.iter_mut().enumerate() {
            *row = vec![Label::Small; g.face(f).len()];
        }
        for a in &self.angles {
            by_pos[a.face][a.index] = a.label()?;
        }
        Some(CptLabelling::from_fn(g.clone(), |a| by_pos[a.face][a.index]))
    }
}

/// Measures every angle of the drawing. Classes are exact for exact
/// scalars; the π band uses the `f64` measure.
pub fn classify_angles<T: Scalar + ToPrimitive>(emb: &EmbeddedGraph<T>, eps: f64) -> GeometricAngleReport {
    let g = &emb.graph;
    let p = &emb.coords;
    let mut angles = Vec::with_capacity(2 * g.edge_count());
    let mut pointed = vec![false; g.n()];
    let mut face_small = vec![0; g.face_count()];
    let mut degenerate = 0;
    for a in g.angles() {
        let v = a.vertex;
        let w = a.out_dart.head;
        let u = g.next_ccw(v, w);
        let from = p[w].sub(&p[v]);
        let to = p[u].sub(&p[v]);
        let full = g.degree(v) == 1;
        let class = classify_sweep(&from, &to, full);
        let ff = Point::new(from.x.to_f64().unwrap(), from.y.to_f64().unwrap());
        let tf = Point::new(to.x.to_f64().unwrap(), to.y.to_f64().unwrap());
        let radians = if full { std::f64::consts::TAU } else { ff.ccw_angle_to(&tf) };
        let is_degenerate = matches!(class, AngleClass::Straight | AngleClass::Zero)
            || (!full && (radians - std::f64::consts::PI).abs() < eps);
        if is_degenerate {
            degenerate += 1;
        }
        match class {
            AngleClass::Reflex | AngleClass::Straight => pointed[v] = true,
            AngleClass::Convex if !is_degenerate => face_small[a.face] += 1,
            _ => {}
        }
        angles.push(AngleMeasure { vertex: v, face: a.face, index: a.index, radians, class, degenerate: is_degenerate });
    }
    GeometricAngleReport { angles, pointed, face_small, degenerate }
}

/// Pairs of edges that cross or overlap, and coincident vertices.
fn crossing_issues<T: Scalar>(emb: &EmbeddedGraph<T>) -> Vec<StretchIssue> {
    let p = &emb.coords;
    let mut out = Vec::new();
    for u in 0..p.len() {
        for v in u + 1..p.len() {
            if p[u] == p[v] {
                out.push(StretchIssue::CoincidentVertices { u, v });
            }
        }
    }
    let edges = emb.graph.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if edges_conflict(&p[a], &p[b], &p[c], &p[d]) {
                out.push(StretchIssue::Crossing { first: (a, b), second: (c, d) });
            }
        }
    }
    out
}

/// `(e, x, y)` of a non-crossing drawing, pointedness read geometrically.
pub fn geometric_counts<T: Scalar + ToPrimitive>(emb: &EmbeddedGraph<T>) -> (usize, usize, usize) {
    let r = classify_angles(emb, 0.0);
    let y = r.pointed.iter().filter(|&&b| b).count();
    (emb.graph.edge_count(), emb.graph.n() - y, y)
}

/// Certifies that `emb` realizes `l` as a pseudo-triangulation.
pub fn verify_stretch<T: Scalar + ToPrimitive>(emb: &EmbeddedGraph<T>, l: &CptLabelling, eps: f64) -> StretchReport {
    let g = &emb.graph;
    let p = &emb.coords;
    let mut issues = crossing_issues(emb);
    for v in 0..g.n() {
        let rot = g.rotation(v);
        let mut sorted: Vec<usize> = rot.to_vec();
        sorted.sort_by(|&a, &b| direction_cmp(&p[a].sub(&p[v]), &p[b].sub(&p[v])));
        let start = rot.iter().position(|&w| w == sorted[0]).unwrap();
        let same = (0..rot.len()).all(|k| rot[(start + k) % rot.len()] == sorted[k]);
        let distinct = sorted.windows(2).all(|w| direction_cmp(&p[w[0]].sub(&p[v]), &p[w[1]].sub(&p[v])).is_ne());
        if !same || !distinct {
            issues.push(StretchIssue::RotationMismatch { vertex: v });
        }
    }
    let report = classify_angles(emb, eps);
    for (angle, a) in g.angles().iter().zip(&report.angles) {
        if a.degenerate {
            issues.push(StretchIssue::DegenerateAngle { vertex: a.vertex, face: a.face, index: a.index });
            continue;
        }
        let label = l.label(angle);
        if a.label() != Some(label) {
            issues.push(StretchIssue::AngleMismatch { vertex: a.vertex, face: a.face, index: a.index, label });
        }
    }
    let outer: Vec<usize> = g.face(0).iter().map(|d| d.tail).collect();
    let ring: Vec<Point<T>> = outer.iter().map(|&v| p[v].clone()).collect();
    if !signed_area2(&ring).is_negative() {
        issues.push(StretchIssue::OuterFaceOrientation);
    }
    let mut hull: Vec<usize> = convex_hull(p);
    hull.reverse();
    if !same_cycle(&hull, &outer) {
        issues.push(StretchIssue::OuterFaceNotHull);
    }
    let (e, x, y) = geometric_counts(emb);
    if e + 3 != 3 * x + 2 * y {
        issues.push(StretchIssue::CountIdentity { e, x, y });
    }
    StretchReport { valid: issues.is_empty(), issues, e, x, y }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let Some(s) = b.iter().position(|&x| x == a[0]) else { return false };
    (0..a.len()).all(|k| a[k] == b[(s + k) % b.len()])
}

/// Weights of one linear placement. Every entry must be positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementParams<T> {
    /// Symmetric edge weights for non-pointed vertices, indexed like
    /// `PlaneGraph::edges`.
    pub edge_weights: Vec<T>,
    /// Per vertex: weights on the two neighbours bounding its BIG angle and
    /// on the anchor point of that angle's face.
    pub big_weights: Vec<[T; 3]>,
    /// Per face: weights on its three corners (SMALL angles), in trace order.
    pub corner_weights: Vec<[T; 3]>,
}

impl<T: Float> PlacementParams<T> {
    pub fn uniform(g: &PlaneGraph) -> Self {
        let one = T::one();
        PlacementParams {
            edge_weights: vec![one; g.edge_count()],
            big_weights: vec![[one; 3]; g.n()],
            corner_weights: vec![[one; 3]; g.face_count()],
        }
    }
}

/// Solves the placement system.
///
/// The outer face is pinned to a regular polygon, traced clockwise. Each
/// bounded face gets an anchor point, a convex combination of its three
/// corners. A pointed interior vertex is a convex combination of the two
/// neighbours bounding its BIG angle and the anchor of that angle's face;
/// a non-pointed interior vertex is a convex combination of its neighbours.
/// `None` when the outer face is not a simple cycle, a bounded face does not
/// have three corners, or the system is singular.
pub fn solve_placement<T: Float>(l: &CptLabelling, params: &PlacementParams<T>) -> Option<Vec<Point<T>>> {
    let g = l.graph();
    let n = g.n();
    let outer: Vec<usize> = g.face(0).iter().map(|d| d.tail).collect();
    let m = outer.len();
    if m < 3 {
        return None;
    }
    let mut pinned: Vec<Option<Point<T>>> = vec![None; n];
    for (k, &v) in outer.iter().enumerate() {
        if pinned[v].is_some() {
            return None;
        }
        let t = -T::from(std::f64::consts::TAU).unwrap() * T::from(k).unwrap() / T::from(m).unwrap();
        pinned[v] = Some(Point::new(t.cos(), t.sin()));
    }
    let mut index = vec![usize::MAX; n];
    let mut k = 0;
    for v in 0..n {
        if pinned[v].is_none() {
            index[v] = k;
            k += 1;
        }
    }
    let anchor_base = k;
    k += g.face_count() - 1;
    let mut a = vec![vec![T::zero(); k]; k];
    let mut bx = vec![T::zero(); k];
    let mut by = vec![T::zero(); k];
    enum Term {
        Vertex(usize),
        Anchor(usize),
    }
    // Row `row` states: unknown(row) - sum coef * term = 0.
    let mut combine = |row: usize, terms: &[(Term, T)]| {
        a[row][row] = T::one();
        let total = terms.iter().fold(T::zero(), |s, t| s + t.1);
        for (term, w) in terms {
            let c = *w / total;
            match *term {
                Term::Vertex(v) => match pinned[v] {
                    Some(q) => {
                        bx[row] = bx[row] + c * q.x;
                        by[row] = by[row] + c * q.y;
                    }
                    None => a[row][index[v]] = a[row][index[v]] - c,
                },
                Term::Anchor(f) => a[row][anchor_base + f - 1] = a[row][anchor_base + f - 1] - c,
            }
        }
    };
    for f in 1..g.face_count() {
        let corners: Vec<usize> =
            g.face(f).iter().filter(|d| l.label_of(**d) == Label::Small).map(|d| d.tail).collect();
        if corners.len() != 3 {
            return None;
        }
        let w = params.corner_weights[f];
        combine(anchor_base + f - 1, &[(Term::Vertex(corners[0]), w[0]), (Term::Vertex(corners[1]), w[1]), (Term::Vertex(corners[2]), w[2])]);
    }
    let edge_index = |u: usize, w: usize| g.edges().binary_search(&(u.min(w), u.max(w))).unwrap();
    for v in 0..n {
        if pinned[v].is_some() {
            continue;
        }
        match l.big_angle(v) {
            Some(big) if big.face != 0 => {
                let w = params.big_weights[v];
                combine(
                    index[v],
                    &[(Term::Vertex(big.in_dart.tail), w[0]), (Term::Vertex(big.out_dart.head), w[1]), (Term::Anchor(big.face), w[2])],
                );
            }
            Some(_) => return None,
            None => {
                let terms: Vec<(Term, T)> =
                    g.rotation(v).iter().map(|&w| (Term::Vertex(w), params.edge_weights[edge_index(v, w)])).collect();
                combine(index[v], &terms);
            }
        }
    }
    let (x, y) = if k == 0 { (Vec::new(), Vec::new()) } else { (linalg::solve(a.clone(), bx)?, linalg::solve(a, by)?) };
    Some((0..n).map(|v| pinned[v].unwrap_or_else(|| Point::new(x[index[v]], y[index[v]]))).collect())
}

/// Rounds a drawing onto the integer grid `[-2^(bits-1), 2^(bits-1)]`.
pub fn snap<T: Float>(coords: &[Point<T>], bits: u32) -> Vec<Point<i64>> {
    let max = coords.iter().fold(T::zero(), |m, p| m.max(p.x.abs()).max(p.y.abs()));
    let scale = T::from(2f64.powi(bits as i32 - 1)).unwrap() / if max > T::zero() { max } else { T::one() };
    coords
        .iter()
        .map(|p| Point::new((p.x * scale).round().to_i64().unwrap_or(0), (p.y * scale).round().to_i64().unwrap_or(0)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct StretchOutcome {
    pub embedding: EmbeddedGraph<i64>,
    pub attempts: usize,
    pub report: StretchReport,
}

/// Stretches a generalized Laman CPT. Inputs failing the property are
/// rejected before the solver runs.
pub fn stretch(l: &CptLabelling, opts: &StretchOptions) -> Result<StretchOutcome> {
    if let Err(v) = cpt::validate_cpt(l) {
        return Err(Error::Precondition(format!("not a CPT: {}", v[0])));
    }
    let gl = if l.graph().n() <= cpt::DEFAULT_ENUMERATION_CAP {
        cpt::generalized_laman(l)?
    } else {
        cpt::GlVerdict { holds: cpt::generalized_laman_pebble(l), witness: None }
    };
    if !gl.holds {
        return Err(Error::Precondition(match gl.witness {
            Some(w) => format!("CPT is not generalized Laman (violating subset {w:?}); it cannot be stretched"),
            None => "CPT is not generalized Laman; it cannot be stretched".into(),
        }));
    }
    stretch_unchecked(l, opts)
}

/// Runs the solver without checking the generalized Laman property. The
/// first attempt uses uniform weights; later attempts reweight the
/// coefficients around vertices named in the previous verifier report.
pub fn stretch_unchecked(l: &CptLabelling, opts: &StretchOptions) -> Result<StretchOutcome> {
    let g = l.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut params = PlacementParams::<f64>::uniform(g);
    let mut last = String::from("no attempt made");
    for attempt in 0..opts.attempts {
        let Some(coords) = solve_placement(l, &params) else {
            last = "placement system has no unique solution".into();
            reweight(&mut params, g, &[], &mut rng);
            continue;
        };
        let emb = EmbeddedGraph { graph: g.clone(), coords: snap(&coords, opts.snap_bits) };
        let report = verify_stretch(&emb.widen(), l, opts.angle_eps);
        if report.valid {
            return Ok(StretchOutcome { embedding: emb, attempts: attempt + 1, report });
        }
        last = report.issues[0].to_string();
        let bad: Vec<usize> = report.issues.iter().flat_map(issue_vertices).collect();
        reweight(&mut params, g, &bad, &mut rng);
    }
    Err(Error::StretchFailed { attempts: opts.attempts, reason: last })
}

fn issue_vertices(i: &StretchIssue) -> Vec<usize> {
    match *i {
        StretchIssue::CoincidentVertices { u, v } => vec![u, v],
        StretchIssue::Crossing { first, second } => vec![first.0, first.1, second.0, second.1],
        StretchIssue::RotationMismatch { vertex }
        | StretchIssue::DegenerateAngle { vertex, .. }
        | StretchIssue::AngleMismatch { vertex, .. } => vec![vertex],
        _ => Vec::new(),
    }
}

/// Multiplies the weights touching `bad` (everything, when `bad` is empty)
/// by random factors in `[1/4, 4]`.
fn reweight(p: &mut PlacementParams<f64>, g: &PlaneGraph, bad: &[usize], rng: &mut ChaCha8Rng) {
    let hit = |v: usize| bad.is_empty() || bad.contains(&v);
    let mut factor = || 4f64.powf(rng.gen_range(-1.0..1.0));
    for (i, &(u, w)) in g.edges().iter().enumerate() {
        if hit(u) || hit(w) {
            p.edge_weights[i] *= factor();
        }
    }
    for v in 0..g.n() {
        if hit(v) {
            p.big_weights[v].iter_mut().for_each(|x| *x *= factor());
        }
    }
    for f in 1..g.face_count() {
        if g.face(f).iter().any(|d| hit(d.tail)) {
            p.corner_weights[f].iter_mut().for_each(|x| *x *= factor());
        }
    }
}

/// Labelled angles of a drawing's graph keyed by out-dart, from the
/// geometry of a straight-line drawing.
pub fn labels_from_drawing<T: Scalar + ToPrimitive>(emb: &EmbeddedGraph<T>, eps: f64) -> Option<CptLabelling> {
    classify_angles(emb, eps).labelling(&emb.graph)
}

/// The out-dart of the angle at `v` in face `f`, if unique.
pub fn angle_dart(g: &PlaneGraph, v: usize, f: usize) -> Option<Dart> {
    let mut it = g.angles_at(v).into_iter().filter(|a| a.face == f);
    let a = it.next()?;
    it.next().is_none().then_some(a.out_dart)
}
