//! Inductive construction of generalized Laman CPT labellings for
//! generically rigid plane graphs.
//!
//! A vertex `v` of minimum degree in a spanning Laman subgraph is removed
//! (replaced by an edge between two of its neighbours when `G \ v` is
//! flexible), the smaller graph is labelled recursively and the labelling is
//! extended back over the angles around `v`. Extensions are first built by
//! the explicit pseudo-triangle rules, then by exhaustive search over the
//! new angles, and every candidate is verified before it is accepted.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cpt::{self, CptLabelling, Label, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::plane_graph::{Dart, PlaneGraph};
use crate::rigidity::{is_generically_rigid, restores_rigidity, Graph};

/// Knobs of the labelling engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineOptions {
    /// Largest vertex count checked by subset enumeration; larger graphs
    /// use the variable-capacity pebble game.
    pub gl_cap: usize,
    /// Re-check the three-corner property after every step.
    pub audit_corners: bool,
    /// Most search solutions examined per extension.
    pub search_cap: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { gl_cap: DEFAULT_ENUMERATION_CAP, audit_corners: false, search_cap: 100_000 }
    }
}

/// Where an accepted extension came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    /// The base case `n = 3`.
    Base,
    /// The pseudo-triangle rules as stated.
    Rule,
    /// The rules followed by moving BIG angles from `v` to an endpoint of
    /// the replaced edge.
    RuleWithFlips,
    /// Exhaustive search over the new angles.
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StepKind {
    Base,
    Degree2,
    Degree3 { a: usize, b: usize },
}

/// One inductive step, with vertex ids of the graph at that step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub n: usize,
    pub vertex: usize,
    pub degree_in_laman: usize,
    pub degree: usize,
    pub step: StepKind,
    pub source: CandidateSource,
    pub candidates_tried: usize,
    pub v_pointed: bool,
    /// Neighbours of `v` whose pointedness is the same before and after.
    pub status_keepers: usize,
    /// No vertex went from non-pointed to pointed.
    pub monotone: bool,
    /// Edges tried and abandoned before the accepted one.
    pub edges_abandoned: usize,
}

#[derive(Debug, Clone)]
pub struct EngineOutput {
    pub labelling: CptLabelling,
    /// Steps in the order they completed (base case first).
    pub steps: Vec<StepRecord>,
}

/// A successful extension of a labelling over the angles around `v`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub labelling: CptLabelling,
    pub source: CandidateSource,
    pub candidates_tried: usize,
    /// Labels given to the angles at `v` and at the split angles of its
    /// neighbours, keyed by out-dart.
    pub new_labels: Vec<(Dart, Label)>,
    pub v_pointed: bool,
    pub status_keepers: usize,
    pub monotone: bool,
}

/// A bounded face of a CPT seen as a pseudo-triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoTriangleFrame {
    pub face: usize,
    /// Trace positions of the three SMALL angles, increasing.
    pub corner_positions: [usize; 3],
    pub corners: [usize; 3],
    /// Vertices of the chain from each corner to the next, endpoints included.
    pub pseudo_edges: [Vec<usize>; 3],
}

pub fn pseudo_triangle_frame(l: &CptLabelling, face: usize) -> Option<PseudoTriangleFrame> {
    let g = l.graph();
    if face == 0 || face >= g.face_count() {
        return None;
    }
    let darts = g.face(face);
    let pos: Vec<usize> =
        (0..darts.len()).filter(|&i| l.label_of(darts[i]) == Label::Small).collect();
    let corner_positions: [usize; 3] = pos.try_into().ok()?;
    let len = darts.len();
    let chain = |k: usize| {
        let (s, t) = (corner_positions[k], corner_positions[(k + 1) % 3]);
        let steps = (t + len - s) % len;
        (0..=steps).map(|j| darts[(s + j) % len].tail).collect::<Vec<_>>()
    };
    Some(PseudoTriangleFrame {
        face,
        corner_positions,
        corners: corner_positions.map(|p| darts[p].tail),
        pseudo_edges: [chain(0), chain(1), chain(2)],
    })
}

/// Labels a generically rigid plane graph as a generalized Laman CPT.
pub fn label_cpt(g: &PlaneGraph) -> Result<CptLabelling> {
    Ok(label_cpt_traced(g, &EngineOptions::default())?.labelling)
}

pub fn label_cpt_traced(g: &PlaneGraph, opts: &EngineOptions) -> Result<EngineOutput> {
    if g.n() < 3 {
        return Err(Error::Precondition(format!("labelling needs at least 3 vertices, got {}", g.n())));
    }
    let verdict = is_generically_rigid(&Graph::from(g));
    if !verdict.rigid {
        return Err(Error::Precondition(format!(
            "graph is not generically rigid (deficiency {})",
            verdict.deficiency
        )));
    }
    let mut steps = Vec::new();
    let labelling = label_rec(g, opts, &mut steps)?;
    Ok(EngineOutput { labelling, steps })
}

fn triangle_labelling(g: &PlaneGraph) -> CptLabelling {
    CptLabelling::from_fn(g.clone(), |a| if a.face == 0 { Label::Big } else { Label::Small })
}

fn label_rec(g: &PlaneGraph, opts: &EngineOptions, steps: &mut Vec<StepRecord>) -> Result<CptLabelling> {
    if g.n() == 3 {
        if g.edge_count() != 3 {
            return Err(Error::Internal("three-vertex rigid graph is not a triangle".into()));
        }
        steps.push(StepRecord {
            n: 3,
            vertex: 0,
            degree_in_laman: 2,
            degree: 2,
            step: StepKind::Base,
            source: CandidateSource::Base,
            candidates_tried: 1,
            v_pointed: true,
            status_keepers: 0,
            monotone: true,
            edges_abandoned: 0,
        });
        return Ok(triangle_labelling(g));
    }
    let graph = Graph::from(g);
    let verdict = is_generically_rigid(&graph);
    let (v, dl) = pick_reduction_vertex(g, &verdict.laman_edges);
    if dl == 2 || is_generically_rigid(&graph.without_vertex(v)).rigid {
        let sub_graph = g.remove_vertex(v)?;
        let sub = label_rec(&sub_graph, opts, steps)?;
        let ext = extend(g, v, None, &sub, opts)?
            .ok_or_else(|| Error::Internal(format!("no extension over vertex {v} (n = {})", g.n())))?;
        steps.push(record(g, v, dl, StepKind::Degree2, &ext, 0));
        return finish(ext, opts);
    }
    for (abandoned, (a, b)) in degree3_edge_candidates(g, v).into_iter().enumerate() {
        let sub_graph = remove_and_join(g, v, a, b)?;
        let mut sub_steps = Vec::new();
        let sub = label_rec(&sub_graph, opts, &mut sub_steps)?;
        if let Some(ext) = extend(g, v, Some((a, b)), &sub, opts)? {
            steps.extend(sub_steps);
            steps.push(record(g, v, dl, StepKind::Degree3 { a, b }, &ext, abandoned));
            return finish(ext, opts);
        }
    }
    Err(Error::Internal(format!(
        "no edge between neighbours of {v} yields an extension; rotations: {:?}; outer: {:?}",
        g.rotations(),
        g.outer_dart()
    )))
}

fn record(g: &PlaneGraph, v: usize, dl: usize, step: StepKind, ext: &Extension, abandoned: usize) -> StepRecord {
    StepRecord {
        n: g.n(),
        vertex: v,
        degree_in_laman: dl,
        degree: g.degree(v),
        step,
        source: ext.source,
        candidates_tried: ext.candidates_tried,
        v_pointed: ext.v_pointed,
        status_keepers: ext.status_keepers,
        monotone: ext.monotone,
        edges_abandoned: abandoned,
    }
}

fn finish(ext: Extension, opts: &EngineOptions) -> Result<CptLabelling> {
    if opts.audit_corners && ext.labelling.graph().n() <= opts.gl_cap && !cpt::three_corner_property(&ext.labelling)? {
        return Err(Error::Internal("extension lost the three-corner property".into()));
    }
    Ok(ext.labelling)
}

/// Vertex of minimum degree in the Laman subgraph, lowest id first.
pub fn pick_reduction_vertex(g: &PlaneGraph, laman_edges: &[(usize, usize)]) -> (usize, usize) {
    let mut deg = vec![0usize; g.n()];
    for &(u, w) in laman_edges {
        deg[u] += 1;
        deg[w] += 1;
    }
    let v = (0..g.n()).min_by_key(|&v| (deg[v], v)).unwrap();
    (v, deg[v])
}

/// Neighbours of `v` in rotation order, starting at the lowest id.
fn neighbours_from_lowest(g: &PlaneGraph, v: usize) -> Vec<usize> {
    let rot = g.rotation(v);
    let start = (0..rot.len()).min_by_key(|&i| rot[i]).unwrap();
    (0..rot.len()).map(|k| rot[(start + k) % rot.len()]).collect()
}

/// Edges `ab` between non-adjacent neighbours of `v` restoring rigidity of
/// `G \ v`: consecutive pairs first, then pairs two apart.
pub fn degree3_edge_candidates(g: &PlaneGraph, v: usize) -> Vec<(usize, usize)> {
    let nb = neighbours_from_lowest(g, v);
    let d = nb.len();
    let minus = Graph::from(g).without_vertex(v);
    let shift = |x: usize| if x > v { x - 1 } else { x };
    let mut out: Vec<(usize, usize)> = Vec::new();
    for gap in [1, 2] {
        for i in 0..d {
            let (a, b) = (nb[i], nb[(i + gap) % d]);
            if a == b || g.has_edge(a, b) || out.contains(&(a, b)) || out.contains(&(b, a)) {
                continue;
            }
            if restores_rigidity(&minus, shift(a), shift(b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// First edge tried for a degree-3 reduction at `v`.
pub fn choose_edge_degree3(g: &PlaneGraph, v: usize) -> Option<(usize, usize)> {
    degree3_edge_candidates(g, v).into_iter().next()
}

/// `G \ v ∪ ab`, with `ab` in the rotation slots formerly held by `av` and `bv`.
pub fn remove_and_join(g: &PlaneGraph, v: usize, a: usize, b: usize) -> Result<PlaneGraph> {
    let minus = g.remove_vertex(v)?;
    let shift = |x: usize| if x > v { x - 1 } else { x };
    let slot = |x: usize| {
        let rot = g.rotation(x);
        let i = rot.iter().position(|&w| w == v).unwrap();
        let pred = rot[(i + rot.len() - 1) % rot.len()];
        minus.rotation(shift(x)).iter().position(|&w| w == shift(pred)).unwrap()
    };
    minus.insert_edge(shift(a), shift(b), slot(a), slot(b))
}

/// Extends a generalized Laman CPT of `G \ v` to `G`.
pub fn extend_degree2(g: &PlaneGraph, v: usize, sub: &CptLabelling) -> Result<Extension> {
    extend(g, v, None, sub, &EngineOptions::default())?
        .ok_or_else(|| Error::Internal(format!("no generalized Laman extension over vertex {v}")))
}

/// Extends a generalized Laman CPT of `G \ v ∪ ab` to `G`.
pub fn extend_degree3(g: &PlaneGraph, v: usize, edge: (usize, usize), sub: &CptLabelling) -> Result<Extension> {
    extend(g, v, Some(edge), sub, &EngineOptions::default())?
        .ok_or_else(|| Error::Internal(format!("no generalized Laman extension over vertex {v} with edge {edge:?}")))
}

fn extend(
    g: &PlaneGraph,
    v: usize,
    edge: Option<(usize, usize)>,
    sub: &CptLabelling,
    opts: &EngineOptions,
) -> Result<Option<Extension>> {
    let ctx = Ctx::new(g, v, edge, sub);
    let mut tried = 0;
    let rules = ctx.rule_candidates();
    for (labels, source) in rules {
        tried += 1;
        if let Some(ext) = ctx.accept(&labels, source, tried, opts)? {
            return Ok(Some(ext));
        }
    }
    for labels in ctx.search(opts.search_cap) {
        tried += 1;
        if let Some(ext) = ctx.accept(&labels, CandidateSource::Search, tried, opts)? {
            return Ok(Some(ext));
        }
    }
    Ok(None)
}

/// A neighbour's angle (or pair of angles) inside a face of the smaller graph.
#[derive(Debug, Clone, Copy)]
struct Occurrence {
    /// Face and trace position in the smaller graph.
    face: usize,
    pos: usize,
    /// New angles of `G` on the side before and after the position.
    backward: Dart,
    forward: Dart,
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    v: usize,
    edge: Option<(usize, usize)>,
    sub: &'a CptLabelling,
    /// Out-darts of the angles of `G` whose labels are decided here.
    fresh: BTreeSet<Dart>,
    copied: HashMap<Dart, Label>,
    occurrences: Vec<Occurrence>,
}

type Candidate = HashMap<Dart, Label>;

impl<'a> Ctx<'a> {
    fn new(g: &'a PlaneGraph, v: usize, edge: Option<(usize, usize)>, sub: &'a CptLabelling) -> Self {
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut fresh = BTreeSet::new();
        let mut occurrences = Vec::new();
        let place = |d: Dart| sub.graph().dart_position(Dart::new(shift(d.tail), shift(d.head))).expect("dart of the smaller graph");
        for &w in g.rotation(v) {
            fresh.insert(Dart::new(v, w));
            let prev = g.prev_ccw(w, v);
            let to_v = Dart::new(w, v);
            let to_prev = Dart::new(w, prev);
            fresh.insert(to_v);
            fresh.insert(to_prev);
            match edge {
                Some((a, b)) if w == a || w == b => {
                    let other = if w == a { b } else { a };
                    let (f, p) = place(Dart::new(w, other));
                    occurrences.push(Occurrence { face: f, pos: p, backward: to_v, forward: to_v });
                    let (f, p) = place(to_prev);
                    occurrences.push(Occurrence { face: f, pos: p, backward: to_prev, forward: to_prev });
                }
                _ => {
                    let (f, p) = place(to_prev);
                    occurrences.push(Occurrence { face: f, pos: p, backward: to_v, forward: to_prev });
                }
            }
        }
        let copied = g
            .angles()
            .iter()
            .filter(|a| !fresh.contains(&a.out_dart))
            .map(|a| (a.out_dart, sub.label_of(Dart::new(shift(a.out_dart.tail), shift(a.out_dart.head)))))
            .collect();
        Ctx { g, v, edge, sub, fresh, copied, occurrences }
    }

    fn shift(&self, x: usize) -> usize {
        if x > self.v {
            x - 1
        } else {
            x
        }
    }

    fn unshift(&self, y: usize) -> usize {
        if y >= self.v {
            y + 1
        } else {
            y
        }
    }

    fn sub_pointed(&self, w: usize) -> bool {
        self.sub.is_pointed(self.shift(w))
    }

    /// Angles of `v` inside the region covered by face `t` of the smaller graph.
    fn v_angles_in(&self, occ: &[Occurrence]) -> Vec<Dart> {
        let faces: BTreeSet<usize> = occ
            .iter()
            .flat_map(|o| [self.g.face_of_dart(o.backward), self.g.face_of_dart(o.forward)])
            .collect();
        self.g
            .rotation(self.v)
            .iter()
            .map(|&w| Dart::new(self.v, w))
            .filter(|&d| faces.contains(&self.g.face_of_dart(d)))
            .collect()
    }

    /// Candidates from the pseudo-triangle rules, then with BIG angles of
    /// `v` moved onto `a` or `b`.
    fn rule_candidates(&self) -> Vec<(Candidate, CandidateSource)> {
        let mut by_face: Vec<(usize, Vec<Occurrence>)> = Vec::new();
        for o in &self.occurrences {
            match by_face.iter_mut().find(|(f, _)| *f == o.face) {
                Some((_, list)) => list.push(*o),
                None => by_face.push((o.face, vec![*o])),
            }
        }
        let mut combos: Vec<Candidate> = vec![Candidate::new()];
        for (t, occ) in &by_face {
            let variants = self.rule_variants(*t, occ);
            let mut next = Vec::new();
            for c in &combos {
                for var in &variants {
                    let mut m = c.clone();
                    m.extend(var.iter().map(|(&d, &l)| (d, l)));
                    next.push(m);
                }
            }
            combos = next;
        }
        let mut out: Vec<(Candidate, CandidateSource)> = Vec::new();
        for c in combos {
            if c.len() != self.fresh.len() {
                continue;
            }
            let flips = self.flip_variants(&c);
            out.push((c, CandidateSource::Rule));
            out.extend(flips.into_iter().map(|f| (f, CandidateSource::RuleWithFlips)));
        }
        out
    }

    fn rule_variants(&self, t: usize, occ: &[Occurrence]) -> Vec<Candidate> {
        let sg = self.sub.graph();
        let v_angles = self.v_angles_in(occ);
        let mut blank = Candidate::new();
        for o in occ {
            blank.insert(o.backward, Label::Small);
            blank.insert(o.forward, Label::Small);
        }
        for &d in &v_angles {
            blank.insert(d, Label::Small);
        }
        if t == 0 {
            for (d, l) in blank.iter_mut() {
                if self.g.face_of_dart(*d) == 0 {
                    *l = Label::Big;
                }
            }
            return vec![blank];
        }
        let Some(frame) = pseudo_triangle_frame(self.sub, t) else { return Vec::new() };
        let len = sg.face(t).len();
        let dist = |p: usize, q: usize| (q + len - p) % len;
        let c = frame.corner_positions;
        let on_arc = |k: usize, p: usize| dist(c[k], p) <= dist(c[k], c[(k + 1) % 3]);
        let arcs: Vec<usize> = match self.edge {
            Some((a, b)) => {
                let (sa, sb) = (self.shift(a), self.shift(b));
                let q = sg.face(t).iter().position(|d| (d.tail, d.head) == (sa, sb) || (d.tail, d.head) == (sb, sa));
                match q {
                    Some(q) => (0..3).filter(|&k| dist(c[k], q) < dist(c[k], c[(k + 1) % 3])).collect(),
                    None => Vec::new(),
                }
            }
            None => (0..3).filter(|&k| occ.iter().filter(|o| on_arc(k, o.pos)).count() >= 2).collect(),
        };
        if arcs.is_empty() {
            return self.spread_variants(&blank, occ, &v_angles, &c);
        }
        let mut out = Vec::new();
        for k in arcs {
            let mut m = blank.clone();
            let mut on: Vec<&Occurrence> = occ.iter().filter(|o| on_arc(k, o.pos)).collect();
            on.sort_by_key(|o| dist(c[k], o.pos));
            let (first, last) = (on[0], on[on.len() - 1]);
            let (ck, ck1, ck2) = (c[k], c[(k + 1) % 3], c[(k + 2) % 3]);
            if first.pos != ck {
                m.insert(first.backward, Label::Big);
            }
            if last.pos != ck1 {
                m.insert(last.forward, Label::Big);
            }
            let off = occ
                .iter()
                .filter(|o| !on_arc(k, o.pos))
                .min_by_key(|o| dist(o.pos, ck2).min(dist(ck2, o.pos)));
            match off {
                Some(o) => {
                    if o.pos != ck2 {
                        let toward = if dist(ck1, o.pos) <= dist(ck1, ck2) { o.forward } else { o.backward };
                        m.insert(toward, Label::Big);
                    }
                }
                None => {
                    let d = sg.face(t)[ck2];
                    let gd = Dart::new(self.unshift(d.tail), self.unshift(d.head));
                    let f = self.g.face_of_dart(gd);
                    if let Some(&vd) = v_angles.iter().find(|&&vd| self.g.face_of_dart(vd) == f) {
                        m.insert(vd, Label::Big);
                    }
                }
            }
            out.push(m);
        }
        out
    }

    /// Neighbours on distinct pseudo-edges: every neighbour inside a
    /// pseudo-edge keeps its BIG angle on the same side.
    fn spread_variants(&self, blank: &Candidate, occ: &[Occurrence], v_angles: &[Dart], corners: &[usize; 3]) -> Vec<Candidate> {
        let mut out = Vec::new();
        for forward in [true, false] {
            let mut m = blank.clone();
            for o in occ {
                if !corners.contains(&o.pos) {
                    m.insert(if forward { o.forward } else { o.backward }, Label::Big);
                }
            }
            if occ.len() >= 3 {
                out.push(m);
            } else {
                for &vd in v_angles {
                    let mut mm = m.clone();
                    mm.insert(vd, Label::Big);
                    out.push(mm);
                }
            }
        }
        out
    }

    /// Moves a BIG angle of `v` onto `a` or `b` in the same face, where that
    /// endpoint was pointed before and has no BIG angle now.
    fn flip_variants(&self, c: &Candidate) -> Vec<Candidate> {
        let Some((a, b)) = self.edge else { return Vec::new() };
        let bigs: Vec<Dart> =
            self.g.rotation(self.v).iter().map(|&w| Dart::new(self.v, w)).filter(|d| c[d] == Label::Big).collect();
        let mut moves: Vec<(Dart, Dart)> = Vec::new();
        for &vd in &bigs {
            let f = self.g.face_of_dart(vd);
            for x in [a, b] {
                if !self.sub_pointed(x) {
                    continue;
                }
                let has_big = self.g.rotation(x).iter().any(|&w| {
                    let d = Dart::new(x, w);
                    c.get(&d).or_else(|| self.copied.get(&d)) == Some(&Label::Big)
                });
                if has_big {
                    continue;
                }
                if let Some(&xd) = c.keys().filter(|d| d.tail == x && self.g.face_of_dart(**d) == f).min() {
                    if c[&xd] == Label::Small {
                        moves.push((vd, xd));
                    }
                }
            }
        }
        let apply = |base: &Candidate, mv: &[(Dart, Dart)]| {
            let mut m = base.clone();
            for &(vd, xd) in mv {
                m.insert(vd, Label::Small);
                m.insert(xd, Label::Big);
            }
            m
        };
        let mut out: Vec<Candidate> = moves.iter().map(|&mv| apply(c, &[mv])).collect();
        for i in 0..moves.len() {
            for j in i + 1..moves.len() {
                if moves[i].0 != moves[j].0 && moves[i].1.tail != moves[j].1.tail {
                    out.push(apply(c, &[moves[i], moves[j]]));
                }
            }
        }
        out
    }

    /// Every assignment of the new angles meeting the CPT conditions and
    /// keeping non-pointed vertices non-pointed, in a fixed order.
    fn search(&self, cap: usize) -> Vec<Candidate> {
        let g = self.g;
        let vars: Vec<Dart> = {
            let mut vs: Vec<Dart> = self.fresh.iter().copied().collect();
            vs.sort_by_key(|&d| (g.face_of_dart(d), d));
            vs
        };
        let mut face_small = vec![0usize; g.face_count()];
        let mut face_left = vec![0usize; g.face_count()];
        let mut big = vec![0usize; g.n()];
        for (d, l) in &self.copied {
            match l {
                Label::Small => face_small[g.face_of_dart(*d)] += 1,
                Label::Big => big[d.tail] += 1,
            }
        }
        for d in &vars {
            face_left[g.face_of_dart(*d)] += 1;
        }
        let may_big: Vec<bool> = vars
            .iter()
            .map(|d| {
                d.tail == self.v || (self.sub_pointed(d.tail) && big[d.tail] == 0)
            })
            .collect();
        let mut state = SearchState { face_small, face_left, big, assign: Vec::new(), out: Vec::new(), cap };
        search_rec(g, &vars, &may_big, 0, &mut state);
        state.out
    }

    fn accept(&self, new: &Candidate, source: CandidateSource, tried: usize, opts: &EngineOptions) -> Result<Option<Extension>> {
        let mut all = self.copied.clone();
        all.extend(new.iter().map(|(&d, &l)| (d, l)));
        let l = CptLabelling::from_darts(self.g.clone(), &all)?;
        if cpt::validate_cpt(&l).is_err() {
            return Ok(None);
        }
        let monotone = (0..self.g.n()).filter(|&u| u != self.v).all(|u| self.sub_pointed(u) || !l.is_pointed(u));
        if !monotone {
            return Ok(None);
        }
        let gl = if self.g.n() <= opts.gl_cap {
            cpt::generalized_laman_capped(&l, opts.gl_cap)?.holds
        } else {
            cpt::generalized_laman_pebble(&l)
        };
        if !gl {
            return Ok(None);
        }
        let neighbours: BTreeSet<usize> = self.g.rotation(self.v).iter().copied().collect();
        let status_keepers = neighbours.iter().filter(|&&w| self.sub_pointed(w) == l.is_pointed(w)).count();
        let mut new_labels: Vec<(Dart, Label)> = new.iter().map(|(&d, &l)| (d, l)).collect();
        new_labels.sort_by_key(|&(d, _)| d);
        Ok(Some(Extension {
            v_pointed: l.is_pointed(self.v),
            labelling: l,
            source,
            candidates_tried: tried,
            new_labels,
            status_keepers,
            monotone,
        }))
    }
}

struct SearchState {
    face_small: Vec<usize>,
    face_left: Vec<usize>,
    big: Vec<usize>,
    assign: Vec<Label>,
    out: Vec<Candidate>,
    cap: usize,
}

fn search_rec(g: &PlaneGraph, vars: &[Dart], may_big: &[bool], i: usize, st: &mut SearchState) {
    if st.out.len() >= st.cap {
        return;
    }
    if i == vars.len() {
        st.out.push(vars.iter().copied().zip(st.assign.iter().copied()).collect());
        return;
    }
    let d = vars[i];
    let f = g.face_of_dart(d);
    st.face_left[f] -= 1;
    for label in [Label::Small, Label::Big] {
        let ok = match label {
            Label::Small => f != 0 && st.face_small[f] < 3,
            Label::Big => may_big[i] && st.big[d.tail] == 0 && (f == 0 || st.face_small[f] + st.face_left[f] >= 3),
        };
        if !ok {
            continue;
        }
        let small_after = st.face_small[f] + usize::from(label == Label::Small);
        if f != 0 && st.face_left[f] == 0 && small_after != 3 {
            continue;
        }
        match label {
            Label::Small => st.face_small[f] += 1,
            Label::Big => st.big[d.tail] += 1,
        }
        st.assign.push(label);
        search_rec(g, vars, may_big, i + 1, st);
        st.assign.pop();
        match label {
            Label::Small => st.face_small[f] -= 1,
            Label::Big => st.big[d.tail] -= 1,
        }
    }
    st.face_left[f] += 1;
}
