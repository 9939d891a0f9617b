//! Combinatorial plane embeddings given by rotation systems.
//!
//! Rotations are counterclockwise. Faces are traced with
//! `next(u→v) = v→w` where `w` immediately precedes `u` in the rotation at
//! `v`, so every face lies to the left of its darts. The outer face is the
//! face containing the designated outer dart and always gets id 0.
//!
//! An angle is identified by its *out-dart*: the angle at `v` whose face
//! contains `v→w` sweeps counterclockwise from the edge `vw` to the next
//! edge in the rotation at `v`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Directed half of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub tail: usize,
    pub head: usize,
}

impl Dart {
    pub fn new(tail: usize, head: usize) -> Self {
        Dart { tail, head }
    }

    pub fn rev(self) -> Self {
        Dart { tail: self.head, head: self.tail }
    }
}

/// A vertex-face incidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    pub vertex: usize,
    pub in_dart: Dart,
    pub out_dart: Dart,
    pub face: usize,
    /// Position of `out_dart` in the face trace.
    pub index: usize,
}

/// A connected simple graph with a planar rotation system and an outer face.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotations: Vec<Vec<usize>>,
    outer: Dart,
    faces: Vec<Vec<Dart>>,
    dart_face: HashMap<Dart, (usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotations == other.rotations && self.faces[0] == other.faces[0]
    }
}

impl Eq for PlaneGraph {}

/// On-disk graph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub rotations: Vec<Vec<usize>>,
    pub outer: [usize; 2],
}

/// Traces the faces of a rotation system. Rotations must be symmetric;
/// otherwise an error is returned. The first face is the one through
/// `start`, the rest follow in order of first untraced dart.
pub fn trace_faces(rotations: &[Vec<usize>], start: Option<Dart>) -> Result<Vec<Vec<Dart>>> {
    let mut seen: HashSet<Dart> = HashSet::new();
    let mut faces = Vec::new();
    let mut starts: Vec<Dart> = Vec::new();
    if let Some(d) = start {
        starts.push(d);
    }
    for (v, rot) in rotations.iter().enumerate() {
        for &w in rot {
            starts.push(Dart::new(v, w));
        }
    }
    let total: usize = rotations.iter().map(Vec::len).sum();
    for s in starts {
        if seen.contains(&s) {
            continue;
        }
        let mut face = Vec::new();
        let mut d = s;
        loop {
            if !seen.insert(d) {
                return Err(Error::embedding(format!(
                    "face tracing from {}→{} revisits dart {}→{}",
                    s.tail, s.head, d.tail, d.head
                )));
            }
            face.push(d);
            if face.len() > total {
                return Err(Error::embedding("face tracing does not close"));
            }
            d = next_dart(rotations, d)?;
            if d == s {
                break;
            }
        }
        faces.push(face);
    }
    Ok(faces)
}

fn next_dart(rotations: &[Vec<usize>], d: Dart) -> Result<Dart> {
    let rot = rotations
        .get(d.head)
        .ok_or_else(|| Error::embedding(format!("vertex {} out of range", d.head)))?;
    let i = rot.iter().position(|&x| x == d.tail).ok_or_else(|| {
        Error::embedding(format!("edge {}-{} missing from rotation of {}", d.tail, d.head, d.head))
    })?;
    let w = rot[(i + rot.len() - 1) % rot.len()];
    Ok(Dart::new(d.head, w))
}

impl PlaneGraph {
    /// Builds and validates a plane graph. All violated invariants are
    /// reported together.
    pub fn new(rotations: Vec<Vec<usize>>, outer: (usize, usize)) -> Result<Self> {
        let n = rotations.len();
        let mut problems = Vec::new();
        if n < 2 {
            problems.push(format!("need at least 2 vertices, got {n}"));
        }
        let mut edge_set = HashSet::new();
        for (v, rot) in rotations.iter().enumerate() {
            let mut local = HashSet::new();
            for &w in rot {
                if w >= n {
                    problems.push(format!("rotation of {v} names vertex {w} >= n = {n}"));
                    continue;
                }
                if w == v {
                    problems.push(format!("loop at vertex {v}"));
                    continue;
                }
                if !local.insert(w) {
                    problems.push(format!("parallel edge {v}-{w} (repeated in rotation of {v})"));
                }
                edge_set.insert((v.min(w), v.max(w)));
            }
            if rot.is_empty() && n >= 2 {
                problems.push(format!("vertex {v} is isolated"));
            }
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &w in rot {
                if w < n && w != v && !rotations[w].contains(&v) {
                    problems.push(format!("edge {v}-{w} appears in rotation of {v} but not of {w}"));
                }
            }
        }
        let outer = Dart::new(outer.0, outer.1);
        if outer.tail >= n || !rotations[outer.tail].contains(&outer.head) {
            problems.push(format!("outer dart {}→{} is not a dart of the graph", outer.tail, outer.head));
        }
        if !problems.is_empty() {
            return Err(Error::Embedding(problems));
        }
        if !is_connected(&rotations) {
            return Err(Error::embedding("graph is not connected"));
        }
        let faces = trace_faces(&rotations, Some(outer))?;
        let e = edge_set.len();
        let euler = n as i64 - e as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::embedding(format!(
                "rotation system is not planar: V - E + F = {n} - {e} + {} = {euler} != 2",
                faces.len()
            )));
        }
        let mut dart_face = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            for (i, &d) in face.iter().enumerate() {
                dart_face.insert(d, (f, i));
            }
        }
        let mut edges: Vec<_> = edge_set.into_iter().collect();
        edges.sort_unstable();
        Ok(PlaneGraph { rotations, outer, faces, dart_face, edges })
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        if file.rotations.len() != file.n {
            return Err(Error::Embedding(vec![format!(
                "n = {} but {} rotations given",
                file.n,
                file.rotations.len()
            )]));
        }
        Self::new(file.rotations.clone(), (file.outer[0], file.outer[1]))
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.n(),
            rotations: self.rotations.clone(),
            outer: [self.outer.tail, self.outer.head],
        }
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotations[u].contains(&v)
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    /// Faces as dart cycles. Face 0 is the outer face.
    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Number of bounded faces.
    pub fn bounded_face_count(&self) -> usize {
        self.faces.len() - 1
    }

    /// Vertices of a face in trace order (a vertex may repeat on a degenerate face).
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|d| d.tail).collect()
    }

    /// Face and trace position of a dart.
    pub fn dart_position(&self, d: Dart) -> Option<(usize, usize)> {
        self.dart_face.get(&d).copied()
    }

    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.dart_face[&d].0
    }

    fn rot_index(&self, v: usize, w: usize) -> usize {
        self.rotations[v]
            .iter()
            .position(|&x| x == w)
            .unwrap_or_else(|| panic!("{w} is not a neighbor of {v}"))
    }

    /// Neighbor following `w` counterclockwise around `v`.
    pub fn next_ccw(&self, v: usize, w: usize) -> usize {
        let rot = &self.rotations[v];
        rot[(self.rot_index(v, w) + 1) % rot.len()]
    }

    /// Neighbor preceding `w` counterclockwise around `v`.
    pub fn prev_ccw(&self, v: usize, w: usize) -> usize {
        let rot = &self.rotations[v];
        rot[(self.rot_index(v, w) + rot.len() - 1) % rot.len()]
    }

    pub fn next_dart(&self, d: Dart) -> Dart {
        Dart::new(d.head, self.prev_ccw(d.head, d.tail))
    }

    /// The angle whose out-dart is `d`.
    pub fn angle_at(&self, d: Dart) -> Angle {
        let (face, index) = self.dart_face[&d];
        let len = self.faces[face].len();
        Angle {
            vertex: d.tail,
            in_dart: self.faces[face][(index + len - 1) % len],
            out_dart: d,
            face,
            index,
        }
    }

    /// All `2e` angles, ordered by face then trace position.
    pub fn angles(&self) -> Vec<Angle> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        for (f, face) in self.faces.iter().enumerate() {
            let len = face.len();
            for (i, &d) in face.iter().enumerate() {
                out.push(Angle {
                    vertex: d.tail,
                    in_dart: face[(i + len - 1) % len],
                    out_dart: d,
                    face: f,
                    index: i,
                });
            }
        }
        out
    }

    /// Angles at `v` in counterclockwise order, starting with the one whose
    /// out-dart goes to `rotation(v)[0]`.
    pub fn angles_at(&self, v: usize) -> Vec<Angle> {
        self.rotations[v].iter().map(|&w| self.angle_at(Dart::new(v, w))).collect()
    }

    /// True iff no face trace uses an edge twice.
    pub fn faces_nondegenerate(&self) -> bool {
        self.faces.iter().all(|face| {
            let mut seen = HashSet::new();
            face.iter().all(|d| seen.insert((d.tail.min(d.head), d.tail.max(d.head))))
        })
    }

    /// Inserts edge `ab`. `b` goes into the rotation at `a` right after
    /// position `pos_a` (so it splits the angle whose out-dart is
    /// `a→rotation(a)[pos_a]`), and symmetrically at `b`. Both split angles
    /// must lie on a common face.
    pub fn insert_edge(&self, a: usize, b: usize, pos_a: usize, pos_b: usize) -> Result<PlaneGraph> {
        if a == b || a >= self.n() || b >= self.n() {
            return Err(Error::embedding(format!("cannot insert edge {a}-{b}")));
        }
        if self.has_edge(a, b) {
            return Err(Error::embedding(format!("edge {a}-{b} already present")));
        }
        if pos_a >= self.degree(a) || pos_b >= self.degree(b) {
            return Err(Error::embedding(format!("slot out of range inserting {a}-{b}")));
        }
        let fa = self.face_of_dart(Dart::new(a, self.rotations[a][pos_a]));
        let fb = self.face_of_dart(Dart::new(b, self.rotations[b][pos_b]));
        if fa != fb {
            return Err(Error::embedding(format!(
                "slots for {a}-{b} lie on different faces ({fa} and {fb})"
            )));
        }
        let mut rot = self.rotations.clone();
        rot[a].insert(pos_a + 1, b);
        rot[b].insert(pos_b + 1, a);
        PlaneGraph::new(rot, (self.outer.tail, self.outer.head))
    }

    /// Removes edge `uv`; the graph must stay connected.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<PlaneGraph> {
        if !self.has_edge(u, v) {
            return Err(Error::embedding(format!("no edge {u}-{v}")));
        }
        let mut rot = self.rotations.clone();
        rot[u].retain(|&x| x != v);
        rot[v].retain(|&x| x != u);
        let outer = if (self.outer.tail, self.outer.head) == (u, v) || (self.outer.tail, self.outer.head) == (v, u) {
            // The merged face contains both sides of the old edge.
            let w = self.prev_ccw(self.outer.head, self.outer.tail);
            if w == self.outer.tail {
                return Err(Error::embedding(format!("removing {u}-{v} disconnects the graph")));
            }
            Dart::new(self.outer.head, w)
        } else {
            self.outer
        };
        PlaneGraph::new(rot, (outer.tail, outer.head))
    }

    /// Removes `v`; vertices above `v` are renumbered down by one. The
    /// outer face of the result is the face containing the old outer face.
    pub fn remove_vertex(&self, v: usize) -> Result<PlaneGraph> {
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let outer = self
            .faces[0]
            .iter()
            .find(|d| d.tail != v && d.head != v)
            .copied()
            .or_else(|| {
                let w = self.rotations[v][0];
                if self.degree(w) < 2 {
                    return None;
                }
                Some(Dart::new(w, self.prev_ccw(w, v)))
            })
            .ok_or_else(|| Error::embedding(format!("removing {v} leaves an isolated vertex")))?;
        let rot: Vec<Vec<usize>> = self
            .rotations
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, r)| r.iter().filter(|&&x| x != v).map(|&x| relabel(x)).collect())
            .collect();
        PlaneGraph::new(rot, (relabel(outer.tail), relabel(outer.head)))
    }

    /// Adds a new vertex (id `n`) inside face `f`, joined to the tails of
    /// the face darts at the given trace positions (strictly increasing).
    pub fn insert_vertex_in_face(&self, f: usize, positions: &[usize]) -> Result<PlaneGraph> {
        let face = &self.faces[f];
        if positions.is_empty() || positions.windows(2).any(|w| w[0] >= w[1]) || *positions.last().unwrap() >= face.len() {
            return Err(Error::embedding("face positions must be strictly increasing and in range"));
        }
        let v = self.n();
        let mut rot = self.rotations.clone();
        let mut vrot = Vec::new();
        for &p in positions {
            let d = face[p];
            if vrot.contains(&d.tail) {
                return Err(Error::embedding(format!("vertex {} chosen twice", d.tail)));
            }
            vrot.push(d.tail);
        }
        for &p in positions.iter().rev() {
            let d = face[p];
            let i = rot[d.tail].iter().position(|&x| x == d.head).unwrap();
            rot[d.tail].insert(i + 1, v);
        }
        rot.push(vrot);
        PlaneGraph::new(rot, (self.outer.tail, self.outer.head))
    }

    /// Faces of this graph reachable from the outer face without crossing
    /// an edge of `keep` (edges given as `(u, v)` with `u < v`).
    pub fn outer_region(&self, keep: &HashSet<(usize, usize)>) -> Vec<bool> {
        let mut inside = vec![false; self.face_count()];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for d in &self.faces[f] {
                let key = (d.tail.min(d.head), d.tail.max(d.head));
                if keep.contains(&key) {
                    continue;
                }
                let g = self.face_of_dart(d.rev());
                if !inside[g] {
                    inside[g] = true;
                    queue.push_back(g);
                }
            }
        }
        inside
    }

    /// Induced sub-embeddings on `subset`, one per connected component.
    pub fn induced_subcomplex(&self, subset: &[usize]) -> Vec<SubComplex> {
        let in_s: HashSet<usize> = subset.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut sorted: Vec<usize> = in_s.iter().copied().collect();
        sorted.sort_unstable();
        for &s in &sorted {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.rotations[u] {
                    if in_s.contains(&w) && seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(SubComplex::from_component(self, &comp));
        }
        out
    }
}

fn is_connected(rotations: &[Vec<usize>]) -> bool {
    if rotations.is_empty() {
        return true;
    }
    let mut seen = vec![false; rotations.len()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &rotations[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == rotations.len()
}

/// A connected subgraph of a plane graph, closed under everything lying
/// inside its outer boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubComplex {
    /// Vertices of the component before filling in interior vertices.
    pub core: Vec<usize>,
    /// All vertices, including those enclosed by the boundary.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Outer boundary walk of the subgraph in its own rotation system.
    pub boundary: Vec<Dart>,
    /// Faces of the parent lying in the subgraph's outer region.
    pub outer_faces: Vec<bool>,
}

impl SubComplex {
    fn from_component(g: &PlaneGraph, comp: &[usize]) -> Self {
        let comp_set: HashSet<usize> = comp.iter().copied().collect();
        let core_edges: HashSet<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|(u, v)| comp_set.contains(u) && comp_set.contains(v))
            .copied()
            .collect();
        let outer_faces = g.outer_region(&core_edges);
        // A vertex is enclosed when none of its angles reaches the outer region.
        let mut vset: HashSet<usize> = comp_set.clone();
        for v in 0..g.n() {
            if !comp_set.contains(&v)
                && g.rotation(v).iter().all(|&w| !outer_faces[g.face_of_dart(Dart::new(v, w))])
            {
                vset.insert(v);
            }
        }
        let mut vertices: Vec<usize> = vset.iter().copied().collect();
        vertices.sort_unstable();
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|(u, v)| vset.contains(u) && vset.contains(v))
            .copied()
            .collect();
        let boundary = boundary_walk(g, &vset, &outer_faces, comp);
        SubComplex { core: comp.to_vec(), vertices, edges, boundary, outer_faces }
    }

    /// Length of the boundary walk.
    pub fn b(&self) -> usize {
        self.boundary.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices appearing on the boundary walk (a single vertex for a
    /// one-vertex subcomplex).
    pub fn boundary_vertices(&self) -> Vec<usize> {
        if self.boundary.is_empty() {
            return self.core.clone();
        }
        let mut vs: Vec<usize> = self.boundary.iter().map(|d| d.tail).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

fn boundary_walk(g: &PlaneGraph, vset: &HashSet<usize>, outer_faces: &[bool], comp: &[usize]) -> Vec<Dart> {
    let sub_rot = |v: usize| -> Vec<usize> { g.rotation(v).iter().copied().filter(|w| vset.contains(w)).collect() };
    // Find a parent angle at a component vertex lying in the outer region,
    // then the sub-angle containing it.
    for &v in comp {
        let rot_v = sub_rot(v);
        if rot_v.is_empty() {
            return Vec::new();
        }
        let full = g.rotation(v);
        for (i, &w) in full.iter().enumerate() {
            if !outer_faces[g.face_of_dart(Dart::new(v, w))] {
                continue;
            }
            // Scan clockwise from w (inclusive) for the first subgraph neighbor.
            let mut j = i;
            let start = loop {
                if vset.contains(&full[j]) {
                    break full[j];
                }
                j = (j + full.len() - 1) % full.len();
            };
            let mut walk = Vec::new();
            let mut d = Dart::new(v, start);
            loop {
                walk.push(d);
                let r = sub_rot(d.head);
                let k = r.iter().position(|&x| x == d.tail).unwrap();
                d = Dart::new(d.head, r[(k + r.len() - 1) % r.len()]);
                if d == walk[0] {
                    break;
                }
            }
            return walk;
        }
    }
    Vec::new()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k3() -> PlaneGraph {
        PlaneGraph::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]], (0, 2)).unwrap()
    }

    fn k4() -> PlaneGraph {
        // 3 in the middle of triangle 0,1,2 (ccw).
        PlaneGraph::new(vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]], (0, 2)).unwrap()
    }

    #[test]
    fn triangle_has_two_faces_of_length_three() {
        let g = k3();
        assert_eq!(g.face_count(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 3));
        assert_eq!(g.face(0)[0], Dart::new(0, 2));
    }

    #[test]
    fn k4_has_four_triangles() {
        let g = k4();
        assert_eq!(g.face_count(), 4);
        assert!(g.faces().iter().all(|f| f.len() == 3));
        assert_eq!(g.face_vertices(0).len(), 3);
        assert!(!g.face_vertices(0).contains(&3));
    }

    #[test]
    fn angle_counts() {
        assert_eq!(k3().angles().len(), 6);
        let star = PlaneGraph::new(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]], (0, 1)).unwrap();
        let angles = star.angles();
        assert_eq!(angles.len(), 6);
        assert_eq!(angles.iter().filter(|a| a.vertex == 0).count(), 3);
        assert_eq!(star.face_count(), 1);
    }

    #[test]
    fn angle_links_in_and_out_darts() {
        let g = k4();
        for a in g.angles() {
            assert_eq!(a.in_dart.head, a.vertex);
            assert_eq!(a.out_dart.tail, a.vertex);
            assert_eq!(g.next_dart(a.in_dart), a.out_dart);
            // out-dart head immediately precedes in-dart tail in the rotation.
            assert_eq!(g.prev_ccw(a.vertex, a.in_dart.tail), a.out_dart.head);
        }
    }

    #[test]
    fn rejects_bad_inputs_with_line_items() {
        let err = PlaneGraph::new(vec![vec![1, 1], vec![0, 3], vec![]], (0, 2)).unwrap_err();
        let Error::Embedding(items) = err else { panic!() };
        assert!(items.len() >= 3, "{items:?}");
        // Non-planar rotation of K4 (one rotation reversed).
        let err = PlaneGraph::new(vec![vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]], (0, 1));
        assert!(matches!(err, Err(Error::Embedding(_))));
        // Disconnected.
        assert!(PlaneGraph::new(vec![vec![1], vec![0], vec![3], vec![2]], (0, 1)).is_err());
    }

    #[test]
    fn degeneracy() {
        assert!(k3().faces_nondegenerate());
        let p3 = PlaneGraph::new(vec![vec![1], vec![0, 2], vec![1]], (0, 1)).unwrap();
        assert!(!p3.faces_nondegenerate());
    }

    #[test]
    fn remove_and_insert() {
        let g = k3().remove_vertex(2).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.face_count(), 1);

        let c4 = PlaneGraph::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]], (0, 3)).unwrap();
        // Inner face is the one not containing dart 0→3.
        let inner = (0..2).find(|&f| f != 0).unwrap();
        let verts = c4.face_vertices(inner);
        let p0 = verts.iter().position(|&v| v == 0).unwrap();
        let d0 = c4.face(inner)[p0];
        let p2 = verts.iter().position(|&v| v == 2).unwrap();
        let d2 = c4.face(inner)[p2];
        let pos0 = c4.rotation(0).iter().position(|&x| x == d0.head).unwrap();
        let pos2 = c4.rotation(2).iter().position(|&x| x == d2.head).unwrap();
        let h = c4.insert_edge(0, 2, pos0, pos2).unwrap();
        assert_eq!(h.face_count(), 3);
        assert!(h.faces()[1..].iter().all(|f| f.len() == 3));

        // Slots on different faces are rejected.
        let bad = (0..2).find(|&p| c4.face_of_dart(Dart::new(2, c4.rotation(2)[p])) == 0).unwrap();
        assert!(c4.insert_edge(0, 2, pos0, bad).is_err());
    }

    #[test]
    fn wheel_minus_hub_plus_diagonal() {
        // W4: rim 0..3 ccw, hub 4.
        let w4 = PlaneGraph::new(
            vec![vec![1, 4, 3], vec![2, 4, 0], vec![3, 4, 1], vec![0, 4, 2], vec![0, 1, 2, 3]],
            (0, 3),
        )
        .unwrap();
        assert_eq!(w4.face_count(), 5);
        let c4 = w4.remove_vertex(4).unwrap();
        assert_eq!(c4.face_count(), 2);
        // Replace path 0-4-2 by 0-2 in the hub's former slots.
        let mut rot = w4.rotations().to_vec();
        rot[0] = vec![1, 2, 3];
        rot[2] = vec![3, 0, 1];
        rot[1] = vec![2, 0];
        rot[3] = vec![0, 2];
        rot.pop();
        let h = PlaneGraph::new(rot, (0, 3)).unwrap();
        assert_eq!(h.face_count(), 3);
        assert_eq!(h.edge_count(), 5);
    }

    #[test]
    fn subcomplex_of_single_edge_and_whole() {
        let g = k4();
        let all = g.induced_subcomplex(&[0, 1, 2, 3]);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].b(), g.face(0).len());
        let e = g.induced_subcomplex(&[0, 1]);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].b(), 2);
        // Outer triangle encloses 3.
        let tri = g.induced_subcomplex(&[0, 1, 2]);
        assert_eq!(tri[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(tri[0].edge_count(), 6);
        assert_eq!(tri[0].b(), 3);
    }
}
