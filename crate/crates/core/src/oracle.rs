//! Brute-force oracles used to cross-check the fast paths, and seeded
//! corpus generation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cpt::{CptLabelling, Label, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::linalg;
use crate::plane_graph::{Dart, PlaneGraph};
use crate::rigidity::Graph;
use crate::stretch::{verify_stretch, EmbeddedGraph};

/// Relative pivot threshold of the rank oracle.
pub const RANK_PIVOT_TOLERANCE: f64 = 1e-8;

/// Default number of coordinate draws of the rank oracle.
pub const RANK_TRIALS: usize = 3;

/// Default cap on the number of angles for exhaustive labelling search.
pub const DEFAULT_SEARCH_CAP: usize = 26;

/// Rigidity matrix of `g` at the given coordinates.
pub fn rigidity_matrix(g: &Graph, coords: &[(f64, f64)]) -> Vec<Vec<f64>> {
    g.edges
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![0.0; 2 * g.n];
            let dx = coords[u].0 - coords[v].0;
            let dy = coords[u].1 - coords[v].1;
            row[2 * u] = dx;
            row[2 * u + 1] = dy;
            row[2 * v] = -dx;
            row[2 * v + 1] = -dy;
            row
        })
        .collect()
}

/// Generic rigidity by rank of the rigidity matrix at random coordinates:
/// rigid iff some draw reaches rank `2n - 3`.
pub fn rank_rigidity_oracle(g: &Graph, trials: usize, seed: u64) -> bool {
    let target = (2 * g.n).saturating_sub(3);
    if g.edges.len() < target {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).any(|_| {
        let coords: Vec<(f64, f64)> = (0..g.n).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        linalg::rank(rigidity_matrix(g, &coords), RANK_PIVOT_TOLERANCE) == target
    })
}

/// Ground truth for the generalized Laman property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlEnumeration {
    pub holds: bool,
    /// Every violating subset, in increasing bitmask order.
    pub violating: Vec<Vec<usize>>,
}

/// Checks every vertex subset with at least two elements against
/// `3x + 2y - 3`, counting induced edges straight from the edge list.
pub fn enumerate_gl_subsets(l: &CptLabelling) -> Result<GlEnumeration> {
    enumerate_gl_subsets_capped(l, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_gl_subsets_capped(l: &CptLabelling, cap: usize) -> Result<GlEnumeration> {
    let g = l.graph();
    let n = g.n();
    if n > cap || n > 30 {
        return Err(Error::CapExceeded { what: "vertices", size: n, cap: cap.min(30) });
    }
    let pointed = l.pointed();
    let mut violating = Vec::new();
    for s in 1u32..(1u32 << n) {
        if s.count_ones() < 2 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let spanned = g.edges().iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count();
        let bound: usize = members.iter().map(|&v| if pointed[v] { 2 } else { 3 }).sum::<usize>() - 3;
        if spanned > bound {
            violating.push(members);
        }
    }
    Ok(GlEnumeration { holds: violating.is_empty(), violating })
}

/// Every CPT labelling of `g`, found by exhaustive search over the choice
/// of three SMALL angles in each bounded face.
pub fn search_all_cpt_labellings(g: &PlaneGraph, cap: usize) -> Result<Vec<CptLabelling>> {
    let angles = 2 * g.edge_count();
    if angles > cap {
        return Err(Error::CapExceeded { what: "angles", size: angles, cap });
    }
    let mut big = vec![0u8; g.n()];
    for d in g.face(0) {
        big[d.tail] += 1;
    }
    if big.iter().any(|&b| b > 1) {
        return Ok(Vec::new());
    }
    let mut chosen: Vec<Vec<Label>> = vec![Vec::new(); g.face_count()];
    chosen[0] = vec![Label::Big; g.face(0).len()];
    let mut out = Vec::new();
    search_faces(g, 1, &mut big, &mut chosen, &mut out);
    Ok(out)
}

fn search_faces(g: &PlaneGraph, f: usize, big: &mut Vec<u8>, chosen: &mut Vec<Vec<Label>>, out: &mut Vec<CptLabelling>) {
    if f == g.face_count() {
        let labels = chosen.clone();
        out.push(CptLabelling::from_fn(g.clone(), |a| labels[a.face][a.index]));
        return;
    }
    let face = g.face(f);
    let k = face.len();
    if k < 3 {
        return;
    }
    for mask in crate::cpt::combinations(k, 3) {
        let row: Vec<Label> = (0..k).map(|i| if mask >> i & 1 == 1 { Label::Small } else { Label::Big }).collect();
        let bigs: Vec<usize> = (0..k).filter(|&i| row[i] == Label::Big).map(|i| face[i].tail).collect();
        for &v in &bigs {
            big[v] += 1;
        }
        if bigs.iter().all(|&v| big[v] <= 1) {
            chosen[f] = row;
            search_faces(g, f + 1, big, chosen, out);
        }
        for &v in &bigs {
            big[v] -= 1;
        }
    }
}

/// A generated plane graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: PlaneGraph,
    /// Whether the graph has exactly `2n - 3` edges.
    pub minimal: bool,
}

/// Plane Laman graphs built from a triangle by random Henneberg moves:
/// a degree-2 vertex placed in a face, or an edge `pq` replaced by a
/// degree-3 vertex joined to `p`, `q` and a third vertex of the merged face.
/// Vertex counts are drawn uniformly from `3..=n_max`.
pub fn henneberg_corpus(n_max: usize, count: usize, seed: u64) -> Vec<CorpusEntry> {
    assert!(n_max >= 3, "corpus graphs need at least three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(3..=n_max);
            let graph = henneberg_graph(n, &mut rng);
            CorpusEntry { name: format!("henneberg-{seed}-{i}"), graph, minimal: true }
        })
        .collect()
}

pub fn henneberg_graph(n: usize, rng: &mut impl Rng) -> PlaneGraph {
    let mut g = crate::corpus::k3();
    while g.n() < n {
        let next = if rng.gen_bool(0.5) { vertex_addition(&g, rng) } else { edge_split(&g, rng) };
        if let Some(h) = next {
            g = h;
        }
    }
    g
}

fn vertex_addition(g: &PlaneGraph, rng: &mut impl Rng) -> Option<PlaneGraph> {
    let f = rng.gen_range(0..g.face_count());
    let face = g.face(f);
    let i = rng.gen_range(0..face.len());
    let j = rng.gen_range(0..face.len());
    if face[i].tail == face[j].tail {
        return None;
    }
    g.insert_vertex_in_face(f, &[i.min(j), i.max(j)]).ok()
}

fn edge_split(g: &PlaneGraph, rng: &mut impl Rng) -> Option<PlaneGraph> {
    let &(p, q) = g.edges().choose(rng)?;
    let after = g.next_dart(Dart::new(p, q));
    let h = g.remove_edge(p, q).ok()?;
    let f = h.face_of_dart(after);
    let face = h.face(f);
    let ip = face.iter().position(|d| d.tail == p)?;
    let iq = face.iter().position(|d| d.tail == q)?;
    let others: Vec<usize> = (0..face.len()).filter(|&i| face[i].tail != p && face[i].tail != q).collect();
    let &ir = others.choose(rng)?;
    let mut pos = [ip, iq, ir];
    pos.sort_unstable();
    h.insert_vertex_in_face(f, &pos).ok()
}

/// Adds `extra` random edges, each drawn inside a face between two
/// non-adjacent vertices. Returns `None` when no such edge exists.
pub fn augment(g: &PlaneGraph, extra: usize, rng: &mut impl Rng) -> Option<PlaneGraph> {
    let mut g = g.clone();
    for _ in 0..extra {
        let mut options = Vec::new();
        for (f, face) in g.faces().iter().enumerate() {
            for (i, di) in face.iter().enumerate() {
                for (j, dj) in face.iter().enumerate().skip(i + 1) {
                    if di.tail != dj.tail && !g.has_edge(di.tail, dj.tail) {
                        options.push((f, i, j));
                    }
                }
            }
        }
        let &(f, i, j) = options.choose(rng)?;
        let (di, dj) = (g.face(f)[i], g.face(f)[j]);
        let pos = |d: Dart| g.rotation(d.tail).iter().position(|&w| w == d.head).unwrap();
        g = g.insert_edge(di.tail, dj.tail, pos(di), pos(dj)).ok()?;
    }
    Some(g)
}

/// Augmented Henneberg graphs: rigid plane graphs with redundant edges.
pub fn augmented_corpus(n_max: usize, count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(4..=n_max.max(4));
        let base = henneberg_graph(n, &mut rng);
        let extra = rng.gen_range(1..=2);
        if let Some(graph) = augment(&base, extra, &mut rng) {
            out.push(CorpusEntry { name: format!("augmented-{seed}-{}", out.len()), graph, minimal: false });
        }
    }
    out
}

/// A random connected abstract graph on `n` vertices: a random spanning
/// tree plus every other pair with probability `density`.
pub fn random_connected_graph(n: usize, density: f64, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.push((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Rejection sampling for a stretching of `l`: the outer face goes on a
/// circle at sorted random angles (clockwise), interior vertices uniformly in
/// the disk, all on a grid of radius `2^20`. Returns the first certified
/// drawing among `samples` draws.
pub fn random_stretch_search(l: &CptLabelling, samples: usize, seed: u64) -> Option<EmbeddedGraph<i64>> {
    let g = l.graph();
    let outer: Vec<usize> = g.face(0).iter().map(|d| d.tail).collect();
    let r = f64::from(1 << 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = vec![Point::new(0i64, 0i64); g.n()];
    for _ in 0..samples {
        let mut t: Vec<f64> = (0..outer.len()).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        t.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (&v, &a) in outer.iter().zip(&t) {
            coords[v] = Point::new((r * a.cos()).round() as i64, (r * a.sin()).round() as i64);
        }
        for (v, p) in coords.iter_mut().enumerate() {
            if outer.contains(&v) {
                continue;
            }
            let (rad, a) = (r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
            *p = Point::new((rad * a.cos()).round() as i64, (rad * a.sin()).round() as i64);
        }
        let emb = EmbeddedGraph { graph: g.clone(), coords: coords.clone() };
        if verify_stretch(&emb, l, 0.0).valid {
            return Some(emb);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::cpt::{generalized_laman, validate_cpt};
    use crate::rigidity::is_generically_rigid;

    #[test]
    fn rank_oracle_small_cases() {
        assert!(rank_rigidity_oracle(&Graph::from(&corpus::k3()), RANK_TRIALS, 1));
        assert!(!rank_rigidity_oracle(&Graph::from(&corpus::cycle(4)), RANK_TRIALS, 1));
        assert!(rank_rigidity_oracle(&Graph::from(&corpus::octahedron()), RANK_TRIALS, 1));
        assert!(!rank_rigidity_oracle(&Graph::new(2, vec![]), RANK_TRIALS, 1));
        // Rank 4 < 5 for the 4-cycle.
        let m = rigidity_matrix(&Graph::from(&corpus::cycle(4)), &[(0.0, 0.0), (1.3, 0.1), (1.1, 0.9), (0.2, 1.4)]);
        assert_eq!(linalg::rank(m, RANK_PIVOT_TOLERANCE), 4);
    }

    #[test]
    fn labelling_search_truth_table() {
        let k3 = search_all_cpt_labellings(&corpus::k3(), DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(k3.len(), 1);
        assert!(search_all_cpt_labellings(&corpus::path(3), DEFAULT_SEARCH_CAP).unwrap().is_empty());
        let m = search_all_cpt_labellings(&corpus::mercedes(), DEFAULT_SEARCH_CAP).unwrap();
        assert!(m.iter().any(|l| l.xy().0 == 0 && generalized_laman(l).unwrap().holds));
        for l in &m {
            assert!(validate_cpt(l).is_ok());
        }
        assert!(matches!(search_all_cpt_labellings(&corpus::wheel(8), DEFAULT_SEARCH_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn enumeration_truth_table() {
        let all = search_all_cpt_labellings(&corpus::mercedes(), DEFAULT_SEARCH_CAP).unwrap();
        for l in &all {
            let e = enumerate_gl_subsets(l).unwrap();
            let v = generalized_laman(l).unwrap();
            assert_eq!(e.holds, v.holds);
            if let Some(w) = v.witness {
                assert!(e.violating.contains(&w));
                assert!(e.violating.iter().all(|s| s.len() >= w.len()));
            }
        }
    }

    #[test]
    fn henneberg_graphs_are_laman() {
        let only_k3 = henneberg_corpus(3, 5, 7);
        assert!(only_k3.iter().all(|c| c.graph.n() == 3 && c.graph.edge_count() == 3));
        let corpus = henneberg_corpus(6, 50, 1);
        assert_eq!(corpus.len(), 50);
        for c in &corpus {
            let g = &c.graph;
            assert_eq!(g.edge_count(), 2 * g.n() - 3);
            let v = is_generically_rigid(&Graph::from(g));
            assert!(v.rigid && v.redundant_edges.is_empty(), "{}", c.name);
        }
        assert_eq!(henneberg_corpus(6, 10, 9), henneberg_corpus(6, 10, 9));
    }

    #[test]
    fn augmented_graphs_have_redundancy() {
        for c in augmented_corpus(7, 20, 3) {
            let v = is_generically_rigid(&Graph::from(&c.graph));
            assert!(v.rigid);
            assert_eq!(v.redundant_edges.len(), c.graph.edge_count() + 3 - 2 * c.graph.n());
            assert!(!v.redundant_edges.is_empty());
        }
    }
}
