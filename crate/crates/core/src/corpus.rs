//! Named plane graphs used by tests, the CLI and the self-test.
//!
//! Graphs are described by straight-line drawings; rotations are read off
//! the coordinates and the outer face is the one traced clockwise.

use crate::cpt::{CptLabelling, Label};
use crate::geometry::{direction_cmp, signed_area2, Point};
use crate::plane_graph::PlaneGraph;

/// Builds the plane graph of a straight-line drawing. Panics on drawings
/// that do not give a valid embedding (fixtures only).
pub fn from_drawing(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> PlaneGraph {
    let pts: Vec<Point<f64>> = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let mut rot = vec![Vec::new(); coords.len()];
    for &(u, v) in edges {
        rot[u].push(v);
        rot[v].push(u);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        r.sort_by(|&a, &b| direction_cmp(&pts[a].sub(&pts[v]), &pts[b].sub(&pts[v])));
    }
    let first = (edges[0].0, edges[0].1);
    let g = PlaneGraph::new(rot.clone(), first).expect("fixture drawing is a plane graph");
    let outer = (0..g.face_count())
        .min_by(|&a, &b| {
            let area = |f: usize| signed_area2(&g.face_vertices(f).iter().map(|&v| pts[v]).collect::<Vec<_>>());
            area(a).partial_cmp(&area(b)).unwrap()
        })
        .unwrap();
    let d = g.face(outer)[0];
    PlaneGraph::new(rot, (d.tail, d.head)).unwrap()
}

pub fn k3() -> PlaneGraph {
    from_drawing(&K3_COORDS, &[(0, 1), (1, 2), (2, 0)])
}

pub const K3_COORDS: [(f64, f64); 3] = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)];

pub fn k4() -> PlaneGraph {
    from_drawing(&[(0.0, 0.0), (6.0, 0.0), (3.0, 5.0), (3.0, 2.0)], &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
}

pub const MERCEDES_COORDS: [(f64, f64); 6] =
    [(0.0, 0.0), (12.0, 0.0), (6.0, 10.4), (6.0, 2.2), (7.8, 5.1), (4.2, 5.1)];

/// Outer triangle `0,1,2`; vertices `3,4,5` each close a triangle on one
/// outer edge, and together they bound a central hexagonal pseudo-triangle
/// `0,3,1,4,2,5` with reflex angles at `3,4,5`.
pub fn mercedes() -> PlaneGraph {
    from_drawing(&MERCEDES_COORDS, &MERCEDES_EDGES)
}

/// The Mercedes graph as a pointed CPT: outer angles BIG and the reflex
/// angles of the hexagonal face at `3, 4, 5` BIG.
pub fn mercedes_labelling() -> CptLabelling {
    let g = mercedes();
    let hex = (1..g.face_count()).find(|&f| g.face(f).len() == 6).unwrap();
    CptLabelling::from_fn(g, |a| if a.face == 0 || (a.face == hex && a.vertex >= 3) { Label::Big } else { Label::Small })
}

pub const MERCEDES_EDGES: [(usize, usize); 9] = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)];

pub const OCTAHEDRON_COORDS: [(f64, f64); 6] = [(0.0, 0.0), (12.0, 0.0), (6.0, 10.0), (6.0, 2.0), (8.0, 6.0), (4.0, 6.0)];

/// Octahedron: outer triangle `0,1,2`, inner triangle `3,4,5`; opposite
/// pairs are `(0,4)`, `(1,5)`, `(2,3)`.
pub fn octahedron() -> PlaneGraph {
    from_drawing(
        &OCTAHEDRON_COORDS,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (0, 5), (1, 3), (1, 4), (2, 4), (2, 5)],
    )
}

/// Triangular prism: outer triangle `0,1,2`, inner triangle `3,4,5`, rungs `i, i+3`.
pub fn prism() -> PlaneGraph {
    from_drawing(
        &[(0.0, 0.0), (12.0, 0.0), (6.0, 10.0), (4.5, 3.0), (7.5, 3.0), (6.0, 6.0)],
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
}

/// Wheel with `k` rim vertices `0..k` and hub `k`.
pub fn wheel(k: usize) -> PlaneGraph {
    let mut coords: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            (10.0 * t.cos(), 10.0 * t.sin())
        })
        .collect();
    coords.push((0.0, 0.0));
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    edges.extend((0..k).map(|i| (i, k)));
    from_drawing(&coords, &edges)
}

/// Hexagon `0..6` triangulated by a fan from vertex 0.
pub fn fan_hexagon() -> PlaneGraph {
    let coords: Vec<(f64, f64)> = (0..6)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 6.0;
            (10.0 * t.cos(), 10.0 * t.sin())
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(0, 2), (0, 3), (0, 4)]);
    from_drawing(&coords, &edges)
}

pub fn cycle(k: usize) -> PlaneGraph {
    let coords: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            (10.0 * t.cos(), 10.0 * t.sin())
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    from_drawing(&coords, &edges)
}

pub fn path(k: usize) -> PlaneGraph {
    let coords: Vec<(f64, f64)> = (0..k).map(|i| (i as f64, (i % 2) as f64)).collect();
    let edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    from_drawing(&coords, &edges)
}

/// K4 with a flexible three-link chain `0-4-5-1` and two degree-2 vertices.
/// It has `2n - 3` edges and only pointed labellings, yet the K4 is
/// overbraced: a pointed CPT that is not Laman.
pub fn overbraced_pointed() -> PlaneGraph {
    from_drawing(
        &[(0.0, 0.0), (12.0, 0.0), (6.0, 10.0), (6.0, 3.5), (4.0, 1.0), (8.0, 1.0), (8.0, 5.0), (4.0, 5.0)],
        &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3), (0, 4), (4, 5), (5, 1), (1, 6), (6, 2), (0, 7), (7, 2)],
    )
}

/// A labelling of [`overbraced_pointed`]: the first one found by exhaustive
/// search (every labelling of this graph is pointed).
pub fn overbraced_pointed_labelling() -> CptLabelling {
    let g = overbraced_pointed();
    crate::oracle::search_all_cpt_labellings(&g, 26).expect("within cap").swap_remove(0)
}

/// A rigid graph on six vertices with a CPT labelling whose two
/// non-pointed vertices `1` and `5` are adjacent, of degree 3, and so
/// incident to only five edges: rigid, but not generalized Laman.
pub fn light_non_pointed_pair() -> CptLabelling {
    let g = PlaneGraph::new(
        vec![vec![3, 4, 2], vec![2, 3, 5], vec![1, 5, 3, 0, 4], vec![0, 2, 5, 1, 4], vec![2, 0, 3], vec![3, 2, 1]],
        (3, 0),
    )
    .expect("valid rotation system");
    CptLabelling::from_fn(g, |a| if a.face == 0 || (a.face == 3 && a.index == 2) { Label::Big } else { Label::Small })
}
