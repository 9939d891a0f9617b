//! Invariants checked over randomly generated inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cptkit::cpt::{self, CptLabelling};
use cptkit::labelling::label_cpt;
use cptkit::oracle::{augment, henneberg_graph, search_all_cpt_labellings};
use cptkit::plane_graph::PlaneGraph;
use cptkit::rigidity::{is_generically_rigid, Graph};
use cptkit::stretch::{labels_from_drawing, snap, stretch, StretchOptions, DEFAULT_ANGLE_EPS};
use cptkit::surfaces::{genus_of, SurfaceGraph, SurfaceType};
use cptkit::Point64;

fn henneberg(n: usize, seed: u64) -> PlaneGraph {
    henneberg_graph(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn abstract_graph(g: &PlaneGraph) -> Graph {
    Graph::new(g.n(), g.edges().to_vec())
}

/// Rotation lists compared up to cyclic shift.
fn same_rotations(a: &PlaneGraph, b: &PlaneGraph) -> bool {
    a.n() == b.n()
        && (0..a.n()).all(|v| {
            let (ra, rb) = (a.rotation(v), b.rotation(v));
            ra.len() == rb.len() && (0..ra.len().max(1)).any(|s| (0..ra.len()).all(|i| ra[(i + s) % ra.len()] == rb[i]))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_sum_is_twice_the_edge_count(n in 3usize..14, seed in any::<u64>()) {
        let g = henneberg(n, seed);
        let degrees: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * g.edge_count());
        prop_assert_eq!(g.edge_count(), 2 * n - 3);
        // Euler's formula for a connected plane graph.
        prop_assert_eq!(g.n() + g.face_count(), g.edge_count() + 2);
    }

    #[test]
    fn removing_and_reinserting_an_edge_is_the_identity(n in 4usize..12, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = henneberg(n, seed);
        let (u, v) = g.edges()[pick.index(g.edge_count())];
        let Ok(h) = g.remove_edge(u, v) else { return Ok(()) };
        let slot = |x: usize, y: usize| {
            let r = g.rotation(x);
            let i = r.iter().position(|&w| w == y).unwrap();
            let prev = r[(i + r.len() - 1) % r.len()];
            h.rotation(x).iter().position(|&w| w == prev)
        };
        let (Some(pu), Some(pv)) = (slot(u, v), slot(v, u)) else { return Ok(()) };
        let back = h.insert_edge(u, v, pu, pv).unwrap();
        prop_assert!(same_rotations(&back, &g));
        prop_assert_eq!(back.face_count(), g.face_count());
    }

    #[test]
    fn laman_graphs_are_hereditarily_sparse(n in 3usize..12, seed in any::<u64>(), mask in any::<u16>()) {
        let g = henneberg(n, seed);
        prop_assert!(is_generically_rigid(&abstract_graph(&g)).rigid);
        let keep: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let k = keep.iter().filter(|&&b| b).count();
        let e = g.edges().iter().filter(|&&(a, b)| keep[a] && keep[b]).count();
        if k >= 2 {
            prop_assert!(e + 3 <= 2 * k);
        }
    }

    #[test]
    fn engine_output_is_a_generalized_laman_cpt(n in 3usize..11, seed in any::<u64>(), extra in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = henneberg_graph(n, &mut rng);
        let g = if extra == 0 { base } else { augment(&base, extra, &mut rng).unwrap_or(base) };
        let l = label_cpt(&g).unwrap();
        let s = cpt::validate_cpt(&l).unwrap();
        prop_assert_eq!(s.e + 3, 3 * s.x + 2 * s.y);
        prop_assert!(cpt::generalized_laman(&l).unwrap().holds);
        prop_assert!(cpt::generalized_laman_pebble(&l));
        if g.edge_count() == 2 * n - 3 {
            prop_assert_eq!(s.x, 0);
        }
    }

    #[test]
    fn stretched_drawings_read_back_their_labels(n in 3usize..10, seed in any::<u64>()) {
        let l = label_cpt(&henneberg(n, seed)).unwrap();
        let out = stretch(&l, &StretchOptions { seed, ..StretchOptions::default() }).unwrap();
        prop_assert!(out.report.valid);
        prop_assert_eq!(labels_from_drawing(&out.embedding.widen(), DEFAULT_ANGLE_EPS), Some(l));
    }

    #[test]
    fn snapping_stays_on_the_grid(coords in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..20), bits in 8u32..40) {
        let pts: Vec<Point64> = coords.iter().map(|&(x, y)| Point64::new(x, y)).collect();
        let a = snap(&pts, bits);
        prop_assert_eq!(&a, &snap(&pts, bits));
        let half = 1i64 << (bits - 1);
        prop_assert!(a.iter().all(|p| p.x.abs() <= half && p.y.abs() <= half));
    }

    #[test]
    fn plane_rotations_embed_in_the_sphere(n in 3usize..14, seed in any::<u64>(), switch in any::<u16>()) {
        let g = henneberg(n, seed);
        let s = SurfaceGraph::from_plane(&g).unwrap();
        prop_assert_eq!(genus_of(&s).unwrap(), SurfaceType { orientable: true, genus: 0 });
        // Switching local orientations (reverse a rotation, twist its
        // edges) changes neither the faces nor the surface.
        let mut rot = g.rotations().to_vec();
        let flipped: Vec<bool> = (0..n).map(|v| switch >> (v % 16) & 1 == 1).collect();
        let mut twisted = Vec::new();
        for v in 0..n {
            if flipped[v] {
                rot[v].reverse();
            }
        }
        for &(a, b) in g.edges() {
            if flipped[a] != flipped[b] {
                twisted.push((a, b));
            }
        }
        let t = SurfaceGraph::new(rot, &twisted).unwrap();
        prop_assert_eq!(t.face_count(), s.face_count());
        prop_assert_eq!(genus_of(&t).unwrap(), SurfaceType { orientable: true, genus: 0 });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generalized_laman_forms_agree(n in 4usize..8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = henneberg_graph(n, &mut rng);
        let g = augment(&base, 1, &mut rng).unwrap_or(base);
        let all: Vec<CptLabelling> = search_all_cpt_labellings(&g, 26).unwrap_or_default();
        for l in &all {
            let brute = cpt::generalized_laman(l).unwrap().holds;
            prop_assert_eq!(brute, cpt::generalized_laman_dual(l).unwrap());
            prop_assert_eq!(brute, cpt::generalized_laman_pebble(l));
        }
    }
}
