//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line with its
//! measured value, tolerance and runtime budget, then asserts.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cptkit::corpus;
use cptkit::geometry::{convex_hull, AngleClass};
use cptkit::cpt::{self, CptLabelling, Label};
use cptkit::labelling::{label_cpt, label_cpt_traced, EngineOptions, StepKind, StepRecord};
use cptkit::oracle::{self, augmented_corpus, henneberg_corpus, rank_rigidity_oracle, CorpusEntry};
use cptkit::plane_graph::PlaneGraph;
use cptkit::rigidity::{is_generically_rigid, Graph};
use cptkit::stretch::{
    classify_angles, geometric_counts, labels_from_drawing, stretch, stretch_unchecked, verify_stretch, EmbeddedGraph, StretchOptions,
    DEFAULT_ANGLE_EPS,
};
use cptkit::surfaces::{check_surface_cpt, fixtures, genus_of, pointed_feasible, search_surface_cpts};

fn report(id: u32, what: &str, failures: usize, detail: &str, elapsed: Duration, budget: Duration) {
    let ok = failures == 0 && elapsed <= budget;
    println!(
        "criterion {id}: {} {what}: {failures} failures (tolerance 0), {detail}, {:.2}s (budget {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert_eq!(failures, 0, "criterion {id}: {what}");
    assert!(elapsed <= budget, "criterion {id}: {:.2}s over the {}s budget", elapsed.as_secs_f64(), budget.as_secs());
}

/// Independent count of edges from the rotation lists.
fn edges_from_rotations(g: &PlaneGraph) -> usize {
    g.rotations().iter().map(Vec::len).sum::<usize>() / 2
}

/// Independent count of non-pointed and pointed vertices from the labels.
fn xy_from_angles(l: &CptLabelling) -> (usize, usize) {
    let g = l.graph();
    let mut pointed = vec![false; g.n()];
    for a in g.angles() {
        if l.label(&a) == Label::Big {
            pointed[a.vertex] = true;
        }
    }
    let y = pointed.iter().filter(|&&p| p).count();
    (g.n() - y, y)
}

/// Engine labellings of plane Laman and augmented graphs with `n <= 12`,
/// plus the loaded fixtures.
fn labelled_corpus() -> Vec<(String, CptLabelling)> {
    let mut entries = henneberg_corpus(12, 160, 11);
    entries.extend(augmented_corpus(12, 60, 12));
    let mut out: Vec<(String, CptLabelling)> = entries
        .into_iter()
        .map(|e| {
            let l = label_cpt(&e.graph).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            (e.name, l)
        })
        .collect();
    out.push(("mercedes".into(), corpus::mercedes_labelling()));
    out
}

#[test]
fn criterion_1_edge_count_identity() {
    let start = Instant::now();
    let all = labelled_corpus();
    let mut failures = 0;
    for (name, l) in &all {
        let e = edges_from_rotations(l.graph());
        let (x, y) = xy_from_angles(l);
        if cpt::validate_cpt(l).is_err() || e + 3 != 3 * x + 2 * y {
            eprintln!("{name}: e = {e}, x = {x}, y = {y}");
            failures += 1;
        }
    }
    assert!(all.len() >= 200);
    report(1, "e = 3x + 2y - 3 on valid CPTs", failures, &format!("{} instances", all.len()), start.elapsed(), Duration::from_secs(5));
}

/// Modified copies of a certified drawing: one with an edge removed (still
/// non-crossing and connected), and one with a vertex placed on the middle
/// of an edge it is not incident to, which is never a valid drawing.
fn modified_drawings(emb: &EmbeddedGraph<i64>, rng: &mut ChaCha8Rng) -> Vec<(EmbeddedGraph<i64>, bool)> {
    let g = &emb.graph;
    let mut out = Vec::new();
    let edges = g.edges().to_vec();
    let offset = rng.gen_range(0..edges.len());
    for k in 0..edges.len() {
        let (u, v) = edges[(offset + k) % edges.len()];
        if let Ok(h) = g.remove_edge(u, v) {
            out.push((EmbeddedGraph { graph: h, coords: emb.coords.clone() }, true));
            break;
        }
    }
    let mut moved = emb.clone();
    for p in &mut moved.coords {
        p.x *= 2;
        p.y *= 2;
    }
    let v = rng.gen_range(0..g.n());
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a != v && b != v) {
        moved.coords[v].x = (moved.coords[a].x + moved.coords[b].x) / 2;
        moved.coords[v].y = (moved.coords[a].y + moved.coords[b].y) / 2;
        out.push((moved, false));
    }
    out
}

/// Pseudo-triangulation test from angle classes alone: every convex hull
/// edge is an edge of the graph and every bounded face has exactly three
/// convex angles.
fn is_pseudo_triangulation(emb: &EmbeddedGraph<i128>) -> bool {
    let g = &emb.graph;
    let hull = convex_hull(&emb.coords);
    let hull_edges = (0..hull.len()).all(|i| g.has_edge(hull[i], hull[(i + 1) % hull.len()]));
    let r = classify_angles(emb, 0.0);
    let mut convex = vec![0usize; g.face_count()];
    for a in &r.angles {
        if a.class == AngleClass::Convex {
            convex[a.face] += 1;
        }
    }
    hull_edges && convex[1..].iter().all(|&c| c == 3)
}

#[test]
fn criterion_2_geometric_count() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    let (mut stretched, mut broken, mut strict) = (0, 0, 0);
    for (name, l) in labelled_corpus() {
        let out = match stretch(&l, &StretchOptions::default()) {
            Ok(o) => o,
            Err(err) => {
                eprintln!("{name}: {err}");
                failures += 1;
                continue;
            }
        };
        stretched += 1;
        let (e, x, y) = geometric_counts(&out.embedding.widen());
        if e + 3 != 3 * x + 2 * y {
            eprintln!("{name}: stretched drawing has e = {e}, 3x + 2y - 3 = {}", 3 * x + 2 * y - 3);
            failures += 1;
        }
        for (bad, non_crossing) in modified_drawings(&out.embedding, &mut rng) {
            let wide = bad.widen();
            let (e, x, y) = geometric_counts(&wide);
            let below = e + 3 < 3 * x + 2 * y;
            let caught = if non_crossing {
                // Equality exactly when the drawing is a pseudo-triangulation.
                let pt = is_pseudo_triangulation(&wide);
                broken += usize::from(!pt);
                strict += usize::from(below);
                e + 3 <= 3 * x + 2 * y && below != pt
            } else {
                broken += 1;
                !verify_stretch(&wide, &l, DEFAULT_ANGLE_EPS).valid
            };
            if !caught {
                eprintln!("{name}: modified drawing with e = {e}, x = {x}, y = {y} was not caught");
                failures += 1;
            }
        }
    }
    assert!(strict >= 20 && broken >= 20);
    report(
        2,
        "equality on stretched drawings, strict or rejected on broken ones",
        failures,
        &format!("{stretched} stretched, {broken} broken ({strict} with strict inequality)"),
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_3_rigidity_oracles_agree() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut failures, mut rigid) = (0, 0);
    let total = 600;
    for i in 0..total {
        let n = rng.gen_range(2..=10);
        let density = rng.gen_range(0.05..0.9);
        let g: Graph = oracle::random_connected_graph(n, density, &mut rng);
        let pebble = is_generically_rigid(&g).rigid;
        let rank = rank_rigidity_oracle(&g, oracle::RANK_TRIALS, i);
        rigid += usize::from(pebble);
        if pebble != rank {
            eprintln!("graph {i}: pebble {pebble}, rank {rank}: {g:?}");
            failures += 1;
        }
    }
    report(
        3,
        "pebble game vs rigidity-matrix rank",
        failures,
        &format!("{total} graphs, {rigid} rigid, {} draws, pivot {:e}", oracle::RANK_TRIALS, oracle::RANK_PIVOT_TOLERANCE),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

/// Henneberg and augmented graphs with `n <= 8`, including Laman graphs of
/// minimum degree 3 so that the engine performs degree-3 steps.
fn engine_corpus() -> Vec<CorpusEntry> {
    let mut entries = henneberg_corpus(8, 120, 4);
    let min_degree = |g: &PlaneGraph| (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0);
    entries.extend(henneberg_corpus(8, 4000, 6).into_iter().filter(|e| min_degree(&e.graph) >= 3).take(40));
    entries.extend(augmented_corpus(8, 60, 5));
    entries
}

/// Runs the traced engine over the criterion-4 corpus; returns failure
/// count and every degree-3 step.
fn run_engine_corpus() -> (usize, usize, Vec<StepRecord>) {
    let mut failures = 0;
    let mut steps = Vec::new();
    let entries = engine_corpus();
    for e in &entries {
        let out = match label_cpt_traced(&e.graph, &EngineOptions::default()) {
            Ok(o) => o,
            Err(err) => {
                eprintln!("{}: {err}", e.name);
                failures += 1;
                continue;
            }
        };
        let l = &out.labelling;
        let valid = cpt::validate_cpt(l).is_ok();
        let gl = oracle::enumerate_gl_subsets(l).map(|r| r.holds).unwrap_or(false);
        let pointed_ok = !e.minimal || l.xy().0 == 0;
        if !(valid && gl && pointed_ok) {
            eprintln!("{}: valid {valid}, generalized Laman {gl}, pointed when minimal {pointed_ok}", e.name);
            failures += 1;
        }
        steps.extend(out.steps.into_iter().filter(|s| matches!(s.step, StepKind::Degree3 { .. })));
    }
    (failures, entries.len(), steps)
}

#[test]
fn criterion_4_labelling_pipeline() {
    let start = Instant::now();
    let (failures, total, _) = run_engine_corpus();
    let minimal = engine_corpus().iter().filter(|e| e.minimal).count();
    assert!(minimal >= 100 && total - minimal >= 50);
    report(
        4,
        "engine output is a generalized Laman CPT, pointed when minimal",
        failures,
        &format!("{minimal} minimal, {} augmented", total - minimal),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

/// Non-generalized-Laman CPTs: the two named fixtures plus labellings found
/// by exhaustive search on small augmented graphs.
fn non_laman_cpts(min: usize) -> Vec<(String, CptLabelling)> {
    let mut out = vec![
        ("overbraced-pointed".to_string(), corpus::overbraced_pointed_labelling()),
        ("light-non-pointed-pair".to_string(), corpus::light_non_pointed_pair()),
    ];
    for e in augmented_corpus(8, 200, 55) {
        if 2 * e.graph.edge_count() > oracle::DEFAULT_SEARCH_CAP {
            continue;
        }
        for (k, l) in oracle::search_all_cpt_labellings(&e.graph, oracle::DEFAULT_SEARCH_CAP).unwrap().into_iter().enumerate() {
            if !cpt::generalized_laman(&l).unwrap().holds {
                out.push((format!("{}-{k}", e.name), l));
                break;
            }
        }
        if out.len() >= min {
            break;
        }
    }
    out
}

#[test]
fn criterion_5_four_way_equivalence() {
    let start = Instant::now();
    let mut instances = labelled_corpus();
    let bad = non_laman_cpts(24);
    let hand_built = bad.len();
    instances.extend(bad);
    let mut failures = 0;
    let mut stretchable = 0;
    let opts = StretchOptions { attempts: 20, ..StretchOptions::default() };
    for (name, l) in &instances {
        let gl = cpt::generalized_laman(l).unwrap().holds;
        let dual = cpt::generalized_laman_dual(l).unwrap();
        let corners = l.graph().faces_nondegenerate() && cpt::three_corner_property(l).unwrap();
        let stretched = stretch_unchecked(l, &opts).is_ok();
        stretchable += usize::from(stretched);
        if !(gl == dual && dual == corners && corners == stretched) {
            eprintln!("{name}: gl {gl}, dual {dual}, corners {corners}, stretch {stretched}");
            failures += 1;
        }
    }
    assert!(hand_built >= 20);
    report(
        5,
        "generalized Laman = dual form = corner property = stretchable",
        failures,
        &format!("{} instances ({hand_built} not generalized Laman, {stretchable} stretched)", instances.len()),
        start.elapsed(),
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_6_corner_formula() {
    let start = Instant::now();
    let mut failures = 0;
    let mut checked = 0;
    let mut instances: Vec<CptLabelling> = labelled_corpus().into_iter().map(|(_, l)| l).filter(|l| l.graph().n() <= 7).collect();
    instances.push(corpus::mercedes_labelling());
    for l in &instances {
        let g = l.graph();
        let n = g.n();
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            for h in g.induced_subcomplex(&subset) {
                if h.core.len() != subset.len() {
                    continue;
                }
                let r = cpt::corners(&h, l);
                let (e, x, y, b) = cpt::subcomplex_counts(&h, l);
                checked += 1;
                if r.c1 as i64 != e as i64 - 3 * x as i64 - 2 * y as i64 + 3 + b as i64 {
                    eprintln!("subset {subset:?}: c1 = {}, e = {e}, x = {x}, y = {y}, b = {b}", r.c1);
                    failures += 1;
                }
            }
        }
    }
    report(
        6,
        "c1 = e - 3x - 2y + 3 + b on simply connected subcomplexes",
        failures,
        &format!("{} CPTs, {checked} subcomplexes", instances.len()),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_7_status_counts() {
    let (_, _, steps) = run_engine_corpus();
    let mut failures = 0;
    for s in &steps {
        let expected = if s.v_pointed { 3 } else { 4 };
        if s.status_keepers != expected || !s.monotone {
            eprintln!("{s:?}");
            failures += 1;
        }
    }
    assert!(!steps.is_empty());
    let start = Instant::now();
    report(
        7,
        "3 or 4 status keepers and no non-pointed to pointed change per degree-3 step",
        failures,
        &format!("{} degree-3 steps", steps.len()),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_8_closed_surfaces() {
    let start = Instant::now();
    let mut failures = 0;

    let cube = check_surface_cpt(&fixtures::cube_sphere_cpt()).unwrap();
    let s = &cube.summary;
    failures += usize::from(!(cube.is_cpt() && (s.e, s.x, s.y, s.surface.genus, s.surface.orientable) == (12, 2, 6, 0, true)));

    let torus = fixtures::octahedron_torus();
    let pointed = search_surface_cpts(&torus, 64).unwrap().into_iter().find(|l| l.xy().0 == 0);
    match pointed.map(|l| check_surface_cpt(&l).unwrap()) {
        Some(c) => {
            let s = &c.summary;
            failures += usize::from(!(c.is_cpt() && (s.e, s.x, s.y, s.surface.genus, s.surface.orientable) == (12, 0, 6, 1, true)));
        }
        None => failures += 1,
    }

    let prism = fixtures::prism_sphere();
    let all = search_surface_cpts(&prism, 64).unwrap();
    failures += usize::from(all.is_empty() || all.iter().any(|l| l.xy().0 != 3) || pointed_feasible(&prism).unwrap());

    let octahedron = fixtures::octahedron_sphere();
    failures += usize::from(pointed_feasible(&octahedron).unwrap());
    failures += usize::from(search_surface_cpts(&octahedron, 64).unwrap().iter().any(|l| l.xy().0 == 0));
    failures += usize::from(genus_of(&octahedron).unwrap().genus != 0);

    report(
        8,
        "cube/sphere, octahedron/torus, prism/sphere, octahedron/sphere",
        failures,
        "exact counts",
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_9_round_trip_and_determinism() {
    let start = Instant::now();
    let mut failures = 0;
    let all = labelled_corpus();
    for (name, l) in &all {
        let opts = StretchOptions { seed: 9, ..StretchOptions::default() };
        let (a, b) = match (stretch(l, &opts), stretch(l, &opts)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                eprintln!("{name}: stretch failed");
                failures += 1;
                continue;
            }
        };
        let back = labels_from_drawing(&a.embedding.widen(), DEFAULT_ANGLE_EPS);
        if back.as_ref() != Some(l) {
            eprintln!("{name}: labels read off the drawing differ");
            failures += 1;
        }
        if a.embedding.coords != b.embedding.coords || serde_json::to_string(&a.report).unwrap() != serde_json::to_string(&b.report).unwrap()
        {
            eprintln!("{name}: repeated stretch differs");
            failures += 1;
        }
    }
    report(
        9,
        "classify(stretch(l)) = l and identical repeated runs",
        failures,
        &format!("{} labellings", all.len()),
        start.elapsed(),
        Duration::from_secs(60),
    );
}
