//! Subcommand implementations. Each returns the exit code it decided on,
//! having filled in the report; input and internal failures are returned
//! as errors.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use cptkit::cpt::{self, CptLabelling, LabellingFile};
use cptkit::draw::{render_svg, SvgOptions};
use cptkit::labelling::{label_cpt_traced, EngineOptions};
use cptkit::oracle::{self, augmented_corpus, henneberg_corpus, rank_rigidity_oracle};
use cptkit::plane_graph::{GraphFile, PlaneGraph};
use cptkit::rigidity::{is_generically_rigid, rigid_components, Graph};
use cptkit::stretch::{self, CoordsFile, StretchOptions, StretchReport};
use cptkit::surfaces::{self, SurfaceCpt, SurfaceGraph, SurfaceGraphFile, SurfaceLabellingFile};

use crate::report::{CmdResult, Config, Failure, RunReport, EXIT_FALSE, EXIT_INTERNAL, EXIT_OK};

fn parse<T: DeserializeOwned>(bytes: &[u8], path: &Path) -> CmdResult<T> {
    serde_json::from_slice(bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> CmdResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    write_text(path, &(text + "\n"))
}

fn write_text(path: &Path, text: &str) -> CmdResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(report: &mut RunReport, path: &Path) -> CmdResult<PlaneGraph> {
    let bytes = report.read_input("graph", path)?;
    let file: GraphFile = parse(&bytes, path)?;
    Ok(PlaneGraph::from_file(&file)?)
}

fn load_labelling(report: &mut RunReport, graph: PlaneGraph, path: &Path) -> CmdResult<CptLabelling> {
    let bytes = report.read_input("labels", path)?;
    let file: LabellingFile = parse(&bytes, path)?;
    Ok(CptLabelling::from_file(graph, &file)?)
}

fn load_coords(report: &mut RunReport, path: &Path) -> CmdResult<CoordsFile> {
    let bytes = report.read_input("coords", path)?;
    parse(&bytes, path)
}

fn require_cpt(report: &mut RunReport, l: &CptLabelling) -> CmdResult<()> {
    match cpt::validate_cpt(l) {
        Ok(summary) => {
            report.counts = Some(summary);
            Ok(())
        }
        Err(violations) => {
            report.diagnostics.extend(violations.iter().map(ToString::to_string));
            Err(Failure::input(format!("labelling is not a CPT: {}", violations[0])))
        }
    }
}

fn abstract_graph(g: &PlaneGraph) -> Graph {
    Graph::new(g.n(), g.edges().to_vec())
}

pub fn check_rigid(report: &mut RunReport, graph: &Path) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let verdict = report.timed("pebble", || is_generically_rigid(&abstract_graph(&g)));
    println!("{}", if verdict.rigid { "rigid".to_string() } else { format!("flexible ({} degrees of freedom)", verdict.deficiency) });
    println!("laman edges: {:?}", verdict.laman_edges);
    report.verdict("rigid", verdict.rigid);
    report.verdict("laman_edges", &verdict.laman_edges);
    report.verdict("deficiency", verdict.deficiency);
    Ok(if verdict.rigid { EXIT_OK } else { EXIT_FALSE })
}

pub fn laman_sub(report: &mut RunReport, graph: &Path, out: Option<&Path>) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let ag = abstract_graph(&g);
    let verdict = report.timed("pebble", || is_generically_rigid(&ag));
    let components = rigid_components(&ag);
    let body = json!({
        "rigid": verdict.rigid,
        "laman_edges": verdict.laman_edges,
        "redundant_edges": verdict.redundant_edges,
        "rigid_components": components,
    });
    match out {
        Some(p) => write_json(p, &body)?,
        None => println!("{}", serde_json::to_string_pretty(&body).expect("json")),
    }
    report.verdict("rigid", verdict.rigid);
    report.verdict("laman_edges", &verdict.laman_edges);
    report.verdict("redundant_edges", &verdict.redundant_edges);
    Ok(if verdict.rigid { EXIT_OK } else { EXIT_FALSE })
}

pub fn label(
    report: &mut RunReport,
    cfg: &Config,
    graph: &Path,
    out: &Path,
    require_pointed: bool,
    trace: Option<&Path>,
) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let opts = EngineOptions { gl_cap: cfg.gl_cap, ..EngineOptions::default() };
    let result = report.timed("label", || label_cpt_traced(&g, &opts));
    let output = match result {
        Ok(o) => o,
        Err(cptkit::Error::Precondition(msg)) => {
            report.verdict("labelled", false);
            report.diagnostics.push(msg.clone());
            println!("not labelled: {msg}");
            return Ok(EXIT_FALSE);
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = trace {
        let lines: Vec<String> =
            output.steps.iter().map(|s| serde_json::to_string(s).expect("serializable step")).collect();
        write_text(path, &(lines.join("\n") + "\n"))?;
    }
    let l = output.labelling;
    require_cpt(report, &l).map_err(|f| Failure::internal(format!("engine produced an invalid labelling: {}", f.message)))?;
    write_json(out, &l.to_file())?;
    let (x, y) = l.xy();
    println!("labelled: x = {x}, y = {y}, e = {}", l.graph().edge_count());
    report.verdict("labelled", true);
    report.verdict("pointed", x == 0);
    if require_pointed && x != 0 {
        report.diagnostics.push(format!("{x} non-pointed vertices"));
        return Ok(EXIT_FALSE);
    }
    Ok(EXIT_OK)
}

pub fn check_cpt(report: &mut RunReport, graph: &Path, labels: &Path) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let l = load_labelling(report, g, labels)?;
    match cpt::validate_cpt(&l) {
        Ok(summary) => {
            println!(
                "valid CPT: e = {}, x = {}, y = {}, f = {}, b = {}, c1 = {}, c2 = {}",
                summary.e, summary.x, summary.y, summary.f, summary.b, summary.c1, summary.c2
            );
            report.counts = Some(summary);
            report.verdict("cpt", true);
            Ok(EXIT_OK)
        }
        Err(violations) => {
            for v in &violations {
                println!("violation: {v}");
            }
            report.diagnostics.extend(violations.iter().map(ToString::to_string));
            report.verdict("cpt", false);
            Ok(EXIT_FALSE)
        }
    }
}

/// Generalized Laman verdict by subset enumeration within the cap, by the
/// pebble game above it.
fn gl_verdict(report: &mut RunReport, cfg: &Config, l: &CptLabelling) -> CmdResult<bool> {
    if l.graph().n() <= cfg.gl_cap {
        let v = report.timed("generalized_laman", || cpt::generalized_laman_capped(l, cfg.gl_cap))?;
        report.verdict("method", "enumeration");
        report.verdict("witness", &v.witness);
        if let Some(w) = &v.witness {
            report.diagnostics.push(format!("violating subset {w:?}"));
        }
        Ok(v.holds)
    } else {
        report.verdict("method", "pebble_game");
        Ok(report.timed("generalized_laman", || cpt::generalized_laman_pebble(l)))
    }
}

pub fn check_gl(report: &mut RunReport, cfg: &Config, graph: &Path, labels: &Path) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let l = load_labelling(report, g, labels)?;
    require_cpt(report, &l)?;
    let holds = gl_verdict(report, cfg, &l)?;
    let pebble = cpt::generalized_laman_pebble(&l);
    if pebble != holds {
        return Err(Failure::internal(format!("enumeration says {holds}, pebble game says {pebble}")));
    }
    report.verdict("generalized_laman", holds);
    if l.graph().n() <= cfg.gl_cap.min(cpt::DEFAULT_ENUMERATION_CAP) {
        let dual = cpt::generalized_laman_dual(&l)?;
        let corners = l.graph().faces_nondegenerate() && cpt::three_corner_property(&l)?;
        report.verdict("dual_form", dual);
        report.verdict("three_corner", corners);
        if dual != holds || corners != holds {
            return Err(Failure::internal(format!("equivalent forms disagree: {holds}, dual {dual}, corners {corners}")));
        }
    }
    let s = report.counts.expect("validated");
    println!("e = {}, x = {}, y = {}", s.e, s.x, s.y);
    println!("generalized Laman: {holds}");
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn stretch_options(cfg: &Config) -> StretchOptions {
    StretchOptions { seed: cfg.seed, attempts: cfg.iters, snap_bits: cfg.snap_bits, angle_eps: cfg.angle_eps }
}

fn record_stretch(report: &mut RunReport, r: &StretchReport) {
    report.verdict("valid", r.valid);
    report.verdict("geometric_counts", json!({ "e": r.e, "x": r.x, "y": r.y }));
    report.diagnostics.extend(r.issues.iter().map(ToString::to_string));
}

pub fn stretch(report: &mut RunReport, cfg: &Config, graph: &Path, labels: &Path, out: &Path, svg: Option<&Path>) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let l = load_labelling(report, g, labels)?;
    require_cpt(report, &l)?;
    let outcome = match report.timed("stretch", || stretch::stretch(&l, &stretch_options(cfg))) {
        Ok(o) => o,
        Err(cptkit::Error::Precondition(msg)) => {
            println!("{msg}");
            report.diagnostics.push(msg);
            report.verdict("stretched", false);
            return Ok(EXIT_FALSE);
        }
        Err(e) => return Err(e.into()),
    };
    write_json(out, &outcome.embedding.to_file())?;
    if let Some(p) = svg {
        write_text(p, &render_svg(&outcome.embedding, Some(&l), &SvgOptions::default()))?;
    }
    record_stretch(report, &outcome.report);
    report.verdict("stretched", true);
    report.verdict("attempts", outcome.attempts);
    println!("stretched after {} attempt(s)", outcome.attempts);
    Ok(EXIT_OK)
}

pub fn verify(report: &mut RunReport, cfg: &Config, graph: &Path, labels: &Path, coords: &Path) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let l = load_labelling(report, g.clone(), labels)?;
    let c = load_coords(report, coords)?;
    let r = match c.embed_grid(g.clone())? {
        Some(grid) => {
            report.verdict("arithmetic", "exact");
            stretch::verify_stretch(&grid.widen(), &l, cfg.angle_eps)
        }
        None => {
            report.verdict("arithmetic", "floating");
            stretch::verify_stretch(&c.embed(g)?, &l, cfg.angle_eps)
        }
    };
    record_stretch(report, &r);
    if r.valid {
        println!("valid pseudo-triangulation realizing the labelling");
        Ok(EXIT_OK)
    } else {
        for issue in &r.issues {
            println!("{issue}");
        }
        Ok(EXIT_FALSE)
    }
}

pub fn draw(report: &mut RunReport, graph: &Path, coords: &Path, labels: Option<&Path>, out: &Path) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let l = labels.map(|p| load_labelling(report, g.clone(), p)).transpose()?;
    let emb = load_coords(report, coords)?.embed(g)?;
    write_text(out, &render_svg(&emb, l.as_ref(), &SvgOptions::default()))?;
    report.verdict("drawn", true);
    Ok(EXIT_OK)
}

pub fn surface_check(report: &mut RunReport, graph: &Path, labels: Option<&Path>) -> CmdResult<i32> {
    let bytes = report.read_input("graph", graph)?;
    let file: SurfaceGraphFile = parse(&bytes, graph)?;
    let g = SurfaceGraph::from_file(&file)?;
    let surface = surfaces::genus_of(&g)?;
    let feasible = surfaces::pointed_feasible(&g)?;
    report.verdict("orientable", surface.orientable);
    report.verdict("genus", surface.genus);
    report.verdict("pointed_feasible", feasible);
    let Some(lpath) = labels else {
        println!(
            "orientable = {}, g = {}, e = {}, f = {}, pointed feasible = {feasible}",
            surface.orientable,
            surface.genus,
            g.edge_count(),
            g.face_count()
        );
        return Ok(EXIT_OK);
    };
    let lbytes = report.read_input("labels", lpath)?;
    let lfile: SurfaceLabellingFile = parse(&lbytes, lpath)?;
    let l = SurfaceCpt::from_file(g, &lfile)?;
    let check = surfaces::check_surface_cpt(&l).map_err(|e| Failure::internal(e.to_string()))?;
    let s = &check.summary;
    println!("orientable = {}, g = {}, x = {}, y = {}, e = {}", s.surface.orientable, s.surface.genus, s.x, s.y, s.e);
    println!("identity e = {}: {}", s.predicted_e, if check.identity_holds() { "holds" } else { "fails" });
    report.verdict("cpt", check.is_cpt());
    report.verdict("identity", check.identity_holds());
    report.verdict("counts", s);
    report.diagnostics.extend(check.violations.iter().map(ToString::to_string));
    for v in &check.violations {
        println!("violation: {v}");
    }
    Ok(if check.is_cpt() { EXIT_OK } else { EXIT_FALSE })
}

pub fn pipeline(report: &mut RunReport, cfg: &Config, graph: &Path, out_dir: &Path, require_pointed: bool) -> CmdResult<i32> {
    let g = load_graph(report, graph)?;
    let rigid = report.timed("rigidity", || is_generically_rigid(&abstract_graph(&g)));
    report.verdict("rigid", rigid.rigid);
    if !rigid.rigid {
        println!("flexible ({} degrees of freedom): no generalized Laman CPT exists", rigid.deficiency);
        return Ok(EXIT_FALSE);
    }
    let opts = EngineOptions { gl_cap: cfg.gl_cap, ..EngineOptions::default() };
    let l = report.timed("label", || label_cpt_traced(&g, &opts))?.labelling;
    require_cpt(report, &l).map_err(|f| Failure::internal(f.message))?;
    let (x, _) = l.xy();
    report.verdict("pointed", x == 0);
    if !gl_verdict(report, cfg, &l)? {
        return Err(Failure::internal("engine output is not generalized Laman"));
    }
    report.verdict("generalized_laman", true);
    let outcome = report.timed("stretch", || stretch::stretch(&l, &stretch_options(cfg)))?;
    let check = report.timed("verify", || stretch::verify_stretch(&outcome.embedding.widen(), &l, cfg.angle_eps));
    record_stretch(report, &check);
    if !check.valid {
        return Err(Failure::internal("certified drawing failed re-verification"));
    }
    let labels_path = out_dir.join("labels.json");
    write_json(&labels_path, &l.to_file())?;
    write_json(&out_dir.join("coords.json"), &outcome.embedding.to_file())?;
    write_text(&out_dir.join("drawing.svg"), &render_svg(&outcome.embedding, Some(&l), &SvgOptions::default()))?;
    println!("rigid, labelled (x = {x}), stretched and verified; outputs in {}", out_dir.display());
    if require_pointed && x != 0 {
        report.diagnostics.push(format!("{x} non-pointed vertices"));
        return Ok(EXIT_FALSE);
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Default, Clone, Copy, Serialize)]
struct Row {
    checked: usize,
    disagreements: usize,
}

impl Row {
    fn add(&mut self, agree: bool) {
        self.checked += 1;
        self.disagreements += usize::from(!agree);
    }
}

/// Oracle agreement over seeded random instances; `iters` scales every row.
pub fn selftest(report: &mut RunReport, cfg: &Config) -> CmdResult<i32> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let iters = cfg.iters.max(1);
    let mut rows: Vec<(&str, Row)> = Vec::new();

    let mut rank = Row::default();
    for i in 0..iters {
        let n = rng.gen_range(2..=10);
        let g = oracle::random_connected_graph(n, rng.gen_range(0.05..0.9), &mut rng);
        rank.add(is_generically_rigid(&g).rigid == rank_rigidity_oracle(&g, oracle::RANK_TRIALS, cfg.seed ^ i as u64));
    }
    rows.push(("pebble game = rigidity matrix rank", rank));

    let mut corpus = henneberg_corpus(10, iters.div_ceil(2), cfg.seed);
    corpus.extend(augmented_corpus(10, iters.div_ceil(2), cfg.seed.wrapping_add(1)));
    let (mut engine, mut gl, mut search, mut stretched) = (Row::default(), Row::default(), Row::default(), Row::default());
    for e in &corpus {
        let out = label_cpt_traced(&e.graph, &EngineOptions { gl_cap: cfg.gl_cap, ..EngineOptions::default() });
        let Ok(out) = out else {
            engine.add(false);
            continue;
        };
        let l = out.labelling;
        engine.add(cpt::validate_cpt(&l).is_ok() && (!e.minimal || l.xy().0 == 0));
        let brute = oracle::enumerate_gl_subsets(&l).map(|r| r.holds).unwrap_or(false);
        gl.add(brute && cpt::generalized_laman_pebble(&l) && cpt::generalized_laman_dual(&l).unwrap_or(false));
        if 2 * e.graph.edge_count() <= cfg.search_cap {
            let all = oracle::search_all_cpt_labellings(&e.graph, cfg.search_cap)?;
            search.add(all.contains(&l));
        }
        let s = stretch::stretch(&l, &stretch_options(cfg));
        stretched.add(s.is_ok_and(|o| stretch::labels_from_drawing(&o.embedding.widen(), cfg.angle_eps).as_ref() == Some(&l)));
    }
    rows.push(("engine output is a CPT (pointed when minimal)", engine));
    rows.push(("enumeration = pebble game = dual form", gl));
    rows.push(("engine output found by exhaustive search", search));
    rows.push(("stretch round trip", stretched));

    let mut all_ok = true;
    for (name, row) in &rows {
        let ok = row.disagreements == 0;
        all_ok &= ok;
        println!("{:<48} {:>6} checked {:>4} disagreements  {}", name, row.checked, row.disagreements, if ok { "PASS" } else { "FAIL" });
        report.verdict(name, row);
    }
    report.verdict("pass", all_ok);
    Ok(if all_ok { EXIT_OK } else { EXIT_INTERNAL })
}

#[derive(Serialize)]
struct ManifestEntry {
    name: String,
    minimal: bool,
    n: usize,
    e: usize,
    graph: PathBuf,
    labels: PathBuf,
    coords: PathBuf,
}

/// Writes seeded Henneberg and augmented instances with their labellings
/// and certified drawings, plus a manifest.
pub fn gen_corpus(report: &mut RunReport, cfg: &Config, out_dir: &Path, n_max: usize) -> CmdResult<i32> {
    if n_max < 3 {
        return Err(Failure::input("--n-max must be at least 3"));
    }
    let mut entries = henneberg_corpus(n_max, cfg.iters, cfg.seed);
    if n_max >= 4 {
        entries.extend(augmented_corpus(n_max, cfg.iters.div_ceil(2), cfg.seed.wrapping_add(1)));
    }
    let mut manifest = Vec::new();
    for e in &entries {
        let l = label_cpt_traced(&e.graph, &EngineOptions { gl_cap: cfg.gl_cap, ..EngineOptions::default() })?.labelling;
        let out = stretch::stretch(&l, &stretch_options(cfg))?;
        let rel = |kind: &str| PathBuf::from(format!("{}.{kind}.json", e.name));
        write_json(&out_dir.join(rel("graph")), &e.graph.to_file())?;
        write_json(&out_dir.join(rel("labels")), &l.to_file())?;
        write_json(&out_dir.join(rel("coords")), &out.embedding.to_file())?;
        manifest.push(ManifestEntry {
            name: e.name.clone(),
            minimal: e.minimal,
            n: e.graph.n(),
            e: e.graph.edge_count(),
            graph: rel("graph"),
            labels: rel("labels"),
            coords: rel("coords"),
        });
    }
    write_json(&out_dir.join("manifest.json"), &json!({ "seed": cfg.seed, "n_max": n_max, "instances": manifest }))?;
    report.verdict("instances", manifest.len());
    println!("wrote {} instances to {}", manifest.len(), out_dir.display());
    Ok(EXIT_OK)
}
