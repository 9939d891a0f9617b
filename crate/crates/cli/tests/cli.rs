//! End-to-end runs of the `cptkit` binary on fixture files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cptkit::corpus;
use cptkit::plane_graph::PlaneGraph;
use cptkit::stretch::CoordsFile;
use cptkit::surfaces::fixtures;
use tempfile::TempDir;

fn cptkit(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cptkit"));
    cmd.args(args);
    for var in ["CPT_GL_CAP", "CPT_SEARCH_CAP", "CPT_ANGLE_EPS", "CPT_SNAP_BITS"] {
        cmd.env_remove(var);
    }
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, value: &impl serde::Serialize) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(value).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn graph_file(dir: &Path, name: &str, g: &PlaneGraph) -> PathBuf {
    write(dir, name, &g.to_file())
}

#[test]
fn pipeline_on_mercedes_emits_svg_and_coords() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(dir.path(), "mercedes.json", &corpus::mercedes());
    let out = dir.path().join("out");
    let o = cptkit(&["pipeline", "--graph", s(&g), "--out-dir", s(&out), "--require-pointed"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(out.join("drawing.svg")).unwrap();
    assert_eq!(svg.matches("<path").count(), 3);
    let coords: CoordsFile = serde_json::from_str(&std::fs::read_to_string(out.join("coords.json")).unwrap()).unwrap();
    assert_eq!(coords.coords.len(), 6);

    let labels = out.join("labels.json");
    let coords = out.join("coords.json");
    let o = cptkit(&["verify", "--graph", s(&g), "--labels", s(&labels), "--coords", s(&coords)], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = cptkit(&["check-gl", "--graph", s(&g), "--labels", s(&labels)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generalized Laman: true"));
}

#[test]
fn four_cycle_is_flexible() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(dir.path(), "c4.json", &corpus::cycle(4));
    let o = cptkit(&["check-rigid", "--graph", s(&g)], &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("flexible (1 degrees of freedom)"));
    let o = cptkit(&["label", "--graph", s(&g), "--out", s(&dir.path().join("l.json"))], &[]);
    assert_eq!(o.status.code(), Some(3));
    let o = cptkit(&["check-rigid", "--graph", s(&graph_file(dir.path(), "k4.json", &corpus::k4()))], &[]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tampered_coordinates_name_the_angle() {
    let dir = TempDir::new().unwrap();
    let l = corpus::mercedes_labelling();
    let g = graph_file(dir.path(), "g.json", l.graph());
    let labels = write(dir.path(), "l.json", &l.to_file());
    let mut coords: Vec<[f64; 2]> = corpus::MERCEDES_COORDS.iter().map(|&(x, y)| [x, y]).collect();
    let good = write(dir.path(), "good.json", &CoordsFile { coords: coords.clone() });
    let o = cptkit(&["verify", "--graph", s(&g), "--labels", s(&labels), "--coords", s(&good)], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    coords[3][1] = -1000.0;
    let bad = write(dir.path(), "bad.json", &CoordsFile { coords });
    let report = dir.path().join("report.json");
    let o = cptkit(&["verify", "--graph", s(&g), "--labels", s(&labels), "--coords", s(&bad), "--report", s(&report)], &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("angle at vertex 3"), "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["exit_code"], 3);
    assert_eq!(r["verdicts"]["valid"], false);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(dir.path(), "g.json", &corpus::octahedron());
    let run = |tag: &str| {
        let report = dir.path().join(format!("{tag}.json"));
        let out = dir.path().join(tag);
        let o = cptkit(&["pipeline", "--graph", s(&g), "--out-dir", s(&out), "--seed", "7", "--report", s(&report)], &[]);
        assert_eq!(o.status.code(), Some(0));
        (std::fs::read(report).unwrap(), std::fs::read(out.join("coords.json")).unwrap())
    };
    let (a, ca) = run("a");
    let (b, cb) = run("b");
    assert_eq!(a, b);
    assert_eq!(ca, cb);
    let r: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["inputs"]["graph"].as_str().unwrap().len(), 64);
    assert!(r.get("timings_ms").is_none());
}

#[test]
fn require_pointed_and_trace() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(dir.path(), "oct.json", &corpus::octahedron());
    let trace = dir.path().join("trace.jsonl");
    let out = dir.path().join("l.json");
    let o = cptkit(&["label", "--graph", s(&g), "--out", s(&out), "--trace", s(&trace)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let lines = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(lines.lines().count(), 4);
    assert!(lines.lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
    let o = cptkit(&["label", "--graph", s(&g), "--out", s(&out), "--require-pointed"], &[]);
    assert_eq!(o.status.code(), Some(3));
    let o = cptkit(&["check-cpt", "--graph", s(&g), "--labels", s(&out)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("e = 12, x = 3, y = 3"), "{}", stdout(&o));
}

#[test]
fn non_generalized_laman_inputs_are_refused() {
    let dir = TempDir::new().unwrap();
    let l = corpus::light_non_pointed_pair();
    let g = graph_file(dir.path(), "g.json", l.graph());
    let labels = write(dir.path(), "l.json", &l.to_file());
    let o = cptkit(&["check-gl", "--graph", s(&g), "--labels", s(&labels)], &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("generalized Laman: false"));
    let o = cptkit(&["stretch", "--graph", s(&g), "--labels", s(&labels), "--out", s(&dir.path().join("c.json"))], &[]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_inputs_exit_with_input_error() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "rotations": [[1], [0, 2], [1, 5]], "outer": [0, 1]}"#).unwrap();
    let o = cptkit(&["check-rigid", "--graph", s(&bad)], &[]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("names vertex 5"));
    let o = cptkit(&["check-rigid", "--graph", s(&dir.path().join("missing.json"))], &[]);
    assert_eq!(o.status.code(), Some(4));

    let g = graph_file(dir.path(), "k3.json", &corpus::k3());
    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, r#"{"angles": [{"face": 0, "index": 0, "label": "big"}]}"#).unwrap();
    let o = cptkit(&["check-cpt", "--graph", s(&g), "--labels", s(&partial)], &[]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn environment_overrides_are_echoed() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(dir.path(), "g.json", &corpus::k4());
    let report = dir.path().join("r.json");
    let envs = [("CPT_SNAP_BITS", "20"), ("CPT_ANGLE_EPS", "1e-7"), ("CPT_GL_CAP", "12"), ("CPT_SEARCH_CAP", "20")];
    let o = cptkit(&["check-rigid", "--graph", s(&g), "--report", s(&report)], &envs);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["config"]["snap_bits"], 20);
    assert_eq!(r["config"]["angle_eps"], 1e-7);
    assert_eq!(r["config"]["gl_cap"], 12);
    assert_eq!(r["config"]["search_cap"], 20);
    let o = cptkit(&["check-rigid", "--graph", s(&g)], &[("CPT_SNAP_BITS", "lots")]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn surface_check_reports_the_surface() {
    let dir = TempDir::new().unwrap();
    let k6 = write(dir.path(), "k6.json", &fixtures::k6_projective().to_file());
    let o = cptkit(&["surface-check", "--graph", s(&k6)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("orientable = false, g = 1"), "{}", stdout(&o));

    let cube = fixtures::cube_sphere_cpt();
    let g = write(dir.path(), "cube.json", &cube.graph.to_file());
    let l = write(dir.path(), "cube-labels.json", &cube.to_file());
    let o = cptkit(&["surface-check", "--graph", s(&g), "--labels", s(&l)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("orientable = true, g = 0, x = 2, y = 6, e = 12"), "{text}");
    assert!(text.contains("holds"));
}

#[test]
fn stretch_and_draw() {
    let dir = TempDir::new().unwrap();
    let l = corpus::mercedes_labelling();
    let g = graph_file(dir.path(), "g.json", l.graph());
    let labels = write(dir.path(), "l.json", &l.to_file());
    let coords = dir.path().join("c.json");
    let svg = dir.path().join("a.svg");
    let o = cptkit(&["stretch", "--graph", s(&g), "--labels", s(&labels), "--out", s(&coords), "--svg", s(&svg)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let drawn = dir.path().join("b.svg");
    let o = cptkit(&["draw", "--graph", s(&g), "--coords", s(&coords), "--labels", s(&labels), "--out", s(&drawn)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(svg).unwrap(), std::fs::read(drawn).unwrap());
    let o = cptkit(&["laman-sub", "--graph", s(&g)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["laman_edges"].as_array().unwrap().len(), 9);
}

#[test]
fn selftest_and_corpus_generation() {
    let dir = TempDir::new().unwrap();
    let o = cptkit(&["selftest", "--iters", "30", "--seed", "3"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 5);
    let out = dir.path().join("corpus");
    let o = cptkit(&["gen-corpus", "--out-dir", s(&out), "--iters", "6", "--n-max", "8"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let instances = manifest["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 9);
    let first = &instances[0];
    let g = out.join(first["graph"].as_str().unwrap());
    let l = out.join(first["labels"].as_str().unwrap());
    let c = out.join(first["coords"].as_str().unwrap());
    let o = cptkit(&["verify", "--graph", s(&g), "--labels", s(&l), "--coords", s(&c)], &[]);
    assert_eq!(o.status.code(), Some(0));
}
