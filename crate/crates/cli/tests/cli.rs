use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use layersep::formats;
use layersep::layouts::{verify_track_layout, TrackLayout, TrackViolation};
use layersep::Exec;
use serde_json::Value;
use tempfile::TempDir;

fn layersep(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layersep")).current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn manifest(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn decompose_torus_within_width_seven() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&layersep(d.path(), &["gen", "torus", "--size", "6", "-o", "torus"])), 0);
    let o = layersep(d.path(), &["decompose", "--embedded", "torus.rot", "--root", "0", "-o", "torus.ld"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(d.path(), "torus.ld.manifest.json");
    assert!(m["realised"]["layered_width"]["value"].as_u64().unwrap() <= 7);
    assert_eq!(m["verdicts"]["decomposition"], "pass");
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let ld = formats::parse_layered(&read(d.path(), "torus.ld")).unwrap();
    assert_eq!(formats::write_layered(&ld), read(d.path(), "torus.ld"));
}

#[test]
fn nonrep_planar_passes() {
    let d = TempDir::new().unwrap();
    layersep(d.path(), &["--seed", "3", "gen", "triangulation", "--size", "40", "-o", "planar"]);
    let o = layersep(d.path(), &["nonrep", "planar.g", "--verify-max-path", "40", "-o", "planar.col"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(d.path(), "planar.col.manifest.json");
    assert_eq!(m["verdicts"]["nonrepetitive"], "pass");
    assert_eq!(m["verdicts"]["proper"], "pass");
    assert_eq!(m["parameters"]["max_path"], 40);
    let f = formats::parse_colouring(&read(d.path(), "planar.col")).unwrap();
    assert_eq!(formats::write_colouring(&f.colouring, f.bound), read(d.path(), "planar.col"));
    assert_eq!(code(&layersep(d.path(), &["verify", "nonrep", "planar.col", "planar.g"])), 0);
}

#[test]
fn corrupted_track_layout_exits_one_with_crossing() {
    let d = TempDir::new().unwrap();
    layersep(d.path(), &["gen", "triangulation", "--size", "30", "-o", "p"]);
    assert_eq!(code(&layersep(d.path(), &["tracks", "p.g", "-o", "p.trk"])), 0);
    let g = formats::parse_graph(&read(d.path(), "p.g")).unwrap();
    let tl = formats::parse_tracks(&read(d.path(), "p.trk")).unwrap();
    // reverse single tracks until an X-crossing appears
    let corrupted = (0..tl.num_tracks())
        .map(|i| {
            let mut tracks = tl.tracks().to_vec();
            tracks[i].reverse();
            TrackLayout::new(tl.n(), tracks).unwrap()
        })
        .find(|c| matches!(verify_track_layout(&g, c, Exec::Sequential), Err(TrackViolation::XCrossing(..))))
        .expect("some reversal crosses");
    fs::write(d.path().join("bad.trk"), formats::write_tracks(&corrupted)).unwrap();
    let o = layersep(d.path(), &["verify", "tracks", "bad.trk", "p.g"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("X-crossing") || err.contains("cross"), "{err}");
}

#[test]
fn invalid_inputs_exit_two() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("bad.g"), "3 2\n0 1\n1 x\n").unwrap();
    let o = layersep(d.path(), &["tracks", "bad.g"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    layersep(d.path(), &["gen", "complete", "--size", "5", "-o", "k5"]);
    assert_eq!(code(&layersep(d.path(), &["tracks", "k5.g"])), 2);
    assert_eq!(code(&layersep(d.path(), &["gen", "hypercube"])), 2);
    assert_eq!(code(&layersep(d.path(), &["verify", "tracks", "missing.trk", "k5.g"])), 2);
}

#[test]
fn every_artifact_round_trips_and_verifies() {
    let d = TempDir::new().unwrap();
    layersep(d.path(), &["--seed", "5", "gen", "triangulation", "--size", "25", "-o", "t"]);
    let steps: [(&[&str], &str, &str); 6] = [
        (&["decompose", "t.g", "-o", "t.ld"], "t.ld", "decomposition"),
        (&["separate", "t.g", "-o", "t.sep"], "t.sep", "separation"),
        (&["tracks", "t.g", "-o", "t.trk"], "t.trk", "tracks"),
        (&["queues", "t.g", "-o", "t.q"], "t.q", "queues"),
        (&["nonrep", "t.g", "-o", "t.col"], "t.col", "nonrep"),
        (&["draw3d", "t.g", "-o", "t.xyz", "--svg", "t.svg", "--obj", "t.obj"], "t.xyz", "drawing"),
    ];
    for (args, file, kind) in steps {
        let o = layersep(d.path(), args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let text = read(d.path(), file);
        let again = match kind {
            "decomposition" => formats::write_layered(&formats::parse_layered(&text).unwrap()),
            "separation" => formats::write_separation(&formats::parse_separation(&text).unwrap()),
            "tracks" => formats::write_tracks(&formats::parse_tracks(&text).unwrap()),
            "queues" => formats::write_queues(&formats::parse_queues(&text).unwrap()),
            "nonrep" => {
                let f = formats::parse_colouring(&text).unwrap();
                formats::write_colouring(&f.colouring, f.bound)
            }
            _ => formats::write_drawing(&formats::parse_drawing(&text).unwrap()),
        };
        assert_eq!(again, text, "{file}");
        let o = layersep(d.path(), &["verify", kind, file, "t.g"]);
        assert_eq!(code(&o), 0, "verify {kind}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert!(read(d.path(), "t.svg").starts_with("<svg"));
    assert!(read(d.path(), "t.obj").starts_with("v "));
    let o = layersep(d.path(), &["verify", "rotation", "t.rot", "t.g"]);
    assert_eq!(code(&o), 0);
    let m = manifest(d.path(), "t.xyz.manifest.json");
    let vol = &m["realised"]["volume"];
    assert!(vol["value"].as_u64().unwrap() <= vol["bound"].as_u64().unwrap());
}

#[test]
fn rich_drivers_and_log2_mode() {
    let d = TempDir::new().unwrap();
    layersep(d.path(), &["--seed", "2", "gen", "chordal", "--size", "30", "--k", "3", "-o", "c"]);
    for cmd in ["tracks", "nonrep"] {
        let out = format!("c.{cmd}");
        let o = layersep(d.path(), &[cmd, "c.g", "--rich", "c.rich", "--solver", "singleton", "-o", &out]);
        assert_eq!(code(&o), 0, "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        let m = manifest(d.path(), &format!("{out}.manifest.json"));
        assert_eq!(m["verdicts"]["bounds"], "pass");
    }
    assert_eq!(code(&layersep(d.path(), &["verify", "rich", "c.rich", "c.g"])), 0);
    layersep(d.path(), &["gen", "grid", "--size", "6", "-o", "g"]);
    let o = layersep(d.path(), &["--log2", "tracks", "g.g", "-o", "g.trk"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(manifest(d.path(), "g.trk.manifest.json")["parameters"]["log2"], true);
}

#[test]
fn gen_is_deterministic() {
    let d = TempDir::new().unwrap();
    let a = layersep(d.path(), &["--seed", "9", "gen", "wagner_v8", "--size", "5"]);
    let b = layersep(d.path(), &["--seed", "9", "gen", "wagner_v8", "--size", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_and_report() {
    let d = TempDir::new().unwrap();
    layersep(d.path(), &["gen", "triangulation", "--size", "30", "-o", "b"]);
    let o = layersep(d.path(), &["--jobs", "2", "bench", "b.g", "--repeat", "1", "-o", "b.txt", "--verify-max-path", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(d.path(), "b.txt.manifest.json");
    assert_eq!(m["verdicts"]["tracks"], "pass");
    assert!(m["timings_ms"]["tracks/parallel"].is_number());
    let o = layersep(d.path(), &["report", "b.txt.manifest.json"]);
    assert_eq!(code(&o), 0);
    let md = String::from_utf8_lossy(&o.stdout);
    assert!(md.contains("| b.txt.manifest.json | bench | tracks |"), "{md}");
}
