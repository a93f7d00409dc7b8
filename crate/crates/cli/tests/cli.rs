use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rclg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rclg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn example31_is_coloured_with_2t_colours() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let dot = dir.path().join("l.dot");
    let out = rclg(&[
        "color",
        "--family",
        "example31",
        "--t",
        "3",
        "--theorem",
        "31",
        "--json",
        path_str(&report),
        "--dot",
        path_str(&dot),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("colors used: 6"));
    let v = json(&report);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["colors_used"], 6);
    assert_eq!(v["verified"], true);
    assert_eq!(v["bound_name"], "n2 - t");
    assert_eq!(v["coloring"].as_array().unwrap().len(), 17);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("// palette: 1=#"));
    assert!(dot.contains("graph L {"));
}

#[test]
fn petersen_cubic_and_iterated() {
    let out = rclg(&["color", "--family", "petersen", "--theorem", "cubic"]);
    assert_eq!(code(&out), 0);
    let used: usize = stdout(&out)
        .lines()
        .find_map(|l| l.strip_prefix("colors used: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(used <= 11);

    let out = rclg(&[
        "color",
        "--family",
        "path",
        "--n",
        "7",
        "--theorem",
        "iterated",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("colors used: 4"));
}

#[test]
fn triangle_free_file_uses_n2_colours() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    // spider with three legs of length two: n2 = 4
    std::fs::write(&g, "# spider\n7 6\n0 1\n1 2\n0 3\n3 4\n0 5\n5 6\n").unwrap();
    let out = rclg(&["color", "--file", path_str(&g), "--theorem", "32"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("t=0"));
    assert!(stdout(&out).contains("colors used: 4"));
}

#[test]
fn colour_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.txt");
    let out = rclg(&[
        "color",
        "--family",
        "complete_bipartite",
        "--a",
        "3",
        "--b",
        "3",
        "--theorem",
        "cubic",
        "--out",
        path_str(&c),
    ]);
    assert_eq!(code(&out), 0);
    let out = rclg(&[
        "verify",
        "--family",
        "complete_bipartite",
        "--a",
        "3",
        "--b",
        "3",
        "--line",
        "2",
        "--coloring",
        path_str(&c),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verified: true"));
}

#[test]
fn failed_verification_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.txt");
    let report = dir.path().join("v.json");
    // L(P5) = P4 with one colour is not rainbow connected
    std::fs::write(&c, "1\n1\n1\n").unwrap();
    let out = rclg(&[
        "verify",
        "--family",
        "path",
        "--n",
        "5",
        "--coloring",
        path_str(&c),
        "--json",
        path_str(&report),
    ]);
    assert_eq!(code(&out), 2);
    let v = json(&report);
    assert_eq!(v["verified"], false);
    assert_eq!(v["failing_pair"], serde_json::json!([0, 2]));
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("loop.txt");
    std::fs::write(&g, "2 1\n0 0\n").unwrap();
    let out = rclg(&["gen", "--file", path_str(&g)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    assert_eq!(code(&rclg(&["color", "--no-such-flag"])), 3);
    assert_eq!(code(&rclg(&["gen", "--family", "nonsense"])), 3);
    assert_eq!(
        code(&rclg(&["gen", "--model", "gnp", "--n", "5", "--p", "0.5"])),
        3
    );
    assert_eq!(
        code(&rclg(&[
            "color",
            "--family",
            "cycle",
            "--n",
            "5",
            "--theorem",
            "cubic"
        ])),
        3
    );
    // two sources at once
    assert_eq!(
        code(&rclg(&["gen", "--family", "petersen", "--file", "x"])),
        3
    );
    // a non-forest packing cannot drive the forest bound
    let out = rclg(&[
        "color",
        "--family",
        "triangle_ring",
        "--r",
        "3",
        "--theorem",
        "31",
        "--pack",
        "exact",
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(code(&rclg(&["--help"])), 0);
}

#[test]
fn resource_limits_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("e.json");
    let out = rclg(&["exact", "--family", "petersen", "--json", path_str(&report)]);
    assert_eq!(code(&out), 4);
    let v = json(&report);
    assert_eq!(v["exact_rc"], Value::Null);
    assert_eq!(v["lower"], 3);

    let out = rclg(&[
        "color",
        "--family",
        "complete",
        "--n",
        "7",
        "--pack",
        "exact",
        "--exact-cap",
        "5",
    ]);
    assert_eq!(code(&out), 4);
    // the implicit default falls back to greedy instead
    let out = rclg(&[
        "color",
        "--family",
        "complete",
        "--n",
        "7",
        "--exact-cap",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("packing greedy"));
}

#[test]
fn exact_calibration() {
    for (family, n, rc) in [("complete", "5", 1), ("cycle", "7", 4), ("path", "6", 5)] {
        let out = rclg(&["exact", "--family", family, "--n", n, "--line", "0"]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), format!("rc(G) = {rc}"));
    }
}

#[test]
fn reports_are_byte_identical_for_the_same_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let p = dir.path().join(name);
        let mut args = extra.to_vec();
        args.extend(["--json", path_str(&p)]);
        let out = rclg(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        std::fs::read(p).unwrap()
    };
    let color = [
        "color", "--model", "gnp", "--n", "9", "--p", "0.5", "--seed", "42",
    ];
    let a = run("a.json", &color);
    let b = run("b.json", &color);
    assert_eq!(a, b);

    let bench = [
        "bench", "--model", "gnp", "--n", "7", "--p", "0.4", "--count", "12", "--seed", "3",
    ];
    let a = run("c.json", &bench);
    let mut seq = bench.to_vec();
    seq.push("--sequential");
    let b = run("d.json", &seq);
    assert_eq!(a, b);

    let other = [
        "bench", "--model", "gnp", "--n", "7", "--p", "0.4", "--count", "12", "--seed", "4",
    ];
    assert_ne!(a, run("e.json", &other));
}

#[test]
fn bench_tables() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("b.json");
    let out = rclg(&[
        "bench",
        "--model",
        "random_cubic",
        "--n",
        "8",
        "--count",
        "20",
        "--seed",
        "1",
        "--json",
        path_str(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 21);
    let v = json(&report);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_verified"], true);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["bound_n_plus_1"], 9);
        assert!(row["colors_cubic"].as_u64().unwrap() <= 9);
        assert_eq!(row["verified"], true);
    }

    let out = rclg(&[
        "bench", "--model", "gnp", "--n", "8", "--p", "0.4", "--count", "0", "--seed", "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn gen_and_linegraph_edge_lists() {
    let out = rclg(&["gen", "--family", "example32", "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "5 5\n0 1\n1 2\n0 2\n2 3\n3 4\n");

    let out = rclg(&["linegraph", "--family", "example32", "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("L: 5 vertices"));
    assert!(stderr(&out).contains("diameter 3"));

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("k.json");
    let out = rclg(&[
        "linegraph",
        "--family",
        "friendship",
        "--f",
        "2",
        "--cliques",
        "--json",
        path_str(&report),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&report);
    assert_eq!(
        v["clique_graph"]["maximal_cliques"]
            .as_array()
            .unwrap()
            .len(),
        2
    );

    let out = rclg(&["linegraph", "--family", "path", "--n", "3", "--line", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn bound_lists_every_applicable_bound() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("b.json");
    let out = rclg(&[
        "bound",
        "--family",
        "complete",
        "--n",
        "4",
        "--json",
        path_str(&report),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&report);
    assert_eq!(v["bounds"]["L2: n + 1"], 5);
    assert_eq!(v["bounds"]["L2: m - m1"], 6);
    assert_eq!(v["bounds"]["L: n2 - t"], 3);
    assert_eq!(v["diameter_l"], 2);
}
