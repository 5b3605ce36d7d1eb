use std::collections::HashSet;
use std::path::Path;
use std::process::{Command, Output};

fn bookem(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bookem"))
        .args(args)
        .current_dir(dir)
        .env_remove("BOOKEM_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn k5_local_page_number_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(bookem(d, &["generate", "--family", "kn", "--n", "5", "-o", "k5.g"]).status.code(), Some(0));
    let out = bookem(d, &["solve", "--param", "pnl", "k5.g"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "pn_local = 2\n");
}

#[test]
fn crossing_pair_on_one_page_fails_book_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "g.txt", "4 2\n0 2\n1 3\n");
    write(d, "emb.txt", "spine: 0 1 2 3\npage 0: 0-2 1-3\n");
    let out = bookem(d, &["verify", "--expect", "book", "emb.txt", "g.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("0-2 crosses 1-3"));
    // The two edges are separate components, so the union check passes.
    assert_eq!(bookem(d, &["verify", "--expect", "union", "emb.txt", "g.txt"]).status.code(), Some(0));
    assert_eq!(bookem(d, &["verify", "--max-locality", "0", "emb.txt", "g.txt"]).status.code(), Some(1));
}

#[test]
fn k7_refined_bound() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bookem(d, &["generate", "--family", "kn", "--n", "7", "-o", "k7.g"]);
    let out = bookem(d, &["bound", "k7.g", "--pn-lower", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("refined local lower bound: 3\n"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(bookem(d, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(bookem(d, &["solve", "--param", "pq", "missing.g"]).status.code(), Some(2));
    assert_eq!(bookem(d, &["generate", "--family", "kn"]).status.code(), Some(2));
    write(d, "bad.g", "2 1\n0 0\n");
    let out = bookem(d, &["bound", "bad.g"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(bookem(d, &["--help"]).status.code(), Some(0));
}

#[test]
fn exhausted_budget_reports_interval() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bookem(d, &["generate", "--family", "kn", "--n", "7", "-o", "k7.g"]);
    let out = bookem(d, &["solve", "--param", "pnl", "--node-limit", "1", "k7.g"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).starts_with("pn_local in ["));
}

#[test]
fn generator_cap_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(bookem(d, &["generate", "--family", "path", "--n", "20001"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_bookem"))
        .args(["generate", "--family", "path", "--n", "5"])
        .env("BOOKEM_MAX_VERTICES", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_bookem"))
        .args(["generate", "--family", "path", "--n", "25000"])
        .env("BOOKEM_MAX_VERTICES", "30000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("25000 24999\n"));
}

#[test]
fn generated_families_have_expected_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for (args, header) in [
        (vec!["--family", "knm", "--a", "3", "--b", "3"], "6 9"),
        (vec!["--family", "stacked", "--level", "2"], "11 27"),
        (vec!["--family", "ktree", "--k", "3", "--n", "10", "--seed", "5"], "10 24"),
        (vec!["--family", "cycle", "--n", "6"], "6 6"),
    ] {
        let mut full = vec!["generate"];
        full.extend(args);
        let out = bookem(d, &full);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).lines().next(), Some(header));
    }
}

fn arc_colors(svg: &str) -> HashSet<String> {
    svg.lines()
        .filter(|l| l.starts_with("<path"))
        .filter_map(|l| l.split("stroke=\"").nth(1)?.split('"').next().map(String::from))
        .collect()
}

#[test]
fn render_path_and_k5_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "p3.g", "3 2\n0 1\n1 2\n");
    write(d, "p3.e", "spine: 0 1 2\npage 0: 0-1 1-2\n");
    let svg = stdout(&bookem(d, &["render", "p3.e", "p3.g"]));
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<path").count(), 2);
    assert_eq!(arc_colors(&svg).len(), 1);

    bookem(d, &["generate", "--family", "kn", "--n", "5", "-o", "k5.g"]);
    let out = bookem(d, &["solve", "--param", "pn", "--cert", "k5.e", "k5.g"]);
    assert_eq!(stdout(&out), "pn = 3\n");
    let svg = stdout(&bookem(d, &["render", "k5.e", "k5.g"]));
    assert_eq!(svg.matches("<path").count(), 10);
    assert_eq!(arc_colors(&svg).len(), 3);
    assert_eq!(svg, stdout(&bookem(d, &["render", "k5.e", "k5.g"])));

    write(d, "e.g", "3 0\n");
    write(d, "e.e", "spine: 2 0 1\n");
    let svg = stdout(&bookem(d, &["render", "e.e", "e.g"]));
    assert_eq!(svg.matches("<path").count(), 0);
    assert_eq!(svg.matches("<circle").count(), 3);
}

#[test]
fn constructions_pass_the_verifier() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bookem(d, &["generate", "--family", "stacked", "--level", "3", "-o", "t3.g"]);
    bookem(d, &["generate", "--family", "ktree", "--k", "2", "--n", "15", "--seed", "3", "-o", "kt.g"]);
    bookem(d, &["generate", "--family", "kn", "--n", "9", "-o", "k9.g"]);
    bookem(d, &["generate", "--family", "kn", "--n", "6", "-o", "k6.g"]);
    let cases: [(&[&str], &str, &str); 6] = [
        (&["construct", "--method", "star-union", "t3.g"], "t3.g", "union"),
        (&["construct", "--method", "star-local", "t3.g"], "t3.g", "book"),
        (&["construct", "--method", "star-local", "--orientation", "out-degree", "t3.g"], "t3.g", "book"),
        (&["construct", "--method", "ktree-colors", "kt.g"], "kt.g", "union"),
        (&["construct", "--method", "kn-zigzag", "--n", "9"], "k9.g", "book"),
        (&["template", "--n", "6", "--locality", "2", "--shifts", "3"], "k6.g", "book"),
    ];
    for (args, graph, kind) in cases {
        let mut full = args.to_vec();
        full.extend(["-o", "out.e"]);
        assert_eq!(bookem(d, &full).status.code(), Some(0), "{args:?}");
        let out = bookem(d, &["verify", "--expect", kind, "out.e", graph]);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    }
    let out = bookem(d, &["verify", "--max-locality", "2", "out.e", "k6.g"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn template_outcomes_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let none = bookem(d, &["template", "--n", "4", "--locality", "1", "--templates", "3", "--shifts", "2"]);
    assert_eq!(none.status.code(), Some(1));
    let budget = bookem(d, &["template", "--n", "11", "--locality", "4", "--shifts", "11", "--node-limit", "1"]);
    assert_eq!(budget.status.code(), Some(3));
    let infeasible = bookem(d, &["template", "--n", "6", "--locality", "2", "--shifts", "4"]);
    assert_eq!(infeasible.status.code(), Some(2));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bookem(d, &["generate", "--family", "ktree", "--k", "3", "--n", "20", "--seed", "9", "-o", "a.g"]);
    bookem(d, &["generate", "--family", "ktree", "--k", "3", "--n", "20", "--seed", "9", "-o", "b.g"]);
    assert_eq!(std::fs::read(d.join("a.g")).unwrap(), std::fs::read(d.join("b.g")).unwrap());
    for args in [
        &["bound", "a.g"][..],
        &["construct", "--method", "star-union", "a.g"],
        &["solve", "--param", "pn", "--spine", "s.e", "a.g"],
    ] {
        write(d, "s.e", &format!("spine: {}\n", (0..20).rev().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")));
        assert_eq!(stdout(&bookem(d, args)), stdout(&bookem(d, args)), "{args:?}");
    }
}
