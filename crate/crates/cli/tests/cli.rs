use std::path::Path;
use std::process::{Command, Output};

use postlat::constraints::{build_j, build_p, write_relation_file};
use postlat::Relation;

fn postlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_postlat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fn_subcommands() {
    let o = postlat(&["fn", "classify", "w2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("W^2"));

    let o = postlat(&["fn", "props", "expr:x1 -> x2"]);
    let text = stdout(&o);
    let members: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    for want in ["Ω_11", "W^∞", "B^∞"] {
        assert!(members.contains(&want), "{text}");
    }

    assert_eq!(stdout(&postlat(&["fn", "anf", "expr:x1 + x1"])), "0\n");
    assert_eq!(
        stdout(&postlat(&["fn", "table", "expr:x1->x2", "maj"])),
        "2:D zeros {10}\n3:E8 zeros {000,100,010,001}\n"
    );
    assert_eq!(stdout(&postlat(&["fn", "classify", "expr:x1+x2", "0:1"])).lines().next(), Some("L"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(postlat(&["fn", "table", "3:FFFF"]).status.code(), Some(2));
    assert_eq!(postlat(&["fn", "table", "expr:x1 &"]).status.code(), Some(2));
    assert_eq!(postlat(&["fn", "table"]).status.code(), Some(2));
    assert_eq!(postlat(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(postlat(&["interval", "M", "--max-arity", "3"]).status.code(), Some(2));
    assert_eq!(postlat(&["closure", "--kind", "clone", "--max-arity", "7", "2:6"]).status.code(), Some(2));
    assert_eq!(postlat(&["bogus"]).status.code(), Some(2));
}

#[test]
fn closures() {
    let o = postlat(&["closure", "--kind", "idempotent", "--max-arity", "4", "expr:x1+x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# exact\nmax_arity 4\n0:0\n2:6\n4:6996\n");

    // {1, x1, x1 -> x2, x1 | x2}
    let o = postlat(&["closure", "--kind", "clone", "--max-arity", "2", "expr:x1->x2"]);
    assert_eq!(stdout(&o), "# exact\nmax_arity 2\n0:1\n1:2\n2:D\n2:E\n");

    let o = postlat(&["closure", "--kind", "equational", "--max-arity", "1", "1:2"]);
    assert_eq!(stdout(&o), "# exact\nmax_arity 1\n1:2\n");

    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k.txt", "max_arity 2\n2:D\n");
    let o = postlat(&["closure", "--kind", "iterative", "--max-arity", "2", "--input", &input]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\n2:D\n"));
}

#[test]
fn constraints() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.txt", "arity 2\n00\n10\n01\n");
    let q = write(dir.path(), "q.txt", "# nonzero\narity 2\n10\n01\n11\n");

    let o = postlat(&["constraint", "--p", &p, "--q", &q, "--strong", "expr:x1 -> x2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = postlat(&["constraint", "--p", &p, "--q", &q, "--strong", "expr:x1 | x2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "2:E violates (P, Q)\nmatrix rows 00 00\nimage 00\n");

    let p3 = write(dir.path(), "p3.txt", &write_relation_file(&build_p(3).unwrap()));
    let nz = write(dir.path(), "nz.txt", &write_relation_file(&Relation::nonzero(3).unwrap()));
    let o = postlat(&["constraint", "--p", &p3, "--q", &nz, "fn3"]);
    assert_eq!(o.status.code(), Some(1));
    // the first violation in enumeration order is J_3 up to the order of its rows
    let j3 = build_j(3).unwrap().to_string();
    let mut want: Vec<&str> = j3.lines().collect();
    want.sort();
    let text = stdout(&o);
    let line = text.lines().find_map(|l| l.strip_prefix("matrix rows ")).unwrap();
    let mut got: Vec<&str> = line.split(' ').collect();
    got.sort();
    assert_eq!(got, want);
    let o = postlat(&["constraint", "--p", &p3, "--q", &nz, "fn4"]);
    assert_eq!(o.status.code(), Some(0));

    let bad = write(dir.path(), "bad.txt", "arity 2\n012\n");
    assert_eq!(postlat(&["constraint", "--p", &bad, "--q", &q, "2:D"]).status.code(), Some(2));
    let wide = write(dir.path(), "wide.txt", "arity 3\n111\n");
    assert_eq!(postlat(&["constraint", "--p", &p, "--q", &wide, "2:D"]).status.code(), Some(2));
}

#[test]
fn enumeration_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.txt", "arity 2\n00\n01\n");
    let q = write(dir.path(), "q.txt", "arity 2\n00\n01\n11\n");
    let o = Command::new(env!("CARGO_BIN_EXE_postlat"))
        .args(["constraint", "--p", &p, "--q", &q, "maj"])
        .env("POSTLAT_MAX_MATRICES", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_postlat"))
        .args(["constraint", "--p", &p, "--q", &q, "maj"])
        .env("POSTLAT_MAX_MATRICES", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn intervals() {
    let o = postlat(&["interval", "Omega", "--max-arity", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("interval Ω at max arity 3: 3 classes (complete)\n"), "{text}");
    assert!(text.contains("Ω > Ω_=\nΩ_= > R\n"));

    let o = postlat(&["interval", "L", "--max-arity", "4"]);
    assert!(stdout(&o).starts_with("interval L at max arity 4: 2 classes"));

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("w2.dot");
    let o = postlat(&["interval", "W", "--k", "2", "--max-arity", "4", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("interval W^2 at max arity 4: 3 classes (lower bound)\n"), "{text}");
    let skeletons: std::collections::BTreeSet<&str> =
        text.lines().filter_map(|l| l.split("skeleton ").nth(1)).map(|s| &s[..12]).collect();
    assert_eq!(skeletons.len(), 3);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph interval {\n"));
    assert_eq!(dot.matches("->").count(), 2);

    // identical runs give identical output
    assert_eq!(
        stdout(&postlat(&["interval", "W", "--k", "2", "--max-arity", "3"])),
        stdout(&postlat(&["interval", "W", "--k", "2", "--max-arity", "3"]))
    );
}

#[test]
fn verify_suites() {
    let o = postlat(&["verify", "unary"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS criterion  1 unary"));
    let o = postlat(&["verify", "gadgets"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("1 of 1 passed\n"));
}
