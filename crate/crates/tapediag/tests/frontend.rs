//! Text format, CLI and renderer, end to end.

use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use tapediag::ast::normalize_whitespace;
use tapediag::cli::{self, INVALID, OK, UNEQUAL, USAGE};
use tapediag::elab::load;
use tapediag::parser::{parse_module, parse_tape};
use tapediag::render::render_svg;

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "tape"))
        .collect();
    files.sort();
    files
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["tapediag"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn corpus_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn corpus_round_trips_and_checks() {
    let files = corpus();
    assert!(files.len() >= 10);
    for f in files {
        let src = fs::read_to_string(&f).unwrap();
        let m = parse_module(&src).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        assert_eq!(normalize_whitespace(&m.to_string()), normalize_whitespace(&src), "{}", f.display());
        assert_eq!(parse_module(&m.to_string()).unwrap().to_string(), m.to_string());
        let (code, out, err) = run(&["check", f.to_str().unwrap()]);
        assert_eq!((code, out.as_str(), err.as_str()), (OK, "", ""), "{}", f.display());
    }
}

#[test]
fn spec_examples() {
    let m = parse_module("gen AND : A A -> A;").unwrap();
    assert_eq!(m.decls[0].to_string(), "gen AND : A A -> A;");
    let p = load("sort A; gen AND : A A -> A;").unwrap();
    let g = p.sig.gen("AND").unwrap();
    assert_eq!((g.ar.to_string(), g.coar.to_string()), ("AA".into(), "A".into()));
    let p = load("def d = id0;").unwrap();
    let d = p.def("d").unwrap();
    assert_eq!(d.term, tapediag_core::tape::TapeTerm::IdZero);
    assert_eq!((d.dom.to_string(), d.cod.to_string()), ("0".into(), "0".into()));
}

#[test]
fn unicode_operators_are_aliases() {
    let a = parse_tape("id@A ⊗ id@B ⊕ id@C").unwrap();
    let b = parse_tape("id@A (x) id@B (+) id@C").unwrap();
    assert_eq!(a.to_string(), b.to_string());
    let p = load("sort A; sort B; def t = id@A (+) id@B; check t : A ⊕ B → A (+) B;");
    assert!(p.is_ok());
}

#[test]
fn diagnostics() {
    let e = parse_module("sort A;\ndef t = id@A (x) ;").unwrap_err();
    assert_eq!((e.pos.line, e.pos.col), (2, 18));
    assert!(e.expected.contains(&"`codiag@`".to_string()), "{e}");
    let e = parse_module("theory PCA with p = 0.5;").unwrap_err();
    assert!(e.message.contains("decimal"), "{e}");
    let e = load("sort A;\ndef t = codiag@B;").unwrap_err();
    assert_eq!((e.pos.line, e.pos.col), (2, 16));
    let e = load("sort A;\ndef t = u;\ndef u = id@A;").unwrap_err();
    assert!(e.message.contains("unknown definition `u`"), "{e}");
    let e = load("sort A; def t = id@A; def t = id@A;").unwrap_err();
    assert!(e.message.contains("already defined"), "{e}");
    let e = load("sort A; def t = op<+_3/2>@A;").unwrap_err();
    assert!(e.message.contains("3/2"), "{e}");
}

#[test]
fn normalize_command() {
    assert_eq!(run(&["normalize", "(A (+) 1) (x) (B (+) C)"]), (OK, "AB (+) AC (+) B (+) C\n".into(), String::new()));
    assert_eq!(run(&["normalize", "A (x) 0 (+) 1"]).1, "1\n");
    assert_eq!(run(&["normalize", "(A"]).0, INVALID);
}

#[test]
fn eval_command() {
    let (code, out, _) = run(&["eval", &corpus_file("flip.tape"), "--term", "flip", "--interp", "Bool"]);
    assert_eq!((code, out.as_str()), (OK, "[[2/3],[1/3]]\n"));
    let (code, out, _) = run(&["eval", &corpus_file("counting.tape"), "--term", "twice", "--interp", "Paths"]);
    assert_eq!((code, out.as_str()), (OK, "[[2,4],[0,2]]\n"));
}

#[test]
fn eq_exit_codes() {
    let mux = corpus_file("multiplexer.tape");
    let fail = corpus_file("multiplexer_fail.tape");
    assert_eq!(run(&["eq", &mux, "--left", "via_mux", "--right", "via_tapes", "--interp", "Bool"]), (OK, String::new(), String::new()));
    let (code, out, _) = run(&["eq", &fail, "--left", "via_mux", "--right", "via_tapes", "--interp", "Bool"]);
    assert_eq!(code, UNEQUAL);
    assert_eq!(out, "via_mux = via_tapes: differ at row 1, column 0: left 0, right 1/3\n");
    assert_eq!(run(&["eq", &fail, "--left", "via_mux", "--right", "nothing", "--interp", "Bool"]).0, OK);
    assert_eq!(run(&["eq", &fail, "--left", "via_mux", "--right", "mux", "--interp", "Bool"]).0, INVALID);
    assert_eq!(run(&["eq", &fail, "--left", "nope", "--right", "mux", "--interp", "Bool"]).0, USAGE);
    assert_eq!(run(&["eq", &fail, "--left", "mux", "--right", "mux", "--interp", "Nope"]).0, USAGE);
    assert_eq!(run(&["eq", &fail, "--left", "mux"]).0, USAGE);
    assert_eq!(run(&["eq", "/nonexistent.tape", "--left", "a", "--right", "b", "--interp", "I"]).0, USAGE);
    assert_eq!(run(&["frobnicate"]).0, USAGE);
}

#[test]
fn check_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.tape");
    fs::write(&f, "sort A;\ntheory PCA with p = 1/2;\ninterp I {\n  A = {0, 1};\n}\ndef a = codiag@A;\ndef b = sym+@A,A ; codiag@A;\ndef c = op<+_1/2>@A ; codiag@A;\ndef i = id@A;\ncheck a = b in I;\ncheck c = i in I;\n").unwrap();
    let (code, out, _) = run(&["check", f.to_str().unwrap()]);
    assert_eq!(code, OK, "{out}");
    fs::write(&f, "sort A;\ntheory CM;\ninterp I {\n  A = {0, 1};\n}\ndef c = op<+>@A ; codiag@A;\ndef i = id@A;\ncheck c = i in I;\n").unwrap();
    let (code, out, _) = run(&["check", f.to_str().unwrap()]);
    assert_eq!(code, UNEQUAL);
    assert!(out.contains("c = i in I: differ at row 0, column 0: left 2, right 1"), "{out}");
    fs::write(&f, "sort A;\ndef c = [id@A ; id@A (x) id@A];\n").unwrap();
    let (code, _, err) = run(&["check", f.to_str().unwrap()]);
    assert_eq!(code, INVALID);
    assert!(err.starts_with(&format!("{}:2:9:", f.display())), "{err}");
}

#[test]
fn suite_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.tape");
    fs::write(&f, "sort A;\ntheory CM;\ninterp I {\n  A = {0, 1};\n}\n").unwrap();
    let (code, out, _) = run(&["suite", f.to_str().unwrap(), "--interp", "I", "--seed", "7", "--bound", "instances=1", "--bound", "len=1", "--which", "axiom"]);
    assert_eq!(code, OK);
    assert!(out.lines().count() > 20);
    assert!(out.lines().all(|l| l.contains(" PASS")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("axiom/fc.codiag-assoc/")));
    let (again, _, _) = run(&["suite", f.to_str().unwrap(), "--interp", "I", "--bound", "depth=2"]);
    assert_eq!(again, USAGE);
}

#[test]
fn render_command() {
    let dir = tempfile::tempdir().unwrap();
    let o1 = dir.path().join("a.svg");
    let o2 = dir.path().join("b.svg");
    for o in [&o1, &o2] {
        let (code, out, err) = run(&["render", &corpus_file("multiplexer.tape"), "--term", "via_tapes", "-o", o.to_str().unwrap()]);
        assert_eq!((code, out.as_str(), err.as_str()), (OK, "", ""));
    }
    let (a, b) = (fs::read(&o1).unwrap(), fs::read(&o2).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    roxmltree::Document::parse(std::str::from_utf8(&a).unwrap()).unwrap();
}

fn svg_of(src: &str, name: &str) -> String {
    let p = load(src).unwrap();
    render_svg(&p.def(name).unwrap().term, &p.ctx()).unwrap()
}

/// y1 of a node plus the vertical translations of its ancestors.
fn abs_y(n: roxmltree::Node<'_, '_>) -> i32 {
    let own: i32 = n.attribute("y1").unwrap().parse().unwrap();
    own + n
        .ancestors()
        .filter_map(|a| a.attribute("transform"))
        .map(|t| t.trim_start_matches("translate(").trim_end_matches(')').split(',').nth(1).unwrap().parse::<i32>().unwrap())
        .sum::<i32>()
}

#[test]
fn two_lanes_for_a_sum() {
    let svg = svg_of("sort A; sort B; def t = id@(A (+) B);", "t");
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let wires: Vec<_> = doc.descendants().filter(|n| n.attribute("class") == Some("wire")).collect();
    assert_eq!(wires.len(), 2);
    let ys: Vec<i32> = wires.iter().map(|w| abs_y(*w)).collect();
    assert_eq!(ys, [30, 70]);
    let tapes = doc.descendants().filter(|n| n.attribute("class") == Some("tape")).count();
    assert_eq!(tapes, 2);
    let labels: Vec<&str> = doc.descendants().filter(|n| n.has_tag_name("text")).filter_map(|n| n.text()).collect();
    assert_eq!(labels, ["A", "B"]);
}

#[test]
fn codiagonal_is_a_merge() {
    let svg = svg_of("sort A; def t = codiag@A;", "t");
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let g = doc.descendants().find(|n| n.attribute("class") == Some("codiag")).unwrap();
    let tapes = g.children().filter(|n| n.attribute("class") == Some("tape")).count();
    assert_eq!(tapes, 2);
    // The band coming from the second lane ends on the first one.
    let path = g.children().find(|n| n.has_tag_name("path") && n.attribute("class") == Some("tape")).unwrap();
    let d = path.attribute("d").unwrap();
    assert!(d.starts_with("M 0 44 ") && d.contains("60 4 L 60 36"), "{d}");
    assert_eq!(doc.root_element().attribute("height"), Some("100"));
}

#[test]
fn labels_are_escaped() {
    let svg = svg_of("sort A; def t = op<+_1/2>@A (+) cobang@A;", "t");
    roxmltree::Document::parse(&svg).unwrap();
    assert!(svg.contains(">+_1/2<"));
    let svg = svg_of("sort A; gen f : A -> A; def t = [f ; id@A] (x) copier@(A (+) 1);", "t");
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert!(doc.descendants().any(|n| n.attribute("class") == Some("box")));
}

fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("id@A".to_string()),
        Just("id@A B".to_string()),
        Just("id@(A (+) 1)".to_string()),
        Just("id0".to_string()),
        Just("sym+@A,B".to_string()),
        Just("codiag@(A (x) B)".to_string()),
        Just("cobang@1".to_string()),
        Just("op<+_2/5>@A".to_string()),
        Just("op<star>@B".to_string()),
        Just("term<x2 +_1/2 (x1 +_1/3 star)>@A".to_string()),
        Just("copier@A".to_string()),
        Just("discard@B".to_string()),
        Just("dl@A,B,1".to_string()),
        Just("[f ; id@A]".to_string()),
        Just("[copy@A (x) del@B ; sym@A,A]".to_string()),
        Just("t1".to_string()),
    ]
}

fn tape_src() -> impl Strategy<Value = String> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} ; {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} (x) {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} (+) {b}")),
            inner.prop_map(|a| format!("({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_is_stable(src in tape_src()) {
        let t = parse_tape(&src).unwrap();
        let printed = t.to_string();
        prop_assert_eq!(&printed, &src);
        let m = parse_module(&format!("def d = {printed};\nsort A;")).unwrap();
        prop_assert_eq!(m.decls.len(), 2);
    }
}
