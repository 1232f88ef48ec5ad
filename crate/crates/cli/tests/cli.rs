use std::path::PathBuf;
use std::process::{Command, Output};

use msset_cli::{parse, run, Ctx, DslError};
use proptest::prelude::*;

fn script(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("msset-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn msset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msset")).args(args).output().unwrap()
}

fn run_file(name: &str, text: &str, extra: &[&str]) -> Output {
    let path = script(name, text);
    let mut args = extra.to_vec();
    args.extend(["run", path.to_str().unwrap()]);
    msset(&args)
}

#[test]
fn binding_a_simplex() {
    let ws = parse("sset D2 = simplex(2)\ncounts D2", Ctx::default()).unwrap();
    let out = run(&ws, Ctx::default()).unwrap();
    assert_eq!(out.results[0]["nondegenerate"], serde_json::json!([3, 3, 1]));
}

#[test]
fn relative_category_with_its_arrow_marked() {
    let text = "cat C { ob a b ; gen f : a -> b }\nrel R = (C, [f])\nclassify R bound 2 2\nclassify sharp(simplex(1)) bound 2 2";
    let out = run(&parse(text, Ctx::default()).unwrap(), Ctx::default()).unwrap();
    // the relative construction is unmarked, so only counts are compared
    let counts = |v: &serde_json::Value| -> Vec<(u64, u64, u64)> {
        v["bidegrees"].as_array().unwrap().iter().map(|r| (r["n"].as_u64().unwrap(), r["m"].as_u64().unwrap(), r["count"].as_u64().unwrap())).collect()
    };
    assert_eq!(counts(&out.results[0]), counts(&out.results[1]));
}

#[test]
fn horn_index_out_of_range() {
    let err = parse("# comment\nsset Bad = horn(2,5)", Ctx::default()).unwrap_err();
    let DslError::Semantic { line, token, message, .. } = err else { panic!("expected a semantic error") };
    assert_eq!(line, 2);
    assert_eq!(token, "horn(2, 5)");
    assert!(message.contains("out of range"));
}

#[test]
fn unknown_names_and_syntax_errors_have_positions() {
    let err = parse("counts Nope", Ctx::default()).unwrap_err();
    assert!(matches!(err, DslError::Semantic { line: 1, .. }));
    let err = parse("sset X = simplex(1\n", Ctx::default()).unwrap_err();
    assert!(matches!(err, DslError::Syntax(_)));
}

#[test]
fn exit_status_zero_on_success() {
    let out = run_file("ok.msset", "lift nerve(chain(1)) against horn(2,1) in simplex(2)\n", &[]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"][0]["status"], "holds");
}

#[test]
fn exit_status_one_on_failed_verdict() {
    let out = run_file("fail.msset", "lift boundary(2) against horn(2,1) in simplex(2)\n", &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_file("expected.msset", "lift boundary(2) against horn(2,1) in simplex(2) expect fails\n", &[]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_status_two_on_usage_and_parse_errors() {
    assert_eq!(msset(&[]).status.code(), Some(2));
    let out = run_file("bad.msset", "sset Bad = horn(2,5)\n", &[]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":1:12:"), "{stderr}");
    let path = script("bad-check.msset", "sset X = simplex(\n");
    assert_eq!(msset(&["check", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let text = "msset X = sharp(simplex(1))\nclassify X bound 2 2\ncolumn classify(X) 1 | homology upto 2\n";
    let a = run_file("det.msset", text, &[]);
    let b = run_file("det.msset", text, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let csv = run_file("det.msset", text, &["--csv"]);
    let body = String::from_utf8(csv.stdout).unwrap();
    assert!(body.starts_with("item,label,field,value"), "{body}");
}

fn sset_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0usize..=2).prop_map(|n| format!("simplex({n})")),
        (1usize..=3).prop_map(|n| format!("boundary({n})")),
        (1usize..=3).prop_flat_map(|n| (Just(n), 0..=n)).prop_map(|(n, k)| format!("horn({n},{k})")),
        (0usize..=2).prop_map(|d| format!("jtrunc({d})")),
        (0usize..=2).prop_map(|n| format!("nerve(chain({n}), 2)")),
    ];
    leaf.prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("product({a},{b})")),
            (inner, 0usize..=2).prop_map(|(a, p)| format!("skeleton( {a} , {p} )")),
        ]
    })
}

fn statement() -> impl Strategy<Value = String> {
    prop_oneof![
        (sset_expr(), 0usize..=3).prop_map(|(x, k)| format!("counts {x} upto {k}")),
        (sset_expr(), 0usize..=2).prop_map(|(x, k)| format!("homology {x}   upto {k} # trailing")),
        (sset_expr(), 1usize..=2, 1usize..=2).prop_map(|(x, p, q)| format!("classify sharp({x}) bound {p} {q}")),
        (sset_expr(), prop::sample::select(vec!["holds", "fails", "unknown"]))
            .prop_map(|(x, s)| format!("contractible {x} expect {s}")),
        (sset_expr(), 0usize..=1).prop_map(|(x, n)| format!("column classify(flat({x})) {n} | counts")),
    ]
}

fn program() -> impl Strategy<Value = String> {
    (sset_expr(), prop::collection::vec(statement(), 1..4)).prop_map(|(x, cmds)| {
        let mut text = format!("# generated\nsset X = {x}\nmsset M = natural(nerve(chain(1)))\n\n");
        for c in cmds {
            text.push_str(&c);
            text.push('\n');
        }
        text.push_str("compare i1(p1(M)) M\n");
        text
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn printing_round_trips(text in program()) {
        let ws = parse(&text, Ctx::default()).unwrap();
        let printed = ws.to_string();
        let again = parse(&printed, Ctx::default()).unwrap();
        prop_assert_eq!(&again, &ws);
        prop_assert_eq!(again.to_string(), printed);
    }
}
