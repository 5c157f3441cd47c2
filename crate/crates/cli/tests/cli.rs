use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/corpus").join(format!("{name}.json"))
}

fn genlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genlat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    corpus(name).to_str().unwrap().to_string()
}

#[test]
fn path_intervals_have_no_parallels() {
    let o = genlat(&["check", "--property", "no-parallels", &path("path_intervals_4")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no-parallels: true\n");
}

#[test]
fn failing_property_exits_with_one() {
    let o = genlat(&["check", "--property", "no-parallels", &path("three_atoms")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no-parallels: false\n  witness: "));
}

#[test]
fn check_all_as_json() {
    let o = genlat(&["--json", "check", &path("boolean_3")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["property"].as_str().unwrap()).collect();
    assert_eq!(names, ["no-parallels", "lifts-join-irreducibles", "geometric", "minor-poset-is-lattice"]);
}

#[test]
fn cd_index_of_the_pentagon() {
    let o = genlat(&["cdindex", &path("pentagon")]);
    assert_eq!(stdout(&o), "c^3 + 2cd + 3dc\n");
}

#[test]
fn rank_generating_methods_agree_on_a_chain() {
    let o = genlat(&["rankgen", "--method", "all", &path("chain_4")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // (1 + q)^5
    let want = "1 + 5q + 10q^2 + 10q^3 + 5q^4 + q^5";
    assert!(text.contains(&format!("direct: {want}\n")));
    assert!(text.contains(&format!("no-parallels: {want}\n")));
    assert!(text.contains("geometric: method not applicable"));
}

#[test]
fn inapplicable_method_alone_is_an_error() {
    let o = genlat(&["rankgen", "--method", "geometric", &path("chain_4")]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "MethodInapplicable");
}

#[test]
fn errors_are_json_on_stderr() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genlat"))
        .args(["show", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"kind":"graph","vertices":2,"edges":[[2,2]]}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "SelfLoop");

    let o = genlat(&["--budget", "3", "poset", &path("boolean_2")]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "BudgetExceeded");

    let o = genlat(&["show", "/nonexistent/lattice.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minor_listing() {
    let o = genlat(&["minors", "--list", &path("boolean_1")]);
    assert_eq!(stdout(&o), "3\n<|{}>\n<{1}|{}>\n<|{1}>\n");
}

#[test]
fn poset_json_has_the_right_size() {
    let o = genlat(&["poset", &path("boolean_3")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // 27 minors plus the added minimum
    assert_eq!(v["elements"].as_array().unwrap().len(), 28);
}

#[test]
fn zip_trace_from_a_map_file() {
    let boolean = std::fs::read_to_string(corpus("boolean_3")).unwrap();
    let target = std::fs::read_to_string(corpus("three_atoms")).unwrap();
    let map = format!(r#"{{"source": {boolean}, "target": {target}, "generator_images": [1, 2, 3]}}"#);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(map.as_bytes()).unwrap();
    let o = genlat(&["--json", "zip-trace", "--map", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.first().unwrap()["size"], 26);
    assert_eq!(steps.last().unwrap()["psi"], "c^3 + cd + 3dc");
    assert_eq!(v["initial_psi"], "c^3 + 4cd + 6dc");
}

#[test]
fn zip_trace_of_the_canonical_map() {
    let o = genlat(&["zip-trace", &path("three_atoms")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("start: 28 elements, c^3 + 4cd + 6dc\n"));
    assert!(text.ends_with("checks pass: true\n"));
}

#[test]
fn product_laws() {
    let o = genlat(&["product", &path("chain_2"), &path("boolean_1")]);
    assert_eq!(o.status.code(), Some(0));
    for kind in ["adjoin-max", "pyramid"] {
        let o = genlat(&["product", "--kind", kind, &path("pentagon")]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(": true"));
    }
    let o = genlat(&["product", &path("chain_2")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dot_output() {
    let o = genlat(&["dot", "--mode", "hasse", &path("chain_2")]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 2);
}

#[test]
fn show_summary() {
    let o = genlat(&["--json", "show", &path("pentagon")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"], 5);
    assert_eq!(v["generators"], 3);
    assert_eq!(v["flags"]["jilp"], true);
}

#[test]
fn output_is_deterministic() {
    let a = genlat(&["--jobs", "1", "--json", "check", &path("square_with_top")]);
    let b = genlat(&["--jobs", "4", "--json", "check", &path("square_with_top")]);
    assert_eq!(a.stdout, b.stdout);
}
