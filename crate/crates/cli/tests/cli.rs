use std::path::Path;
use std::process::{Command, Output};

fn graphstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphstar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn enumerate_g22() {
    let o = graphstar(&["enumerate", "2", "2", "full"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    let forest = graphstar(&["enumerate", "2", "2", "forest"]);
    assert_eq!(stdout(&forest).lines().count(), 3);
    let constant = graphstar(&["--restrict", "constant", "enumerate", "2", "2"]);
    assert_eq!(stdout(&constant).lines().count(), 1);
}

#[test]
fn compose_b1_b1() {
    let o = graphstar(&["compose", "m=2;n=1;v1:B1,B2", "b1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.matches("+1").count(), 2);
    assert_eq!(text.matches("-1").count(), 2);
}

#[test]
fn coproduct_t2l() {
    let o = graphstar(&["coproduct", "m=3;n=2;v1:B1,V2;v2:B2,B3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("-1  m=2;n=1;v1:B1,B2  (x)  m=2;n=1;v1:B1,B2"));
}

#[test]
fn solve_order_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = graphstar(&["solve", "--max-order", "2", "--restrict", "full", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("order 2: unique"));
    assert_eq!(text.matches(") = 1").count(), 5);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["restriction"], "full");
}

#[test]
fn infeasible_normalization_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = graphstar(&["solve", "--max-order", "2", "--restrict", "full", "--normalize", "b2L=2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("infeasible"));
    assert!(out.exists());
}

#[test]
fn star_moyal_example() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let solved = graphstar(&["solve", "--max-order", "2", "--restrict", "forest", "--out", w.to_str().unwrap()]);
    assert!(solved.status.success());
    let alpha = write(dir.path(), "const12.json", r#"{"dim":2,"entries":{"1,2":"1"}}"#);
    let o = graphstar(&["star", "--alpha", &alpha, "--weights", w.to_str().unwrap(), "--order", "2", "--f", "x1^2", "--g", "x2^2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x1^2*x2^2 + eps*(4*x1*x2) + eps^2*(2)");
    let too_far = graphstar(&["star", "--alpha", &alpha, "--weights", w.to_str().unwrap(), "--order", "3", "--f", "x1^2", "--g", "x2^2"]);
    assert_eq!(too_far.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = graphstar(&["verify", "appendix"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("16/16"));
    let assoc = graphstar(&["verify", "assoc"]);
    assert_eq!(assoc.status.code(), Some(1));
    let text = stdout(&assoc);
    assert!(text.contains("FAIL") && text.contains("expected") && text.contains("got"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(graphstar(&["bogus"]).status.code(), Some(2));
    assert_eq!(graphstar(&["compose", "m=2;n=1;v1:B1,B1", "b1"]).status.code(), Some(2));
    assert_eq!(graphstar(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(graphstar(&["--restrict", "partial", "enumerate", "1", "2"]).status.code(), Some(2));
    assert_eq!(graphstar(&["--normalize", "b2L", "solve"]).status.code(), Some(2));
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_graphstar"))
        .args(["enumerate", "1", "2"])
        .env("GRAPHSTAR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.conf", "# order-2 full solve\nmax_order = 2\nrestrict = full\nformat = json\n");
    let o = graphstar(&["--config", &cfg, "solve"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["orders"], 2);
    assert_eq!(json["restriction"], "full");
}

#[test]
fn output_independent_of_threads() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_graphstar"))
            .args(["--format", "json", "solve", "--max-order", "3", "--restrict", "full"])
            .env("GRAPHSTAR_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
}
