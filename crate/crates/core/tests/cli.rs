use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cutcraft"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cutcraft-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> (i32, String) {
    let Output { status, stdout, .. } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap())
}

const C5: &str = "p tw 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n";

#[test]
fn solve_then_verify() {
    let dir = scratch("verify");
    let graph = dir.join("c5.gr");
    fs::write(&graph, C5).unwrap();
    let (code, out) = run(bin().args(["solve", "--problem", "mmc", "--algo", "twdp", "--graph"]).arg(&graph));
    assert_eq!(code, 0);
    assert!(out.contains("\"optimum\": 2"), "{out}");
    let report = dir.join("r.json");
    fs::write(&report, &out).unwrap();
    let (code, out) = run(bin().arg("verify").arg("--graph").arg(&graph).arg("--report").arg(&report));
    assert_eq!((code, out.trim()), (0, "ok"));
    fs::write(&report, out_with_optimum(&fs::read_to_string(&report).unwrap(), 3)).unwrap();
    let (code, _) = run(bin().arg("verify").arg("--graph").arg(&graph).arg("--report").arg(&report));
    assert_eq!(code, 1);
}

fn out_with_optimum(json: &str, value: u64) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["optimum"] = value.into();
    v.to_string()
}

#[test]
fn decisions_and_exit_codes() {
    let dir = scratch("codes");
    let graph = dir.join("c5.gr");
    fs::write(&graph, C5).unwrap();
    let yes = run(bin().args(["solve", "--problem", "cmc", "--k", "2", "--graph"]).arg(&graph)).0;
    let no = run(bin().args(["solve", "--problem", "cmc", "--k", "3", "--graph"]).arg(&graph)).0;
    assert_eq!((yes, no), (0, 1));
    let anchored = run(bin().args(["solve", "--problem", "cmc-st", "--st", "1,3", "--algo", "rank", "--graph"]).arg(&graph));
    assert_eq!(anchored.0, 0);
    assert!(anchored.1.contains("\"anchors\""));
    let bad = dir.join("bad.gr");
    fs::write(&bad, "p tw 2 1\n1 1\n").unwrap();
    assert_eq!(run(bin().args(["solve", "--problem", "cmc", "--graph"]).arg(&bad)).0, 2);
    assert_eq!(run(bin().args(["solve", "--problem", "cmc-st", "--graph"]).arg(&graph)).0, 2);
    let dense = dir.join("dense.gr");
    let (code, text) = run(bin().args(["gen", "random", "--n", "40", "--p", "0.9", "--seed", "3"]));
    assert_eq!(code, 0);
    fs::write(&dense, text).unwrap();
    assert_eq!(run(bin().args(["solve", "--problem", "mmc", "--algo", "twdp", "--graph"]).arg(&dense)).0, 3);
}

#[test]
fn generators_write_graph_and_sidecar() {
    let dir = scratch("gen");
    let out = dir.join("pm");
    let (code, _) = run(bin().args(["gen", "pm3sat", "--vars", "3", "--clauses", "+1 2 3; -1 2 3", "--k", "9", "--out"]).arg(&out));
    assert_eq!(code, 0);
    let sidecar: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(sidecar["threshold"], 298);
    assert_eq!(sidecar["n"], 304);
    assert!(fs::read_to_string(out.with_extension("gr")).unwrap().starts_with("p tw 304 "));
    let (code, _) = run(bin().args(["gen", "pm3sat", "--vars", "3", "--clauses", "+1 2 3", "--k", "1", "--out"]).arg(&out));
    assert_eq!(code, 2);
    let (code, _) = run(bin().args(["gen", "x3c", "--elements", "3", "--triples", "1 2 3", "--out"]).arg(dir.join("x")));
    assert_eq!(code, 0);
}

#[test]
fn decompose_prints_valid_td() {
    let dir = scratch("td");
    let graph = dir.join("c5.gr");
    fs::write(&graph, C5).unwrap();
    let (code, out) = run(bin().arg("decompose").arg("--graph").arg(&graph));
    assert_eq!(code, 0);
    let td = cutcraft::treedec::parse_td(&out).unwrap();
    let g = cutcraft::graph::parse_gr(C5).unwrap();
    assert!(cutcraft::treedec::validate(&g, &td).is_ok());
    let (code, out) = run(bin().args(["decompose", "--nice", "--anchors", "1,3", "--graph"]).arg(&graph));
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.contains("join") || l.contains("forget")));
}

#[test]
fn bench_writes_identical_outputs() {
    let dir = scratch("bench");
    let manifest = dir.join("m.toml");
    fs::write(
        &manifest,
        "seed = 5\nalgorithms = [\"twdp\", \"cutcount\"]\nrepeats = 15\n[[instances]]\nkind = \"exhaustive\"\nn_max = 4\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for run_id in 0..2 {
        let out = dir.join(format!("out{run_id}"));
        let (code, _) = run(bin().arg("bench").arg("--manifest").arg(&manifest).arg("--out").arg(&out));
        assert_eq!(code, 0);
        outputs.push(fs::read(out.join("results.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
