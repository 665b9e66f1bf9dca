use std::fs;
use std::path::Path;
use std::process::Command;

use forest_partition::cli::{run_command, ExitStatus};
use forest_partition::graph::{parse_edge_list, parse_partition};
use forest_partition::{verify_partition, ClassParams};

fn run(args: &[&str]) -> (ExitStatus, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fpart").chain(args.iter().copied());
    let status = run_command(argv, &mut out, &mut err);
    (
        status,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_graph(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn decompose_c4_puts_everything_in_h() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let (status, out, err) = run(&["decompose", "--alpha", "7", "--input", &input, "--verify"]);
    assert_eq!(status, ExitStatus::Success, "{err}");
    assert_eq!(out, "0 1 H\n0 3 H\n1 2 H\n2 3 H\n");
}

#[test]
fn decompose_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = "# triangle with a tail\n0 1\n1 2\n2 0\n2 3\nv 9\n";
    let input = write_graph(dir.path(), "g.txt", text);
    let output = dir.path().join("p.txt");
    let (status, out, _) = run(&[
        "decompose",
        "--alpha",
        "5",
        "--input",
        &input,
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(status, ExitStatus::Success);
    assert!(out.is_empty());
    let g = parse_edge_list(text).unwrap();
    let p = parse_partition(&fs::read_to_string(&output).unwrap()).unwrap();
    assert!(verify_partition(&g, &p, ClassParams::new(5).unwrap()).is_valid());
}

#[test]
fn decompose_k4_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let (status, out, err) = run(&["decompose", "--alpha", "5", "--input", &input]);
    assert_eq!(status, ExitStatus::NotInClass);
    assert_eq!(status.code(), 1);
    assert!(out.is_empty());
    let witness: String = err.lines().skip(1).map(|l| format!("{l}\n")).collect();
    assert_eq!(parse_edge_list(&witness).unwrap().num_edges(), 6);
}

#[test]
fn check_reports_first_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write_graph(dir.path(), "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let banana = write_graph(
        dir.path(),
        "b4.txt",
        "0 2\n1 2\n0 3\n1 3\n0 4\n1 4\n0 5\n1 5\n",
    );
    assert_eq!(
        run(&["check", "--alpha", "5", "--input", &banana]).1,
        "AltCycle 2 0 3 1\n"
    );
    assert_eq!(
        run(&["check", "--alpha", "8", "--input", &c4]).1,
        "LightEdge 0 1\n"
    );
    let path = write_graph(dir.path(), "p.txt", "0 1\n1 2\n");
    assert_eq!(
        run(&["check", "--alpha", "5", "--input", &path]).1,
        "SmallVertex 0\n"
    );

    let k4 = write_graph(dir.path(), "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let (status, out, _) = run(&["check", "--alpha", "5", "--input", &k4]);
    assert_eq!(status, ExitStatus::NotInClass);
    assert!(out.starts_with("NotInClass\n"));
}

#[test]
fn gen_outputs_parse_back() {
    let (status, out, _) = run(&["gen", "named", "--name", "banana", "--n", "3"]);
    assert_eq!(status, ExitStatus::Success);
    let g = parse_edge_list(&out).unwrap();
    assert_eq!((g.num_vertices(), g.num_edges()), (5, 6));

    let (_, a, _) = run(&["gen", "apollonian", "--n", "30", "--seed", "11"]);
    let (_, b, _) = run(&["gen", "apollonian", "--n", "30", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(parse_edge_list(&a).unwrap().num_edges(), 84);

    let (_, sp, _) = run(&[
        "gen",
        "series-parallel",
        "--m",
        "40",
        "--seed",
        "2",
        "--p",
        "0.5",
    ]);
    assert!(parse_edge_list(&sp).unwrap().num_edges() <= 40);
}

#[test]
fn usage_and_input_errors_exit_3() {
    assert_eq!(run(&["decompose", "--alpha", "7"]).0, ExitStatus::Usage);
    assert_eq!(run(&["frobnicate"]).0, ExitStatus::Usage);
    assert_eq!(run(&["gen", "named", "--n", "4"]).0, ExitStatus::Usage);
    assert_eq!(
        run(&["gen", "named", "--name", "cycle", "--n", "2"]).0,
        ExitStatus::Usage
    );

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.txt");
    let (status, _, err) = run(&[
        "check",
        "--alpha",
        "7",
        "--input",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(status, ExitStatus::Usage);
    assert!(err.starts_with("error:"));

    let looped = write_graph(dir.path(), "bad.txt", "0 1\n2 2\n");
    let (status, _, err) = run(&["check", "--alpha", "7", "--input", &looped]);
    assert_eq!(status, ExitStatus::Usage);
    assert!(err.contains("line 2"), "{err}");

    let ok = write_graph(dir.path(), "ok.txt", "0 1\n");
    assert_eq!(
        run(&["check", "--alpha", "4", "--input", &ok]).0,
        ExitStatus::Usage
    );
}

#[test]
fn help_exits_zero() {
    let (status, out, _) = run(&["--help"]);
    assert_eq!(status, ExitStatus::Success);
    assert!(out.contains("decompose"));
}

#[test]
fn fuzz_summary_is_deterministic() {
    let args = [
        "fuzz", "--alpha", "6", "--count", "40", "--seed", "3", "--family", "sp",
    ];
    let first = run(&args);
    assert_eq!(first.0, ExitStatus::Success);
    assert_eq!(first, run(&args));
    assert!(
        first.1.ends_with("passed=120 witnesses=0 failures=0\n"),
        "{}",
        first.1
    );
}

#[test]
fn fuzz_reports_witnesses_with_exit_1() {
    let (status, out, _) = run(&[
        "fuzz", "--alpha", "5", "--count", "10", "--seed", "1", "--family", "planar",
    ]);
    assert_eq!(status, ExitStatus::NotInClass);
    assert!(out.lines().any(|l| l.starts_with("WITNESS instance ")));
    assert!(!out.contains("FAIL"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fpart");
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let run_bin = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    assert_eq!(
        run_bin(&["decompose", "--alpha", "7", "--input", &k4])
            .status
            .code(),
        Some(0)
    );
    let witness = run_bin(&["decompose", "--alpha", "5", "--input", &k4]);
    assert_eq!(witness.status.code(), Some(1));
    assert!(!witness.stderr.is_empty());
    assert_eq!(run_bin(&["decompose"]).status.code(), Some(3));
}
