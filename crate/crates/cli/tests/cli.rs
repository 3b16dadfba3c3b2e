use std::process::{Command, Output};

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = schubert(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    schubert(args).status.code().unwrap()
}

#[test]
fn degree_both_reports_agreement() {
    let out = schubert(&["degree", "--m", "1", "--n", "3", "--mode", "both"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("agree"));
    assert_eq!(stdout(&["degree", "--m", "2", "--n", "5", "--mode", "formula"]), "42");
}

#[test]
fn schubert_both() {
    assert_eq!(stdout(&["schubert", "--perm", "3,2,1", "--method", "both"]), "x1^2*x2");
    assert_eq!(stdout(&["schubert", "--perm", "1,3,2", "--method", "transition"]), "x1 + x2");
}

#[test]
fn lr_outputs() {
    assert_eq!(stdout(&["lr", "--lambda", "1", "--mu", "1"]), "(2):1 (1,1):1");
    assert_eq!(stdout(&["lr", "--lambda", "2,1", "--mu", "2,1", "--nu", "3,2,1"]), "2");
    assert_eq!(stdout(&["lr", "--lambda", "1", "--mu", "1", "--box", "1x2"]), "(2):1");
    assert_eq!(stdout(&["lr", "--lambda", "2", "--mu", "2", "--box", "1x1"]), "0");
}

#[test]
fn json_documents() {
    assert_eq!(
        stdout(&["--json", "pieri", "--m", "1", "--n", "3", "", "1"]),
        r#"{"ctx":[1,3],"terms":[{"coeff":"1","partition":[1]}]}"#
    );
    assert_eq!(
        stdout(&["--json", "schubert", "--perm", "1,3,2"]),
        r#"[{"coeff":"1","exponents":[1]},{"coeff":"1","exponents":[0,1]}]"#
    );
    assert_eq!(
        stdout(&["--json", "product", "--m", "1", "--n", "3", "2,2", "1"]),
        r#"{"ctx":[1,3],"terms":[]}"#
    );
}

#[test]
fn grassmann_commands() {
    assert_eq!(stdout(&["product", "--m", "1", "--n", "3", "1", "1"]), "s(2) + s(1,1)");
    assert_eq!(stdout(&["product", "--m", "1", "--n", "3", "s(1)", "s(1) + s(2)"]), "s(2) + s(1,1) + s(2,1)");
    assert_eq!(stdout(&["pieri", "--m", "1", "--n", "3", "1", "-1"]), "0");
    assert_eq!(stdout(&["giambelli", "--m", "1", "--n", "3", "1,1"]), "det[[t1,t2],[t0,t1]] = s(1,1)");
    assert_eq!(stdout(&["dual", "--m", "2", "--n", "5", "0|2|4"]), "(2,1) 1|3|5");
    assert_eq!(stdout(&["pairing", "--m", "1", "--n", "3", "1", "2,1"]), "1");
    assert_eq!(stdout(&["pairing", "--m", "1", "--n", "3", "0|2", "0|2"]), "0");
    assert_eq!(stdout(&["pairing", "--m", "1", "--n", "3", "0|2", "1"]), "1");
}

#[test]
fn echelon_and_cells() {
    let dir = std::env::temp_dir().join(format!("schubert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.csv");
    std::fs::write(&path, "1,2,3,4\n5,6,7,8\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["echelon", "--matrix", p]), "3,2,1,0\n-2,-1,0,1\ntype (3,4) dimension 4");
    assert_eq!(stdout(&["echelon", "--field", "3", "--matrix", p]), "0,2,1,0\n1,2,0,1\ntype (3,4) dimension 4");
    std::fs::write(&path, "1/2,1\n1,2\n").unwrap();
    assert_eq!(code(&["echelon", "--matrix", p]), 2);
    assert_eq!(code(&["echelon", "--field", "4", "--matrix", p]), 2);
    std::fs::remove_dir_all(&dir).unwrap();

    assert!(stdout(&["cells", "--m", "2", "--n", "4", "--q", "2"]).ends_with("total 35"));
    assert!(stdout(&["cells", "--m", "2", "--n", "4", "--q", "3", "--census"])
        .ends_with("subspaces 130 echelon forms 130 total 130"));
    assert_eq!(code(&["cells", "--m", "2", "--n", "4", "--q", "4", "--census"]), 2);
}

#[test]
fn invalid_input_exits_2_and_names_the_operand() {
    for (args, operand) in [
        (vec!["schubert", "--perm", "1,1"], "--perm"),
        (vec!["lr", "--lambda", "1,2", "--mu", "1"], "--lambda"),
        (vec!["lr", "--lambda", "1", "--mu", "1", "--box", "3by4"], "--box"),
        (vec!["pieri", "--m", "1", "--n", "3", "3", "1"], "class operand"),
        (vec!["degree", "--m", "3", "--n", "3"], "--m/--n"),
    ] {
        let out = schubert(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(operand), "{args:?}");
    }
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["lr", "--lambda", "1", "--mu", "1", "--nu", "2", "--box", "2x2"]), 2);
}

#[test]
fn thread_setting() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_schubert"))
            .env("SCHUBERT_THREADS", threads)
            .args(["product", "--m", "2", "--n", "5", "1", "2,1"])
            .output()
            .unwrap()
    };
    let auto = run("0");
    assert!(auto.status.success());
    assert_eq!(run("1").stdout, auto.stdout);
    assert_eq!(run("3").stdout, auto.stdout);
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn repeated_invocations_are_bit_identical() {
    let cases: [&[&str]; 4] = [
        &["--json", "lr", "--lambda", "3,2,1", "--mu", "2,1"],
        &["--json", "cells", "--m", "2", "--n", "4", "--q", "2", "--census"],
        &["schubert", "--perm", "4,1,3,2", "--method", "both"],
        &["product", "--m", "2", "--n", "6", "2,1", "2,1,1"],
    ];
    for args in cases {
        assert_eq!(schubert(args).stdout, schubert(args).stdout, "{args:?}");
    }
}

#[test]
fn bench_emits_csv() {
    let out = stdout(&["bench", "--max", "2", "--repeat", "1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "input,wall_time,digest");
    assert_eq!(lines.len(), 5);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        assert!(fields[1].parse::<f64>().is_ok());
        assert_eq!(fields[2].len(), 16);
    }
    let again = stdout(&["bench", "--max", "2", "--repeat", "1"]);
    let digests = |s: &str| s.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(digests(&out), digests(&again));
}
