use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_girth-search"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn files_in(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

#[test]
fn moore_and_oracle_print_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["moore", "--k", "7", "--g", "5"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "50\n"));
    let o = run_in(dir.path(), &["oracle", "--n", "9"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "12\n"));
    let o = run_in(dir.path(), &["moore", "--k", "1", "--g", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("petersen.g6"), "IheA@GUAo\n").unwrap();
    fs::write(dir.path().join("triangle.g6"), "Bw\n").unwrap();
    let ok = run_in(
        dir.path(),
        &["verify", "--file", "petersen.g6", "--size", "15"],
    );
    assert_eq!(ok.status.code(), Some(0));
    let bad = run_in(
        dir.path(),
        &["verify", "--file", "petersen.g6", "--size", "16"],
    );
    assert_eq!(bad.status.code(), Some(1));
    let tri = run_in(
        dir.path(),
        &["verify", "--file", "triangle.g6", "--size", "3"],
    );
    assert_eq!(tri.status.code(), Some(1));
    assert!(stdout(&tri).contains("girth>=5 FAIL"));
    let garbage = run_in(
        dir.path(),
        &["verify", "--file", "missing.g6", "--size", "3"],
    );
    assert_eq!(garbage.status.code(), Some(1));
}

#[test]
fn search_examples() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("petersen.g6"), "IheA@GUAo\n").unwrap();
    let o = run_in(
        dir.path(),
        &[
            "search",
            "--seed-file",
            "petersen.g6",
            "--iters",
            "200",
            "--rng-seed",
            "1",
            "--out",
            "h.g6",
        ],
    );
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "15\n"));
    assert_eq!(
        fs::read_to_string(dir.path().join("h.g6")).unwrap(),
        "IheA@GUAo\n"
    );

    let o = run_in(
        dir.path(),
        &[
            "search",
            "--order",
            "5",
            "--iters",
            "200",
            "--window",
            "1",
            "--rng-seed",
            "4",
        ],
    );
    assert_eq!(stdout(&o), "5\n");
    let o = run_in(
        dir.path(),
        &[
            "search",
            "--order",
            "10",
            "--iters",
            "20000",
            "--window",
            "3",
            "--rng-seed",
            "4",
            "--out",
            "t.g6",
        ],
    );
    assert_eq!(stdout(&o), "15\n");
    let lines: Vec<String> = fs::read_to_string(dir.path().join("t.g6"))
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let sizes: Vec<usize> = lines
        .iter()
        .map(|l| girth_search::io::decode_graph6(l).unwrap().size())
        .collect();
    assert_eq!(sizes[0], 0);
    assert!(sizes.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(*sizes.last().unwrap(), 15);
}

#[test]
fn usage_errors_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &[
            "run-range",
            "--n-low",
            "10",
            "--n-high",
            "10",
            "--out-dir",
            "out",
        ],
        &[
            "run-range",
            "--n-low",
            "5",
            "--n-high",
            "7",
            "--out-dir",
            "out",
            "--deterministic",
        ],
        &[
            "run-range",
            "--n-low",
            "5",
            "--n-high",
            "x",
            "--out-dir",
            "out",
        ],
        &["search", "--order", "5", "--deterministic", "--out", "h.g6"],
        &[
            "search",
            "--order",
            "5",
            "--p",
            "2",
            "--rng-seed",
            "1",
            "--out",
            "h.g6",
        ],
        &["search", "--order", "5", "--seed-file", "a.g6"],
        &["no-such-command"],
        &["run-range", "--config", "missing.cfg"],
    ];
    for args in cases {
        let o = run_in(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(files_in(dir.path()).is_empty(), "{args:?} wrote files");
    }
}

#[test]
fn seed_validation_failure_is_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds");
    fs::create_dir(&seeds).unwrap();
    fs::write(seeds.join("bad.g6"), "Bw\n").unwrap();
    let o = run_in(
        dir.path(),
        &[
            "run-range",
            "--n-low",
            "3",
            "--n-high",
            "4",
            "--seed-dir",
            "seeds",
            "--out-dir",
            "out",
            "--master-seed",
            "1",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn run_range_writes_bounds_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "run-range",
            "--n-low",
            "5",
            "--n-high",
            "8",
            "--seed-dir",
            "empty",
            "--out-dir",
            "out",
            "--passes",
            "1",
            "--master-seed",
            "7",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("out/bounds.csv")).unwrap();
    let finals: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(finals, ["5", "6", "8", "10"]);
    assert!(stdout(&o).starts_with("n  up1  down1  final"));
    let names = files_in(&dir.path().join("out"));
    assert!(names.contains(&"best_n8_1up.g6".to_string()));
    assert!(names.contains(&"best_n5_1down.g6".to_string()));

    let r = run_in(dir.path(), &["report", "--dir", "out"]);
    assert_eq!(stdout(&r), stdout(&o));
    let d = run_in(dir.path(), &["degree-sets", "--dir", "out"]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).starts_with("r  m  n\n"));
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str| {
        run_in(
            dir.path(),
            &[
                "run-range",
                "--n-low",
                "6",
                "--n-high",
                "9",
                "--out-dir",
                out,
                "--passes",
                "1",
                "--master-seed",
                "5",
                "--deterministic",
                "--threads",
                "1",
            ],
        )
    };
    let (a, b) = (run("a"), run("b"));
    assert_eq!(a.stdout, b.stdout);
    let names = files_in(&dir.path().join("a"));
    assert_eq!(names, files_in(&dir.path().join("b")));
    for name in names {
        assert_eq!(
            fs::read(dir.path().join("a").join(&name)).unwrap(),
            fs::read(dir.path().join("b").join(&name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.cfg"),
        "# small run\nn-low = 5\nn_high = 7\npasses=1\nmaster-seed=3\nout-dir=out\ndeterministic=true\n",
    )
    .unwrap();
    let o = run_in(
        dir.path(),
        &["run-range", "--config", "run.cfg", "--n-high", "6"],
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("out/bounds.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c5.txt"), "5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let e = run_in(dir.path(), &["encode", "--file", "c5.txt"]);
    let g6 = stdout(&e);
    let d = run_in(dir.path(), &["decode", "--g6", g6.trim()]);
    assert_eq!(stdout(&d), "5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    let bad = run_in(dir.path(), &["decode", "--g6", "D>c"]);
    assert_eq!(bad.status.code(), Some(1));
}
