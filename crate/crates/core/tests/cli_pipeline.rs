use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn copy(name: &str) -> (TempDir, PathBuf) {
    let tmp = tempfile::tempdir().unwrap();
    let dst = tmp.path().join(name);
    fs::create_dir(&dst).unwrap();
    for f in ["parents.txt", "states.txt", "probs.txt"] {
        fs::copy(fixture(name).join(f), dst.join(f)).unwrap();
    }
    (tmp, dst)
}

fn gibbsqc(args: &[&str], folder: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gibbsqc"));
    let mut it = args.iter();
    if let Some(first) = it.next() {
        cmd.arg(first);
    }
    if let Some(f) = folder {
        cmd.arg(f);
    }
    cmd.args(it).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const GEN: [&str; 11] = [
    "generate",
    "--probe-bits",
    "2",
    "--pe-steps",
    "3",
    "--max-grover",
    "5",
    "--gamma-tol",
    "1",
    "--delta-lambda",
    "40",
];

fn generate(folder: &Path, extra: &[&str]) -> Output {
    let args: Vec<&str> = GEN.iter().chain(extra).copied().collect();
    gibbsqc(&args, Some(folder))
}

#[test]
fn prerun_writes_four_files_without_probs() {
    let (_t, dir) = copy("3nodes");
    fs::remove_file(dir.join("probs.txt")).unwrap();
    let o = gibbsqc(&["prerun"], Some(&dir));
    assert_eq!(o.status.code(), Some(0));
    for f in ["probsF.txt", "probsT.txt", "blankets.txt", "nits.txt"] {
        assert!(dir.join(f).exists(), "{f}");
        assert!(stdout(&o).contains(f));
    }
    assert_eq!(fs::read_to_string(dir.join("blankets.txt")).unwrap(), "# A B C\n# B A C\n# C A B\n");
}

#[test]
fn prerun_template_works_as_probs_file() {
    let (_t, dir) = copy("Asia");
    assert!(gibbsqc(&["prerun"], Some(&dir)).status.success());
    fs::copy(dir.join("probsT.txt"), dir.join("probs.txt")).unwrap();
    let o = gibbsqc(
        &["prob", "--start", "Asia=yes,Smoke=yes,Tub=yes,Lung=yes,Bronc=yes,Either=yes,Xray=yes,Dysp=yes"],
        Some(&dir),
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("probability of starting state: 0.00390625\n"));
}

#[test]
fn prerun_errors() {
    let o = gibbsqc(&["prerun", "/definitely/not/here"], None);
    assert_eq!(o.status.code(), Some(2));
    let (_t, dir) = copy("2nodes");
    fs::remove_file(dir.join("states.txt")).unwrap();
    let o = gibbsqc(&["prerun"], Some(&dir));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("states.txt"));
}

#[test]
fn cyclic_net_is_semantic_error() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("parents.txt"), "# A B\n# B A\n").unwrap();
    fs::write(tmp.path().join("states.txt"), "# A a0 a1\n# B b0 b1\n").unwrap();
    assert_eq!(gibbsqc(&["prerun"], Some(tmp.path())).status.code(), Some(3));
}

#[test]
fn no_clobber_refuses() {
    let (_t, dir) = copy("2nodes");
    assert!(gibbsqc(&["prerun"], Some(&dir)).status.success());
    assert!(gibbsqc(&["prerun"], Some(&dir)).status.success());
    assert_eq!(gibbsqc(&["prerun", "--no-clobber"], Some(&dir)).status.code(), Some(1));
}

#[test]
fn generate_validate_count_agree() {
    let (_t, dir) = copy("3nodes");
    let o = generate(&dir, &["--start", "A=a1,B=b1,C=c1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("number of qubits: 14\n"));
    assert!(out.contains("probability of starting state: 0.08399999999999999\n"));
    let eng = dir.join("quibbs_eng.txt");
    let pic = dir.join("quibbs_pic.txt");
    let log = fs::read_to_string(dir.join("quibbs_log.txt")).unwrap();
    assert!(gibbsqc(&["validate", eng.to_str().unwrap(), pic.to_str().unwrap()], None).status.success());
    let counted = stdout(&gibbsqc(&["count", eng.to_str().unwrap()], None));
    assert!(log.contains(&format!("number of elementary operations: {}", counted.trim())));
    assert!(log.contains("omit V gates: OFF"));
    assert!(log.contains("starting state A: a1 (binary 00, decimal 0)"));
}

#[test]
fn omit_v_reduces_count() {
    let (_t, dir) = copy("3nodes");
    let count = |extra: &[&str]| {
        let mut args = vec!["--start", "A=a2,B=b2,C=c1"];
        args.extend(extra);
        assert!(generate(&dir, &args).status.success());
        let log = fs::read_to_string(dir.join("quibbs_log.txt")).unwrap();
        let line = log.lines().find(|l| l.starts_with("number of elementary operations")).unwrap().to_string();
        line.rsplit(' ').next().unwrap().parse::<u64>().unwrap()
    };
    let full = count(&[]);
    let lean = count(&["--omit-v"]);
    assert!(full > lean);
    let log = fs::read_to_string(dir.join("quibbs_log.txt")).unwrap();
    assert!(log.contains("omit V gates: ON"));
    assert!(!fs::read_to_string(dir.join("quibbs_eng.txt")).unwrap().contains("MP_Y"));
}

#[test]
fn random_start_is_deterministic_per_seed() {
    let (_t, dir) = copy("3nodes");
    let snapshot =
        |dir: &Path| ["quibbs_eng.txt", "quibbs_pic.txt", "quibbs_log.txt"].map(|f| fs::read(dir.join(f)).unwrap());
    assert!(generate(&dir, &["--random-start", "--seed", "7"]).status.success());
    let first = snapshot(&dir);
    assert!(generate(&dir, &["--random-start", "--seed", "7"]).status.success());
    assert_eq!(first, snapshot(&dir));
    assert!(String::from_utf8_lossy(&first[2]).contains("random start seed: 7"));
}

#[test]
fn generate_errors() {
    let (_t, dir) = copy("2nodes");
    fs::write(dir.join("probs.txt"), "# A\na0 1\n# B\nb0 a0 1\nb0 a1 1\n").unwrap();
    let o = generate(&dir, &["--start", "A=a1,B=b0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero probability"));
    assert_eq!(generate(&dir, &["--start", "A=zz,B=b0"]).status.code(), Some(2));
    let args: Vec<&str> = GEN.iter().copied().chain(["--start", "A=a0,B=b0"]).collect();
    let mut bad = args.clone();
    bad[2] = "0";
    assert_eq!(gibbsqc(&bad, Some(&dir)).status.code(), Some(1));
    fs::remove_file(dir.join("probs.txt")).unwrap();
    assert_eq!(generate(&dir, &["--start", "A=a0,B=b0"]).status.code(), Some(2));
}

#[test]
fn validate_detects_tampering() {
    let (_t, dir) = copy("2nodes");
    assert!(generate(&dir, &["--start", "A=a1,B=b1"]).status.success());
    let eng = dir.join("quibbs_eng.txt");
    let pic = dir.join("quibbs_pic.txt");
    let pic_text = fs::read_to_string(&pic).unwrap();
    let short: String = pic_text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    let cut = dir.join("cut_pic.txt");
    fs::write(&cut, short).unwrap();
    let o = gibbsqc(&["validate", eng.to_str().unwrap(), cut.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lines"));

    let eng_text = fs::read_to_string(&eng).unwrap();
    let bad = dir.join("bad_eng.txt");
    fs::write(&bad, eng_text.replacen("HAD2", "HADX", 1)).unwrap();
    let o = gibbsqc(&["validate", bad.to_str().unwrap(), pic.to_str().unwrap()], None);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn count_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let plain = tmp.path().join("plain.txt");
    fs::write(&plain, "SIGX AT 0\n".repeat(8)).unwrap();
    assert_eq!(stdout(&gibbsqc(&["count", plain.to_str().unwrap()], None)), "8\n");
    let looped = tmp.path().join("looped.txt");
    fs::write(&looped, "HAD2 AT 0\nLOOP 1 REPS:3\nSIGX AT 1\nSIGZ AT 1\nNEXT 1\nMP_Y AT 0 IF 1(0 BY 1.0 2.0\n")
        .unwrap();
    assert_eq!(stdout(&gibbsqc(&["count", looped.to_str().unwrap()], None)), "8\n");
    let broken = tmp.path().join("broken.txt");
    fs::write(&broken, "LOOP 0 REPS:3\nSIGX AT 1\n").unwrap();
    assert_eq!(gibbsqc(&["count", broken.to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn prob_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    fs::write(d.join("parents.txt"), "# A\n# B A\n").unwrap();
    fs::write(d.join("states.txt"), "# A a0 a1\n# B b0 b1\n").unwrap();
    fs::write(d.join("probs.txt"), "# A\na0 0.5\na1 0.5\n# B\nb0 a0 0.5\nb1 a0 0.5\nb0 a1 1\n").unwrap();
    let o = gibbsqc(&["prob", "--start", "A=a0,B=b1"], Some(d));
    assert_eq!(stdout(&o), "probability of starting state: 0.25\nstarting gamma (degs): 120.0\n");
    let o = gibbsqc(&["prob", "--start", "A=a1,B=b1"], Some(d));
    assert!(o.status.success());
    assert!(stdout(&o).contains("probability of starting state: 0.0\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unreachable"));
    assert_ne!(gibbsqc(&["prob", "--start", "A=a9,B=b1"], Some(d)).status.code(), Some(0));
}
