use std::fs;
use std::process::{Command, Output};

fn mlham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlham"))
        .args(args)
        .output()
        .expect("run mlham")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_n1() {
    let out = mlham(&["gen", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "100\n110\n010\n011\n001\n101\n");
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "6 vertices");
}

#[test]
fn gen_limit() {
    let out = mlham(&["gen", "--n", "2", "--limit", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "10100\n11100\n01100\n");
}

#[test]
fn gen_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.txt");
    let out = mlham(&["gen", "--n", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 252);
    assert_eq!(text, stdout(&mlham(&["gen", "--n", "4"])));
}

#[test]
fn usage_errors() {
    for args in [
        &["gen", "--n", "0"][..],
        &["gen"],
        &["gen", "--n", "x"],
        &["verify", "--n", "-1"],
        &["lemmas", "--n", "7"],
        &["next", "--n", "2", "--prev", "11100", "--at", "11000"],
        &["next", "--n", "2", "--prev", "11001", "--at", "110"],
        &["next", "--n", "2", "--prev", "1a", "--at", "11000"],
        &["frobnicate"],
    ] {
        let out = mlham(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_passes() {
    let out = mlham(&["verify", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "HAMILTON n=4: PASS count=252 expected=252"
    );
}

#[test]
fn factor() {
    let out = mlham(&["factor", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "101010 2 28\n101100 3 42\n");

    let six = stdout(&mlham(&["factor", "--n", "6"]));
    assert_eq!(six.lines().count(), 14);
    let total: u64 = six
        .lines()
        .map(|l| l.split(' ').nth(2).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 3432);
}

#[test]
fn lemmas() {
    let out = mlham(&["lemmas", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 14);
    assert!(text
        .lines()
        .all(|l| l.starts_with("LEMMA ") && l.contains(": PASS")));
    assert!(text.contains("LEMMA class-count: PASS 3 plane trees"));
}

#[test]
fn next() {
    let out = mlham(&["next", "--n", "2", "--prev", "11001", "--at", "11000"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "11010\n");
    let back = mlham(&["next", "--n", "2", "--prev", "11010", "--at", "11000"]);
    assert_eq!(stdout(&back), "11001\n");
}

#[test]
fn next_follows_gen() {
    let cycle = stdout(&mlham(&["gen", "--n", "3"]));
    let words: Vec<&str> = cycle.lines().collect();
    for i in (1..words.len() - 1).step_by(5) {
        let out = mlham(&["next", "--n", "3", "--prev", words[i - 1], "--at", words[i]]);
        assert_eq!(stdout(&out).trim(), words[i + 1]);
    }
}

#[test]
fn plan_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan5.txt");
    let p = path.to_str().unwrap();
    assert!(mlham(&["plan", "--n", "5", "--out", p]).status.success());

    let cached = mlham(&["gen", "--n", "5", "--plan", p]);
    assert!(cached.status.success());
    assert_eq!(cached.stdout, mlham(&["gen", "--n", "5"]).stdout);
    assert!(mlham(&["verify", "--n", "5", "--plan", p]).status.success());

    // wrong n for this cache
    assert_eq!(
        mlham(&["verify", "--n", "4", "--plan", p]).status.code(),
        Some(1)
    );
}

#[test]
fn corrupted_plan_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan.txt");
    let p = path.to_str().unwrap();
    assert!(mlham(&["plan", "--n", "5", "--out", p]).status.success());
    let good = fs::read_to_string(&path).unwrap();

    // flip one bit in the first gluing word
    let mut lines: Vec<String> = good.lines().map(String::from).collect();
    let word = &mut lines[1];
    let last = if word.ends_with('0') { "1" } else { "0" };
    word.replace_range(word.len() - 1.., last);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let out = mlham(&["verify", "--n", "5", "--plan", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));

    // drop a gluing
    fs::write(&path, good.lines().take(3).collect::<Vec<_>>().join("\n")).unwrap();
    assert_eq!(
        mlham(&["verify", "--n", "5", "--plan", p]).status.code(),
        Some(1)
    );
    assert_eq!(
        mlham(&["gen", "--n", "5", "--plan", p]).status.code(),
        Some(1)
    );

    // duplicate a gluing
    fs::write(&path, format!("{good}{}\n", lines[2])).unwrap();
    assert_eq!(
        mlham(&["verify", "--n", "5", "--plan", p]).status.code(),
        Some(1)
    );
}
