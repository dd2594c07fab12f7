//! End-to-end tests of the binary: exit-code contract, JSON schema,
//! cache behavior.

use std::path::Path;
use std::process::{Command, Output};

use f2xf2::{BallIndex, CheckReport, Limits, Verdict};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_f2xf2"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn json_report(args: &[&str]) -> (CheckReport, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let report = CheckReport::from_json_str(&stdout(&out))
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}"));
    (report, code(&out))
}

#[test]
fn distance_command() {
    let out = run(&["distance", "--genset", "s2", "--word1", "aaBB", "--word2", "taaB"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("distance: 2"));

    let (report, exit) = json_report(&[
        "distance", "--genset", "s2", "--word1", "aaBB", "--word2", "taaB",
    ]);
    assert_eq!(exit, 0);
    assert_eq!(report.command, "distance");
    assert_eq!(report.witnesses[0].value, Some(2));
}

#[test]
fn check_mac_exit_codes_follow_verdicts() {
    let holds = run(&["check-mac", "--genset", "s1", "--radius", "2"]);
    assert_eq!(code(&holds), 0);
    assert!(stdout(&holds).contains("verdict: HOLDS"));

    let fails = run(&["check-mac", "--genset", "s2", "--radius", "2"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("verdict: FAILS"));

    let (report, exit) = json_report(&["check-mprimeac", "--genset", "s2", "--radius", "2"]);
    assert_eq!(exit, 1);
    assert_eq!(report.verdict, Verdict::Fails);
}

#[test]
fn verification_commands_exit_zero_on_success() {
    let out = run(&["verify-thm2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: MAC_FAILS_AT_RADIUS_2"));

    let (report, exit) = json_report(&["verify-thm2", "--n", "2"]);
    assert_eq!(exit, 0);
    assert_eq!(report.verdict.as_str(), "MAC_FAILS_AT_RADIUS_4");
    assert_eq!(report.witnesses[0].value, Some(8));
    assert!(f2xf2::checks::reverify_report(&report, &Limits::default()).unwrap());

    let out = run(&["verify-thm3", "--k", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: LSP_FAILS_AT_K_1"));

    let out = run(&["verify-thm3", "--k", "1", "--basepoint"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: BLSP_FAILS_AT_K_1"));
}

#[test]
fn scans_and_profile() {
    let (report, exit) = json_report(&["fftp-scan", "--genset", "s1", "--maxlen", "2", "--k", "1"]);
    assert_eq!(exit, 0);
    assert_eq!(report.verdict, Verdict::Holds);

    let (report, exit) = json_report(&["profile", "--genset", "s2", "--rmax", "2"]);
    assert_eq!(exit, 0);
    let series: Vec<(u32, i64)> = report
        .witnesses
        .iter()
        .map(|w| (w.r.unwrap(), w.value.unwrap()))
        .collect();
    assert_eq!(series, vec![(1, 2), (2, 4)]);

    let (report, exit) = json_report(&[
        "lsp-scan", "--genset", "s1", "--k", "3", "--maxlen", "4",
    ]);
    assert_eq!(exit, 0, "short s1 loops shorten at k=3");
    assert_eq!(report.verdict, Verdict::Holds);
}

#[test]
fn shorten_loop_command() {
    let out = run(&[
        "shorten-loop", "--genset", "s1", "--word", "acACacAC", "--k", "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: SHORTENED"));

    let out = run(&[
        "shorten-loop", "--genset", "s2", "--word", "aaBBBBaatAAbbbbAAT", "--k", "1",
        "--strict",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: NO_SHORTER_LOOP"));
}

#[test]
fn input_errors_exit_two() {
    // unknown token for the marking
    let out = run(&["distance", "--genset", "s1", "--word1", "t", "--word2", "a"]);
    assert_eq!(code(&out), 2);
    // bad selector
    let out = run(&["ball", "--genset", "s3", "--radius", "1"]);
    assert_eq!(code(&out), 2);
    // invalid custom generating set (identity image)
    let out = run(&["ball", "--genset", "custom:aA,b,c,d", "--radius", "1"]);
    assert_eq!(code(&out), 2);
    // word that is not a loop
    let out = run(&["shorten-loop", "--genset", "s1", "--word", "ab", "--k", "2"]);
    assert_eq!(code(&out), 2);
    // geodesic words cannot be falsified; surfaced as input errors
    let out = run(&["check-mac", "--genset", "s1", "--radius", "0"]);
    assert_eq!(code(&out), 2);
    // clap usage errors also exit 2
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 2);
    // zero caps are rejected
    let out = run(&["ball", "--genset", "s1", "--radius", "1", "--max-elements", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn resource_overflow_exits_three() {
    let out = run(&[
        "ball", "--genset", "s2", "--radius", "4", "--max-elements", "30",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn ball_out_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("ball.tsv");
    let out = run(&[
        "ball", "--genset", "s2", "--radius", "2", "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&out_file).unwrap();
    let ball = BallIndex::from_tsv(&text).unwrap();
    assert_eq!(ball.radius(), 2);
    assert_eq!(ball.to_tsv(), text, "byte-exact round trip");
}

#[test]
fn cache_dir_is_reused_and_revalidated() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap().to_string();
    let args = [
        "inside-distance", "--genset", "s2", "--radius", "2", "--word1", "aB",
        "--word2", "ta", "--cache", &cache,
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0);
    assert!(stdout(&first).contains("inside distance: 4"));
    let cache_file = Path::new(&cache).join("ball_s2_r2.tsv");
    assert!(cache_file.exists());
    let saved = std::fs::read_to_string(&cache_file).unwrap();

    // second run loads the cache and agrees
    let second = run(&args);
    assert_eq!(code(&second), 0);
    assert!(stdout(&second).contains("inside distance: 4"));

    // a corrupted cache is rejected and rebuilt, not trusted
    std::fs::write(&cache_file, "CAYLEYBALL\tv1\ts2\t2\n|\t0\n").unwrap();
    let third = run(&args);
    assert_eq!(code(&third), 0);
    assert!(stdout(&third).contains("inside distance: 4"));
    assert_eq!(std::fs::read_to_string(&cache_file).unwrap(), saved);
}

#[test]
#[cfg(unix)]
fn closed_pipe_does_not_panic() {
    use std::process::Stdio;
    let mut child = bin()
        .args(["export-dot", "--genset", "s2", "--radius", "4"])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    drop(child.stdout.take()); // reader goes away immediately
    let status = child.wait().unwrap();
    // killed by SIGPIPE (no exit code) or exited cleanly; never a panic
    assert_ne!(status.code(), Some(101), "printing to a closed pipe panicked");
}

#[test]
fn checkers_share_the_ball_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap().to_string();
    let out = run(&[
        "check-mac", "--genset", "s2", "--radius", "2", "--cache", &cache,
    ]);
    assert_eq!(code(&out), 1);
    // the scan needs radius r+1 and leaves it cached
    let cache_file = dir.path().join("ball_s2_r3.tsv");
    assert!(cache_file.exists());
    // profile at rmax 2 reuses the same radius-3 ball
    let before = std::fs::read_to_string(&cache_file).unwrap();
    let out = run(&["profile", "--genset", "s2", "--rmax", "2", "--cache", &cache]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&cache_file).unwrap(), before);
}

#[test]
fn export_dot_counts() {
    let out = run(&["export-dot", "--genset", "s2", "--radius", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("graph cayley {"));
    assert_eq!(text.lines().filter(|l| l.contains("--")).count(), 8);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.dot");
    let out = run(&[
        "export-dot", "--genset", "s2", "--radius", "1", "--highlight", "t,c",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: INCONCLUSIVE"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"|4\" [style=bold];"));
}

#[test]
fn json_reports_validate_across_commands() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["ball", "--genset", "s1", "--radius", "2"],
        vec!["distance", "--genset", "s1", "--word1", "ab", "--word2", "ba"],
        vec!["inside-distance", "--genset", "s2", "--radius", "2", "--word1", "aB", "--word2", "ta"],
        vec!["check-mac", "--genset", "s2", "--radius", "2"],
        vec!["profile", "--genset", "s1", "--rmax", "2"],
        vec!["verify-thm2", "--n", "1"],
        vec!["verify-thm3", "--k", "1"],
        vec!["fftp-scan", "--genset", "s1", "--maxlen", "2", "--k", "1"],
        vec!["lsp-scan", "--genset", "s1", "--k", "2", "--maxlen", "4"],
        vec!["shorten-loop", "--genset", "s1", "--word", "aA", "--k", "1"],
        vec!["export-dot", "--genset", "s1", "--radius", "1"],
    ];
    for case in cases {
        let (report, _) = json_report(&case);
        report.validate().unwrap_or_else(|e| panic!("{case:?}: {e}"));
        // human mode prints the same verdict string
        let human = run(&case);
        let human_text = format!(
            "{}{}",
            stdout(&human),
            String::from_utf8_lossy(&human.stderr)
        );
        assert!(
            human_text.contains(&format!("verdict: {}", report.verdict)),
            "{case:?} human output lacks verdict {}",
            report.verdict
        );
    }
}
