//! Command-line front end.
//!
//! Exit codes: 0 = ran and HOLDS (or pure computation), 1 = verdict
//! FAILS, 2 = usage or input error, 3 = resource cap exceeded.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use f2xf2::checks;
use f2xf2::dot::{ball_census, export_dot};
use f2xf2::report::Stats;
use f2xf2::{
    build_ball, distance, inside_distance, BallIndex, CheckReport, Dist, GenSet, GenWord,
    GroupElement, InsideDist, Limits, Loop, Result, Verdict, Witness,
};

#[derive(Parser)]
#[command(name = "f2xf2", version, about = "Exact Cayley-graph computations for F2 x F2 under the standard and twisted markings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Directory holding ball caches (created on demand).
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,

    /// Cap on enumerated elements.
    #[arg(long, global = true, value_name = "N", default_value_t = 5_000_000)]
    max_elements: usize,

    /// Wall-clock budget in seconds.
    #[arg(long, global = true, value_name = "SECS")]
    timeout_secs: Option<u64>,
}

#[derive(Args)]
struct GenSetArg {
    /// Generating set: s1, s2, or custom:<w1,w2,w3,w4> with words over
    /// the s1 alphabet.
    #[arg(long)]
    genset: String,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the ball of a radius and report sphere sizes.
    Ball {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        radius: u32,
        /// Write the ball as a CAYLEYBALL v1 TSV file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Graph distance between the evaluations of two words.
    Distance {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        word1: String,
        #[arg(long)]
        word2: String,
        /// Search cap; defaults to len(word1) + len(word2), which always
        /// suffices for an exact answer.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Shortest path between two ball members that stays inside the ball.
    InsideDistance {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        word1: String,
        #[arg(long)]
        word2: String,
    },
    /// Radius-r minimal-almost-convexity instance (bound 2r-1).
    CheckMac {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        radius: u32,
    },
    /// Radius-r instance of the stronger bound 2r-2.
    CheckMprimeac {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        radius: u32,
    },
    /// Per-radius maxima of the inside distance, r = 1..=rmax.
    Profile {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        rmax: u32,
    },
    /// Verify the radius-2n MAC-failure witness pair under s2.
    VerifyThm2 {
        #[arg(long)]
        n: u32,
    },
    /// Verify that the 16k+2 witness loop under s2 cannot be shortened.
    VerifyThm3 {
        #[arg(long)]
        k: u32,
        /// Pin the shorter loop to the original basepoint (BLSP variant).
        #[arg(long)]
        basepoint: bool,
    },
    /// Scan every non-geodesic word up to a length for falsification.
    FftpScan {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        maxlen: u32,
        #[arg(long)]
        k: u32,
    },
    /// Scan all identity loops up to a length for loop shortening
    /// (strict bound, per the loop-shortening definition).
    LspScan {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        basepoint: bool,
        /// Corpus: all loops at the identity of length <= this.
        #[arg(long, default_value_t = 6)]
        maxlen: u32,
    },
    /// Search for a shorter fellow-traveling loop for one given loop.
    ShortenLoop {
        #[command(flatten)]
        genset: GenSetArg,
        /// A word evaluating to the identity, read from the identity.
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: u32,
        /// Use the strict per-index bound d < k instead of d <= k.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        basepoint: bool,
    },
    /// Emit the ball of a radius as an undirected DOT graph.
    ExportDot {
        #[command(flatten)]
        genset: GenSetArg,
        #[arg(long)]
        radius: u32,
        /// Comma-separated words whose evaluations are drawn bold.
        #[arg(long, value_name = "W,...")]
        highlight: Option<String>,
        /// Write the DOT text here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

struct RunConfig {
    json: bool,
    cache: Option<PathBuf>,
    limits: Limits,
}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

/// Die quietly on closed pipes like any other unix filter instead of
/// panicking inside println.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn run(cli: Cli) -> i32 {
    if cli.max_elements == 0 {
        eprintln!("error: --max-elements must be positive");
        return 2;
    }
    if cli.timeout_secs == Some(0) {
        eprintln!("error: --timeout-secs must be positive");
        return 2;
    }
    let limits = Limits {
        max_elements: cli.max_elements,
        deadline: cli
            .timeout_secs
            .map(|s| Instant::now() + Duration::from_secs(s)),
    };
    let cfg = RunConfig { json: cli.json, cache: cli.cache.clone(), limits };
    match execute(cli.command, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource() {
                3
            } else {
                2
            }
        }
    }
}

fn execute(command: Command, cfg: &RunConfig) -> Result<i32> {
    match command {
        Command::Ball { genset, radius, out } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            let start = Instant::now();
            let ball = obtain_ball(&gs, radius, cfg)?;
            if let Some(path) = out {
                save_ball_cache(&ball, &path)?;
            }
            let mut report = CheckReport::new("ball", &gs.cache_key());
            report.param("radius", radius);
            report.verdict = Verdict::Inconclusive;
            report.witnesses = ball
                .sphere_sizes()
                .iter()
                .enumerate()
                .map(|(r, size)| {
                    Witness::default()
                        .with_r(r as u32)
                        .with_value(*size as i64)
                        .with_note("sphere_size")
                })
                .collect();
            report.stats = Stats {
                ball_size: ball.len() as u64,
                pairs_examined: 0,
                max_inside_distance: 0,
                runtime_ms: start.elapsed().as_millis() as u64,
            };
            emit(&report, cfg)
        }
        Command::Distance { genset, word1, word2, cap } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            let w1 = GenWord::parse(&gs, &word1)?;
            let w2 = GenWord::parse(&gs, &word2)?;
            let x = gs.eval(&w1)?;
            let y = gs.eval(&w2)?;
            let cap = cap.unwrap_or((w1.len() + w2.len()) as u32);
            let start = Instant::now();
            let d = distance(&gs, &x, &y, cap, &cfg.limits)?;
            let mut report = CheckReport::new("distance", &gs.cache_key());
            report.param("word1", word1);
            report.param("word2", word2);
            report.param("cap", cap);
            report.verdict = Verdict::Inconclusive;
            let witness = Witness::pair(x.canonical_key(), y.canonical_key());
            report.witnesses.push(match d {
                Dist::Exact(d) => witness.with_value(i64::from(d)).with_note("distance"),
                Dist::BeyondCap => witness.with_note("BEYOND_CAP"),
            });
            report.stats.runtime_ms = start.elapsed().as_millis() as u64;
            if !cfg.json {
                match d {
                    Dist::Exact(d) => println!("distance: {d}"),
                    Dist::BeyondCap => println!("distance: BEYOND_CAP (cap {cap})"),
                }
            }
            emit(&report, cfg)
        }
        Command::InsideDistance { genset, radius, word1, word2 } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            let x = gs.eval_str(&word1)?;
            let y = gs.eval_str(&word2)?;
            let start = Instant::now();
            let ball = obtain_ball(&gs, radius, cfg)?;
            let d = inside_distance(&ball, &x, &y)?;
            let mut report = CheckReport::new("inside-distance", &gs.cache_key());
            report.param("radius", radius);
            report.param("word1", word1);
            report.param("word2", word2);
            report.verdict = Verdict::Inconclusive;
            let witness = Witness::pair(x.canonical_key(), y.canonical_key());
            report.witnesses.push(match d {
                InsideDist::Reachable(d) => {
                    witness.with_value(i64::from(d)).with_note("inside_distance")
                }
                InsideDist::Unreachable => witness.with_note("UNREACHABLE"),
            });
            report.stats = Stats {
                ball_size: ball.len() as u64,
                pairs_examined: 1,
                max_inside_distance: d.reachable().map(u64::from).unwrap_or(0),
                runtime_ms: start.elapsed().as_millis() as u64,
            };
            if !cfg.json {
                match d {
                    InsideDist::Reachable(d) => println!("inside distance: {d}"),
                    InsideDist::Unreachable => println!("inside distance: UNREACHABLE"),
                }
            }
            emit(&report, cfg)
        }
        Command::CheckMac { genset, radius } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            if radius < 1 {
                return Err(f2xf2::Error::BadParameter("radius must be >= 1".into()));
            }
            let ball = obtain_ball(&gs, radius + 1, cfg)?;
            emit(&checks::check_mac_on_ball(&ball, radius, &cfg.limits)?, cfg)
        }
        Command::CheckMprimeac { genset, radius } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            if radius < 1 {
                return Err(f2xf2::Error::BadParameter("radius must be >= 1".into()));
            }
            let ball = obtain_ball(&gs, radius + 1, cfg)?;
            emit(&checks::check_mprimeac_on_ball(&ball, radius, &cfg.limits)?, cfg)
        }
        Command::Profile { genset, rmax } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            if rmax < 1 {
                return Err(f2xf2::Error::BadParameter("rmax must be >= 1".into()));
            }
            let ball = obtain_ball(&gs, rmax + 1, cfg)?;
            let report = checks::convexity_profile_on_ball(&ball, rmax, &cfg.limits)?;
            if !cfg.json {
                for w in &report.witnesses {
                    if let (Some(r), Some(v)) = (w.r, w.value) {
                        println!("r={r} max_inside_distance={v}");
                    }
                }
            }
            emit(&report, cfg)
        }
        Command::VerifyThm2 { n } => emit(&checks::verify_mac_failure(n, &cfg.limits)?, cfg),
        Command::VerifyThm3 { k, basepoint } => {
            emit(&checks::verify_lsp_failure(k, basepoint, &cfg.limits)?, cfg)
        }
        Command::FftpScan { genset, maxlen, k } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            emit(&checks::fftp_scan(&gs, maxlen, k, &cfg.limits)?, cfg)
        }
        Command::LspScan { genset, k, basepoint, maxlen } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            let corpus = checks::enumerate_identity_loops(&gs, maxlen, &cfg.limits)?;
            let mut report = checks::lsp_scan(&gs, &corpus, k, basepoint, &cfg.limits)?;
            report.param("maxlen", maxlen);
            emit(&report, cfg)
        }
        Command::ShortenLoop { genset, word, k, strict, basepoint } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            let l = Loop::based_at_identity(&gs, GenWord::parse(&gs, &word)?)?;
            let start = Instant::now();
            let found =
                f2xf2::loop_shorten_search(&gs, &l, k, strict, basepoint, &cfg.limits)?;
            let mut report = CheckReport::new("shorten-loop", &gs.cache_key());
            report.param("word", word);
            report.param("k", k);
            report.param("strict", strict);
            report.param("basepoint", basepoint);
            match found {
                Some(shorter) => {
                    report.verdict = Verdict::Statement("SHORTENED".to_string());
                    if !cfg.json {
                        println!(
                            "shorter loop: word \"{}\" based at {}",
                            shorter.word,
                            shorter.base.canonical_key()
                        );
                    }
                    report.witnesses.push(
                        Witness::word(l.word().to_string())
                            .with_shorter(shorter.word.to_string())
                            .with_note(&format!("base {}", shorter.base.canonical_key())),
                    );
                }
                None => {
                    report.verdict = Verdict::Statement("NO_SHORTER_LOOP".to_string());
                    report.witnesses.push(
                        Witness::word(l.word().to_string()).with_note("unshortenable_loop"),
                    );
                }
            }
            report.stats.runtime_ms = start.elapsed().as_millis() as u64;
            emit(&report, cfg)
        }
        Command::ExportDot { genset, radius, highlight, out } => {
            let gs = GenSet::parse_selector(&genset.genset)?;
            let ball = obtain_ball(&gs, radius, cfg)?;
            let mut marked: Vec<GroupElement> = Vec::new();
            if let Some(words) = highlight {
                for part in words.split(',') {
                    let e = gs.eval_str(part)?;
                    if !ball.contains(&e) {
                        eprintln!("warning: highlight word {part:?} lies outside the ball");
                    }
                    marked.push(e);
                }
            }
            let text = export_dot(&ball, radius, &marked)?;
            let (nodes, edges) = ball_census(&ball, radius)?;
            let mut report = CheckReport::new("export-dot", &gs.cache_key());
            report.param("radius", radius);
            report.verdict = Verdict::Inconclusive;
            report.witnesses.push(
                Witness::default().with_value(nodes as i64).with_note("nodes"),
            );
            report.witnesses.push(
                Witness::default().with_value(edges as i64).with_note("edges"),
            );
            report.stats.ball_size = ball.len() as u64;
            match (&out, cfg.json) {
                (Some(path), _) => {
                    std::fs::write(path, &text)?;
                    return emit(&report, cfg);
                }
                (None, false) => {
                    // DOT owns stdout; the report goes to stderr.
                    print!("{text}");
                    eprintln!("nodes: {nodes}, edges: {edges}");
                    eprintln!("verdict: {}", report.verdict);
                }
                (None, true) => {
                    eprintln!("warning: --json without --out drops the DOT text");
                    println!("{}", report.to_json_string());
                }
            }
            Ok(0)
        }
    }
}

/// Loads a cached ball if one validates, else builds and caches it.
/// Caches are never trusted: a corrupt or mismatched file is rebuilt.
fn obtain_ball(gs: &GenSet, radius: u32, cfg: &RunConfig) -> Result<BallIndex> {
    let Some(dir) = &cfg.cache else {
        return build_ball(gs, radius, &cfg.limits);
    };
    let path = dir.join(cache_file_name(gs, radius));
    if path.exists() {
        match load_ball_cache(&path) {
            Ok(ball) if ball.genset() == gs && ball.radius() == radius => return Ok(ball),
            Ok(_) => eprintln!(
                "warning: cache {} does not match the requested ball; rebuilding",
                path.display()
            ),
            Err(e) => eprintln!(
                "warning: cache {} failed validation ({e}); rebuilding",
                path.display()
            ),
        }
    }
    let ball = build_ball(gs, radius, &cfg.limits)?;
    std::fs::create_dir_all(dir)?;
    save_ball_cache(&ball, &path)?;
    Ok(ball)
}

fn load_ball_cache(path: &Path) -> Result<BallIndex> {
    let text = std::fs::read_to_string(path)?;
    BallIndex::from_tsv(&text)
}

fn save_ball_cache(ball: &BallIndex, path: &Path) -> Result<()> {
    std::fs::write(path, ball.to_tsv())?;
    Ok(())
}

fn cache_file_name(gs: &GenSet, radius: u32) -> String {
    let id = match gs.name() {
        "custom" => {
            let mut h = DefaultHasher::new();
            gs.cache_key().hash(&mut h);
            format!("custom-{:016x}", h.finish())
        }
        builtin => builtin.to_string(),
    };
    format!("ball_{id}_r{radius}.tsv")
}

/// Prints the report and maps its verdict to the exit code.
fn emit(report: &CheckReport, cfg: &RunConfig) -> Result<i32> {
    if cfg.json {
        println!("{}", report.to_json_string());
    } else {
        print_human(report);
    }
    Ok(if report.verdict == Verdict::Fails { 1 } else { 0 })
}

fn print_human(report: &CheckReport) {
    println!("command: {}", report.command);
    println!("genset: {}", report.genset);
    for (key, value) in &report.params {
        println!("param: {key} = {value}");
    }
    for w in &report.witnesses {
        let mut parts: Vec<String> = Vec::new();
        if let Some((u, v)) = &w.pair {
            parts.push(format!("pair=({u}, {v})"));
        }
        if let Some(word) = &w.word {
            parts.push(format!("word=\"{word}\""));
        }
        if let Some(shorter) = &w.shorter {
            parts.push(format!("shorter=\"{shorter}\""));
        }
        if let Some(r) = w.r {
            parts.push(format!("r={r}"));
        }
        if let Some(value) = w.value {
            parts.push(format!("value={value}"));
        }
        if let Some(note) = &w.note {
            parts.push(format!("note={note}"));
        }
        println!("witness: {}", parts.join(" "));
    }
    let s = &report.stats;
    println!(
        "stats: ball_size={} pairs_examined={} max_inside_distance={} runtime_ms={}",
        s.ball_size, s.pairs_examined, s.max_inside_distance, s.runtime_ms
    );
    println!("verdict: {}", report.verdict);
}
