//! End-to-end CLI runs: pipeline wiring, determinism, and exit codes.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> PathBuf {
    // target/debug/lagline next to this test binary's directory.
    let mut path = std::env::current_exe().unwrap();
    path.pop();
    if path.ends_with("deps") {
        path.pop();
    }
    path.join("lagline")
}

fn run(args: &[&str], cwd: &Path) -> std::process::Output {
    Command::new(bin())
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn lagline")
}

fn assert_ok(output: &std::process::Output) {
    assert!(
        output.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn read_tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("lagline-test-{tag}-{}", std::process::id()));
        std::fs::remove_dir_all(&dir).ok();
        std::fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn path(&self) -> &Path {
        &self.0
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

#[test]
fn gen_respond_stats_pipeline_is_deterministic() {
    // Two roots, identical relative invocations: every output byte must
    // match.
    let tmp_a = TempDir::new("pipeline-a");
    let tmp_b = TempDir::new("pipeline-b");

    for root in [tmp_a.path(), tmp_b.path()] {
        assert_ok(&run(
            &[
                "gen",
                "--out",
                "sess",
                "--seed",
                "7",
                "--days",
                "1",
                "--latency",
                "4.85",
                "--background-book",
                "0.5",
                "--background-trades",
                "0.2",
            ],
            root,
        ));
        assert_ok(&run(
            &[
                "respond",
                "--input",
                "sess",
                "--out",
                "curves",
                "--symbol",
                "SPY",
                "--bootstrap",
                "20",
                "--seed",
                "1",
            ],
            root,
        ));
        assert_ok(&run(
            &["stats", "--curves", "curves", "--out", "stats"],
            root,
        ));
    }

    for sub in ["sess", "curves", "stats"] {
        assert_eq!(
            read_tree(&tmp_a.path().join(sub)),
            read_tree(&tmp_b.path().join(sub)),
            "{sub} trees differ"
        );
    }

    // The stats CSV reports a t5 near the injected latency's leading bin.
    let stats_csv = std::fs::read_to_string(tmp_a.path().join("stats/stats.csv")).unwrap();
    let mut lines = stats_csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "date,kind,T,t5,t15,t50,tsig3,tsig5,tsig10,tsig25"
    );
    let liquidity_row = lines
        .find(|l| l.contains(",liquidity,"))
        .expect("liquidity row present");
    let t5: f64 = liquidity_row.split(',').nth(3).unwrap().parse().unwrap();
    assert!((4.0..5.0).contains(&t5), "t5 {t5}");
}

#[test]
fn config_file_feeds_defaults_and_flags_override() {
    let tmp = TempDir::new("config");
    let root = tmp.path();
    std::fs::write(
        root.join("run.conf"),
        "seed=3\ndays=1\nlatency=5.2\ndrive-rate=0.05\n",
    )
    .unwrap();
    assert_ok(&run(
        &["gen", "--out", "from_config", "--config", "run.conf"],
        root,
    ));
    assert_ok(&run(
        &[
            "gen",
            "--out",
            "flag_wins",
            "--config",
            "run.conf",
            "--seed",
            "3",
        ],
        root,
    ));
    // Same seed from config or flag: identical bytes.
    assert_eq!(
        read_tree(&root.join("from_config")),
        read_tree(&root.join("flag_wins"))
    );
}

#[test]
fn mw_table_reproduces_published_low_latency_row() {
    let tmp = TempDir::new("mwtable");
    let root = tmp.path();
    let table = std::fs::canonicalize(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/table1_routes.csv"),
    )
    .unwrap();
    let output = run(
        &[
            "mw-table",
            "--routes",
            table.to_str().unwrap(),
            "--lrad-us",
            "10",
        ],
        root,
    );
    assert_ok(&output);
    let stdout = String::from_utf8(output.stdout).unwrap();
    let jefferson = stdout
        .lines()
        .find(|l| l.starts_with("Jefferson Microwave"))
        .expect("Jefferson row");
    let l_ex: f64 = jefferson.split(',').nth(7).unwrap().parse().unwrap();
    assert!((l_ex - 230.0).abs() < 0.5, "L_ex {l_ex}");
}

#[test]
fn exit_codes_follow_the_contract() {
    let tmp = TempDir::new("exitcodes");
    let root = tmp.path();

    // Unknown flag: usage error 2.
    let output = run(&["gen", "--out", "x", "--no-such-flag"], root);
    assert_eq!(output.status.code(), Some(2));

    // Missing input directory: usage error 2.
    let output = run(&["respond", "--input", "missing", "--out", "x"], root);
    assert_eq!(output.status.code(), Some(2));

    // Empty futures file: data error 1 with "no events".
    let day = root.join("sess/day_000");
    std::fs::create_dir_all(&day).unwrap();
    std::fs::write(day.join("futures.fdf"), "ms,kind,price_ticks,size\n").unwrap();
    std::fs::write(day.join("tape.ttf"), "ms,symbol,price_e4,size\n").unwrap();
    std::fs::write(day.join("equity.eqb"), b"").unwrap();
    let output = run(&["respond", "--input", "sess", "--out", "x"], root);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("no events"));
}

#[test]
fn fcc_reconstruct_round_trips_a_chain() {
    let tmp = TempDir::new("fcc");
    let root = tmp.path();
    std::fs::write(
        root.join("licenses.csv"),
        "licensee,tx_lat,tx_lon,rx_lat,rx_lon,freq_ghz,bitrate_mbps,filed\n\
         Chain Co,41.80,-88.24,41.85,-87.60,6.2,165,2011-08-17\n\
         Chain Co,41.85,-87.60,41.90,-86.95,6.2,191,2011-08-17\n\
         Stray LLC,40.50,-80.00,40.60,-79.60,11.2,139,2012-01-02\n",
    )
    .unwrap();
    assert_ok(&run(
        &[
            "fcc-reconstruct",
            "--licenses",
            "licenses.csv",
            "--out",
            "fcc",
        ],
        root,
    ));
    let table = std::fs::read_to_string(root.join("fcc/routes_table.csv")).unwrap();
    assert!(
        table.lines().any(|l| l.starts_with("Chain Co,2,")),
        "{table}"
    );
    let residue = std::fs::read_to_string(root.join("fcc/residue.csv")).unwrap();
    assert!(residue.contains("Stray LLC"));
}

#[test]
fn econ_reports_point_values() {
    let tmp = TempDir::new("econ");
    let output = run(
        &["econ", "--fc", "1.0", "--volume", "5000000000"],
        tmp.path(),
    );
    assert_ok(&output);
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("valid JSON report");
    assert_eq!(report["yearly_revenue_usd"].as_f64().unwrap(), 12.5e9);
    assert_eq!(
        report["tick_equivalent_usd_per_share"].as_f64().unwrap(),
        0.025
    );
    assert_eq!(report["response_pnl_usd"].as_f64().unwrap(), 5e8);
}
