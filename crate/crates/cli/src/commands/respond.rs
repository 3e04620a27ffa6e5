//! `lagline respond`: session feeds to per-day response curves.

use crate::config::ConfigMap;
use crate::output::{tool_version, write_atomic};
use crate::{CliError, CliResult};
use clap::Args;
use lagline_core::Symbol;
use lagline_feeds::{parse_futures_feed, parse_trade_tape, LimitOrderBook, MessageStream};
use lagline_response::{
    excess_volume_contributions, in_force_series, liquidity_contributions, screen_price_events,
    trade_contributions, write_curve_csv, BootstrapConfig, CurveMeta, EventContributions,
};
use std::path::{Path, PathBuf};

#[derive(Args)]
pub struct RespondArgs {
    /// Directory of day_* session subdirectories (from `gen`).
    #[arg(long, value_name = "DIR")]
    pub input: PathBuf,
    /// Output directory for curve CSVs and sidecars.
    #[arg(long)]
    pub out: PathBuf,
    /// Equity symbol to measure.
    #[arg(long)]
    pub symbol: Option<String>,
    /// Bootstrap resamples per curve.
    #[arg(long)]
    pub bootstrap: Option<usize>,
    /// Bootstrap master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads across days (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

struct DayOutcome {
    day: String,
    n_events: usize,
    empties: usize,
}

pub fn run(args: RespondArgs) -> CliResult<()> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let symbol_raw = cfg.resolve(args.symbol, "symbol", "SPY".to_string())?;
    let symbol =
        Symbol::new(&symbol_raw).map_err(|e| CliError::Usage(format!("bad symbol: {e}")))?;
    let n_resamples = cfg.resolve(args.bootstrap, "bootstrap", 200usize)?;
    let seed = cfg.resolve(args.seed, "seed", 0u64)?;

    if !args.input.is_dir() {
        return Err(CliError::Usage(format!(
            "input directory {} does not exist",
            args.input.display()
        )));
    }
    let mut days: Vec<PathBuf> = std::fs::read_dir(&args.input)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_dir()
                && p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("day_"))
        })
        .collect();
    days.sort();
    if days.is_empty() {
        return Err(CliError::Usage(format!(
            "no day_* directories under {}",
            args.input.display()
        )));
    }

    let default_threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let threads = cfg
        .resolve(args.threads, "threads", default_threads)?
        .clamp(1, days.len());

    let out_dir = &args.out;
    let results: Vec<CliResult<DayOutcome>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in days.chunks(days.len().div_ceil(threads)) {
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .map(|day| process_day(day, out_dir, symbol, n_resamples, seed))
                    .collect::<Vec<_>>()
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut total_events = 0usize;
    for result in results {
        let outcome = result?;
        total_events += outcome.n_events;
        println!(
            "{}: {} events{}",
            outcome.day,
            outcome.n_events,
            if outcome.empties > 0 {
                " (empty curves)"
            } else {
                ""
            }
        );
    }
    if total_events == 0 {
        return Err(CliError::Data("no events".into()));
    }
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("missing input {}: {e}", path.display())))
}

fn process_day(
    day_dir: &Path,
    out_dir: &Path,
    symbol: Symbol,
    n_resamples: usize,
    seed: u64,
) -> CliResult<DayOutcome> {
    let day = day_dir
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("day")
        .to_string();

    let futures_text = read(&day_dir.join("futures.fdf"))?;
    let futures = parse_futures_feed(&futures_text)
        .map_err(|e| CliError::Data(format!("{day}/futures.fdf: {e}")))?;
    if futures.is_empty() {
        return Err(CliError::Data(format!("{day}: no events")));
    }
    let tape_text = read(&day_dir.join("tape.ttf"))?;
    let tape =
        parse_trade_tape(&tape_text).map_err(|e| CliError::Data(format!("{day}/tape.ttf: {e}")))?;
    let equity_bytes = std::fs::read(day_dir.join("equity.eqb"))
        .map_err(|e| CliError::Usage(format!("missing input {}/equity.eqb: {e}", day)))?;

    let mut book = LimitOrderBook::new(symbol);
    let mut deltas = Vec::new();
    for msg in MessageStream::new(&equity_bytes) {
        let msg = msg.map_err(|e| CliError::Data(format!("{day}/equity.eqb: {e}")))?;
        deltas.extend(
            book.apply(&msg)
                .map_err(|e| CliError::Data(format!("{day}/equity.eqb: {e}")))?,
        );
    }

    let series =
        in_force_series(&futures).map_err(|e| CliError::Data(format!("{day}/futures.fdf: {e}")))?;
    let events = screen_price_events(&series);

    let bootstrap = BootstrapConfig::new(n_resamples, seed);
    let data_err = |e: lagline_response::ResponseError| CliError::Data(format!("{day}: {e}"));
    let liquidity = liquidity_contributions(&events, &deltas, &tape, symbol).map_err(data_err)?;
    let trade = trade_contributions(&events, &tape, symbol).map_err(data_err)?;
    let volume = excess_volume_contributions(&events, &tape, symbol).map_err(data_err)?;

    let mut empties = 0usize;
    let mut n_events = 0usize;
    for (label, contributions) in [
        ("liquidity", &liquidity),
        ("trade", &trade),
        ("volume", &volume),
    ] {
        let curve = contributions.into_curve(&bootstrap).map_err(data_err)?;
        n_events = curve.n_events;
        if curve.is_empty() {
            empties += 1;
        }
        write_day_curve(
            out_dir,
            &day,
            label,
            &curve,
            contributions,
            &bootstrap,
            book.orphan_count(),
        )?;
    }
    Ok(DayOutcome {
        day,
        n_events,
        empties,
    })
}

fn write_day_curve(
    out_dir: &Path,
    day: &str,
    label: &str,
    curve: &lagline_response::ResponseCurve,
    contributions: &EventContributions,
    bootstrap: &BootstrapConfig,
    orphans: u64,
) -> CliResult<()> {
    write_atomic(
        &out_dir.join(format!("{day}.{label}.csv")),
        write_curve_csv(curve).as_bytes(),
    )?;
    let meta = CurveMeta {
        kind: curve.kind,
        n_events: curve.n_events,
        seed: bootstrap.seed,
        n_resamples: bootstrap.n_resamples,
        skipped_no_reference: contributions.skipped_no_reference,
        orphan_messages: orphans,
        empty: curve.is_empty(),
    };
    let mut json = serde_json::to_value(&meta).expect("meta serializes");
    json["tool_version"] = serde_json::Value::String(tool_version().to_string());
    write_atomic(
        &out_dir.join(format!("{day}.{label}.json")),
        serde_json::to_string_pretty(&json)
            .expect("meta serializes")
            .as_bytes(),
    )?;
    Ok(())
}
