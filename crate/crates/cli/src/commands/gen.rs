//! `lagline gen`: emit synthetic session files.

use crate::config::ConfigMap;
use crate::output::{write_atomic, write_meta};
use crate::{CliError, CliResult};
use clap::Args;
use lagline_sim::{
    simulate_session, BackgroundConfig, LatencyComponent, PresignalConfig, SimConfig,
};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args)]
pub struct GenArgs {
    /// Output directory; one subdirectory per day.
    #[arg(long)]
    pub out: PathBuf,
    /// Master seed; day k uses seed + k.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of trading days.
    #[arg(long)]
    pub days: Option<u32>,
    /// Injected latency mixture: "6.65" or "6.65:0.5,4.2:0.5" (ms[:weight]).
    #[arg(long)]
    pub latency: Option<String>,
    /// Gaussian latency jitter, std dev ms.
    #[arg(long)]
    pub jitter_ms: Option<f64>,
    /// Price-changing trade intensity, events per second.
    #[arg(long)]
    pub drive_rate: Option<f64>,
    /// Fraction of events with a predictive early response.
    #[arg(long)]
    pub presignal_frac: Option<f64>,
    /// How far ahead of the light-speed arrival the prediction acts, ms.
    #[arg(long)]
    pub presignal_lead: Option<f64>,
    /// Background book events per second.
    #[arg(long)]
    pub background_book: Option<f64>,
    /// Background tape trades per second.
    #[arg(long)]
    pub background_trades: Option<f64>,
    /// Apply 0-2 ms uniform jitter to tape stamps.
    #[arg(long)]
    pub tape_jitter: bool,
    /// Book response per event, shares.
    #[arg(long)]
    pub response_shares: Option<u32>,
    /// Probability an event's responder prints on the tape.
    #[arg(long)]
    pub fill_prob: Option<f64>,
    /// Flat key=value config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct GenParams {
    days: u32,
    config: SimConfig,
}

pub fn parse_latency_mixture(spec: &str) -> CliResult<Vec<LatencyComponent>> {
    let mut components = Vec::new();
    for part in spec.split(',') {
        let (latency, weight) = match part.split_once(':') {
            Some((l, w)) => (
                l.trim().parse::<f64>(),
                w.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad mixture weight in {part:?}")))?,
            ),
            None => (part.trim().parse::<f64>(), 1.0),
        };
        let latency = latency.map_err(|_| CliError::Usage(format!("bad latency in {part:?}")))?;
        components.push(LatencyComponent {
            latency_ms: latency,
            weight,
        });
    }
    if components.len() == 1 {
        components[0].weight = 1.0;
    }
    Ok(components)
}

pub fn run(args: GenArgs) -> CliResult<()> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let seed = cfg.resolve(args.seed, "seed", 0u64)?;
    let days = cfg.resolve(args.days, "days", 1u32)?;
    let latency_spec = cfg.resolve(args.latency, "latency", "6.65".to_string())?;

    let mut sim = SimConfig::baseline(6.65, seed);
    sim.latency_mixture = parse_latency_mixture(&latency_spec)?;
    sim.latency_jitter_ms = cfg.resolve(args.jitter_ms, "jitter-ms", 0.0)?;
    sim.drive_rate_hz = cfg.resolve(args.drive_rate, "drive-rate", sim.drive_rate_hz)?;
    sim.presignal = PresignalConfig {
        fraction: cfg.resolve(args.presignal_frac, "presignal-frac", 0.0)?,
        lead_ms: cfg.resolve(args.presignal_lead, "presignal-lead", 0.0)?,
    };
    sim.background = BackgroundConfig {
        book_events_per_sec: cfg.resolve(args.background_book, "background-book", 0.0)?,
        trades_per_sec: cfg.resolve(args.background_trades, "background-trades", 0.0)?,
    };
    sim.tape_jitter = args.tape_jitter;
    sim.response_shares = cfg.resolve(args.response_shares, "response-shares", 800)?;
    sim.fill_probability = cfg.resolve(args.fill_prob, "fill-prob", 1.0)?;

    for day in 0..days {
        let mut day_cfg = sim.clone();
        day_cfg.seed = seed + day as u64;
        let session = simulate_session(&day_cfg)
            .map_err(|e| CliError::Usage(format!("infeasible config: {e}")))?;
        let dir = args.out.join(format!("day_{day:03}"));
        write_atomic(&dir.join("futures.fdf"), session.futures_csv().as_bytes())?;
        write_atomic(&dir.join("equity.eqb"), &session.equity_bytes())?;
        write_atomic(&dir.join("tape.ttf"), session.tape_csv().as_bytes())?;
        write_atomic(&dir.join("truth.json"), session.truth_json().as_bytes())?;
        write_meta(
            &dir.join("meta.json"),
            day_cfg.seed,
            &GenParams {
                days,
                config: day_cfg.clone(),
            },
        )?;
        println!(
            "day_{day:03}: {} futures trades, {} equity messages, {} tape prints, {} events",
            session.futures.len(),
            session.equity.len(),
            session.tape.len(),
            session.truth.events.len()
        );
    }
    Ok(())
}
