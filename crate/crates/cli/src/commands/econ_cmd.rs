//! `lagline econ`: labeled JSON report of the closed-form estimators.

use crate::config::ConfigMap;
use crate::output::{tool_version, write_atomic};
use crate::{CliError, CliResult};
use clap::Args;
use lagline_econ::{
    hft_revenue_estimate, latency_capture, response_pnl, tick_fungibility, EconParams,
};
use lagline_response::{read_curve_csv, CurveMeta, ResponseKind};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args)]
pub struct EconArgs {
    /// Captured fraction of the minimum spread.
    #[arg(long)]
    pub fc: Option<f64>,
    /// Average daily traded volume, shares.
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long)]
    pub emini_price: Option<f64>,
    #[arg(long)]
    pub emini_tick: Option<f64>,
    #[arg(long)]
    pub equity_price: Option<f64>,
    /// Attributed excess response volume, shares.
    #[arg(long)]
    pub response_volume: Option<f64>,
    /// Excess-volume curve CSV (with its .json sidecar) for latency capture.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Capture fractions to evaluate, comma separated.
    #[arg(long, default_value = "0.95,0.5")]
    pub capture_f: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct EconReport {
    tool_version: &'static str,
    params: EconParams,
    yearly_revenue_usd: f64,
    tick_equivalent_usd_per_share: f64,
    response_pnl_usd: f64,
    latency_capture_ms: Vec<CaptureRow>,
}

#[derive(Serialize)]
struct CaptureRow {
    fraction: f64,
    latency_ms: Option<f64>,
}

pub fn run(args: EconArgs) -> CliResult<()> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let defaults = EconParams::default();
    let params = EconParams {
        captured_spread_fraction: cfg.resolve(args.fc, "fc", defaults.captured_spread_fraction)?,
        daily_volume_shares: cfg.resolve(args.volume, "volume", defaults.daily_volume_shares)?,
        emini_price_usd: cfg.resolve(args.emini_price, "emini-price", defaults.emini_price_usd)?,
        emini_tick_usd: cfg.resolve(args.emini_tick, "emini-tick", defaults.emini_tick_usd)?,
        equity_price_usd: cfg.resolve(
            args.equity_price,
            "equity-price",
            defaults.equity_price_usd,
        )?,
        response_volume_shares: cfg.resolve(
            args.response_volume,
            "response-volume",
            defaults.response_volume_shares,
        )?,
    };

    let tick_equivalent = tick_fungibility(
        params.emini_price_usd,
        params.emini_tick_usd,
        params.equity_price_usd,
    )
    .map_err(|e| CliError::Data(e.to_string()))?;

    let mut capture_rows = Vec::new();
    if let Some(curve_path) = &args.curve {
        let text = std::fs::read_to_string(curve_path)
            .map_err(|e| CliError::Usage(format!("missing input {}: {e}", curve_path.display())))?;
        let meta_text = std::fs::read_to_string(curve_path.with_extension("json"))
            .map_err(|e| CliError::Usage(format!("missing curve sidecar: {e}")))?;
        let meta: CurveMeta = serde_json::from_str(&meta_text)
            .map_err(|e| CliError::Data(format!("bad sidecar: {e}")))?;
        let curve = read_curve_csv(&text, ResponseKind::Volume, meta.n_events)
            .map_err(|e| CliError::Data(format!("{}: {e}", curve_path.display())))?;
        for raw in args.capture_f.split(',') {
            let f: f64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad capture fraction {raw:?}")))?;
            capture_rows.push(CaptureRow {
                fraction: f,
                latency_ms: latency_capture(&curve, f).ok(),
            });
        }
    }

    let report = EconReport {
        tool_version: tool_version(),
        yearly_revenue_usd: hft_revenue_estimate(
            params.captured_spread_fraction,
            params.daily_volume_shares,
        ),
        tick_equivalent_usd_per_share: tick_equivalent,
        response_pnl_usd: response_pnl(params.response_volume_shares, tick_equivalent),
        latency_capture_ms: capture_rows,
        params,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => write_atomic(path, json.as_bytes())?,
        None => println!("{json}"),
    }
    Ok(())
}
