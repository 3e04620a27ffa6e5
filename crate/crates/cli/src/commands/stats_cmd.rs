//! `lagline stats`: per-day latency statistics, aggregates, and heat maps.

use crate::config::ConfigMap;
use crate::output::{write_atomic, write_meta};
use crate::svg::curve_svg;
use crate::{CliError, CliResult};
use clap::Args;
use lagline_response::{read_curve_csv, CurveMeta, ResponseCurve, ResponseKind};
use lagline_stats::{
    aggregate_median, heatmap_matrix, latency_stat, write_heatmap_csv, write_stats_csv,
    DailyCurveSet, DEFAULT_SIGMA_SET, DEFAULT_X_SET,
};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args)]
pub struct StatsArgs {
    /// Directory of `<day>.<kind>.csv` curves (from `respond`).
    #[arg(long)]
    pub curves: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Also emit SVG line plots of the aggregate curves.
    #[arg(long)]
    pub svg: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct StatsParams {
    curves_dir: String,
    kinds: Vec<String>,
    /// Heat-map row order, shared by every kind.
    days: Vec<String>,
    /// Days whose total response was not positive, emitted as zero rows.
    zero_total_days: Vec<String>,
    skipped_empty: usize,
}

fn kind_of(label: &str) -> Option<ResponseKind> {
    match label {
        "liquidity" => Some(ResponseKind::Liquidity),
        "trade" => Some(ResponseKind::Trade),
        "volume" => Some(ResponseKind::Volume),
        _ => None,
    }
}

pub fn run(args: StatsArgs) -> CliResult<()> {
    let _cfg = ConfigMap::load(args.config.as_deref())?;
    if !args.curves.is_dir() {
        return Err(CliError::Usage(format!(
            "curves directory {} does not exist",
            args.curves.display()
        )));
    }

    // Collect (day, kind) -> curve from "<day>.<kind>.csv" + ".json".
    let mut by_kind: std::collections::BTreeMap<String, Vec<(String, ResponseCurve)>> =
        Default::default();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.curves)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    paths.sort();
    let mut skipped_empty = 0usize;
    for path in &paths {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        let Some((day, kind_label)) = stem.rsplit_once('.') else {
            continue;
        };
        let Some(kind) = kind_of(kind_label) else {
            continue;
        };
        let meta_text = std::fs::read_to_string(path.with_extension("json"))
            .map_err(|e| CliError::Data(format!("{}: missing sidecar: {e}", path.display())))?;
        let meta: CurveMeta = serde_json::from_str(&meta_text)
            .map_err(|e| CliError::Data(format!("{}: bad sidecar: {e}", path.display())))?;
        let text = std::fs::read_to_string(path)?;
        let curve = read_curve_csv(&text, kind, meta.n_events)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        by_kind
            .entry(kind_label.to_string())
            .or_default()
            .push((day.to_string(), curve));
    }
    if by_kind.is_empty() {
        return Err(CliError::Data("no curve files found".into()));
    }

    let mut all_stats = Vec::new();
    let mut day_order: Vec<String> = Vec::new();
    let mut zero_total_days: Vec<String> = Vec::new();
    for (label, mut entries) in by_kind.clone() {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if entries.len() > day_order.len() {
            day_order = entries.iter().map(|(d, _)| d.clone()).collect();
        }
        let kind = kind_of(&label).expect("validated");

        for (day, curve) in &entries {
            if curve.is_empty() {
                skipped_empty += 1;
                continue;
            }
            let stat = latency_stat(day, curve, &DEFAULT_X_SET, &DEFAULT_SIGMA_SET)
                .map_err(|e| CliError::Data(format!("{day} {label}: {e}")))?;
            all_stats.push(stat);
        }

        let set = DailyCurveSet::new(kind, entries.clone())
            .map_err(|e| CliError::Data(format!("{label}: {e}")))?;
        let heatmap = heatmap_matrix(&set);
        for row in &heatmap.rows {
            let tag = format!("{} ({label})", row.date);
            if row.zero_total && !zero_total_days.contains(&tag) {
                zero_total_days.push(tag);
            }
        }
        write_atomic(
            &args.out.join(format!("heatmap_{label}.csv")),
            write_heatmap_csv(&heatmap).as_bytes(),
        )?;

        let curves: Vec<ResponseCurve> = entries.iter().map(|(_, c)| c.clone()).collect();
        if let Ok(aggregate) = aggregate_median(&curves) {
            write_atomic(
                &args.out.join(format!("aggregate_{label}.csv")),
                lagline_response::write_curve_csv(&aggregate).as_bytes(),
            )?;
            if args.svg {
                write_atomic(
                    &args.out.join(format!("aggregate_{label}.svg")),
                    curve_svg(&aggregate, &format!("median {label} response")).as_bytes(),
                )?;
            }
        }
    }

    all_stats.sort_by(|a, b| {
        (&a.date, lagline_stats::kind_label(a.kind))
            .cmp(&(&b.date, lagline_stats::kind_label(b.kind)))
    });
    write_atomic(
        &args.out.join("stats.csv"),
        write_stats_csv(&all_stats, &DEFAULT_X_SET, &DEFAULT_SIGMA_SET).as_bytes(),
    )?;
    write_meta(
        &args.out.join("stats.meta.json"),
        0,
        &StatsParams {
            curves_dir: args.curves.display().to_string(),
            kinds: by_kind.keys().cloned().collect(),
            days: day_order,
            zero_total_days,
            skipped_empty,
        },
    )?;
    println!(
        "stats: {} rows across {} kinds",
        all_stats.len(),
        by_kind.len()
    );
    Ok(())
}
