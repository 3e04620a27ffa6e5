//! `lagline mw-table` and `lagline mw-plan`.

use crate::config::ConfigMap;
use crate::output::{write_atomic, write_meta};
use crate::{CliError, CliResult};
use clap::Args;
use lagline_mwphys::{
    greedy_excess_estimate_km, route_metrics_from_distances, write_route_table, AtmosphereModel,
    RadioProfile, RouteMetrics,
};
use lagline_routes::{
    build_feasibility_graph, generate_tower_field, plan_greedy_route, plan_optimal_route,
    write_hop_list_csv, FieldSpec,
};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args)]
pub struct MwTableArgs {
    /// Aggregated route figures:
    /// `licensee,n_hops,d_geo_km,d_tot_km,d_ex_km,bitrate_mbps`
    /// (d_ex_km may be empty to use d_tot - d_geo).
    #[arg(long)]
    pub routes: PathBuf,
    /// Per-hop equipment latency, microseconds.
    #[arg(long)]
    pub lrad_us: Option<f64>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub const TABLE_INPUT_HEADER: &str = "licensee,n_hops,d_geo_km,d_tot_km,d_ex_km,bitrate_mbps";

pub fn run_table(args: MwTableArgs) -> CliResult<()> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let l_rad = cfg.resolve(args.lrad_us, "lrad-us", 10.0)?;
    let text = std::fs::read_to_string(&args.routes)
        .map_err(|e| CliError::Usage(format!("missing input {}: {e}", args.routes.display())))?;

    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == TABLE_INPUT_HEADER => {}
        other => {
            return Err(CliError::Data(format!(
                "expected header {TABLE_INPUT_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut rows: Vec<(String, RouteMetrics, Option<f64>)> = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(CliError::Data(format!(
                "line {lineno}: expected 6 columns, got {}",
                fields.len()
            )));
        }
        let parse = |raw: &str, what: &str| -> CliResult<f64> {
            raw.trim()
                .parse()
                .map_err(|_| CliError::Data(format!("line {lineno}: bad {what} {raw:?}")))
        };
        let n_hops = parse(fields[1], "n_hops")? as usize;
        let d_geo = parse(fields[2], "d_geo_km")?;
        let d_tot = parse(fields[3], "d_tot_km")?;
        let d_ex = if fields[4].trim().is_empty() {
            None
        } else {
            Some(parse(fields[4], "d_ex_km")?)
        };
        let bitrate = if fields[5].trim().is_empty() {
            None
        } else {
            Some(parse(fields[5], "bitrate_mbps")?)
        };
        let metrics = route_metrics_from_distances(n_hops, d_geo, d_tot, d_ex, l_rad);
        rows.push((fields[0].trim().to_string(), metrics, bitrate));
    }
    let table = write_route_table(&rows);
    match &args.out {
        Some(path) => write_atomic(path, table.as_bytes())?,
        None => print!("{table}"),
    }
    Ok(())
}

#[derive(Args)]
pub struct MwPlanArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// First seed of the ensemble.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of corridor realizations to plan.
    #[arg(long)]
    pub ensemble: Option<u32>,
    /// Tower density per square km.
    #[arg(long)]
    pub density: Option<f64>,
    /// Corridor half width, km.
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long)]
    pub lrad_us: Option<f64>,
    #[arg(long)]
    pub freq_ghz: Option<f64>,
    /// Effective-earth-radius factor.
    #[arg(long)]
    pub k_factor: Option<f64>,
    /// Also write per-seed hop lists.
    #[arg(long)]
    pub hops: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct PlanSummary {
    ensemble: u32,
    planned: u32,
    greedy_stuck: u32,
    mean_optimal_hops: f64,
    mean_optimal_d_ex_km: f64,
    optimal_in_band: u32,
    mean_greedy_d_ex_km: f64,
    mean_n_near: f64,
    greedy_excess_closed_form_km: f64,
    density_per_km2: f64,
}

pub fn run_plan(args: MwPlanArgs) -> CliResult<()> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let seed0 = cfg.resolve(args.seed, "seed", 0u64)?;
    let ensemble = cfg.resolve(args.ensemble, "ensemble", 100u32)?;
    let mut spec = FieldSpec::default_corridor();
    spec.density_per_km2 = cfg.resolve(args.density, "density", spec.density_per_km2)?;
    spec.half_width_km = cfg.resolve(args.half_width, "half-width", spec.half_width_km)?;
    let mut profile = RadioProfile::fiducial();
    profile.l_rad_us = cfg.resolve(args.lrad_us, "lrad-us", profile.l_rad_us)?;
    profile.freq_ghz = cfg.resolve(args.freq_ghz, "freq-ghz", profile.freq_ghz)?;
    let atmosphere = AtmosphereModel::new(cfg.resolve(args.k_factor, "k-factor", 4.0 / 3.0)?);

    let mut rows = Vec::new();
    let mut planned = 0u32;
    let mut stuck = 0u32;
    let mut opt_hops_sum = 0.0;
    let mut opt_dex_sum = 0.0;
    let mut in_band = 0u32;
    let mut greedy_dex_sum = 0.0;
    let mut n_near_sum = 0.0;
    let mut d_tot_sum = 0.0;
    for k in 0..ensemble {
        let seed = seed0 + k as u64;
        let field = generate_tower_field(&spec, seed)
            .map_err(|e| CliError::Data(format!("seed {seed}: {e}")))?;
        let graph = build_feasibility_graph(&field, &profile, &atmosphere, seed ^ 0xABCD)
            .map_err(|e| CliError::Data(format!("seed {seed}: {e}")))?;
        let optimal =
            plan_optimal_route(&graph).map_err(|e| CliError::Data(format!("seed {seed}: {e}")))?;
        planned += 1;
        opt_hops_sum += optimal.metrics.n_hops as f64;
        opt_dex_sum += optimal.metrics.d_ex_km;
        if (19..=24).contains(&optimal.metrics.n_hops)
            && (4.0..=10.0).contains(&optimal.metrics.d_ex_km)
        {
            in_band += 1;
        }
        if args.hops {
            write_atomic(
                &args.out.join(format!("optimal_s{seed}.hops.csv")),
                write_hop_list_csv(&optimal.route).as_bytes(),
            )?;
        }
        rows.push((format!("optimal-s{seed}"), optimal.metrics.clone(), None));

        match plan_greedy_route(&graph) {
            Ok(greedy) => {
                greedy_dex_sum += greedy.metrics.d_ex_km;
                n_near_sum += greedy.mean_forward_neighbors;
                d_tot_sum += greedy.metrics.d_tot_km;
                rows.push((format!("greedy-s{seed}"), greedy.metrics.clone(), None));
            }
            Err(_) => stuck += 1,
        }
    }

    let greedy_ok = (planned - stuck).max(1) as f64;
    let mean_n_near = n_near_sum / greedy_ok;
    let summary = PlanSummary {
        ensemble,
        planned,
        greedy_stuck: stuck,
        mean_optimal_hops: opt_hops_sum / planned.max(1) as f64,
        mean_optimal_d_ex_km: opt_dex_sum / planned.max(1) as f64,
        optimal_in_band: in_band,
        mean_greedy_d_ex_km: greedy_dex_sum / greedy_ok,
        mean_n_near,
        greedy_excess_closed_form_km: greedy_excess_estimate_km(
            mean_n_near.max(1e-9),
            d_tot_sum / greedy_ok,
        ),
        density_per_km2: spec.density_per_km2,
    };
    write_atomic(
        &args.out.join("plan_table.csv"),
        write_route_table(&rows).as_bytes(),
    )?;
    write_atomic(
        &args.out.join("plan_summary.json"),
        serde_json::to_string_pretty(&summary)
            .expect("summary serializes")
            .as_bytes(),
    )?;
    write_meta(&args.out.join("plan.meta.json"), seed0, &spec)?;
    println!(
        "planned {planned} corridors: optimal N~{:.1} d_ex~{:.1} km ({} in band), greedy n_near~{:.1}",
        summary.mean_optimal_hops, summary.mean_optimal_d_ex_km, in_band, summary.mean_n_near
    );
    Ok(())
}
