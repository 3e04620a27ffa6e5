//! `lagline fcc-reconstruct`: license records to chained routes.

use crate::config::ConfigMap;
use crate::output::{write_atomic, write_meta};
use crate::{CliError, CliResult};
use clap::Args;
use lagline_mwphys::{write_route_table, RadioProfile};
use lagline_routes::{
    ingest_license_records, reconstruct_routes, write_hop_list_csv, write_license_csv,
};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Args)]
pub struct FccArgs {
    /// License records CSV.
    #[arg(long)]
    pub licenses: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Endpoint-coincidence tolerance, meters.
    #[arg(long)]
    pub tolerance_m: Option<f64>,
    #[arg(long)]
    pub lrad_us: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct FccParams {
    licenses: String,
    tolerance_m: f64,
    lrad_us: f64,
    records: usize,
    duplicates_dropped: usize,
    routes: usize,
    residue: usize,
}

pub fn run(args: FccArgs) -> CliResult<()> {
    let cfg = ConfigMap::load(args.config.as_deref())?;
    let tolerance = cfg.resolve(args.tolerance_m, "tolerance-m", 100.0)?;
    let l_rad = cfg.resolve(args.lrad_us, "lrad-us", 10.0)?;
    let profile = RadioProfile::fiducial().with_l_rad(l_rad);

    let text = std::fs::read_to_string(&args.licenses)
        .map_err(|e| CliError::Usage(format!("missing input {}: {e}", args.licenses.display())))?;
    let ingest =
        ingest_license_records(&text).map_err(|e| CliError::Data(format!("licenses: {e}")))?;
    let reconstruction = reconstruct_routes(&ingest.records, tolerance, &profile)
        .map_err(|e| CliError::Data(format!("reconstruction: {e}")))?;

    let mut rows = Vec::new();
    for route in &reconstruction.routes {
        rows.push((
            route.licensee.clone(),
            route.metrics.clone(),
            Some(route.bottleneck_bitrate_mbps),
        ));
        let slug: String = route
            .licensee
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        write_atomic(
            &args.out.join(format!("route_{slug}.hops.csv")),
            write_hop_list_csv(&route.route).as_bytes(),
        )?;
    }
    write_atomic(
        &args.out.join("routes_table.csv"),
        write_route_table(&rows).as_bytes(),
    )?;
    write_atomic(
        &args.out.join("residue.csv"),
        write_license_csv(&reconstruction.residue).as_bytes(),
    )?;
    write_meta(
        &args.out.join("fcc.meta.json"),
        0,
        &FccParams {
            licenses: args.licenses.display().to_string(),
            tolerance_m: tolerance,
            lrad_us: l_rad,
            records: ingest.records.len(),
            duplicates_dropped: ingest.duplicates_dropped,
            routes: reconstruction.routes.len(),
            residue: reconstruction.residue.len(),
        },
    )?;
    println!(
        "reconstructed {} routes, {} residue links ({} duplicate rows dropped)",
        reconstruction.routes.len(),
        reconstruction.residue.len(),
        ingest.duplicates_dropped
    );
    Ok(())
}
