//! License-record ingestion and route reconstruction.
//!
//! Each record discloses one licensed hop (transmit site, receive site,
//! frequency, bit rate). Routes are rebuilt per licensee by chaining hops
//! whose endpoints coincide within a positional tolerance: license
//! coordinates are rounded to seconds of arc, so nominally identical sites
//! differ by tens of meters across filings.

use crate::RouteError;
use lagline_core::{great_circle_distance, initial_bearing, GeoPoint};
use lagline_mwphys::{route_metrics, RadioProfile, Route, RouteMetrics};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const LICENSE_CSV_HEADER: &str =
    "licensee,tx_lat,tx_lon,rx_lat,rx_lon,freq_ghz,bitrate_mbps,filed";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LicenseRecord {
    pub licensee: String,
    pub tx: GeoPoint,
    pub rx: GeoPoint,
    pub freq_ghz: f64,
    pub bitrate_mbps: f64,
    /// ISO date (YYYY-MM-DD) of the filing.
    pub filed: String,
}

/// Parse result: validated records with exact duplicates collapsed.
#[derive(Debug, Clone)]
pub struct LicenseIngest {
    pub records: Vec<LicenseRecord>,
    pub duplicates_dropped: usize,
}

fn parse_field<T: std::str::FromStr>(raw: &str, what: &str, line: usize) -> Result<T, RouteError> {
    raw.trim().parse().map_err(|_| RouteError::BadCsv {
        line,
        reason: format!("bad {what} {raw:?}"),
    })
}

fn parse_point(lat: &str, lon: &str, line: usize) -> Result<GeoPoint, RouteError> {
    GeoPoint::new(
        parse_field(lat, "latitude", line)?,
        parse_field(lon, "longitude", line)?,
    )
    .map_err(|e| RouteError::BadCsv {
        line,
        reason: e.to_string(),
    })
}

fn valid_iso_date(raw: &str) -> bool {
    let bytes = raw.as_bytes();
    bytes.len() == 10
        && bytes[4] == b'-'
        && bytes[7] == b'-'
        && raw
            .split('-')
            .all(|part| part.chars().all(|c| c.is_ascii_digit()))
        && raw[5..7]
            .parse::<u32>()
            .is_ok_and(|m| (1..=12).contains(&m))
        && raw[8..10]
            .parse::<u32>()
            .is_ok_and(|d| (1..=31).contains(&d))
}

/// Parse a license CSV. Malformed rows abort with their line number; exact
/// `(licensee, tx, rx)` duplicates collapse with a count.
pub fn ingest_license_records(text: &str) -> Result<LicenseIngest, RouteError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == LICENSE_CSV_HEADER => {}
        other => {
            return Err(RouteError::BadCsv {
                line: 1,
                reason: format!("expected header {LICENSE_CSV_HEADER:?}, got {other:?}"),
            })
        }
    }
    let mut records: Vec<LicenseRecord> = Vec::new();
    let mut duplicates = 0usize;
    for (idx, raw) in lines.enumerate() {
        let line = idx + 2;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 8 {
            return Err(RouteError::BadCsv {
                line,
                reason: format!("expected 8 columns, got {}", fields.len()),
            });
        }
        let tx = parse_point(fields[1], fields[2], line)?;
        let rx = parse_point(fields[3], fields[4], line)?;
        if tx == rx {
            return Err(RouteError::BadCsv {
                line,
                reason: "tx and rx sites coincide".into(),
            });
        }
        let filed = fields[7].trim().to_string();
        if !valid_iso_date(&filed) {
            return Err(RouteError::BadCsv {
                line,
                reason: format!("bad ISO date {filed:?}"),
            });
        }
        let record = LicenseRecord {
            licensee: fields[0].trim().to_string(),
            tx,
            rx,
            freq_ghz: parse_field(fields[5], "freq_ghz", line)?,
            bitrate_mbps: parse_field(fields[6], "bitrate_mbps", line)?,
            filed,
        };
        if records
            .iter()
            .any(|r| r.licensee == record.licensee && r.tx == record.tx && r.rx == record.rx)
        {
            duplicates += 1;
            continue;
        }
        records.push(record);
    }
    Ok(LicenseIngest {
        records,
        duplicates_dropped: duplicates,
    })
}

/// One rebuilt route and the chain of sites it follows.
#[derive(Debug, Clone)]
pub struct ReconstructedRoute {
    pub licensee: String,
    pub route: Route,
    pub metrics: RouteMetrics,
    /// Lowest licensed bit rate along the chain.
    pub bottleneck_bitrate_mbps: f64,
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub routes: Vec<ReconstructedRoute>,
    /// Links that did not chain into any reconstructed route.
    pub residue: Vec<LicenseRecord>,
}

/// Chain each licensee's hops into its longest route.
///
/// Sites within `tolerance_m` of each other are treated as one; among
/// parallel links over the same site pair only the shortest is kept, the
/// rest joining the residue along with stray links and sub-2-hop chainlets.
/// A licensee whose links loop back on themselves is an error.
pub fn reconstruct_routes(
    records: &[LicenseRecord],
    tolerance_m: f64,
    profile: &RadioProfile,
) -> Result<Reconstruction, RouteError> {
    let mut by_licensee: BTreeMap<&str, Vec<&LicenseRecord>> = BTreeMap::new();
    for record in records {
        by_licensee
            .entry(&record.licensee)
            .or_default()
            .push(record);
    }

    let mut routes = Vec::new();
    let mut residue: Vec<LicenseRecord> = Vec::new();
    for (licensee, group) in by_licensee {
        let outcome = chain_group(licensee, &group, tolerance_m, profile)?;
        if let Some(route) = outcome.0 {
            routes.push(route);
        }
        residue.extend(outcome.1);
    }
    Ok(Reconstruction { routes, residue })
}

fn chain_group(
    licensee: &str,
    group: &[&LicenseRecord],
    tolerance_m: f64,
    profile: &RadioProfile,
) -> Result<(Option<ReconstructedRoute>, Vec<LicenseRecord>), RouteError> {
    // Cluster sites within tolerance.
    let mut sites: Vec<GeoPoint> = Vec::new();
    let site_of = |point: GeoPoint, sites: &mut Vec<GeoPoint>| -> usize {
        for (idx, &site) in sites.iter().enumerate() {
            if great_circle_distance(site, point) * 1000.0 <= tolerance_m {
                return idx;
            }
        }
        sites.push(point);
        sites.len() - 1
    };

    // Undirected edges between site clusters; parallel links keep the
    // shortest.
    struct Edge {
        a: usize,
        b: usize,
        length_km: f64,
        record: usize,
    }
    let mut edges: Vec<Edge> = Vec::new();
    for (idx, record) in group.iter().enumerate() {
        let a = site_of(record.tx, &mut sites);
        let b = site_of(record.rx, &mut sites);
        let length_km = great_circle_distance(record.tx, record.rx);
        let key = (a.min(b), a.max(b));
        if let Some(existing) = edges
            .iter_mut()
            .find(|e| (e.a.min(e.b), e.a.max(e.b)) == key)
        {
            // Parallel filing over the same site pair: keep the shorter.
            if length_km < existing.length_km {
                existing.length_km = length_km;
                existing.record = idx;
                existing.a = a;
                existing.b = b;
            }
            continue;
        }
        edges.push(Edge {
            a,
            b,
            length_km,
            record: idx,
        });
    }

    // Component analysis on the deduplicated graph.
    let n_sites = sites.len();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_sites]; // (site, edge idx)
    for (eidx, edge) in edges.iter().enumerate() {
        adjacency[edge.a].push((edge.b, eidx));
        adjacency[edge.b].push((edge.a, eidx));
    }

    let mut component = vec![usize::MAX; n_sites];
    let mut comp_count = 0usize;
    for start in 0..n_sites {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = comp_count;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adjacency[u] {
                if component[v] == usize::MAX {
                    component[v] = comp_count;
                    stack.push(v);
                }
            }
        }
        comp_count += 1;
    }
    let mut comp_nodes = vec![0usize; comp_count];
    let mut comp_edges = vec![0usize; comp_count];
    for site in 0..n_sites {
        comp_nodes[component[site]] += 1;
    }
    for edge in &edges {
        comp_edges[component[edge.a]] += 1;
    }
    if (0..comp_count).any(|c| comp_edges[c] >= comp_nodes[c]) {
        return Err(RouteError::CycleDetected(licensee.to_string()));
    }

    // Walk maximal simple paths from every chain end (degree-1 site,
    // following degree-2 interiors), and keep the longest.
    let mut best_chain: Vec<usize> = Vec::new(); // edge indices
    let mut best_sites: Vec<usize> = Vec::new();
    for start in 0..n_sites {
        if adjacency[start].len() != 1 {
            continue;
        }
        let mut chain_edges = Vec::new();
        let mut chain_sites = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = adjacency[cur].iter().find(|&&(v, _)| v != prev).copied();
            let Some((v, eidx)) = next else { break };
            chain_edges.push(eidx);
            chain_sites.push(v);
            if adjacency[v].len() != 2 {
                break;
            }
            prev = cur;
            cur = v;
        }
        let better = chain_edges.len() > best_chain.len()
            || (chain_edges.len() == best_chain.len() && chain_sites < best_sites);
        if better {
            best_chain = chain_edges;
            best_sites = chain_sites;
        }
    }

    let mut used = vec![false; group.len()];
    let result = if best_chain.len() >= 2 {
        for &eidx in &best_chain {
            used[edges[eidx].record] = true;
        }
        let points: Vec<GeoPoint> = best_sites.iter().map(|&s| sites[s]).collect();
        let route = Route::new(points).map_err(RouteError::Mw)?;
        let metrics = route_metrics(&route, profile, false).map_err(RouteError::Mw)?;
        let bottleneck = best_chain
            .iter()
            .map(|&eidx| group[edges[eidx].record].bitrate_mbps)
            .fold(f64::INFINITY, f64::min);
        Some(ReconstructedRoute {
            licensee: licensee.to_string(),
            route,
            metrics,
            bottleneck_bitrate_mbps: bottleneck,
        })
    } else {
        None
    };

    let mut leftovers: Vec<LicenseRecord> = Vec::new();
    for (idx, record) in group.iter().enumerate() {
        if !used[idx] {
            leftovers.push((*record).clone());
        }
    }
    Ok((result, leftovers))
}

/// Serialize records back to the license CSV format.
pub fn write_license_csv(records: &[LicenseRecord]) -> String {
    let mut out = String::from(LICENSE_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.licensee,
            r.tx.lat_deg,
            r.tx.lon_deg,
            r.rx.lat_deg,
            r.rx.lon_deg,
            r.freq_ghz,
            r.bitrate_mbps,
            r.filed
        ));
    }
    out
}

/// Export a route's hops as one license record per hop, the inverse of
/// [`reconstruct_routes`] for round-trip checks.
pub fn export_route_records(
    route: &Route,
    licensee: &str,
    freq_ghz: f64,
    bitrate_mbps: f64,
    filed: &str,
) -> Vec<LicenseRecord> {
    route
        .points
        .windows(2)
        .map(|w| LicenseRecord {
            licensee: licensee.to_string(),
            tx: w[0],
            rx: w[1],
            freq_ghz,
            bitrate_mbps,
            filed: filed.to_string(),
        })
        .collect()
}

pub const HOP_LIST_HEADER: &str = "seq,lat,lon,hop_km,bearing_rad";

/// Per-route hop list: each row is a chain point with the length and initial
/// bearing of the hop leaving it (empty for the final point).
pub fn write_hop_list_csv(route: &Route) -> String {
    let mut out = String::from(HOP_LIST_HEADER);
    out.push('\n');
    for (seq, window) in route.points.windows(2).enumerate() {
        let hop_km = great_circle_distance(window[0], window[1]);
        let bearing = initial_bearing(window[0], window[1]).expect("route points distinct");
        out.push_str(&format!(
            "{seq},{},{},{hop_km},{bearing}\n",
            window[0].lat_deg, window[0].lon_deg
        ));
    }
    let last = route.points.last().expect("route has points");
    out.push_str(&format!(
        "{},{},{},,\n",
        route.points.len() - 1,
        last.lat_deg,
        last.lon_deg
    ));
    out
}
