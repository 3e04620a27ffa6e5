//! Corridor calibration probe (dev tool).
use lagline_mwphys::{greedy_excess_estimate_km, AtmosphereModel, RadioProfile};
use lagline_routes::{
    build_feasibility_graph, generate_tower_field, plan_greedy_route, plan_optimal_route, FieldSpec,
};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n_seeds: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let mut spec = FieldSpec::default_corridor();
    if let Some(d) = args.get(2).and_then(|s| s.parse().ok()) {
        spec.density_per_km2 = d;
    }
    if let Some(f) = args.get(3).and_then(|s| s.parse().ok()) {
        // short fraction; medium fixed, tall = rest
        spec.classes[0].fraction = f;
        let rest = 1.0 - f - spec.classes[1].fraction;
        spec.classes[2].fraction = rest;
    }
    let profile = RadioProfile::fiducial();
    let atm = AtmosphereModel::default();

    let mut in_band = 0usize;
    let mut n_sum = 0.0;
    let mut dex_sum = 0.0;
    let mut nn_sum = 0.0;
    let mut greedy_dex_sum = 0.0;
    let mut greedy_fail = 0usize;
    let mut dominance_fail = 0usize;
    let mut ns = vec![];
    let mut dexs = vec![];
    for seed in 0..n_seeds {
        let field = generate_tower_field(&spec, seed).unwrap();
        let graph = build_feasibility_graph(&field, &profile, &atm, seed ^ 0xABCD).unwrap();
        let opt = plan_optimal_route(&graph).unwrap();
        let n = opt.metrics.n_hops;
        let dex = opt.metrics.d_ex_km;
        ns.push(n);
        dexs.push(dex);
        n_sum += n as f64;
        dex_sum += dex;
        if (19..=24).contains(&n) && (4.0..=10.0).contains(&dex) {
            in_band += 1;
        }
        match plan_greedy_route(&graph) {
            Ok(greedy) => {
                nn_sum += greedy.mean_forward_neighbors;
                greedy_dex_sum += greedy.metrics.d_ex_km;
                if opt.total_latency_us > greedy.total_latency_us + 1e-6 {
                    dominance_fail += 1;
                }
            }
            Err(_) => greedy_fail += 1,
        }
    }
    let g_ok = (n_seeds as usize - greedy_fail) as f64;
    let mean_nn = nn_sum / g_ok.max(1.0);
    let mean_greedy_dex = greedy_dex_sum / g_ok.max(1.0);
    let formula = greedy_excess_estimate_km(mean_nn, 1185.0);
    println!(
        "density={} towers~{:.0} | opt: mean N={:.1} mean Dex={:.1} in-band={}/{} | greedy: mean n_near={:.1} mean Dex={:.1} (formula {:.1}, ratio {:.2}) fails={} dom_fails={}",
        spec.density_per_km2,
        spec.density_per_km2 * spec.area_km2(),
        n_sum / n_seeds as f64,
        dex_sum / n_seeds as f64,
        in_band,
        n_seeds,
        mean_nn,
        mean_greedy_dex,
        formula,
        mean_greedy_dex / formula,
        greedy_fail,
        dominance_fail,
    );
    ns.sort();
    dexs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!(
        "  N range {:?}..{:?} median {} | Dex {:.1}..{:.1} median {:.1}",
        ns.first(),
        ns.last(),
        ns[ns.len() / 2],
        dexs[0],
        dexs[dexs.len() - 1],
        dexs[dexs.len() / 2]
    );
}
