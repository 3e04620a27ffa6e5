use lagline_mwphys::{
    earth_bulge_m, fresnel_radius_m, hop_feasible, route_metrics_from_distances, AtmosphereModel,
    RadioProfile, US_PER_KM,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn fresnel_scaling_exact(d in 0.1f64..200.0, f in 0.5f64..40.0) {
        let base = fresnel_radius_m(d, f);
        prop_assert!((fresnel_radius_m(4.0 * d, f) - 2.0 * base).abs() < 1e-9 * base);
        prop_assert!((fresnel_radius_m(d, 4.0 * f) - base / 2.0).abs() < 1e-9 * base);
    }

    #[test]
    fn bulge_quadratic_in_d_inverse_in_k(d in 0.1f64..200.0, k in 0.5f64..4.0) {
        let base = earth_bulge_m(d, k);
        prop_assert!((earth_bulge_m(2.0 * d, k) - 4.0 * base).abs() < 1e-9 * base.max(1e-12));
        prop_assert!((earth_bulge_m(d, 2.0 * k) - base / 2.0).abs() < 1e-9 * base.max(1e-12));
    }

    #[test]
    fn feasibility_monotone_in_distance(
        d1 in 1.0f64..150.0,
        extra in 0.0f64..100.0,
        h in 15.0f64..200.0,
    ) {
        let profile = RadioProfile::fiducial();
        let atm = AtmosphereModel::default();
        let d2 = d1 + extra;
        // Longer hops can only lose feasibility.
        if hop_feasible(d2, &profile, &atm, h, h, 10.0) {
            prop_assert!(hop_feasible(d1, &profile, &atm, h, h, 10.0));
        }
    }

    #[test]
    fn metrics_identity_holds(
        n in 1usize..100,
        d_geo in 100.0f64..2000.0,
        d_ex in 0.0f64..200.0,
        l_rad in 0.0f64..100.0,
    ) {
        let m = route_metrics_from_distances(n, d_geo, d_geo + d_ex, None, l_rad);
        prop_assert!((m.d_ex_km - d_ex).abs() < 1e-9);
        prop_assert!(m.d_tot_km >= m.d_geo_km);
        // L_ex = N L_rad + D_ex / c to 1e-6 us.
        let expected = n as f64 * l_rad + d_ex * US_PER_KM;
        prop_assert!((m.l_ex_us - expected).abs() < 1e-6);
        prop_assert!((m.l_ex_us - (m.l_equip_us + m.l_d_us)).abs() < 1e-12);
    }
}
