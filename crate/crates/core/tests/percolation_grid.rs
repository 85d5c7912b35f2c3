//! Monte Carlo behaviour of the sweep on the 30 x 30 strong grid, pinned to
//! the deterministic per-seed values so any change to the sampling or
//! summarisation path shows up as a diff.

use strongprod::{grid_product, percolation_sweep, SweepConfig};

#[test]
fn sparse_sites_keep_clusters_small_on_the_30_grid() {
    let g = grid_product(30, 2).unwrap();
    let report = percolation_sweep(
        &g,
        &SweepConfig {
            densities: vec![0.1],
            trials: 1000,
            seed: 12,
            quantile: 0.99,
            cluster_threshold: 12,
        },
    )
    .unwrap();
    let d = &report.densities[0];
    // The 99% quantile sits at 11 for this density regardless of seed; the
    // exact value is stable because trial seeds derive from (seed, index)
    // and summarisation is order-preserving.
    assert_eq!(d.quantile_value, 11);
    assert!(d.mean_max > 4.0 && d.mean_max < 7.0, "mean {}", d.mean_max);
    let est = report.estimate.expect("0.1 qualifies at threshold 12");
    assert_eq!(est.density, 0.1);
    assert_eq!(est.colors, 10.0);
}

#[test]
fn full_density_rejects_any_small_threshold() {
    let g = grid_product(10, 2).unwrap();
    let report = percolation_sweep(
        &g,
        &SweepConfig {
            densities: vec![1.0],
            trials: 5,
            seed: 3,
            quantile: 0.99,
            cluster_threshold: 99,
        },
    )
    .unwrap();
    assert_eq!(report.densities[0].quantile_value, 100);
    assert_eq!(report.densities[0].max_observed, 100);
    assert!(report.estimate.is_none());
}
