//! Dev-only: where does the GHE sampling spread come from? (deleted before release)

use mrw::exec::map_indexed;
use mrw::mctest::ensemble_seed;
use mrw::scaling::{ghe, GheConfig};
use mrw::stats::quantile_sorted;
use mrw::synth::{MrwGenerator, MrwParams};
use mrw::timeseries::ReturnSeries;

fn quantiles(mut xs: Vec<f64>) -> (f64, f64, f64) {
    xs.sort_unstable_by(f64::total_cmp);
    (
        quantile_sorted(&xs, 0.025),
        quantile_sorted(&xs, 0.5),
        quantile_sorted(&xs, 0.975),
    )
}

fn main() {
    let cfg = GheConfig::default();
    // lambda = 0 baseline: pure estimator noise on white Gaussian returns
    for &(l, t) in &[
        (1e-9, 1250.0),
        (0.1, 1250.0),
        (0.2, 50.0),
        (0.2, 200.0),
        (0.2, 1250.0),
        (0.2, 2500.0),
    ] {
        let p = MrwParams::log_normal(l, t, 1.0).unwrap();
        let g = MrwGenerator::new(p, 1250).unwrap();
        for &q in &[1.0, 2.0] {
            let hs: Vec<f64> = map_indexed(1000, |i| {
                let r = ReturnSeries::from_values(g.increments(ensemble_seed(1000, i)), 1, 0);
                ghe(&r, q, &cfg).unwrap().h
            });
            let (a, b, c) = quantiles(hs);
            println!(
                "lambda={l:<6} T={t:<6} q={q}: {{{a:.4}, {b:.4}, {c:.4}}} width={:.4}",
                c - a
            );
        }
    }
}
