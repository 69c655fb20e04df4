//! Dev-only: seed sensitivity of the tight Table 2 cells (deleted before release)
use mrw::exec::map_indexed;
use mrw::mctest::ensemble_seed;
use mrw::scaling::{ghe, GheConfig};
use mrw::stats::quantile_sorted;
use mrw::synth::{MrwGenerator, MrwParams};
use mrw::timeseries::ReturnSeries;

fn main() {
    let cfg = GheConfig::default();
    let p = MrwParams::log_normal(0.3, 1250.0, 1.0).unwrap();
    let g = MrwGenerator::new(p, 4474).unwrap();
    for master in [1000u64, 5000, 9000, 42000] {
        for &q in &[2.0, 3.0] {
            let mut hs: Vec<f64> = map_indexed(1000, |i| {
                let r = ReturnSeries::from_values(g.increments(ensemble_seed(master, i)), 1, 0);
                ghe(&r, q, &cfg).unwrap().h
            });
            hs.sort_unstable_by(f64::total_cmp);
            println!(
                "master={master} q={q}: q025={:.4} q50={:.4} q975={:.4}",
                quantile_sorted(&hs, 0.025),
                quantile_sorted(&hs, 0.5),
                quantile_sorted(&hs, 0.975)
            );
        }
    }
}
