//! Dev-only: Table 2 vs simulation length hypothesis (deleted before release)

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
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4474);
    let cfg = GheConfig::default();
    println!("n = {n}");
    println!("paper l=0.2  T=1250: H1 {{0.4782, 0.5110, 0.5427}} H2 {{0.4592, 0.4986, 0.5381}} H3 {{0.4326, 0.4838, 0.5421}}");
    println!("paper l=0.25 T=1250: H1 {{0.4844, 0.5167, 0.5502}} H2 {{0.4527, 0.4976, 0.5415}} H3 {{0.4029, 0.4739, 0.5488}}");
    println!("paper l=0.3  T=2500: H1 {{0.4878, 0.5253, 0.5626}} H2 {{0.4398, 0.4968, 0.5558}} H3 {{0.3743, 0.4653, 0.5609}}");
    for &(l, t) in &[(0.2, 2500.0), (0.25, 2500.0), (0.3, 1250.0)] {
        let p = MrwParams::log_normal(l, t, 1.0).unwrap();
        let g = MrwGenerator::new(p, n).unwrap();
        for &q in &[1.0, 2.0, 3.0] {
            let hs: Vec<f64> = map_indexed(1000, |i| {
                let r = ReturnSeries::from_values(g.increments(ensemble_seed(1000, i)), 1, 0);
                ghe(&r, q, &cfg).unwrap().h
            });
            let (a, b, c) = quantiles(hs);
            println!("lambda={l} T={t} q={q}: {{{a:.4}, {b:.4}, {c:.4}}}");
        }
    }
}
