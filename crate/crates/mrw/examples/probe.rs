//! Dev-only measurement harness (deleted before release).

use mrw::exec::map_indexed;
use mrw::mctest::{delta_h_null_samples, ensemble_seed};
use mrw::scaling::{ghe, GheConfig};
use mrw::stats::quantile_sorted;
use mrw::synth::{MrwGenerator, MrwParams, Variant};
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
    let which = args.get(1).map(String::as_str).unwrap_or("all");

    if which == "clamp" || which == "all" {
        println!("== clamped spectral mass ==");
        for &(l, t, n) in &[
            (0.2, 1250.0, 1250usize),
            (0.25, 1250.0, 1250),
            (0.3, 2500.0, 1250),
            (0.25, 1250.0, 65536),
            (0.1228, 1260.0, 1250),
        ] {
            let p = MrwParams::log_normal(l, t, 1.0).unwrap();
            let g = MrwGenerator::new(p, n).unwrap();
            println!("lambda={l} T={t} n={n}: clamped_mass={:.3e}", g.clamped_mass());
        }
    }

    if which == "table2" || which == "all" {
        println!("== Table 2 check: GHE quantiles, 1000 paths of n=1250 ==");
        let cfg = GheConfig::default();
        for &(l, t) in &[(0.2, 1250.0), (0.25, 1250.0), (0.3, 2500.0)] {
            let p = MrwParams::log_normal(l, t, 1.0).unwrap();
            let g = MrwGenerator::new(p, 1250).unwrap();
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

    if which == "boeing" || which == "all" {
        println!("== Table 4 Boeing band: lambda=0.1228 T=1260, wGHE theta=415 ==");
        let p = MrwParams::log_normal(0.1228, 1260.0, 1.0651).unwrap();
        let cfg = GheConfig::weighted(415.0);
        let s = delta_h_null_samples(&p, 1000, 1250, 2000, 1.0, 2.0, &cfg).unwrap();
        let (a, b, c) = quantiles(s);
        println!("band: {{{a:.4}, {b:.4}, {c:.4}}}  paper: {{-0.0205, 0.0039, 0.0265}}");
    }

    if which == "medians" || which == "all" {
        println!("== median shift: lognormal vs student-t(4), several Table-4 rows ==");
        let cfg = GheConfig::weighted(415.0);
        for &(l, t) in &[(0.1738, 754.0), (0.2196, 568.0), (0.3010, 631.0), (0.1342, 739.0)] {
            let base = MrwParams::log_normal(l, t, 1.0).unwrap();
            let tp = base.with_variant(Variant::StudentT { nu: 4.0 }).unwrap();
            let sl = delta_h_null_samples(&base, 1000, 1250, 500, 1.0, 2.0, &cfg).unwrap();
            let st = delta_h_null_samples(&tp, 1000, 1250, 500, 1.0, 2.0, &cfg).unwrap();
            let (a1, b1, c1) = quantiles(sl);
            let (a2, b2, c2) = quantiles(st);
            println!("lambda={l} T={t}: LN {{{a1:.4}, {b1:.4}, {c1:.4}}}  tMRW {{{a2:.4}, {b2:.4}, {c2:.4}}}");
        }
    }

    if which == "fig2" || which == "all" {
        println!("== Fig 2 bias: mean H(1), H(3) vs theory across lambda, n=2^14, 40 seeds ==");
        let cfg = GheConfig::default();
        for &l in &[0.01f64, 0.1, 0.2, 0.3] {
            let p = MrwParams::log_normal(l.max(1e-6), 1250.0, 1.0).unwrap();
            let g = MrwGenerator::new(p, 1 << 14).unwrap();
            for &q in &[1.0, 3.0] {
                let hs: Vec<f64> = map_indexed(40, |i| {
                    let r = ReturnSeries::from_values(g.increments(ensemble_seed(77, i)), 1, 0);
                    ghe(&r, q, &cfg).unwrap().h
                });
                let mean = hs.iter().sum::<f64>() / hs.len() as f64;
                let theory = mrw::scaling::theoretical_h(q, l);
                println!("lambda={l} q={q}: mean={mean:.4} theory={theory:.4} diff={:+.4}", mean - theory);
            }
        }
    }

    if which == "gamma" || which == "all" {
        println!("== log-gamma q975 spread across rows ==");
        let cfg = GheConfig::weighted(415.0);
        for &(l, t) in &[(0.1738, 754.0), (0.2196, 568.0)] {
            let base = MrwParams::log_normal(l, t, 1.0).unwrap();
            let gp = base
                .with_variant(Variant::LogGamma { shape: 1.0, scale: 1.0 })
                .unwrap();
            let s = delta_h_null_samples(&gp, 1000, 1250, 900, 1.0, 2.0, &cfg).unwrap();
            let (a, b, c) = quantiles(s);
            println!("lambda={l} T={t}: logGamma {{{a:.4}, {b:.4}, {c:.4}}}");
        }
    }
}
