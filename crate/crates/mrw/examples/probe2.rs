//! Dev-only estimator-variant comparison (deleted before release).

use mrw::exec::map_indexed;
use mrw::mctest::ensemble_seed;
use mrw::stats::quantile_sorted;
use mrw::synth::{MrwGenerator, MrwParams};

fn quantiles(mut xs: Vec<f64>) -> (f64, f64, f64) {
    xs.sort_unstable_by(f64::total_cmp);
    (
        quantile_sorted(&xs, 0.025),
        quantile_sorted(&xs, 0.5),
        quantile_sorted(&xs, 0.975),
    )
}

fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
    }
    sxy / sxx
}

/// Spec estimator: overlapping aggregation, raw |r|^q, OLS 1..tau_max.
fn ghe_overlap(r: &[f64], q: f64, demean: bool) -> f64 {
    let n = r.len();
    let mean = if demean { r.iter().sum::<f64>() / n as f64 } else { 0.0 };
    let mut prefix = vec![0.0];
    let mut acc = 0.0;
    for &x in r {
        acc += x - mean;
        prefix.push(acc);
    }
    let tau_hi = 30;
    let mut ln_tau = Vec::new();
    let mut ln_m = Vec::new();
    for tau in 1..=tau_hi {
        let count = n - tau + 1;
        let mut s = 0.0;
        for t in 0..count {
            s += (prefix[t + tau] - prefix[t]).abs().powf(q);
        }
        ln_tau.push((tau as f64).ln());
        ln_m.push((s / count as f64).ln());
    }
    let mut hs = Vec::new();
    for tau_max in 10..=30 {
        hs.push(ols_slope(&ln_tau[..tau_max], &ln_m[..tau_max]) / q);
    }
    hs.iter().sum::<f64>() / hs.len() as f64
}

/// genhurst-style: stride-sampled level increments, per-scale linear
/// detrend, ratio normalization by detrended level moments.
fn ghe_genhurst(r: &[f64], q: f64) -> f64 {
    // level series S with S[0] = 0
    let mut s_lvl = vec![0.0];
    let mut acc = 0.0;
    for &x in r {
        acc += x;
        s_lvl.push(acc);
    }
    let l = s_lvl.len();
    let tau_hi = 30usize;

    let mut mcord = vec![0.0f64; tau_hi + 1];
    for tt in 1..=tau_hi {
        // subsample S at stride tt: indices 0, tt, 2tt, ...
        let idx: Vec<usize> = (0..l).step_by(tt).collect();
        let vv: Vec<f64> = idx.iter().map(|&i| s_lvl[i]).collect();
        let nn = vv.len();
        let dv: Vec<f64> = (1..nn).map(|k| vv[k] - vv[k - 1]).collect();
        // linear fit of vv against 1..nn
        let xs: Vec<f64> = (1..=nn).map(|k| k as f64).collect();
        let cc1 = ols_slope(&xs, &vv);
        let my = vv.iter().sum::<f64>() / nn as f64;
        let mx = xs.iter().sum::<f64>() / nn as f64;
        let cc2 = my - cc1 * mx;
        let num: f64 =
            dv.iter().map(|&d| (d - cc1).abs().powf(q)).sum::<f64>() / dv.len() as f64;
        let den: f64 = vv
            .iter()
            .zip(&xs)
            .map(|(&v, &x)| (v - cc1 * x - cc2).abs().powf(q))
            .sum::<f64>()
            / nn as f64;
        mcord[tt] = num / den;
    }
    let ln_tau: Vec<f64> = (1..=tau_hi).map(|t| (t as f64).ln()).collect();
    let ln_m: Vec<f64> = (1..=tau_hi).map(|t| mcord[t].ln()).collect();
    let mut hs = Vec::new();
    for tau_max in 10..=30 {
        hs.push(ols_slope(&ln_tau[..tau_max], &ln_m[..tau_max]) / q);
    }
    hs.iter().sum::<f64>() / hs.len() as f64
}

/// Overlapping aggregation but normalized by the realized level moment.
fn ghe_overlap_ratio(r: &[f64], q: f64) -> f64 {
    let n = r.len();
    let mut prefix = vec![0.0];
    let mut acc = 0.0;
    for &x in r {
        acc += x;
        prefix.push(acc);
    }
    // detrended level moment (whole path, tau-independent divisor would not
    // change slopes; use per-tau stride-free denominator from full level)
    let xs: Vec<f64> = (0..prefix.len()).map(|k| k as f64).collect();
    let cc1 = ols_slope(&xs, &prefix);
    let my = prefix.iter().sum::<f64>() / prefix.len() as f64;
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let cc2 = my - cc1 * mx;
    let den: f64 = prefix
        .iter()
        .zip(&xs)
        .map(|(&v, &x)| (v - cc1 * x - cc2).abs().powf(q))
        .sum::<f64>()
        / prefix.len() as f64;

    let tau_hi = 30;
    let mut ln_tau = Vec::new();
    let mut ln_m = Vec::new();
    for tau in 1..=tau_hi {
        let count = n - tau + 1;
        let mut s = 0.0;
        for t in 0..count {
            s += (prefix[t + tau] - prefix[t] - cc1 * tau as f64).abs().powf(q);
        }
        ln_tau.push((tau as f64).ln());
        ln_m.push((s / count as f64 / den).ln());
    }
    let mut hs = Vec::new();
    for tau_max in 10..=30 {
        hs.push(ols_slope(&ln_tau[..tau_max], &ln_m[..tau_max]) / q);
    }
    hs.iter().sum::<f64>() / hs.len() as f64
}

fn main() {
    let p = MrwParams::log_normal(0.2, 1250.0, 1.0).unwrap();
    let g = MrwGenerator::new(p, 1250).unwrap();
    println!("paper H(1) {{0.4782, 0.5110, 0.5427}}  H(2) {{0.4592, 0.4986, 0.5381}}  H(3) {{0.4326, 0.4838, 0.5421}}");
    for &q in &[1.0, 2.0, 3.0] {
        let variants: Vec<(&str, Box<dyn Fn(&[f64]) -> f64 + Sync>)> = vec![
            ("overlap      ", Box::new(move |r: &[f64]| ghe_overlap(r, q, false))),
            ("overlap+demean", Box::new(move |r: &[f64]| ghe_overlap(r, q, true))),
            ("overlap+ratio ", Box::new(move |r: &[f64]| ghe_overlap_ratio(r, q))),
            ("genhurst      ", Box::new(move |r: &[f64]| ghe_genhurst(r, q))),
        ];
        for (name, f) in &variants {
            let hs: Vec<f64> = map_indexed(1000, |i| {
                let r = g.increments(ensemble_seed(1000, i));
                f(&r)
            });
            let (a, b, c) = quantiles(hs);
            println!("q={q} {name}: {{{a:.4}, {b:.4}, {c:.4}}}");
        }
    }
}
