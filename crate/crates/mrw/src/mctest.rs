//! The quantile-exceedance test for time-varying multifractality.
//!
//! Null distribution: simulate an ensemble of walks with the calibrated
//! parameters, measure the weighted multifractality proxy
//! `delta H^w(1,2)` on each, and keep the {2.5%, 50%, 97.5%} quantiles.
//! The same proxy is then traced over rolling windows of the empirical
//! returns; the exceedance rate is the share of windows falling outside
//! the band. Ensembles and windows evaluate concurrently; quantiles and
//! traces are reduced in deterministic order.

use crate::calibrate::{self, DEFAULT_FIT_RANGE};
use crate::error::{Error, Result};
use crate::exec;
use crate::scaling::{self, GheConfig, DEFAULT_THETA_DAYS};
use crate::stats;
use crate::synth::{MrwGenerator, MrwParams, Variant};
use crate::timeseries::{self, PriceSeries, ReturnSeries};

/// Null-band quantiles of the multifractality proxy.
#[derive(Debug, Clone, Copy)]
pub struct QuantileBand {
    pub q025: f64,
    pub q50: f64,
    pub q975: f64,
    pub n_sims: usize,
    pub sim_length: usize,
    pub params: MrwParams,
}

impl QuantileBand {
    /// Width of the 95% range.
    pub fn spread(&self) -> f64 {
        self.q975 - self.q025
    }
}

/// `delta H^w` measured on each rolling window, timestamped at the window
/// end.
#[derive(Debug, Clone)]
pub struct DynamicalTrace {
    pub window_end_indices: Vec<usize>,
    pub delta_h_values: Vec<f64>,
    pub delta_h_errors: Vec<f64>,
}

impl DynamicalTrace {
    pub fn len(&self) -> usize {
        self.delta_h_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta_h_values.is_empty()
    }
}

/// One full test outcome: calibrated parameters, null band, window trace,
/// and the exceedance percentage.
#[derive(Debug, Clone)]
pub struct ExceedanceReport {
    pub params: MrwParams,
    pub band: QuantileBand,
    pub trace: DynamicalTrace,
    pub exceedance_pct: f64,
}

/// Knobs of the full testing pipeline. Defaults follow the reference
/// analysis: 1250-day windows shifted by 100 days, 1000 simulations of the
/// window length, damping time 415 days, fit scales 10..=30, proxy orders
/// (1, 2), calibration lags 1..=100.
#[derive(Debug, Clone, Copy)]
pub struct TestConfig {
    pub window_length: usize,
    pub shift: usize,
    pub n_sims: usize,
    /// Length of each null simulation; 0 means "use the window length".
    pub sim_length: usize,
    pub theta_days: f64,
    pub tau_max_lo: usize,
    pub tau_max_hi: usize,
    pub q: f64,
    pub q_prime: f64,
    pub fit_lo: usize,
    pub fit_hi: usize,
    pub seed: u64,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            window_length: 1250,
            shift: 100,
            n_sims: 1000,
            sim_length: 0,
            theta_days: DEFAULT_THETA_DAYS,
            tau_max_lo: 10,
            tau_max_hi: 30,
            q: 1.0,
            q_prime: 2.0,
            fit_lo: DEFAULT_FIT_RANGE.0,
            fit_hi: DEFAULT_FIT_RANGE.1,
            seed: 1,
        }
    }
}

impl TestConfig {
    pub fn ghe_config(&self) -> GheConfig {
        GheConfig {
            tau_max_lo: self.tau_max_lo,
            tau_max_hi: self.tau_max_hi,
            weighted: true,
            theta_days: self.theta_days,
        }
    }

    pub fn effective_sim_length(&self) -> usize {
        if self.sim_length == 0 {
            self.window_length
        } else {
            self.sim_length
        }
    }
}

/// Seed of ensemble member `i`: the master seed advanced by counter.
pub fn ensemble_seed(master: u64, i: usize) -> u64 {
    master.wrapping_add(i as u64)
}

/// `delta H^w(q, q')` on `n_sims` independent null simulations, in seed
/// order. This is the ensemble behind [`mc_band`]; exposed so callers can
/// histogram the raw null distribution.
pub fn delta_h_null_samples(
    params: &MrwParams,
    n_sims: usize,
    sim_length: usize,
    master_seed: u64,
    q: f64,
    q_prime: f64,
    ghe_cfg: &GheConfig,
) -> Result<Vec<f64>> {
    let generator = MrwGenerator::new(*params, sim_length)?;
    collect_samples(exec::map_indexed(n_sims, |i| {
        one_delta_h(&generator, master_seed, i, q, q_prime, ghe_cfg)
    }))
}

/// Sequential twin of [`delta_h_null_samples`]; same values, no thread
/// pool. Used by the benchmark suite to quantify the parallel speedup.
pub fn delta_h_null_samples_seq(
    params: &MrwParams,
    n_sims: usize,
    sim_length: usize,
    master_seed: u64,
    q: f64,
    q_prime: f64,
    ghe_cfg: &GheConfig,
) -> Result<Vec<f64>> {
    let generator = MrwGenerator::new(*params, sim_length)?;
    collect_samples(exec::map_indexed_seq(n_sims, |i| {
        one_delta_h(&generator, master_seed, i, q, q_prime, ghe_cfg)
    }))
}

fn one_delta_h(
    generator: &MrwGenerator,
    master_seed: u64,
    i: usize,
    q: f64,
    q_prime: f64,
    ghe_cfg: &GheConfig,
) -> Result<f64> {
    let seed = ensemble_seed(master_seed, i);
    let returns = ReturnSeries::from_values(generator.increments(seed), 1, 0);
    scaling::delta_h(&returns, q, q_prime, ghe_cfg)
        .map(|d| d.value)
        .map_err(|e| e.for_seed(seed))
}

fn collect_samples(results: Vec<Result<f64>>) -> Result<Vec<f64>> {
    results.into_iter().collect()
}

/// Monte Carlo null band: empirical {2.5%, 50%, 97.5%} quantiles of the
/// proxy over `n_sims` simulations of length `sim_length`.
pub fn mc_band(
    params: &MrwParams,
    n_sims: usize,
    sim_length: usize,
    master_seed: u64,
    q: f64,
    q_prime: f64,
    ghe_cfg: &GheConfig,
) -> Result<QuantileBand> {
    if n_sims < 100 {
        return Err(Error::invalid_param("n_sims", "need at least 100"));
    }
    if sim_length < 250 {
        return Err(Error::invalid_param("sim_length", "need at least 250"));
    }
    let mut samples =
        delta_h_null_samples(params, n_sims, sim_length, master_seed, q, q_prime, ghe_cfg)?;
    if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
        return Err(Error::Estimation(format!(
            "non-finite delta H in the null ensemble: {bad}"
        )));
    }
    samples.sort_unstable_by(f64::total_cmp);
    Ok(QuantileBand {
        q025: stats::quantile_sorted(&samples, 0.025),
        q50: stats::quantile_sorted(&samples, 0.50),
        q975: stats::quantile_sorted(&samples, 0.975),
        n_sims,
        sim_length,
        params: *params,
    })
}

/// `delta H^w(q, q')` on overlapping rolling windows, one value per window,
/// timestamped at the window's last return index.
pub fn dynamical_trace(
    returns: &ReturnSeries,
    window_length: usize,
    shift: usize,
    q: f64,
    q_prime: f64,
    ghe_cfg: &GheConfig,
) -> Result<DynamicalTrace> {
    let windows = timeseries::rolling_windows(returns, window_length, shift)?;
    let per_window = exec::map_indexed(windows.len(), |i| {
        let sub = returns.window(&windows[i]);
        scaling::delta_h(&sub, q, q_prime, ghe_cfg)
    });

    let mut window_end_indices = Vec::with_capacity(windows.len());
    let mut delta_h_values = Vec::with_capacity(windows.len());
    let mut delta_h_errors = Vec::with_capacity(windows.len());
    for (w, result) in windows.iter().zip(per_window) {
        let d = result?;
        window_end_indices.push(w.end_index());
        delta_h_values.push(d.value);
        delta_h_errors.push(d.err);
    }
    Ok(DynamicalTrace {
        window_end_indices,
        delta_h_values,
        delta_h_errors,
    })
}

/// Percentage of trace points strictly outside `[q025, q975]`.
pub fn exceedance(trace: &DynamicalTrace, band: &QuantileBand) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::Degenerate("empty trace has no exceedance rate".into()));
    }
    let outside = trace
        .delta_h_values
        .iter()
        .filter(|&&v| v > band.q975 || v < band.q025)
        .count();
    Ok(100.0 * outside as f64 / trace.len() as f64)
}

/// The full pipeline: returns, calibration, null band under `variant`,
/// rolling-window trace, exceedance. Stage failures are labelled.
pub fn run_test(
    prices: &PriceSeries,
    variant: Variant,
    cfg: &TestConfig,
) -> Result<ExceedanceReport> {
    let returns = timeseries::log_returns(prices, 1).map_err(|e| e.in_stage("returns"))?;
    run_test_on_returns(&returns, variant, cfg)
}

/// As [`run_test`], for callers that already hold one-day returns.
pub fn run_test_on_returns(
    returns: &ReturnSeries,
    variant: Variant,
    cfg: &TestConfig,
) -> Result<ExceedanceReport> {
    let calibration = calibrate::calibrate_returns(returns, (cfg.fit_lo, cfg.fit_hi), 1.0)
        .map_err(|e| e.in_stage("calibrate"))?;
    let base = calibration.params;
    let params = base
        .with_variant(variant)
        .map_err(|e| e.in_stage("calibrate"))?;

    let ghe_cfg = cfg.ghe_config();
    let band = mc_band(
        &params,
        cfg.n_sims,
        cfg.effective_sim_length(),
        cfg.seed,
        cfg.q,
        cfg.q_prime,
        &ghe_cfg,
    )
    .map_err(|e| e.in_stage("null-band"))?;

    let trace = dynamical_trace(
        returns,
        cfg.window_length,
        cfg.shift,
        cfg.q,
        cfg.q_prime,
        &ghe_cfg,
    )
    .map_err(|e| e.in_stage("trace"))?;

    let exceedance_pct = exceedance(&trace, &band).map_err(|e| e.in_stage("exceedance"))?;
    Ok(ExceedanceReport {
        params,
        band,
        trace,
        exceedance_pct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn band(q025: f64, q50: f64, q975: f64) -> QuantileBand {
        QuantileBand {
            q025,
            q50,
            q975,
            n_sims: 1000,
            sim_length: 1250,
            params: MrwParams::log_normal(0.2, 1250.0, 1.0).unwrap(),
        }
    }

    fn trace(values: Vec<f64>) -> DynamicalTrace {
        DynamicalTrace {
            window_end_indices: (0..values.len()).collect(),
            delta_h_errors: vec![0.0; values.len()],
            delta_h_values: values,
        }
    }

    #[test]
    fn exceedance_direct_count() {
        let t = trace(vec![0.01, 0.03, -0.05, 0.0]);
        let b = band(-0.02, 0.0, 0.02);
        assert_relative_eq!(exceedance(&t, &b).unwrap(), 50.0);
    }

    #[test]
    fn exceedance_inside_band_is_zero() {
        let t = trace(vec![0.01, -0.01, 0.0, 0.019]);
        let b = band(-0.02, 0.0, 0.02);
        assert_eq!(exceedance(&t, &b).unwrap(), 0.0);
    }

    #[test]
    fn exceedance_boundary_is_not_outside() {
        let t = trace(vec![0.02, -0.02]);
        let b = band(-0.02, 0.0, 0.02);
        assert_eq!(exceedance(&t, &b).unwrap(), 0.0);
    }

    #[test]
    fn exceedance_of_own_minmax_band_is_zero() {
        let values = vec![0.011, -0.007, 0.004, 0.021, -0.013];
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let t = trace(values);
        let b = band(min, 0.0, max);
        assert_eq!(exceedance(&t, &b).unwrap(), 0.0);
    }

    #[test]
    fn empty_trace_is_an_error() {
        let t = trace(vec![]);
        let b = band(-0.02, 0.0, 0.02);
        assert!(exceedance(&t, &b).is_err());
    }

    #[test]
    fn mc_band_validates_sizes() {
        let p = MrwParams::log_normal(0.2, 1250.0, 1.0).unwrap();
        let cfg = GheConfig::weighted(415.0);
        assert!(mc_band(&p, 10, 1250, 0, 1.0, 2.0, &cfg).is_err());
        assert!(mc_band(&p, 100, 100, 0, 1.0, 2.0, &cfg).is_err());
    }

    #[test]
    fn trace_window_count_and_determinism() {
        let p = MrwParams::log_normal(0.2, 400.0, 0.01).unwrap();
        let path = crate::synth::simulate_mrw(&p, 1450, 77).unwrap();
        let returns = path.into_returns();
        let cfg = GheConfig::weighted(415.0);
        let t = dynamical_trace(&returns, 1250, 100, 1.0, 2.0, &cfg).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.window_end_indices, vec![1249, 1349, 1449]);

        let t2 = dynamical_trace(&returns, 1250, 100, 1.0, 2.0, &cfg).unwrap();
        assert_eq!(t.delta_h_values, t2.delta_h_values);
    }

    #[test]
    fn tiled_series_gives_identical_trace_values() {
        // identical repeated window content => identical estimates
        let p = MrwParams::log_normal(0.25, 200.0, 0.01).unwrap();
        let tile = crate::synth::simulate_mrw(&p, 300, 5).unwrap().increments;
        let mut values = Vec::new();
        for _ in 0..3 {
            values.extend_from_slice(&tile);
        }
        let returns = ReturnSeries::from_values(values, 1, 0);
        let cfg = GheConfig::weighted(415.0);
        let t = dynamical_trace(&returns, 300, 300, 1.0, 2.0, &cfg).unwrap();
        assert_eq!(t.len(), 3);
        assert_relative_eq!(t.delta_h_values[0], t.delta_h_values[1], max_relative = 1e-12);
        assert_relative_eq!(t.delta_h_values[1], t.delta_h_values[2], max_relative = 1e-12);
    }

    #[test]
    fn parallel_and_sequential_ensembles_agree() {
        let p = MrwParams::log_normal(0.2, 300.0, 1.0).unwrap();
        let cfg = GheConfig::weighted(415.0);
        let a = delta_h_null_samples(&p, 8, 300, 3, 1.0, 2.0, &cfg).unwrap();
        let b = delta_h_null_samples_seq(&p, 8, 300, 3, 1.0, 2.0, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
