//! MRW parameter estimation from the log-volatility autocovariance.
//!
//! Writing `log |r_t| = omega(t) + log |eps(t)|` makes the covariance
//! `C(h) = Cov(log|r_{t+h}|, log|r_t|)` proportional to the log-volatility
//! autocovariance for `h >= 1`, i.e. `C(h) ~ lambda^2 log(T / ((1+h) dt))`.
//! A least-squares fit of `C(h)` against `log(1+h)` therefore recovers
//! `lambda^2` from the slope and `T` from the intercept.

use crate::error::{Error, Result};
use crate::stats;
use crate::synth::MrwParams;
use crate::timeseries::ReturnSeries;

/// Default lag range of the calibration fit, inside the shortest plausible
/// integral scale while keeping per-lag noise low.
pub const DEFAULT_FIT_RANGE: (usize, usize) = (1, 100);

/// Hard cap on the recovered integral scale; its estimation is known to be
/// unstable and the exponentiated intercept can blow up on noisy data.
const MAX_INTEGRAL_SCALE_DT: f64 = 1e9;

/// Sample autocovariance of `log |r_t|` per lag.
#[derive(Debug, Clone)]
pub struct LogVolAutocov {
    pub lags: Vec<usize>,
    pub values: Vec<f64>,
    pub n_effective: Vec<usize>,
}

/// Outcome of a calibration fit. `params.sigma` is filled by
/// [`estimate_sigma`] when going through [`calibrate_returns`]; the
/// autocovariance fit itself only identifies `lambda` and `T`.
#[derive(Debug, Clone)]
pub struct CalibrationResult {
    pub params: MrwParams,
    pub fit_r2: f64,
    pub fit_range: (usize, usize),
    pub residuals: Vec<f64>,
    /// Set when the fitted slope was non-negative and `lambda` was clamped
    /// to zero (no detectable multifractality).
    pub lambda_clamped: bool,
}

/// Sample autocovariance of the log absolute returns at lags `1..=h_max`,
/// using the full-sample mean. Returns below `machine epsilon * sigma_hat`
/// are floored there so occasional zero moves do not produce `-inf`.
pub fn log_vol_autocov(returns: &ReturnSeries, h_max: usize) -> Result<LogVolAutocov> {
    let r = returns.values();
    let n = r.len();
    if h_max < 1 {
        return Err(Error::invalid_param("h_max", "must be >= 1"));
    }
    if h_max >= n / 4 {
        return Err(Error::invalid_param(
            "h_max",
            format!("must be < length/4 = {}", n / 4),
        ));
    }

    let sigma_hat = stats::sample_std(r);
    if !(sigma_hat > 0.0) {
        return Err(Error::Degenerate(
            "all returns are equal; log-volatility is undefined".into(),
        ));
    }
    let floor = f64::EPSILON * sigma_hat;
    let mut floored = 0usize;
    let logs: Vec<f64> = r
        .iter()
        .map(|&x| {
            let a = x.abs();
            if a < floor {
                floored += 1;
                floor.ln()
            } else {
                a.ln()
            }
        })
        .collect();
    if floored > 0 {
        log::warn!("floored {floored} near-zero returns before taking logs");
    }

    let mean = stats::mean(&logs);
    let mut lags = Vec::with_capacity(h_max);
    let mut values = Vec::with_capacity(h_max);
    let mut n_effective = Vec::with_capacity(h_max);
    for h in 1..=h_max {
        let count = n - h;
        let mut s = 0.0;
        for t in 0..count {
            s += (logs[t] - mean) * (logs[t + h] - mean);
        }
        lags.push(h);
        values.push(s / count as f64);
        n_effective.push(count);
    }
    Ok(LogVolAutocov {
        lags,
        values,
        n_effective,
    })
}

/// Fit `C(h)` against `log(1+h)` over `fit_range` and invert to
/// `lambda = sqrt(-slope)`, `T = dt * exp(intercept / lambda^2)`.
///
/// A non-negative slope means no detectable volatility memory: `lambda` is
/// clamped to zero (flagged, never imaginary) and `T` falls back to the top
/// of the fit range. `params.sigma` is a placeholder `1.0` here.
pub fn fit_mrw_params(
    curve: &LogVolAutocov,
    fit_range: (usize, usize),
    dt: f64,
) -> Result<CalibrationResult> {
    let (lo, hi) = fit_range;
    if lo < 1 || hi < lo {
        return Err(Error::invalid_param(
            "fit_range",
            "need 1 <= lo <= hi",
        ));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, &h) in curve.lags.iter().enumerate() {
        if h >= lo && h <= hi {
            xs.push((1.0 + h as f64).ln());
            ys.push(curve.values[i]);
        }
    }
    if xs.len() < 5 {
        return Err(Error::invalid_param(
            "fit_range",
            format!("only {} lags inside [{lo}, {hi}]; need at least 5", xs.len()),
        ));
    }

    let fit = stats::ols(&xs, &ys)?;
    let (lambda, integral_scale, clamped) = if fit.slope < 0.0 {
        let lambda2 = -fit.slope;
        let t_raw = (fit.intercept / lambda2).exp();
        let t = t_raw.clamp(2.0, MAX_INTEGRAL_SCALE_DT);
        if t != t_raw {
            log::warn!("integral scale estimate {t_raw:.3e} dt clamped to {t:.3e} dt");
        }
        (lambda2.sqrt(), t * dt, false)
    } else {
        log::warn!(
            "log-volatility autocovariance has non-negative slope {:.3e}; \
             no multifractality detected, reporting lambda = 0",
            fit.slope
        );
        ((0.0), (1 + hi) as f64 * dt, true)
    };

    let params = MrwParams::log_normal(lambda, integral_scale, 1.0)
        .and_then(|p| MrwParams::new(p.lambda, p.integral_scale, p.sigma, dt, p.variant))?;
    Ok(CalibrationResult {
        params,
        fit_r2: fit.r2,
        fit_range,
        residuals: fit.residuals,
        lambda_clamped: clamped,
    })
}

/// Residual scale estimate: the sample standard deviation of the one-day
/// returns (the mean-normalized walk has `Var(X(dt)) = sigma^2 dt`).
pub fn estimate_sigma(returns: &ReturnSeries) -> Result<f64> {
    if returns.len() < 2 {
        return Err(Error::SeriesTooShort {
            needed: 2,
            got: returns.len(),
        });
    }
    Ok(stats::sample_std(returns.values()))
}

/// Full calibration pipeline: autocovariance curve, lambda/T fit, and
/// sigma estimate rolled into one result.
pub fn calibrate_returns(
    returns: &ReturnSeries,
    fit_range: (usize, usize),
    dt: f64,
) -> Result<CalibrationResult> {
    let curve = log_vol_autocov(returns, fit_range.1)?;
    let mut result = fit_mrw_params(&curve, fit_range, dt)?;
    let sigma = estimate_sigma(returns)?;
    result.params = MrwParams::new(
        result.params.lambda,
        result.params.integral_scale,
        sigma,
        dt,
        result.params.variant,
    )?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;
    use rand_distr::StandardNormal;

    fn series(values: Vec<f64>) -> ReturnSeries {
        ReturnSeries::from_values(values, 1, 0)
    }

    fn exact_curve(lambda2: f64, t: f64, h_max: usize) -> LogVolAutocov {
        let lags: Vec<usize> = (1..=h_max).collect();
        let values = lags
            .iter()
            .map(|&h| lambda2 * (t / (1.0 + h as f64)).ln())
            .collect();
        let n_effective = vec![1000; h_max];
        LogVolAutocov {
            lags,
            values,
            n_effective,
        }
    }

    #[test]
    fn exact_curve_inverts_to_machine_precision() {
        let fit = fit_mrw_params(&exact_curve(0.04, 1250.0, 100), (1, 100), 1.0).unwrap();
        assert_relative_eq!(fit.params.lambda, 0.2, max_relative = 1e-10);
        assert_relative_eq!(fit.params.integral_scale, 1250.0, max_relative = 1e-8);
        assert!(!fit.lambda_clamped);
        assert_relative_eq!(fit.fit_r2, 1.0, max_relative = 1e-10);

        let fit = fit_mrw_params(&exact_curve(0.09, 631.0, 100), (1, 100), 1.0).unwrap();
        assert_relative_eq!(fit.params.lambda, 0.3, max_relative = 1e-10);
        assert_relative_eq!(fit.params.integral_scale, 631.0, max_relative = 1e-8);
    }

    #[test]
    fn iid_gaussian_has_no_volatility_memory() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let n = 60_000;
        let r = series((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect());
        let curve = log_vol_autocov(&r, 20).unwrap();
        // Var(log|Z|) = pi^2/8 for a standard Gaussian; C(h>=1) should sit
        // within 3 standard errors of zero.
        let var_log = std::f64::consts::PI * std::f64::consts::PI / 8.0;
        for (i, &h) in curve.lags.iter().enumerate() {
            let se = var_log / (curve.n_effective[i] as f64).sqrt();
            assert!(
                curve.values[i].abs() < 3.0 * se,
                "lag {h}: {} exceeds 3 se = {}",
                curve.values[i],
                3.0 * se
            );
        }
    }

    #[test]
    fn constant_magnitude_returns_have_zero_autocov() {
        let r = series((0..200).map(|i| if i % 2 == 0 { 0.5 } else { -0.5 }).collect());
        let curve = log_vol_autocov(&r, 10).unwrap();
        for &v in &curve.values {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-20);
        }
    }

    #[test]
    fn degenerate_series_is_rejected() {
        let r = series(vec![0.0; 500]);
        assert!(matches!(
            log_vol_autocov(&r, 10),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn positive_slope_clamps_lambda_to_zero() {
        // increasing autocovariance: impossible under the model
        let lags: Vec<usize> = (1..=50).collect();
        let values: Vec<f64> = lags.iter().map(|&h| 0.01 * (1.0 + h as f64).ln()).collect();
        let n_effective = vec![1000; 50];
        let curve = LogVolAutocov {
            lags,
            values,
            n_effective,
        };
        let fit = fit_mrw_params(&curve, (1, 50), 1.0).unwrap();
        assert_eq!(fit.params.lambda, 0.0);
        assert!(fit.lambda_clamped);
    }

    #[test]
    fn sigma_estimates() {
        let r = series(vec![0.3; 100]);
        assert_abs_diff_eq!(estimate_sigma(&r).unwrap(), 0.0, epsilon = 1e-12);

        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let n = 200_000;
        let r = series((0..n).map(|_| 2.0 * rng.sample::<f64, _>(StandardNormal)).collect());
        // se of the sample sd is roughly sigma / sqrt(2 n)
        let se = 2.0 / (2.0 * n as f64).sqrt();
        assert_abs_diff_eq!(estimate_sigma(&r).unwrap(), 2.0, epsilon = 3.0 * se);
    }

    #[test]
    fn h_max_bounds_are_enforced() {
        let r = series(vec![0.1, -0.2, 0.3, -0.1, 0.2, -0.3, 0.1, -0.2]);
        assert!(log_vol_autocov(&r, 2).is_err()); // 2 >= 8/4
        assert!(log_vol_autocov(&r, 0).is_err());
    }
}
