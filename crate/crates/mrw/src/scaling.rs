//! Scaling-function estimation: structure functions, generalized Hurst
//! exponents (GHE), their exponentially weighted variant (wGHE), and the
//! multifractality proxy `delta H(q, q')`.
//!
//! The q-th structure function at scale `tau` is the uniform (or
//! exponentially damped) average of `|r_{t,tau}|^q` over all overlapping
//! scale-`tau` returns. `H(q)` comes from least-squares fits of
//! `log moment` against `log tau` over `tau = 1..tau_max`, averaged over a
//! range of `tau_max` choices; the dispersion across those choices is the
//! quoted uncertainty.

use crate::error::{Error, Result};
use crate::stats::{self, abs_pow};
use crate::timeseries::ReturnSeries;

/// Default damping characteristic time (days) of the weighted estimator.
pub const DEFAULT_THETA_DAYS: f64 = 415.0;
/// Default range of upper fit scales.
pub const DEFAULT_TAU_MAX_RANGE: (usize, usize) = (10, 30);

/// How generalized Hurst exponents are estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GheConfig {
    /// Smallest and largest `tau_max`; one fit per value, over `tau = 1..=tau_max`.
    pub tau_max_lo: usize,
    pub tau_max_hi: usize,
    /// Exponentially damp old observations with characteristic time
    /// `theta_days`.
    pub weighted: bool,
    pub theta_days: f64,
}

impl Default for GheConfig {
    fn default() -> Self {
        Self {
            tau_max_lo: DEFAULT_TAU_MAX_RANGE.0,
            tau_max_hi: DEFAULT_TAU_MAX_RANGE.1,
            weighted: false,
            theta_days: DEFAULT_THETA_DAYS,
        }
    }
}

impl GheConfig {
    /// The weighted (wGHE) estimator with damping time `theta_days`.
    pub fn weighted(theta_days: f64) -> Self {
        Self {
            weighted: true,
            theta_days,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.tau_max_lo < 2 {
            return Err(Error::invalid_param(
                "tau_max_lo",
                "need at least two scales per fit",
            ));
        }
        if self.tau_max_hi < self.tau_max_lo {
            return Err(Error::invalid_param(
                "tau_max_hi",
                "must be >= tau_max_lo",
            ));
        }
        if self.weighted && !(self.theta_days > 0.0) {
            return Err(Error::invalid_param("theta_days", "must be > 0"));
        }
        Ok(())
    }

    fn weighting(&self) -> Option<f64> {
        self.weighted.then_some(self.theta_days)
    }
}

/// Empirical moments of one order across scales `1..=tau_max`.
#[derive(Debug, Clone)]
pub struct StructureFunctionCurve {
    pub q: f64,
    pub taus: Vec<usize>,
    pub moments: Vec<f64>,
}

/// One estimated exponent with its fit-dispersion error.
#[derive(Debug, Clone, Copy)]
pub struct GheEstimate {
    pub q: f64,
    pub h: f64,
    /// Standard deviation of the per-`tau_max` fit slopes.
    pub h_std: f64,
    pub weighted: bool,
    pub theta_days: Option<f64>,
}

/// Difference of two generalized Hurst exponents with propagated error.
#[derive(Debug, Clone, Copy)]
pub struct DeltaH {
    pub value: f64,
    /// Root-sum-square of the two fit dispersions.
    pub err: f64,
}

/// Empirical scaling function `zeta*_q = q H(q)` on a grid of orders.
#[derive(Debug, Clone)]
pub struct ScalingFunction {
    pub qs: Vec<f64>,
    pub zetas: Vec<f64>,
    pub errors: Vec<f64>,
}

fn validate_q(q: f64) -> Result<()> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::invalid_param("q", "moment order must be > 0"));
    }
    Ok(())
}

/// Average `|r_{t,tau}|^q` for every scale `tau = 1..=tau_max` in one pass.
/// Base returns are aggregated to scale `tau` by overlapping sums, keeping
/// all `n - tau + 1` admissible start points. `damping` switches on
/// exponential weights `exp(-(t_last - t) / theta)` normalized to one.
fn moment_curve(
    returns: &ReturnSeries,
    q: f64,
    tau_max: usize,
    damping: Option<f64>,
) -> Result<Vec<f64>> {
    validate_q(q)?;
    let r = returns.values();
    let n = r.len();
    if tau_max < 1 {
        return Err(Error::invalid_param("tau", "must be >= 1"));
    }
    if tau_max >= n {
        return Err(Error::SeriesTooShort {
            needed: tau_max + 1,
            got: n,
        });
    }

    // prefix[t] = sum of the first t base returns, so the scale-tau return
    // starting at t is prefix[t + tau] - prefix[t].
    let mut prefix = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    prefix.push(0.0);
    for &x in r {
        acc += x;
        prefix.push(acc);
    }

    let mut out = Vec::with_capacity(tau_max);
    for tau in 1..=tau_max {
        let count = n - tau + 1;
        let m = match damping {
            None => {
                let mut s = 0.0;
                for t in 0..count {
                    s += abs_pow(prefix[t + tau] - prefix[t], q);
                }
                s / count as f64
            }
            Some(theta) => {
                // Geometric recursion instead of per-point exp(); walking
                // from the most recent observation backwards keeps the
                // largest weights exact.
                let rho = (-1.0 / theta).exp();
                let mut s = 0.0;
                let mut wsum = 0.0;
                let mut w = 1.0;
                for t in (0..count).rev() {
                    s += w * abs_pow(prefix[t + tau] - prefix[t], q);
                    wsum += w;
                    w *= rho;
                }
                s / wsum
            }
        };
        out.push(m);
    }
    Ok(out)
}

/// Uniform average of `|r_{t,tau}|^q` over all overlapping scale-`tau`
/// returns.
pub fn structure_function(returns: &ReturnSeries, q: f64, tau: usize) -> Result<f64> {
    Ok(moment_curve(returns, q, tau, None)?[tau - 1])
}

/// As [`structure_function`], but damping past observations with weights
/// proportional to `exp(-(t_last - t) / theta_days)`.
pub fn weighted_structure_function(
    returns: &ReturnSeries,
    q: f64,
    tau: usize,
    theta_days: f64,
) -> Result<f64> {
    if !(theta_days > 0.0) {
        return Err(Error::invalid_param("theta_days", "must be > 0"));
    }
    Ok(moment_curve(returns, q, tau, Some(theta_days))?[tau - 1])
}

/// The full moment curve used by the scaling fits.
pub fn structure_function_curve(
    returns: &ReturnSeries,
    q: f64,
    tau_max: usize,
    damping: Option<f64>,
) -> Result<StructureFunctionCurve> {
    let moments = moment_curve(returns, q, tau_max, damping)?;
    Ok(StructureFunctionCurve {
        q,
        taus: (1..=tau_max).collect(),
        moments,
    })
}

/// Generalized Hurst exponent at order `q`: mean slope of
/// `log moment` vs `log tau` across the configured `tau_max` range,
/// divided by `q`; the spread across `tau_max` choices is `h_std`.
pub fn ghe(returns: &ReturnSeries, q: f64, cfg: &GheConfig) -> Result<GheEstimate> {
    cfg.validate()?;
    let moments = moment_curve(returns, q, cfg.tau_max_hi, cfg.weighting())?;

    let mut ln_tau = Vec::with_capacity(moments.len());
    let mut ln_m = Vec::with_capacity(moments.len());
    for (i, &m) in moments.iter().enumerate() {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Estimation(format!(
                "structure function is not positive at q = {q}, tau = {}: {m} \
                 (series too short or degenerate)",
                i + 1
            )));
        }
        ln_tau.push(((i + 1) as f64).ln());
        ln_m.push(m.ln());
    }

    let mut candidates = Vec::with_capacity(cfg.tau_max_hi - cfg.tau_max_lo + 1);
    for tau_max in cfg.tau_max_lo..=cfg.tau_max_hi {
        let fit = stats::ols(&ln_tau[..tau_max], &ln_m[..tau_max])?;
        candidates.push(fit.slope / q);
    }
    Ok(GheEstimate {
        q,
        h: stats::mean(&candidates),
        h_std: stats::sample_std(&candidates),
        weighted: cfg.weighted,
        theta_days: cfg.weighting(),
    })
}

/// Multifractality proxy `H(q) - H(q')` with root-sum-square error.
pub fn delta_h(returns: &ReturnSeries, q: f64, q_prime: f64, cfg: &GheConfig) -> Result<DeltaH> {
    if q == q_prime {
        return Err(Error::invalid_param("q_prime", "must differ from q"));
    }
    let a = ghe(returns, q, cfg)?;
    let b = ghe(returns, q_prime, cfg)?;
    Ok(DeltaH {
        value: a.h - b.h,
        err: (a.h_std * a.h_std + b.h_std * b.h_std).sqrt(),
    })
}

/// Empirical scaling function on a grid of orders; `q = 0` maps to the
/// conventional `zeta*_0 = 0`.
pub fn empirical_zeta(
    returns: &ReturnSeries,
    q_grid: &[f64],
    cfg: &GheConfig,
) -> Result<ScalingFunction> {
    let mut zetas = Vec::with_capacity(q_grid.len());
    let mut errors = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        if q == 0.0 {
            zetas.push(0.0);
            errors.push(0.0);
            continue;
        }
        let est = ghe(returns, q, cfg)?;
        zetas.push(q * est.h);
        errors.push(q * est.h_std);
    }
    Ok(ScalingFunction {
        qs: q_grid.to_vec(),
        zetas,
        errors,
    })
}

/// Exact multifractal spectrum of the log-normal walk:
/// `zeta_q = (q - q (q - 2) lambda^2) / 2`.
pub fn theoretical_zeta(q: f64, lambda: f64) -> f64 {
    (q - q * (q - 2.0) * lambda * lambda) / 2.0
}

/// `zeta_q / q`. Logs a warning above the moment bound `q > sqrt(2)/lambda`,
/// where empirical estimates stop converging to this value.
pub fn theoretical_h(q: f64, lambda: f64) -> f64 {
    assert!(q != 0.0, "H(q) is undefined at q = 0");
    if lambda > 0.0 && q > std::f64::consts::SQRT_2 / lambda {
        log::warn!(
            "q = {q} exceeds the moment bound sqrt(2)/lambda = {}; \
             the theoretical exponent is not observable",
            std::f64::consts::SQRT_2 / lambda
        );
    }
    theoretical_zeta(q, lambda) / q
}
