//! Synthetic path generation: multifractal random walks (log-normal,
//! Student-t residual, and log-gamma volatility variants) and fractional
//! Brownian motion baselines.
//!
//! Increments follow `eps(k) * exp(omega(k))` where `eps` is i.i.d. noise
//! with variance `sigma^2 * dt` and `omega` is a stationary log-volatility
//! with logarithmically decaying autocovariance
//! `lambda^2 * log(T / ((1+h) dt))` up to the integral scale `T`, zero
//! beyond. Sampling goes through an FFT circulant embedding of that
//! autocovariance; `eps` and `omega` are driven by independent sub-streams
//! of one master seed so the same `(params, n, seed)` always reproduces the
//! same path bit for bit.

mod embedding;

pub use embedding::CirculantEmbedding;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{StandardNormal, StudentT as StudentTDist};
use statrs::distribution::{ContinuousCDF, Gamma as GammaDist};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::timeseries::ReturnSeries;

/// Residual / volatility specification of the walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// Gaussian residuals, Gaussian log-volatility.
    LogNormal,
    /// Student-t residuals with `nu` degrees of freedom (scaled so the
    /// residual variance stays `sigma^2 * dt`); Gaussian log-volatility.
    StudentT { nu: f64 },
    /// Gaussian residuals; log-volatility with gamma marginals obtained by
    /// a marginal probability-integral transform of the correlated
    /// Gaussian field.
    LogGamma { shape: f64, scale: f64 },
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::LogNormal => "lognormal",
            Variant::StudentT { .. } => "student-t",
            Variant::LogGamma { .. } => "log-gamma",
        }
    }
}

/// Parameters of the multifractal random walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MrwParams {
    /// Intermittency coefficient (dimensionless).
    pub lambda: f64,
    /// Integral scale `T` in days; log-volatility memory vanishes beyond it.
    pub integral_scale: f64,
    /// Residual scale per sqrt(day).
    pub sigma: f64,
    /// Increment scale in days.
    pub dt: f64,
    pub variant: Variant,
}

/// Estimating moments of order `q` is only meaningful for `q * lambda <=
/// sqrt(2)`; analyses here go up to `q = 3`.
pub const DEFAULT_Q_MAX: f64 = 3.0;

impl MrwParams {
    pub fn new(
        lambda: f64,
        integral_scale: f64,
        sigma: f64,
        dt: f64,
        variant: Variant,
    ) -> Result<Self> {
        let p = Self {
            lambda,
            integral_scale,
            sigma,
            dt,
            variant,
        };
        p.validate()?;
        Ok(p)
    }

    /// Log-normal MRW with a one-day increment scale.
    pub fn log_normal(lambda: f64, integral_scale: f64, sigma: f64) -> Result<Self> {
        Self::new(lambda, integral_scale, sigma, 1.0, Variant::LogNormal)
    }

    pub fn student_t(lambda: f64, integral_scale: f64, sigma: f64, nu: f64) -> Result<Self> {
        Self::new(lambda, integral_scale, sigma, 1.0, Variant::StudentT { nu })
    }

    pub fn log_gamma(
        lambda: f64,
        integral_scale: f64,
        sigma: f64,
        shape: f64,
        scale: f64,
    ) -> Result<Self> {
        Self::new(
            lambda,
            integral_scale,
            sigma,
            1.0,
            Variant::LogGamma { shape, scale },
        )
    }

    /// Same parameters with a different residual/volatility variant.
    pub fn with_variant(mut self, variant: Variant) -> Result<Self> {
        self.variant = variant;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::invalid_param("lambda", "must be finite and >= 0"));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::invalid_param("dt", "must be finite and > 0"));
        }
        if !(self.integral_scale > self.dt) || !self.integral_scale.is_finite() {
            return Err(Error::invalid_param(
                "integral_scale",
                format!("must satisfy T > dt = {}", self.dt),
            ));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::invalid_param("sigma", "must be finite and > 0"));
        }
        match self.variant {
            Variant::LogNormal => {}
            Variant::StudentT { nu } => {
                if !(nu > 2.0) {
                    return Err(Error::invalid_param(
                        "nu",
                        "Student-t residuals need nu > 2 for a finite variance",
                    ));
                }
            }
            Variant::LogGamma { shape, scale } => {
                if !(shape > 0.0) || !(scale > 0.0) {
                    return Err(Error::invalid_param(
                        "shape/scale",
                        "log-gamma volatility needs shape > 0 and scale > 0",
                    ));
                }
            }
        }
        if DEFAULT_Q_MAX * self.lambda > std::f64::consts::SQRT_2 {
            log::warn!(
                "lambda = {} exceeds the moment bound for q up to {} (q*lambda <= sqrt(2)); \
                 high-order scaling estimates will not converge",
                self.lambda,
                DEFAULT_Q_MAX
            );
        }
        Ok(())
    }

    /// Stationary mean of the Gaussian log-volatility, `-lambda^2 ln(T/dt)`;
    /// pinned to minus its variance so the walk keeps a finite variance.
    pub fn omega_mean(&self) -> f64 {
        -self.omega_variance()
    }

    /// Stationary variance of the Gaussian log-volatility.
    pub fn omega_variance(&self) -> f64 {
        self.lambda * self.lambda * (self.integral_scale / self.dt).ln()
    }

    /// Largest moment order with a finite scaling exponent estimate.
    pub fn moment_bound(&self) -> f64 {
        if self.lambda == 0.0 {
            f64::INFINITY
        } else {
            std::f64::consts::SQRT_2 / self.lambda
        }
    }
}

/// Autocovariance of the log-volatility at integer lag `h`:
/// `lambda^2 log(T / ((1+h) dt))` while `(1+h) dt <= T`, zero beyond.
pub fn omega_autocovariance(params: &MrwParams, h: usize) -> f64 {
    let reach = (1.0 + h as f64) * params.dt;
    if reach <= params.integral_scale {
        params.lambda * params.lambda * (params.integral_scale / reach).ln()
    } else {
        0.0
    }
}

/// Autocovariance of fractional Gaussian noise with unit step variance.
pub fn fgn_autocovariance(hurst: f64, h: usize) -> f64 {
    let h = h as f64;
    let two_h = 2.0 * hurst;
    0.5 * ((h + 1.0).powf(two_h) - 2.0 * h.powf(two_h) + (h - 1.0).abs().powf(two_h))
}

/// A draw of the stationary Gaussian log-volatility process.
#[derive(Debug, Clone)]
pub struct OmegaPath {
    pub values: Vec<f64>,
    pub params: MrwParams,
}

/// Which model generated a [`SyntheticPath`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathModel {
    Mrw(MrwParams),
    Fbm { hurst: f64 },
}

/// A simulated walk: increments (the synthetic returns) and their running
/// sum.
#[derive(Debug, Clone)]
pub struct SyntheticPath {
    pub increments: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub seed: u64,
    pub model: PathModel,
}

impl SyntheticPath {
    fn from_increments(increments: Vec<f64>, seed: u64, model: PathModel) -> Self {
        let mut cumulative = Vec::with_capacity(increments.len());
        let mut acc = 0.0;
        for &x in &increments {
            acc += x;
            cumulative.push(acc);
        }
        Self {
            increments,
            cumulative,
            seed,
            model,
        }
    }

    /// View the increments as a unit-scale return series.
    pub fn to_returns(&self) -> ReturnSeries {
        ReturnSeries::from_values(self.increments.clone(), 1, 0)
    }

    pub fn into_returns(self) -> ReturnSeries {
        ReturnSeries::from_values(self.increments, 1, 0)
    }
}

// Sub-stream labels for the independent noise sources of one path.
const STREAM_EPS: u64 = 1;
const STREAM_OMEGA: u64 = 2;
const STREAM_FGN: u64 = 3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic, decorrelated sub-stream of a master seed.
fn sub_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(splitmix64(seed ^ splitmix64(stream)))
}

/// Cap on the circulant length: calibrated integral scales can be
/// astronomically large (they are known to be unstable), and lags beyond
/// this never separate two sample points anyway.
const MAX_EMBEDDING_LEN: usize = 1 << 22;

/// Reusable MRW sampler: the spectral embedding is factored once per
/// `(params, n)` and shared across seeds/threads.
#[derive(Debug, Clone)]
pub struct MrwGenerator {
    params: MrwParams,
    n: usize,
    embedding: Option<CirculantEmbedding>,
    /// Additive normalization of the gamma-marginal log-volatility.
    gamma_shift: f64,
}

impl MrwGenerator {
    pub fn new(params: MrwParams, n: usize) -> Result<Self> {
        params.validate()?;
        if n < 2 {
            return Err(Error::invalid_param("n", "path length must be >= 2"));
        }
        let embedding = if params.lambda > 0.0 {
            let support = (params.integral_scale / params.dt - 1.0).floor().max(0.0) as usize;
            let support = if 2 * (n + support) > MAX_EMBEDDING_LEN {
                log::warn!(
                    "integral scale T = {} truncated to fit the embedding cap",
                    params.integral_scale
                );
                MAX_EMBEDDING_LEN / 2 - n
            } else {
                support
            };
            Some(CirculantEmbedding::with_support(n, support, |h| {
                omega_autocovariance(&params, h)
            }))
        } else {
            None
        };
        let gamma_shift = match params.variant {
            Variant::LogGamma { shape, scale } => gamma_vol_shift(&params, shape, scale),
            _ => 0.0,
        };
        Ok(Self {
            params,
            n,
            embedding,
            gamma_shift,
        })
    }

    pub fn params(&self) -> &MrwParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Spectral mass clamped in the embedding (0 when exact or lambda = 0).
    pub fn clamped_mass(&self) -> f64 {
        self.embedding.as_ref().map_or(0.0, |e| e.clamped_mass())
    }

    /// Zero-mean Gaussian field with the log-volatility autocovariance.
    fn raw_gaussian(&self, seed: u64) -> Vec<f64> {
        match &self.embedding {
            Some(emb) => emb.sample(&mut sub_rng(seed, STREAM_OMEGA), self.n),
            None => vec![0.0; self.n],
        }
    }

    /// The stationary Gaussian log-volatility path (mean `-lambda^2
    /// ln(T/dt)`), as used by the log-normal and Student-t variants.
    pub fn omega(&self, seed: u64) -> OmegaPath {
        let mean = self.params.omega_mean();
        let mut values = self.raw_gaussian(seed);
        for v in values.iter_mut() {
            *v += mean;
        }
        OmegaPath {
            values,
            params: self.params,
        }
    }

    /// Simulated returns `eps(k) * exp(omega(k))`.
    pub fn increments(&self, seed: u64) -> Vec<f64> {
        let omega = match self.params.variant {
            Variant::LogGamma { shape, scale } if self.params.lambda > 0.0 => {
                let raw = self.raw_gaussian(seed);
                gamma_marginal_transform(&raw, &self.params, shape, scale, self.gamma_shift)
            }
            _ => self.omega(seed).values,
        };

        let mut rng = sub_rng(seed, STREAM_EPS);
        let sd = self.params.sigma * self.params.dt.sqrt();
        let mut out = Vec::with_capacity(self.n);
        match self.params.variant {
            Variant::StudentT { nu } => {
                let t = StudentTDist::new(nu).expect("validated nu");
                let scale = sd * ((nu - 2.0) / nu).sqrt();
                for &w in &omega {
                    let eps: f64 = rng.sample(t);
                    out.push(scale * eps * w.exp());
                }
            }
            _ => {
                for &w in &omega {
                    let eps: f64 = rng.sample(StandardNormal);
                    out.push(sd * eps * w.exp());
                }
            }
        }
        out
    }

    pub fn path(&self, seed: u64) -> SyntheticPath {
        SyntheticPath::from_increments(self.increments(seed), seed, PathModel::Mrw(self.params))
    }
}

/// Upper tail of the standard normal, `P(Z > z)`.
fn normal_upper(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

/// Additive constant applied to the gamma-marginal log-volatility. When the
/// exponential moment `E[exp(2 omega)]` exists (scale < 1/2) the shift
/// reproduces the log-normal normalization `E[exp(2 omega)] = 1`; otherwise
/// (including the default shape = scale = 1) that moment diverges and the
/// shift aligns the volatility median with the log-normal one instead.
fn gamma_vol_shift(params: &MrwParams, shape: f64, scale: f64) -> f64 {
    if 2.0 * scale < 1.0 {
        0.5 * shape * (1.0 - 2.0 * scale).ln()
    } else {
        let median = match GammaDist::new(shape, 1.0 / scale) {
            Ok(g) => g.inverse_cdf(0.5),
            Err(_) => shape * scale,
        };
        params.omega_mean() - median
    }
}

/// Map a correlated zero-mean Gaussian field to gamma marginals by the
/// marginal probability-integral transform, preserving rank dependence.
fn gamma_marginal_transform(
    raw: &[f64],
    params: &MrwParams,
    shape: f64,
    scale: f64,
    shift: f64,
) -> Vec<f64> {
    let sd = params.omega_variance().sqrt();
    if shape == 1.0 {
        // Exponential marginal: invert via the survival function, which
        // stays accurate deep in the upper tail.
        return raw
            .iter()
            .map(|&z| -scale * normal_upper(z / sd).ln() + shift)
            .collect();
    }
    let gamma = GammaDist::new(shape, 1.0 / scale).expect("validated shape/scale");
    raw.iter()
        .map(|&z| {
            let u = (1.0 - normal_upper(z / sd)).clamp(1e-300, 1.0 - 1e-16);
            gamma.inverse_cdf(u) + shift
        })
        .collect()
}

/// Reusable fractional-Gaussian-noise sampler (unit variance per step).
#[derive(Debug, Clone)]
pub struct FbmGenerator {
    hurst: f64,
    n: usize,
    embedding: CirculantEmbedding,
}

impl FbmGenerator {
    pub fn new(hurst: f64, n: usize) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::invalid_param(
                "hurst",
                format!("must lie strictly inside (0, 1), got {hurst}"),
            ));
        }
        if n < 2 {
            return Err(Error::invalid_param("n", "path length must be >= 2"));
        }
        let embedding = CirculantEmbedding::full(n, |h| fgn_autocovariance(hurst, h));
        Ok(Self {
            hurst,
            n,
            embedding,
        })
    }

    pub fn increments(&self, seed: u64) -> Vec<f64> {
        self.embedding.sample(&mut sub_rng(seed, STREAM_FGN), self.n)
    }

    pub fn path(&self, seed: u64) -> SyntheticPath {
        SyntheticPath::from_increments(
            self.increments(seed),
            seed,
            PathModel::Fbm { hurst: self.hurst },
        )
    }
}

/// One-shot draw of the Gaussian log-volatility path.
pub fn simulate_omega(params: &MrwParams, n: usize, seed: u64) -> Result<OmegaPath> {
    Ok(MrwGenerator::new(*params, n)?.omega(seed))
}

/// One-shot draw of a multifractal random walk.
pub fn simulate_mrw(params: &MrwParams, n: usize, seed: u64) -> Result<SyntheticPath> {
    Ok(MrwGenerator::new(*params, n)?.path(seed))
}

/// One-shot draw of fractional Brownian motion (unit-variance increments).
pub fn simulate_fbm(hurst: f64, n: usize, seed: u64) -> Result<SyntheticPath> {
    Ok(FbmGenerator::new(hurst, n)?.path(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base_params() -> MrwParams {
        MrwParams::log_normal(0.2, 1250.0, 1.0).unwrap()
    }

    #[test]
    fn omega_autocovariance_values() {
        let p = base_params();
        assert_relative_eq!(
            omega_autocovariance(&p, 0),
            0.04 * 1250f64.ln(),
            max_relative = 1e-12
        );
        assert_relative_eq!(omega_autocovariance(&p, 0), 0.28524, max_relative = 1e-4);
        assert_relative_eq!(
            omega_autocovariance(&p, 10),
            0.04 * (1250f64 / 11.0).ln(),
            max_relative = 1e-12
        );
        assert_eq!(omega_autocovariance(&p, 1249), 0.0);
        assert_eq!(omega_autocovariance(&p, 2000), 0.0);
    }

    #[test]
    fn zero_lambda_omega_is_exactly_zero() {
        let p = MrwParams::log_normal(0.0, 1250.0, 1.0).unwrap();
        let omega = simulate_omega(&p, 64, 3).unwrap();
        assert!(omega.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn paths_are_reproducible_and_seed_sensitive() {
        let p = base_params();
        let a = simulate_mrw(&p, 256, 11).unwrap();
        let b = simulate_mrw(&p, 256, 11).unwrap();
        let c = simulate_mrw(&p, 256, 12).unwrap();
        assert_eq!(a.increments, b.increments);
        assert_eq!(a.cumulative, b.cumulative);
        assert_ne!(a.increments, c.increments);
    }

    #[test]
    fn cumulative_is_running_sum() {
        let p = base_params();
        let path = simulate_mrw(&p, 128, 5).unwrap();
        let mut acc = 0.0;
        for (k, &inc) in path.increments.iter().enumerate() {
            acc += inc;
            assert_relative_eq!(path.cumulative[k], acc, max_relative = 1e-12);
        }
    }

    #[test]
    fn student_t_needs_heavy_dof() {
        assert!(MrwParams::student_t(0.2, 1250.0, 1.0, 2.0).is_err());
        assert!(MrwParams::student_t(0.2, 1250.0, 1.0, 4.0).is_ok());
    }

    #[test]
    fn log_gamma_params_validated() {
        assert!(MrwParams::log_gamma(0.2, 1250.0, 1.0, 0.0, 1.0).is_err());
        assert!(MrwParams::log_gamma(0.2, 1250.0, 1.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn fbm_rejects_out_of_range_hurst() {
        assert!(simulate_fbm(0.0, 64, 1).is_err());
        assert!(simulate_fbm(1.0, 64, 1).is_err());
        assert!(simulate_fbm(0.5, 64, 1).is_ok());
    }

    #[test]
    fn fgn_autocovariance_closed_form() {
        // lag-1 autocorrelation of fGn is 2^(2H-1) - 1
        assert_relative_eq!(fgn_autocovariance(0.75, 0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            fgn_autocovariance(0.75, 1),
            2f64.powf(0.5) - 1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(fgn_autocovariance(0.5, 1), 0.0, epsilon = 1e-12);
        assert_relative_eq!(fgn_autocovariance(0.5, 7), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn variants_share_the_volatility_stream() {
        // Same seed, different residual law: the log-volatility sub-stream
        // must be unaffected by how many residual draws happen.
        let n = 64;
        let p = base_params();
        let ln = MrwGenerator::new(p, n).unwrap();
        let st = MrwGenerator::new(
            p.with_variant(Variant::StudentT { nu: 4.0 }).unwrap(),
            n,
        )
        .unwrap();
        assert_eq!(ln.omega(7).values, st.omega(7).values);
    }
}
