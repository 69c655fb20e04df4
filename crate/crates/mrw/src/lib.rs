//! Multifractal random walk toolkit: simulation, scaling-exponent
//! estimation, parameter calibration, and the Monte Carlo
//! quantile-exceedance test for time-varying multifractality.
//!
//! The pieces mirror the analysis pipeline for daily return series:
//!
//! - [`timeseries`]: price ingestion, log-returns, rolling windows.
//! - [`synth`]: log-normal / Student-t / log-gamma multifractal walks and
//!   fractional Brownian baselines via FFT circulant embedding,
//!   reproducible from a seed.
//! - [`scaling`]: structure functions and (weighted) generalized Hurst
//!   exponents; the multifractality proxy `delta H(q, q')`.
//! - [`calibrate`]: `lambda`/`T`/`sigma` recovery from the log-volatility
//!   autocovariance.
//! - [`mctest`]: null quantile bands, rolling-window traces, and
//!   exceedance reports.
//!
//! Ensemble loops run on rayon when the default `parallel` feature is on;
//! disabling it yields a dependency-free sequential build with identical
//! output.

pub mod calibrate;
pub mod error;
pub mod exec;
pub mod mctest;
pub mod scaling;
pub mod stats;
pub mod synth;
pub mod timeseries;

pub use error::{Error, Result};
pub use synth::{MrwParams, Variant};
