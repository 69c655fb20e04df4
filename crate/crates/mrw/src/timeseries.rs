//! Price-series ingestion, log-returns, and rolling windows.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Shortest rolling window that still supports scaling fits up to tau = 30.
pub const MIN_WINDOW_LEN: usize = 250;

/// A daily price series. Dates are optional metadata; all computation runs
/// on integer indices with a one-day increment.
#[derive(Debug, Clone)]
pub struct PriceSeries {
    dates: Option<Vec<String>>,
    prices: Vec<f64>,
    dropped: usize,
}

impl PriceSeries {
    pub fn new(prices: Vec<f64>) -> Result<Self> {
        Self::build(None, prices, 0)
    }

    pub fn with_dates(dates: Vec<String>, prices: Vec<f64>) -> Result<Self> {
        if dates.len() != prices.len() {
            return Err(Error::invalid_param(
                "dates",
                format!("{} dates for {} prices", dates.len(), prices.len()),
            ));
        }
        Self::build(Some(dates), prices, 0)
    }

    fn build(dates: Option<Vec<String>>, prices: Vec<f64>, dropped: usize) -> Result<Self> {
        if prices.len() < 2 {
            return Err(Error::SeriesTooShort {
                needed: 2,
                got: prices.len(),
            });
        }
        for (row, &p) in prices.iter().enumerate() {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::InvalidPrice { row, value: p });
            }
        }
        if let Some(dates) = &dates {
            validate_ordering(dates)?;
        }
        Ok(Self {
            dates,
            prices,
            dropped,
        })
    }

    /// Parse CSV with either a `date,price` pair or a single `price` column.
    /// A header row is detected by its non-numeric price field. Rows whose
    /// price does not parse to a finite number are dropped and counted.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let mut dates: Vec<String> = Vec::new();
        let mut prices: Vec<f64> = Vec::new();
        let mut dropped = 0usize;
        let mut two_columns = false;
        let mut first = true;

        for record in csv.records() {
            let record = record?;
            if record.is_empty() || (record.len() == 1 && record[0].is_empty()) {
                continue;
            }
            let price_field = if record.len() >= 2 { &record[1] } else { &record[0] };
            let parsed = price_field.parse::<f64>();
            if first {
                first = false;
                two_columns = record.len() >= 2;
                if parsed.is_err() {
                    // header row
                    continue;
                }
            }
            match parsed {
                Ok(p) if p.is_finite() => {
                    if two_columns {
                        dates.push(record[0].to_string());
                    }
                    prices.push(p);
                }
                _ => dropped += 1,
            }
        }

        if dropped > 0 {
            log::warn!("dropped {dropped} rows with non-finite or unparseable prices");
        }
        let dates = if two_columns { Some(dates) } else { None };
        Self::build(dates, prices, dropped)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        Self::from_csv_reader(file)
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn dates(&self) -> Option<&[String]> {
        self.dates.as_deref()
    }

    /// Rows discarded during ingestion because the price was not finite.
    pub fn dropped_rows(&self) -> usize {
        self.dropped
    }
}

/// Timestamps must be strictly increasing. Integer-like timestamps are
/// compared numerically, anything else lexicographically (correct for ISO
/// dates).
fn validate_ordering(dates: &[String]) -> Result<()> {
    let as_ints: Option<Vec<i64>> = dates.iter().map(|d| d.parse::<i64>().ok()).collect();
    let ordered = match as_ints {
        Some(ints) => ints.windows(2).all(|w| w[0] < w[1]),
        None => dates.windows(2).all(|w| w[0] < w[1]),
    };
    if ordered {
        Ok(())
    } else {
        Err(Error::invalid_param(
            "dates",
            "timestamps must be strictly increasing",
        ))
    }
}

/// Log-returns at a fixed scale `tau` (days).
#[derive(Debug, Clone)]
pub struct ReturnSeries {
    values: Vec<f64>,
    tau: usize,
    origin: usize,
}

impl ReturnSeries {
    /// Wrap precomputed returns (e.g. simulated increments) at scale `tau`.
    pub fn from_values(values: Vec<f64>, tau: usize, origin: usize) -> Self {
        Self {
            values,
            tau,
            origin,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Index (into the parent series) of the first return.
    pub fn origin(&self) -> usize {
        self.origin
    }

    /// The sub-series covered by `window`.
    pub fn window(&self, w: &Window) -> ReturnSeries {
        let slice = &self.values[w.start..w.start + w.length];
        ReturnSeries {
            values: slice.to_vec(),
            tau: self.tau,
            origin: self.origin + w.start,
        }
    }
}

/// A rolling-window view: `start..start+length` into a [`ReturnSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub length: usize,
}

impl Window {
    /// Index of the last return in the window; window results are
    /// timestamped here.
    pub fn end_index(&self) -> usize {
        self.start + self.length - 1
    }
}

/// `values[t] = log(prices[t+tau]) - log(prices[t])`.
pub fn log_returns(prices: &PriceSeries, tau: usize) -> Result<ReturnSeries> {
    if tau < 1 {
        return Err(Error::invalid_param("tau", "must be >= 1"));
    }
    if tau >= prices.len() {
        return Err(Error::SeriesTooShort {
            needed: tau + 1,
            got: prices.len(),
        });
    }
    let logs: Vec<f64> = prices.prices().iter().map(|p| p.ln()).collect();
    let values = (0..prices.len() - tau)
        .map(|t| logs[t + tau] - logs[t])
        .collect();
    Ok(ReturnSeries {
        values,
        tau,
        origin: 0,
    })
}

/// Overlapping windows starting at 0, `shift`, `2*shift`, ...; the last
/// window is the final one fully contained in the series.
pub fn rolling_windows(series: &ReturnSeries, length: usize, shift: usize) -> Result<Vec<Window>> {
    if shift < 1 {
        return Err(Error::invalid_param("shift", "must be >= 1"));
    }
    if length < MIN_WINDOW_LEN {
        return Err(Error::invalid_param(
            "length",
            format!("must be >= {MIN_WINDOW_LEN} returns, got {length}"),
        ));
    }
    if length > series.len() {
        return Err(Error::WindowTooLong {
            length,
            available: series.len(),
        });
    }
    let count = (series.len() - length) / shift + 1;
    Ok((0..count)
        .map(|i| Window {
            start: i * shift,
            length,
        })
        .collect())
}
