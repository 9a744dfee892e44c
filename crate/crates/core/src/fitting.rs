//! Least-squares fitting of power Lindley and Weibull laws to frequency tables
//! of discrete observations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distribution::{PowerLindley, Weibull};
use crate::error::{domain, Error, Result};
use crate::moment_analysis::analyze;
use crate::numerics::{minimize_2d, Minimum, SimplexOptions};
use crate::scalar::Real;

/// Observed `(value, frequency)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable<T> {
    name: String,
    rows: Vec<(T, T)>,
}

impl<T: Real> FrequencyTable<T> {
    /// Validates: at least two rows, finite non-negative entries, strictly
    /// increasing values and a positive total frequency.
    pub fn new(name: impl Into<String>, rows: Vec<(T, T)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Table(format!("need at least 2 rows, got {}", rows.len())));
        }
        for (i, &(v, f)) in rows.iter().enumerate() {
            if !(v >= T::zero() && v.is_finite()) {
                return Err(Error::Table(format!("row {}: value {v} is not a finite non-negative number", i + 1)));
            }
            if !(f >= T::zero() && f.is_finite()) {
                return Err(Error::Table(format!("row {}: frequency {f} is not a finite non-negative number", i + 1)));
            }
        }
        for (i, pair) in rows.windows(2).enumerate() {
            if !(pair[1].0 > pair[0].0) {
                return Err(Error::Table(format!(
                    "values must be strictly increasing: row {} has {} after {}",
                    i + 2,
                    pair[1].0,
                    pair[0].0
                )));
            }
        }
        let total = rows.iter().fold(T::zero(), |s, r| s + r.1);
        if !(total > T::zero()) {
            return Err(Error::Table("total frequency is zero".into()));
        }
        Ok(Self {
            name: name.into(),
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rows(&self) -> &[(T, T)] {
        &self.rows
    }

    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        self.rows.iter().map(|r| r.0)
    }

    pub fn total(&self) -> T {
        self.rows.iter().fold(T::zero(), |s, r| s + r.1)
    }
}

/// `w_i = f_i / Σ f_j`.
pub fn normalize_table<T: Real>(table: &FrequencyTable<T>) -> Vec<T> {
    let total = table.total();
    table.rows.iter().map(|r| r.1 / total).collect()
}

/// Weighted mean `Σ w_i v_i`.
pub fn sample_mean<T: Real>(table: &FrequencyTable<T>) -> T {
    normalize_table(table)
        .into_iter()
        .zip(table.values())
        .fold(T::zero(), |s, (w, v)| s + w * v)
}

/// Treatment of the value 0 when comparing weights with density values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroHandling {
    #[default]
    Include,
    Exclude,
}

/// Where the model is compared with the observed weights.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FitObjective<T> {
    /// Weight of each value against the model mass of its bin; bin edges at the
    /// midpoints between consecutive values, the outer edges at 0 and ∞.
    #[default]
    Binned,
    /// Weight against the density at the value itself.
    PdfAtValues { zero: ZeroHandling },
    /// Weight against the density at `value + shift`.
    PdfAtShifted { shift: T },
}

impl<T: Real> FitObjective<T> {
    pub fn pdf_shifted_default() -> Self {
        FitObjective::PdfAtShifted { shift: T::lit(0.5) }
    }

    pub fn validate(&self) -> Result<()> {
        if let FitObjective::PdfAtShifted { shift } = *self {
            if !(shift > T::zero() && shift.is_finite()) {
                return domain("pdf-at-shifted requires shift > 0", shift.as_f64());
            }
        }
        Ok(())
    }
}

impl<T: Real> fmt::Display for FitObjective<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitObjective::Binned => write!(f, "binned"),
            FitObjective::PdfAtValues { zero: ZeroHandling::Include } => write!(f, "pdf"),
            FitObjective::PdfAtValues { zero: ZeroHandling::Exclude } => write!(f, "pdf (zero excluded)"),
            FitObjective::PdfAtShifted { shift } => write!(f, "pdf-shifted {shift}"),
        }
    }
}

/// A distribution that can be compared against a frequency table.
pub trait ContinuousModel<T: Real> {
    fn pdf(&self, x: T) -> T;
    fn cdf(&self, x: T) -> T;
    fn survival(&self, x: T) -> T;
}

impl<T: Real> ContinuousModel<T> for PowerLindley<T> {
    fn pdf(&self, x: T) -> T {
        PowerLindley::pdf(self, x)
    }
    fn cdf(&self, x: T) -> T {
        PowerLindley::cdf(self, x)
    }
    fn survival(&self, x: T) -> T {
        PowerLindley::survival(self, x)
    }
}

impl<T: Real> ContinuousModel<T> for Weibull<T> {
    fn pdf(&self, x: T) -> T {
        Weibull::pdf(self, x)
    }
    fn cdf(&self, x: T) -> T {
        Weibull::cdf(self, x)
    }
    fn survival(&self, x: T) -> T {
        Weibull::survival(self, x)
    }
}

/// Sum of squared residuals between the table weights and the model.
pub fn objective_error<T: Real, M: ContinuousModel<T> + ?Sized>(
    model: &M,
    table: &FrequencyTable<T>,
    objective: &FitObjective<T>,
) -> T {
    let weights = normalize_table(table);
    let rows = table.rows();
    let sq = |a: T, b: T| (a - b) * (a - b);
    match *objective {
        FitObjective::Binned => {
            let half = T::lit(0.5);
            let n = rows.len();
            let mut sum = T::zero();
            let mut lower_cdf = T::zero();
            for i in 0..n {
                let mass = if i + 1 < n {
                    let edge = (rows[i].0 + rows[i + 1].0) * half;
                    let upper = model.cdf(edge);
                    let m = upper - lower_cdf;
                    lower_cdf = upper;
                    m
                } else {
                    let edge = (rows[i - 1].0 + rows[i].0) * half;
                    model.survival(edge)
                };
                sum = sum + sq(weights[i], mass);
            }
            sum
        }
        FitObjective::PdfAtValues { zero } => rows
            .iter()
            .zip(&weights)
            .filter(|(r, _)| !(zero == ZeroHandling::Exclude && r.0 == T::zero()))
            .fold(T::zero(), |s, (r, &w)| s + sq(w, model.pdf(r.0))),
        FitObjective::PdfAtShifted { shift } => rows
            .iter()
            .zip(&weights)
            .fold(T::zero(), |s, (r, &w)| s + sq(w, model.pdf(r.0 + shift))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    PowerLindley,
    Weibull,
}

impl ModelKind {
    pub fn label(&self) -> &'static str {
        match self {
            ModelKind::PowerLindley => "power-lindley",
            ModelKind::Weibull => "weibull",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Fitted parameters of either model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum FittedParams<T> {
    PowerLindley { alpha: T, beta: T },
    Weibull { shape: T, scale: T },
}

impl<T: Real> FittedParams<T> {
    fn build(kind: ModelKind, a: T, b: T) -> Result<Self> {
        Ok(match kind {
            ModelKind::PowerLindley => {
                PowerLindley::new(a, b)?;
                FittedParams::PowerLindley { alpha: a, beta: b }
            }
            ModelKind::Weibull => {
                Weibull::new(a, b)?;
                FittedParams::Weibull { shape: a, scale: b }
            }
        })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            FittedParams::PowerLindley { .. } => ModelKind::PowerLindley,
            FittedParams::Weibull { .. } => ModelKind::Weibull,
        }
    }

    /// `(shape, rate)` for power Lindley, `(shape, scale)` for Weibull.
    pub fn pair(&self) -> (T, T) {
        match *self {
            FittedParams::PowerLindley { alpha, beta } => (alpha, beta),
            FittedParams::Weibull { shape, scale } => (shape, scale),
        }
    }

    pub fn model(&self) -> Box<dyn ContinuousModel<T>> {
        match *self {
            FittedParams::PowerLindley { alpha, beta } => {
                Box::new(PowerLindley::new(alpha, beta).expect("validated on construction"))
            }
            FittedParams::Weibull { shape, scale } => {
                Box::new(Weibull::new(shape, scale).expect("validated on construction"))
            }
        }
    }
}

impl<T: Real> fmt::Display for FittedParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FittedParams::PowerLindley { alpha, beta } => write!(f, "alpha={alpha:.6} beta={beta:.6}"),
            FittedParams::Weibull { shape, scale } => write!(f, "shape={shape:.6} scale={scale:.6}"),
        }
    }
}

/// Result of a fit, laid out like a row of a model-comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport<T> {
    pub table: String,
    pub model: ModelKind,
    pub params: FittedParams<T>,
    pub objective: FitObjective<T>,
    pub error: T,
    pub mean: T,
    pub median: T,
    pub sample_mean: T,
    pub mean_gap: T,
    /// Set when the fitted power Lindley law is moment-indeterminate.
    pub annotation: Option<String>,
    pub converged: bool,
}

/// Multi-start points in (shape, rate or scale) space.
pub const DEFAULT_STARTS: [(f64, f64); 4] = [(0.5, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 3.0)];

/// Fits `model` to `table` by minimizing [`objective_error`] with the simplex
/// search, from `start` if given and from [`DEFAULT_STARTS`] otherwise.
pub fn fit<T: Real>(
    table: &FrequencyTable<T>,
    model: ModelKind,
    objective: &FitObjective<T>,
    start: Option<(T, T)>,
) -> Result<FitReport<T>> {
    objective.validate()?;
    let starts: Vec<(T, T)> = match start {
        Some(s) => vec![s],
        None => DEFAULT_STARTS.iter().map(|&(a, b)| (T::lit(a), T::lit(b))).collect(),
    };
    let loss = |a: T, b: T| match FittedParams::build(model, a, b) {
        Ok(p) => objective_error(p.model().as_ref(), table, objective),
        Err(_) => T::infinity(),
    };
    let options = SimplexOptions::default();
    let mut best: Option<Minimum<T>> = None;
    let mut failures = Vec::new();
    for &s in &starts {
        match minimize_2d(loss, s, &options) {
            Ok(m) => {
                if best.as_ref().is_none_or(|b| m.value < b.value) {
                    best = Some(m);
                }
            }
            Err(e) => failures.push(format!("start ({}, {}): {e}", s.0, s.1)),
        }
    }
    let best = best.ok_or_else(|| Error::Fit(failures.join("; ")))?;
    let params = FittedParams::build(model, best.point.0, best.point.1)?;
    report(table, params, objective, best.converged())
}

/// Builds the report for given parameters without fitting.
pub fn report<T: Real>(
    table: &FrequencyTable<T>,
    params: FittedParams<T>,
    objective: &FitObjective<T>,
    converged: bool,
) -> Result<FitReport<T>> {
    let (mean, median, annotation) = match params {
        FittedParams::PowerLindley { alpha, beta } => {
            let p = PowerLindley::new(alpha, beta)?;
            let verdict = analyze(&p);
            let annotation = (!verdict.determinate).then(|| "moment-indeterminate (α<1/2)".to_string());
            (p.moment(1)?, p.quantile(T::lit(0.5))?, annotation)
        }
        FittedParams::Weibull { shape, scale } => {
            let w = Weibull::new(shape, scale)?;
            (w.mean(), w.median(), None)
        }
    };
    let sample_mean = sample_mean(table);
    Ok(FitReport {
        table: table.name().to_string(),
        model: params.kind(),
        params,
        objective: *objective,
        error: objective_error(params.model().as_ref(), table, objective),
        mean,
        median,
        sample_mean,
        mean_gap: (sample_mean - mean).abs(),
        annotation,
        converged,
    })
}
