use crate::error::EntropyError;

/// Tail fraction used when none is given.
pub const DEFAULT_WINDOW: f64 = 0.25;
pub const MIN_LEN: usize = 4;

/// A positive sequence `a_1..a_N` and the tail fraction used to estimate its
/// growth rate `limsup log a_n / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSeries {
    values: Vec<f64>,
    window: f64,
}

impl GrowthSeries {
    pub fn new(values: Vec<f64>, window: f64) -> Result<Self, EntropyError> {
        if values.len() < MIN_LEN {
            return Err(EntropyError::SeriesTooShort(values.len(), MIN_LEN));
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite() || **v <= 0.0) {
            return Err(EntropyError::NonPositive(v, i + 1));
        }
        Ok(GrowthSeries {
            values,
            window: window.clamp(f64::MIN_POSITIVE, 1.0),
        })
    }

    pub fn from_counts(counts: &[usize], window: f64) -> Result<Self, EntropyError> {
        Self::new(counts.iter().map(|&c| c as f64).collect(), window)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    /// Number of trailing points in the estimation window (at least 1).
    pub fn window_len(&self) -> usize {
        ((self.window * self.values.len() as f64).ceil() as usize).clamp(1, self.values.len())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    /// `max (log a_n)/n` over the window: the reported ϑ-proxy.
    pub theta_tail: f64,
    /// Least-squares slope of `log a_n` against `n` over the window.
    pub theta_slope: f64,
    /// RMS residual of that fit.
    pub residual: f64,
    /// Slope of `log a_n` against `log n` over the window.
    pub loglog_slope: f64,
    pub monotone: bool,
    pub subexponential: bool,
}

/// `theta_slope` below this, together with a bounded log-log slope, marks a
/// series as subexponential.
pub const SUBEXP_SLOPE: f64 = 0.25;
pub const SUBEXP_DEGREE: f64 = 6.0;

fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - my - slope * (x - mx);
            r * r
        })
        .sum();
    (slope, (rss / n).sqrt())
}

pub fn growth_rate(s: &GrowthSeries) -> GrowthEstimate {
    let n = s.values.len();
    let w = s.window_len();
    let logs: Vec<f64> = s.values.iter().map(|v| v.ln()).collect();
    let theta_tail = (n - w..n)
        .map(|i| logs[i] / (i + 1) as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    let fw = w.max(2);
    let idx: Vec<f64> = (n - fw..n).map(|i| (i + 1) as f64).collect();
    let ys = &logs[n - fw..];
    let (theta_slope, residual) = fit(&idx, ys);
    let lidx: Vec<f64> = idx.iter().map(|x| x.ln()).collect();
    let (loglog_slope, _) = fit(&lidx, ys);
    let monotone = s.values.windows(2).all(|p| p[1] >= p[0]);
    GrowthEstimate {
        theta_tail,
        theta_slope,
        residual,
        loglog_slope,
        monotone,
        subexponential: theta_slope < SUBEXP_SLOPE && loglog_slope <= SUBEXP_DEGREE,
    }
}

/// `a_n ≈ c·n^α` fitted by least squares on `(log n, log a_n)`, `n = 1..`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerFit {
    pub c: f64,
    pub alpha: f64,
    /// RMS residual in log space.
    pub residual: f64,
}

pub fn power_law_fit(values: &[f64]) -> Result<PowerFit, EntropyError> {
    check_positive(values)?;
    let xs: Vec<f64> = (1..=values.len()).map(|n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let (alpha, residual) = fit(&xs, &ys);
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    Ok(PowerFit {
        c: (my - alpha * mx).exp(),
        alpha,
        residual,
    })
}

/// `a_n ≈ a + c·n` by least squares; the residual is relative RMS, divided
/// by the mean of the values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub relative_residual: f64,
}

pub fn linear_fit(values: &[f64]) -> Result<LinearFit, EntropyError> {
    check_positive(values)?;
    let xs: Vec<f64> = (1..=values.len()).map(|n| n as f64).collect();
    let (slope, rms) = fit(&xs, values);
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = values.iter().sum::<f64>() / values.len() as f64;
    Ok(LinearFit {
        intercept: my - slope * mx,
        slope,
        relative_residual: rms / my,
    })
}

fn check_positive(values: &[f64]) -> Result<(), EntropyError> {
    if values.len() < 2 {
        return Err(EntropyError::SeriesTooShort(values.len(), 2));
    }
    match values.iter().position(|v| v.is_nan() || *v <= 0.0) {
        Some(i) => Err(EntropyError::NonPositive(values[i], i + 1)),
        None => Ok(()),
    }
}
