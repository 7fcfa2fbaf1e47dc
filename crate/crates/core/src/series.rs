use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Error, Result};

/// Physical unit carried by a [`TimeSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Volts,
    Amperes,
    Coulombs,
    Dimensionless,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Volts => "V",
            Unit::Amperes => "A",
            Unit::Coulombs => "C",
            Unit::Dimensionless => "1",
        })
    }
}

/// Uniformly sampled real waveform.
///
/// Always holds at least two finite samples and a finite positive sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    sample_rate: f64,
    unit: Unit,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_rate: f64, unit: Unit) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "a time series needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(domain(format!("sample rate must be finite and positive, got {sample_rate}")));
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(domain(format!("sample {i} is not finite")));
        }
        Ok(Self { samples, sample_rate, unit })
    }

    /// `cycles` periods of `amplitude * sin(2π f t)` sampled at `sample_rate`.
    ///
    /// The record length must come out as a whole number of samples so the
    /// waveform wraps continuously when treated as periodic.
    pub fn sine(amplitude: f64, frequency: f64, sample_rate: f64, cycles: u32, unit: Unit) -> Result<Self> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(domain(format!("sine frequency must be positive, got {frequency}")));
        }
        if cycles == 0 {
            return Err(Error::InsufficientRecord("a sine drive needs at least one cycle".into()));
        }
        let exact = f64::from(cycles) * sample_rate / frequency;
        let n = exact.round();
        if (exact - n).abs() > 1e-6 * exact.max(1.0) {
            return Err(domain(format!(
                "{cycles} cycles at {frequency} Hz is not a whole number of samples at {sample_rate} Hz"
            )));
        }
        let n = n as usize;
        let w = 2.0 * PI * frequency / sample_rate;
        let samples = (0..n).map(|i| amplitude * (w * i as f64).sin()).collect();
        Self::new(samples, sample_rate, unit)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.sample_rate
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 / self.sample_rate
    }

    /// Same rate, new samples and unit.
    pub fn with_samples(&self, samples: Vec<f64>, unit: Unit) -> Result<Self> {
        Self::new(samples, self.sample_rate, unit)
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn rms(&self) -> f64 {
        rms(&self.samples)
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

pub(crate) fn rms(x: &[f64]) -> f64 {
    (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
}

/// Whether the record can be repeated end to end without a jump: the step
/// from the last sample back to the first is no larger than twice the
/// largest step inside the record.
pub(crate) fn wraps_continuously(x: &[f64]) -> bool {
    let n = x.len();
    if n < 3 {
        return true;
    }
    let max_step = x.windows(2).fold(0.0_f64, |m, w| m.max((w[1] - w[0]).abs()));
    let peak = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (x[0] - x[n - 1]).abs() <= 2.0 * max_step + 1e-12 * peak
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_and_non_finite() {
        assert!(matches!(TimeSeries::new(vec![1.0], 1.0, Unit::Volts), Err(Error::InsufficientData(_))));
        assert!(TimeSeries::new(vec![1.0, f64::NAN], 1.0, Unit::Volts).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0], 0.0, Unit::Volts).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0], f64::INFINITY, Unit::Volts).is_err());
    }

    #[test]
    fn sine_requires_whole_sample_count() {
        let s = TimeSeries::sine(1.0, 3.0, 1002.0, 20, Unit::Volts).unwrap();
        assert_eq!(s.len(), 6680);
        assert!(wraps_continuously(s.samples()));
        assert!(TimeSeries::sine(1.0, 3.0, 1000.0, 1, Unit::Volts).is_err());
        assert!(TimeSeries::sine(1.0, 3.0, 1002.0, 0, Unit::Volts).is_err());
    }

    #[test]
    fn wrap_detects_partial_cycle() {
        let quarter: Vec<f64> = (0..100).map(|i| (i as f64 / 100.0 * PI / 2.0).sin()).collect();
        assert!(!wraps_continuously(&quarter));
        assert!(wraps_continuously(&[0.0; 10]));
    }
}
