use crate::error::{domain, Result};
use crate::series::{TimeSeries, Unit};

/// Cumulative trapezoidal charge `Q(t) = ∫ I dt`, starting at zero.
///
/// With `detrend` set the record mean is subtracted from the current first,
/// which removes the linear charge ramp a DC bias or leakage would add.
pub fn integrate_current(current: &TimeSeries, detrend: bool) -> Result<TimeSeries> {
    if current.unit() != Unit::Amperes {
        return Err(domain(format!("expected a current record, got unit {}", current.unit())));
    }
    let offset = if detrend { current.mean() } else { 0.0 };
    let half_dt = 0.5 * current.dt();
    let x = current.samples();
    let mut q = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    q.push(0.0);
    for w in x.windows(2) {
        acc += half_dt * ((w[0] - offset) + (w[1] - offset));
        q.push(acc);
    }
    current.with_samples(q, Unit::Coulombs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_current_zero_charge() {
        let i = TimeSeries::new(vec![0.0; 50], 10.0, Unit::Amperes).unwrap();
        let q = integrate_current(&i, false).unwrap();
        assert!(q.samples().iter().all(|&v| v == 0.0));
        assert_eq!(q.unit(), Unit::Coulombs);
    }

    #[test]
    fn constant_current_is_exact() {
        let i0 = 2.5e-9;
        let i = TimeSeries::new(vec![i0; 1001], 1000.0, Unit::Amperes).unwrap();
        let q = integrate_current(&i, false).unwrap();
        let t = 1000.0 / 1000.0;
        assert!((q.samples()[1000] - i0 * t).abs() <= 1e-12 * i0 * t);
    }

    #[test]
    fn detrend_removes_ramp() {
        let i = TimeSeries::new(vec![1e-9; 100], 100.0, Unit::Amperes).unwrap();
        let q = integrate_current(&i, true).unwrap();
        // Residual is rounding of the mean only: far below I·T = 1e-9 C.
        assert!(q.samples().iter().all(|&v| v.abs() < 1e-21));
    }

    #[test]
    fn sine_matches_antiderivative() {
        let (i0, f) = (1e-9, 2.0);
        let fs = 1000.0 * f;
        let n = 1001;
        let x: Vec<f64> = (0..n).map(|k| i0 * (2.0 * PI * f * k as f64 / fs).sin()).collect();
        let q = integrate_current(&TimeSeries::new(x, fs, Unit::Amperes).unwrap(), false).unwrap();
        let exact: Vec<f64> = (0..n)
            .map(|k| i0 / (2.0 * PI * f) * (1.0 - (2.0 * PI * f * k as f64 / fs).cos()))
            .collect();
        let err: Vec<f64> = q.samples().iter().zip(&exact).map(|(a, b)| a - b).collect();
        assert!(crate::series::rms(&err) < 1e-3 * crate::series::rms(&exact));
    }

    #[test]
    fn rejects_non_current() {
        let v = TimeSeries::new(vec![0.0; 4], 10.0, Unit::Volts).unwrap();
        assert!(integrate_current(&v, false).is_err());
    }
}
