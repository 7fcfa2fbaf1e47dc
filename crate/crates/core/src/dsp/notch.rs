use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::series::{wraps_continuously, TimeSeries};

/// Quality factor of the mains notch (-3 dB width ≈ 1.4 Hz at 50 Hz).
pub const NOTCH_Q: f64 = 35.0;

/// Settling length of the edge padding, in filter time constants.
const PAD_TIME_CONSTANTS: f64 = 8.0;

/// Second-order IIR notch, coefficients normalized so `a[0] == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotchBiquad {
    pub b: [f64; 3],
    pub a: [f64; 3],
}

impl NotchBiquad {
    pub fn design(notch_frequency: f64, sample_rate: f64, q: f64) -> Result<Self> {
        if !(notch_frequency > 0.0 && notch_frequency < sample_rate / 2.0) {
            return Err(domain(format!(
                "notch at {notch_frequency} Hz must lie strictly between 0 and Nyquist ({} Hz)",
                sample_rate / 2.0
            )));
        }
        if !(q.is_finite() && q > 0.0) {
            return Err(domain("notch Q must be positive"));
        }
        let w0 = 2.0 * PI * notch_frequency / sample_rate;
        let alpha = w0.sin() / (2.0 * q);
        let c = w0.cos();
        let a0 = 1.0 + alpha;
        Ok(Self {
            b: [1.0 / a0, -2.0 * c / a0, 1.0 / a0],
            a: [1.0, -2.0 * c / a0, (1.0 - alpha) / a0],
        })
    }

    /// Single-pass frequency response at `f` for sample rate `fs`.
    pub fn response(&self, f: f64, fs: f64) -> Complex64 {
        let z1 = Complex64::from_polar(1.0, -2.0 * PI * f / fs);
        let z2 = z1 * z1;
        (self.b[0] + self.b[1] * z1 + self.b[2] * z2) / (self.a[0] + self.a[1] * z1 + self.a[2] * z2)
    }

    /// Decay time of the pole pair in samples.
    fn time_constant_samples(&self) -> f64 {
        let r = self.a[2].sqrt();
        1.0 / (1.0 - r).max(f64::EPSILON)
    }

    /// Direct form II transposed, state primed for a constant input equal to
    /// the first sample.
    fn run(&self, x: &[f64]) -> Vec<f64> {
        let [b0, b1, b2] = self.b;
        let [_, a1, a2] = self.a;
        let x0 = x.first().copied().unwrap_or(0.0);
        let mut z2 = (b2 - a2) * x0;
        let mut z1 = (b1 - a1) * x0 + z2;
        x.iter()
            .map(|&v| {
                let y = b0 * v + z1;
                z1 = b1 * v - a1 * y + z2;
                z2 = b2 * v - a2 * y;
                y
            })
            .collect()
    }
}

/// Zero-phase notch: the biquad is run forward then backward.
///
/// The record is padded on both sides before filtering so the filter is in
/// steady state over the real samples. Records that wrap continuously are
/// padded with their own periodic continuation; anything else gets an odd
/// reflection about the end samples.
pub fn notch_filter(input: &TimeSeries, notch_frequency: f64) -> Result<TimeSeries> {
    let fs = input.sample_rate();
    let biquad = NotchBiquad::design(notch_frequency, fs, NOTCH_Q)?;
    let x = input.samples();
    let n = x.len();
    let want = (PAD_TIME_CONSTANTS * biquad.time_constant_samples()).ceil() as usize;

    let extended: Vec<f64> = if wraps_continuously(x) {
        let pad = want;
        (0..n + 2 * pad)
            .map(|i| {
                let k = (i as isize - pad as isize).rem_euclid(n as isize) as usize;
                x[k]
            })
            .collect()
    } else {
        let pad = want.min(n - 1);
        let mut e = Vec::with_capacity(n + 2 * pad);
        e.extend((1..=pad).rev().map(|k| 2.0 * x[0] - x[k]));
        e.extend_from_slice(x);
        e.extend((1..=pad).map(|k| 2.0 * x[n - 1] - x[n - 1 - k]));
        e
    };
    let pad = (extended.len() - n) / 2;

    let mut y = biquad.run(&extended);
    y.reverse();
    let mut y = biquad.run(&y);
    y.reverse();
    input.with_samples(y[pad..pad + n].to_vec(), input.unit())
}
