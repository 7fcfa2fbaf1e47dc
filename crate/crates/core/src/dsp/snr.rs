//! Periodogram SNR estimate.
//!
//! One Kaiser-windowed periodogram of the whole record. The fundamental is
//! the strongest non-DC bin; its main lobe is the signal. The DC lobe, the
//! fundamental lobe and the lobes of harmonics 2-6 are blanked and the
//! remaining bins are the noise region. Noise power is the median bin power
//! of that region scaled up to the full band. A periodogram bin of Gaussian
//! noise is exponentially distributed, whose median is `ln 2` times its
//! mean, so the median is divided by `ln 2` before scaling.

use std::cell::RefCell;
use std::rc::Rc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Kaiser shape parameter of the analysis window.
pub const KAISER_BETA: f64 = 38.0;
/// Highest harmonic blanked out of the noise region.
const LAST_HARMONIC: usize = 6;
const MIN_SAMPLES: usize = 64;
/// Estimates are capped here; anything above is arithmetic noise.
pub const SNR_CEILING_DB: f64 = 200.0;

/// Half-width in bins of every blanked lobe: `⌈β/π + 1⌉`.
fn lobe_half_width() -> usize {
    (KAISER_BETA / std::f64::consts::PI + 1.0).ceil() as usize
}

/// Modified Bessel function of the first kind, order zero (power series).
fn bessel_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > 1e-17 * sum {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// Symmetric Kaiser window of length `n`.
pub fn kaiser_window(n: usize, beta: f64) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    let denom = bessel_i0(beta);
    let m = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let r = 2.0 * i as f64 / m - 1.0;
            bessel_i0(beta * (1.0 - r * r).max(0.0).sqrt()) / denom
        })
        .collect()
}

thread_local! {
    static ANALYSIS_WINDOW: RefCell<Option<Rc<Vec<f64>>>> = const { RefCell::new(None) };
}

/// The analysis window for `n` samples; the last one built is reused.
fn analysis_window(n: usize) -> Rc<Vec<f64>> {
    ANALYSIS_WINDOW.with(|cell| {
        let mut cached = cell.borrow_mut();
        match cached.as_ref() {
            Some(w) if w.len() == n => Rc::clone(w),
            _ => {
                let w = Rc::new(kaiser_window(n, KAISER_BETA));
                *cached = Some(Rc::clone(&w));
                w
            }
        }
    })
}

/// Breakdown of one SNR estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrAnalysis {
    pub snr_db: f64,
    pub fundamental_hz: f64,
    pub signal_power: f64,
    pub noise_power: f64,
}

pub fn estimate_snr(input: &TimeSeries) -> Result<f64> {
    analyze_snr(input).map(|a| a.snr_db)
}

pub fn analyze_snr(input: &TimeSeries) -> Result<SnrAnalysis> {
    let x = input.samples();
    let n = x.len();
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientRecord(format!(
            "SNR estimation needs at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::UndefinedSnr("record is identically zero".into()));
    }

    let w = analysis_window(n);
    let w2: f64 = w.iter().map(|v| v * v).sum();
    let mut buf: Vec<Complex64> = x.iter().zip(w.iter()).map(|(&v, &wi)| Complex64::new(v * wi, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    // One-sided power per bin; sums to the record's mean-square power.
    let half = n / 2;
    let scale = 1.0 / (n as f64 * w2);
    let power: Vec<f64> = (0..=half)
        .map(|k| {
            let p = buf[k].norm_sqr() * scale;
            if k == 0 || (n.is_multiple_of(2) && k == half) {
                p
            } else {
                2.0 * p
            }
        })
        .collect();

    let lobe = lobe_half_width();
    let fundamental = (1..=half)
        .max_by(|&a, &b| power[a].total_cmp(&power[b]).then(b.cmp(&a)))
        .expect("at least one non-DC bin");
    if fundamental <= lobe {
        return Err(Error::InsufficientRecord(format!(
            "fundamental sits in bin {fundamental}, inside the DC lobe; record more than {lobe} cycles"
        )));
    }

    let span = |c: usize| c.saturating_sub(lobe)..=(c + lobe).min(half);
    let signal: f64 = power[span(fundamental)].iter().sum();

    let mut blanked = vec![false; half + 1];
    let mut blank = |c: usize| {
        for k in span(c) {
            blanked[k] = true;
        }
    };
    blank(0);
    for h in 1..=LAST_HARMONIC {
        let c = h * fundamental;
        if c <= half {
            blank(c);
        }
    }
    let mut noise_bins: Vec<f64> = power
        .iter()
        .zip(&blanked)
        .filter(|(_, &b)| !b)
        .map(|(&p, _)| p)
        .collect();
    if noise_bins.is_empty() {
        return Err(Error::InsufficientRecord("no noise-only bins left after blanking".into()));
    }
    let median = median_in_place(&mut noise_bins);
    let noise = median / std::f64::consts::LN_2 * power.len() as f64;

    if signal <= 0.0 {
        return Err(Error::UndefinedSnr("no power at the fundamental".into()));
    }
    let floor = signal * 10f64.powf(-SNR_CEILING_DB / 10.0);
    let noise = noise.max(floor);
    Ok(SnrAnalysis {
        snr_db: 10.0 * (signal / noise).log10(),
        fundamental_hz: fundamental as f64 * input.sample_rate() / n as f64,
        signal_power: signal,
        noise_power: noise,
    })
}

fn median_in_place(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}
