//! Signal-analysis chain applied to amplifier output records.

mod integrate;
mod notch;
mod regression;
mod snr;

pub use integrate::integrate_current;
pub use notch::{notch_filter, NotchBiquad, NOTCH_Q};
pub use regression::{exp_regression, ExpFit};
pub use snr::{analyze_snr, estimate_snr, kaiser_window, SnrAnalysis, KAISER_BETA, SNR_CEILING_DB};

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Index of the strongest non-DC bin of the record's DFT, i.e. the number of
/// cycles of its dominant tone. `None` for a constant record.
pub fn dominant_bin(x: &[f64]) -> Option<usize> {
    let n = x.len();
    if n < 2 {
        return None;
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let (k, p) = buf[1..=n / 2]
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c.norm_sqr()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    (p > 0.0).then_some(k)
}
