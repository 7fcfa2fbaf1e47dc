//! Selectable-gain transimpedance stage and acquisition simulator.
//!
//! The op-amp is idealized: its inverting input is a perfect virtual ground
//! and the feedback network `R_f ∥ C_f` gives a single-pole response
//! `H(f) = -R_f / (1 + j 2π f R_f C_f)`. The device under test sits between
//! the drive source and the virtual ground, so its current is simply
//! `I(f) = V(f) / Z(f)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rustfft::{Fft, FftPlanner};

use crate::error::{domain, Error, Result};
use crate::series::{wraps_continuously, TimeSeries, Unit};
use crate::transducer::TransducerModel;

/// Largest output swing of the amplifier on ±2.5 V rails.
pub const OUTPUT_CEILING: f64 = 2.41;
/// Supply rail magnitude.
pub const SUPPLY_RAIL: f64 = 2.5;
/// Feedback pole for gain indices 1-4.
pub const WIDE_CUTOFF: f64 = 500.0;
/// Feedback pole for the 10 MΩ setting.
pub const NARROW_CUTOFF: f64 = 5.0;
/// Input bias current of the LMP7721 class electrometer op-amp.
pub const DEFAULT_BIAS_CURRENT: f64 = 3e-15;
pub const GAIN_INDICES: std::ops::RangeInclusive<u8> = 1..=5;

/// `C_f = 1 / (2π f_cutoff R_f)`.
pub fn feedback_capacitor(feedback_resistance: f64, cutoff_frequency: f64) -> Result<f64> {
    if !(feedback_resistance.is_finite() && feedback_resistance > 0.0) {
        return Err(domain(format!("feedback resistance must be positive, got {feedback_resistance}")));
    }
    if !(cutoff_frequency.is_finite() && cutoff_frequency > 0.0) {
        return Err(domain(format!("cutoff frequency must be positive, got {cutoff_frequency}")));
    }
    Ok(1.0 / (2.0 * PI * cutoff_frequency * feedback_resistance))
}

/// One position of the gain switch: index `k` selects `R_f = 10^(2+k)` Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSetting {
    index: u8,
    feedback_resistance: f64,
    feedback_capacitance: f64,
    cutoff_frequency: f64,
    output_ceiling: f64,
}

impl GainSetting {
    pub fn new(index: u8) -> Result<Self> {
        if !GAIN_INDICES.contains(&index) {
            return Err(domain(format!("gain index must be 1..=5, got {index}")));
        }
        let feedback_resistance = 10f64.powi(2 + i32::from(index));
        let cutoff_frequency = if index == 5 { NARROW_CUTOFF } else { WIDE_CUTOFF };
        Ok(Self {
            index,
            feedback_resistance,
            feedback_capacitance: feedback_capacitor(feedback_resistance, cutoff_frequency)?,
            cutoff_frequency,
            output_ceiling: OUTPUT_CEILING,
        })
    }

    /// All five settings, lowest gain first.
    pub fn ladder() -> Vec<Self> {
        GAIN_INDICES.map(|k| Self::new(k).expect("index in range")).collect()
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn feedback_resistance(&self) -> f64 {
        self.feedback_resistance
    }

    pub fn feedback_capacitance(&self) -> f64 {
        self.feedback_capacitance
    }

    pub fn cutoff_frequency(&self) -> f64 {
        self.cutoff_frequency
    }

    pub fn output_ceiling(&self) -> f64 {
        self.output_ceiling
    }

    /// Upper edge of the usable drive band: 200 Hz, or 5 Hz for index 5.
    pub fn band_high(&self) -> f64 {
        if self.index == 5 {
            5.0
        } else {
            200.0
        }
    }

    pub fn transfer(&self, frequency: f64) -> Complex64 {
        tia_transfer(self, frequency)
    }
}

/// `H(f) = -R_f / (1 + j 2π f R_f C_f)`, in V/A.
///
/// Defined for negative frequencies too, where it is the conjugate of
/// `H(|f|)`.
pub fn tia_transfer(setting: &GainSetting, frequency: f64) -> Complex64 {
    let rf = setting.feedback_resistance;
    -rf / Complex64::new(1.0, 2.0 * PI * frequency * rf * setting.feedback_capacitance)
}

/// Largest peak input current that stays inside the output ceiling at DC.
pub fn current_range(setting: &GainSetting) -> f64 {
    setting.output_ceiling / setting.feedback_resistance
}

/// Output-referred noise and interference added to a simulated record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    pub white_noise_rms: f64,
    pub line_amplitude: f64,
    pub line_frequency: f64,
    pub bias_current: f64,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            white_noise_rms: 0.0,
            line_amplitude: 0.0,
            line_frequency: 50.0,
            bias_current: DEFAULT_BIAS_CURRENT,
            seed: 0,
        }
    }
}

impl NoiseConfig {
    /// No noise, no pickup, no bias.
    pub fn silent() -> Self {
        Self { bias_current: 0.0, ..Self::default() }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !(ok(self.white_noise_rms) && ok(self.line_amplitude) && ok(self.bias_current)) {
            return Err(domain("noise amplitudes must be finite and non-negative"));
        }
        if !(self.line_frequency.is_finite() && self.line_frequency > 0.0) {
            return Err(domain("line frequency must be positive"));
        }
        Ok(())
    }
}

/// Simulated amplifier output.
#[derive(Debug, Clone, PartialEq)]
pub struct Acquisition {
    pub output: TimeSeries,
    /// Set when any sample hit the output ceiling.
    pub saturated: bool,
}

fn bin_frequency(k: usize, n: usize, fs: f64) -> f64 {
    if k <= n / 2 {
        k as f64 * fs / n as f64
    } else {
        -((n - k) as f64) * fs / n as f64
    }
}

fn fft_pair(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    let mut planner = FftPlanner::new();
    (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
}

/// Noise-free amplifier output for a periodic drive voltage.
///
/// The record is treated as exactly one period of a periodic signal, so it
/// must wrap continuously (a whole number of drive cycles). The DC bin is
/// blocked by the series capacitance.
pub fn linear_response(
    model: &TransducerModel,
    setting: &GainSetting,
    drive: &TimeSeries,
) -> Result<Vec<f64>> {
    if drive.unit() != Unit::Volts {
        return Err(domain(format!("drive must be in volts, got {}", drive.unit())));
    }
    let x = drive.samples();
    if !wraps_continuously(x) {
        return Err(Error::InsufficientRecord(
            "drive does not span a whole number of periods".into(),
        ));
    }
    let n = x.len();
    let fs = drive.sample_rate();
    let (fwd, inv) = fft_pair(n);
    let mut spec: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fwd.process(&mut spec);

    for (k, s) in spec.iter_mut().enumerate() {
        if k == 0 {
            *s = Complex64::new(0.0, 0.0);
            continue;
        }
        let f = bin_frequency(k, n, fs);
        // Z(-f) = conj Z(f); the transfer already handles negative f.
        let z = model.impedance(f.abs())?;
        let z = if f < 0.0 { z.conj() } else { z };
        let g = tia_transfer(setting, f) / z;
        let mut y = *s * g;
        if n.is_multiple_of(2) && k == n / 2 {
            // Nyquist bin has no conjugate partner.
            y = Complex64::new(y.re, 0.0);
        }
        *s = y;
    }
    inv.process(&mut spec);
    let scale = 1.0 / n as f64;
    Ok(spec.iter().map(|c| c.re * scale).collect())
}

/// Full acquisition: linear response, bias offset, mains pickup, white
/// noise, then a hard clip at the output ceiling.
pub fn simulate_measurement(
    model: &TransducerModel,
    setting: &GainSetting,
    drive: &TimeSeries,
    noise: &NoiseConfig,
) -> Result<Acquisition> {
    noise.validate()?;
    let mut out = linear_response(model, setting, drive)?;
    let offset = noise.bias_current * setting.feedback_resistance;
    let fs = drive.sample_rate();
    let w_line = 2.0 * PI * noise.line_frequency / fs;
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    for (i, y) in out.iter_mut().enumerate() {
        *y += offset;
        if noise.line_amplitude > 0.0 {
            *y += noise.line_amplitude * (w_line * i as f64).sin();
        }
        if noise.white_noise_rms > 0.0 {
            *y += noise.white_noise_rms * normal.sample(&mut rng);
        }
    }
    let ceiling = setting.output_ceiling;
    let mut saturated = false;
    for y in out.iter_mut() {
        if y.abs() > ceiling {
            *y = ceiling.copysign(*y);
            saturated = true;
        }
    }
    Ok(Acquisition { output: drive.with_samples(out, Unit::Volts)?, saturated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn feedback_capacitor_values() {
        assert_relative_eq!(feedback_capacitor(1e7, 5.0).unwrap(), 3.183_098_861_837_907e-9, max_relative = 1e-12);
        assert_relative_eq!(feedback_capacitor(1e3, 500.0).unwrap(), 3.183_098_861_837_907e-7, max_relative = 1e-12);
        assert!(feedback_capacitor(0.0, 5.0).is_err());
        assert!(feedback_capacitor(1e3, -1.0).is_err());
    }

    #[test]
    fn cutoff_round_trip() {
        for s in GainSetting::ladder() {
            let back = 1.0 / (2.0 * PI * s.feedback_resistance() * s.feedback_capacitance());
            assert_relative_eq!(back, s.cutoff_frequency(), max_relative = 1e-12);
        }
    }

    #[test]
    fn ladder_is_bijective() {
        let ladder = GainSetting::ladder();
        for (k, s) in (1u8..=5).zip(&ladder) {
            assert_eq!(s.index(), k);
            assert_eq!(s.feedback_resistance(), 10f64.powi(2 + i32::from(k)));
            assert!(s.output_ceiling() < SUPPLY_RAIL);
        }
        assert!(GainSetting::new(0).is_err());
        assert!(GainSetting::new(6).is_err());
    }

    #[test]
    fn transfer_dc_and_corner() {
        let s5 = GainSetting::new(5).unwrap();
        let h0 = tia_transfer(&s5, 0.0);
        assert_eq!(h0.norm(), 1e7);
        assert_relative_eq!(h0.arg().abs(), PI, max_relative = 1e-15);
        assert_relative_eq!(tia_transfer(&s5, 5.0).norm(), 1e7 / 2f64.sqrt(), max_relative = 1e-12);
        let s1 = GainSetting::new(1).unwrap();
        assert_relative_eq!(tia_transfer(&s1, 200.0).norm(), 928.476_690_885_259_1, max_relative = 1e-12);
    }

    #[test]
    fn current_range_ladder() {
        let ladder = GainSetting::ladder();
        assert_relative_eq!(current_range(&ladder[0]), 2.41e-3, max_relative = 1e-15);
        assert_relative_eq!(current_range(&ladder[4]), 241e-9, max_relative = 1e-15);
        for w in ladder.windows(2) {
            assert_relative_eq!(current_range(&w[0]) / current_range(&w[1]), 10.0, max_relative = 1e-15);
        }
    }

    fn film() -> TransducerModel {
        TransducerModel::new(131.8e3, 0.707e-9).unwrap()
    }

    #[test]
    fn zero_drive_zero_output() {
        let drive = TimeSeries::new(vec![0.0; 1000], 1000.0, Unit::Volts).unwrap();
        let acq = simulate_measurement(&film(), &GainSetting::new(3).unwrap(), &drive, &NoiseConfig::silent()).unwrap();
        assert!(acq.output.samples().iter().all(|&y| y == 0.0));
        assert!(!acq.saturated);
    }

    #[test]
    fn sine_matches_phasor() {
        let setting = GainSetting::new(3).unwrap();
        let drive = TimeSeries::sine(1.0, 10.0, 2000.0, 5, Unit::Volts).unwrap();
        let acq = simulate_measurement(&film(), &setting, &drive, &NoiseConfig::silent()).unwrap();
        let g = tia_transfer(&setting, 10.0) / film().impedance(10.0).unwrap();
        let w = 2.0 * PI * 10.0;
        let expected: Vec<f64> = (0..drive.len())
            .map(|i| g.norm() * (w * drive.time(i) + g.arg()).sin())
            .collect();
        let err: Vec<f64> = acq.output.samples().iter().zip(&expected).map(|(a, b)| a - b).collect();
        assert!(crate::series::rms(&err) < 1e-3 * crate::series::rms(&expected));
    }

    #[test]
    fn saturation_clips_at_ceiling() {
        let setting = GainSetting::new(1).unwrap();
        let m = film();
        let f = 100.0;
        // Peak current × R_f = 3 V.
        let v0 = 3.0 / setting.feedback_resistance() * m.impedance(f).unwrap().norm();
        let drive = TimeSeries::sine(v0, f, 20_000.0, 4, Unit::Volts).unwrap();
        let acq = simulate_measurement(&m, &setting, &drive, &NoiseConfig::silent()).unwrap();
        assert!(acq.saturated);
        let max = acq.output.samples().iter().cloned().fold(f64::MIN, f64::max);
        let min = acq.output.samples().iter().cloned().fold(f64::MAX, f64::min);
        assert_eq!(max, OUTPUT_CEILING);
        assert_eq!(min, -OUTPUT_CEILING);
    }

    #[test]
    fn bias_current_adds_dc_offset() {
        let setting = GainSetting::new(5).unwrap();
        let drive = TimeSeries::new(vec![0.0; 64], 100.0, Unit::Volts).unwrap();
        let noise = NoiseConfig { bias_current: 3e-15, ..NoiseConfig::silent() };
        let acq = simulate_measurement(&film(), &setting, &drive, &noise).unwrap();
        for &y in acq.output.samples() {
            assert_relative_eq!(y, 3e-8, max_relative = 1e-12);
        }
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        let setting = GainSetting::new(4).unwrap();
        let drive = TimeSeries::sine(1.0, 10.0, 1000.0, 3, Unit::Volts).unwrap();
        let noise = NoiseConfig { white_noise_rms: 1e-3, line_amplitude: 1e-3, ..NoiseConfig::default() }.with_seed(42);
        let a = simulate_measurement(&film(), &setting, &drive, &noise).unwrap();
        let b = simulate_measurement(&film(), &setting, &drive, &noise).unwrap();
        assert_eq!(a, b);
        let c = simulate_measurement(&film(), &setting, &drive, &noise.with_seed(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn partial_period_is_rejected() {
        let x: Vec<f64> = (0..500).map(|i| (2.0 * PI * i as f64 / 2000.0).sin()).collect();
        let drive = TimeSeries::new(x, 1000.0, Unit::Volts).unwrap();
        let r = simulate_measurement(&film(), &GainSetting::new(3).unwrap(), &drive, &NoiseConfig::silent());
        assert!(matches!(r, Err(Error::InsufficientRecord(_))));
    }

    #[test]
    fn drive_must_be_voltage() {
        let drive = TimeSeries::new(vec![0.0; 8], 100.0, Unit::Amperes).unwrap();
        assert!(simulate_measurement(&film(), &GainSetting::new(3).unwrap(), &drive, &NoiseConfig::silent()).is_err());
    }

    #[test]
    fn negative_noise_rejected() {
        let drive = TimeSeries::new(vec![0.0; 8], 100.0, Unit::Volts).unwrap();
        let noise = NoiseConfig { white_noise_rms: -1.0, ..NoiseConfig::silent() };
        assert!(simulate_measurement(&film(), &GainSetting::new(3).unwrap(), &drive, &noise).is_err());
    }
}
