//! Device characterization: SNR against injected current for every gain
//! setting, and the operational current range each setting supports.
//!
//! A point is measured the way a bench characterization would do it: a
//! sinusoidal generator drives the amplifier input through a 1 MΩ source
//! resistor, the output record is notch-filtered at the mains frequency and
//! its SNR is estimated from a Kaiser periodogram. The lower end of a
//! setting's range is where an exponential regression of SNR (power ratio)
//! against `log10(current)` crosses 6 dB; the upper end is the output
//! ceiling divided by the feedback resistance.

use std::collections::BTreeMap;

use crate::dsp::{estimate_snr, exp_regression, notch_filter, ExpFit};
use crate::error::{domain, Error, Result};
use crate::series::{TimeSeries, Unit};
use crate::tia::{current_range, simulate_measurement, GainSetting, NoiseConfig};
use crate::transducer::TransducerModel;

/// Series resistor between the generator and the amplifier input.
pub const SOURCE_RESISTANCE: f64 = 1e6;
/// SNR defining the lower bound of a setting's range.
pub const SNR_THRESHOLD_DB: f64 = 6.0;
/// Lowest drive frequency of every setting (quasistatic limit).
pub const BAND_LOW: f64 = 0.1;
/// Default current grid: this many log-spaced points...
pub const GRID_POINTS: usize = 8;
/// ...over this many decades below `i_max`.
pub const GRID_DECADES: f64 = 5.0;

/// Sensitivity anchor used to pin the noise floor: 2 pA at 6 dB on the
/// 10 MΩ setting, driven at 3 Hz.
pub const ANCHOR_CURRENT: f64 = 2e-12;
pub const ANCHOR_SNR_DB: f64 = 6.0;
pub const ANCHOR_GAIN: u8 = 5;
pub const ANCHOR_FREQUENCY: f64 = 3.0;

/// How simulated records are sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcquisitionPlan {
    /// Whole drive cycles per record.
    pub cycles: u32,
    pub min_sample_rate: f64,
    pub min_samples_per_cycle: u32,
}

impl Default for AcquisitionPlan {
    fn default() -> Self {
        Self { cycles: 20, min_sample_rate: 1000.0, min_samples_per_cycle: 200 }
    }
}

impl AcquisitionPlan {
    /// A sample rate that is an integer multiple of `frequency`, at least
    /// `min_sample_rate` and at least `min_samples_per_cycle` per period.
    pub fn sample_rate(&self, frequency: f64) -> f64 {
        let per_cycle = (self.min_sample_rate / frequency).ceil().max(f64::from(self.min_samples_per_cycle));
        per_cycle * frequency
    }

    pub fn sine(&self, amplitude: f64, frequency: f64) -> Result<TimeSeries> {
        TimeSeries::sine(amplitude, frequency, self.sample_rate(frequency), self.cycles, Unit::Volts)
    }
}

/// Drive frequency per gain index.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPlan(BTreeMap<u8, f64>);

impl Default for FrequencyPlan {
    /// 3 Hz on the 10 MΩ setting, 100 Hz elsewhere.
    fn default() -> Self {
        Self((1..=5).map(|k| (k, if k == 5 { 3.0 } else { 100.0 })).collect())
    }
}

impl FrequencyPlan {
    pub fn uniform(frequency: f64) -> Self {
        Self((1..=5).map(|k| (k, frequency)).collect())
    }

    pub fn set(&mut self, gain_index: u8, frequency: f64) {
        self.0.insert(gain_index, frequency);
    }

    pub fn frequency(&self, gain_index: u8) -> f64 {
        self.0.get(&gain_index).copied().unwrap_or(100.0)
    }
}

/// Injected currents (RMS) to sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum CurrentGrid {
    /// [`GRID_POINTS`] log-spaced currents over `[i_max / 10^5, i_max]`.
    PerSetting,
    /// The same currents for every setting.
    Fixed(Vec<f64>),
}

impl CurrentGrid {
    pub fn for_setting(&self, setting: &GainSetting) -> Vec<f64> {
        match self {
            CurrentGrid::Fixed(v) => v.clone(),
            CurrentGrid::PerSetting => {
                let top = current_range(setting).log10();
                let step = GRID_DECADES / (GRID_POINTS - 1) as f64;
                (0..GRID_POINTS)
                    .map(|i| 10f64.powf(top - GRID_DECADES + step * i as f64))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterizationPoint {
    pub gain_index: u8,
    pub injected_current_rms: f64,
    pub drive_frequency: f64,
    pub snr_db: f64,
    pub saturated: bool,
}

fn check_band(setting: &GainSetting, frequency: f64) -> Result<()> {
    if !(BAND_LOW..=setting.band_high()).contains(&frequency) {
        return Err(domain(format!(
            "gain {} measures between {BAND_LOW} Hz and {} Hz, not at {frequency} Hz",
            setting.index(),
            setting.band_high()
        )));
    }
    Ok(())
}

/// Simulates one bench measurement and returns `(snr_db, saturated)`.
///
/// The generator amplitude is chosen so the current reaching the virtual
/// ground has the requested RMS value through the source resistor in series
/// with `dut`.
pub fn measure_point(
    dut: &TransducerModel,
    setting: &GainSetting,
    current_rms: f64,
    frequency: f64,
    noise: &NoiseConfig,
    plan: &AcquisitionPlan,
) -> Result<(f64, bool)> {
    if !(current_rms.is_finite() && current_rms > 0.0) {
        return Err(Error::UndefinedSnr(format!("injected current is {current_rms} A")));
    }
    check_band(setting, frequency)?;
    let load = dut.with_series_resistance(SOURCE_RESISTANCE)?;
    let v_peak = std::f64::consts::SQRT_2 * current_rms * load.impedance(frequency)?.norm();
    let drive = plan.sine(v_peak, frequency)?;
    let acq = simulate_measurement(&load, setting, &drive, noise)?;
    let filtered = notch_filter(&acq.output, noise.line_frequency)?;
    Ok((estimate_snr(&filtered)?, acq.saturated))
}

/// Sweeps every (setting, current) pair. Point `i` of the sweep uses seed
/// `noise.seed ^ i`, so the result is fully determined by the inputs.
pub fn run_characterization(
    settings: &[GainSetting],
    currents: &CurrentGrid,
    frequencies: &FrequencyPlan,
    noise: &NoiseConfig,
    dut: &TransducerModel,
    plan: &AcquisitionPlan,
) -> Result<Vec<CharacterizationPoint>> {
    let mut points = Vec::new();
    let mut index = 0u64;
    for setting in settings {
        let f = frequencies.frequency(setting.index());
        for current in currents.for_setting(setting) {
            let point_noise = noise.with_seed(noise.seed ^ index);
            index += 1;
            let (snr_db, saturated) = measure_point(dut, setting, current, f, &point_noise, plan)?;
            points.push(CharacterizationPoint {
                gain_index: setting.index(),
                injected_current_rms: current,
                drive_frequency: f,
                snr_db,
                saturated,
            });
        }
    }
    Ok(points)
}

/// Finds the white-noise level at which the anchor point measures exactly
/// `target_snr_db`, by bisection on `log σ`.
///
/// Everything except `white_noise_rms` is taken from `base`, including the
/// seed, so re-measuring the anchor with the returned config reproduces the
/// target.
pub fn calibrate_noise(
    target_current: f64,
    target_snr_db: f64,
    setting: &GainSetting,
    frequency: f64,
    dut: &TransducerModel,
    base: &NoiseConfig,
    plan: &AcquisitionPlan,
) -> Result<NoiseConfig> {
    const MAX_ITERATIONS: usize = 60;
    const TOLERANCE_DB: f64 = 0.25;

    if !(target_current.is_finite() && target_current > 0.0) {
        return Err(Error::Calibration(format!("target current must be positive, got {target_current}")));
    }
    let with_sigma = |sigma: f64| NoiseConfig { white_noise_rms: sigma, ..*base };
    let measure = |sigma: f64| measure_point(dut, setting, target_current, frequency, &with_sigma(sigma), plan);

    let (_, saturated) = measure(0.0)?;
    if saturated {
        return Err(Error::Calibration("anchor point saturates the amplifier".into()));
    }
    let amplitude = std::f64::consts::SQRT_2 * target_current * setting.transfer(frequency).norm();
    let (mut lo, mut hi) = ((amplitude * 1e-6).ln(), (amplitude * 1e3).ln());
    let (snr_lo, _) = measure(lo.exp())?;
    let (snr_hi, _) = measure(hi.exp())?;
    if !(snr_lo > target_snr_db && snr_hi < target_snr_db) {
        return Err(Error::Calibration(format!(
            "{target_snr_db} dB is outside the reachable range [{snr_hi:.1}, {snr_lo:.1}] dB"
        )));
    }
    let mut best = (f64::INFINITY, hi);
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let (snr, _) = measure(mid.exp())?;
        let miss = (snr - target_snr_db).abs();
        if miss < best.0 {
            best = (miss, mid);
        }
        if miss < 1e-6 {
            break;
        }
        if snr > target_snr_db {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best.0 > TOLERANCE_DB {
        return Err(Error::Calibration(format!(
            "bisection stalled {:.3} dB away from {target_snr_db} dB",
            best.0
        )));
    }
    Ok(with_sigma(best.1.exp()))
}

/// Lower edge of an operational range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowerBound {
    /// Current at which the regression crosses 6 dB.
    Crossing(f64),
    /// Every measured point is above 6 dB and the regression carries no
    /// usable slope; the bound is somewhere below this grid minimum.
    BelowGrid(f64),
}

impl LowerBound {
    pub fn value(&self) -> f64 {
        match *self {
            LowerBound::Crossing(v) | LowerBound::BelowGrid(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperationalRange {
    pub gain_index: u8,
    pub i_min: LowerBound,
    pub i_max: f64,
    pub band_low: f64,
    pub band_high: f64,
    /// SNR (power ratio) = `a · exp(b · log10(I))`.
    pub fit: ExpFit,
    pub points_used: usize,
}

impl OperationalRange {
    /// `log10(i_max / i_min)`.
    pub fn decades(&self) -> f64 {
        (self.i_max / self.i_min.value()).log10()
    }

    /// Regression prediction in dB at `current`.
    pub fn fitted_snr_db(&self, current: f64) -> f64 {
        10.0 * self.fit.eval(current.log10()).log10()
    }
}

fn db_to_ratio(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Fits each setting's non-saturated points and derives its current range.
pub fn derive_ranges(points: &[CharacterizationPoint], settings: &[GainSetting]) -> Result<Vec<OperationalRange>> {
    settings
        .iter()
        .map(|setting| {
            let idx = setting.index();
            let mut mine: Vec<&CharacterizationPoint> =
                points.iter().filter(|p| p.gain_index == idx && !p.saturated).collect();
            if mine.len() < 3 {
                return Err(Error::InsufficientData(format!(
                    "gain {idx} has {} unsaturated points, need 3",
                    mine.len()
                )));
            }
            mine.sort_by(|a, b| {
                a.injected_current_rms
                    .total_cmp(&b.injected_current_rms)
                    .then(a.snr_db.total_cmp(&b.snr_db))
            });
            let xy: Vec<(f64, f64)> = mine
                .iter()
                .map(|p| (p.injected_current_rms.log10(), db_to_ratio(p.snr_db)))
                .collect();
            let fit = exp_regression(&xy)?;
            let grid_min = mine[0].injected_current_rms;
            let all_below = mine.iter().all(|p| p.snr_db < SNR_THRESHOLD_DB);

            let crossing = (fit.b > 0.0)
                .then(|| fit.solve_x(db_to_ratio(SNR_THRESHOLD_DB)))
                .flatten()
                .map(|x| 10f64.powf(x))
                .filter(|i| i.is_normal());
            let i_min = match crossing {
                Some(i) => LowerBound::Crossing(i),
                None if all_below => return Err(Error::NoCrossing(idx)),
                None => LowerBound::BelowGrid(grid_min),
            };
            let i_max = current_range(setting);
            if i_min.value() >= i_max {
                return Err(Error::EmptyRange(idx));
            }
            Ok(OperationalRange {
                gain_index: idx,
                i_min,
                i_max,
                band_low: BAND_LOW,
                band_high: setting.band_high(),
                fit,
                points_used: mine.len(),
            })
        })
        .collect()
}

/// `(lowest i_min, highest i_max, decades spanned)` over all ranges.
pub fn total_span(ranges: &[OperationalRange]) -> Option<(f64, f64, f64)> {
    let lo = ranges.iter().map(|r| r.i_min.value()).min_by(f64::total_cmp)?;
    let hi = ranges.iter().map(|r| r.i_max).max_by(f64::total_cmp)?;
    Some((lo, hi, (hi / lo).log10()))
}

/// Result of a [`SweepCheck`] on one (model variant, setting) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub detail: String,
}

/// Acceptance test applied to each cell of an impedance sweep.
pub trait SweepCheck {
    fn check(&self, model: &TransducerModel, setting: &GainSetting) -> Result<CheckOutcome>;
}

/// Drives the transducer at a fraction of the setting's current limit and
/// requires no saturation, homogeneity (the output for a 10x smaller drive
/// scales by exactly 1/10) and agreement with the small-signal gain.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearityCheck {
    pub frequencies: FrequencyPlan,
    pub drive_fraction: f64,
    pub tolerance: f64,
    pub plan: AcquisitionPlan,
}

impl Default for LinearityCheck {
    fn default() -> Self {
        Self {
            frequencies: FrequencyPlan::default(),
            drive_fraction: 0.5,
            tolerance: 0.01,
            plan: AcquisitionPlan { cycles: 4, ..AcquisitionPlan::default() },
        }
    }
}

impl SweepCheck for LinearityCheck {
    fn check(&self, model: &TransducerModel, setting: &GainSetting) -> Result<CheckOutcome> {
        let f = self.frequencies.frequency(setting.index());
        let i_peak = self.drive_fraction * current_range(setting);
        let v_peak = i_peak * model.impedance(f)?.norm();
        let quiet = NoiseConfig::silent();
        let full = simulate_measurement(model, setting, &self.plan.sine(v_peak, f)?, &quiet)?;
        if full.saturated {
            return Ok(CheckOutcome { passed: false, detail: format!("saturated at {f} Hz") });
        }
        let small = simulate_measurement(model, setting, &self.plan.sine(0.1 * v_peak, f)?, &quiet)?;
        let diff: Vec<f64> = full
            .output
            .samples()
            .iter()
            .zip(small.output.samples())
            .map(|(a, b)| a - 10.0 * b)
            .collect();
        let homogeneity = crate::series::rms(&diff) / full.output.rms();
        let expected = setting.transfer(f).norm() * i_peak;
        let gain_error = (full.output.rms() * std::f64::consts::SQRT_2 / expected - 1.0).abs();
        let passed = homogeneity <= self.tolerance && gain_error <= self.tolerance;
        Ok(CheckOutcome {
            passed,
            detail: format!("homogeneity {homogeneity:.2e}, gain error {gain_error:.2e} at {f} Hz"),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub r_factor: f64,
    pub c_factor: f64,
    pub gain_index: u8,
    pub outcome: CheckOutcome,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.cells.iter().all(|c| c.outcome.passed)
    }
}

/// Default sweep factors: a decade either side of nominal.
pub const DEFAULT_SWEEP_FACTORS: [f64; 3] = [0.1, 1.0, 10.0];

/// Runs `check` for every model variant with R scaled by one factor and C by
/// another (all combinations), at every setting.
pub fn sweep_impedance(
    model: &TransducerModel,
    factors: &[f64],
    settings: &[GainSetting],
    check: &dyn SweepCheck,
) -> Result<SweepReport> {
    if let Some(f) = factors.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(domain(format!("sweep factors must be positive, got {f}")));
    }
    let mut cells = Vec::with_capacity(factors.len() * factors.len() * settings.len());
    for &r_factor in factors {
        for &c_factor in factors {
            let variant = model.scaled(r_factor, c_factor)?;
            for setting in settings {
                let outcome = check.check(&variant, setting)?;
                cells.push(SweepCell { r_factor, c_factor, gain_index: setting.index(), outcome });
            }
        }
    }
    Ok(SweepReport { cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn film() -> TransducerModel {
        TransducerModel::screen_printed_film()
    }

    #[test]
    fn plan_sample_rates_are_whole_multiples() {
        let plan = AcquisitionPlan::default();
        assert_eq!(plan.sample_rate(3.0), 1002.0);
        assert_eq!(plan.sample_rate(100.0), 20_000.0);
        assert_eq!(plan.sample_rate(0.1), 1000.0);
        assert_eq!(plan.sine(1.0, 3.0).unwrap().len(), 6680);
    }

    #[test]
    fn default_grid_spans_five_decades() {
        let s = GainSetting::new(5).unwrap();
        let g = CurrentGrid::PerSetting.for_setting(&s);
        assert_eq!(g.len(), GRID_POINTS);
        assert_relative_eq!(g[GRID_POINTS - 1], 241e-9, max_relative = 1e-12);
        assert_relative_eq!(g[0], 241e-9 / 1e5, max_relative = 1e-12);
    }

    #[test]
    fn noiseless_points_are_clean() {
        let s = GainSetting::new(5).unwrap();
        let pts = run_characterization(
            &[s],
            &CurrentGrid::Fixed(vec![2e-12, 1e-9]),
            &FrequencyPlan::default(),
            &NoiseConfig::silent(),
            &film(),
            &AcquisitionPlan::default(),
        )
        .unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.snr_db >= 100.0 && !p.saturated));
    }

    #[test]
    fn zero_current_is_undefined() {
        let s = GainSetting::new(5).unwrap();
        let r = run_characterization(
            &[s],
            &CurrentGrid::Fixed(vec![0.0]),
            &FrequencyPlan::default(),
            &NoiseConfig::default(),
            &film(),
            &AcquisitionPlan::default(),
        );
        assert!(matches!(r, Err(Error::UndefinedSnr(_))));
    }

    #[test]
    fn out_of_band_frequency_rejected() {
        let s = GainSetting::new(5).unwrap();
        let r = measure_point(&film(), &s, 1e-9, 100.0, &NoiseConfig::silent(), &AcquisitionPlan::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn calibration_hits_target_and_scales() {
        let s = GainSetting::new(5).unwrap();
        let plan = AcquisitionPlan::default();
        let base = NoiseConfig::default().with_seed(9);
        let six = calibrate_noise(2e-12, 6.0, &s, 3.0, &film(), &base, &plan).unwrap();
        let (snr, _) = measure_point(&film(), &s, 2e-12, 3.0, &six, &plan).unwrap();
        assert!((snr - 6.0).abs() <= 0.25);
        let zero = calibrate_noise(2e-12, 0.0, &s, 3.0, &film(), &base, &plan).unwrap();
        let ratio = zero.white_noise_rms / six.white_noise_rms;
        assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn calibration_errors() {
        let s = GainSetting::new(5).unwrap();
        let plan = AcquisitionPlan::default();
        let base = NoiseConfig::default();
        assert!(matches!(
            calibrate_noise(0.0, 6.0, &s, 3.0, &film(), &base, &plan),
            Err(Error::Calibration(_))
        ));
        assert!(matches!(
            calibrate_noise(1e-6, 6.0, &s, 3.0, &film(), &base, &plan),
            Err(Error::Calibration(_))
        ));
    }

    fn synthetic_points(gain: u8, a: f64, b: f64) -> Vec<CharacterizationPoint> {
        (0..6)
            .map(|i| {
                let current = 10f64.powf(-11.0 + 0.7 * i as f64);
                let ratio = a * (b * current.log10()).exp();
                CharacterizationPoint {
                    gain_index: gain,
                    injected_current_rms: current,
                    drive_frequency: 3.0,
                    snr_db: 10.0 * ratio.log10(),
                    saturated: false,
                }
            })
            .collect()
    }

    #[test]
    fn exact_points_give_closed_form_crossing() {
        let (a, b) = (1e23, 2.0 * std::f64::consts::LN_10);
        let pts = synthetic_points(5, a, b);
        let r = derive_ranges(&pts, &[GainSetting::new(5).unwrap()]).unwrap();
        let expected = 10f64.powf((10f64.powf(0.6) / a).ln() / b);
        match r[0].i_min {
            LowerBound::Crossing(i) => assert_relative_eq!(i, expected, max_relative = 1e-9),
            other => panic!("unexpected {other:?}"),
        }
        assert_relative_eq!(r[0].i_max, 241e-9, max_relative = 1e-12);
        assert_relative_eq!(r[0].fit.r_squared, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn range_derivation_ignores_point_order() {
        let mut pts = synthetic_points(5, 1e23, 4.6);
        let s = [GainSetting::new(5).unwrap()];
        let a = derive_ranges(&pts, &s).unwrap();
        pts.reverse();
        pts.swap(1, 3);
        assert_eq!(a, derive_ranges(&pts, &s).unwrap());
    }

    #[test]
    fn flat_clean_points_are_below_grid() {
        let pts: Vec<_> = (0..5)
            .map(|i| CharacterizationPoint {
                gain_index: 3,
                injected_current_rms: 1e-9 * 10f64.powi(i),
                drive_frequency: 100.0,
                snr_db: 200.0,
                saturated: false,
            })
            .collect();
        let r = derive_ranges(&pts, &[GainSetting::new(3).unwrap()]).unwrap();
        assert_eq!(r[0].i_min, LowerBound::BelowGrid(1e-9));
    }

    #[test]
    fn no_crossing_when_all_below_and_flat() {
        let pts: Vec<_> = (0..5)
            .map(|i| CharacterizationPoint {
                gain_index: 3,
                injected_current_rms: 1e-9 * 10f64.powi(i),
                drive_frequency: 100.0,
                snr_db: 3.0 - 0.1 * i as f64,
                saturated: false,
            })
            .collect();
        assert!(matches!(
            derive_ranges(&pts, &[GainSetting::new(3).unwrap()]),
            Err(Error::NoCrossing(3))
        ));
    }

    #[test]
    fn saturated_points_excluded() {
        let mut pts = synthetic_points(5, 1e23, 4.6);
        for p in pts.iter_mut().skip(3) {
            p.saturated = true;
        }
        let r = derive_ranges(&pts, &[GainSetting::new(5).unwrap()]).unwrap();
        assert_eq!(r[0].points_used, 3);
        pts[2].saturated = true;
        assert!(matches!(
            derive_ranges(&pts, &[GainSetting::new(5).unwrap()]),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn sweep_all_pass_for_lti_chain() {
        let report = sweep_impedance(
            &film(),
            &DEFAULT_SWEEP_FACTORS,
            &GainSetting::ladder(),
            &LinearityCheck::default(),
        )
        .unwrap();
        assert_eq!(report.cells.len(), 9 * 5);
        assert!(report.all_passed(), "{:#?}", report.cells.iter().find(|c| !c.outcome.passed));
    }

    #[test]
    fn sweep_at_band_edge_with_large_capacitance() {
        let mut check = LinearityCheck::default();
        check.frequencies.set(1, 200.0);
        let report = sweep_impedance(&film().scaled(1.0, 10.0).unwrap(), &[1.0], &[GainSetting::new(1).unwrap()], &check).unwrap();
        assert_eq!(report.cells.len(), 1);
        assert!(report.all_passed());
    }

    #[test]
    fn degenerate_sweep_matches_single_check() {
        let s = GainSetting::new(4).unwrap();
        let check = LinearityCheck::default();
        let report = sweep_impedance(&film(), &[1.0], &[s], &check).unwrap();
        assert_eq!(report.cells[0].outcome, check.check(&film(), &s).unwrap());
    }

    #[test]
    fn sweep_rejects_bad_factor() {
        assert!(sweep_impedance(&film(), &[0.0], &[], &LinearityCheck::default()).is_err());
    }
}
