//! Browser bindings for the PE-loop tracer model.
//!
//! Three views back the demo page: a ferroelectric loop explorer, the
//! amplifier Bode curve per gain, and an SNR-vs-current sweep. Every entry
//! point returns plain vectors so the same code runs in native tests.

use wasm_bindgen::prelude::*;

use pe_core::characterization::{
    derive_ranges, run_characterization, AcquisitionPlan, CurrentGrid, FrequencyPlan, LowerBound,
};
use pe_core::pe_loop::{loop_metrics, synthetic_ferroelectric, trace_pe_loop, FerroelectricParams, SampleGeometry};
use pe_core::tia::{current_range, GainSetting, NoiseConfig};
use pe_core::transducer::TransducerModel;
use pe_core::{TimeSeries, Unit};

const AREA: f64 = 1e-4;
const THICKNESS: f64 = 10e-6;
const SAMPLES_PER_CYCLE: u32 = 500;

fn js_err(e: pe_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct LoopView {
    field: Vec<f64>,
    polarization: Vec<f64>,
    remnant: f64,
    coercive: f64,
    saturation: f64,
    area: f64,
}

#[wasm_bindgen]
impl LoopView {
    /// Field samples in MV/m.
    pub fn field(&self) -> Vec<f64> {
        self.field.clone()
    }

    /// Polarization samples in µC/cm².
    pub fn polarization(&self) -> Vec<f64> {
        self.polarization.clone()
    }

    /// µC/cm².
    pub fn remnant(&self) -> f64 {
        self.remnant
    }

    /// MV/m; NaN when the loop never crosses zero polarization.
    pub fn coercive(&self) -> f64 {
        self.coercive
    }

    /// µC/cm².
    pub fn saturation(&self) -> f64 {
        self.saturation
    }

    /// Loss per cycle in kJ/m³.
    pub fn area(&self) -> f64 {
        self.area
    }
}

/// Traces the fixture ferroelectric (Pr, Ps in µC/cm², Ec in MV/m) under a
/// 1 Hz sine drive peaking at `drive_ratio` times the coercive field,
/// through the same integrate-and-scale path used on measured records.
#[wasm_bindgen]
pub fn trace_loop(pr: f64, ps: f64, ec: f64, drive_ratio: f64, linear_pf: f64) -> Result<LoopView, JsError> {
    // 1 µC/cm² = 1e-2 C/m².
    let params = FerroelectricParams::new(pr * 1e-2, ps * 1e-2, ec * 1e6, linear_pf * 1e-12).map_err(js_err)?;
    if !(drive_ratio.is_finite() && drive_ratio > 0.0) {
        return Err(JsError::new("drive ratio must be positive"));
    }
    let geometry = SampleGeometry::new(AREA, THICKNESS).map_err(js_err)?;
    let peak = drive_ratio * params.coercive_field() * THICKNESS;
    let drive = TimeSeries::sine(peak, 1.0, f64::from(SAMPLES_PER_CYCLE), 1, Unit::Volts).map_err(js_err)?;
    let current = synthetic_ferroelectric(&params, &geometry, &drive).map_err(js_err)?;
    let pe = trace_pe_loop(&drive, &current, &geometry).map_err(js_err)?;
    let m = loop_metrics(&pe).map_err(js_err)?;
    Ok(LoopView {
        field: pe.field().iter().map(|e| e * 1e-6).collect(),
        polarization: pe.polarization().iter().map(|p| p * 1e2).collect(),
        remnant: m.remnant_polarization * 1e2,
        coercive: m.coercive_field.map_or(f64::NAN, |e| e * 1e-6),
        saturation: m.saturation_polarization * 1e2,
        area: m.loop_area * 1e-3,
    })
}

/// Log-spaced frequencies from 10 mHz to 10 kHz.
#[wasm_bindgen]
pub fn bode_frequencies(points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points).map(|i| 10f64.powf(-2.0 + 6.0 * i as f64 / (points - 1) as f64)).collect()
}

/// Transimpedance magnitude in dBΩ at each of `frequencies`.
#[wasm_bindgen]
pub fn bode_magnitude(gain_index: u8, frequencies: &[f64]) -> Result<Vec<f64>, JsError> {
    let s = GainSetting::new(gain_index).map_err(js_err)?;
    Ok(frequencies.iter().map(|&f| 20.0 * s.transfer(f).norm().log10()).collect())
}

/// Phase in degrees at each of `frequencies` (the stage inverts, so it
/// starts at ±180°).
#[wasm_bindgen]
pub fn bode_phase(gain_index: u8, frequencies: &[f64]) -> Result<Vec<f64>, JsError> {
    let s = GainSetting::new(gain_index).map_err(js_err)?;
    Ok(frequencies.iter().map(|&f| s.transfer(f).arg().to_degrees()).collect())
}

#[wasm_bindgen]
pub fn cutoff_frequency(gain_index: u8) -> Result<f64, JsError> {
    Ok(GainSetting::new(gain_index).map_err(js_err)?.cutoff_frequency())
}

#[wasm_bindgen]
pub struct SnrSweep {
    currents: Vec<f64>,
    snr_db: Vec<f64>,
    i_min: f64,
    i_max: f64,
    below_grid: bool,
}

#[wasm_bindgen]
impl SnrSweep {
    /// Injected RMS currents, A.
    pub fn currents(&self) -> Vec<f64> {
        self.currents.clone()
    }

    pub fn snr_db(&self) -> Vec<f64> {
        self.snr_db.clone()
    }

    /// Lower bound of the range, A; NaN if the fit never reaches 6 dB.
    pub fn i_min(&self) -> f64 {
        self.i_min
    }

    pub fn i_max(&self) -> f64 {
        self.i_max
    }

    /// Set when every point is above threshold and `i_min` is the grid
    /// minimum rather than a crossing.
    pub fn below_grid(&self) -> bool {
        self.below_grid
    }
}

/// Simulated characterization of one gain setting with `noise_uv` µV RMS of
/// output white noise, on the default 8-point grid.
#[wasm_bindgen]
pub fn snr_sweep(gain_index: u8, noise_uv: f64, seed: u32) -> Result<SnrSweep, JsError> {
    let setting = GainSetting::new(gain_index).map_err(js_err)?;
    let noise = NoiseConfig { white_noise_rms: noise_uv * 1e-6, ..NoiseConfig::default() }.with_seed(u64::from(seed));
    noise.validate().map_err(js_err)?;
    let points = run_characterization(
        &[setting],
        &CurrentGrid::PerSetting,
        &FrequencyPlan::default(),
        &noise,
        &TransducerModel::screen_printed_film(),
        &AcquisitionPlan::default(),
    )
    .map_err(js_err)?;
    let (i_min, below_grid) = match derive_ranges(&points, &[setting]) {
        Ok(r) => match r[0].i_min {
            LowerBound::Crossing(v) => (v, false),
            LowerBound::BelowGrid(v) => (v, true),
        },
        Err(_) => (f64::NAN, false),
    };
    Ok(SnrSweep {
        currents: points.iter().map(|p| p.injected_current_rms).collect(),
        snr_db: points.iter().map(|p| p.snr_db).collect(),
        i_min,
        i_max: current_range(&setting),
        below_grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_view_units() {
        let v = trace_loop(6.0, 8.0, 50.0, 3.0, 0.0).ok().unwrap();
        assert!((v.remnant() / 6.0 - 1.0).abs() < 0.05);
        assert!((v.coercive() / 50.0 - 1.0).abs() < 0.05);
        assert_eq!(v.field().len(), v.polarization().len());
        assert!(v.area() > 0.0);
    }

    #[test]
    fn bode_curve_has_cutoff() {
        let f = [0.0, 500.0];
        let m = bode_magnitude(1, &f).ok().unwrap();
        assert!((m[0] - 60.0).abs() < 1e-9);
        assert!((m[0] - m[1] - 10.0 * 2f64.log10()).abs() < 1e-9);
        assert!((bode_phase(1, &[0.0]).ok().unwrap()[0].abs() - 180.0).abs() < 1e-9);
        let grid = bode_frequencies(61);
        assert!((grid[0] - 0.01).abs() < 1e-15 && (grid[60] - 1e4).abs() < 1e-8);
    }

    #[test]
    fn sweep_finds_lower_bound() {
        let s = snr_sweep(5, 9.0, 1).ok().unwrap();
        assert_eq!(s.currents().len(), 8);
        assert!(!s.below_grid());
        assert!(s.i_min() > 1e-12 && s.i_min() < 5e-12, "{}", s.i_min());
        let quiet = snr_sweep(5, 0.0, 1).ok().unwrap();
        assert!(quiet.snr_db().iter().all(|&d| d > 60.0));
    }
}
