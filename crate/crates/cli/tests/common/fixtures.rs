//! Bundled data files and the parameters they were generated from.

use std::f64::consts::PI;

use pe_core::io;
use pe_core::pe_loop::{synthetic_ferroelectric, FerroelectricParams, SampleGeometry};
use pe_core::transducer::{lcr_sweep_frequencies, ImpedanceSpectrum, TransducerModel};
use pe_core::{TimeSeries, Unit};

pub const AREA: f64 = 1e-4;
pub const THICKNESS: f64 = 10e-6;
pub const PR: f64 = 0.06;
pub const PS: f64 = 0.08;
pub const EC: f64 = 50e6;
pub const DRIVE_FREQUENCY: f64 = 1.0;
pub const SAMPLES_PER_CYCLE: u32 = 500;
pub const CYCLES: u32 = 2;
/// Ferroelectric drive peak, in multiples of the coercive field.
pub const FIELD_RATIO: f64 = 3.2;
pub const LINEAR_CAPACITANCE: f64 = 1e-9;
pub const LINEAR_PEAK: f64 = 100.0;

fn csv(render: impl FnOnce(&mut Vec<u8>) -> pe_core::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    render(&mut buf).unwrap();
    buf
}

fn drive(peak: f64) -> TimeSeries {
    let fs = DRIVE_FREQUENCY * f64::from(SAMPLES_PER_CYCLE);
    TimeSeries::sine(peak, DRIVE_FREQUENCY, fs, CYCLES, Unit::Volts).unwrap()
}

/// `(file name, contents)` of every bundled fixture.
pub fn all() -> Vec<(&'static str, Vec<u8>)> {
    let spectrum =
        ImpedanceSpectrum::from_model(&TransducerModel::screen_printed_film(), &lcr_sweep_frequencies()).unwrap();

    let fe = FerroelectricParams::new(PR, PS, EC, 0.0).unwrap();
    let geometry = SampleGeometry::new(AREA, THICKNESS).unwrap();
    let fe_drive = drive(FIELD_RATIO * EC * THICKNESS);
    let fe_current = synthetic_ferroelectric(&fe, &geometry, &fe_drive).unwrap();

    let lin_drive = drive(LINEAR_PEAK);
    let w = 2.0 * PI * DRIVE_FREQUENCY;
    let amps = (0..lin_drive.len())
        .map(|i| LINEAR_CAPACITANCE * LINEAR_PEAK * w * (w * lin_drive.time(i)).cos())
        .collect();
    let lin_current = lin_drive.with_samples(amps, Unit::Amperes).unwrap();

    vec![
        ("sample_spectrum.csv", csv(|w| io::write_impedance(w, &spectrum))),
        ("ferro_drive.csv", csv(|w| io::write_waveform(w, &fe_drive))),
        ("ferro_current.csv", csv(|w| io::write_waveform(w, &fe_current))),
        ("linear_drive.csv", csv(|w| io::write_waveform(w, &lin_drive))),
        ("linear_current.csv", csv(|w| io::write_waveform(w, &lin_current))),
    ]
}
