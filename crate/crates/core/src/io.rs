//! CSV formats read and written by the tools.
//!
//! Every file is UTF-8 with a fixed header line; LF or CRLF line endings
//! are accepted on input and LF is written. Numbers are written in Rust's
//! shortest round-trip exponent form, so emitting and re-reading a file
//! reproduces every value bit for bit.

use std::io::{BufRead, Write};

use crate::characterization::{CharacterizationPoint, LowerBound, OperationalRange, SweepReport};
use crate::error::{Error, Result};
use crate::pe_loop::{LoopMetrics, PeLoop};
use crate::series::{TimeSeries, Unit};
use crate::transducer::{ImpedancePoint, ImpedanceSpectrum, TransducerModel};

pub const IMPEDANCE_HEADER: &str = "frequency_hz,resistance_ohm,reactance_ohm";
pub const VOLTAGE_WAVEFORM_HEADER: &str = "time_s,voltage_v";
pub const CURRENT_WAVEFORM_HEADER: &str = "time_s,current_a";
pub const PE_LOOP_HEADER: &str = "field_v_per_m,polarization_c_per_m2";
pub const METRICS_HEADER: &str = "metric,value,unit";
pub const REPORT_HEADER: &str = "gain_index,current_a,frequency_hz,snr_db,saturated";
pub const RANGE_HEADER: &str = "gain_index,i_min_a,i_max_a,band_low_hz,band_high_hz,decades";
pub const REGRESSION_HEADER: &str = "gain_index,a,b,r_squared,points";
pub const PLOT_HEADER: &str = "gain_index,series,log10_current_a,snr_db";
pub const SWEEP_HEADER: &str = "r_factor,c_factor,gain_index,passed,detail";

/// Relative step jitter tolerated on waveform time stamps.
pub const TIME_JITTER: f64 = 1e-6;

fn io_err(e: std::io::Error) -> Error {
    Error::Parse { line: 0, message: e.to_string() }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

type Rows = Vec<(usize, Vec<String>)>;

/// Data rows of a CSV with an exact header, as `(line number, fields)`.
fn read_rows<R: BufRead>(reader: R, header: &[&str]) -> Result<(String, Rows)> {
    let mut lines = reader.lines().enumerate();
    let first = match lines.next() {
        None => return Err(parse_err(1, "empty file")),
        Some((_, l)) => l.map_err(io_err)?,
    };
    let first = first.trim_start_matches('\u{feff}').trim_end_matches('\r').trim().to_string();
    if !header.contains(&first.as_str()) {
        return Err(parse_err(1, format!("expected header `{}`, found `{first}`", header.join("` or `"))));
    }
    let columns = first.split(',').count();
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(io_err)?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<String> = line.split(',').map(|f| f.trim().to_string()).collect();
        if fields.len() != columns {
            return Err(parse_err(i + 1, format!("expected {columns} fields, found {}", fields.len())));
        }
        rows.push((i + 1, fields));
    }
    Ok((first, rows))
}

fn number(line: usize, field: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(line, format!("`{field}` is not a finite number")))
}

fn write_line<W: Write>(w: &mut W, line: std::fmt::Arguments<'_>) -> Result<()> {
    w.write_fmt(line).and_then(|_| w.write_all(b"\n")).map_err(io_err)
}

pub fn read_impedance<R: BufRead>(reader: R) -> Result<ImpedanceSpectrum> {
    let (_, rows) = read_rows(reader, &[IMPEDANCE_HEADER])?;
    let points = rows
        .iter()
        .map(|(line, f)| {
            Ok(ImpedancePoint {
                frequency: number(*line, &f[0])?,
                resistance: number(*line, &f[1])?,
                reactance: number(*line, &f[2])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ImpedanceSpectrum::new(points).map_err(|e| parse_err(0, e.to_string()))
}

pub fn write_impedance<W: Write>(w: &mut W, spectrum: &ImpedanceSpectrum) -> Result<()> {
    write_line(w, format_args!("{IMPEDANCE_HEADER}"))?;
    for p in spectrum.points() {
        write_line(w, format_args!("{:e},{:e},{:e}", p.frequency, p.resistance, p.reactance))?;
    }
    Ok(())
}

/// Fitted RC parameters, in the `metric,value,unit` layout of the metrics
/// sidecar.
pub fn write_rc_fit<W: Write>(w: &mut W, model: &TransducerModel, residual_rms: f64) -> Result<()> {
    write_line(w, format_args!("{METRICS_HEADER}"))?;
    write_line(w, format_args!("resistance,{:e},ohm", model.resistance()))?;
    write_line(w, format_args!("resistance_sigma,{:e},ohm", model.resistance_sigma()))?;
    write_line(w, format_args!("capacitance,{:e},F", model.capacitance()))?;
    write_line(w, format_args!("capacitance_sigma,{:e},F", model.capacitance_sigma()))?;
    write_line(w, format_args!("residual_rms,{residual_rms:e},ohm"))?;
    Ok(())
}

/// Reads an oscilloscope-style record. The header's second column sets the
/// unit: `voltage_v` or `current_a`. Time stamps must be uniform to
/// [`TIME_JITTER`].
pub fn read_waveform<R: BufRead>(reader: R) -> Result<TimeSeries> {
    let (header, rows) = read_rows(reader, &[VOLTAGE_WAVEFORM_HEADER, CURRENT_WAVEFORM_HEADER])?;
    let unit = if header == CURRENT_WAVEFORM_HEADER { Unit::Amperes } else { Unit::Volts };
    if rows.len() < 2 {
        return Err(Error::InsufficientData(format!("waveform has {} samples, need 2", rows.len())));
    }
    let mut times = Vec::with_capacity(rows.len());
    let mut samples = Vec::with_capacity(rows.len());
    for (line, f) in &rows {
        times.push(number(*line, &f[0])?);
        samples.push(number(*line, &f[1])?);
    }
    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if dt.is_nan() || dt <= 0.0 {
        return Err(parse_err(rows[0].0, "time stamps must increase"));
    }
    for (k, w) in times.windows(2).enumerate() {
        if ((w[1] - w[0]) - dt).abs() > TIME_JITTER * dt {
            return Err(parse_err(rows[k + 1].0, format!("time step {} s deviates from {dt} s", w[1] - w[0])));
        }
    }
    TimeSeries::new(samples, 1.0 / dt, unit)
}

pub fn write_waveform<W: Write>(w: &mut W, series: &TimeSeries) -> Result<()> {
    let header = match series.unit() {
        Unit::Amperes => CURRENT_WAVEFORM_HEADER,
        _ => VOLTAGE_WAVEFORM_HEADER,
    };
    write_line(w, format_args!("{header}"))?;
    for (i, v) in series.samples().iter().enumerate() {
        write_line(w, format_args!("{:e},{:e}", series.time(i), v))?;
    }
    Ok(())
}

pub fn write_pe_loop<W: Write>(w: &mut W, pe: &PeLoop) -> Result<()> {
    write_line(w, format_args!("{PE_LOOP_HEADER}"))?;
    for (e, p) in pe.field().iter().zip(pe.polarization()) {
        write_line(w, format_args!("{e:e},{p:e}"))?;
    }
    Ok(())
}

/// Metrics sidecar; metrics that do not exist for the loop are written as
/// `undefined`.
pub fn write_metrics<W: Write>(w: &mut W, m: &LoopMetrics) -> Result<()> {
    let opt = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| format!("{x:e}"));
    write_line(w, format_args!("{METRICS_HEADER}"))?;
    write_line(w, format_args!("remnant_polarization,{:e},C/m^2", m.remnant_polarization))?;
    write_line(w, format_args!("coercive_field,{},V/m", opt(m.coercive_field)))?;
    write_line(w, format_args!("saturation_polarization,{:e},C/m^2", m.saturation_polarization))?;
    write_line(w, format_args!("hysteresis_width,{},V/m", opt(m.hysteresis_width)))?;
    write_line(w, format_args!("loop_area,{:e},J/m^3", m.loop_area))?;
    Ok(())
}

/// Reads a metrics sidecar back as `(metric, value)` pairs; `None` for
/// `undefined` values.
pub fn read_metrics<R: BufRead>(reader: R) -> Result<Vec<(String, Option<f64>)>> {
    let (_, rows) = read_rows(reader, &[METRICS_HEADER])?;
    rows.iter()
        .map(|(line, f)| {
            let v = if f[1] == "undefined" { None } else { Some(number(*line, &f[1])?) };
            Ok((f[0].clone(), v))
        })
        .collect()
}

pub fn write_report<W: Write>(w: &mut W, points: &[CharacterizationPoint]) -> Result<()> {
    write_line(w, format_args!("{REPORT_HEADER}"))?;
    for p in points {
        write_line(
            w,
            format_args!(
                "{},{:e},{:e},{:e},{}",
                p.gain_index, p.injected_current_rms, p.drive_frequency, p.snr_db, p.saturated
            ),
        )?;
    }
    Ok(())
}

pub fn read_report<R: BufRead>(reader: R) -> Result<Vec<CharacterizationPoint>> {
    let (_, rows) = read_rows(reader, &[REPORT_HEADER])?;
    rows.iter()
        .map(|(line, f)| {
            let gain_index = f[0]
                .parse::<u8>()
                .ok()
                .filter(|k| (1..=5).contains(k))
                .ok_or_else(|| parse_err(*line, format!("`{}` is not a gain index", f[0])))?;
            let saturated = f[4]
                .parse::<bool>()
                .map_err(|_| parse_err(*line, format!("`{}` is not true/false", f[4])))?;
            Ok(CharacterizationPoint {
                gain_index,
                injected_current_rms: number(*line, &f[1])?,
                drive_frequency: number(*line, &f[2])?,
                snr_db: number(*line, &f[3])?,
                saturated,
            })
        })
        .collect()
}

/// Range table. A lower bound that lies below the measured grid is written
/// as `<grid_min`, and its decade span as `>span`.
pub fn write_range_table<W: Write>(w: &mut W, ranges: &[OperationalRange]) -> Result<()> {
    write_line(w, format_args!("{RANGE_HEADER}"))?;
    for r in ranges {
        let (lo, decades) = match r.i_min {
            LowerBound::Crossing(v) => (format!("{v:e}"), format!("{:e}", r.decades())),
            LowerBound::BelowGrid(v) => (format!("<{v:e}"), format!(">{:e}", r.decades())),
        };
        write_line(
            w,
            format_args!("{},{lo},{:e},{:e},{:e},{decades}", r.gain_index, r.i_max, r.band_low, r.band_high),
        )?;
    }
    Ok(())
}

pub fn write_regression<W: Write>(w: &mut W, ranges: &[OperationalRange]) -> Result<()> {
    write_line(w, format_args!("{REGRESSION_HEADER}"))?;
    for r in ranges {
        write_line(
            w,
            format_args!("{},{:e},{:e},{:e},{}", r.gain_index, r.fit.a, r.fit.b, r.fit.r_squared, r.points_used),
        )?;
    }
    Ok(())
}

/// SNR vs log-current per gain: measured points, then the regression curve
/// sampled from the lower bound (or grid minimum) up to `i_max`.
pub fn write_plot_data<W: Write>(
    w: &mut W,
    points: &[CharacterizationPoint],
    ranges: &[OperationalRange],
) -> Result<()> {
    const CURVE_SAMPLES: usize = 50;
    write_line(w, format_args!("{PLOT_HEADER}"))?;
    for r in ranges {
        for p in points.iter().filter(|p| p.gain_index == r.gain_index) {
            write_line(
                w,
                format_args!("{},measured,{:e},{:e}", p.gain_index, p.injected_current_rms.log10(), p.snr_db),
            )?;
        }
        let lo = r.i_min.value().log10();
        let hi = r.i_max.log10();
        for k in 0..CURVE_SAMPLES {
            let x = lo + (hi - lo) * k as f64 / (CURVE_SAMPLES - 1) as f64;
            write_line(w, format_args!("{},fit,{x:e},{:e}", r.gain_index, r.fitted_snr_db(10f64.powf(x))))?;
        }
    }
    Ok(())
}

pub fn write_sweep<W: Write>(w: &mut W, report: &SweepReport) -> Result<()> {
    write_line(w, format_args!("{SWEEP_HEADER}"))?;
    for c in &report.cells {
        write_line(
            w,
            format_args!(
                "{:e},{:e},{},{},{}",
                c.r_factor,
                c.c_factor,
                c.gain_index,
                c.outcome.passed,
                c.outcome.detail.replace(',', ";")
            ),
        )?;
    }
    Ok(())
}
