use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use pe_core::characterization::{
    calibrate_noise, derive_ranges, run_characterization, sweep_impedance, total_span, AcquisitionPlan,
    CharacterizationPoint, CurrentGrid, FrequencyPlan, LinearityCheck, LowerBound, OperationalRange,
    ANCHOR_CURRENT, ANCHOR_GAIN, ANCHOR_SNR_DB, DEFAULT_SWEEP_FACTORS,
};
use pe_core::dsp::notch_filter;
use pe_core::io;
use pe_core::pe_loop::{loop_metrics, trace_pe_loop, SampleGeometry};
use pe_core::tia::{current_range, simulate_measurement, GainSetting, NoiseConfig};
use pe_core::transducer::{fit_rc_model, residual_rms, TransducerModel};
use pe_core::{Error, TimeSeries, Unit};

use crate::config::Config;
use crate::error::CliError;
use crate::units;
use crate::{CharacterizeArgs, FitRcArgs, ModelArgs, PeLoopArgs, RangeTableArgs, SimulateArgs, SEED_ENV};

/// Mains pickup assumed by `characterize` unless configured.
const DEFAULT_LINE_PICKUP: f64 = 50e-6;

const MODEL_KEYS: &[&str] = &[
    "resistance",
    "capacitance",
    "noise",
    "noise-rms",
    "line-amplitude",
    "line-frequency",
    "bias-current",
    "seed",
];

fn keys(extra: &[&'static str]) -> Vec<&'static str> {
    extra.iter().chain(MODEL_KEYS).copied().collect()
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_with<T>(path: &Path, parse: impl FnOnce(BufReader<File>) -> pe_core::Result<T>) -> Result<T, CliError> {
    let file = File::open(path).map_err(|e| CliError::input(path, e))?;
    parse(BufReader::new(file)).map_err(|source| CliError::InFile { path: path.to_path_buf(), source })
}

/// Renders into memory, then writes the file (or stdout) in one go.
fn emit(path: Option<&Path>, render: impl FnOnce(&mut Vec<u8>) -> pe_core::Result<()>) -> Result<(), CliError> {
    let mut buf = Vec::new();
    render(&mut buf)?;
    match path {
        Some(p) => std::fs::write(p, &buf).map_err(|e| CliError::output(p, e)),
        None => std::io::stdout().write_all(&buf).map_err(|e| CliError::output(Path::new("<stdout>"), e)),
    }
}

fn parse_gain(text: &str) -> Result<GainSetting, CliError> {
    text.trim()
        .parse::<u8>()
        .ok()
        .and_then(|k| GainSetting::new(k).ok())
        .ok_or_else(|| usage(format!("`{text}` is not a gain index (1-5)")))
}

/// Flag, then config, then `$PETRA_SEED`, then 0.
fn seed(cfg: &Config, flag: &Option<String>) -> Result<u64, CliError> {
    let (text, origin) = match cfg.value(flag, "seed") {
        Some(v) => (v, "--seed"),
        None => match std::env::var(SEED_ENV) {
            Ok(v) => (v, SEED_ENV),
            Err(_) => return Ok(0),
        },
    };
    text.trim().parse().map_err(|_| usage(format!("{origin}: `{text}` is not a 64-bit unsigned seed")))
}

fn model(cfg: &Config, m: &ModelArgs) -> Result<TransducerModel, CliError> {
    let nominal = TransducerModel::screen_printed_film();
    let r = match cfg.value(&m.resistance, "resistance") {
        Some(v) => units::parse_ohms(&v).map_err(|e| usage(format!("--resistance: {e}")))?,
        None => nominal.resistance(),
    };
    let c = cfg.quantity(&m.capacitance, "capacitance", "F")?.unwrap_or(nominal.capacitance());
    TransducerModel::new(r, c).map_err(|e| usage(e.to_string()))
}

/// Noise settings and whether the white-noise level was given explicitly.
fn noise(cfg: &Config, m: &ModelArgs, default_line: f64) -> Result<(NoiseConfig, bool), CliError> {
    let seed = seed(cfg, &m.seed)?;
    if cfg.switch(&m.noise, "noise")? == Some(false) {
        return Ok((NoiseConfig::silent().with_seed(seed), true));
    }
    let base = NoiseConfig::default();
    let white = cfg.quantity(&m.noise_rms, "noise-rms", "V")?;
    let n = NoiseConfig {
        white_noise_rms: white.unwrap_or(0.0),
        line_amplitude: cfg.quantity(&m.line_amplitude, "line-amplitude", "V")?.unwrap_or(default_line),
        line_frequency: cfg.quantity(&m.line_frequency, "line-frequency", "Hz")?.unwrap_or(base.line_frequency),
        bias_current: cfg.quantity(&m.bias_current, "bias-current", "A")?.unwrap_or(base.bias_current),
        seed,
    };
    n.validate().map_err(|e| usage(e.to_string()))?;
    Ok((n, white.is_some()))
}

fn whole_cycles(cfg: &Config, flag: &Option<String>) -> Result<Option<u32>, CliError> {
    cfg.value(flag, "cycles")
        .map(|v| {
            v.trim()
                .parse::<u32>()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| usage(format!("--cycles: `{v}` is not a positive integer")))
        })
        .transpose()
}

pub fn fit_rc(args: FitRcArgs) -> Result<(), CliError> {
    let spectrum = read_with(&args.input, io::read_impedance)?;
    let fit = fit_rc_model(&spectrum)?;
    let residual = residual_rms(&fit, &spectrum)?;
    println!("R = {:.6e} ohm +/- {:.3e} ohm", fit.resistance(), fit.resistance_sigma());
    println!("C = {:.6e} F +/- {:.3e} F", fit.capacitance(), fit.capacitance_sigma());
    println!("residual rms = {residual:.3e} ohm over {} points", spectrum.len());
    if let Some(out) = &args.output {
        emit(Some(out), |w| io::write_rc_fit(w, &fit, residual))?;
    }
    Ok(())
}

pub fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let allowed = keys(&["gain", "sine", "amp-current", "amp-voltage", "cycles", "sample-rate"]);
    let cfg = Config::load(args.config.as_deref(), &allowed)?;
    let setting = parse_gain(&cfg.value(&args.gain, "gain").ok_or_else(|| usage("--gain is required"))?)?;
    let dut = model(&cfg, &args.model)?;
    let (noise, _) = noise(&cfg, &args.model, 0.0)?;

    let drive = match (&args.drive, cfg.quantity(&args.sine, "sine", "Hz")?) {
        (Some(path), _) => {
            let d = read_with(path, io::read_waveform)?;
            if d.unit() != Unit::Volts {
                return Err(usage(format!("{}: drive must be a voltage record", path.display())));
            }
            d
        }
        (None, Some(f)) => sine_drive(&cfg, &args, &dut, &setting, f)?,
        (None, None) => return Err(usage("give a drive record (--drive) or a generated sine (--sine)")),
    };

    let acq = simulate_measurement(&dut, &setting, &drive, &noise)?;
    if acq.saturated {
        eprintln!(
            "warning: output saturated at ±{} V; the current exceeds gain {}'s range",
            setting.output_ceiling(),
            setting.index()
        );
    }
    emit(args.output.as_deref(), |w| io::write_waveform(w, &acq.output))
}

fn sine_drive(
    cfg: &Config,
    args: &SimulateArgs,
    dut: &TransducerModel,
    setting: &GainSetting,
    f: f64,
) -> Result<TimeSeries, CliError> {
    if f.is_nan() || f <= 0.0 {
        return Err(usage("--sine: frequency must be positive"));
    }
    let amp_i = cfg.quantity(&args.amp_current, "amp-current", "A")?;
    let amp_v = cfg.quantity(&args.amp_voltage, "amp-voltage", "V")?;
    let v_peak = match (amp_i, amp_v) {
        (Some(_), Some(_)) => return Err(usage("--amp-current and --amp-voltage are exclusive")),
        (Some(i), None) => {
            if i.abs() > current_range(setting) {
                eprintln!(
                    "warning: {i:e} A exceeds gain {}'s range of {:e} A",
                    setting.index(),
                    current_range(setting)
                );
            }
            i * dut.impedance(f)?.norm()
        }
        (None, Some(v)) => v,
        (None, None) => return Err(usage("--sine needs --amp-current or --amp-voltage")),
    };
    let plan = AcquisitionPlan::default();
    let cycles = whole_cycles(cfg, &args.cycles)?.unwrap_or(plan.cycles);
    let fs = cfg.quantity(&args.sample_rate, "sample-rate", "Hz")?.unwrap_or_else(|| plan.sample_rate(f));
    let per_cycle = fs / f;
    if (per_cycle - per_cycle.round()).abs() > 1e-9 * per_cycle || per_cycle < 2.0 {
        return Err(usage(format!("--sample-rate {fs} Hz is not a whole multiple of {f} Hz")));
    }
    Ok(TimeSeries::sine(v_peak, f, fs, cycles, Unit::Volts)?)
}

fn parse_gains(text: &str) -> Result<Vec<GainSetting>, CliError> {
    let mut settings = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_gain)
        .collect::<Result<Vec<_>, _>>()?;
    settings.sort_by_key(|s| s.index());
    settings.dedup_by_key(|s| s.index());
    if settings.is_empty() {
        return Err(usage("--gains: no gain index given"));
    }
    Ok(settings)
}

/// `gain:freq` pairs layered on the default plan; a bare frequency applies
/// to every gain.
fn parse_frequencies(text: &str) -> Result<FrequencyPlan, CliError> {
    let mut plan = FrequencyPlan::default();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = |m: String| usage(format!("--frequencies: {m}"));
        match item.split_once(':') {
            Some((g, f)) => {
                let setting = parse_gain(g)?;
                plan.set(setting.index(), units::parse_quantity(f, "Hz").map_err(bad)?);
            }
            None => plan = FrequencyPlan::uniform(units::parse_quantity(item, "Hz").map_err(bad)?),
        }
    }
    Ok(plan)
}

/// Ranges for every setting that has enough points; the others are reported
/// on stderr and left out.
fn ranges_for(points: &[CharacterizationPoint], settings: &[GainSetting]) -> Result<Vec<OperationalRange>, CliError> {
    let mut ranges = Vec::new();
    for s in settings {
        match derive_ranges(points, std::slice::from_ref(s)) {
            Ok(mut r) => ranges.append(&mut r),
            Err(e @ (Error::InsufficientData(_) | Error::NoCrossing(_) | Error::EmptyRange(_))) => {
                eprintln!("warning: gain {}: no range ({e})", s.index());
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(ranges)
}

fn print_ranges(ranges: &[OperationalRange]) {
    for r in ranges {
        let lo = match r.i_min {
            LowerBound::Crossing(v) => format!("{v:.3e} A"),
            LowerBound::BelowGrid(v) => format!("< {v:.3e} A (grid minimum)"),
        };
        println!(
            "gain {}: {lo} .. {:.3e} A, {:.2} decades, r2 = {:.5}",
            r.gain_index,
            r.i_max,
            r.decades(),
            r.fit.r_squared
        );
    }
    if let Some((lo, hi, decades)) = total_span(ranges) {
        println!("total: {lo:.3e} A .. {hi:.3e} A, {decades:.2} decades");
    }
}

pub fn characterize(args: CharacterizeArgs) -> Result<(), CliError> {
    let allowed = keys(&["gains", "currents", "frequencies", "anchor-current", "anchor-snr", "cycles", "sweep"]);
    let cfg = Config::load(args.config.as_deref(), &allowed)?;
    let settings = match cfg.value(&args.gains, "gains") {
        Some(v) => parse_gains(&v)?,
        None => GainSetting::ladder(),
    };
    let grid = match cfg.value(&args.currents, "currents") {
        Some(v) => {
            let list = units::parse_list(&v, "A").map_err(|e| usage(format!("--currents: {e}")))?;
            if list.is_empty() {
                return Err(usage("--currents: no current given"));
            }
            CurrentGrid::Fixed(list)
        }
        None => CurrentGrid::PerSetting,
    };
    let frequencies = match cfg.value(&args.frequencies, "frequencies") {
        Some(v) => parse_frequencies(&v)?,
        None => FrequencyPlan::default(),
    };
    let mut plan = AcquisitionPlan::default();
    if let Some(c) = whole_cycles(&cfg, &args.cycles)? {
        plan.cycles = c;
    }
    let dut = model(&cfg, &args.model)?;
    let (mut noise, explicit) = noise(&cfg, &args.model, DEFAULT_LINE_PICKUP)?;

    if !explicit {
        let anchor_current = cfg.quantity(&args.anchor_current, "anchor-current", "A")?.unwrap_or(ANCHOR_CURRENT);
        let anchor_snr = cfg.quantity(&args.anchor_snr, "anchor-snr", "dB")?.unwrap_or(ANCHOR_SNR_DB);
        let anchor = GainSetting::new(ANCHOR_GAIN)?;
        let f = frequencies.frequency(ANCHOR_GAIN);
        noise = calibrate_noise(anchor_current, anchor_snr, &anchor, f, &dut, &noise, &plan)?;
        println!(
            "calibrated white noise: {:.4e} V rms ({anchor_current:e} A at {f} Hz, gain {ANCHOR_GAIN} -> {anchor_snr} dB)",
            noise.white_noise_rms
        );
    }

    let points = run_characterization(&settings, &grid, &frequencies, &noise, &dut, &plan)?;
    let ranges = ranges_for(&points, &settings)?;

    let dir = &args.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::output(dir, e))?;
    let file = |name: &str| -> PathBuf { dir.join(name) };
    emit(Some(&file("report.csv")), |w| io::write_report(w, &points))?;
    emit(Some(&file("regression.csv")), |w| io::write_regression(w, &ranges))?;
    emit(Some(&file("range_table.csv")), |w| io::write_range_table(w, &ranges))?;
    emit(Some(&file("plot_data.csv")), |w| io::write_plot_data(w, &points, &ranges))?;

    if cfg.switch(&args.sweep, "sweep")? == Some(true) {
        let check = LinearityCheck { frequencies, ..LinearityCheck::default() };
        let report = sweep_impedance(&dut, &DEFAULT_SWEEP_FACTORS, &settings, &check)?;
        emit(Some(&file("sweep.csv")), |w| io::write_sweep(w, &report))?;
        let failed = report.cells.iter().filter(|c| !c.outcome.passed).count();
        println!("impedance sweep: {failed} of {} cells failed", report.cells.len());
    }

    println!("{} points written to {}", points.len(), dir.display());
    print_ranges(&ranges);
    Ok(())
}

pub fn pe_loop(args: PeLoopArgs) -> Result<(), CliError> {
    let cfg = Config::load(args.config.as_deref(), &["area", "thickness", "gain", "notch", "line-frequency"])?;
    let area = cfg
        .value(&args.area, "area")
        .ok_or_else(|| usage("--area is required"))
        .and_then(|v| units::parse_scaled(&v, "m2", 2).map_err(|e| usage(format!("--area: {e}"))))?;
    let thickness = cfg
        .quantity(&args.thickness, "thickness", "m")?
        .ok_or_else(|| usage("--thickness is required"))?;
    let geometry = SampleGeometry::new(area, thickness).map_err(|e| usage(e.to_string()))?;

    let drive = read_with(&args.drive, io::read_waveform)?;
    if drive.unit() != Unit::Volts {
        return Err(usage(format!("{}: drive must be a voltage record", args.drive.display())));
    }
    let mut current = read_with(&args.current, io::read_waveform)?;
    if current.unit() == Unit::Volts {
        let text = cfg
            .value(&args.gain, "gain")
            .ok_or_else(|| usage("the current record holds amplifier volts; give --gain to convert it"))?;
        // Inverting stage: V = -R_f I in the pass band.
        let rf = parse_gain(&text)?.feedback_resistance();
        let amps = current.samples().iter().map(|v| -v / rf).collect();
        current = current.with_samples(amps, Unit::Amperes)?;
    }

    let notch = !args.no_notch && cfg.switch(&None, "notch")? != Some(false);
    if notch {
        let line = cfg.quantity(&args.line_frequency, "line-frequency", "Hz")?.unwrap_or(50.0);
        current = notch_filter(&current, line).map_err(|e| usage(format!("{e}; use --no-notch for this record")))?;
    }

    let pe = trace_pe_loop(&drive, &current, &geometry)?;
    let metrics = loop_metrics(&pe)?;
    let sidecar = args.metrics.clone().unwrap_or_else(|| sidecar_path(&args.output));
    emit(Some(&args.output), |w| io::write_pe_loop(w, &pe))?;
    emit(Some(&sidecar), |w| io::write_metrics(w, &metrics))?;

    let opt = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.4e}"));
    println!("cycles: {}", pe.cycles());
    println!("remnant polarization: {:.4e} C/m^2", metrics.remnant_polarization);
    println!("coercive field: {} V/m", opt(metrics.coercive_field));
    println!("saturation polarization: {:.4e} C/m^2", metrics.saturation_polarization);
    println!("loop area: {:.4e} J/m^3 per cycle", metrics.loop_area);
    if !pe.is_closed() {
        eprintln!("warning: loop does not close (gap {:.3e} C/m^2)", pe.closure_gap());
    }
    Ok(())
}

fn sidecar_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "loop".into());
    output.with_file_name(format!("{stem}_metrics.csv"))
}

pub fn range_table(args: RangeTableArgs) -> Result<(), CliError> {
    let points = read_with(&args.input, io::read_report)?;
    let mut indices: Vec<u8> = points.iter().map(|p| p.gain_index).collect();
    indices.sort_unstable();
    indices.dedup();
    let settings = indices.into_iter().map(GainSetting::new).collect::<pe_core::Result<Vec<_>>>()?;
    let ranges = ranges_for(&points, &settings)?;
    emit(args.output.as_deref(), |w| io::write_range_table(w, &ranges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_pairs() {
        let plan = parse_frequencies("5:1Hz, 2:50Hz").unwrap();
        assert_eq!(plan.frequency(5), 1.0);
        assert_eq!(plan.frequency(2), 50.0);
        assert_eq!(plan.frequency(1), 100.0);
        assert_eq!(parse_frequencies("10Hz").unwrap().frequency(5), 10.0);
        assert!(parse_frequencies("9:1Hz").is_err());
    }

    #[test]
    fn gain_lists_sorted_and_deduplicated() {
        let g: Vec<u8> = parse_gains("5,1,5").unwrap().iter().map(|s| s.index()).collect();
        assert_eq!(g, vec![1, 5]);
        assert!(parse_gains("0").is_err());
    }

    #[test]
    fn sidecar_next_to_output() {
        assert_eq!(sidecar_path(Path::new("out/loop.csv")), PathBuf::from("out/loop_metrics.csv"));
    }
}
