use std::f64::consts::PI;

use proptest::prelude::*;

use pe_core::characterization::{derive_ranges, CharacterizationPoint};
use pe_core::dsp::{estimate_snr, exp_regression, integrate_current, notch_filter};
use pe_core::pe_loop::PeLoop;
use pe_core::tia::{simulate_measurement, GainSetting, NoiseConfig};
use pe_core::transducer::{fit_rc_model, lcr_sweep_frequencies, ImpedanceSpectrum, TransducerModel};
use pe_core::{TimeSeries, Unit};

const N: usize = 512;
const FS: f64 = 512.0;

/// Whole-cycle multitone over one second: `(harmonic, amplitude, phase)`.
fn multitone(parts: &[(usize, f64, f64)]) -> Vec<f64> {
    (0..N)
        .map(|i| {
            let t = i as f64 / FS;
            parts.iter().map(|&(k, a, ph)| a * (2.0 * PI * k as f64 * t + ph).sin()).sum()
        })
        .collect()
}

fn tones() -> impl Strategy<Value = Vec<(usize, f64, f64)>> {
    prop::collection::vec((1usize..=8, -0.5f64..0.5, 0.0f64..(2.0 * PI)), 1..4)
}

fn volts(x: Vec<f64>) -> TimeSeries {
    TimeSeries::new(x, FS, Unit::Volts).unwrap()
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rc_fit_recovers_any_noiseless_model(r in 1e3f64..1e8, c in 1e-12f64..1e-6) {
        let model = TransducerModel::new(r, c).unwrap();
        let spectrum = ImpedanceSpectrum::from_model(&model, &lcr_sweep_frequencies()).unwrap();
        let fit = fit_rc_model(&spectrum).unwrap();
        prop_assert!((fit.resistance() / r - 1.0).abs() < 1e-8);
        prop_assert!((fit.capacitance() / c - 1.0).abs() < 1e-8);
    }

    #[test]
    fn noiseless_simulation_superposes(a in tones(), b in tones(), gain in 1u8..=5) {
        let model = TransducerModel::screen_printed_film();
        let setting = GainSetting::new(gain).unwrap();
        let quiet = NoiseConfig::silent();
        let xa = multitone(&a);
        let xb = multitone(&b);
        let sum: Vec<f64> = xa.iter().zip(&xb).map(|(p, q)| p + q).collect();
        let ya = simulate_measurement(&model, &setting, &volts(xa), &quiet).unwrap();
        let yb = simulate_measurement(&model, &setting, &volts(xb), &quiet).unwrap();
        let ys = simulate_measurement(&model, &setting, &volts(sum), &quiet).unwrap();
        prop_assume!(!(ya.saturated || yb.saturated || ys.saturated));
        let scale = max_abs(ya.output.samples()) + max_abs(yb.output.samples());
        prop_assume!(scale > 0.0);
        for ((s, p), q) in ys.output.samples().iter().zip(ya.output.samples()).zip(yb.output.samples()) {
            prop_assert!((s - (p + q)).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn transfer_magnitude_falls_with_frequency(gain in 1u8..=5, f in 0.0f64..1e4, df in 0.0f64..1e4) {
        let s = GainSetting::new(gain).unwrap();
        let lo = s.transfer(f).norm();
        let hi = s.transfer(f + df).norm();
        prop_assert!(hi <= lo * (1.0 + 1e-15));
        prop_assert!(lo <= s.feedback_resistance() * (1.0 + 1e-15));
    }

    #[test]
    fn snr_ignores_amplitude_scale(scale in 1e-6f64..1e6, seed in any::<u64>()) {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, 0.1).unwrap();
        let x: Vec<f64> = (0..4096)
            .map(|i| (2.0 * PI * 40.0 * i as f64 / 4096.0).sin() + normal.sample(&mut rng))
            .collect();
        let y: Vec<f64> = x.iter().map(|v| v * scale).collect();
        let a = estimate_snr(&TimeSeries::new(x, 4096.0, Unit::Volts).unwrap()).unwrap();
        let b = estimate_snr(&TimeSeries::new(y, 4096.0, Unit::Volts).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn integration_is_linear(
        x in prop::collection::vec(-1e-6f64..1e-6, 2..300),
        k in -1e3f64..1e3,
        offset in -1e-6f64..1e-6,
    ) {
        let i = TimeSeries::new(x.clone(), 100.0, Unit::Amperes).unwrap();
        let scaled = i.with_samples(x.iter().map(|v| k * v + offset).collect(), Unit::Amperes).unwrap();
        let q = integrate_current(&i, false).unwrap();
        let qs = integrate_current(&scaled, false).unwrap();
        let peak = qs.peak().max(q.peak() * k.abs()).max(1e-30);
        for (j, (a, b)) in qs.samples().iter().zip(q.samples()).enumerate() {
            let expected = k * b + offset * j as f64 / 100.0;
            prop_assert!((a - expected).abs() <= 1e-12 * peak);
        }
    }

    #[test]
    fn notch_keeps_dc_and_is_linear(level in -10.0f64..10.0, a in tones(), k in -5.0f64..5.0) {
        let fs = 1024.0;
        let dc = TimeSeries::new(vec![level; 1024], fs, Unit::Volts).unwrap();
        let y = notch_filter(&dc, 50.0).unwrap();
        prop_assert!(y.samples().iter().all(|v| (v - level).abs() <= 1e-6 * level.abs().max(1e-12)));

        let x = TimeSeries::new(multitone(&a).repeat(2), fs, Unit::Volts).unwrap();
        let kx = x.with_samples(x.samples().iter().map(|v| k * v).collect(), Unit::Volts).unwrap();
        let (y, ky) = (notch_filter(&x, 50.0).unwrap(), notch_filter(&kx, 50.0).unwrap());
        let scale = max_abs(ky.samples()).max(1e-300);
        for (p, q) in ky.samples().iter().zip(y.samples()) {
            prop_assert!((p - k * q).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn exp_regression_recovers_exact_curves(a in 1e-3f64..1e3, b in -3.0f64..3.0, x0 in -5.0f64..5.0) {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| {
            let x = x0 + 0.3 * i as f64;
            (x, a * (b * x).exp())
        }).collect();
        let fit = exp_regression(&pts).unwrap();
        prop_assert!((fit.a / a - 1.0).abs() < 1e-9);
        prop_assert!((fit.b - b).abs() < 1e-9);
    }

    #[test]
    fn loop_area_ignores_start_sample(shift in 0usize..200, width in 0.1f64..1.0) {
        let n = 200;
        let (e, p): (Vec<f64>, Vec<f64>) = (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                (t.cos(), width * t.sin())
            })
            .unzip();
        let base = PeLoop::new(e.clone(), p.clone(), 1).unwrap().area();
        let mut er = e;
        let mut pr = p;
        er.rotate_left(shift);
        pr.rotate_left(shift);
        let rotated = PeLoop::new(er, pr, 1).unwrap().area();
        prop_assert!((rotated - base).abs() <= 1e-12 * base);
    }

    #[test]
    fn derive_ranges_ignores_point_order(
        jitter in prop::collection::vec(-0.3f64..0.3, 8),
        order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let setting = GainSetting::new(5).unwrap();
        let points: Vec<CharacterizationPoint> = (0..8)
            .map(|i| {
                let current = 2e-12 * 10f64.powf(0.6 * i as f64);
                CharacterizationPoint {
                    gain_index: 5,
                    injected_current_rms: current,
                    drive_frequency: 3.0,
                    snr_db: 6.0 + 20.0 * (current / 2e-12).log10() + jitter[i],
                    saturated: false,
                }
            })
            .collect();
        let shuffled: Vec<CharacterizationPoint> = order.iter().map(|&i| points[i]).collect();
        let a = derive_ranges(&points, &[setting]).unwrap();
        let b = derive_ranges(&shuffled, &[setting]).unwrap();
        prop_assert_eq!(a, b);
    }
}
