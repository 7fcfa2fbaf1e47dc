//! Series R-C equivalent of a thin-film piezoelectric transducer.
//!
//! Far below its first resonance the motional branch of the film's
//! Butterworth-Van Dyke circuit drops out and what remains is a resistor in
//! series with the clamped capacitance, `Z(f) = R - j / (2π f C)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Series R-C lumped model with optional 1-σ parameter uncertainties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransducerModel {
    resistance: f64,
    capacitance: f64,
    resistance_sigma: f64,
    capacitance_sigma: f64,
}

impl TransducerModel {
    pub fn new(resistance: f64, capacitance: f64) -> Result<Self> {
        Self::with_uncertainty(resistance, capacitance, 0.0, 0.0)
    }

    pub fn with_uncertainty(
        resistance: f64,
        capacitance: f64,
        resistance_sigma: f64,
        capacitance_sigma: f64,
    ) -> Result<Self> {
        if !(resistance.is_finite() && resistance > 0.0) {
            return Err(domain(format!("resistance must be positive, got {resistance}")));
        }
        if !(capacitance.is_finite() && capacitance > 0.0) {
            return Err(domain(format!("capacitance must be positive, got {capacitance}")));
        }
        if !(resistance_sigma >= 0.0 && capacitance_sigma >= 0.0) {
            return Err(domain("uncertainties must be non-negative"));
        }
        Ok(Self { resistance, capacitance, resistance_sigma, capacitance_sigma })
    }

    /// Screen-printed P(VDF-TrFE) film on polyimide as fitted from a
    /// 20 Hz - 1 kHz LCR sweep: 131.8 kΩ ± 11.6 kΩ in series with
    /// 0.707 nF ± 1.52 pF.
    pub fn screen_printed_film() -> Self {
        Self {
            resistance: 131.8e3,
            capacitance: 0.707e-9,
            resistance_sigma: 11.6e3,
            capacitance_sigma: 1.52e-12,
        }
    }

    pub fn resistance(&self) -> f64 {
        self.resistance
    }

    pub fn capacitance(&self) -> f64 {
        self.capacitance
    }

    pub fn resistance_sigma(&self) -> f64 {
        self.resistance_sigma
    }

    pub fn capacitance_sigma(&self) -> f64 {
        self.capacitance_sigma
    }

    /// Same network with an extra resistor in series (e.g. a source resistor).
    pub fn with_series_resistance(&self, extra: f64) -> Result<Self> {
        Self::new(self.resistance + extra, self.capacitance)
    }

    /// Scales R and C independently, dropping uncertainties.
    pub fn scaled(&self, r_factor: f64, c_factor: f64) -> Result<Self> {
        Self::new(self.resistance * r_factor, self.capacitance * c_factor)
    }

    pub fn impedance(&self, frequency: f64) -> Result<Complex64> {
        transducer_impedance(self, frequency)
    }
}

/// `Z = R - j / (2π f C)`.
pub fn transducer_impedance(model: &TransducerModel, frequency: f64) -> Result<Complex64> {
    if !(frequency.is_finite() && frequency > 0.0) {
        return Err(domain(format!("impedance needs a positive frequency, got {frequency}")));
    }
    Ok(Complex64::new(
        model.resistance,
        -1.0 / (2.0 * PI * frequency * model.capacitance),
    ))
}

/// One row of an LCR-meter sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePoint {
    pub frequency: f64,
    pub resistance: f64,
    pub reactance: f64,
}

impl ImpedancePoint {
    pub fn impedance(&self) -> Complex64 {
        Complex64::new(self.resistance, self.reactance)
    }
}

/// Impedance sweep with strictly increasing positive frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpedanceSpectrum {
    points: Vec<ImpedancePoint>,
}

impl ImpedanceSpectrum {
    pub fn new(points: Vec<ImpedancePoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if !(p.frequency.is_finite() && p.frequency > 0.0) {
                return Err(domain(format!("point {i}: frequency must be positive")));
            }
            if !(p.resistance.is_finite() && p.reactance.is_finite()) {
                return Err(domain(format!("point {i}: impedance is not finite")));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[1].frequency <= w[0].frequency) {
            return Err(domain(format!("frequencies must strictly increase (point {})", i + 1)));
        }
        Ok(Self { points })
    }

    /// Noise-free sweep of `model` at the given frequencies.
    pub fn from_model(model: &TransducerModel, frequencies: &[f64]) -> Result<Self> {
        let points = frequencies
            .iter()
            .map(|&f| {
                let z = model.impedance(f)?;
                Ok(ImpedancePoint { frequency: f, resistance: z.re, reactance: z.im })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[ImpedancePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `n` linearly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { stop } else { start + step * i as f64 }).collect()
        }
    }
}

/// The LCR grid used to characterize the film: 201 points over 20 Hz - 1 kHz.
pub fn lcr_sweep_frequencies() -> Vec<f64> {
    linspace(20.0, 1000.0, 201)
}

/// Least-squares series-RC fit of a measured spectrum.
///
/// The complex residual `Z_meas - (R - j k / ω)` with `k = 1/C` is linear in
/// `(R, k)` and the real and imaginary channels decouple, so the optimum is
/// closed form: `R` is the mean measured resistance and `k` is the
/// projection of the reactances onto `-1/ω`. Standard errors come from the
/// pooled residual variance over all `2n` real residuals with `2n - 2`
/// degrees of freedom; `σ_C` follows from `σ_k` by first-order propagation.
pub fn fit_rc_model(spectrum: &ImpedanceSpectrum) -> Result<TransducerModel> {
    let pts = spectrum.points();
    let n = pts.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "an RC fit needs at least 3 points, got {n}"
        )));
    }
    if pts.iter().all(|p| p.reactance > 0.0) {
        return Err(Error::FitDegenerate(
            "every point is inductive; capacitance is unidentifiable".into(),
        ));
    }

    let resistance = pts.iter().map(|p| p.resistance).sum::<f64>() / n as f64;

    // Regressor for k: u = -1/ω.
    let u = |p: &ImpedancePoint| -1.0 / (2.0 * PI * p.frequency);
    let suu: f64 = pts.iter().map(|p| u(p) * u(p)).sum();
    let sux: f64 = pts.iter().map(|p| u(p) * p.reactance).sum();
    let k = sux / suu;
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::FitDegenerate(
            "reactance carries no capacitive signature".into(),
        ));
    }
    let capacitance = 1.0 / k;

    let ssr: f64 = pts
        .iter()
        .map(|p| {
            let dr = p.resistance - resistance;
            let dx = p.reactance - k * u(p);
            dr * dr + dx * dx
        })
        .sum();
    let s2 = ssr / (2 * n - 2) as f64;
    let sigma_r = (s2 / n as f64).sqrt();
    let sigma_k = (s2 / suu).sqrt();
    let sigma_c = sigma_k / (k * k);

    TransducerModel::with_uncertainty(resistance, capacitance, sigma_r, sigma_c)
}

/// Root-mean-square of `|Z_meas - Z_model|` over the sweep.
pub fn residual_rms(model: &TransducerModel, spectrum: &ImpedanceSpectrum) -> Result<f64> {
    let mut acc = 0.0;
    for p in spectrum.points() {
        acc += (p.impedance() - model.impedance(p.frequency)?).norm_sqr();
    }
    Ok((acc / spectrum.len().max(1) as f64).sqrt())
}
