//! Polarization vs electric field loops.
//!
//! A loop is built from a drive-voltage record and the current the sample
//! draws: `E = V / d` and `P = (∫ I dt) / A`, with the charge integrated
//! after removing the mean current and each cycle re-centered on `P = 0`.

use crate::dsp::{dominant_bin, integrate_current};
use crate::error::{domain, Error, Result};
use crate::series::{wraps_continuously, TimeSeries, Unit};

/// Largest acceptable gap between the first and last loop point, as a
/// fraction of the loop's bounding box diagonal.
pub const CLOSURE_TOLERANCE: f64 = 0.05;

/// Electrode area and film thickness of the sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGeometry {
    electrode_area: f64,
    film_thickness: f64,
}

impl SampleGeometry {
    pub fn new(electrode_area: f64, film_thickness: f64) -> Result<Self> {
        if !(electrode_area.is_finite() && electrode_area > 0.0) {
            return Err(domain(format!("electrode area must be positive, got {electrode_area}")));
        }
        if !(film_thickness.is_finite() && film_thickness > 0.0) {
            return Err(domain(format!("film thickness must be positive, got {film_thickness}")));
        }
        Ok(Self { electrode_area, film_thickness })
    }

    pub fn electrode_area(&self) -> f64 {
        self.electrode_area
    }

    pub fn film_thickness(&self) -> f64 {
        self.film_thickness
    }
}

/// Paired field (V/m) and polarization (C/m²) samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PeLoop {
    field: Vec<f64>,
    polarization: Vec<f64>,
    cycles: usize,
}

impl PeLoop {
    pub fn new(field: Vec<f64>, polarization: Vec<f64>, cycles: usize) -> Result<Self> {
        if field.len() != polarization.len() {
            return Err(Error::Alignment(format!(
                "{} field samples vs {} polarization samples",
                field.len(),
                polarization.len()
            )));
        }
        if field.len() < 8 {
            return Err(Error::InsufficientData("a loop needs at least 8 samples".into()));
        }
        if cycles == 0 {
            return Err(domain("a loop spans at least one cycle"));
        }
        if field.iter().chain(&polarization).any(|v| !v.is_finite()) {
            return Err(domain("loop samples must be finite"));
        }
        Ok(Self { field, polarization, cycles })
    }

    pub fn field(&self) -> &[f64] {
        &self.field
    }

    pub fn polarization(&self) -> &[f64] {
        &self.polarization
    }

    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn len(&self) -> usize {
        self.field.len()
    }

    pub fn is_empty(&self) -> bool {
        self.field.is_empty()
    }

    /// Gap between the last and first point over the bounding-box diagonal.
    pub fn closure_gap(&self) -> f64 {
        let n = self.len();
        let (e0, e1) = min_max(&self.field);
        let (p0, p1) = min_max(&self.polarization);
        let (we, wp) = (e1 - e0, p1 - p0);
        let de = if we > 0.0 { (self.field[n - 1] - self.field[0]) / we } else { 0.0 };
        let dp = if wp > 0.0 { (self.polarization[n - 1] - self.polarization[0]) / wp } else { 0.0 };
        (de * de + dp * dp).sqrt() / 2f64.sqrt()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_gap() <= CLOSURE_TOLERANCE
    }

    /// Enclosed area per cycle (shoelace over the closed polygon).
    pub fn area(&self) -> f64 {
        let (e, p) = (&self.field, &self.polarization);
        let n = e.len();
        let twice: f64 = (0..n).map(|i| {
            let j = (i + 1) % n;
            e[i] * p[j] - e[j] * p[i]
        }).sum();
        0.5 * twice.abs() / self.cycles as f64
    }

    /// `(E range) × (P range)`.
    pub fn bounding_box_area(&self) -> f64 {
        let (e0, e1) = min_max(&self.field);
        let (p0, p1) = min_max(&self.polarization);
        (e1 - e0) * (p1 - p0)
    }
}

fn min_max(x: &[f64]) -> (f64, f64) {
    x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Ferroelectric figures of merit of a loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopMetrics {
    /// |P| at E = 0, averaged over the two branches (C/m²).
    pub remnant_polarization: f64,
    /// |E| at P = 0, averaged over the two branches (V/m). `None` for minor
    /// loops that never cross P = 0.
    pub coercive_field: Option<f64>,
    /// |P| at the field extrema (C/m²).
    pub saturation_polarization: f64,
    /// Twice the coercive field (V/m).
    pub hysteresis_width: Option<f64>,
    /// Enclosed area per cycle (J/m³).
    pub loop_area: f64,
}

impl LoopMetrics {
    pub fn coercive(&self) -> Result<f64> {
        self.coercive_field.ok_or(Error::MetricUndefined("coercive field"))
    }
}

/// Builds a loop from aligned drive-voltage and current records.
pub fn trace_pe_loop(drive: &TimeSeries, current: &TimeSeries, geometry: &SampleGeometry) -> Result<PeLoop> {
    if drive.unit() != Unit::Volts || current.unit() != Unit::Amperes {
        return Err(Error::Alignment(format!(
            "expected a voltage drive and a current record, got {} and {}",
            drive.unit(),
            current.unit()
        )));
    }
    if drive.len() != current.len() {
        return Err(Error::Alignment(format!(
            "drive has {} samples, current has {}",
            drive.len(),
            current.len()
        )));
    }
    let rate_mismatch = (drive.sample_rate() - current.sample_rate()).abs() / drive.sample_rate();
    if rate_mismatch > 1e-6 {
        return Err(Error::Alignment(format!(
            "sample rates differ: {} Hz vs {} Hz",
            drive.sample_rate(),
            current.sample_rate()
        )));
    }
    let cycles = dominant_bin(drive.samples())
        .ok_or_else(|| Error::InsufficientRecord("drive is constant".into()))?;

    let d = geometry.film_thickness();
    let a = geometry.electrode_area();
    let field: Vec<f64> = drive.samples().iter().map(|v| v / d).collect();
    let charge = integrate_current(current, true)?;
    let mut polarization: Vec<f64> = charge.samples().iter().map(|q| q / a).collect();

    let n = polarization.len();
    for c in 0..cycles {
        let (lo, hi) = (c * n / cycles, (c + 1) * n / cycles);
        let seg = &mut polarization[lo..hi];
        let mean = seg.iter().sum::<f64>() / seg.len() as f64;
        seg.iter_mut().for_each(|p| *p -= mean);
    }
    PeLoop::new(field, polarization, cycles)
}

#[derive(Default)]
struct BranchCrossings {
    ascending: Vec<f64>,
    descending: Vec<f64>,
}

impl BranchCrossings {
    fn push(&mut self, ascending: bool, v: f64) {
        if ascending {
            self.ascending.push(v);
        } else {
            self.descending.push(v);
        }
    }

    /// Mean magnitude of each branch's average, averaged over the branches
    /// that have crossings.
    fn folded_mean(&self) -> Option<f64> {
        let branch = |v: &[f64]| (!v.is_empty()).then(|| (v.iter().sum::<f64>() / v.len() as f64).abs());
        match (branch(&self.ascending), branch(&self.descending)) {
            (Some(a), Some(d)) => Some(0.5 * (a + d)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }
}

fn crosses(a: f64, b: f64) -> bool {
    (a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0)
}

/// Extracts loop metrics; zero crossings are linearly interpolated and
/// classified by whether the field is rising or falling across them.
pub fn loop_metrics(pe: &PeLoop) -> Result<LoopMetrics> {
    let (e, p) = (pe.field(), pe.polarization());
    let n = e.len();
    let mut at_zero_field = BranchCrossings::default();
    let mut at_zero_pol = BranchCrossings::default();
    for i in 0..n {
        let j = (i + 1) % n;
        let rising = e[j] > e[i];
        if crosses(e[i], e[j]) {
            let t = e[i] / (e[i] - e[j]);
            at_zero_field.push(rising, p[i] + t * (p[j] - p[i]));
        }
        if crosses(p[i], p[j]) {
            let t = p[i] / (p[i] - p[j]);
            at_zero_pol.push(rising, e[i] + t * (e[j] - e[i]));
        }
    }
    let remnant_polarization = at_zero_field
        .folded_mean()
        .ok_or(Error::MetricUndefined("remnant polarization"))?;
    let coercive_field = at_zero_pol.folded_mean();

    // Field extrema per cycle; ties go to the earlier index.
    let cycles = pe.cycles();
    let mut at_max = Vec::with_capacity(cycles);
    let mut at_min = Vec::with_capacity(cycles);
    for c in 0..cycles {
        let (lo, hi) = (c * n / cycles, (c + 1) * n / cycles);
        let mut imax = lo;
        let mut imin = lo;
        for i in lo..hi {
            if e[i] > e[imax] {
                imax = i;
            }
            if e[i] < e[imin] {
                imin = i;
            }
        }
        at_max.push(p[imax]);
        at_min.push(p[imin]);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let saturation_polarization = 0.5 * (mean(&at_max).abs() + mean(&at_min).abs());

    Ok(LoopMetrics {
        remnant_polarization,
        coercive_field,
        saturation_polarization,
        hysteresis_width: coercive_field.map(|ec| 2.0 * ec),
        loop_area: pe.area(),
    })
}

/// Parameters of the tanh-branch ferroelectric test fixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FerroelectricParams {
    remnant_polarization: f64,
    saturation_polarization: f64,
    coercive_field: f64,
    linear_capacitance: f64,
}

impl FerroelectricParams {
    pub fn new(
        remnant_polarization: f64,
        saturation_polarization: f64,
        coercive_field: f64,
        linear_capacitance: f64,
    ) -> Result<Self> {
        if !(remnant_polarization > 0.0 && remnant_polarization < saturation_polarization) {
            return Err(domain("need 0 < Pr < Ps"));
        }
        if !(coercive_field.is_finite() && coercive_field > 0.0) {
            return Err(domain("coercive field must be positive"));
        }
        if !(linear_capacitance.is_finite() && linear_capacitance >= 0.0) {
            return Err(domain("linear capacitance must be non-negative"));
        }
        Ok(Self { remnant_polarization, saturation_polarization, coercive_field, linear_capacitance })
    }

    pub fn remnant_polarization(&self) -> f64 {
        self.remnant_polarization
    }

    pub fn saturation_polarization(&self) -> f64 {
        self.saturation_polarization
    }

    pub fn coercive_field(&self) -> f64 {
        self.coercive_field
    }

    pub fn linear_capacitance(&self) -> f64 {
        self.linear_capacitance
    }

    /// Branch width `δ = Ec / ln((1 + Pr/Ps) / (1 - Pr/Ps))`, which pins
    /// the ascending branch to `-Pr` at zero field.
    pub fn branch_width(&self) -> f64 {
        let r = self.remnant_polarization / self.saturation_polarization;
        self.coercive_field / ((1.0 + r) / (1.0 - r)).ln()
    }

    /// `P±(E) = Ps tanh((E ∓ Ec) / 2δ)`; the ascending branch is shifted to
    /// `+Ec`.
    pub fn branch(&self, field: f64, ascending: bool) -> f64 {
        let shift = if ascending { self.coercive_field } else { -self.coercive_field };
        self.saturation_polarization * ((field - shift) / (2.0 * self.branch_width())).tanh()
    }
}

/// Centered derivative per sample. Records that wrap continuously are
/// differentiated periodically, others with one-sided ends.
fn derivative(x: &[f64], dt: f64) -> Vec<f64> {
    let n = x.len();
    let periodic = wraps_continuously(x);
    (0..n)
        .map(|i| {
            if i > 0 && i + 1 < n {
                (x[i + 1] - x[i - 1]) / (2.0 * dt)
            } else if periodic {
                let (prev, next) = if i == 0 { (x[n - 1], x[1]) } else { (x[n - 2], x[0]) };
                (next - prev) / (2.0 * dt)
            } else if i == 0 {
                (x[1] - x[0]) / dt
            } else {
                (x[n - 1] - x[n - 2]) / dt
            }
        })
        .collect()
}

/// Current drawn by the fixture ferroelectric under `drive`:
/// `I = A dP/dt + C_lin dV/dt`, with `P` following the ascending branch
/// while the field rises and the descending branch while it falls.
pub fn synthetic_ferroelectric(
    params: &FerroelectricParams,
    geometry: &SampleGeometry,
    drive: &TimeSeries,
) -> Result<TimeSeries> {
    if drive.unit() != Unit::Volts {
        return Err(domain(format!("drive must be in volts, got {}", drive.unit())));
    }
    let dt = drive.dt();
    let v = drive.samples();
    let dv = derivative(v, dt);
    let d = geometry.film_thickness();
    let p: Vec<f64> = v.iter().zip(&dv).map(|(&vi, &dvi)| params.branch(vi / d, dvi >= 0.0)).collect();
    let dp = derivative(&p, dt);
    let area = geometry.electrode_area();
    let c_lin = params.linear_capacitance;
    let current = dp.iter().zip(&dv).map(|(&dpi, &dvi)| area * dpi + c_lin * dvi).collect();
    drive.with_samples(current, Unit::Amperes)
}
