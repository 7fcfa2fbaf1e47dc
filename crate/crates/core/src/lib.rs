//! Software model of a transimpedance PE-loop tracer.
//!
//! The crate covers the whole measurement chain of a current-mode
//! polarization/electric-field tracer for thin ferroelectric polymer films:
//!
//! - [`transducer`]: series R-C equivalent of the film and its fit from
//!   LCR-meter impedance sweeps.
//! - [`tia`]: the five-decade selectable-gain transimpedance stage and a
//!   frequency-domain acquisition simulator with output-referred noise.
//! - [`dsp`]: mains notch filter, Kaiser periodogram SNR estimator,
//!   log-linear exponential regression and charge integration.
//! - [`pe_loop`]: turning drive/current records into hysteresis loops and
//!   extracting remnant polarization, coercive field and friends.
//! - [`characterization`]: SNR-vs-current sweeps per gain setting and the
//!   derived operational current ranges.
//! - [`io`]: the CSV formats shared by the command-line tools.

pub mod characterization;
pub mod dsp;
pub mod error;
pub mod io;
pub mod pe_loop;
pub mod series;
pub mod tia;
pub mod transducer;

pub use error::{Error, Result};
pub use series::{TimeSeries, Unit};
