//! Signals, spectra, shifts and template generators.

mod assumption;
pub mod io;
mod noise;
mod shift;
mod spectrum;
mod template;

pub use assumption::{autocorrelation, check_assumption1, Assumption1Diagnostic, DEFAULT_TAIL_FRACTION};
pub use noise::{fill_gaussian, NoiseSample};
pub use shift::circular_shift;
pub use spectrum::{dft, dft_complex, idft, idft_complex, wrap_phase, SpectralRepr, NULL_BIN_TOLERANCE};
pub(crate) use spectrum::{forward_plan, inverse_plan};
pub use template::{
    generate_template, power_law_magnitude, SignalFamily, SignalFamilySpec, TemplateSignal,
    DEFAULT_SPECTRUM_FLOOR,
};
