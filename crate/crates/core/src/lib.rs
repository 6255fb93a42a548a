//! Two-parametric Nyquist ISI-free pulses built from inner/outer
//! inverse-hyperbolic function compositions.
//!
//! The crate is organised bottom-up:
//!
//! * [`pulse`]: the piecewise frequency-response template, the composite
//!   transition functions `G = g∘h` and their continuity constants.
//! * [`spectral`]: numerical inverse transform to the impulse response,
//!   ISI sampling, sidelobes and asymptotic decay estimation.
//! * [`eye`]: worst-case eye-diagram boundaries and their scalar metrics.
//! * [`ber`]: bit error probability under a deterministic timing offset and
//!   AWGN, by characteristic-function series and by Monte Carlo.
//!
//! All numerics are generic over the scalar type (`f32` or `f64`); the
//! `*64`/`*32` aliases below name the concrete instantiations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ber;
pub mod error;
pub mod eye;
pub mod pulse;
pub mod scalar;
pub mod spectral;

mod quadrature;

pub use ber::{
    ber_monte_carlo, ber_series, ber_table, ber_table_monte_carlo, BerCell, BerConfig, BerResult,
    BerTable, MonteCarloEstimate,
};
pub use error::{Error, Result};
pub use eye::{eye_boundaries, eye_width, max_distortion, EyeConfig, EyeReport};

pub use pulse::{
    composite_g, gamma, spectrum, spectrum_derivative_acsch_asech, GammaConstant, Pulse, PulseId,
    PulseParams,
};
pub use scalar::Scalar;
pub use spectral::{
    decay_exponent, derivative_divergence_check, impulse_at, impulse_grid, is_strictly_diverging,
    isi_samples, raised_cosine_impulse, sidelobes, DivergenceRow, ImpulseGrid, ImpulseResponse,
    IsiSamples, QuadratureConfig, QuadratureScheme, Sidelobe,
};

pub type PulseParams64 = PulseParams<f64>;
pub type PulseParams32 = PulseParams<f32>;
pub type Pulse64 = Pulse<f64>;
pub type Pulse32 = Pulse<f32>;
pub type ImpulseResponse64 = ImpulseResponse<f64>;
pub type ImpulseResponse32 = ImpulseResponse<f32>;
pub type ImpulseGrid64 = ImpulseGrid<f64>;
pub type IsiSamples64 = IsiSamples<f64>;
pub type EyeConfig64 = EyeConfig<f64>;
pub type EyeReport64 = EyeReport<f64>;
pub type BerConfig64 = BerConfig<f64>;
pub type BerResult64 = BerResult<f64>;
pub type BerTable64 = BerTable<f64>;
