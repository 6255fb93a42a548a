use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use ihpulse::{PulseId, QuadratureConfig, QuadratureScheme};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "ihpulse",
    version,
    args_override_self = true,
    about = "Nyquist pulses from inverse-hyperbolic compositions"
)]
pub struct Cli {
    /// Output path; the extension is replaced per format
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// INI file with one section per subcommand; flags override its keys
    #[arg(long, global = true, value_name = "FILE")]
    pub preset: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frequency responses over f/B in [0, 1 + α]
    Spectrum(SpectrumArgs),
    /// Impulse responses and sidelobe peaks
    Impulse(ImpulseArgs),
    /// Worst-case eye boundaries, eye width and max distortion
    Eye(EyeArgs),
    /// Bit error probability under timing offset and AWGN
    Ber(BerArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Impulse(_) => "impulse",
            Command::Eye(_) => "eye",
            Command::Ber(_) => "ber",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Both,
}

pub fn parse_pulse(s: &str) -> Result<PulseId, String> {
    PulseId::from_str(s).map_err(|e| e.to_string())
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&a) {
        Ok(a)
    } else {
        Err(format!("roll-off {a} outside [0, 1]"))
    }
}

fn parse_tau(s: &str) -> Result<f64, String> {
    let t: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if t.abs() < 0.5 {
        Ok(t)
    } else {
        Err(format!("timing offset {t} must satisfy |tau/T| < 0.5"))
    }
}

fn parse_scheme(s: &str) -> Result<QuadratureScheme, String> {
    s.parse().map_err(|e: ihpulse::Error| e.to_string())
}

/// Pulse support for the eye: a number of symbols, or `none` for untruncated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Span {
    Symbols(f64),
    #[serde(serialize_with = "serialize_unlimited")]
    Unlimited,
}

fn serialize_unlimited<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("none")
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "inf" | "infinite" => Ok(Span::Unlimited),
            v => match v.parse::<f64>() {
                Ok(x) if x > 0.0 && x.is_finite() => Ok(Span::Symbols(x)),
                _ => Err(format!(
                    "pulse span '{s}' must be a positive number or 'none'"
                )),
            },
        }
    }
}

impl Span {
    pub fn symbols(self) -> Option<f64> {
        match self {
            Span::Symbols(x) => Some(x),
            Span::Unlimited => None,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct QuadratureArgs {
    /// Quadrature nodes per spectrum segment
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u32).range(64..))]
    pub nodes: u32,

    #[arg(long, default_value = "gauss-legendre", value_parser = parse_scheme)]
    pub scheme: QuadratureScheme,
}

impl QuadratureArgs {
    pub fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            nodes_per_segment: self.nodes as usize,
            scheme: self.scheme,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
#[command(args_override_self = true)]
pub struct SpectrumArgs {
    /// Comma-separated pulse names (acsch-log, acoth-acsch, acsch-asech, acos-log, acos-asinh, rc)
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_pulse, default_values = ["acsch-log", "acoth-acsch", "acsch-asech", "acos-log", "acos-asinh"])]
    pub pulses: Vec<PulseId>,

    #[arg(long, default_value_t = 0.35, value_parser = parse_alpha)]
    pub alpha: f64,

    /// Uniform grid points over f/B in [0, 1 + α]; transition points are added
    #[arg(long, default_value_t = 1001, value_parser = clap::value_parser!(u32).range(2..=1_000_000))]
    pub points: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
#[command(args_override_self = true)]
pub struct ImpulseArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_pulse, default_values = ["acsch-log", "acoth-acsch", "acsch-asech", "acos-log", "acos-asinh"])]
    pub pulses: Vec<PulseId>,

    #[arg(long, default_value_t = 0.35, value_parser = parse_alpha)]
    pub alpha: f64,

    /// Half-width of the time grid in symbols
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub span: u32,

    /// Samples per symbol
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..))]
    pub sps: u32,

    /// Sidelobes summarised per pulse
    #[arg(long, default_value_t = 4)]
    pub sidelobes: u32,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
#[command(args_override_self = true)]
pub struct EyeArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_pulse, default_values = ["acsch-log", "acoth-acsch", "acsch-asech", "acos-log", "acos-asinh"])]
    pub pulses: Vec<PulseId>,

    #[arg(long, default_value_t = 0.35, value_parser = parse_alpha)]
    pub alpha: f64,

    /// Interferers per side; values below 32 run as a diagnostic
    #[arg(long, default_value_t = 256)]
    pub truncation: u32,

    /// Phase grid intervals over one symbol (even, at least 64)
    #[arg(long, default_value_t = 512)]
    pub phase_points: u32,

    /// Pulse support half-width in symbols, or 'none'
    #[arg(long, default_value = "4")]
    pub pulse_span: Span,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
#[command(args_override_self = true)]
pub struct BerArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_pulse, default_values = ["acsch-log", "acoth-acsch", "acsch-asech", "acos-log", "acos-asinh"])]
    pub pulses: Vec<PulseId>,

    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_alpha, default_values = ["0.25", "0.35", "0.5"])]
    pub alphas: Vec<f64>,

    /// Timing offsets τ/T; the table stores |τ| results under the given sign
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', value_parser = parse_tau, allow_negative_numbers = true, default_values = ["0.05", "0.1", "0.2", "0.3"])]
    pub taus: Vec<f64>,

    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    pub snr: f64,

    #[arg(long, default_value_t = -100, allow_negative_numbers = true)]
    pub n1: i64,

    #[arg(long, default_value_t = 100)]
    pub n2: i64,

    /// Nonzero series terms
    #[arg(long, default_value_t = 23)]
    pub nm: u32,

    /// Noise standard deviations added to the series half-range
    #[arg(long, default_value_t = 8.0)]
    pub guard: f64,

    /// Monte Carlo trials per cell (at least 100000); omitted to skip
    #[arg(long, value_name = "TRIALS")]
    pub monte_carlo: Option<u64>,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}
