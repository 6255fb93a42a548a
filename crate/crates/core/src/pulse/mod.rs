//! Frequency-response template and the composite transition functions.
//!
//! Every composite pulse shares one piecewise spectrum:
//!
//! ```text
//!          ⎧ T                           |f| ≤ B(1−α)
//!   S(f) = ⎨ T·(1 − G(u)/(2γ))           B(1−α) ≤ |f| ≤ B,      u = (|f| − B(1−α)) / (2αB)
//!          ⎪ T·G(v)/(2γ)                 B ≤ |f| ≤ B(1+α),      v = (B(1+α) − |f|) / (2αB)
//!          ⎩ 0                           |f| ≥ B(1+α)
//! ```
//!
//! with `B = 1/(2T)`, `G = g∘h` on `[0, ½]`, `G(0) = 0` and `γ = G(½)`.
//! The raised cosine is carried alongside as a closed-form reference.

pub mod inverse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Error, Result};
use crate::scalar::{lit, Scalar};
use inverse::{acosh, acoth, acsch, asech, asinh};

/// A member of the pulse family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseId {
    /// `G(x) = acsch(ln x)`, `γ ≈ −1.1625`.
    AcschLog,
    /// `G(x) = acoth(acsch x)`, `γ ≈ 0.8531`.
    AcothAcsch,
    /// `G(x) = acsch(asech x)`, `γ ≈ 0.7006`.
    AcschAsech,
    /// Reference pulse, `G(x) = acos(1 + ln(1 − x))`.
    AcosLog,
    /// Reference pulse, `G(x) = acos(asinh(sinh(1)·(1 − x)))`.
    AcosAsinh,
    /// Raised cosine, closed form in both domains.
    RaisedCosine,
}

impl PulseId {
    pub const ALL: [PulseId; 6] = [
        PulseId::AcschLog,
        PulseId::AcothAcsch,
        PulseId::AcschAsech,
        PulseId::AcosLog,
        PulseId::AcosAsinh,
        PulseId::RaisedCosine,
    ];

    /// The five pulses defined through a composite `G`.
    pub const COMPOSITES: [PulseId; 5] = [
        PulseId::AcschLog,
        PulseId::AcothAcsch,
        PulseId::AcschAsech,
        PulseId::AcosLog,
        PulseId::AcosAsinh,
    ];

    pub fn is_composite(self) -> bool {
        self != PulseId::RaisedCosine
    }

    /// Identifier used in reports, e.g. `acsch_asech`.
    pub fn name(self) -> &'static str {
        match self {
            PulseId::AcschLog => "acsch_log",
            PulseId::AcothAcsch => "acoth_acsch",
            PulseId::AcschAsech => "acsch_asech",
            PulseId::AcosLog => "acos_log",
            PulseId::AcosAsinh => "acos_asinh",
            PulseId::RaisedCosine => "raised_cosine",
        }
    }

    /// Shell-safe command-line spelling, e.g. `acsch-asech`.
    pub fn cli_name(self) -> &'static str {
        match self {
            PulseId::AcschLog => "acsch-log",
            PulseId::AcothAcsch => "acoth-acsch",
            PulseId::AcschAsech => "acsch-asech",
            PulseId::AcosLog => "acos-log",
            PulseId::AcosAsinh => "acos-asinh",
            PulseId::RaisedCosine => "rc",
        }
    }

    /// Bracket notation `outer[inner]`.
    pub fn label(self) -> &'static str {
        match self {
            PulseId::AcschLog => "acsch[log]",
            PulseId::AcothAcsch => "acoth[acsch]",
            PulseId::AcschAsech => "acsch[asech]",
            PulseId::AcosLog => "acos[log]",
            PulseId::AcosAsinh => "acos[asinh]",
            PulseId::RaisedCosine => "RC",
        }
    }
}

impl fmt::Display for PulseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PulseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        PulseId::ALL
            .into_iter()
            .find(|id| s == id.name() || s == id.cli_name() || s == id.label())
            .ok_or_else(|| {
                let valid: Vec<_> = PulseId::ALL.iter().map(|id| id.cli_name()).collect();
                config(format!("unknown pulse '{s}' (valid: {})", valid.join(", ")))
            })
    }
}

/// Roll-off factor and symbol period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseParams<F> {
    alpha: F,
    symbol_period: F,
}

impl<F: Scalar> PulseParams<F> {
    pub fn new(alpha: F, symbol_period: F) -> Result<Self> {
        if !(alpha >= F::zero() && alpha <= F::one()) {
            return Err(domain(format!("roll-off {alpha} outside [0, 1]")));
        }
        if !(symbol_period > F::zero()) || !symbol_period.is_finite() {
            return Err(domain(format!(
                "symbol period {symbol_period} must be positive"
            )));
        }
        Ok(Self {
            alpha,
            symbol_period,
        })
    }

    /// Unit symbol period.
    pub fn with_alpha(alpha: F) -> Result<Self> {
        Self::new(alpha, F::one())
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn symbol_period(&self) -> F {
        self.symbol_period
    }

    /// Nyquist frequency `B = 1/(2T)`.
    pub fn nyquist(&self) -> F {
        (lit::<F>(2.0) * self.symbol_period).recip()
    }

    /// Transition band edges `B(1−α)` and `B(1+α)`.
    pub fn band_edges(&self) -> (F, F) {
        let b = self.nyquist();
        (b * (F::one() - self.alpha), b * (F::one() + self.alpha))
    }
}

/// Continuity constant `γ = G(½)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaConstant<F>(F);

impl<F: Scalar> GammaConstant<F> {
    pub fn value(self) -> F {
        self.0
    }
}

/// Evaluates the composite transition function `G(x) = g(h(x))` on `[0, ½]`.
///
/// `x = 0` returns the limit `G(0⁺) = 0`.
pub fn composite_g<F: Scalar>(id: PulseId, x: F) -> Result<F> {
    if !id.is_composite() {
        return Err(Error::UnsupportedPulse(id));
    }
    if !(x >= F::zero() && x <= lit(0.5)) {
        return Err(domain(format!("argument {x} outside [0, 1/2]")));
    }
    Ok(eval_g(id, x))
}

/// Unchecked `G`; `x` in `[0, ½]`, `id` composite.
fn eval_g<F: Scalar>(id: PulseId, x: F) -> F {
    if x == F::zero() {
        return F::zero();
    }
    match id {
        PulseId::AcschLog => acsch(x.ln()),
        PulseId::AcothAcsch => acoth(acsch(x)),
        PulseId::AcschAsech => acsch(asech(x)),
        PulseId::AcosLog => (F::one() + (-x).ln_1p()).acos(),
        PulseId::AcosAsinh => {
            let inner = asinh(F::one().sinh() * (F::one() - x));
            inner.min(F::one()).acos()
        }
        PulseId::RaisedCosine => unreachable!("raised cosine has no composite G"),
    }
}

/// `γ = G(½)` for a composite pulse.
pub fn gamma<F: Scalar>(id: PulseId) -> Result<GammaConstant<F>> {
    composite_g(id, lit(0.5)).map(GammaConstant)
}

/// A pulse with validated parameters and its continuity constant resolved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pulse<F> {
    id: PulseId,
    params: PulseParams<F>,
    gamma: Option<F>,
}

impl<F: Scalar> Pulse<F> {
    pub fn new(id: PulseId, params: PulseParams<F>) -> Self {
        let gamma = id.is_composite().then(|| eval_g(id, lit(0.5)));
        Self { id, params, gamma }
    }

    pub fn id(&self) -> PulseId {
        self.id
    }

    pub fn params(&self) -> &PulseParams<F> {
        &self.params
    }

    /// Cached `γ`; `None` for the raised cosine.
    pub fn gamma(&self) -> Option<F> {
        self.gamma
    }

    /// Frequency response `S(f)`, in units of `T`. Even in `f`.
    pub fn spectrum(&self, f: F) -> F {
        let p = &self.params;
        let t = p.symbol_period;
        let b = p.nyquist();
        let a = f.abs();
        let half = lit::<F>(0.5);

        if p.alpha == F::zero() {
            return if a < b {
                t
            } else if a == b {
                t * half
            } else {
                F::zero()
            };
        }

        let (lo, hi) = p.band_edges();
        if a <= lo {
            return t;
        }
        if a >= hi {
            return F::zero();
        }
        if a == b {
            return t * half;
        }

        let width = lit::<F>(2.0) * p.alpha * b;
        match self.gamma {
            Some(gamma) => {
                // u and v both written as ½ − distance-from-B/(2αB) so that
                // points mirrored about B share the same G argument.
                if a < b {
                    let u = clamp_half(half - (b - a) / width);
                    t * (F::one() - eval_g(self.id, u) / (lit::<F>(2.0) * gamma))
                } else {
                    let v = clamp_half(half - (a - b) / width);
                    t * eval_g(self.id, v) / (lit::<F>(2.0) * gamma)
                }
            }
            None => {
                let phase = F::PI() * (a - lo) / width;
                t * half * (F::one() + phase.cos())
            }
        }
    }

    /// The nonzero pieces of the spectrum as `(start, end)` frequency
    /// intervals on `f ≥ 0`, in ascending order.
    pub fn segments(&self) -> Vec<(F, F)> {
        let p = &self.params;
        if p.alpha == F::zero() {
            return vec![(F::zero(), p.nyquist())];
        }
        let (lo, hi) = p.band_edges();
        vec![(F::zero(), lo), (lo, p.nyquist()), (p.nyquist(), hi)]
    }
}

fn clamp_half<F: Scalar>(x: F) -> F {
    x.max(F::zero()).min(lit(0.5))
}

/// Frequency response of `id` at `f`.
pub fn spectrum<F: Scalar>(id: PulseId, params: PulseParams<F>, f: F) -> F {
    Pulse::new(id, params).spectrum(f)
}

/// Analytic `S'(f)` of the acsch[asech] pulse.
///
/// In the transition band, with `c₁ = 2Bα/(f − B(1−α))` and
/// `c₂ = 2Bα/(f − B(1+α))` and `c` the one for the segment containing `f`:
///
/// ```text
/// S'(f) = −T c² / (4αBγ · acosh|c| · sqrt(1 + acosh²|c|) · sqrt(c² − 1))
/// ```
///
/// The derivative diverges at `|f| = B(1∓α)`, which is rejected.
pub fn spectrum_derivative_acsch_asech<F: Scalar>(params: PulseParams<F>, f: F) -> Result<F> {
    let alpha = params.alpha();
    if alpha == F::zero() {
        return Err(domain("derivative requires a nonzero roll-off"));
    }
    let a = f.abs();
    let (lo, hi) = params.band_edges();
    if a == lo || a == hi {
        return Err(domain(format!("S' diverges at transition point f = {f}")));
    }
    if a < lo || a > hi {
        return Ok(F::zero());
    }
    let b = params.nyquist();
    let width = lit::<F>(2.0) * alpha * b;
    let c = if a <= b {
        width / (a - lo)
    } else {
        width / (a - hi)
    };
    let c = c.abs();
    let gamma = eval_g(PulseId::AcschAsech, lit::<F>(0.5));
    let ac = acosh(c);
    let denom = lit::<F>(2.0)
        * width
        * gamma
        * ac
        * (F::one() + ac * ac).sqrt()
        * (c * c - F::one()).sqrt();
    let slope = -params.symbol_period() * c * c / denom;
    Ok(if f.is_sign_negative() { -slope } else { slope })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64) -> PulseParams<f64> {
        PulseParams::with_alpha(alpha).unwrap()
    }

    #[test]
    fn gamma_constants() {
        // acsch(ln ½) = −asinh(1/ln 2)
        let g = gamma::<f64>(PulseId::AcschLog).unwrap().value();
        assert!((g + (1.0 / std::f64::consts::LN_2).asinh()).abs() < 1e-15);
        assert_eq!((g * 100.0).round() / 100.0, -1.16);
        let g = gamma::<f64>(PulseId::AcothAcsch).unwrap().value();
        assert!((g - 0.853_119_467_441_223_5).abs() < 1e-14);
        let g = gamma::<f64>(PulseId::AcschAsech).unwrap().value();
        assert!((g - 0.700_591_062_324_487_6).abs() < 1e-14);
        assert!(matches!(
            gamma::<f64>(PulseId::RaisedCosine),
            Err(Error::UnsupportedPulse(PulseId::RaisedCosine))
        ));
    }

    #[test]
    fn gamma_cached_is_fresh_evaluation() {
        for id in PulseId::COMPOSITES {
            let cached = Pulse::new(id, p(0.35)).gamma().unwrap();
            let fresh = composite_g(id, 0.5f64).unwrap();
            assert_eq!(cached.to_bits(), fresh.to_bits(), "{id}");
            assert!(cached.is_finite() && cached != 0.0);
        }
    }

    #[test]
    fn g_vanishes_at_zero_and_is_continuous_there() {
        for id in PulseId::COMPOSITES {
            assert_eq!(composite_g(id, 0.0f64).unwrap(), 0.0);
            let tiny = composite_g(id, 1e-300f64).unwrap();
            assert!(tiny.is_finite() && tiny.abs() < 0.01, "{id}: {tiny}");
        }
    }

    #[test]
    fn g_argument_errors() {
        assert!(matches!(
            composite_g(PulseId::AcschLog, -1e-3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            composite_g(PulseId::AcschLog, 0.5001),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            composite_g(PulseId::AcschLog, f64::NAN),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            composite_g(PulseId::RaisedCosine, 0.25),
            Err(Error::UnsupportedPulse(_))
        ));
    }

    #[test]
    fn params_validation() {
        assert!(PulseParams::new(-0.01, 1.0).is_err());
        assert!(PulseParams::new(1.01, 1.0).is_err());
        assert!(PulseParams::new(0.3, 0.0).is_err());
        assert!(PulseParams::new(0.0, 1.0).is_ok());
        assert!(PulseParams::new(1.0, 1.0).is_ok());
        let q = PulseParams::new(0.35, 2e-6).unwrap();
        assert_eq!(q.nyquist() * 2.0 * q.symbol_period(), 1.0);
    }

    #[test]
    fn spectrum_examples() {
        let s = Pulse::new(PulseId::AcschAsech, p(0.35));
        assert_eq!(s.spectrum(0.0), 1.0);
        assert_eq!(s.spectrum(0.5), 0.5);
        let s = Pulse::new(PulseId::AcothAcsch, p(0.35));
        assert_eq!(s.spectrum(0.5 * 1.35), 0.0);
        let s = Pulse::new(PulseId::AcschLog, p(0.35));
        assert!((s.spectrum(0.2) + s.spectrum(0.8) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_rolloff_is_rectangular() {
        for id in PulseId::ALL {
            let s = Pulse::new(id, p(0.0));
            assert_eq!(s.spectrum(0.3), 1.0);
            assert_eq!(s.spectrum(0.5), 0.5);
            assert_eq!(s.spectrum(-0.5), 0.5);
            assert_eq!(s.spectrum(0.50001), 0.0);
        }
    }

    #[test]
    fn full_rolloff_is_accepted() {
        for id in PulseId::ALL {
            let s = Pulse::new(id, p(1.0));
            assert_eq!(s.spectrum(0.0), 1.0);
            assert_eq!(s.spectrum(0.5), 0.5);
            assert_eq!(s.spectrum(1.0), 0.0);
            assert!((s.spectrum(0.25) + s.spectrum(0.75) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn raised_cosine_closed_form() {
        let s = Pulse::new(PulseId::RaisedCosine, p(0.5));
        // midpoint of the lower half of the transition: cos(π/4)
        let f = 0.25 + 0.125;
        let expect = 0.5 * (1.0 + std::f64::consts::FRAC_PI_4.cos());
        assert!((s.spectrum(f) - expect).abs() < 1e-15);
    }

    #[test]
    fn parse_names() {
        for id in PulseId::ALL {
            assert_eq!(id.name().parse::<PulseId>().unwrap(), id);
            assert_eq!(id.cli_name().parse::<PulseId>().unwrap(), id);
        }
        let err = "sinc".parse::<PulseId>().unwrap_err().to_string();
        assert!(err.contains("acsch-asech") && err.contains("rc"));
    }

    #[test]
    fn derivative_zero_outside_transition_band() {
        let q = p(0.35);
        assert_eq!(spectrum_derivative_acsch_asech(q, 0.1).unwrap(), 0.0);
        assert_eq!(
            spectrum_derivative_acsch_asech(q, 1.5 * 0.675).unwrap(),
            0.0
        );
        assert!(spectrum_derivative_acsch_asech(q, 0.325).is_err());
        assert!(spectrum_derivative_acsch_asech(q, -0.675).is_err());
        assert!(spectrum_derivative_acsch_asech(p(0.0), 0.3).is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let q = p(0.35);
        let s = Pulse::new(PulseId::AcschAsech, q);
        let b = q.nyquist();
        let h = 1e-6 * b;
        for &x in &[0.33, 0.4, 0.5, 0.6, 0.67, -0.45] {
            let fd = (s.spectrum(x + h) - s.spectrum(x - h)) / (2.0 * h);
            let an = spectrum_derivative_acsch_asech(q, x).unwrap();
            assert!(((an - fd) / fd).abs() < 1e-4, "f={x}: {an} vs {fd}");
        }
    }

    #[test]
    fn single_precision_instantiation() {
        let g = gamma::<f32>(PulseId::AcschAsech).unwrap().value();
        assert!((g - 0.700_591).abs() < 1e-5);
        let s = Pulse::new(
            PulseId::AcschLog,
            PulseParams::<f32>::with_alpha(0.35).unwrap(),
        );
        assert!((s.spectrum(0.4f32) + s.spectrum(0.6f32) - 1.0).abs() < 1e-6);
    }
}
