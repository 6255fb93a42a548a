//! Eye-diagram boundaries for binary antipodal signalling.
//!
//! For a '1' sampled at phase `t`, the worst case over equiprobable ±1
//! interferers is
//!
//! ```text
//! D(t) = Σ_{1≤|k|≤K} |s(t + kT)|,   inner(t) = s(t) − D(t),   outer(t) = s(t) + D(t)
//! ```
//!
//! The sum runs over interferers whose sample falls inside the pulse span
//! `|t + kT| ≤ span·T` when a span is configured. The impulse response of the
//! composite pulses decays like `1/(t ln t)`, so without a span `D(t)` keeps
//! growing with `K`.

use serde::Serialize;

use crate::error::{config, Result};
use crate::scalar::{from_i64, from_usize, lit, Scalar};
use crate::spectral::ImpulseResponse;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EyeConfig<F> {
    /// Interferers considered on each side of the sampled symbol.
    pub truncation_k: usize,
    /// Phase grid intervals over one symbol; the grid has `phase_points + 1`
    /// samples from `−T/2` to `T/2`.
    pub phase_points: usize,
    /// Half-width of the pulse support in symbols, `None` for untruncated.
    pub pulse_span: Option<F>,
    #[serde(skip)]
    diagnostic: bool,
}

impl<F: Scalar> Default for EyeConfig<F> {
    fn default() -> Self {
        Self {
            truncation_k: 256,
            phase_points: 512,
            pulse_span: Some(lit(4.0)),
            diagnostic: false,
        }
    }
}

impl<F: Scalar> EyeConfig<F> {
    pub fn new(truncation_k: usize, phase_points: usize, pulse_span: Option<F>) -> Self {
        Self {
            truncation_k,
            phase_points,
            pulse_span,
            diagnostic: false,
        }
    }

    /// Default configuration with an arbitrary (possibly tiny) interferer
    /// count, for oracle checks such as `K = 0` or exhaustive enumeration.
    pub fn diagnostic(truncation_k: usize) -> Self {
        Self {
            truncation_k,
            diagnostic: true,
            ..Self::default()
        }
    }

    pub fn is_diagnostic(&self) -> bool {
        self.diagnostic
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation_k < 32 && !self.diagnostic {
            return Err(config(format!(
                "truncation_k = {} is below the minimum of 32",
                self.truncation_k
            )));
        }
        if self.phase_points < 64 || !self.phase_points.is_multiple_of(2) {
            return Err(config(format!(
                "phase_points = {} must be even and at least 64",
                self.phase_points
            )));
        }
        if let Some(span) = self.pulse_span {
            if !(span > F::zero()) || !span.is_finite() {
                return Err(config(format!("pulse span {span} must be positive")));
            }
        }
        Ok(())
    }
}

/// Boundary curves and scalar metrics of one eye diagram.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EyeReport<F> {
    /// Sampling phase `t/T` in `[−½, ½]`.
    pub phase: Vec<F>,
    /// `s(t)` at each phase.
    pub signal: Vec<F>,
    pub inner: Vec<F>,
    pub outer: Vec<F>,
    pub eye_width: F,
    pub max_distortion: F,
}

/// Computes the inner/outer boundaries and both scalar metrics.
pub fn eye_boundaries<F: Scalar>(
    response: &ImpulseResponse<F>,
    cfg: &EyeConfig<F>,
) -> Result<EyeReport<F>> {
    cfg.validate()?;
    let period = response.symbol_period();
    let points = cfg.phase_points;
    let half = from_usize::<F>(points / 2);
    let count = from_usize::<F>(points);

    let mut report = EyeReport {
        phase: Vec::with_capacity(points + 1),
        signal: Vec::with_capacity(points + 1),
        inner: Vec::with_capacity(points + 1),
        outer: Vec::with_capacity(points + 1),
        eye_width: F::zero(),
        max_distortion: F::zero(),
    };
    for i in 0..=points {
        let x = (from_usize::<F>(i) - half) / count;
        let s0 = response.at(x * period);
        let mut distortion = F::zero();
        for k in 1..=cfg.truncation_k {
            let kf = from_i64::<F>(k as i64);
            if let Some(span) = cfg.pulse_span {
                if kf - x.abs() > span {
                    break;
                }
            }
            for offset in [x + kf, x - kf] {
                if cfg.pulse_span.is_none_or(|span| offset.abs() <= span) {
                    distortion = distortion + response.at(offset * period).abs();
                }
            }
        }
        report.phase.push(x);
        report.signal.push(s0);
        report.inner.push(s0 - distortion);
        report.outer.push(s0 + distortion);
    }
    report.eye_width = eye_width(&report);
    report.max_distortion = max_distortion(&report);
    Ok(report)
}

/// Length, in `t/T`, of the largest interval around phase 0 on which the
/// inner boundary stays positive. Crossings are located by linear
/// interpolation; a closed eye gives 0.
pub fn eye_width<F: Scalar>(report: &EyeReport<F>) -> F {
    let inner = &report.inner;
    let phase = &report.phase;
    if inner.is_empty() {
        return F::zero();
    }
    let center = phase
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite phase"))
        .map(|(i, _)| i)
        .expect("non-empty phase grid");
    if !(inner[center] > F::zero()) {
        return F::zero();
    }
    let crossing = |open: usize, closed: usize| {
        let (a, b) = (inner[open], inner[closed]);
        phase[open] + (phase[closed] - phase[open]) * a / (a - b)
    };

    let mut right = center;
    while right + 1 < inner.len() && inner[right + 1] > F::zero() {
        right += 1;
    }
    let right_edge = if right + 1 < inner.len() {
        crossing(right, right + 1)
    } else {
        phase[right]
    };

    let mut left = center;
    while left > 0 && inner[left - 1] > F::zero() {
        left -= 1;
    }
    let left_edge = if left > 0 {
        crossing(left, left - 1)
    } else {
        phase[left]
    };
    right_edge - left_edge
}

/// Peak of the outer boundary over the phase window.
pub fn max_distortion<F: Scalar>(report: &EyeReport<F>) -> F {
    report.outer.iter().copied().fold(F::neg_infinity(), F::max)
}
