//! Numerical inverse transform of the frequency responses.
//!
//! The impulse response is `s(t) = 2 ∫₀^{B(1+α)} S(f) cos(2πft) df`,
//! integrated separately over each nonzero piece of the spectrum so that the
//! band edges, where `S'` diverges, always fall on panel boundaries. The
//! quadrature is folded into a fixed list of `(fᵢ, cᵢ)` pairs once per pulse,
//! after which every evaluation is a fixed-order cosine sum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Error, Result};
use crate::pulse::{spectrum_derivative_acsch_asech, Pulse, PulseId, PulseParams};
use crate::quadrature::{self, Singular, PANEL_ORDER};
use crate::scalar::{from_i64, from_usize, lit, Scalar};

/// Largest sample count [`impulse_grid`] will allocate.
pub const MAX_GRID_POINTS: usize = 1 << 22;

/// Minimum number of envelope extrema accepted by [`decay_exponent`].
pub const MIN_EXTREMA: usize = 8;

/// Samples with magnitude below this are treated as exact zeros when
/// locating lobes; Nyquist zero crossings evaluate to rounding noise.
const ZERO_FLOOR: f64 = 1e-10;

/// Samples per symbol used when scanning for envelope extrema.
const DECAY_SAMPLES_PER_SYMBOL: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureScheme {
    CompositeTrapezoid,
    GaussLegendre,
}

impl fmt::Display for QuadratureScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadratureScheme::CompositeTrapezoid => "composite_trapezoid",
            QuadratureScheme::GaussLegendre => "gauss_legendre",
        })
    }
}

impl FromStr for QuadratureScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "composite_trapezoid" | "trapezoid" => Ok(QuadratureScheme::CompositeTrapezoid),
            "gauss_legendre" => Ok(QuadratureScheme::GaussLegendre),
            other => Err(config(format!(
                "unknown quadrature scheme '{other}' (valid: gauss-legendre, composite-trapezoid)"
            ))),
        }
    }
}

/// Quadrature settings for the inverse transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Nodes per spectrum piece. Gauss–Legendre adds a fixed number of graded
    /// nodes next to each band edge on top of this.
    pub nodes_per_segment: usize,
    pub scheme: QuadratureScheme,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes_per_segment: 4096,
            scheme: QuadratureScheme::GaussLegendre,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_segment < 64 {
            return Err(config(format!(
                "nodes_per_segment = {} is below the minimum of 64",
                self.nodes_per_segment
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Evaluator<F> {
    ClosedForm,
    Quadrature { freqs: Vec<F>, coeffs: Vec<F> },
}

/// Time-domain response of one pulse.
///
/// The raised cosine is evaluated in closed form unless the quadrature path
/// is requested explicitly with [`ImpulseResponse::with_quadrature`].
#[derive(Debug, Clone)]
pub struct ImpulseResponse<F> {
    pulse: Pulse<F>,
    config: QuadratureConfig,
    eval: Evaluator<F>,
}

impl<F: Scalar> ImpulseResponse<F> {
    pub fn new(pulse: Pulse<F>, config: QuadratureConfig) -> Result<Self> {
        if pulse.id() == PulseId::RaisedCosine {
            config.validate()?;
            Ok(Self {
                pulse,
                config,
                eval: Evaluator::ClosedForm,
            })
        } else {
            Self::with_quadrature(pulse, config)
        }
    }

    /// Builds the response by quadrature regardless of pulse type.
    pub fn with_quadrature(pulse: Pulse<F>, config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        let rule = quadrature::reference_rule(PANEL_ORDER);
        let composite = pulse.id().is_composite();
        let segments = pulse.segments();
        let last = segments.len() - 1;
        let mut freqs = Vec::new();
        let mut coeffs = Vec::new();
        for (i, &(lo, hi)) in segments.iter().enumerate() {
            let singular = match (composite, segments.len(), i) {
                (true, 3, 1) => Singular::Start,
                (true, 3, 2) => Singular::End,
                _ => Singular::None,
            };
            let nodes = match config.scheme {
                QuadratureScheme::GaussLegendre => {
                    quadrature::gauss_legendre(lo, hi, config.nodes_per_segment, singular, &rule)
                }
                QuadratureScheme::CompositeTrapezoid => {
                    quadrature::trapezoid(lo, hi, config.nodes_per_segment)
                }
            };
            for (f, w) in nodes {
                // the zero-valued stopband edge contributes nothing
                if i == last && f == hi && pulse.spectrum(f) == F::zero() {
                    continue;
                }
                freqs.push(f);
                coeffs.push(lit::<F>(2.0) * w * pulse.spectrum(f));
            }
        }
        Ok(Self {
            pulse,
            config,
            eval: Evaluator::Quadrature { freqs, coeffs },
        })
    }

    /// Convenience constructor from an id and parameters.
    pub fn build(id: PulseId, params: PulseParams<F>, config: QuadratureConfig) -> Result<Self> {
        Self::new(Pulse::new(id, params), config)
    }

    pub fn pulse(&self) -> &Pulse<F> {
        &self.pulse
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    pub fn symbol_period(&self) -> F {
        self.pulse.params().symbol_period()
    }

    /// Number of quadrature nodes, zero for the closed form.
    pub fn node_count(&self) -> usize {
        match &self.eval {
            Evaluator::ClosedForm => 0,
            Evaluator::Quadrature { freqs, .. } => freqs.len(),
        }
    }

    /// `s(t)`, normalised so that `s(0) = 1`.
    pub fn at(&self, t: F) -> F {
        match &self.eval {
            Evaluator::ClosedForm => {
                raised_cosine_impulse(self.pulse.params().alpha(), t / self.symbol_period())
            }
            Evaluator::Quadrature { freqs, coeffs } => {
                let w = lit::<F>(2.0) * F::PI() * t;
                freqs
                    .iter()
                    .zip(coeffs)
                    .fold(F::zero(), |acc, (&f, &c)| acc + c * (w * f).cos())
            }
        }
    }
}

/// Raised-cosine impulse response at normalised time `x = t/T`.
///
/// Written as `sinc(x) · sin(πd/2) / (d(2 − d))` with `d = 1 − |2αx|`, which
/// equals `sinc(x)·cos(παx)/(1 − (2αx)²)` and stays well conditioned at
/// `|2αx| = 1`.
pub fn raised_cosine_impulse<F: Scalar>(alpha: F, x: F) -> F {
    let pi = F::PI();
    let sinc = if x == F::zero() {
        F::one()
    } else {
        (pi * x).sin() / (pi * x)
    };
    let d = F::one() - (lit::<F>(2.0) * alpha * x).abs();
    let shape = if d == F::zero() {
        pi / lit(4.0)
    } else {
        (pi * d / lit(2.0)).sin() / (d * (lit::<F>(2.0) - d))
    };
    sinc * shape
}

/// `s(t)` for a single pulse; see [`ImpulseResponse`].
pub fn impulse_at<F: Scalar>(
    id: PulseId,
    params: PulseParams<F>,
    config: QuadratureConfig,
    t: F,
) -> Result<F> {
    Ok(ImpulseResponse::build(id, params, config)?.at(t))
}

/// Uniformly sampled impulse response centred on `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpulseGrid<F> {
    pub dt: F,
    pub symbol_period: F,
    pub samples: Vec<F>,
}

impl<F: Scalar> ImpulseGrid<F> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn center(&self) -> usize {
        self.samples.len() / 2
    }

    pub fn time(&self, i: usize) -> F {
        from_i64::<F>(i as i64 - self.center() as i64) * self.dt
    }

    pub fn times(&self) -> Vec<F> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }
}

/// Samples `s(t)` on `[−span·T, span·T]` with `samples_per_symbol` points
/// per symbol.
pub fn impulse_grid<F: Scalar>(
    response: &ImpulseResponse<F>,
    span_symbols: usize,
    samples_per_symbol: usize,
) -> Result<ImpulseGrid<F>> {
    if span_symbols < 1 {
        return Err(config("span_symbols must be at least 1"));
    }
    if samples_per_symbol < 2 {
        return Err(config("samples_per_symbol must be at least 2"));
    }
    let half = span_symbols
        .checked_mul(samples_per_symbol)
        .filter(|&h| h < MAX_GRID_POINTS / 2)
        .ok_or_else(|| {
            Error::Resource(format!(
                "grid of {span_symbols} symbols x {samples_per_symbol} samples exceeds {MAX_GRID_POINTS} points"
            ))
        })?;
    let period = response.symbol_period();
    let dt = period / from_usize(samples_per_symbol);
    let mut grid = ImpulseGrid {
        dt,
        symbol_period: period,
        samples: Vec::with_capacity(2 * half + 1),
    };
    for i in 0..(2 * half + 1) {
        let t = from_i64::<F>(i as i64 - half as i64) * dt;
        grid.samples.push(response.at(t));
    }
    Ok(grid)
}

/// Interfering samples `g_k = s(τ + kT)` for `k_min ≤ k ≤ k_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsiSamples<F> {
    pub tau: F,
    pub k_min: i64,
    pub k_max: i64,
    pub g: Vec<F>,
}

impl<F: Scalar> IsiSamples<F> {
    /// `g_k`, or `None` outside the sampled range.
    pub fn get(&self, k: i64) -> Option<F> {
        if k < self.k_min || k > self.k_max {
            return None;
        }
        self.g.get((k - self.k_min) as usize).copied()
    }

    /// `(k, g_k)` pairs with `k ≠ 0`, in ascending `k`.
    pub fn interferers(&self) -> impl Iterator<Item = (i64, F)> + '_ {
        (self.k_min..=self.k_max)
            .zip(self.g.iter().copied())
            .filter(|&(k, _)| k != 0)
    }
}

pub fn isi_samples<F: Scalar>(
    response: &ImpulseResponse<F>,
    tau: F,
    k_min: i64,
    k_max: i64,
) -> Result<IsiSamples<F>> {
    if k_min > 0 || k_max < 0 {
        return Err(config(format!(
            "symbol range [{k_min}, {k_max}] must contain 0"
        )));
    }
    if !tau.is_finite() {
        return Err(domain("timing offset must be finite"));
    }
    let count = k_max.abs_diff(k_min).saturating_add(1);
    if count > MAX_GRID_POINTS as u64 {
        return Err(Error::Resource(format!(
            "{count} symbol samples exceed {MAX_GRID_POINTS}"
        )));
    }
    let period = response.symbol_period();
    let g = (k_min..=k_max)
        .map(|k| response.at(tau + from_i64::<F>(k) * period))
        .collect();
    Ok(IsiSamples {
        tau,
        k_min,
        k_max,
        g,
    })
}

/// Fits the asymptotic decay exponent of `|s(t)|` over `[t_min, t_max]`.
///
/// The envelope is the largest sample of each lobe between consecutive zero
/// crossings; the exponent is the least-squares slope of
/// `ln|envelope|` against `ln t`.
pub fn decay_exponent<F: Scalar>(response: &ImpulseResponse<F>, t_min: F, t_max: F) -> Result<F> {
    let period = response.symbol_period();
    if !(t_min >= lit::<F>(5.0) * period) {
        return Err(config("t_min must be at least 5 symbol periods"));
    }
    if !(t_max >= lit::<F>(2.0) * t_min) {
        return Err(config("t_max must be at least 2 t_min"));
    }
    let dt = period / from_usize(DECAY_SAMPLES_PER_SYMBOL);
    let steps = ((t_max - t_min) / dt)
        .to_usize()
        .ok_or_else(|| config("decay range too large"))?;
    let floor = lit::<F>(ZERO_FLOOR);

    let mut extrema: Vec<(F, F)> = Vec::new();
    let mut sign = 0i8;
    let mut lobe: Option<(F, F)> = None;
    for i in 0..=steps {
        let t = t_min + from_usize::<F>(i) * dt;
        let s = response.at(t);
        if s.abs() < floor {
            continue;
        }
        let this = if s > F::zero() { 1 } else { -1 };
        if this != sign {
            // a crossing closes the running lobe; the first lobe is partial
            if sign != 0 {
                if let Some(peak) = lobe.take() {
                    extrema.push(peak);
                }
            }
            lobe = (sign != 0).then_some((t, s.abs()));
            sign = this;
        } else if let Some((_, peak)) = lobe {
            if s.abs() > peak {
                lobe = Some((t, s.abs()));
            }
        }
    }
    // the trailing lobe is partial and dropped

    if extrema.len() < MIN_EXTREMA {
        return Err(Error::InsufficientExtrema {
            found: extrema.len(),
            needed: MIN_EXTREMA,
        });
    }
    let n = from_usize::<F>(extrema.len());
    let (sx, sy) = extrema
        .iter()
        .fold((F::zero(), F::zero()), |(sx, sy), &(t, a)| {
            (sx + t.ln(), sy + a.ln())
        });
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = extrema
        .iter()
        .fold((F::zero(), F::zero()), |(sxy, sxx), &(t, a)| {
            let dx = t.ln() - mx;
            (sxy + dx * (a.ln() - my), sxx + dx * dx)
        });
    Ok(sxy / sxx)
}

/// `|S'|` of the acsch[asech] pulse at distance `epsilon` inside both band
/// edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceRow<F> {
    pub epsilon: F,
    /// `|S'(B(1−α) + ε)|`
    pub lower: F,
    /// `|S'(B(1+α) − ε)|`
    pub upper: F,
}

/// Tabulates the derivative blow-up at the transition points for a
/// decreasing list of offsets.
pub fn derivative_divergence_check<F: Scalar>(
    params: PulseParams<F>,
    epsilons: &[F],
) -> Result<Vec<DivergenceRow<F>>> {
    if params.alpha() == F::zero() {
        return Err(domain("derivative check requires a nonzero roll-off"));
    }
    let half_band = params.alpha() * params.nyquist();
    for pair in epsilons.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(config("epsilons must be strictly decreasing"));
        }
    }
    let (lo, hi) = params.band_edges();
    epsilons
        .iter()
        .map(|&eps| {
            if !(eps > F::zero() && eps < half_band) {
                return Err(config(format!("epsilon {eps} outside (0, αB)")));
            }
            Ok(DivergenceRow {
                epsilon: eps,
                lower: spectrum_derivative_acsch_asech(params, lo + eps)?.abs(),
                upper: spectrum_derivative_acsch_asech(params, hi - eps)?.abs(),
            })
        })
        .collect()
}

/// True when both columns grow strictly as `epsilon` shrinks.
pub fn is_strictly_diverging<F: Scalar>(rows: &[DivergenceRow<F>]) -> bool {
    rows.windows(2)
        .all(|w| w[1].lower > w[0].lower && w[1].upper > w[0].upper)
}

/// Peak of one sidelobe on the positive time axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sidelobe<F> {
    /// 1 for the lobe on `(T, 2T)`, 2 for `(2T, 3T)`, ...
    pub index: usize,
    pub t_over_t: F,
    pub value: F,
    pub magnitude: F,
}

/// Locates the first `count` sidelobes of a grid; lobe `n` spans `(nT, (n+1)T)`.
pub fn sidelobes<F: Scalar>(grid: &ImpulseGrid<F>, count: usize) -> Vec<Sidelobe<F>> {
    let mut lobes: Vec<Option<Sidelobe<F>>> = vec![None; count];
    for i in grid.center()..grid.len() {
        let x = grid.time(i) / grid.symbol_period;
        let n = match x.floor().to_usize() {
            Some(n) if n >= 1 && n <= count && x > x.floor() => n,
            _ => continue,
        };
        let v = grid.samples[i];
        let slot = &mut lobes[n - 1];
        if slot.is_none_or(|l| v.abs() > l.magnitude) {
            *slot = Some(Sidelobe {
                index: n,
                t_over_t: x,
                value: v,
                magnitude: v.abs(),
            });
        }
    }
    lobes.into_iter().flatten().collect()
}
