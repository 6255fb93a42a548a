//! Bit error probability under a deterministic timing offset and AWGN.
//!
//! The decision variable for a transmitted `+1` is
//! `g₀ + Σ_{k≠0} b_k g_k + n` with `g_k = s(τ + kT)`, independent
//! equiprobable `b_k = ±1` and `n ~ N(0, σ²)`. Its error probability is
//! evaluated by the characteristic-function Fourier series
//!
//! ```text
//! Pe = ½ − (2/π) Σ_{j=1}^{N_M} e^{−(mω₀σ)²/2} · sin(mω₀g₀)/m · Π_{k≠0} cos(mω₀g_k),   m = 2j − 1
//! ```
//!
//! with `ω₀ = π/D` and `D` a half-range enclosing all ISI plus a noise guard.
//! A Monte Carlo estimator is provided as an independent check.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{config, domain, Result};
use crate::pulse::{Pulse, PulseId, PulseParams};
use crate::scalar::{from_usize, lit, Scalar};
use crate::spectral::{isi_samples, ImpulseResponse, QuadratureConfig};

/// Relative size of the last series term below which a result is accepted.
pub const CONVERGENCE_RATIO: f64 = 1e-3;

/// Smallest Monte Carlo run accepted.
pub const MIN_TRIALS: u64 = 100_000;

const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerConfig<F> {
    /// Amplitude SNR at the sampler: `σ = 10^(−snr_db/20)` for a unit peak.
    pub snr_db: F,
    pub n1: i64,
    pub n2: i64,
    /// Number of nonzero (odd-harmonic) series terms.
    pub nm: usize,
    pub range_guard_sigmas: F,
    pub tau_over_t: F,
}

impl<F: Scalar> Default for BerConfig<F> {
    fn default() -> Self {
        Self {
            snr_db: lit(15.0),
            n1: -100,
            n2: 100,
            nm: 23,
            range_guard_sigmas: lit(8.0),
            tau_over_t: F::zero(),
        }
    }
}

impl<F: Scalar> BerConfig<F> {
    pub fn with_tau(self, tau_over_t: F) -> Self {
        Self { tau_over_t, ..self }
    }

    pub fn with_snr_db(self, snr_db: F) -> Self {
        Self { snr_db, ..self }
    }

    pub fn noise_sigma(&self) -> F {
        lit::<F>(10.0).powf(-self.snr_db / lit(20.0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n1 > -1 || self.n2 < 1 {
            return Err(config(format!(
                "symbol bounds [{}, {}] must satisfy n1 <= -1 and n2 >= 1",
                self.n1, self.n2
            )));
        }
        if self.nm < 1 {
            return Err(config("nm must be at least 1"));
        }
        if !(self.tau_over_t.abs() < lit(0.5)) {
            return Err(domain(format!(
                "timing offset {} must satisfy |tau/T| < 1/2",
                self.tau_over_t
            )));
        }
        if !self.snr_db.is_finite() {
            return Err(config("snr_db must be finite"));
        }
        if !(self.range_guard_sigmas >= F::zero()) {
            return Err(config("range_guard_sigmas must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerResult<F> {
    pub pe: F,
    /// Contribution of the last series term to `Pe`.
    pub last_term_magnitude: F,
    /// Upper bound on the sum of all omitted terms.
    pub tail_bound: F,
    /// Whether both `last_term_magnitude` and `tail_bound` are below `1e-3 · pe`.
    pub converged: bool,
    pub config: BerConfig<F>,
}

/// Characteristic-function series evaluation of the error probability.
pub fn ber_series<F: Scalar>(
    response: &ImpulseResponse<F>,
    cfg: &BerConfig<F>,
) -> Result<BerResult<F>> {
    cfg.validate()?;
    let tau = cfg.tau_over_t * response.symbol_period();
    let samples = isi_samples(response, tau, cfg.n1, cfg.n2)?;
    let g0 = samples.get(0).expect("range contains 0");
    // Sorted magnitudes: cos is even, and a canonical product order makes
    // Pe(τ) and Pe(−τ) bitwise equal.
    let mut isi: Vec<F> = samples.interferers().map(|(_, g)| g.abs()).collect();
    isi.sort_by(|a, b| a.partial_cmp(b).expect("finite ISI samples"));

    let sigma = cfg.noise_sigma();
    let half_range = isi.iter().fold(g0, |acc, &g| acc + g) + cfg.range_guard_sigmas * sigma;
    if !(half_range > F::zero()) {
        return Err(domain(format!(
            "decision half-range {half_range} is not positive"
        )));
    }
    let omega = F::PI() / half_range;
    let half = lit::<F>(0.5);

    let mut sum = F::zero();
    let mut last = F::zero();
    for j in 1..=cfg.nm {
        let m = from_usize::<F>(2 * j - 1);
        let mw = m * omega;
        let damping = (-(mw * sigma).powi(2) * half).exp();
        let product = isi.iter().fold(F::one(), |acc, &g| acc * (mw * g).cos());
        last = damping * (mw * g0).sin() / m * product;
        sum = sum + last;
    }
    let scale = lit::<F>(2.0) / F::PI();
    let pe = (half - scale * sum).max(F::zero()).min(half);
    let last_term_magnitude = (scale * last).abs();
    let tail_bound = scale * omitted_terms_bound(from_usize(2 * cfg.nm + 1), omega * sigma);
    let limit = lit::<F>(CONVERGENCE_RATIO) * pe;
    Ok(BerResult {
        pe,
        last_term_magnitude,
        tail_bound,
        converged: last_term_magnitude < limit && tail_bound < limit,
        config: *cfg,
    })
}

/// Bounds `Σ_{m = M, M+2, …} e^{−a m²}/m` with `a = (ω₀σ)²/2`, using
/// `m² − M² ≥ 4M·k` for `m = M + 2k`. The ISI cosines and `sin(mω₀g₀)` are
/// bounded by one.
fn omitted_terms_bound<F: Scalar>(first: F, omega_sigma: F) -> F {
    let a = omega_sigma * omega_sigma * lit(0.5);
    let ratio = (-lit::<F>(4.0) * a * first).exp();
    if ratio >= F::one() {
        return F::infinity();
    }
    (-a * first * first).exp() / (first * (F::one() - ratio))
}

/// Monte Carlo error-rate estimate with a 95 % Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub pe: f64,
    pub errors: u64,
    pub trials: u64,
    pub half_width: f64,
    pub lower: f64,
    pub upper: f64,
}

impl MonteCarloEstimate {
    fn from_counts(errors: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = errors as f64 / n;
        let z2 = Z_95 * Z_95;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half_width = Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        Self {
            pe: p,
            errors,
            trials,
            half_width,
            lower: (center - half_width).max(0.0),
            upper: center + half_width,
        }
    }

    /// Whether `value` lies within `multiple` half-widths of the estimate.
    pub fn agrees_with(&self, value: f64, multiple: f64) -> bool {
        (value - self.pe).abs() <= multiple * self.half_width
    }
}

/// Symbols per lookup table in the Monte Carlo inner loop.
const CHUNK: usize = 8;

/// Simulates `trials` decisions for a transmitted `+1`.
///
/// Interferer signs come from the bits of a ChaCha8 stream, one byte per
/// group of eight interferers looked up in a table of partial sums; the
/// result is reproducible bit-for-bit from `seed`.
pub fn ber_monte_carlo<F>(
    response: &ImpulseResponse<F>,
    cfg: &BerConfig<F>,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate>
where
    F: Scalar,
    StandardNormal: Distribution<F>,
{
    cfg.validate()?;
    if trials < MIN_TRIALS {
        return Err(config(format!("at least {MIN_TRIALS} trials required")));
    }
    let tau = cfg.tau_over_t * response.symbol_period();
    let samples = isi_samples(response, tau, cfg.n1, cfg.n2)?;
    let g0 = samples.get(0).expect("range contains 0");
    let isi: Vec<F> = samples.interferers().map(|(_, g)| g).collect();

    let tables: Vec<Vec<F>> = isi
        .chunks(CHUNK)
        .map(|chunk| {
            (0..1usize << chunk.len())
                .map(|pattern| {
                    chunk.iter().enumerate().fold(F::zero(), |acc, (i, &g)| {
                        if pattern >> i & 1 == 1 {
                            acc + g
                        } else {
                            acc - g
                        }
                    })
                })
                .collect()
        })
        .collect();

    let sigma = cfg.noise_sigma();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errors = 0u64;
    for _ in 0..trials {
        let mut bits = 0u64;
        let mut available = 0u32;
        let mut interference = F::zero();
        for table in &tables {
            if available < CHUNK as u32 {
                bits = rng.next_u64();
                available = 64;
            }
            let mask = table.len() - 1;
            interference = interference + table[(bits as usize) & mask];
            bits >>= CHUNK;
            available -= CHUNK as u32;
        }
        let noise: F = StandardNormal.sample(&mut rng);
        if g0 + interference + sigma * noise <= F::zero() {
            errors += 1;
        }
    }
    Ok(MonteCarloEstimate::from_counts(errors, trials))
}

/// One `(pulse, α, τ/T)` cell of a BER table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BerCell<F> {
    pub pulse: PulseId,
    pub alpha: F,
    pub tau_over_t: F,
    pub result: std::result::Result<BerResult<F>, String>,
    /// Lowest `Pe` among the pulses of this `(α, τ)` column.
    pub best: bool,
    pub monte_carlo: Option<std::result::Result<MonteCarloEstimate, String>>,
}

/// Cross product of pulses × roll-offs × offsets.
///
/// Cells are stored roll-off major, then offset, then pulse, in the order
/// the grids were given.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BerTable<F> {
    pub pulses: Vec<PulseId>,
    pub alphas: Vec<F>,
    pub taus: Vec<F>,
    pub cells: Vec<BerCell<F>>,
}

impl<F: Scalar> BerTable<F> {
    pub fn cell(
        &self,
        pulse: PulseId,
        alpha_index: usize,
        tau_index: usize,
    ) -> Option<&BerCell<F>> {
        let p = self.pulses.iter().position(|&id| id == pulse)?;
        let idx = (alpha_index * self.taus.len() + tau_index) * self.pulses.len() + p;
        self.cells.get(idx)
    }

    /// Number of cells that produced a result.
    pub fn successes(&self) -> usize {
        self.cells.iter().filter(|c| c.result.is_ok()).count()
    }
}

/// Evaluates [`ber_series`] over a grid and flags the best pulse per column.
///
/// Offsets are evaluated at `|τ|`; the error probability is even in `τ`.
pub fn ber_table<F: Scalar>(
    pulses: &[PulseId],
    alphas: &[F],
    taus: &[F],
    cfg: &BerConfig<F>,
    quadrature: QuadratureConfig,
    symbol_period: F,
) -> Result<BerTable<F>>
where
    StandardNormal: Distribution<F>,
{
    build_table(pulses, alphas, taus, cfg, quadrature, symbol_period, None)
}

/// As [`ber_table`], adding a Monte Carlo estimate to every cell. Cell `i`
/// (in storage order) is seeded with `seed + i`.
#[allow(clippy::too_many_arguments)]
pub fn ber_table_monte_carlo<F: Scalar>(
    pulses: &[PulseId],
    alphas: &[F],
    taus: &[F],
    cfg: &BerConfig<F>,
    quadrature: QuadratureConfig,
    symbol_period: F,
    trials: u64,
    seed: u64,
) -> Result<BerTable<F>>
where
    StandardNormal: Distribution<F>,
{
    build_table(
        pulses,
        alphas,
        taus,
        cfg,
        quadrature,
        symbol_period,
        Some((trials, seed)),
    )
}

#[allow(clippy::too_many_arguments)]
fn build_table<F: Scalar>(
    pulses: &[PulseId],
    alphas: &[F],
    taus: &[F],
    cfg: &BerConfig<F>,
    quadrature: QuadratureConfig,
    symbol_period: F,
    monte_carlo: Option<(u64, u64)>,
) -> Result<BerTable<F>>
where
    StandardNormal: Distribution<F>,
{
    if pulses.is_empty() || alphas.is_empty() || taus.is_empty() {
        return Err(config(
            "BER table needs at least one pulse, roll-off and offset",
        ));
    }
    quadrature.validate()?;

    let mut cells = Vec::with_capacity(pulses.len() * alphas.len() * taus.len());
    for &alpha in alphas {
        let responses: Vec<Result<ImpulseResponse<F>>> = pulses
            .iter()
            .map(|&id| {
                let params = PulseParams::new(alpha, symbol_period)?;
                ImpulseResponse::new(Pulse::new(id, params), quadrature)
            })
            .collect();
        for &tau in taus {
            let cell_cfg = cfg.with_tau(tau.abs());
            for (&id, response) in pulses.iter().zip(&responses) {
                let index = cells.len() as u64;
                let result = response
                    .as_ref()
                    .map_err(|e| e.clone())
                    .and_then(|r| ber_series(r, &cell_cfg))
                    .map_err(|e| e.to_string());
                let mc = monte_carlo.map(|(trials, seed)| {
                    response
                        .as_ref()
                        .map_err(|e| e.clone())
                        .and_then(|r| {
                            ber_monte_carlo(r, &cell_cfg, trials, seed.wrapping_add(index))
                        })
                        .map_err(|e| e.to_string())
                });
                cells.push(BerCell {
                    pulse: id,
                    alpha,
                    tau_over_t: tau,
                    result,
                    best: false,
                    monte_carlo: mc,
                });
            }
        }
    }

    for column in cells.chunks_mut(pulses.len()) {
        let best = column
            .iter()
            .filter_map(|c| c.result.as_ref().ok().map(|r| r.pe))
            .fold(None, |acc: Option<F>, pe| {
                Some(acc.map_or(pe, |a| a.min(pe)))
            });
        if let Some(best) = best {
            for c in column.iter_mut() {
                c.best = matches!(&c.result, Ok(r) if r.pe == best);
            }
        }
    }

    Ok(BerTable {
        pulses: pulses.to_vec(),
        alphas: alphas.to_vec(),
        taus: taus.to_vec(),
        cells,
    })
}
