use std::fmt;
use std::path::Path;

use anyhow::Result;
use ihpulse::{
    ber_table, ber_table_monte_carlo, eye_boundaries, impulse_grid, sidelobes, BerConfig,
    EyeConfig, EyeReport, ImpulseResponse, PulseId, PulseParams,
};
use serde_json::{json, Value};

use crate::args::{BerArgs, EyeArgs, ImpulseArgs, SpectrumArgs};
use crate::report::{Cell, Manifest, Report, Table};

/// Bad arguments or configuration; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

/// Nothing could be computed; exit code 3.
#[derive(Debug)]
pub struct ComputeFailure(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ComputeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}
impl std::error::Error for ComputeFailure {}

fn classify(e: ihpulse::Error) -> anyhow::Error {
    match e {
        ihpulse::Error::Config(_) | ihpulse::Error::Domain(_) | ihpulse::Error::Resource(_) => {
            UsageError(e.to_string()).into()
        }
        other => ComputeFailure(other.to_string()).into(),
    }
}

fn params(alpha: f64) -> Result<PulseParams<f64>> {
    PulseParams::with_alpha(alpha).map_err(classify)
}

fn pulse_columns(first: &str, pulses: &[PulseId]) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(pulses.iter().map(|p| p.cli_name().to_string()))
        .collect()
}

pub fn spectrum(args: &SpectrumArgs, preset: Option<&Path>) -> Result<Report> {
    let p = params(args.alpha)?;
    let top = 1.0 + args.alpha;
    let n = args.points as usize;
    let mut grid: Vec<f64> = (0..n - 1)
        .map(|i| top * i as f64 / (n - 1) as f64)
        .collect();
    grid.extend([1.0 - args.alpha, 1.0, top]);
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let b = p.nyquist();
    let mut table = Table::new("spectrum", pulse_columns("f_over_b", &args.pulses));
    for &x in &grid {
        let mut row = vec![Cell::Num(x)];
        row.extend(
            args.pulses
                .iter()
                .map(|&id| Cell::Num(ihpulse::spectrum(id, p, x * b))),
        );
        table.push(row);
    }
    Ok(Report {
        manifest: Manifest::new("spectrum", serde_json::to_value(args)?, preset, json!({})),
        tables: vec![table],
    })
}

fn responses(
    pulses: &[PulseId],
    p: PulseParams<f64>,
    q: ihpulse::QuadratureConfig,
) -> Result<Vec<ImpulseResponse<f64>>> {
    pulses
        .iter()
        .map(|&id| ImpulseResponse::build(id, p, q).map_err(classify))
        .collect()
}

pub fn impulse(args: &ImpulseArgs, preset: Option<&Path>) -> Result<Report> {
    let p = params(args.alpha)?;
    let q = args.quadrature.config();
    let grids = responses(&args.pulses, p, q)?
        .iter()
        .map(|r| impulse_grid(r, args.span as usize, args.sps as usize).map_err(classify))
        .collect::<Result<Vec<_>>>()?;

    let mut samples = Table::new("impulse", pulse_columns("t_over_t", &args.pulses));
    for i in 0..grids[0].len() {
        let mut row = vec![Cell::Num(grids[0].time(i) / grids[0].symbol_period)];
        row.extend(grids.iter().map(|g| Cell::Num(g.samples[i])));
        samples.push(row);
    }

    let columns = ["pulse", "index", "t_over_t", "value", "magnitude"];
    let mut lobes = Table::new("sidelobes", columns.iter().map(|s| s.to_string()).collect());
    for (&id, grid) in args.pulses.iter().zip(&grids) {
        for lobe in sidelobes(grid, args.sidelobes as usize) {
            lobes.push(vec![
                id.cli_name().into(),
                Cell::Int(lobe.index as i64),
                lobe.t_over_t.into(),
                lobe.value.into(),
                lobe.magnitude.into(),
            ]);
        }
    }
    Ok(Report {
        manifest: Manifest::new(
            "impulse",
            serde_json::to_value(args)?,
            preset,
            json!({ "quadrature": q }),
        ),
        tables: vec![samples, lobes],
    })
}

/// Eye width and max distortion expected at α = 0.35 with the default
/// configuration, with the tolerances used to judge the calibration.
pub const EYE_TARGETS: [(PulseId, f64, f64); 5] = [
    (PulseId::AcosLog, 0.780, 1.467),
    (PulseId::AcosAsinh, 0.794, 1.475),
    (PulseId::AcschLog, 0.812, 1.460),
    (PulseId::AcothAcsch, 0.802, 1.443),
    (PulseId::AcschAsech, 0.800, 1.440),
];
pub const EYE_WIDTH_TOLERANCE: f64 = 0.02;
pub const MAX_DISTORTION_TOLERANCE: f64 = 0.03;

/// Expected orderings: widths strictly decreasing, distortions strictly increasing.
pub const EYE_WIDTH_ORDER: [PulseId; 5] = [
    PulseId::AcschLog,
    PulseId::AcothAcsch,
    PulseId::AcschAsech,
    PulseId::AcosAsinh,
    PulseId::AcosLog,
];
pub const MAX_DISTORTION_ORDER: [PulseId; 5] = [
    PulseId::AcschAsech,
    PulseId::AcothAcsch,
    PulseId::AcschLog,
    PulseId::AcosLog,
    PulseId::AcosAsinh,
];

/// Whether `metric` is strictly increasing along `order`; `None` when a
/// pulse of the chain was not computed.
pub fn chain_holds(
    order: &[PulseId],
    metric: impl Fn(PulseId) -> Option<f64>,
    increasing: bool,
) -> Option<bool> {
    let values = order
        .iter()
        .map(|&id| metric(id))
        .collect::<Option<Vec<_>>>()?;
    Some(
        values
            .windows(2)
            .all(|w| if increasing { w[0] < w[1] } else { w[0] > w[1] }),
    )
}

pub fn eye_config(args: &EyeArgs) -> EyeConfig<f64> {
    let k = args.truncation as usize;
    let span = args.pulse_span.symbols();
    if k < 32 {
        let mut cfg = EyeConfig::diagnostic(k);
        cfg.phase_points = args.phase_points as usize;
        cfg.pulse_span = span;
        cfg
    } else {
        EyeConfig::new(k, args.phase_points as usize, span)
    }
}

pub fn eye(args: &EyeArgs, preset: Option<&Path>) -> Result<Report> {
    let p = params(args.alpha)?;
    let q = args.quadrature.config();
    let cfg = eye_config(args);
    cfg.validate().map_err(classify)?;
    if cfg.is_diagnostic() {
        eprintln!(
            "note: truncation {} is below 32; running as a diagnostic",
            cfg.truncation_k
        );
    }
    let reports: Vec<EyeReport<f64>> = responses(&args.pulses, p, q)?
        .iter()
        .map(|r| eye_boundaries(r, &cfg).map_err(classify))
        .collect::<Result<_>>()?;

    let mut columns = vec!["phase".to_string()];
    for id in &args.pulses {
        for part in ["signal", "inner", "outer"] {
            columns.push(format!("{}_{part}", id.cli_name()));
        }
    }
    let mut curves = Table::new("curves", columns);
    for i in 0..reports[0].phase.len() {
        let mut row = vec![Cell::Num(reports[0].phase[i])];
        for r in &reports {
            row.extend([r.signal[i], r.inner[i], r.outer[i]].map(Cell::Num));
        }
        curves.push(row);
    }

    let calibrated = args.alpha == 0.35 && !cfg.is_diagnostic();
    let columns = [
        "pulse",
        "eye_width",
        "max_distortion",
        "target_eye_width",
        "target_max_distortion",
        "eye_width_gap",
        "max_distortion_gap",
        "within_tolerance",
    ];
    let mut metrics = Table::new("metrics", columns.iter().map(|s| s.to_string()).collect());
    for (&id, r) in args.pulses.iter().zip(&reports) {
        let target = EYE_TARGETS
            .iter()
            .find(|t| t.0 == id)
            .filter(|_| calibrated)
            .map(|&(_, w, d)| (w, d));
        let gaps = target.map(|(w, d)| (r.eye_width - w, r.max_distortion - d));
        metrics.push(vec![
            id.cli_name().into(),
            r.eye_width.into(),
            r.max_distortion.into(),
            target.map(|t| t.0).into(),
            target.map(|t| t.1).into(),
            gaps.map(|g| g.0).into(),
            gaps.map(|g| g.1).into(),
            gaps.map(|(w, d)| {
                w.abs() <= EYE_WIDTH_TOLERANCE && d.abs() <= MAX_DISTORTION_TOLERANCE
            })
            .into(),
        ]);
    }

    let reports = &reports;
    let metric = |f: fn(&EyeReport<f64>) -> f64| {
        move |id: PulseId| {
            args.pulses
                .iter()
                .position(|&p| p == id)
                .map(|i| f(&reports[i]))
        }
    };
    let calibration = if calibrated {
        json!({
            "eye_width_order_holds": chain_holds(&EYE_WIDTH_ORDER, metric(|r| r.eye_width), false),
            "max_distortion_order_holds": chain_holds(&MAX_DISTORTION_ORDER, metric(|r| r.max_distortion), true),
            "eye_width_tolerance": EYE_WIDTH_TOLERANCE,
            "max_distortion_tolerance": MAX_DISTORTION_TOLERANCE,
        })
    } else {
        Value::Null
    };

    Ok(Report {
        manifest: Manifest::new(
            "eye",
            serde_json::to_value(args)?,
            preset,
            json!({ "quadrature": q, "eye": cfg, "calibration": calibration }),
        ),
        tables: vec![metrics, curves],
    })
}

pub fn ber_config(args: &BerArgs) -> BerConfig<f64> {
    BerConfig {
        snr_db: args.snr,
        n1: args.n1,
        n2: args.n2,
        nm: args.nm as usize,
        range_guard_sigmas: args.guard,
        tau_over_t: 0.0,
    }
}

pub fn ber(args: &BerArgs, preset: Option<&Path>) -> Result<Report> {
    let cfg = ber_config(args);
    cfg.validate().map_err(classify)?;
    let q = args.quadrature.config();
    let table = match args.monte_carlo {
        Some(trials) if trials < ihpulse::ber::MIN_TRIALS => {
            return Err(UsageError(format!(
                "--monte-carlo needs at least {} trials",
                ihpulse::ber::MIN_TRIALS
            ))
            .into())
        }
        Some(trials) => ber_table_monte_carlo(
            &args.pulses,
            &args.alphas,
            &args.taus,
            &cfg,
            q,
            1.0,
            trials,
            args.seed,
        ),
        None => ber_table(&args.pulses, &args.alphas, &args.taus, &cfg, q, 1.0),
    }
    .map_err(classify)?;
    if table.successes() == 0 {
        let first = table.cells.iter().find_map(|c| c.result.as_ref().err());
        return Err(ComputeFailure(format!(
            "every BER cell failed{}",
            first.map(|e| format!(": {e}")).unwrap_or_default()
        ))
        .into());
    }

    let mut columns: Vec<String> = [
        "pulse",
        "alpha",
        "tau_over_t",
        "pe",
        "last_term_magnitude",
        "tail_bound",
        "converged",
        "best",
        "error",
    ]
    .map(String::from)
    .to_vec();
    let with_mc = args.monte_carlo.is_some();
    if with_mc {
        columns.extend(
            [
                "mc_pe",
                "mc_errors",
                "mc_trials",
                "mc_lower",
                "mc_upper",
                "mc_half_width",
                "mc_agrees",
                "mc_error",
            ]
            .map(String::from),
        );
    }
    let mut out = Table::new("ber", columns);
    for cell in &table.cells {
        let ok = cell.result.as_ref().ok();
        let mut row = vec![
            cell.pulse.cli_name().into(),
            cell.alpha.into(),
            cell.tau_over_t.into(),
            ok.map(|r| r.pe).into(),
            ok.map(|r| r.last_term_magnitude).into(),
            ok.map(|r| r.tail_bound).into(),
            ok.map(|r| r.converged).into(),
            cell.best.into(),
            cell.result.as_ref().err().map(String::as_str).into(),
        ];
        if with_mc {
            let mc = cell.monte_carlo.as_ref().and_then(|m| m.as_ref().ok());
            let mc_err = cell
                .monte_carlo
                .as_ref()
                .and_then(|m| m.as_ref().err())
                .map(String::as_str);
            row.extend([
                mc.map(|m| m.pe).into(),
                mc.map_or(Cell::Empty, |m| Cell::Int(m.errors as i64)),
                mc.map_or(Cell::Empty, |m| Cell::Int(m.trials as i64)),
                mc.map(|m| m.lower).into(),
                mc.map(|m| m.upper).into(),
                mc.map(|m| m.half_width).into(),
                mc.zip(ok).map(|(m, r)| m.agrees_with(r.pe, 3.0)).into(),
                mc_err.into(),
            ]);
        }
        out.push(row);
    }

    let mc = args.monte_carlo.map(
        |trials| json!({ "trials": trials, "seed": args.seed, "cell_seed": "seed + cell index" }),
    );
    Ok(Report {
        manifest: Manifest::new(
            "ber",
            serde_json::to_value(args)?,
            preset,
            json!({ "quadrature": q, "ber": cfg, "monte_carlo": mc }),
        ),
        tables: vec![out],
    })
}
