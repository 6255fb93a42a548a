use ihpulse::{
    decay_exponent, derivative_divergence_check, impulse_at, impulse_grid, is_strictly_diverging,
    isi_samples, sidelobes, spectrum, ImpulseResponse, Pulse, PulseId, PulseParams,
    QuadratureConfig, QuadratureScheme,
};

const ALPHAS: [f64; 3] = [0.25, 0.35, 0.5];

fn response(id: PulseId, alpha: f64) -> ImpulseResponse<f64> {
    ImpulseResponse::build(
        id,
        PulseParams::with_alpha(alpha).unwrap(),
        QuadratureConfig::default(),
    )
    .unwrap()
}

/// sinc(x)·cos(παx)/(1 − (2αx)²), with the removable point by l'Hôpital.
fn rc_oracle(alpha: f64, x: f64) -> f64 {
    use std::f64::consts::PI;
    let sinc = if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    };
    let den = 1.0 - (2.0 * alpha * x).powi(2);
    if den.abs() < 1e-12 {
        sinc * PI / 4.0
    } else {
        sinc * (PI * alpha * x).cos() / den
    }
}

#[test]
fn unit_peak_and_nyquist_zero_crossings() {
    for id in PulseId::ALL {
        for alpha in ALPHAS {
            let r = response(id, alpha);
            assert!((r.at(0.0) - 1.0).abs() < 1e-9, "{id} α={alpha}");
            for k in 1..=20 {
                for t in [k as f64, -(k as f64)] {
                    assert!(r.at(t).abs() < 1e-6, "{id} α={alpha} k={t}: {}", r.at(t));
                }
            }
        }
    }
}

#[test]
fn quadrature_converges_when_nodes_double() {
    for id in PulseId::COMPOSITES {
        for alpha in ALPHAS {
            let p = PulseParams::with_alpha(alpha).unwrap();
            let base = QuadratureConfig::default();
            let fine = QuadratureConfig {
                nodes_per_segment: 2 * base.nodes_per_segment,
                ..base
            };
            let a = ImpulseResponse::build(id, p, base).unwrap();
            let b = ImpulseResponse::build(id, p, fine).unwrap();
            for i in -80..=80 {
                let t = i as f64 * 0.25 + 0.013;
                let d = (a.at(t) - b.at(t)).abs();
                assert!(d < 1e-9, "{id} α={alpha} t={t}: {d:e}");
            }
        }
    }
}

#[test]
fn forced_quadrature_matches_raised_cosine_closed_form() {
    let p = PulseParams::with_alpha(0.35).unwrap();
    let pulse = Pulse::new(PulseId::RaisedCosine, p);
    for scheme in [
        QuadratureScheme::GaussLegendre,
        QuadratureScheme::CompositeTrapezoid,
    ] {
        let q = QuadratureConfig {
            scheme,
            ..QuadratureConfig::default()
        };
        let r = ImpulseResponse::with_quadrature(pulse, q).unwrap();
        if scheme == QuadratureScheme::CompositeTrapezoid {
            // second-order rule: checked coarsely
            assert!((r.at(0.5) - rc_oracle(0.35, 0.5)).abs() < 1e-6);
            continue;
        }
        for i in -320..=320 {
            let t = i as f64 / 64.0;
            let d = (r.at(t) - rc_oracle(0.35, t)).abs();
            assert!(d < 1e-8, "t={t}: {d:e}");
        }
    }
}

#[test]
fn raised_cosine_grid_matches_closed_form() {
    let r = response(PulseId::RaisedCosine, 0.35);
    let grid = impulse_grid(&r, 5, 32).unwrap();
    assert_eq!(grid.len(), 321);
    for (i, s) in grid.samples.iter().enumerate() {
        let d = (s - rc_oracle(0.35, grid.time(i))).abs();
        assert!(d < 1e-8);
    }
}

#[test]
fn grid_is_even_centered_and_pointwise_exact() {
    for id in PulseId::COMPOSITES {
        let r = response(id, 0.35);
        let grid = impulse_grid(&r, 5, 16).unwrap();
        let n = grid.len();
        assert_eq!(n % 2, 1);
        assert!((grid.samples[grid.center()] - 1.0).abs() < 1e-9);
        for i in 0..n {
            assert!((grid.samples[i] - grid.samples[n - 1 - i]).abs() < 1e-10);
            assert!((grid.samples[i] - r.at(grid.time(i))).abs() < 1e-12);
        }
    }
    let r = response(PulseId::AcschLog, 0.35);
    let tiny = impulse_grid(&r, 1, 2).unwrap();
    assert!((tiny.samples[tiny.center()] - 1.0).abs() < 1e-9);
    assert!(impulse_grid(&r, 0, 4).is_err());
    assert!(impulse_grid(&r, 4, 1).is_err());
}

#[test]
fn impulse_at_equals_response_evaluation() {
    let p = PulseParams::with_alpha(0.35).unwrap();
    let r = response(PulseId::AcothAcsch, 0.35);
    let v = impulse_at(PulseId::AcothAcsch, p, QuadratureConfig::default(), 1.7).unwrap();
    assert_eq!(v, r.at(1.7));
}

/// Composite Simpson on 2·∫₀^{B(1+α)} S(f)² df, split at the segment points.
fn spectral_energy(id: PulseId, p: PulseParams<f64>) -> f64 {
    let (b, a) = (p.nyquist(), p.alpha());
    let cuts = [0.0, b * (1.0 - a), b, b * (1.0 + a)];
    let n = 200_000;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let h = (w[1] - w[0]) / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let f = if i == n { w[1] } else { w[0] + i as f64 * h };
            let weight = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += weight * spectrum(id, p, f).powi(2);
        }
        total += acc * h / 3.0;
    }
    2.0 * total
}

#[test]
fn parseval_energy_bookkeeping() {
    for id in PulseId::ALL {
        let p = PulseParams::with_alpha(0.35).unwrap();
        let r = response(id, 0.35);
        let grid = impulse_grid(&r, 200, 4).unwrap();
        let time_energy = grid.dt * grid.samples.iter().map(|s| s * s).sum::<f64>();
        let freq_energy = spectral_energy(id, p);
        let rel = (time_energy - freq_energy).abs() / freq_energy;
        assert!(rel < 1e-4, "{id}: {time_energy} vs {freq_energy} ({rel:e})");
    }
}

#[test]
fn isi_reflection_symmetry() {
    for id in [PulseId::AcschAsech, PulseId::AcosLog] {
        let r = response(id, 0.35);
        for tau in [0.05, 0.1, 0.3] {
            let plus = isi_samples(&r, tau, -100, 100).unwrap();
            let minus = isi_samples(&r, -tau, -100, 100).unwrap();
            assert_eq!(plus.g.len(), 201);
            for k in -100..=100 {
                let d = (plus.get(k).unwrap() - minus.get(-k).unwrap()).abs();
                assert!(d < 1e-12, "{id} τ={tau} k={k}");
            }
        }
    }
}

#[test]
fn isi_at_zero_offset() {
    for id in PulseId::ALL {
        let r = response(id, 0.35);
        let s = isi_samples(&r, 0.0, -3, 3).unwrap();
        assert!((s.get(0).unwrap() - 1.0).abs() < 1e-6);
        for (_, g) in s.interferers() {
            assert!(g.abs() < 1e-6);
        }
    }
    let r = response(PulseId::AcschAsech, 0.35);
    let a = isi_samples(&r, 0.1, -100, 100).unwrap();
    let b = isi_samples(&response(PulseId::AcschAsech, 0.35), 0.1, -100, 100).unwrap();
    assert_eq!(a, b);
    assert!(isi_samples(&r, 0.0, 1, 3).is_err());
}

#[test]
fn decay_exponents_for_rectangular_and_raised_cosine() {
    for id in PulseId::ALL {
        let e = decay_exponent(&response(id, 0.0), 10.0, 100.0).unwrap();
        assert!((e + 1.0).abs() < 0.2, "{id} α=0: {e}");
    }
    let e = decay_exponent(&response(PulseId::RaisedCosine, 0.35), 10.0, 100.0).unwrap();
    assert!((e + 3.0).abs() < 0.3, "rc: {e}");
}

#[test]
fn decay_exponent_preconditions() {
    let r = response(PulseId::AcschAsech, 0.35);
    assert!(decay_exponent(&r, 4.0, 100.0).is_err());
    assert!(decay_exponent(&r, 10.0, 15.0).is_err());
}

#[test]
fn derivative_diverges_at_both_transition_points() {
    let p = PulseParams::with_alpha(0.35).unwrap();
    let eps: Vec<f64> = (0..30).map(|i| 0.01 * 0.5f64.powi(i)).collect();
    let rows = derivative_divergence_check(p, &eps).unwrap();
    assert_eq!(rows.len(), eps.len());
    assert!(is_strictly_diverging(&rows));
    for w in rows.windows(2) {
        assert!(w[1].lower > w[0].lower && w[1].upper > w[0].upper);
    }
}

#[test]
fn first_and_late_sidelobe_claims() {
    let mags: Vec<(PulseId, Vec<f64>)> = PulseId::COMPOSITES
        .iter()
        .map(|&id| {
            let grid = impulse_grid(&response(id, 0.35), 5, 64).unwrap();
            (
                id,
                sidelobes(&grid, 4).iter().map(|s| s.magnitude).collect(),
            )
        })
        .collect();
    let of = |id: PulseId| &mags.iter().find(|(i, _)| *i == id).unwrap().1;
    assert!(of(PulseId::AcschAsech)[0] < of(PulseId::AcosLog)[0]);
    for lobe in [2, 3] {
        for (id, m) in &mags {
            if *id != PulseId::AcschLog {
                assert!(
                    of(PulseId::AcschLog)[lobe] < m[lobe],
                    "lobe {} vs {id}",
                    lobe + 1
                );
            }
        }
    }
}
