use ihpulse::{
    ber_monte_carlo, ber_series, ber_table, BerConfig, ImpulseResponse, PulseId, PulseParams,
    QuadratureConfig,
};

const ALPHAS: [f64; 3] = [0.25, 0.35, 0.5];
const TAUS: [f64; 4] = [0.05, 0.1, 0.2, 0.3];

fn response(id: PulseId, alpha: f64) -> ImpulseResponse<f64> {
    ImpulseResponse::build(
        id,
        PulseParams::with_alpha(alpha).unwrap(),
        QuadratureConfig::default(),
    )
    .unwrap()
}

fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

#[test]
fn zero_offset_is_gaussian_tail() {
    let want = q_function(10f64.powf(0.75));
    assert!((want - 9.36e-9).abs() < 1e-10);
    for id in PulseId::ALL {
        let res = ber_series(&response(id, 0.35), &BerConfig::default()).unwrap();
        assert!(((res.pe - want) / want).abs() < 0.05, "{id}: {}", res.pe);
        assert!(res.converged);
    }
}

#[test]
fn noiseless_zero_offset() {
    let r = response(PulseId::AcschAsech, 0.35);
    let loud = BerConfig::default().with_snr_db(100.0);
    let short = ber_series(&r, &loud).unwrap();
    assert!(!short.converged);
    assert!(short.pe > 0.4);
    let long = ber_series(
        &r,
        &BerConfig {
            nm: 200_000,
            ..loud
        },
    )
    .unwrap();
    assert!(long.pe < 1e-12, "{}", long.pe);
    assert!(long.tail_bound < 1e-30);
}

#[test]
fn offset_sign_does_not_matter() {
    for id in PulseId::ALL {
        let r = response(id, 0.35);
        for tau in TAUS {
            let cfg = BerConfig::default();
            let plus = ber_series(&r, &cfg.with_tau(tau)).unwrap();
            let minus = ber_series(&r, &cfg.with_tau(-tau)).unwrap();
            assert_eq!(plus.pe, minus.pe, "{id} τ={tau}");
        }
    }
}

#[test]
fn series_is_converged_and_truncation_insensitive_on_table_grid() {
    for id in PulseId::ALL {
        for alpha in ALPHAS {
            let r = response(id, alpha);
            let mut prev = 0.0;
            for tau in TAUS {
                let cfg = BerConfig::default().with_tau(tau);
                let base = ber_series(&r, &cfg).unwrap();
                assert!(base.converged && (0.0..=0.5).contains(&base.pe));
                assert!(base.pe > prev, "{id} α={alpha} τ={tau}");
                prev = base.pe;

                let more_terms = ber_series(&r, &BerConfig { nm: 46, ..cfg }).unwrap();
                let rel = ((more_terms.pe - base.pe) / base.pe).abs();
                assert!(rel < 1e-3, "{id} α={alpha} τ={tau}: nm {rel:e}");

                let wider = ber_series(
                    &r,
                    &BerConfig {
                        n1: -256,
                        n2: 256,
                        ..cfg
                    },
                )
                .unwrap();
                let rel = ((wider.pe - base.pe) / base.pe).abs();
                assert!(rel < 1e-2, "{id} α={alpha} τ={tau}: window {rel:e}");
            }
        }
    }
}

#[test]
fn single_cell_table_equals_direct_call() {
    let cfg = BerConfig::default();
    let table = ber_table(
        &[PulseId::AcschAsech],
        &[0.35],
        &[-0.1],
        &cfg,
        QuadratureConfig::default(),
        1.0,
    )
    .unwrap();
    let direct = ber_series(&response(PulseId::AcschAsech, 0.35), &cfg.with_tau(0.1)).unwrap();
    let cell = &table.cells[0];
    assert_eq!(cell.tau_over_t, -0.1);
    assert_eq!(cell.result.as_ref().unwrap().pe, direct.pe);
    assert!(cell.best);
}

#[test]
fn printed_example_within_factor_two() {
    let r = response(PulseId::AcschAsech, 0.35);
    let pe = ber_series(&r, &BerConfig::default().with_tau(0.1))
        .unwrap()
        .pe;
    assert!(pe / 3.6393e-7 < 2.0 && 3.6393e-7 / pe < 2.0, "{pe}");
}

#[test]
fn monte_carlo_is_reproducible() {
    let r = response(PulseId::AcschAsech, 0.35);
    let cfg = BerConfig::default().with_tau(0.3);
    let a = ber_monte_carlo(&r, &cfg, 300_000, 42).unwrap();
    let b = ber_monte_carlo(&r, &cfg, 300_000, 42).unwrap();
    assert_eq!(a, b);
    let series = ber_series(&r, &cfg).unwrap().pe;
    assert!(a.agrees_with(series, 3.0), "{a:?} vs {series}");
}

#[test]
fn monte_carlo_zero_offset_upper_bound_covers_tail() {
    let r = response(PulseId::AcschAsech, 0.35);
    let est = ber_monte_carlo(&r, &BerConfig::default(), 1_000_000, 3).unwrap();
    assert!(est.upper > q_function(10f64.powf(0.75)));
    assert!(est.errors <= 2);
}

#[test]
fn f32_series_tracks_f64() {
    let p = PulseParams::<f32>::with_alpha(0.35).unwrap();
    let r32 = ImpulseResponse::build(PulseId::AcschAsech, p, QuadratureConfig::default()).unwrap();
    let pe32 = ber_series(&r32, &BerConfig::<f32>::default().with_tau(0.3))
        .unwrap()
        .pe;
    let pe64 = ber_series(
        &response(PulseId::AcschAsech, 0.35),
        &BerConfig::default().with_tau(0.3),
    )
    .unwrap()
    .pe;
    assert!(
        ((pe32 as f64 - pe64) / pe64).abs() < 1e-2,
        "{pe32} vs {pe64}"
    );
}
