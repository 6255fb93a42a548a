//! Panel layouts for the per-segment inverse transform.

use crate::scalar::{from_usize, lit, Scalar};

/// Gauss–Legendre order used on every panel.
pub(crate) const PANEL_ORDER: usize = 16;

/// Dyadic refinement levels applied to the panel touching a singular end.
pub(crate) const GRADING_LEVELS: usize = 40;

/// Which end of a segment carries an integrable endpoint singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Singular {
    None,
    Start,
    End,
}

/// Reference Gauss–Legendre rule on `[-1, 1]`, nodes ascending.
///
/// Roots of `P_n` by Newton iteration on the three-term recurrence, seeded
/// with the Chebyshev-like guess `cos(π(i − ¼)/(n + ½))`.
pub(crate) fn reference_rule(order: usize) -> Vec<(f64, f64)> {
    assert!(order > 0, "quadrature order must be positive");
    let n = order;
    let mut rule = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    rule
}

/// Composite Gauss–Legendre nodes and weights over `[a, b]`.
///
/// `nodes` is split into uniform panels of [`PANEL_ORDER`] points. The panel
/// adjacent to a singular end is replaced by geometrically shrinking panels,
/// which keeps the rule accurate for `1/ln` and square-root endpoint behaviour.
pub(crate) fn gauss_legendre<F: Scalar>(
    a: F,
    b: F,
    nodes: usize,
    singular: Singular,
    rule: &[(f64, f64)],
) -> Vec<(F, F)> {
    let panels = (nodes / rule.len()).max(1);
    let h = (b - a) / from_usize(panels);
    let mut edges: Vec<(F, F)> = Vec::with_capacity(panels + GRADING_LEVELS);

    let graded = |near: F, far: F, out: &mut Vec<(F, F)>| {
        // near..far is one uniform panel; split it dyadically towards `near`.
        let span = far - near;
        let mut scale = F::one();
        for _ in 0..GRADING_LEVELS {
            let inner = scale * lit(0.5);
            out.push((near + span * inner, near + span * scale));
            scale = inner;
        }
        out.push((near, near + span * scale));
    };

    for i in 0..panels {
        let lo = a + h * from_usize(i);
        let hi = if i + 1 == panels {
            b
        } else {
            a + h * from_usize(i + 1)
        };
        match singular {
            Singular::Start if i == 0 => graded(lo, hi, &mut edges),
            Singular::End if i + 1 == panels => graded(hi, lo, &mut edges),
            _ => edges.push((lo, hi)),
        }
    }

    let mut out = Vec::with_capacity(edges.len() * rule.len());
    for (lo, hi) in edges {
        let mid = (lo + hi) * lit(0.5);
        let half = (hi - lo) * lit(0.5);
        for &(x, w) in rule {
            out.push((mid + half * lit(x), half.abs() * lit(w)));
        }
    }
    out
}

/// Composite trapezoid rule with `nodes` equispaced points over `[a, b]`.
pub(crate) fn trapezoid<F: Scalar>(a: F, b: F, nodes: usize) -> Vec<(F, F)> {
    let n = nodes.max(2);
    let h = (b - a) / from_usize(n - 1);
    (0..n)
        .map(|i| {
            let x = if i + 1 == n { b } else { a + h * from_usize(i) };
            let w = if i == 0 || i + 1 == n {
                h * lit(0.5)
            } else {
                h
            };
            (x, w)
        })
        .collect()
}
