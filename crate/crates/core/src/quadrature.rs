//! Gauss-Legendre rules and layer-graded adaptive quadrature.
//!
//! Corrector integrands vary on the scale of the layer width, so plain
//! composite rules stall. [`layer_quadrature`] grades the partition
//! geometrically away from the layer point (breakpoints at
//! `layer_point +- width * {0, 1, 2, 4, 8, ...}`), applies a 10-point
//! Gauss-Legendre rule per subinterval, and halves every subinterval until
//! two successive estimates agree to the requested tolerance.

use alloc::vec::Vec;

use crate::math;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum QuadratureError {
    #[error("layer quadrature did not reach tolerance {tol}: last delta {delta} after {refinements} refinements")]
    NoConvergence {
        tol: f64,
        delta: f64,
        refinements: usize,
    },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("integrand returned a non-finite value near x = {0}")]
    NonFiniteIntegrand(f64),
}

/// A Gauss-Legendre rule on the reference interval `[-1, 1]`.
///
/// Nodes are the Legendre roots found by Newton iteration on the
/// three-term recurrence; exact for polynomials of degree `2n - 1`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = math::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        nodes.reverse();
        weights.reverse();
        GaussLegendre { nodes, weights }
    }

    pub fn degree(&self) -> usize {
        self.nodes.len()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Composite rule over `panels` equal panels of `[a, b]`.
    pub fn integrate_composite(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: impl FnMut(f64) -> f64,
    ) -> f64 {
        let mut acc = 0.0;
        for p in 0..panels {
            let x0 = a + (b - a) * p as f64 / panels as f64;
            let x1 = a + (b - a) * (p + 1) as f64 / panels as f64;
            acc += self.integrate(x0, x1, &mut f);
        }
        acc
    }
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const POINTS_PER_SUBINTERVAL: usize = 10;
const MAX_REFINEMENTS: usize = 12;

/// Integrates `f` over `[a, b]` where `f` varies on scale `width` around
/// `layer_point`, to absolute tolerance `tol`.
pub fn layer_quadrature(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    layer_point: f64,
    width: f64,
    tol: f64,
) -> Result<f64, QuadratureError> {
    if !(tol > 0.0) {
        return Err(QuadratureError::BadTolerance(tol));
    }
    let rule = GaussLegendre::new(POINTS_PER_SUBINTERVAL);
    let mut breaks = graded_breakpoints(a, b, layer_point, width.abs().max(1e-300));

    let mut previous = f64::NAN;
    for refinement in 0..=MAX_REFINEMENTS {
        let mut acc = 0.0;
        for w in breaks.windows(2) {
            acc += rule.integrate(w[0], w[1], &mut f);
        }
        if !acc.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand(layer_point));
        }
        if (acc - previous).abs() < tol {
            return Ok(acc);
        }
        previous = acc;
        if refinement == MAX_REFINEMENTS {
            break;
        }
        breaks = bisect_all(&breaks);
    }
    Err(QuadratureError::NoConvergence {
        tol,
        delta: f64::NAN,
        refinements: MAX_REFINEMENTS,
    })
}

/// Breakpoints at `layer_point +- width * 2^k` clipped to `[a, b]`.
fn graded_breakpoints(a: f64, b: f64, layer_point: f64, width: f64) -> Vec<f64> {
    let mut breaks = Vec::new();
    breaks.push(a);
    breaks.push(b);
    if layer_point > a && layer_point < b {
        breaks.push(layer_point);
    }
    let span = b - a;
    let mut offset = width;
    while offset < span {
        for x in [layer_point - offset, layer_point + offset] {
            if x > a && x < b {
                breaks.push(x);
            }
        }
        offset *= 2.0;
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    breaks
}

fn bisect_all(breaks: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(breaks.len() * 2 - 1);
    for w in breaks.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(breaks[breaks.len() - 1]);
    out
}

/// Trapezoidal weights for a sorted (not necessarily uniform) grid.
pub fn trapezoid_weights(points: &[f64]) -> Vec<f64> {
    let n = points.len();
    assert!(n >= 2, "need at least two points");
    let mut w = Vec::with_capacity(n);
    w.push(0.5 * (points[1] - points[0]));
    for i in 1..n - 1 {
        w.push(0.5 * (points[i + 1] - points[i - 1]));
    }
    w.push(0.5 * (points[n - 1] - points[n - 2]));
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{assert_abs, assert_close};

    #[test]
    fn gauss_rule_is_exact_to_design_degree() {
        for n in [2usize, 4, 6, 10, 16] {
            let rule = GaussLegendre::new(n);
            // integrate x^(2n-1) and x^(2n-2) over [0, 1]
            let p = 2 * n - 1;
            let val = rule.integrate(0.0, 1.0, |x| {
                let mut acc = 1.0;
                for _ in 0..p {
                    acc *= x;
                }
                acc
            });
            assert_close(val, 1.0 / (p as f64 + 1.0), 1e-13);
        }
    }

    #[test]
    fn gauss_64_matches_analytic_exponential() {
        let rule = GaussLegendre::new(64);
        let val = rule.integrate(0.0, 1.0, math::exp);
        assert_close(val, math::exp(1.0) - 1.0, 1e-15);
    }

    #[test]
    fn layer_quadrature_exponential_layer() {
        let eps = 1e-3;
        let val = layer_quadrature(|x| math::exp(-x / eps), 0.0, 1.0, 0.0, eps, 1e-12).unwrap();
        let exact = eps * (1.0 - math::exp(-1.0 / eps));
        assert_abs(val, exact, 1e-12);
    }

    #[test]
    fn layer_quadrature_erf_derivative() {
        // integral of erf'(c x) over [-1, 1] equals (erf(c) - erf(-c)) / c.
        let eps = 1e-4;
        let c = math::sqrt(1.0 / (2.0 * eps));
        let val = layer_quadrature(
            |x| 2.0 * c / math::SQRT_PI * math::exp(-c * c * x * x),
            -1.0,
            1.0,
            0.0,
            1.0 / c,
            1e-12,
        )
        .unwrap();
        assert_abs(val, math::erf(c) - math::erf(-c), 1e-12);
    }

    #[test]
    fn layer_quadrature_constant() {
        let val = layer_quadrature(|_| 1.0, 0.0, 1.0, 0.0, 1e-3, 1e-12).unwrap();
        assert_abs(val, 1.0, 1e-13);
    }

    #[test]
    fn layer_quadrature_rejects_bad_tolerance() {
        assert!(matches!(
            layer_quadrature(|_| 1.0, 0.0, 1.0, 0.0, 1e-3, 0.0),
            Err(QuadratureError::BadTolerance(_))
        ));
    }

    #[test]
    fn trapezoid_weights_sum_to_length() {
        let pts = [0.0, 0.1, 0.35, 0.7, 1.0];
        let w = trapezoid_weights(&pts);
        let total: f64 = w.iter().sum();
        assert_close(total, 1.0, 1e-14);
    }
}
