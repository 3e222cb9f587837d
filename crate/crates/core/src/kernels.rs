//! Closed-form primitive integrals for layer profiles.
//!
//! Assembly reduces every corrector integral to weighted moments of the
//! three raw layer kernels:
//!
//! - `exp`:   integrals of `t^j e^{-r t}` and `e^{-r t} {sin,cos}(k t)`,
//!   written in the decay variable `t >= 0` so exponents never exceed 0;
//! - `gauss`: integrals of `u^j e^{-s^2 u^2}` via
//!   `int u e^{-s^2 u^2} = -e^{-s^2 u^2} / (2 s^2)` and
//!   `int e^{-s^2 u^2} = sqrt(pi) erf(s u) / (2 s)`;
//! - `erf`:   integrals of `u^j erf(s u)` by parts against the gauss
//!   moments.
//!
//! Differences of exponentials use `expm1` so nearly-equal endpoint values
//! do not cancel. Every kernel here is cross-checked against
//! [`crate::quadrature::layer_quadrature`] in the assembly tests.

use crate::math;

/// Dense polynomial of degree <= 5 (coefficients in increasing power).
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Poly {
    pub c: [f64; 6],
}

impl Poly {
    pub const ZERO: Poly = Poly { c: [0.0; 6] };

    pub fn constant(v: f64) -> Poly {
        let mut c = [0.0; 6];
        c[0] = v;
        Poly { c }
    }

    /// `c0 + c1 x`.
    pub fn affine(c0: f64, c1: f64) -> Poly {
        let mut c = [0.0; 6];
        c[0] = c0;
        c[1] = c1;
        Poly { c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &ci in self.c.iter().rev() {
            acc = acc * x + ci;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(other.c) {
            *a += b;
        }
        Poly { c }
    }

    pub fn scale(&self, v: f64) -> Poly {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a *= v;
        }
        Poly { c }
    }

    /// Product, panicking if the result exceeds degree 5.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut c = [0.0; 6];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                assert!(i + j < 6, "polynomial degree overflow");
                c[i + j] += a * b;
            }
        }
        Poly { c }
    }

    /// Coefficients of `p(alpha + beta t)` as a polynomial in `t`.
    pub fn compose_affine(&self, alpha: f64, beta: f64) -> Poly {
        let mut acc = Poly::ZERO;
        let arg = Poly::affine(alpha, beta);
        for &ci in self.c.iter().rev() {
            acc = acc.mul(&arg);
            acc.c[0] += ci;
        }
        acc
    }

    /// Definite integral over `[p, q]`.
    pub fn integrate(&self, p: f64, q: f64) -> f64 {
        let mut acc = 0.0;
        let mut qp = q;
        let mut pp = p;
        for (j, &cj) in self.c.iter().enumerate() {
            acc += cj * (qp - pp) / (j as f64 + 1.0);
            qp *= q;
            pp *= p;
        }
        acc
    }

    /// Derivative polynomial.
    pub fn derivative(&self) -> Poly {
        let mut c = [0.0; 6];
        for j in 1..6 {
            c[j - 1] = self.c[j] * j as f64;
        }
        Poly { c }
    }
}

/// Moments `m_j = int_{t0}^{t1} t^j e^{-r t} dt` for `j <= 5`.
///
/// Requires `0 <= t0 <= t1` and `r > 0`; uses the recurrence
/// `m_j = (t0^j E0 - t1^j E1)/r + (j/r) m_{j-1}` with the `j = 0` base
/// written through `expm1`.
pub(crate) fn exp_moments(r: f64, t0: f64, t1: f64) -> [f64; 6] {
    debug_assert!(r > 0.0 && t0 >= 0.0 && t1 >= t0);
    let e0 = math::exp(-r * t0);
    let delta = t1 - t0;
    // e0 - e1 = e0 * (1 - e^{-r delta})
    let diff = e0 * (-math::expm1(-r * delta));
    let e1 = math::exp(-r * t1);
    let mut m = [0.0; 6];
    m[0] = diff / r;
    let mut pow0 = 1.0;
    let mut pow1 = 1.0;
    for j in 1..6 {
        pow0 *= t0;
        pow1 *= t1;
        m[j] = (pow0 * e0 - pow1 * e1 + j as f64 * m[j - 1]) / r;
    }
    m
}

/// `int poly(t) e^{-r t} dt` over `[t0, t1]` in the decay variable.
pub(crate) fn exp_poly(r: f64, t0: f64, t1: f64, poly: &Poly) -> f64 {
    let m = exp_moments(r, t0, t1);
    let mut acc = 0.0;
    for (cj, mj) in poly.c.iter().zip(m) {
        acc += cj * mj;
    }
    acc
}

/// `(int e^{-r t} sin(k t) dt, int e^{-r t} cos(k t) dt)` over `[t0, t1]`.
pub(crate) fn exp_trig(r: f64, t0: f64, t1: f64, k: f64) -> (f64, f64) {
    debug_assert!(r > 0.0 && t0 >= 0.0 && t1 >= t0);
    let denom = r * r + k * k;
    // antiderivatives: -e^{-rt}(r sin + k cos)/denom, e^{-rt}(k sin - r cos)/denom
    let f = |t: f64| {
        let e = math::exp(-r * t);
        let (s, c) = (math::sin(k * t), math::cos(k * t));
        (-e * (r * s + k * c) / denom, e * (k * s - r * c) / denom)
    };
    if r * (t1 - t0) < 1e-3 {
        // endpoint difference cancels; integrate directly (smooth here)
        let rule = crate::quadrature::GaussLegendre::new(16);
        let sn = rule.integrate(t0, t1, |t| math::exp(-r * t) * math::sin(k * t));
        let cs = rule.integrate(t0, t1, |t| math::exp(-r * t) * math::cos(k * t));
        return (sn, cs);
    }
    let (s0, c0) = f(t0);
    let (s1, c1) = f(t1);
    (s1 - s0, c1 - c0)
}

/// Moments `G_j = int_{u0}^{u1} u^j e^{-s^2 u^2} du` for `j <= 5`.
pub(crate) fn gauss_moments(s: f64, u0: f64, u1: f64) -> [f64; 6] {
    debug_assert!(s > 0.0);
    let g0 = math::SQRT_PI / (2.0 * s) * (math::erf(s * u1) - math::erf(s * u0));
    let e0 = math::exp(-s * s * u0 * u0);
    let e1 = math::exp(-s * s * u1 * u1);
    let two_s2 = 2.0 * s * s;
    let g1 = (e0 - e1) / two_s2;
    let mut g = [0.0; 6];
    g[0] = g0;
    g[1] = g1;
    let mut pow0 = u0;
    let mut pow1 = u1;
    for j in 2..6 {
        // G_j = [-u^{j-1} e^{-s^2 u^2}]/(2 s^2) + (j-1)/(2 s^2) G_{j-2}
        g[j] = (pow0 * e0 - pow1 * e1 + (j - 1) as f64 * g[j - 2]) / two_s2;
        pow0 *= u0;
        pow1 *= u1;
    }
    g
}

pub(crate) fn gauss_poly(s: f64, u0: f64, u1: f64, poly: &Poly) -> f64 {
    let g = gauss_moments(s, u0, u1);
    let mut acc = 0.0;
    for (cj, gj) in poly.c.iter().zip(g) {
        acc += cj * gj;
    }
    acc
}

/// Moments `A_j = int_{u0}^{u1} u^j erf(s u) du` for `j <= 4`.
///
/// By parts: `A_j = [u^{j+1}/(j+1) erf(s u)] - 2s/((j+1) sqrt(pi)) G_{j+1}`.
pub(crate) fn erf_moments(s: f64, u0: f64, u1: f64) -> [f64; 5] {
    let g = gauss_moments(s, u0, u1);
    let mut a = [0.0; 5];
    let mut pow0 = u0;
    let mut pow1 = u1;
    for (j, aj) in a.iter_mut().enumerate() {
        let jp1 = (j + 1) as f64;
        let boundary = (pow1 * math::erf(s * u1) - pow0 * math::erf(s * u0)) / jp1;
        *aj = boundary - 2.0 * s / (jp1 * math::SQRT_PI) * g[j + 1];
        pow0 *= u0;
        pow1 *= u1;
    }
    a
}

pub(crate) fn erf_poly(s: f64, u0: f64, u1: f64, poly: &Poly) -> f64 {
    let a = erf_moments(s, u0, u1);
    let mut acc = 0.0;
    for (cj, aj) in poly.c.iter().take(5).zip(a) {
        acc += cj * aj;
    }
    debug_assert!(poly.c[5] == 0.0, "erf moments implemented up to degree 4");
    acc
}

/// `int_{u0}^{u1} u erf(s u) e^{-s^2 u^2} du`.
///
/// Antiderivative `[-erf(s u) e^{-s^2 u^2} + erf(sqrt2 s u)/sqrt2] / (2 s^2)`.
pub(crate) fn gauss_erf_moment1(s: f64, u0: f64, u1: f64) -> f64 {
    let h = |u: f64| {
        (-math::erf(s * u) * math::exp(-s * s * u * u)
            + math::erf(core::f64::consts::SQRT_2 * s * u) / core::f64::consts::SQRT_2)
            / (2.0 * s * s)
    };
    h(u1) - h(u0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use crate::testutil::assert_close;

    #[test]
    fn poly_algebra() {
        let p = Poly::affine(1.0, 2.0); // 1 + 2x
        let q = p.mul(&p); // 1 + 4x + 4x^2
        assert_eq!(q.c[0..3], [1.0, 4.0, 4.0]);
        assert_close(q.integrate(0.0, 1.0), 1.0 + 2.0 + 4.0 / 3.0, 1e-15);
        let shifted = q.compose_affine(1.0, -1.0); // q(1 - t)
        assert_close(shifted.eval(0.25), q.eval(0.75), 1e-15);
        assert_eq!(p.derivative().c[0], 2.0);
    }

    #[test]
    fn exp_moments_match_quadrature() {
        let rule = GaussLegendre::new(40);
        for r in [0.5, 3.0, 40.0] {
            let m = exp_moments(r, 0.1, 1.3);
            for (j, mj) in m.iter().enumerate() {
                let direct = rule.integrate(0.1, 1.3, |t| {
                    let mut acc = math::exp(-r * t);
                    for _ in 0..j {
                        acc *= t;
                    }
                    acc
                });
                assert_close(*mj, direct, 1e-12);
            }
        }
    }

    #[test]
    fn exp_moments_survive_extreme_rates() {
        // underflow path: e^{-r t1} = 0 exactly, values stay finite
        let m = exp_moments(2e5, 0.0, 1.0);
        assert_close(m[0], 1.0 / 2e5, 1e-12);
        assert!(m.iter().all(|v| v.is_finite()));
        // near-degenerate r*dt: expm1 keeps full precision
        let m = exp_moments(1e-6, 0.5, 0.5 + 1e-7);
        assert_close(m[0], 1e-7, 1e-6);
    }

    #[test]
    fn exp_trig_matches_quadrature() {
        let rule = GaussLegendre::new(40);
        for (r, k) in [(2.0, 1.7), (25.0, -1.3), (10.0, 0.0)] {
            let (sn, cs) = exp_trig(r, 0.0, 2.0, k);
            let sn_q = rule.integrate(0.0, 2.0, |t| math::exp(-r * t) * math::sin(k * t));
            let cs_q = rule.integrate(0.0, 2.0, |t| math::exp(-r * t) * math::cos(k * t));
            assert_close(sn, sn_q, 1e-13);
            assert_close(cs, cs_q, 1e-13);
        }
    }

    #[test]
    fn gauss_and_erf_moments_match_quadrature() {
        let rule = GaussLegendre::new(60);
        let s = 2.2360679774997896; // sqrt(1/(2*0.1))
        let g = gauss_moments(s, -0.8, 0.9);
        let a = erf_moments(s, -0.8, 0.9);
        for j in 0..6 {
            let direct = rule.integrate(-0.8, 0.9, |u| {
                let mut acc = math::exp(-s * s * u * u);
                for _ in 0..j {
                    acc *= u;
                }
                acc
            });
            assert_close(g[j], direct, 1e-13);
        }
        for j in 0..5 {
            let direct = rule.integrate(-0.8, 0.9, |u| {
                let mut acc = math::erf(s * u);
                for _ in 0..j {
                    acc *= u;
                }
                acc
            });
            assert_close(a[j], direct, 1e-13);
        }
    }

    #[test]
    fn gauss_erf_cross_term_matches_quadrature() {
        let rule = GaussLegendre::new(60);
        for s in [1.0, 7.0] {
            let val = gauss_erf_moment1(s, -0.4, 1.0);
            let direct = rule.integrate(-0.4, 1.0, |u| {
                u * math::erf(s * u) * math::exp(-s * s * u * u)
            });
            assert_close(val, direct, 1e-13);
        }
    }
}
