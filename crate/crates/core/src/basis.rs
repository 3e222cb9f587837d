//! Nodal P1/Q1 basis functions and asymptotics-derived corrector functions.
//!
//! Raw layer profiles (`exp(-rate * dist)` for convection boundary layers,
//! `erf(scale * (x - center))` for turning points) do not vanish on the
//! boundary, so every corrector is *blended*: the linear interpolant of the
//! raw endpoint values is subtracted, making the corrector exactly zero at
//! both endpoints (in 2D the tensor structure makes it zero on all four
//! edges). The enriched space is then `{correctors..., interior hats...}`
//! and any coefficient vector satisfies the homogeneous Dirichlet condition
//! identically.
//!
//! Derivatives at element interfaces follow the left-element convention;
//! assembly only ever evaluates derivatives at interior quadrature points,
//! so the convention affects diagnostics only.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::assembly::{Convection, ProblemClass, ProblemSpec};
use crate::geometry::{Mesh, Mesh1D, Mesh2D};
use crate::kernels::Poly;
use crate::math;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BasisError {
    #[error("point {0} outside the closed domain")]
    OutOfDomain(f64),
    #[error("basis index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("problem class {class:?} needs a {expected} mesh")]
    WrongMeshDimension {
        class: ProblemClass,
        expected: &'static str,
    },
    #[error("mesh spans [{mesh_a}, {mesh_b}] but the problem domain is [{a}, {b}]")]
    DomainMismatch {
        mesh_a: f64,
        mesh_b: f64,
        a: f64,
        b: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Analytic layer profile underlying a corrector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CorrectorKind {
    /// `exp(-rate * (x - a))` (left) or `exp(-rate * (b - x))` (right),
    /// with `rate = |b(x_layer)| / eps`.
    BoundaryExp { side: Side, rate: f64 },
    /// `erf(scale * (x - center))` with `scale = sqrt(b'(center) / (2 eps))`
    /// in the turning-point normalization.
    InteriorErf { center: f64, scale: f64 },
}

/// A raw profile minus the linear interpolant of its endpoint values.
#[derive(Clone, Debug)]
pub struct Corrector1d {
    kind: CorrectorKind,
    a: f64,
    b: f64,
    raw_a: f64,
    raw_b: f64,
}

/// Blends `kind` over `domain = (a, b)` so the result vanishes at both
/// endpoints exactly.
pub fn make_corrector(kind: CorrectorKind, domain: (f64, f64)) -> Corrector1d {
    let (a, b) = domain;
    debug_assert!(a < b);
    let mut c = Corrector1d {
        kind,
        a,
        b,
        raw_a: 0.0,
        raw_b: 0.0,
    };
    c.raw_a = c.raw(a);
    c.raw_b = c.raw(b);
    c
}

impl Corrector1d {
    pub fn kind(&self) -> CorrectorKind {
        self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Raw (unblended) profile value. Exponent arguments are `<= 0` by
    /// construction, so this never overflows for any positive rate.
    pub(crate) fn raw(&self, x: f64) -> f64 {
        match self.kind {
            CorrectorKind::BoundaryExp {
                side: Side::Left,
                rate,
            } => math::exp(-rate * (x - self.a)),
            CorrectorKind::BoundaryExp {
                side: Side::Right,
                rate,
            } => math::exp(-rate * (self.b - x)),
            CorrectorKind::InteriorErf { center, scale } => math::erf(scale * (x - center)),
        }
    }

    pub(crate) fn raw_deriv(&self, x: f64) -> f64 {
        match self.kind {
            CorrectorKind::BoundaryExp {
                side: Side::Left,
                rate,
            } => -rate * math::exp(-rate * (x - self.a)),
            CorrectorKind::BoundaryExp {
                side: Side::Right,
                rate,
            } => rate * math::exp(-rate * (self.b - x)),
            CorrectorKind::InteriorErf { center, scale } => {
                let u = scale * (x - center);
                2.0 * scale / math::SQRT_PI * math::exp(-u * u)
            }
        }
    }

    /// Slope of the subtracted linear interpolant.
    pub(crate) fn blend_slope(&self) -> f64 {
        (self.raw_b - self.raw_a) / (self.b - self.a)
    }

    /// The subtracted linear interpolant as a polynomial in `x`.
    pub(crate) fn blend_poly(&self) -> Poly {
        let slope = self.blend_slope();
        Poly::affine(self.raw_a - slope * self.a, slope)
    }

    pub fn value(&self, x: f64) -> f64 {
        let length = self.b - self.a;
        let lin = self.raw_a * ((self.b - x) / length) + self.raw_b * ((x - self.a) / length);
        self.raw(x) - lin
    }

    pub fn value_and_deriv(&self, x: f64) -> (f64, f64) {
        (self.value(x), self.raw_deriv(x) - self.blend_slope())
    }
}

/// Value and derivative of the full hat at mesh node `m` (0-based, any
/// node); zero outside its support.
pub(crate) fn hat_eval(mesh: &Mesh1D, m: usize, x: f64) -> (f64, f64) {
    let nodes = mesh.nodes();
    let e = match mesh.element_containing(x) {
        Some(e) => e,
        None => return (0.0, 0.0),
    };
    if e + 1 == m {
        // rising edge on [x_{m-1}, x_m]
        let h = nodes[e + 1] - nodes[e];
        ((x - nodes[e]) / h, 1.0 / h)
    } else if e == m {
        // falling edge on [x_m, x_{m+1}]
        let h = nodes[e + 1] - nodes[e];
        ((nodes[e + 1] - x) / h, -1.0 / h)
    } else {
        (0.0, 0.0)
    }
}

/// 1D enriched space: interior hats plus blended correctors.
#[derive(Clone, Debug)]
pub struct Space1 {
    mesh: Mesh1D,
    correctors: Vec<Corrector1d>,
}

impl Space1 {
    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn nodal_count(&self) -> usize {
        self.mesh.nodes().len() - 2
    }

    pub fn correctors(&self) -> &[Corrector1d] {
        &self.correctors
    }

    /// Mesh node index of nodal unknown `k`.
    pub fn node_of(&self, k: usize) -> usize {
        k + 1
    }

    /// Hat value and derivative for nodal unknown `k` at `x`.
    pub fn nodal_eval(&self, k: usize, x: f64) -> Result<(f64, f64), BasisError> {
        if k >= self.nodal_count() {
            return Err(BasisError::IndexOutOfRange {
                index: k,
                dim: self.nodal_count(),
            });
        }
        if mesh_excludes(&self.mesh, x) {
            return Err(BasisError::OutOfDomain(x));
        }
        Ok(hat_eval(&self.mesh, self.node_of(k), x))
    }
}

fn mesh_excludes(mesh: &Mesh1D, x: f64) -> bool {
    x < mesh.a() || x > mesh.b()
}

/// Descriptor of one 2D corrector in the tensor enrichment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corrector2d {
    /// `e_x(x) * hat_j(y)`: x-edge layer with tangential hat at interior
    /// y-node `j` (1-based mesh node index).
    XLayer { j: usize },
    /// `e_y(y) * hat_i(x)`.
    YLayer { i: usize },
    /// `e_x(x) * e_y(y)` corner term.
    Corner,
}

/// 2D enriched space on a tensor mesh.
///
/// The enrichment follows the layer expansion of the square problem:
/// tangential hats give the network one amplitude per edge node for
/// `u0(0, y) e^{-x/eps}` (and the y edge), plus the single corner product.
#[derive(Clone, Debug)]
pub struct Space2 {
    mesh: Mesh2D,
    ex: Corrector1d,
    ey: Corrector1d,
    correctors: Vec<Corrector2d>,
}

impl Space2 {
    pub fn mesh(&self) -> &Mesh2D {
        &self.mesh
    }

    pub fn ex(&self) -> &Corrector1d {
        &self.ex
    }

    pub fn ey(&self) -> &Corrector1d {
        &self.ey
    }

    pub fn correctors(&self) -> &[Corrector2d] {
        &self.correctors
    }

    pub fn nodal_count(&self) -> usize {
        self.mesh.interior_unknowns()
    }

    /// Grid position `(i, j)` of nodal unknown `k`.
    pub fn grid_of(&self, k: usize) -> (usize, usize) {
        let (ix, _) = self.mesh.interior_counts();
        (k % ix + 1, k / ix + 1)
    }

    pub fn nodal_eval(&self, k: usize, x: f64, y: f64) -> Result<(f64, [f64; 2]), BasisError> {
        if k >= self.nodal_count() {
            return Err(BasisError::IndexOutOfRange {
                index: k,
                dim: self.nodal_count(),
            });
        }
        if mesh_excludes(self.mesh.x(), x) {
            return Err(BasisError::OutOfDomain(x));
        }
        if mesh_excludes(self.mesh.y(), y) {
            return Err(BasisError::OutOfDomain(y));
        }
        let (i, j) = self.grid_of(k);
        let (vx, dx) = hat_eval(self.mesh.x(), i, x);
        let (vy, dy) = hat_eval(self.mesh.y(), j, y);
        Ok((vx * vy, [dx * vy, vx * dy]))
    }

    /// Value and gradient of corrector `c` at `(x, y)`.
    pub fn corrector_eval(&self, c: usize, x: f64, y: f64) -> (f64, [f64; 2]) {
        match self.correctors[c] {
            Corrector2d::XLayer { j } => {
                let (ev, ed) = self.ex.value_and_deriv(x);
                let (hv, hd) = hat_eval(self.mesh.y(), j, y);
                (ev * hv, [ed * hv, ev * hd])
            }
            Corrector2d::YLayer { i } => {
                let (ev, ed) = self.ey.value_and_deriv(y);
                let (hv, hd) = hat_eval(self.mesh.x(), i, x);
                (ev * hv, [hd * ev, hv * ed])
            }
            Corrector2d::Corner => {
                let (xv, xd) = self.ex.value_and_deriv(x);
                let (yv, yd) = self.ey.value_and_deriv(y);
                (xv * yv, [xd * yv, xv * yd])
            }
        }
    }
}

/// Enriched Galerkin space for either problem dimension.
///
/// Basis ordering is correctors first (matching the coefficient layout
/// `alpha_0, ..., alpha_{c-1}, alpha_nodal...`), then interior nodes.
#[derive(Clone, Debug)]
pub enum EnrichedSpace {
    One(Space1),
    Two(Space2),
}

impl EnrichedSpace {
    pub fn corrector_count(&self) -> usize {
        match self {
            EnrichedSpace::One(s) => s.correctors.len(),
            EnrichedSpace::Two(s) => s.correctors.len(),
        }
    }

    pub fn nodal_count(&self) -> usize {
        match self {
            EnrichedSpace::One(s) => s.nodal_count(),
            EnrichedSpace::Two(s) => s.nodal_count(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.corrector_count() + self.nodal_count()
    }

    pub fn as_1d(&self) -> Option<&Space1> {
        match self {
            EnrichedSpace::One(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_2d(&self) -> Option<&Space2> {
        match self {
            EnrichedSpace::Two(s) => Some(s),
            _ => None,
        }
    }
}

/// Builds the enriched space for `problem` on `mesh`.
///
/// Attaches one corrector for the 1D classes; for the square problem the
/// set `{e_x hat_j}_j + {e_y hat_i}_i + {e_x e_y}`, i.e. `2(n-1) + 1`
/// correctors on an `n x n` element mesh.
pub fn build_enriched_space(problem: &ProblemSpec, mesh: Mesh) -> Result<EnrichedSpace, BasisError> {
    match (problem.class, mesh) {
        (ProblemClass::Boundary1d, Mesh::One(m)) => {
            check_domain(&m, problem)?;
            let (c0, c1) = match problem.convection {
                Convection::Affine1d { c0, c1 } => (c0, c1),
                _ => unreachable!("validated by ProblemSpec"),
            };
            let (a, b) = problem.domain;
            // outflow side: characteristics run with the sign of b
            let kind = if c0 + c1 * a > 0.0 {
                CorrectorKind::BoundaryExp {
                    side: Side::Right,
                    rate: (c0 + c1 * b).abs() / problem.epsilon,
                }
            } else {
                CorrectorKind::BoundaryExp {
                    side: Side::Left,
                    rate: (c0 + c1 * a).abs() / problem.epsilon,
                }
            };
            Ok(EnrichedSpace::One(Space1 {
                correctors: alloc::vec![make_corrector(kind, (a, b))],
                mesh: m,
            }))
        }
        (ProblemClass::Interior1d, Mesh::One(m)) => {
            check_domain(&m, problem)?;
            let c1 = match problem.convection {
                Convection::Affine1d { c1, .. } => c1,
                _ => unreachable!("validated by ProblemSpec"),
            };
            // turning-point normalization: -eps u'' - (|c1| x) u' has
            // drift derivative |c1| at the turning point
            let kind = CorrectorKind::InteriorErf {
                center: 0.0,
                scale: math::sqrt(c1.abs() / (2.0 * problem.epsilon)),
            };
            Ok(EnrichedSpace::One(Space1 {
                correctors: alloc::vec![make_corrector(kind, problem.domain)],
                mesh: m,
            }))
        }
        (ProblemClass::Square2d, Mesh::Two(m)) => {
            let (bx, by) = match problem.convection {
                Convection::Const2d { bx, by } => (bx, by),
                _ => unreachable!("validated by ProblemSpec"),
            };
            let ex = make_corrector(
                CorrectorKind::BoundaryExp {
                    side: Side::Left,
                    rate: bx.abs() / problem.epsilon,
                },
                (m.x().a(), m.x().b()),
            );
            let ey = make_corrector(
                CorrectorKind::BoundaryExp {
                    side: Side::Left,
                    rate: by.abs() / problem.epsilon,
                },
                (m.y().a(), m.y().b()),
            );
            let (ix, iy) = m.interior_counts();
            let mut correctors = Vec::with_capacity(ix + iy + 1);
            for j in 1..=iy {
                correctors.push(Corrector2d::XLayer { j });
            }
            for i in 1..=ix {
                correctors.push(Corrector2d::YLayer { i });
            }
            correctors.push(Corrector2d::Corner);
            Ok(EnrichedSpace::Two(Space2 {
                mesh: m,
                ex,
                ey,
                correctors,
            }))
        }
        (class, Mesh::One(_)) => Err(BasisError::WrongMeshDimension {
            class,
            expected: "2D tensor",
        }),
        (class, Mesh::Two(_)) => Err(BasisError::WrongMeshDimension {
            class,
            expected: "1D",
        }),
    }
}

/// Plain nodal space (no enrichment) on the same contracts; used by the
/// reference solver and the ablation baseline.
pub fn build_nodal_space(mesh: Mesh) -> EnrichedSpace {
    match mesh {
        Mesh::One(m) => EnrichedSpace::One(Space1 {
            mesh: m,
            correctors: Vec::new(),
        }),
        Mesh::Two(m) => {
            // placeholder profiles are never evaluated with an empty list
            let ex = make_corrector(
                CorrectorKind::BoundaryExp {
                    side: Side::Left,
                    rate: 1.0,
                },
                (m.x().a(), m.x().b()),
            );
            let ey = make_corrector(
                CorrectorKind::BoundaryExp {
                    side: Side::Left,
                    rate: 1.0,
                },
                (m.y().a(), m.y().b()),
            );
            EnrichedSpace::Two(Space2 {
                mesh: m,
                ex,
                ey,
                correctors: Vec::new(),
            })
        }
    }
}

fn check_domain(mesh: &Mesh1D, problem: &ProblemSpec) -> Result<(), BasisError> {
    let (a, b) = problem.domain;
    if (mesh.a() - a).abs() > 1e-12 || (mesh.b() - b).abs() > 1e-12 {
        return Err(BasisError::DomainMismatch {
            mesh_a: mesh.a(),
            mesh_b: mesh.b(),
            a,
            b,
        });
    }
    Ok(())
}

/// Samples basis function `index` (correctors first) of a 1D space on a
/// uniform grid, as `x,value` CSV rows.
pub fn basis_profile_csv(space: &Space1, index: usize, resolution: usize) -> String {
    let (a, b) = (space.mesh.a(), space.mesh.b());
    let nc = space.correctors.len();
    let mut out = String::new();
    for p in 0..resolution {
        let x = a + (b - a) * p as f64 / (resolution - 1) as f64;
        let v = if index < nc {
            space.correctors[index].value(x)
        } else {
            hat_eval(&space.mesh, space.node_of(index - nc), x).0
        };
        let _ = writeln!(out, "{x},{v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_uniform_mesh_1d;
    use crate::testutil::{assert_abs, assert_close};

    fn exp1_corrector(eps: f64) -> Corrector1d {
        make_corrector(
            CorrectorKind::BoundaryExp {
                side: Side::Right,
                rate: 2.0 / eps,
            },
            (0.0, 1.0),
        )
    }

    #[test]
    fn blended_right_exp_matches_explicit_form() {
        let eps = 0.05;
        let c = exp1_corrector(eps);
        for x in [0.0, 0.3, 0.77, 0.99, 1.0] {
            let expected =
                math::exp(-2.0 * (1.0 - x) / eps) - (1.0 - x) * math::exp(-2.0 / eps) - x;
            assert_abs(c.value(x), expected, 1e-15);
        }
        assert_eq!(c.value(0.0), 0.0);
        assert_eq!(c.value(1.0), 0.0);
    }

    #[test]
    fn blended_erf_matches_explicit_form() {
        let eps = 0.01;
        let s = math::sqrt(1.0 / (2.0 * eps));
        let c = make_corrector(
            CorrectorKind::InteriorErf {
                center: 0.0,
                scale: s,
            },
            (-1.0, 1.0),
        );
        for x in [-1.0, -0.4, 0.0, 0.6, 1.0] {
            assert_abs(c.value(x), math::erf(s * x) - x * math::erf(s), 1e-15);
        }
        assert_eq!(c.value(0.0), 0.0);
        let (_, d0) = c.value_and_deriv(0.0);
        assert_close(d0, 2.0 * s / math::SQRT_PI - math::erf(s), 1e-14);
    }

    #[test]
    fn paradigm_corrector_matches_reference_form() {
        // e^{-(1+x)/eps} - (1 - (1 - e^{-2/eps})(x+1)/2) on (-1, 1)
        let eps = 0.1;
        let c = make_corrector(
            CorrectorKind::BoundaryExp {
                side: Side::Left,
                rate: 1.0 / eps,
            },
            (-1.0, 1.0),
        );
        for x in [-1.0, -0.9, 0.0, 0.5, 1.0] {
            let expected = math::exp(-(1.0 + x) / eps)
                - (1.0 - (1.0 - math::exp(-2.0 / eps)) * (x + 1.0) / 2.0);
            assert_abs(c.value(x), expected, 1e-15);
        }
        assert_eq!(c.value(-1.0), 0.0);
        assert_eq!(c.value(1.0), 0.0);
    }

    #[test]
    fn corrector_endpoints_vanish_across_epsilon_ladder() {
        for k in 1..=8 {
            let eps = libm::pow(10.0, -(k as f64));
            let right = exp1_corrector(eps);
            assert!(right.value(0.0).abs() <= 1e-13);
            assert!(right.value(1.0).abs() <= 1e-13);
            let erf_c = make_corrector(
                CorrectorKind::InteriorErf {
                    center: 0.0,
                    scale: math::sqrt(1.0 / (2.0 * eps)),
                },
                (-1.0, 1.0),
            );
            assert!(erf_c.value(-1.0).abs() <= 1e-13);
            assert!(erf_c.value(1.0).abs() <= 1e-13);
        }
    }

    #[test]
    fn tiny_eps_underflows_to_blend_only() {
        let c = exp1_corrector(1e-5);
        assert_abs(c.value(0.5), -0.5, 1e-15);
    }

    #[test]
    fn corrector_gradient_matches_finite_differences() {
        let h = 1e-6;
        for eps in [1e-1, 1e-2] {
            let cases = [
                exp1_corrector(eps),
                make_corrector(
                    CorrectorKind::InteriorErf {
                        center: 0.0,
                        scale: math::sqrt(1.0 / (2.0 * eps)),
                    },
                    (-1.0, 1.0),
                ),
            ];
            for c in cases {
                let (a, b) = c.domain();
                for i in 1..20 {
                    let x = a + (b - a) * i as f64 / 20.0;
                    let (_, d) = c.value_and_deriv(x);
                    let fd = (c.value(x + h) - c.value(x - h)) / (2.0 * h);
                    let denom = d.abs().max(1.0);
                    assert!(
                        (d - fd).abs() / denom <= 1e-6,
                        "eps {eps} x {x}: {d} vs {fd}"
                    );
                }
            }
        }
    }

    #[test]
    fn nodal_eval_is_kronecker_and_linear() {
        let problem = ProblemSpec::boundary_layer(0.1);
        let mesh = build_uniform_mesh_1d(0.0, 1.0, 4).unwrap();
        let space = build_enriched_space(&problem, Mesh::One(mesh)).unwrap();
        let s = space.as_1d().unwrap();
        // node at 0.5 is interior unknown 1
        let (v, _) = s.nodal_eval(1, 0.5).unwrap();
        assert_eq!(v, 1.0);
        let (v, d) = s.nodal_eval(1, 0.375).unwrap();
        assert_close(v, 0.5, 1e-15);
        assert_close(d, 4.0, 1e-15);
        for k in 0..s.nodal_count() {
            for m in 0..s.nodal_count() {
                let x = s.mesh().nodes()[m + 1];
                let (v, _) = s.nodal_eval(k, x).unwrap();
                assert_abs(v, if k == m { 1.0 } else { 0.0 }, 1e-15);
            }
        }
        assert!(matches!(
            s.nodal_eval(0, 1.5),
            Err(BasisError::OutOfDomain(_))
        ));
    }

    #[test]
    fn partition_of_unity_with_boundary_hats() {
        let mesh = build_uniform_mesh_1d(0.0, 1.0, 5).unwrap();
        for p in 0..=100 {
            let x = p as f64 / 100.0;
            let total: f64 = (0..mesh.nodes().len())
                .map(|m| hat_eval(&mesh, m, x).0)
                .sum();
            assert_abs(total, 1.0, 1e-13);
        }
    }

    #[test]
    fn enriched_space_dimensions() {
        let eps = 1e-3;
        let p1 = ProblemSpec::boundary_layer(eps);
        let m1 = build_uniform_mesh_1d(0.0, 1.0, 100).unwrap();
        let s1 = build_enriched_space(&p1, Mesh::One(m1)).unwrap();
        assert_eq!(s1.total_dim(), 100);
        assert_eq!(s1.corrector_count(), 1);

        let p2 = ProblemSpec::interior_layer(eps);
        let m2 = build_uniform_mesh_1d(-1.0, 1.0, 100).unwrap();
        let s2 = build_enriched_space(&p2, Mesh::One(m2)).unwrap();
        assert_eq!(s2.total_dim(), 100);

        let p3 = ProblemSpec::square(eps);
        let m3 = crate::geometry::build_tensor_mesh_2d(51, 51, None, None).unwrap();
        let s3 = build_enriched_space(&p3, Mesh::Two(m3)).unwrap();
        assert_eq!(s3.nodal_count(), 2500);
        assert_eq!(s3.corrector_count(), 2 * 50 + 1);
        assert_eq!(s3.total_dim(), 2601);
    }

    #[test]
    fn mismatched_mesh_dimension_rejected() {
        let p = ProblemSpec::square(1e-3);
        let m = build_uniform_mesh_1d(0.0, 1.0, 4).unwrap();
        assert!(matches!(
            build_enriched_space(&p, Mesh::One(m)),
            Err(BasisError::WrongMeshDimension { .. })
        ));
    }

    #[test]
    fn all_2d_basis_functions_vanish_on_edges() {
        let p = ProblemSpec::square(1e-2);
        let m = crate::geometry::build_tensor_mesh_2d(6, 6, None, None).unwrap();
        let s = build_enriched_space(&p, Mesh::Two(m)).unwrap();
        let s2 = s.as_2d().unwrap();
        let mut boundary_points = Vec::new();
        for t in 0..=24 {
            let t = t as f64 / 24.0;
            boundary_points.push((t, 0.0));
            boundary_points.push((t, 1.0));
            boundary_points.push((0.0, t));
            boundary_points.push((1.0, t));
        }
        for &(x, y) in &boundary_points {
            for c in 0..s2.correctors().len() {
                let (v, _) = s2.corrector_eval(c, x, y);
                assert!(v.abs() <= 1e-13, "corrector {c} at ({x}, {y}): {v}");
            }
            for k in 0..s2.nodal_count() {
                let (v, _) = s2.nodal_eval(k, x, y).unwrap();
                assert!(v.abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn q1_partition_of_unity() {
        let m = crate::geometry::build_tensor_mesh_2d(5, 4, None, None).unwrap();
        for px in 0..=20 {
            for py in 0..=20 {
                let (x, y) = (px as f64 / 20.0, py as f64 / 20.0);
                let mut total = 0.0;
                for i in 0..m.x().nodes().len() {
                    for j in 0..m.y().nodes().len() {
                        total += hat_eval(m.x(), i, x).0 * hat_eval(m.y(), j, y).0;
                    }
                }
                assert_abs(total, 1.0, 1e-13);
            }
        }
    }

    #[test]
    fn basis_profile_csv_has_requested_rows() {
        let p = ProblemSpec::boundary_layer(0.1);
        let m = build_uniform_mesh_1d(0.0, 1.0, 4).unwrap();
        let s = build_enriched_space(&p, Mesh::One(m)).unwrap();
        let csv = basis_profile_csv(s.as_1d().unwrap(), 0, 11);
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.starts_with("0,"));
    }
}
