//! 1D uniform and Shishkin meshes, and 2D tensor-product meshes.
//!
//! Shishkin meshes are piecewise-uniform layer-adapted meshes: half the
//! elements are packed into a band of width `tau = (sigma*eps/beta) ln n`
//! against the layer boundary (clamped to half the domain), the rest are
//! uniform elsewhere. Interior (turning-point) layers use the sqrt(eps)
//! scaling `tau = sigma*sqrt(eps) ln n` because the erf layer has width
//! O(sqrt(eps)).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::math;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GeometryError {
    #[error("invalid interval: a = {a} must be < b = {b}")]
    InvalidInterval { a: f64, b: f64 },
    #[error("element count {n} too small (need at least {min})")]
    TooFewElements { n: usize, min: usize },
    #[error("Shishkin element count {n} must be divisible by {divisor}")]
    BadShishkinCount { n: usize, divisor: usize },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("interior layer center {center} must lie strictly inside ({a}, {b})")]
    CenterOutsideDomain { center: f64, a: f64, b: f64 },
    #[error("coordinate array for axis {axis} is not strictly increasing at position {position}")]
    NonMonotoneCoordinates { axis: char, position: usize },
    #[error("coordinate array for axis {axis} has {got} nodes, expected {expected}")]
    CoordinateCountMismatch { axis: char, got: usize, expected: usize },
}

/// A 1D mesh: strictly increasing node coordinates spanning `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh1D {
    nodes: Vec<f64>,
}

impl Mesh1D {
    /// Wraps an existing strictly increasing coordinate array.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self, GeometryError> {
        if nodes.len() < 3 {
            return Err(GeometryError::TooFewElements {
                n: nodes.len().saturating_sub(1),
                min: 2,
            });
        }
        for (i, w) in nodes.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(GeometryError::NonMonotoneCoordinates {
                    axis: 'x',
                    position: i + 1,
                });
            }
        }
        Ok(Mesh1D { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Indices of the two Dirichlet endpoint nodes.
    pub fn boundary_indices(&self) -> (usize, usize) {
        (0, self.nodes.len() - 1)
    }

    pub fn a(&self) -> f64 {
        self.nodes[0]
    }

    pub fn b(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn element_width(&self, e: usize) -> f64 {
        self.nodes[e + 1] - self.nodes[e]
    }

    /// Global mesh size h = max over element widths.
    pub fn h_max(&self) -> f64 {
        (0..self.element_count())
            .map(|e| self.element_width(e))
            .fold(0.0, f64::max)
    }

    /// Element `e` with `nodes[e] < x <= nodes[e+1]` (left-element
    /// convention at shared nodes; `x == a` maps to element 0). `None`
    /// outside the closed domain.
    pub fn element_containing(&self, x: f64) -> Option<usize> {
        if x < self.a() || x > self.b() {
            return None;
        }
        let idx = self.nodes.partition_point(|&n| n < x);
        Some(if idx == 0 { 0 } else { idx - 1 })
    }

    /// One coordinate per line, for plot emission.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for x in &self.nodes {
            let _ = writeln!(out, "{x}");
        }
        out
    }
}

/// Which part of the domain carries the layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Layer {
    Left,
    Right,
    Both,
    /// Turning-point layer centered at the given coordinate.
    Interior(f64),
}

/// Parameters of a piecewise-uniform Shishkin mesh.
#[derive(Clone, Copy, Debug)]
pub struct ShishkinSpec {
    /// Even element count (divisible by 4 for `Both`/`Interior`).
    pub n: usize,
    /// Mesh constant multiplying `eps ln n`; 2 resolves P1 convergence.
    pub sigma: f64,
    /// Lower bound of |b| near the layer.
    pub beta: f64,
    pub layer: Layer,
}

impl ShishkinSpec {
    pub fn new(n: usize, layer: Layer) -> Self {
        ShishkinSpec {
            n,
            sigma: 2.0,
            beta: 1.0,
            layer,
        }
    }

    /// Transition width before clamping: `(sigma*eps/beta) ln n` for
    /// boundary layers, `sigma*sqrt(eps) ln n` for interior layers.
    pub fn raw_tau(&self, eps: f64) -> f64 {
        let ln_n = math::ln(self.n as f64);
        match self.layer {
            Layer::Interior(_) => self.sigma * math::sqrt(eps) * ln_n,
            _ => self.sigma * eps / self.beta * ln_n,
        }
    }
}

/// `n+1` equally spaced nodes on `[a, b]`.
pub fn build_uniform_mesh_1d(a: f64, b: f64, n: usize) -> Result<Mesh1D, GeometryError> {
    if !(a < b) {
        return Err(GeometryError::InvalidInterval { a, b });
    }
    if n < 2 {
        return Err(GeometryError::TooFewElements { n, min: 2 });
    }
    let mut nodes = Vec::with_capacity(n + 1);
    for i in 0..=n {
        nodes.push(a + (b - a) * i as f64 / n as f64);
    }
    nodes[0] = a;
    nodes[n] = b;
    Mesh1D::from_nodes(nodes)
}

/// Appends the uniform subdivision of `(x0, x1]` into `m` elements.
fn push_uniform_segment(nodes: &mut Vec<f64>, x0: f64, x1: f64, m: usize) {
    for i in 1..=m {
        nodes.push(x0 + (x1 - x0) * i as f64 / m as f64);
    }
    let last = nodes.len() - 1;
    nodes[last] = x1;
}

/// Piecewise-uniform layer-adapted mesh on `[a, b]`.
///
/// Boundary layers put `n/2` elements in the band of width `tau` and `n/2`
/// elsewhere (`n/4` per band for `Both`); an interior layer gets `n/2`
/// elements in `[c-tau, c+tau]` and `n/4` on each side. `tau` clamps to
/// half the domain (quarter for two-sided/interior), which degenerates to
/// the uniform fallback when eps is large.
pub fn build_shishkin_mesh_1d(
    a: f64,
    b: f64,
    spec: &ShishkinSpec,
    eps: f64,
) -> Result<Mesh1D, GeometryError> {
    if !(a < b) {
        return Err(GeometryError::InvalidInterval { a, b });
    }
    if !(eps > 0.0) {
        return Err(GeometryError::NonPositiveEpsilon(eps));
    }
    let n = spec.n;
    let length = b - a;
    let raw = spec.raw_tau(eps);
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(a);
    match spec.layer {
        Layer::Left => {
            if n < 2 || n % 2 != 0 {
                return Err(GeometryError::BadShishkinCount { n, divisor: 2 });
            }
            let tau = raw.min(0.5 * length);
            push_uniform_segment(&mut nodes, a, a + tau, n / 2);
            push_uniform_segment(&mut nodes, a + tau, b, n / 2);
        }
        Layer::Right => {
            if n < 2 || n % 2 != 0 {
                return Err(GeometryError::BadShishkinCount { n, divisor: 2 });
            }
            let tau = raw.min(0.5 * length);
            push_uniform_segment(&mut nodes, a, b - tau, n / 2);
            push_uniform_segment(&mut nodes, b - tau, b, n / 2);
        }
        Layer::Both => {
            if n < 4 || n % 4 != 0 {
                return Err(GeometryError::BadShishkinCount { n, divisor: 4 });
            }
            let tau = raw.min(0.25 * length);
            push_uniform_segment(&mut nodes, a, a + tau, n / 4);
            push_uniform_segment(&mut nodes, a + tau, b - tau, n / 2);
            push_uniform_segment(&mut nodes, b - tau, b, n / 4);
        }
        Layer::Interior(center) => {
            if n < 4 || n % 4 != 0 {
                return Err(GeometryError::BadShishkinCount { n, divisor: 4 });
            }
            if !(a < center && center < b) {
                return Err(GeometryError::CenterOutsideDomain { center, a, b });
            }
            let tau = raw.min(0.5 * (center - a).min(b - center));
            push_uniform_segment(&mut nodes, a, center - tau, n / 4);
            push_uniform_segment(&mut nodes, center - tau, center + tau, n / 2);
            push_uniform_segment(&mut nodes, center + tau, b, n / 4);
        }
    }
    Mesh1D::from_nodes(nodes)
}

/// Tensor-product Q1 mesh: every cell is `[x_i, x_{i+1}] x [y_j, y_{j+1}]`.
///
/// Boundary nodes carry no unknown (homogeneous Dirichlet); interior node
/// `(i, j)` maps to unknown `(j-1)*(nx-1) + (i-1)` with `nx` elements per
/// x row.
#[derive(Clone, Debug)]
pub struct Mesh2D {
    x: Mesh1D,
    y: Mesh1D,
}

impl Mesh2D {
    pub fn x(&self) -> &Mesh1D {
        &self.x
    }

    pub fn y(&self) -> &Mesh1D {
        &self.y
    }

    pub fn cell_count(&self) -> usize {
        self.x.element_count() * self.y.element_count()
    }

    /// Cells in row-major (y-outer) order as `(ex, ey)` element pairs.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nx = self.x.element_count();
        let ny = self.y.element_count();
        (0..ny).flat_map(move |ey| (0..nx).map(move |ex| (ex, ey)))
    }

    pub fn interior_counts(&self) -> (usize, usize) {
        (self.x.element_count() - 1, self.y.element_count() - 1)
    }

    pub fn interior_unknowns(&self) -> usize {
        let (ix, iy) = self.interior_counts();
        ix * iy
    }

    /// Unknown index of grid node `(i, j)`; `None` on the boundary.
    pub fn interior_node_index(&self, i: usize, j: usize) -> Option<usize> {
        let (ix, iy) = self.interior_counts();
        if i == 0 || j == 0 || i > ix || j > iy {
            return None;
        }
        Some((j - 1) * ix + (i - 1))
    }
}

/// Builds a tensor mesh with `nx` by `ny` elements, from the given
/// coordinate arrays or uniform on `[0, 1]` when absent.
pub fn build_tensor_mesh_2d(
    nx: usize,
    ny: usize,
    x_nodes: Option<&[f64]>,
    y_nodes: Option<&[f64]>,
) -> Result<Mesh2D, GeometryError> {
    let make_axis = |axis: char, n: usize, coords: Option<&[f64]>| -> Result<Mesh1D, GeometryError> {
        match coords {
            None => build_uniform_mesh_1d(0.0, 1.0, n),
            Some(c) => {
                if c.len() != n + 1 {
                    return Err(GeometryError::CoordinateCountMismatch {
                        axis,
                        got: c.len(),
                        expected: n + 1,
                    });
                }
                for (i, w) in c.windows(2).enumerate() {
                    if !(w[1] > w[0]) {
                        return Err(GeometryError::NonMonotoneCoordinates {
                            axis,
                            position: i + 1,
                        });
                    }
                }
                Mesh1D::from_nodes(c.to_vec())
            }
        }
    };
    if nx < 2 {
        return Err(GeometryError::TooFewElements { n: nx, min: 2 });
    }
    if ny < 2 {
        return Err(GeometryError::TooFewElements { n: ny, min: 2 });
    }
    Ok(Mesh2D {
        x: make_axis('x', nx, x_nodes)?,
        y: make_axis('y', ny, y_nodes)?,
    })
}
