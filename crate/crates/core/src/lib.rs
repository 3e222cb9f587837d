//! Corrector-enriched finite element solvers and a residual-trained
//! coefficient network for singularly perturbed convection-diffusion
//! problems.
//!
//! The solution of `-eps div(a grad u) + b . grad u = f` develops boundary
//! or interior layers of width O(eps) (O(sqrt(eps)) at turning points) as
//! `eps -> 0`. This crate augments a standard P1/Q1 Galerkin space with
//! analytically derived exp/erf corrector functions so that a coarse mesh
//! resolves the layer exactly, and trains a small network to map a
//! discretized forcing to the expansion coefficients using only the
//! Galerkin residual as the loss (no solution data).
//!
//! Pipeline:
//! 1. [`geometry`] builds uniform, Shishkin, and tensor-product meshes.
//! 2. [`basis`] evaluates nodal hat/bilinear functions and blended
//!    corrector functions, wired together into an enriched space.
//! 3. [`assembly`] produces the Galerkin matrix and per-forcing load
//!    vectors, with closed-form layer integrals and layer-graded adaptive
//!    quadrature ([`quadrature`]) as the cross-check route.
//! 4. [`solvers`] computes direct enriched-FEM solutions ([`linalg`] LU)
//!    and high-resolution Shishkin reference solutions.
//! 5. [`sampling`], [`network`], [`training`] draw random forcings and fit
//!    the coefficient network by minimizing the mean squared residual.
//! 6. [`evaluation`] measures relative L2/H1 errors and runs the
//!    experiment, sweep, ablation, and capacity-ladder harnesses.
//!
//! The crate is `no_std`-compatible (`alloc` required); file formats, the
//! CLI, and wall-clock timing live in the companion `efeonet` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod assembly;
pub mod basis;
pub mod checkpoint;
pub mod evaluation;
pub mod geometry;
mod kernels;
pub mod linalg;
mod math;
pub mod network;
pub mod quadrature;
pub mod rng;
pub mod sampling;
pub mod solvers;
pub mod training;

/// Wall-clock source for training histories and experiment reports.
///
/// The core crate never reads a clock itself; callers hand one in. The
/// default [`NullClock`] returns 0 so that library-level runs are fully
/// deterministic.
pub trait Clock {
    /// Seconds since an arbitrary epoch fixed for the lifetime of `self`.
    fn now_secs(&self) -> f64;
}

/// A clock that always reads 0 (deterministic output).
#[derive(Clone, Copy, Debug, Default)]
pub struct NullClock;

impl Clock for NullClock {
    fn now_secs(&self) -> f64 {
        0.0
    }
}
