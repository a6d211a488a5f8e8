//! Quasiconformal self-maps of the unit disk, built around one extremal
//! family and the machinery needed to verify its Hölder behavior.
//!
//! The library has four layers:
//!
//! * [`geometry`]: closed-form construction of the extremal maps. An ellipse
//!   with foci ±2 is deformed by conjugating a radial stretch through the
//!   Joukowski map, then normalized back to the disk by affine maps. Exact
//!   formulas for the Hölder quotient and a dilatation bound come with it.
//! * [`transforms`] and [`solver`]: a periodic spectral realization of the
//!   planar Cauchy and Beurling transforms, and a Neumann-series solver for
//!   the Beltrami equation `f_z̄ = μ f_z` under the principal normalization
//!   `f(z) = z + O(1/z)`. The solver powers a holomorphic family of maps
//!   `f^λ` obtained by scaling the coefficient.
//! * [`verify`]: sup-quotient search for Hölder constants, dilatation
//!   estimation, a Koebe-type bound probe, a Harnack-step probe, and the
//!   table of comparison constants (16, 16^{1−1/K}, 4^{1−1/K}, and the
//!   two-dimensional Vuorinen-Zhang value).
//! * [`cli`]: a deterministic command-line front end emitting CSV/JSON.
//!
//! The headline quantity throughout is `4^{1−1/K}`: every K-quasiconformal
//! self-map of the disk fixing the boundary pointwise (and every principal
//! map conformal outside the disk) satisfies
//! `|f(z) − f(w)| ≤ 4^{1−1/K} |z−w|^{1/K}`, and the extremal family shows
//! the constant cannot be lowered. The tests exercise both directions at
//! grid scale.

pub mod cli;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod map;
pub mod solver;
pub mod transforms;
pub mod verify;

pub use error::{QcError, Result};
pub use num_complex::Complex64;
