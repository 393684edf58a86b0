//! Minimal-surface curvature data from holomorphic generators.
//!
//! A single holomorphic function `w` determines a positive density
//! `nu = 4|w'|^2 / (|w|^2 + 1)^2` solving the Liouville-type equation
//! `lap ln(nu) + 2 nu = 0`; a pair `(w1, w2)` determines a Gauss/normal
//! curvature pair `(K, kappa)` of a minimal surface in four-space, and the
//! same `w` feeds the Weierstrass construction of a minimal patch in
//! three-space. This crate provides:
//!
//! - [`expr`]: parsing of holomorphic expressions and exact first-derivative
//!   evaluation by forward-mode jets,
//! - [`geometry`]: the closed-form curvature formulas, the
//!   `alpha/beta` and `p/q` substitutions, and the Moebius/SU(2) gauge
//!   transformations relating equivalent generators,
//! - [`numerics`]: grid sampling with singularity masking, the five-point
//!   Laplacian, and residual reports certifying each curvature PDE,
//! - [`surface`]: integration of the Weierstrass data into a surface patch,
//!   conformality/harmonicity checks, and OBJ/PLY mesh export.
//!
//! All types are immutable after construction and every operation is a pure
//! function of its inputs, so everything here may be called concurrently
//! without synchronization.

pub mod expr;
pub mod geometry;
pub mod numerics;
pub mod surface;

pub use num_complex::Complex64;
