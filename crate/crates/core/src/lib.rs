//! Numerical tools for singular probability measures on the circle.
//!
//! The library builds, for an atomic or self-similar singular measure, the
//! auxiliary row-action sequence `{g_n}` (and its dual families), the Cauchy
//! and Herglotz transforms, the inner function attached to the measure, and
//! the reproducing kernels these objects generate. Everything is carried out
//! in truncated complex power-series arithmetic with explicit truncation
//! orders and tail bounds, so each identity the theory promises can be
//! checked at desk scale.
//!
//! Module map:
//!
//! - [`series`]: truncated power series, disc points, tail-bounded evaluation;
//! - [`measures`]: measure descriptors, moment tables, quadrature rules;
//! - [`kaczmarz`]: the auxiliary sequence by two routes, Gram matrices,
//!   expansions with energy checks;
//! - [`transforms`]: Cauchy transform, normalized Cauchy transform, inner
//!   function from a measure and back;
//! - [`kernels`]: closed-form and double-series kernels, projections, layered
//!   combinations, PSD and reproduction checks;
//! - [`duals`]: mixture and density-weighted dual families, frame bounds,
//!   coefficient maps into the Hardy space;
//! - [`clark`]: rotated-inner-function measure families and their averaging
//!   identities;
//! - [`wold`]: shift-style layer decompositions along powers of an inner
//!   function;
//! - [`linalg`]: the small dense Hermitian eigen/solve kernels the above use.
//!
//! All value types are immutable after construction and safe to share across
//! threads.

pub mod clark;
pub mod duals;
pub mod kaczmarz;
pub mod kernels;
pub mod linalg;
pub mod measures;
pub mod series;
pub mod transforms;
pub mod wold;

pub use num_complex::Complex64;
