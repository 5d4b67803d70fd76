//! Generalized difference sets, g-Sidon sets and autocorrelation integrals.
//!
//! The crate is organised in four layers:
//!
//! * [`sets`]: integer sets and subsets of finite abelian groups, exact
//!   representation counts `r_A`/`q_A`, certificates and trivial bounds.
//! * [`constructions`]: parabola unions in `(Z/pZ)^2`, the lift to cyclic
//!   groups, the blow-up composition, and seeded random constructions with
//!   Chernoff-bound validation.
//! * [`bridge`]: step functions built from sets, exact autocorrelation and
//!   autoconvolution, local averages and inclusion probabilities, and the
//!   torus analogue for finite groups.
//! * [`extremal`]: exact small values of `η`, `γ`, `β`, `α` by exhaustive
//!   search, and ratio tables.
//!
//! All certificate arithmetic is exact. Data-parallel loops run on rayon
//! when the `parallel` feature is enabled (the default); see [`par`].

pub mod bridge;
pub mod constructions;
pub mod error;
pub mod extremal;
pub mod par;
pub mod rational;
pub mod sets;

pub use error::{Error, Result};
pub use par::Execution;
