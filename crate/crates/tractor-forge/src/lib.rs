//! Numerical verification engine for CR and conformal tractor calculus.
//!
//! The engine builds pseudohermitian geometry on explicit embedded
//! hypersurfaces in C^{n+1}, the associated standard tractor bundles, the
//! circle-bundle Lorentzian conformal structure over them, and the conformal
//! tractor calculus upstairs — and then verifies, numerically at sampled
//! points, the structural identities tying the two calculi together
//! (holonomy reductions, normality, splitting-operator compatibility,
//! symmetry decompositions).
//!
//! Everything is computed in truncated Taylor arithmetic ([`jet::Jet`]) on
//! smooth ambient extensions of the fields, so there is no symbolic algebra
//! and no chart gluing; each check evaluates a tensor identity at concrete
//! points and reports the worst residual.

pub mod dsl;
pub mod error;
pub mod jet;

pub use error::{Error, Result};
