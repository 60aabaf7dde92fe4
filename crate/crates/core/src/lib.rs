//! Schubert-calculus intersection numbers as saturated-chain counts, and
//! exhaustive finite-field certification that general simple Schubert
//! conditions meet transversally.
//!
//! * [`combinat`]: index posets, cover relations, chain counting.
//! * [`ffalg`]: prime-field linear algebra and point enumeration.
//! * [`geometry`]: Plücker coordinates, incidence, torus actions, tangent functionals.
//! * [`verifier`]: instance construction, solving, transversality certificates, reports.

pub mod combinat;
pub mod error;
pub mod ffalg;
pub mod geometry;
pub mod verifier;

pub use error::{Error, Result};
