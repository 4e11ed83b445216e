//! Constant dimension subspace codes over finite fields.
//!
//! The crate builds explicit constant dimension codes (lifted MRD, linkage,
//! and two parallel linkage variants), evaluates the matching lower bounds on
//! the maximum code size A_q(n,d,k) exactly, emits replayable bound
//! certificates, and verifies minimum subspace distance by brute force.
//!
//! Modules, bottom up:
//!
//! - [`field`]: arithmetic in F_{p^e} and extensions F_{q^m};
//! - [`matrix`]: dense matrices over a field, rref and rank;
//! - [`rankmetric`]: Gaussian binomials, MRD code sizes, the Delsarte rank
//!   distribution, explicit Gabidulin codes, rank-restricted subcodes;
//! - [`subspace`]: canonical subspaces, the subspace metric, constant
//!   dimension codes, enumeration of all subspaces of small spaces;
//! - [`verify`]: exhaustive and seeded-sample pairwise distance verification;
//! - [`codefile`]: the plain-text code file format;
//! - [`construct`]: the code constructions;
//! - [`bounds`]: the registry of known values, the bound formulas, the
//!   optimizing `best_bound` search, and bound certificates.
//!
//! Heavy inner loops (pairwise verification, histogram and bound sweeps) run
//! on rayon when the default `parallel` feature is enabled and fall back to
//! sequential loops without it; results are identical either way.

pub mod bounds;
pub mod codefile;
pub mod construct;
pub mod error;
pub mod field;
pub mod matrix;
pub mod rankmetric;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
