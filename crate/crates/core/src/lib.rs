//! Projective lines over matrix rings `K^{n×n}` and over the Jordan system
//! of `σ`-Hermitian matrices, for small finite fields `K` with involution.
//!
//! * [`galois`]: the fields `GF(p^k)` and their involutions.
//! * [`matrix`]: exact dense matrices and canonical subspaces.
//! * [`projline`]: points of `P(K^{n×n})`, the distant and adjacency
//!   relations, Bartolone's parametrisation and its applications.
//! * [`hermitian`]: the form `β`, totally isotropic subspaces, common
//!   complements and the decomposition of isotropic points into Hermitian
//!   parameters.
//! * [`harness`]: budgeted exhaustive sweeps, reports and relation graphs.

pub mod error;
pub mod galois;
pub mod harness;
pub mod hermitian;
pub mod matrix;
pub mod projline;

pub use error::{Error, Result};
pub use galois::{Elem, Field, Involution};
pub use hermitian::{IsotropicPoint, SesquilinearForm};
pub use matrix::{Matrix, MatrixJson, Subspace};
pub use projline::{BartolonePair, JordanKind, JordanMap, SubspacePoint};
