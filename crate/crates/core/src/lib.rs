//! Finite idempotent left non-degenerate set-theoretic solutions of the
//! Yang–Baxter equation: verification, structural invariants, the
//! structure monoid, quadratic rewriting and exhaustive classification.
//!
//! A solution `r(x, y) = (λ_x(y), ρ_y(x))` on `X = {0, …, n-1}` is stored
//! as its λ-permutations; `ρ` is determined by `ρ_y(x) = q(λ_x(y))` with
//! `q(x) = λ_x⁻¹(x)`.
//!
//! ```
//! use ybx_core::{fixtures, monoid, MElem};
//!
//! let s = fixtures::z2();
//! assert_eq!(s.q(), &[0, 0]);
//! assert_eq!(monoid::mul(&s, MElem::new(1, 1), MElem::new(1, 1)), MElem::new(2, 0));
//! ```

pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod monoid;
pub mod perm;
pub mod search;
pub mod solution;

pub use error::{Discrepancy, Error, Result};
pub use groebner::{RewriteSystem, Rule};
pub use invariants::{Descriptor, FineqReport};
pub use monoid::{GQElem, MElem};
pub use perm::{Perm, Point};
pub use search::{ClassificationRecord, EnumOptions};
pub use solution::{canonical_form, check, iso_check, RMap, Solution, SolutionFile, VerificationReport};
