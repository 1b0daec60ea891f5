//! Exact computer algebra for rack-type braided vector spaces.
//!
//! The crate covers finite racks and their rational 2-cocycles, the braided
//! vector spaces `V(X,q)` and `W(q,X)`, quantum symmetrizers, the quadratic
//! relations of the associated Nichols algebras, a noncommutative Gröbner
//! basis engine over the rationals, the deformed (lifted) relation ideals and
//! Yetter-Drinfeld realizations over `kG` and `k^G`.
//!
//! Everything is exact: coefficients are arbitrary precision rationals.

pub mod braided;
pub mod builtin;
pub mod cocycle;
pub mod deform;
pub mod error;
pub mod freealg;
pub mod grouprealize;
pub mod perm;
pub mod quadrel;
pub mod rack;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Q;
