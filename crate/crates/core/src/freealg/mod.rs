//! Free associative algebra over Q and noncommutative Gröbner bases.

mod automaton;
mod groebner;
mod io;
mod poly;

pub use automaton::QuotientDim;
pub use groebner::{
    groebner, groebner_default, GbStatus, GroebnerBasis, GroebnerConfig, DEFAULT_MAX_BASIS,
    DEFAULT_MAX_DEG,
};
pub use io::{GbFile, IdealFile, TermJson};
pub use poly::{FreePoly, Letter, Word};
