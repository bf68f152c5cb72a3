//! Graded commutative algebra over `F_p[x0..x4]` and the quadric
//! hypersurface ring `F_p[x0..x4]/(q)`: Gröbner bases, free resolutions,
//! Hilbert functions, maximal Cohen–Macaulay modules and matrix
//! factorizations, and liaison of curves.

pub mod error;
pub mod field;
pub mod free;
pub mod groebner;
pub mod hilbert;
pub mod liaison;
pub mod linalg;
pub mod mcm;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use free::{FreeModule, GradedMap, Vector};
pub use groebner::{GroebnerBasis, Ideal};
pub use module::GradedModule;
pub use monomial::{Monomial, TermOrder};
pub use poly::Polynomial;
pub use ring::Ring;
