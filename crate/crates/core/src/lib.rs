//! Exact-arithmetic toolkit for the rational cohomology of oriented isotropic
//! Grassmannians `I~(2n,k)`, oriented real Grassmannians `RG~(m,l)` and complex
//! Grassmannians, together with the Brouwer-degree obstruction machinery built
//! on top of the ring invariants.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! polyring  ->  idealalg  ->  presentations  ->  obstruction
//!                  schubert (independent oracle)      |
//!                  exprparse (CLI expressions) -------+
//! ```
//!
//! All coefficients are exact rationals; every comparison in the test suites
//! is an exact equality.

pub mod exprparse;
pub mod idealalg;
pub mod obstruction;
pub mod polyring;
pub mod presentations;
pub mod schubert;
pub mod series;

pub use polyring::{GeneratorAlphabet, GradedPoly, Monomial, Rational};
pub use presentations::{FactSheet, Presentation, SieveTrace, SpaceId};
pub use series::PoincareSeries;
