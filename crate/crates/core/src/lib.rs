//! Exact computations with `sl₂ ⊗ ℂ[t]/tⁿ` fusion products and the Schubert
//! varieties they define.
//!
//! * [`linalg`] – sparse rational row reduction.
//! * [`fock`] – finite wedge models of the fermionic space and the currents.
//! * [`fusion`] – the modules `M^A`, submodules `S_{i,i+1}(A)`, characters.
//! * [`types`] – compositions, the type order, Poincaré polynomials.
//! * [`schubert`] – isomorphism and morphism predicates, line bundles, flags.
//! * [`verlinde`] – the level-k fusion ring and limit multiplicities.
//! * [`acceptance`] – the verification suite shared by tests and the CLI.

pub mod acceptance;
pub mod error;
pub mod fock;
pub mod fusion;
pub mod linalg;
pub mod schubert;
pub mod types;
pub mod verlinde;

pub use error::{Error, Result};
