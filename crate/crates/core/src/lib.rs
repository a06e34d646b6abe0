//! Weight modules over rank-one generalized Weyl algebras on a finite orbit:
//! exact construction, tensor products, decompositions and Grothendieck rings.

pub mod acceptance;
pub mod error;
pub mod scalars;
pub mod split;

pub use error::{ErrorClass, GwaError, Result};
pub use scalars::{CycloScalar, JordanType, Matrix, Poly};
pub mod graphmod;
pub mod groth;
pub mod modules;
pub mod oracle;
pub mod orbit;
pub mod sample;
pub mod tensor;
