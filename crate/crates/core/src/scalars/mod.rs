//! Exact scalars: the cyclotomic field, polynomials and matrices over it,
//! roots in the field and Jordan data.

pub mod cyclo;
pub mod jordan;
pub mod literal;
pub mod matrix;
pub mod poly;
pub mod roots;

pub use cyclo::{cyclo_embed, cyclotomic_poly, euler_phi, CycloScalar};
pub use jordan::{jordan_decompose, JordanType};
pub use literal::parse_scalar;
pub use matrix::{companion, jordan_block, matrix_sigma_twist, Matrix};
pub use poly::{poly_power_bracket, Poly};
pub use roots::roots_in_field;
