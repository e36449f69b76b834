//! Exact arithmetic: prime fields, polynomials over them, extension fields
//! and primitive roots of unity.

mod ext;
mod matrix;
mod poly;
mod prime;

pub use ext::{find_irreducible, is_irreducible, primitive_pth_root, ExtField, ExtFieldElement, PthRoot};
pub use matrix::Echelon;
pub use poly::Polynomial;
pub use prime::{
    field_inverse, is_prime, mod_pow, multiplicative_order, smallest_primitive_root, PrimeField,
    PrimeFieldElement,
};
