//! Exact linear algebra over `Z/n`.

mod howell;
mod matrix;
mod snf;
mod solve;

pub use howell::{howell_form, HowellForm, Pivot};
pub use matrix::MatZn;
pub use snf::{is_projective, module_structure, InvariantFactors};
pub use solve::{infeasibility_certificate, kernel_basis, solve_linear, Infeasibility};
