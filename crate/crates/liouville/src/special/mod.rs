//! Special functions: complex log-Γ, ℓ(z) = Γ(z)/Γ(1−z), Zamolodchikov's
//! Υ_{γ/2}, and the DOZZ three-point structure constant.

mod dozz;
mod gamma;
mod upsilon;

pub use dozz::{dozz, dozz_ln, LnDozz};
pub use gamma::{ell, ln_ell, log_gamma, LnEll};
pub use upsilon::{
    upsilon, upsilon_full, upsilon_ln, upsilon_prime_zero, upsilon_zero_lattice_hit, Upsilon,
};
