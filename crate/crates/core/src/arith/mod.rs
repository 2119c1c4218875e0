pub mod intpoly;
pub mod modpoly;
pub mod real;
pub mod sturm;

pub use intpoly::IntPoly;
pub use modpoly::{factor_mod_p, is_square_in_residue_field, ModFactorization, ModPoly, Quadratic};
pub use real::Real;
pub use sturm::{isolate_real_roots, sign_at_root, sturm_real_root_count, RootInterval};
