pub mod analytic;
pub mod formula;
pub mod lp;
pub mod simplex;
pub mod table;

pub use analytic::{kappa_upper_bound, residue_from_invariants, KappaInvariants};
pub use formula::{basic_inequality_lhs, bs_ratio, Alpha, InequalityCoefficients, PhiVector};
pub use lp::{lp_upper_bound, ArchBounds, BsBounds};
pub use table::{emit_table, Table, TableConfig, TableInput};
