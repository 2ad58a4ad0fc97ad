//! Dense complex-matrix toolkit for generalized Drazin (GD) inverses and the
//! matrix classes built from them: GD-star, dual GD-star, GD-star-one,
//! GDMP/MPGD, Drazin-star, together with the decompositions behind their
//! representations, the partial orders they induce, order/additive laws, a
//! perturbation result, linear-system applications, and a residual-checked
//! fuzzing harness.
//!
//! Every construction is verified against the defining matrix equations with
//! explicit residual tolerances; nothing is trusted symbolically.

pub mod cli;
pub mod decomp;
pub mod error;
pub mod geninv;
pub mod harness;
pub mod io;
pub mod laws;
pub mod matcore;
pub mod orders;
pub mod perturb;
pub mod report;
pub mod solve;
pub(crate) mod schur;
pub(crate) mod svd;
pub mod starfam;

#[cfg(test)]
pub(crate) mod testkit;

pub use error::Error;
pub use matcore::{CMat, GenClass, Rng, StructureFlags, Tolerance, C64};
pub use report::{CheckItem, CheckReport, ItemStatus};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
