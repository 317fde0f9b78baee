//! Exact solvers for quadratic equations over the lamplighter group
//! `L2 = Z2 wr Z`.
//!
//! The crate decides spherical, orientable and non-orientable standard-form
//! equations, produces shift certificates and substitution-checked
//! witnesses, solves the conjugacy problem in linear time, and encodes
//! 3-partition instances as spherical equations.

pub mod binomial;
pub mod conjugacy;
pub mod equations;
pub mod error;
pub mod generate;
pub mod group;
pub mod hardness;

pub use conjugacy::{find_conjugator, is_conjugate, ConjugacyAnswer};
pub use equations::{
    oracle_solve, solve, solve_with, verify, Form, QuadEquation, ShiftCertificate, SolveResult,
    SolverConfig, Strategy, Witness,
};
pub use error::{Error, Result};
pub use group::{GroupWord, LampConfig, LampElement, Letter};
