//! Cycle sets, involutive solutions of the set-theoretic Yang–Baxter
//! equation, their permutation braces, and the classification of the
//! indecomposable ones of size `p²`.

pub mod arith;
pub mod brace;
pub mod classify;
pub mod cycleset;
pub mod error;
pub mod families;
pub mod json;
pub mod oracle;
pub mod perm;
pub mod solution;

pub use brace::{build_perm_brace, BraceSubset, PermBrace};
pub use cycleset::{check_cycle_set, CycleSet, ValidityReport};
pub use error::{Error, Result};
pub use families::{FamilyParams, PhiFn};
pub use json::{parse_documents, CycleSetDoc, Document, SolutionDoc};
pub use perm::{Partition, Perm};
pub use solution::{check_solution, from_solution, to_solution, Solution, SolutionReport};
