//! Finite-level evidence: coset enumeration, permutation quotients,
//! permutation group orders and comparison reports.

pub mod compare;
pub mod coset;
pub mod homs;
pub mod perm;
pub mod schreier;

pub use compare::{compare_completions, parse_hom, ComparisonReport, Verdict, Witness};
pub use coset::{todd_coxeter, CosetTable, Status, Strategy};
pub use homs::{enumerate_homs, quotient_spectrum, PermHom, QuotientSpectrum};
pub use perm::{eval_word, Perm};
pub use schreier::{perm_group_order, StabChain};
