//! Natural-deduction calculi for the counterfactual languages, with a
//! schema-exact derivation checker, a plain-text derivation format, a small
//! library of shipped derivations, and a randomized soundness harness that
//! tests every rule against the brute-force entailment oracles.
//!
//! Five calculi are covered: the base calculus for the counterfactual
//! language (sound and complete for causal teams and generalized causal
//! teams alike), its extensions with global disjunction (one calculus per
//! team notion, differing in the uniformity axiom), and its extensions with
//! dependence atoms (differing in the one-function and no-mixing axioms).

mod check;
mod derivation;
mod format;
mod fuzz;
mod library;

pub use check::{check, CheckError, CheckKind};
pub use derivation::{Calculus, Derivation, Node, RuleId, SideData};
pub use format::{parse_derivation, render_derivation, FormatError};
pub use fuzz::{soundness_fuzz, FuzzOutcome, FuzzReport};
pub use library::{derived_library, LibraryEntry};
