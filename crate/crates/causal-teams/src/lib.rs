//! Causal team semantics for interventionist counterfactual logics.
//!
//! A *causal team* over a signature σ is a pair `(T⁻, F)` of a set of
//! assignments (the team component) and a system of structural functions
//! (the function component); a *generalized causal team* is a set of
//! `(assignment, function component)` pairs and can express uncertainty
//! about the causal laws themselves.  This crate implements:
//!
//! - the semantic universe: signatures, assignments, function components,
//!   causal teams, generalized causal teams, and interventions `do(X = x)`
//!   ([`signature`], [`fc`], [`team`], [`intervention`]);
//! - exhaustive enumeration of the finite universes 𝔸σ, 𝔽σ, Sem_σ, 𝔽⁰σ and
//!   ℂσ ([`enumeration`]);
//! - the formula languages CO (counterfactual-observational), COD (CO plus
//!   dependence atoms) and CO∨ (CO plus intuitionistic disjunction), with a
//!   parser, printer, classifier and desugarings ([`syntax`]);
//! - team-semantic model checking over both kinds of teams and brute-force
//!   entailment/equivalence oracles ([`semantics`]);
//! - the characterization formulas Φ^F, Θ^T, χ_k, Ξ^T, Unf, β_DC, β_En,
//!   1Fun, NoMix and ⤳, and the constructive definability theorems for flat
//!   and downward-closed team classes ([`charform`]);
//! - resolution normal forms for CO∨ ([`resolutions`]);
//! - natural-deduction derivation checking for the CO/CO∨/COD calculi with a
//!   library of derived rules and a soundness fuzzer ([`proofs`]).
//!
//! Everything is finite and extensional: ranges are finite value lists,
//! structural functions are tables, and the oracles work by enumerating (or,
//! past a configurable budget, sampling) the team universes.

pub mod charform;
pub mod enumeration;
pub mod error;
pub mod fc;
pub mod intervention;
pub mod proofs;
pub mod resolutions;
pub mod semantics;
pub mod signature;
pub mod syntax;
pub mod team;

pub use charform::{
    beta_dc, beta_en, chi_k, define_downward_class, define_flat_class, leadsto, no_mix, one_fun,
    phi_f, theta_t, unf, xi_star, xi_t, Dialect, TeamClass,
};
pub use enumeration::{
    compatible_assignments, enum_assignments, enum_causal_teams, enum_function_components,
    enum_gcts, enum_gcts_up_to_size, enum_sem, representatives, UniverseBudget,
};
pub use error::ModelError;
pub use fc::{compatible, fc_similar, union_fc, FunctionComponent, Mechanism};
pub use intervention::{intervene_ct, intervene_gct, intervene_pair};
pub use proofs::{
    check, derived_library, parse_derivation, render_derivation, soundness_fuzz, Calculus,
    CheckError, CheckKind, Derivation, FormatError, FuzzOutcome, FuzzReport, LibraryEntry, Node,
    RuleId, SideData,
};
pub use resolutions::{resolution_disjunction, resolutions, ResolutionSet};
pub use semantics::{
    entails_ct, entails_gct, equivalent, satisfies_ct, satisfies_gct, Counterexample, Mode,
    Verdict,
};
pub use signature::{eq_consistent, Assignment, EquationSeq, Signature, ValIx, VarIx};
pub use syntax::{
    classify, desugar, desugar_dep, parse, render, validate, Formula, FormulaClass, IllFormed,
    SyntaxError,
};
pub use team::{
    ct_equivalent, ct_union, gct_equivalent, to_ct, to_gct, uniform, CausalTeam,
    GeneralizedCausalTeam,
};
