//! Resolution normal forms: every formula of the global-disjunction language
//! is equivalent to a global disjunction of base-language formulas.
//!
//! The resolution set `R(φ)` is defined inductively: literals and negations
//! resolve to themselves, `∧`/`∨` take pointwise products, the global
//! disjunction takes the union, and a counterfactual (or selective
//! implication) distributes into the consequent.  The central facts, both
//! verified by the test suite against the semantic oracles, are that
//! `φ ⟚ ⩒R(φ)` in both team semantics, and that each resolution entails `φ`
//! on its own.
//!
//! Dependence atoms have no resolutions; translate them away with
//! [`crate::syntax::desugar_dep`] first.

use std::collections::BTreeSet;

use crate::error::ModelError;
use crate::syntax::Formula;

/// The finite, duplicate-free set of resolutions of a formula, in canonical
/// (structural) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionSet {
    members: Vec<Formula>,
}

impl ResolutionSet {
    /// The resolutions in canonical order; never empty.
    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, phi: &Formula) -> bool {
        self.members.binary_search(phi).is_ok()
    }
}

fn res(phi: &Formula) -> Result<BTreeSet<Formula>, ModelError> {
    Ok(match phi {
        Formula::Eq(..) | Formula::Bot | Formula::Neg(_) => {
            BTreeSet::from([phi.clone()])
        }
        Formula::And(a, b) => {
            let (ra, rb) = (res(a)?, res(b)?);
            ra.iter()
                .flat_map(|x| rb.iter().map(|y| Formula::and(x.clone(), y.clone())))
                .collect()
        }
        Formula::Or(a, b) => {
            let (ra, rb) = (res(a)?, res(b)?);
            ra.iter()
                .flat_map(|x| rb.iter().map(|y| Formula::or(x.clone(), y.clone())))
                .collect()
        }
        Formula::IntDisj(a, b) => {
            let mut ra = res(a)?;
            ra.extend(res(b)?);
            ra
        }
        Formula::Cf(ant, c) => res(c)?
            .into_iter()
            .map(|y| Formula::cf(ant.clone(), y))
            .collect(),
        // `α ⊃ ψ` is `¬α ∨ ψ` with a singleton left side, so the product
        // clause degenerates to mapping over the right side.
        Formula::SelImp(a, b) => res(b)?
            .into_iter()
            .map(|y| Formula::selimp((**a).clone(), y))
            .collect(),
        Formula::Dep(..) => {
            return Err(ModelError::Invalid(
                "dependence atoms have no resolutions; desugar them first".into(),
            ))
        }
    })
}

/// The resolution set of a formula of the global-disjunction language.
/// Errors on dependence atoms.
pub fn resolutions(phi: &Formula) -> Result<ResolutionSet, ModelError> {
    Ok(ResolutionSet {
        members: res(phi)?.into_iter().collect(),
    })
}

/// `⩒ R(φ)`: the global disjunction of the resolutions, in canonical order.
/// A singleton resolution set yields its member bare.  Equivalent to `φ` in
/// both team semantics.
pub fn resolution_disjunction(phi: &Formula) -> Result<Formula, ModelError> {
    Ok(Formula::big_idisj(resolutions(phi)?.members.clone()))
}
