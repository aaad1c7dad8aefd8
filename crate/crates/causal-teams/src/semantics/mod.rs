//! Team-semantic satisfaction and brute-force entailment.
//!
//! Satisfaction clauses over a causal team `(T⁻, F)`:
//!
//! * `X=x` — every row gives `X` the value `x`;
//! * `⊥` — the team is empty;
//! * `¬α` — no singleton subteam satisfies `α` (`α` base-language);
//! * `φ ∧ ψ` — both hold of the team;
//! * `φ ∨ ψ` — some cover `T₁ ∪ T₂ = T⁻` has `T₁ ⊨ φ` and `T₂ ⊨ ψ`;
//! * `φ ⩒ ψ` — `φ` or `ψ` holds of the whole team;
//! * `=(X₁,…,Xₙ;Y)` — rows agreeing on the `Xᵢ` agree on `Y`;
//! * `X=x □→ φ` — the antecedent is inconsistent, or `T_{X=x} ⊨ φ`;
//! * `α ⊃ ψ` — the subteam of rows whose singleton satisfies `α`
//!   satisfies `ψ`.
//!
//! Over a generalized causal team the same clauses read `(s, F)` members
//! for rows; an intervention rewrites each member against its own
//! component.
//!
//! All three languages have the empty-team property and are closed
//! downward; the base language is flat.  The evaluators use flatness and
//! downward closure as documented in [`eval_ct`]; the test suite verifies
//! both laws — and the evaluators themselves — against a direct
//! clause-by-clause reference implementation.

mod compile;
mod entail;
mod eval_ct;
mod eval_gct;

pub use entail::{entails_ct, entails_gct, equivalent};

use crate::error::ModelError;
use crate::syntax::Formula;
use crate::team::{CausalTeam, GeneralizedCausalTeam};

/// Which satisfaction relation a verdict speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Ct,
    Gct,
}

/// A team refuting an entailment: it satisfies every premise but not the
/// conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Ct(CausalTeam),
    Gct(GeneralizedCausalTeam),
}

/// Outcome of an entailment or equivalence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub mode: Mode,
    /// False when the budget forced sampling, so `holds = true` only means
    /// "no counterexample found".  Refutations are always exact.
    pub exact: bool,
    /// Present exactly when `holds` is false.
    pub counterexample: Option<Counterexample>,
}

/// `T ⊨ᶜ φ`.
pub fn satisfies_ct(t: &CausalTeam, phi: &Formula) -> Result<bool, ModelError> {
    let (prog, roots) = compile::compile_many(&[phi], t.signature())?;
    let mut ev = eval_ct::CtEvaluator::new(t.signature(), &prog);
    let frame = ev.add_frame(t.rows().to_vec(), t.fc().clone());
    let full = ev.full(frame);
    Ok(ev.eval(frame, roots[0], full))
}

/// `T ⊨ᵍ φ`.
pub fn satisfies_gct(t: &GeneralizedCausalTeam, phi: &Formula) -> Result<bool, ModelError> {
    let (prog, roots) = compile::compile_many(&[phi], t.signature())?;
    let mut ev = eval_gct::GctEvaluator::new(t.signature(), &prog);
    let frame = ev.add_frame(t.members().to_vec());
    let full = ev.full(frame);
    Ok(ev.eval(frame, roots[0], full))
}
