//! A small library of derived results, shipped as fully explicit
//! derivations.  Each entry names the weakest calculus it checks under, so
//! the entries double as a regression suite for the checker and as worked
//! examples for the derivation file format.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::signature::{EquationSeq, Signature, VarIx};
use crate::syntax::Formula;

use super::derivation::{Calculus, Derivation, Node, RuleId, SideData};

/// A named derivation together with the weakest calculus that admits it.
pub struct LibraryEntry {
    pub name: &'static str,
    pub calculus: Calculus,
    pub derivation: Derivation,
}

/// Incrementally builds a derivation with explicitly stated hypotheses.
struct Builder {
    nodes: Vec<Node>,
}

impl Builder {
    fn new() -> Self {
        Builder { nodes: Vec::new() }
    }

    /// Adds a node and returns its 1-based index.
    fn push(
        &mut self,
        hypotheses: impl IntoIterator<Item = Formula>,
        conclusion: Formula,
        rule: RuleId,
        premises: Vec<usize>,
    ) -> usize {
        self.nodes.push(Node {
            hypotheses: hypotheses.into_iter().collect(),
            conclusion,
            rule,
            premises,
            side: SideData::None,
        });
        self.nodes.len()
    }

    fn hyp(&mut self, f: Formula) -> usize {
        self.push([f.clone()], f, RuleId::Hyp, vec![])
    }

    fn done(self, assumptions: Vec<Formula>) -> Derivation {
        Derivation { assumptions, nodes: self.nodes }
    }
}

/// From α and ¬α ∨ φ, conclude φ.  The disjunction splits the team; the
/// α-half refutes its case by explosion.
fn weak_modus_ponens(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let alpha = Formula::Eq(w, 0);
    let phi = Formula::Eq(w, 1);
    let major = Formula::or(Formula::neg(alpha.clone()), phi.clone());

    let mut b = Builder::new();
    let a1 = b.hyp(alpha.clone());
    let a2 = b.hyp(major.clone());
    let a3 = b.hyp(Formula::neg(alpha.clone()));
    let a4 = b.push(
        [alpha.clone(), Formula::neg(alpha.clone())],
        phi.clone(),
        RuleId::NegE,
        vec![a1, a3],
    );
    let a5 = b.hyp(phi.clone());
    b.push([alpha.clone(), major.clone()], phi, RuleId::OrE, vec![a2, a4, a5]);
    Some(b.done(vec![alpha, major]))
}

/// An intervention that realises W=0 also realises ¬(W=1): substitution of a
/// one-step consequence under the counterfactual.
fn uniqueness_under_intervention(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let u = companion(sig, w);
    let ant = EquationSeq::new(vec![(u, 0)]).unwrap();
    let eq = Formula::Eq(w, 0);
    let neq = Formula::neg(Formula::Eq(w, 1));
    let premise = Formula::cf(ant.clone(), eq.clone());

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    let n2 = b.hyp(eq.clone());
    let n3 = b.push([eq.clone()], neq.clone(), RuleId::ValUnq, vec![n2]);
    b.push(
        [premise.clone()],
        Formula::cf(ant, neq),
        RuleId::CfSub,
        vec![n1, n3],
    );
    Some(b.done(vec![premise]))
}

/// A counterfactual with a conjunctive consequent yields the counterfactual
/// of either conjunct.
fn conjunction_extraction(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let u = companion(sig, w);
    let ant = EquationSeq::new(vec![(u, 0)]).unwrap();
    let both = Formula::and(Formula::Eq(w, 0), Formula::neg(Formula::Eq(w, 1)));
    let premise = Formula::cf(ant.clone(), both.clone());

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    let n2 = b.hyp(both.clone());
    let n3 = b.push([both.clone()], Formula::Eq(w, 0), RuleId::AndEL, vec![n2]);
    b.push(
        [premise.clone()],
        Formula::cf(ant, Formula::Eq(w, 0)),
        RuleId::CfSub,
        vec![n1, n3],
    );
    Some(b.done(vec![premise]))
}

/// ¬(ant □→ α) yields ant □→ ¬α directly.
fn exchange_fwd(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let u = companion(sig, w);
    let ant = EquationSeq::new(vec![(u, 0)]).unwrap();
    let alpha = Formula::Eq(w, 0);
    let premise = Formula::neg(Formula::cf(ant.clone(), alpha.clone()));

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    b.push(
        [premise.clone()],
        Formula::cf(ant, Formula::neg(alpha)),
        RuleId::NegCfE,
        vec![n1],
    );
    Some(b.done(vec![premise]))
}

/// The converse direction: from ant □→ ¬α, refute ant □→ α.  The two
/// counterfactuals combine into one with a contradictory consequent, which a
/// consistent intervention cannot realise.
fn exchange_bwd(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let u = companion(sig, w);
    let ant = EquationSeq::new(vec![(u, 0)]).unwrap();
    let alpha = Formula::Eq(w, 0);
    let not_alpha = Formula::neg(alpha.clone());
    let premise = Formula::cf(ant.clone(), not_alpha.clone());
    let rival = Formula::cf(ant.clone(), alpha.clone());
    let pair = Formula::and(not_alpha.clone(), alpha.clone());

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    let n2 = b.hyp(rival.clone());
    let n3 = b.push(
        [premise.clone(), rival.clone()],
        Formula::cf(ant.clone(), pair.clone()),
        RuleId::CfAndI,
        vec![n1, n2],
    );
    let n4 = b.hyp(pair.clone());
    let n5 = b.push([pair.clone()], alpha.clone(), RuleId::AndER, vec![n4]);
    let n6 = b.push([pair.clone()], not_alpha.clone(), RuleId::AndEL, vec![n4]);
    let n7 = b.push([pair.clone()], Formula::Bot, RuleId::NegE, vec![n5, n6]);
    let n8 = b.push(
        [premise.clone(), rival.clone()],
        Formula::cf(ant, Formula::Bot),
        RuleId::CfSub,
        vec![n3, n7],
    );
    let n9 = b.push(
        [premise.clone(), rival.clone()],
        Formula::Bot,
        RuleId::CfBotE,
        vec![n8],
    );
    b.push([premise.clone()], Formula::neg(rival), RuleId::NegI, vec![n9]);
    Some(b.done(vec![premise]))
}

/// Under any intervention, the untouched variable still takes one of its
/// values: push a total disjunction of equations below the counterfactual,
/// then distribute it back out.
fn definiteness(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let u = companion(sig, w);
    if u == w {
        return None;
    }
    let ant = EquationSeq::new(vec![(w, 0)]).unwrap();
    let total = Formula::big_or(sig.values(u).map(|v| Formula::Eq(u, v)).collect());

    let mut b = Builder::new();
    let n1 = b.push(
        [],
        Formula::cf(ant.clone(), Formula::Eq(w, 0)),
        RuleId::CfEff,
        vec![],
    );
    let n2 = b.push([], total.clone(), RuleId::ValDef, vec![]);
    let n3 = b.push(
        [],
        Formula::cf(ant.clone(), total.clone()),
        RuleId::CfSub,
        vec![n1, n2],
    );
    distribute_cf_over_or(&mut b, n3, &ant, &total, &BTreeSet::new());
    Some(b.done(vec![]))
}

/// Given node `from` concluding `ant □→ body` with open hypotheses `hyps`,
/// extends the builder to conclude the disjunction of `ant □→ δ` over the
/// disjuncts δ of `body`, and returns that disjunction.  Recurses on the
/// right spine, splitting each layer with the distribution rule.
fn distribute_cf_over_or(
    b: &mut Builder,
    from: usize,
    ant: &EquationSeq,
    body: &Formula,
    hyps: &BTreeSet<Formula>,
) -> (usize, Formula) {
    let Formula::Or(head, rest) = body else {
        return (from, Formula::cf(ant.clone(), body.clone()));
    };
    let cf_head = Formula::cf(ant.clone(), (**head).clone());
    let cf_rest = Formula::cf(ant.clone(), (**rest).clone());
    let split = b.push(
        hyps.clone(),
        Formula::or(cf_head.clone(), cf_rest.clone()),
        RuleId::CfOrDstFwd,
        vec![from],
    );

    let left_hyp = b.hyp(cf_head.clone());
    let inner_hyps = BTreeSet::from([cf_rest.clone()]);
    let right_hyp = b.hyp(cf_rest.clone());
    let (right_done, rest_shape) = distribute_cf_over_or(b, right_hyp, ant, rest, &inner_hyps);

    let target = Formula::or(cf_head.clone(), rest_shape.clone());
    let left_in = b.push(
        [cf_head.clone()],
        target.clone(),
        RuleId::OrIL,
        vec![left_hyp],
    );
    let right_in = b.push(
        inner_hyps.clone(),
        target.clone(),
        RuleId::OrIR,
        vec![right_done],
    );
    let out = b.push(
        hyps.clone(),
        target.clone(),
        RuleId::OrE,
        vec![split, left_in, right_in],
    );
    (out, target)
}

/// (φ ⩒ ψ) ∧ χ entails (φ ∧ χ) ⩒ (ψ ∧ χ): conjunction distributes over the
/// global disjunction.
fn idisj_and_distribution(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let phi = Formula::Eq(w, 0);
    let psi = Formula::Eq(w, 1);
    let chi = Formula::neg(Formula::Bot);
    let premise = Formula::and(Formula::idisj(phi.clone(), psi.clone()), chi.clone());
    let goal = Formula::idisj(
        Formula::and(phi.clone(), chi.clone()),
        Formula::and(psi.clone(), chi.clone()),
    );

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    let n2 = b.push(
        [premise.clone()],
        Formula::idisj(phi.clone(), psi.clone()),
        RuleId::AndEL,
        vec![n1],
    );
    let n3 = b.push([premise.clone()], chi.clone(), RuleId::AndER, vec![n1]);

    let n4 = b.hyp(phi.clone());
    let n5 = b.push(
        [phi.clone(), premise.clone()],
        Formula::and(phi.clone(), chi.clone()),
        RuleId::AndI,
        vec![n4, n3],
    );
    let n6 = b.push([phi.clone(), premise.clone()], goal.clone(), RuleId::IDisjIL, vec![n5]);

    let n7 = b.hyp(psi.clone());
    let n8 = b.push(
        [psi.clone(), premise.clone()],
        Formula::and(psi.clone(), chi.clone()),
        RuleId::AndI,
        vec![n7, n3],
    );
    let n9 = b.push([psi.clone(), premise.clone()], goal.clone(), RuleId::IDisjIR, vec![n8]);

    b.push([premise.clone()], goal, RuleId::IDisjE, vec![n2, n6, n9]);
    Some(b.done(vec![premise]))
}

/// φ ∨ (ψ ⩒ χ) entails (φ ∨ ψ) ⩒ (φ ∨ χ): a single distribution step.
fn idisj_or_distribution(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let phi = Formula::Eq(w, 0);
    let psi = Formula::Eq(w, 1);
    let chi = Formula::neg(Formula::Eq(w, 0));
    let premise = Formula::or(phi.clone(), Formula::idisj(psi.clone(), chi.clone()));
    let goal = Formula::idisj(
        Formula::or(phi.clone(), psi),
        Formula::or(phi, chi),
    );

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    b.push([premise.clone()], goal, RuleId::OrIDisjDst, vec![n1]);
    Some(b.done(vec![premise]))
}

/// ant □→ (ψ ⩒ χ) entails (ant □→ ψ) ⩒ (ant □→ χ).
fn idisj_cf_distribution(sig: &Signature) -> Option<Derivation> {
    let w = pivot(sig)?;
    let u = companion(sig, w);
    let ant = EquationSeq::new(vec![(u, 0)]).unwrap();
    let psi = Formula::Eq(w, 0);
    let chi = Formula::Eq(w, 1);
    let premise = Formula::cf(ant.clone(), Formula::idisj(psi.clone(), chi.clone()));
    let goal = Formula::idisj(
        Formula::cf(ant.clone(), psi),
        Formula::cf(ant, chi),
    );

    let mut b = Builder::new();
    let n1 = b.hyp(premise.clone());
    b.push([premise.clone()], goal, RuleId::CfIDisjDst, vec![n1]);
    Some(b.done(vec![premise]))
}

/// The first variable with at least two values; entries that need a genuine
/// value contrast are skipped on signatures without one.
fn pivot(sig: &Signature) -> Option<VarIx> {
    (0..sig.var_count()).find(|&v| sig.range_size(v) >= 2)
}

/// A second variable distinct from the pivot when one exists; the pivot
/// itself otherwise.
fn companion(sig: &Signature, w: VarIx) -> VarIx {
    (0..sig.var_count()).find(|&v| v != w).unwrap_or(w)
}

/// The shipped derivations instantiated over a signature.  Entries that need
/// structure the signature lacks (a variable with two values, two distinct
/// variables) are omitted rather than degenerated.
pub fn derived_library(sig: &Arc<Signature>) -> Vec<LibraryEntry> {
    let mut entries = Vec::new();
    let mut add = |name: &'static str, calculus: Calculus, d: Option<Derivation>| {
        if let Some(derivation) = d {
            entries.push(LibraryEntry { name, calculus, derivation });
        }
    };
    add("weak-modus-ponens", Calculus::Co, weak_modus_ponens(sig));
    add("uniqueness-under-intervention", Calculus::Co, uniqueness_under_intervention(sig));
    add("conjunction-extraction", Calculus::Co, conjunction_extraction(sig));
    add("exchange-fwd", Calculus::Co, exchange_fwd(sig));
    add("exchange-bwd", Calculus::Co, exchange_bwd(sig));
    add("definiteness", Calculus::Co, definiteness(sig));
    add("idisj-and-distribution", Calculus::CoiGct, idisj_and_distribution(sig));
    add("idisj-or-distribution", Calculus::CoiGct, idisj_or_distribution(sig));
    add("idisj-cf-distribution", Calculus::CoiGct, idisj_cf_distribution(sig));
    entries
}
