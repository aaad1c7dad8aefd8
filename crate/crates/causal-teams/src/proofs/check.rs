//! The derivation checker: every node must instantiate its rule schema
//! exactly, carry the hypothesis set recomputed from its premises, and obey
//! the rule's side conditions.  Schematic metavariables are never unified;
//! nodes carry fully concrete formulas and the checker compares structurally.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::charform;
use crate::signature::{EquationSeq, Signature, ValIx, VarIx};
use crate::syntax::{classify, render, validate, Formula};

use super::derivation::{Calculus, Derivation, Node, RuleId, SideData};

/// What went wrong, attached to the 1-based index of the offending node
/// (index 0 for derivation-level problems such as a bad assumption list).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("node {node}: {detail} [{kind:?}]")]
pub struct CheckError {
    pub node: usize,
    pub kind: CheckKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Ill-formed formula or formula outside the calculus's language.
    Language,
    /// Premise indices out of range or not strictly earlier.
    Reference,
    /// Rule not part of the selected calculus.
    Calculus,
    /// Node does not instantiate the rule schema.
    Schema,
    /// A side condition of the rule fails.
    SideCondition,
    /// Stated hypotheses differ from the recomputed ones, or an open
    /// hypothesis survives to the end undeclared.
    Hypotheses,
}

fn err(node: usize, kind: CheckKind, detail: impl Into<String>) -> CheckError {
    CheckError { node, kind, detail: detail.into() }
}

/// Checks a derivation against a calculus over a signature.
pub fn check(d: &Derivation, calculus: Calculus, sig: &Arc<Signature>) -> Result<(), CheckError> {
    for a in &d.assumptions {
        well_formed(a, calculus, sig).map_err(|detail| err(0, CheckKind::Language, detail))?;
    }
    if d.nodes.is_empty() {
        return Err(err(0, CheckKind::Schema, "derivation has no nodes"));
    }

    for (pos, node) in d.nodes.iter().enumerate() {
        let ix = pos + 1;
        check_node(d, node, ix, calculus, sig)?;
    }

    let declared: BTreeSet<&Formula> = d.assumptions.iter().collect();
    let last = d.nodes.len();
    for h in &d.nodes[last - 1].hypotheses {
        if !declared.contains(h) {
            return Err(err(
                last,
                CheckKind::Hypotheses,
                format!(
                    "hypothesis {} is still open but not declared as an assumption",
                    render(h, sig)
                ),
            ));
        }
    }
    Ok(())
}

fn well_formed(f: &Formula, calculus: Calculus, sig: &Signature) -> Result<(), String> {
    validate(f, sig).map_err(|e| e.to_string())?;
    let class = classify(f).map_err(|e| e.to_string())?;
    if !class.within(calculus.language()) {
        return Err(format!(
            "{} is outside the language of the {} calculus",
            render(f, sig),
            calculus.name()
        ));
    }
    Ok(())
}

fn check_node(
    d: &Derivation,
    node: &Node,
    ix: usize,
    calculus: Calculus,
    sig: &Arc<Signature>,
) -> Result<(), CheckError> {
    well_formed(&node.conclusion, calculus, sig)
        .map_err(|detail| err(ix, CheckKind::Language, detail))?;
    for h in &node.hypotheses {
        well_formed(h, calculus, sig).map_err(|detail| err(ix, CheckKind::Language, detail))?;
    }
    if !calculus.admits(node.rule) {
        return Err(err(
            ix,
            CheckKind::Calculus,
            format!(
                "rule {} is not part of the {} calculus",
                node.rule.name(),
                calculus.name()
            ),
        ));
    }
    for &p in &node.premises {
        if p == 0 || p >= ix {
            return Err(err(
                ix,
                CheckKind::Reference,
                format!("premise {p} must name a strictly earlier node"),
            ));
        }
    }

    let discharges = rule_schema(d, node, ix, sig)?;

    let mut computed: BTreeSet<Formula> = BTreeSet::new();
    if node.rule == RuleId::Hyp {
        computed.insert(node.conclusion.clone());
    }
    debug_assert_eq!(discharges.len(), node.premises.len());
    for (&p, discharge) in node.premises.iter().zip(&discharges) {
        for h in &d.nodes[p - 1].hypotheses {
            if !discharge.contains(h) {
                computed.insert(h.clone());
            }
        }
    }
    if computed != node.hypotheses {
        let show = |set: &BTreeSet<Formula>| {
            if set.is_empty() {
                "(none)".to_string()
            } else {
                set.iter().map(|f| render(f, sig)).collect::<Vec<_>>().join("; ")
            }
        };
        return Err(err(
            ix,
            CheckKind::Hypotheses,
            format!(
                "stated hypotheses {} but the premises leave {}",
                show(&node.hypotheses),
                show(&computed)
            ),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Rule schemas.  Each arm verifies the premise count and shapes against the
// conclusion, checks side conditions, and returns the per-premise discharge
// sets.  Everything is matched structurally against concrete formulas.

type Discharges = Vec<BTreeSet<Formula>>;

fn none(n: usize) -> Discharges {
    vec![BTreeSet::new(); n]
}

fn one(f: &Formula) -> BTreeSet<Formula> {
    BTreeSet::from([f.clone()])
}

fn rule_schema(
    d: &Derivation,
    node: &Node,
    ix: usize,
    sig: &Arc<Signature>,
) -> Result<Discharges, CheckError> {
    let schema = |detail: String| err(ix, CheckKind::Schema, detail);
    let side = |detail: String| err(ix, CheckKind::SideCondition, detail);
    let arity = |n: usize| -> Result<(), CheckError> {
        if node.premises.len() == n {
            Ok(())
        } else {
            Err(err(
                ix,
                CheckKind::Schema,
                format!(
                    "{} takes {} premise(s), {} given",
                    node.rule.name(),
                    n,
                    node.premises.len()
                ),
            ))
        }
    };
    let prem = |k: usize| -> &Node { &d.nodes[node.premises[k] - 1] };
    let no_side = || -> Result<(), CheckError> {
        if matches!(node.side, SideData::None) {
            Ok(())
        } else {
            Err(err(
                ix,
                CheckKind::Schema,
                format!("{} carries no side data", node.rule.name()),
            ))
        }
    };
    let c = &node.conclusion;
    let show = |f: &Formula| render(f, sig);

    use RuleId::*;
    match node.rule {
        Hyp => {
            arity(0)?;
            no_side()?;
            Ok(none(0))
        }
        ValDef => {
            arity(0)?;
            no_side()?;
            let x = first_atom_var(c)
                .ok_or_else(|| schema("conclusion must be a disjunction of equations".into()))?;
            let expected = Formula::big_or(
                sig.values(x).map(|v| Formula::Eq(x, v)).collect(),
            );
            if *c != expected {
                return Err(schema(format!(
                    "conclusion must list every value of {}: expected {}",
                    sig.var_name(x),
                    show(&expected)
                )));
            }
            Ok(none(0))
        }
        ValUnq => {
            arity(1)?;
            no_side()?;
            let Formula::Eq(x, v) = prem(0).conclusion else {
                return Err(schema("premise must be an equation".into()));
            };
            let Formula::Neg(inner) = c else {
                return Err(schema("conclusion must be a negated equation".into()));
            };
            let Formula::Eq(x2, v2) = **inner else {
                return Err(schema("conclusion must be a negated equation".into()));
            };
            if x2 != x {
                return Err(schema("conclusion must deny a value of the same variable".into()));
            }
            if v2 == v {
                return Err(side("the denied value must differ from the asserted one".into()));
            }
            Ok(none(1))
        }
        AndI => {
            arity(2)?;
            no_side()?;
            let Formula::And(a, b) = c else {
                return Err(schema("conclusion must be a conjunction".into()));
            };
            expect_eq(&prem(0).conclusion, a, "first premise", ix, sig)?;
            expect_eq(&prem(1).conclusion, b, "second premise", ix, sig)?;
            Ok(none(2))
        }
        AndEL | AndER => {
            arity(1)?;
            no_side()?;
            let Formula::And(a, b) = &prem(0).conclusion else {
                return Err(schema("premise must be a conjunction".into()));
            };
            let part = if node.rule == AndEL { a } else { b };
            expect_eq(c, part, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        OrIL | OrIR => {
            arity(1)?;
            no_side()?;
            let Formula::Or(a, b) = c else {
                return Err(schema("conclusion must be a disjunction".into()));
            };
            let part = if node.rule == OrIL { a } else { b };
            expect_eq(&prem(0).conclusion, part, "premise", ix, sig)?;
            Ok(none(1))
        }
        OrE | IDisjE => {
            arity(3)?;
            no_side()?;
            let (a, b) = match (&prem(0).conclusion, node.rule) {
                (Formula::Or(a, b), OrE) => (a.as_ref(), b.as_ref()),
                (Formula::IntDisj(a, b), IDisjE) => (a.as_ref(), b.as_ref()),
                _ => {
                    return Err(schema(format!(
                        "major premise must be a {} of the cases",
                        if node.rule == OrE { "local disjunction" } else { "global disjunction" }
                    )))
                }
            };
            expect_eq(&prem(1).conclusion, c, "first case", ix, sig)?;
            expect_eq(&prem(2).conclusion, c, "second case", ix, sig)?;
            if node.rule == OrE && classify(c).map(|k| k != crate::syntax::FormulaClass::Co).unwrap_or(true) {
                return Err(side(
                    "case elimination for a split disjunction concludes base-language formulas only"
                        .into(),
                ));
            }
            Ok(vec![BTreeSet::new(), one(a), one(b)])
        }
        NegI => {
            arity(1)?;
            no_side()?;
            let Formula::Neg(a) = c else {
                return Err(schema("conclusion must be a negation".into()));
            };
            if prem(0).conclusion != Formula::Bot {
                return Err(schema("premise must conclude falsum".into()));
            }
            Ok(vec![one(a)])
        }
        NegE => {
            arity(2)?;
            no_side()?;
            let Formula::Neg(a) = &prem(1).conclusion else {
                return Err(schema("second premise must be a negation".into()));
            };
            expect_eq(&prem(0).conclusion, a, "first premise", ix, sig)?;
            Ok(none(2))
        }
        Raa => {
            arity(1)?;
            no_side()?;
            if prem(0).conclusion != Formula::Bot {
                return Err(schema("premise must conclude falsum".into()));
            }
            if classify(c).map(|k| k != crate::syntax::FormulaClass::Co).unwrap_or(true) {
                return Err(side("classical absurdity concludes base-language formulas only".into()));
            }
            Ok(vec![one(&Formula::neg(c.clone()))])
        }
        CfEff => {
            arity(0)?;
            no_side()?;
            let (ant, cons) = as_cf(c).ok_or_else(|| schema("conclusion must be a counterfactual".into()))?;
            let Formula::Eq(y, v) = *cons else {
                return Err(schema("consequent must be an equation".into()));
            };
            if !ant.equations().contains(&(y, v)) {
                return Err(schema(format!(
                    "the consequent {} must appear among the intervened equations",
                    show(cons)
                )));
            }
            Ok(none(0))
        }
        CfCmp => {
            arity(2)?;
            no_side()?;
            let (ant, eq) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("first premise must be a counterfactual".into()))?;
            let Formula::Eq(w, v) = *eq else {
                return Err(schema("first premise's consequent must be an equation".into()));
            };
            let (ant2, gamma) = as_cf(&prem(1).conclusion)
                .ok_or_else(|| schema("second premise must be a counterfactual".into()))?;
            if ant2 != ant {
                return Err(schema("both premises must intervene identically".into()));
            }
            if !cf_free(gamma) {
                return Err(side(format!(
                    "the consequent {} must be counterfactual-free",
                    show(gamma)
                )));
            }
            let mut eqs = ant.equations().to_vec();
            eqs.push((w, v));
            let expected = Formula::cf(EquationSeq::new(eqs).unwrap(), gamma.clone());
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(2))
        }
        CfBotE => {
            arity(1)?;
            no_side()?;
            let (ant, cons) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("premise must be a counterfactual".into()))?;
            if *cons != Formula::Bot {
                return Err(schema("premise's consequent must be falsum".into()));
            }
            if !ant.is_consistent() {
                return Err(side("the antecedent must be consistent".into()));
            }
            Ok(none(1))
        }
        BotCfE => {
            arity(0)?;
            no_side()?;
            let (ant, _) = as_cf(c).ok_or_else(|| schema("conclusion must be a counterfactual".into()))?;
            let eqs = ant.equations();
            if eqs.len() < 2 {
                return Err(schema("the antecedent must end in a contradictory pair".into()));
            }
            let (x, v) = eqs[eqs.len() - 2];
            let (x2, v2) = eqs[eqs.len() - 1];
            if x != x2 {
                return Err(schema("the last two intervened equations must share a variable".into()));
            }
            if v == v2 {
                return Err(side("the contradictory pair must assign distinct values".into()));
            }
            Ok(none(0))
        }
        CfCtr | CfWk => {
            arity(1)?;
            no_side()?;
            let (ant, cons) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("premise must be a counterfactual".into()))?;
            let eqs = ant.equations();
            let expected_eqs: Vec<(VarIx, ValIx)> = if node.rule == CfCtr {
                if eqs.len() < 2 || eqs[0] != eqs[1] {
                    return Err(schema(
                        "contraction needs a duplicated leading equation".into(),
                    ));
                }
                eqs[1..].to_vec()
            } else {
                let mut out = vec![eqs[0]];
                out.extend_from_slice(eqs);
                out
            };
            let expected = Formula::cf(EquationSeq::new(expected_eqs).unwrap(), cons.clone());
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        CfSub => {
            arity(2)?;
            no_side()?;
            let (ant, phi) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("first premise must be a counterfactual".into()))?;
            let psi = &prem(1).conclusion;
            let expected = Formula::cf(ant.clone(), psi.clone());
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            for h in &prem(1).hypotheses {
                if h != phi {
                    return Err(err(
                        ix,
                        CheckKind::Hypotheses,
                        format!(
                            "the consequent subderivation may depend only on {}, but uses {}",
                            show(phi),
                            show(h)
                        ),
                    ));
                }
            }
            Ok(vec![BTreeSet::new(), one(phi)])
        }
        CfAndI => {
            arity(2)?;
            no_side()?;
            let (ant, cons) = as_cf(c).ok_or_else(|| schema("conclusion must be a counterfactual".into()))?;
            let Formula::And(a, b) = cons else {
                return Err(schema("conclusion's consequent must be a conjunction".into()));
            };
            expect_eq(&prem(0).conclusion, &Formula::cf(ant.clone(), (**a).clone()), "first premise", ix, sig)?;
            expect_eq(&prem(1).conclusion, &Formula::cf(ant.clone(), (**b).clone()), "second premise", ix, sig)?;
            Ok(none(2))
        }
        CfOrDstFwd => {
            arity(1)?;
            no_side()?;
            let (ant, cons) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("premise must be a counterfactual".into()))?;
            let Formula::Or(a, b) = cons else {
                return Err(schema("premise's consequent must be a disjunction".into()));
            };
            let expected = Formula::or(
                Formula::cf(ant.clone(), (**a).clone()),
                Formula::cf(ant.clone(), (**b).clone()),
            );
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        CfOrDstBwd => {
            arity(1)?;
            no_side()?;
            let Formula::Or(l, r) = &prem(0).conclusion else {
                return Err(schema("premise must be a disjunction of counterfactuals".into()));
            };
            let (ant, a) = as_cf(l).ok_or_else(|| schema("premise must disjoin counterfactuals".into()))?;
            let (ant2, b) = as_cf(r).ok_or_else(|| schema("premise must disjoin counterfactuals".into()))?;
            if ant2 != ant {
                return Err(schema("both disjuncts must intervene identically".into()));
            }
            let expected = Formula::cf(ant.clone(), Formula::or(a.clone(), b.clone()));
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        CfExtr => {
            arity(1)?;
            no_side()?;
            let (outer, inner) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("premise must be a counterfactual".into()))?;
            let (inner_ant, phi) = as_cf(inner)
                .ok_or_else(|| schema("premise's consequent must itself be a counterfactual".into()))?;
            if !outer.is_consistent() {
                return Err(side("the outer antecedent must be consistent".into()));
            }
            let inner_mask = inner_ant.var_mask();
            let mut eqs: Vec<(VarIx, ValIx)> = outer
                .equations()
                .iter()
                .copied()
                .filter(|&(v, _)| inner_mask & (1 << v) == 0)
                .collect();
            eqs.extend_from_slice(inner_ant.equations());
            let expected = Formula::cf(EquationSeq::new(eqs).unwrap(), phi.clone());
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        CfExp => {
            arity(1)?;
            let SideData::Split(k) = node.side else {
                return Err(schema("nesting needs a split position as side data".into()));
            };
            let (ant, phi) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("premise must be a counterfactual".into()))?;
            let eqs = ant.equations();
            if k == 0 || k >= eqs.len() {
                return Err(schema(format!(
                    "split position must fall inside the antecedent (1..{})",
                    eqs.len().saturating_sub(1).max(1)
                )));
            }
            let head = EquationSeq::new(eqs[..k].to_vec()).unwrap();
            let tail = EquationSeq::new(eqs[k..].to_vec()).unwrap();
            if head.var_mask() & tail.var_mask() != 0 {
                return Err(side("the two antecedent parts must use disjoint variables".into()));
            }
            let expected = Formula::cf(head, Formula::cf(tail, phi.clone()));
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        NegCfE => {
            arity(1)?;
            no_side()?;
            let Formula::Neg(inner) = &prem(0).conclusion else {
                return Err(schema("premise must be a negated counterfactual".into()));
            };
            let (ant, alpha) = as_cf(inner)
                .ok_or_else(|| schema("premise must be a negated counterfactual".into()))?;
            let expected = Formula::cf(ant.clone(), Formula::neg(alpha.clone()));
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        Recur => {
            let SideData::Chain(chain) = &node.side else {
                return Err(schema("the influence chain is required as side data".into()));
            };
            if chain.len() < 2 {
                return Err(schema("the chain needs at least two variables".into()));
            }
            for (i, &v) in chain.iter().enumerate() {
                if chain[..i].contains(&v) {
                    return Err(side("the chain variables must be pairwise distinct".into()));
                }
            }
            arity(chain.len() - 1)?;
            for i in 0..chain.len() - 1 {
                let expected = charform::leadsto(chain[i], chain[i + 1], sig)
                    .map_err(|e| err(ix, CheckKind::Schema, e.to_string()))?;
                expect_eq(
                    &prem(i).conclusion,
                    &expected,
                    "influence chain link",
                    ix,
                    sig,
                )?;
            }
            let closing = charform::leadsto(chain[chain.len() - 1], chain[0], sig)
                .map_err(|e| err(ix, CheckKind::Schema, e.to_string()))?;
            expect_eq(c, &Formula::neg(closing), "conclusion", ix, sig)?;
            Ok(none(chain.len() - 1))
        }
        OrCom => {
            arity(1)?;
            no_side()?;
            let Formula::Or(a, b) = &prem(0).conclusion else {
                return Err(schema("premise must be a disjunction".into()));
            };
            let expected = Formula::or((**b).clone(), (**a).clone());
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        OrAss => {
            arity(1)?;
            no_side()?;
            let Formula::Or(ab, cc) = &prem(0).conclusion else {
                return Err(schema("premise must be a left-nested disjunction".into()));
            };
            let Formula::Or(a, b) = ab.as_ref() else {
                return Err(schema("premise must be a left-nested disjunction".into()));
            };
            let expected = Formula::or(
                (**a).clone(),
                Formula::or((**b).clone(), (**cc).clone()),
            );
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        OrSub => {
            arity(2)?;
            no_side()?;
            let Formula::Or(a, b) = &prem(0).conclusion else {
                return Err(schema("major premise must be a disjunction".into()));
            };
            let chi = &prem(1).conclusion;
            let expected = Formula::or(chi.clone(), (**b).clone());
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(vec![BTreeSet::new(), one(a)])
        }
        IDisjIL | IDisjIR => {
            arity(1)?;
            no_side()?;
            let Formula::IntDisj(a, b) = c else {
                return Err(schema("conclusion must be a global disjunction".into()));
            };
            let part = if node.rule == IDisjIL { a } else { b };
            expect_eq(&prem(0).conclusion, part, "premise", ix, sig)?;
            Ok(none(1))
        }
        OrIDisjDst => {
            arity(1)?;
            no_side()?;
            let Formula::Or(a, bc) = &prem(0).conclusion else {
                return Err(schema("premise must disjoin into a global disjunction".into()));
            };
            let Formula::IntDisj(b, cc) = bc.as_ref() else {
                return Err(schema("premise must disjoin into a global disjunction".into()));
            };
            let expected = Formula::idisj(
                Formula::or((**a).clone(), (**b).clone()),
                Formula::or((**a).clone(), (**cc).clone()),
            );
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        CfIDisjDst => {
            arity(1)?;
            no_side()?;
            let (ant, cons) = as_cf(&prem(0).conclusion)
                .ok_or_else(|| schema("premise must be a counterfactual".into()))?;
            let Formula::IntDisj(a, b) = cons else {
                return Err(schema("premise's consequent must be a global disjunction".into()));
            };
            let expected = Formula::idisj(
                Formula::cf(ant.clone(), (**a).clone()),
                Formula::cf(ant.clone(), (**b).clone()),
            );
            expect_eq(c, &expected, "conclusion", ix, sig)?;
            Ok(none(1))
        }
        Unf => {
            arity(0)?;
            no_side()?;
            expect_eq(c, &charform::unf(sig), "conclusion", ix, sig)?;
            Ok(none(0))
        }
        DepI0 => {
            arity(1)?;
            no_side()?;
            let Formula::Eq(x, _) = prem(0).conclusion else {
                return Err(schema("premise must be an equation".into()));
            };
            expect_eq(c, &Formula::constancy(x), "conclusion", ix, sig)?;
            Ok(none(1))
        }
        DepI => {
            arity(1)?;
            no_side()?;
            let Formula::Dep(xs, y) = c else {
                return Err(schema("conclusion must be a dependence atom".into()));
            };
            expect_eq(&prem(0).conclusion, &Formula::constancy(*y), "premise", ix, sig)?;
            Ok(vec![xs.iter().map(|&x| Formula::constancy(x)).collect()])
        }
        Dep0E => {
            let SideData::Occurrence { var, occurrence } = node.side else {
                return Err(schema(
                    "constancy elimination needs the variable and occurrence as side data".into(),
                ));
            };
            if var >= sig.var_count() {
                return Err(schema("side-data variable is not in the signature".into()));
            }
            let cases = sig.range_size(var);
            arity(1 + cases)?;
            let phi = &prem(0).conclusion;
            let total = count_constancy(phi, var);
            if occurrence >= total {
                return Err(schema(format!(
                    "the major premise contains {} occurrence(s) of =({}) but #{} was named",
                    total,
                    sig.var_name(var),
                    occurrence
                )));
            }
            let mut discharges = vec![BTreeSet::new()];
            for (case, val) in sig.values(var).enumerate() {
                expect_eq(&prem(1 + case).conclusion, c, "case conclusion", ix, sig)?;
                let substituted = substitute_constancy(phi, var, occurrence, val);
                discharges.push(one(&substituted));
            }
            Ok(discharges)
        }
        DepE => {
            no_side()?;
            if node.premises.is_empty() {
                return Err(schema("the dependence atom premise is missing".into()));
            }
            let Formula::Dep(xs, y) = &prem(0).conclusion else {
                return Err(schema("first premise must be a dependence atom".into()));
            };
            arity(1 + xs.len())?;
            for (i, &x) in xs.iter().enumerate() {
                expect_eq(
                    &prem(1 + i).conclusion,
                    &Formula::constancy(x),
                    "constancy premise",
                    ix,
                    sig,
                )?;
            }
            expect_eq(c, &Formula::constancy(*y), "conclusion", ix, sig)?;
            Ok(none(1 + xs.len()))
        }
        OneFun => {
            arity(0)?;
            no_side()?;
            expect_eq(c, &charform::one_fun(sig), "conclusion", ix, sig)?;
            Ok(none(0))
        }
        NoMix => {
            arity(0)?;
            no_side()?;
            expect_eq(c, &charform::no_mix(sig), "conclusion", ix, sig)?;
            Ok(none(0))
        }
    }
}

fn expect_eq(
    got: &Formula,
    want: &Formula,
    what: &str,
    ix: usize,
    sig: &Signature,
) -> Result<(), CheckError> {
    if got == want {
        Ok(())
    } else {
        Err(err(
            ix,
            CheckKind::Schema,
            format!("{} must be {}, found {}", what, render(want, sig), render(got, sig)),
        ))
    }
}

fn as_cf(f: &Formula) -> Option<(&EquationSeq, &Formula)> {
    match f {
        Formula::Cf(ant, c) => Some((ant, c)),
        _ => None,
    }
}

/// The leading variable of a right-nested disjunction of equations.
fn first_atom_var(f: &Formula) -> Option<VarIx> {
    match f {
        Formula::Eq(x, _) => Some(*x),
        Formula::Or(a, _) => first_atom_var(a),
        _ => None,
    }
}

/// No counterfactual occurs anywhere in the formula.
fn cf_free(f: &Formula) -> bool {
    match f {
        Formula::Eq(..) | Formula::Bot | Formula::Dep(..) => true,
        Formula::Neg(a) => cf_free(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::IntDisj(a, b) | Formula::SelImp(a, b) => {
            cf_free(a) && cf_free(b)
        }
        Formula::Cf(..) => false,
    }
}

/// Number of occurrences of the constancy atom `=(X)` in preorder.
pub(crate) fn count_constancy(f: &Formula, x: VarIx) -> usize {
    let mut count = 0;
    visit_constancy(f, x, &mut |_| count += 1);
    count
}

/// Replaces the `occurrence`-th (preorder) occurrence of `=(X)` with `X=val`.
pub(crate) fn substitute_constancy(
    f: &Formula,
    x: VarIx,
    occurrence: usize,
    val: ValIx,
) -> Formula {
    fn go(f: &Formula, x: VarIx, seen: &mut usize, target: usize, val: ValIx) -> Formula {
        match f {
            Formula::Dep(xs, y) if xs.is_empty() && *y == x => {
                let hit = *seen == target;
                *seen += 1;
                if hit {
                    Formula::Eq(x, val)
                } else {
                    f.clone()
                }
            }
            Formula::Eq(..) | Formula::Bot | Formula::Dep(..) => f.clone(),
            Formula::Neg(a) => Formula::neg(go(a, x, seen, target, val)),
            Formula::And(a, b) => Formula::and(go(a, x, seen, target, val), go(b, x, seen, target, val)),
            Formula::Or(a, b) => Formula::or(go(a, x, seen, target, val), go(b, x, seen, target, val)),
            Formula::IntDisj(a, b) => {
                Formula::idisj(go(a, x, seen, target, val), go(b, x, seen, target, val))
            }
            Formula::SelImp(a, b) => {
                Formula::selimp(go(a, x, seen, target, val), go(b, x, seen, target, val))
            }
            Formula::Cf(ant, c) => Formula::cf(ant.clone(), go(c, x, seen, target, val)),
        }
    }
    let mut seen = 0;
    go(f, x, &mut seen, occurrence, val)
}

fn visit_constancy(f: &Formula, x: VarIx, hit: &mut impl FnMut(&Formula)) {
    match f {
        Formula::Dep(xs, y) if xs.is_empty() && *y == x => hit(f),
        Formula::Eq(..) | Formula::Bot | Formula::Dep(..) => {}
        Formula::Neg(a) | Formula::Cf(_, a) => visit_constancy(a, x, hit),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::IntDisj(a, b) | Formula::SelImp(a, b) => {
            visit_constancy(a, x, hit);
            visit_constancy(b, x, hit);
        }
    }
}
