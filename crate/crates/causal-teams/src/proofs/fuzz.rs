//! Randomized soundness testing for the calculi: every rule is read as a
//! claim about semantic entailment between judgments `Γ ⊨ φ`, random
//! instances of the rule schema are drawn, and whenever all premise
//! judgments hold under the brute-force oracle the conclusion judgment is
//! asserted to hold too.  Instances whose premises fail (or cannot be
//! decided exactly under the budget) count as vacuous.
//!
//! Rules that discharge hypotheses are tested in that conditional form
//! directly; for the remaining rules the premise formulas themselves serve
//! as the context, which is the strongest instance by monotonicity.  Half
//! of the draws for discharge rules use a configuration whose premises hold
//! by construction, so every rule is exercised non-vacuously.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charform;
use crate::enumeration::UniverseBudget;
use crate::error::ModelError;
use crate::semantics::{entails_ct, entails_gct, Mode};
use crate::signature::{EquationSeq, Signature, ValIx, VarIx};
use crate::syntax::{render, Formula};

use super::derivation::{Calculus, RuleId};

/// Per-rule outcome of a fuzz run.
#[derive(Debug)]
pub struct FuzzOutcome {
    pub rule: RuleId,
    /// Instances drawn.
    pub instances: usize,
    /// Instances whose premise judgments failed or were inexact.
    pub vacuous: usize,
    /// Descriptions of instances whose premises held but conclusion failed.
    pub violations: Vec<String>,
}

/// Outcome of fuzzing every rule of one calculus.
#[derive(Debug)]
pub struct FuzzReport {
    pub calculus: Calculus,
    pub rules: Vec<FuzzOutcome>,
}

impl FuzzReport {
    pub fn violation_count(&self) -> usize {
        self.rules.iter().map(|r| r.violations.len()).sum()
    }
}

/// A semantic judgment: every team satisfying the context satisfies the goal.
struct Judgment {
    context: Vec<Formula>,
    goal: Formula,
}

fn judge(context: Vec<Formula>, goal: Formula) -> Judgment {
    Judgment { context, goal }
}

/// One sampled rule instance.
struct Instance {
    premises: Vec<Judgment>,
    conclusion: Judgment,
}

/// Which connectives the random generator may use.
#[derive(Clone, Copy, PartialEq)]
enum Lang {
    Co,
    CoI,
    Cod,
}

impl Lang {
    fn of(calculus: Calculus) -> Lang {
        match calculus {
            Calculus::Co => Lang::Co,
            Calculus::CoiGct | Calculus::CoiCt => Lang::CoI,
            Calculus::CodGct | Calculus::CodCt => Lang::Cod,
        }
    }
}

/// Fuzzes every rule the calculus admits, drawing `n` instances per rule
/// (parameterless axioms are checked once).
pub fn soundness_fuzz(
    calculus: Calculus,
    sig: &Arc<Signature>,
    n: usize,
    seed: u64,
) -> Result<FuzzReport, ModelError> {
    let modes: &[Mode] = match calculus {
        Calculus::Co => &[Mode::Ct, Mode::Gct],
        Calculus::CoiGct | Calculus::CodGct => &[Mode::Gct],
        Calculus::CoiCt | Calculus::CodCt => &[Mode::Ct],
    };
    let budget = UniverseBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lang = Lang::of(calculus);

    let mut rules = Vec::new();
    for rule in RuleId::ALL {
        if !calculus.admits(rule) {
            continue;
        }
        let fixed_axiom = matches!(rule, RuleId::Unf | RuleId::OneFun | RuleId::NoMix);
        let draws = if fixed_axiom { 1 } else { n };
        let mut outcome =
            FuzzOutcome { rule, instances: 0, vacuous: 0, violations: Vec::new() };
        for k in 0..draws {
            let Some(instance) = draw(rule, sig, lang, &mut rng) else {
                continue; // signature too small for this rule
            };
            outcome.instances += 1;
            for &mode in modes {
                let entails = |j: &Judgment| -> Result<_, ModelError> {
                    match mode {
                        Mode::Ct => entails_ct(&j.context, &j.goal, sig, &budget),
                        Mode::Gct => entails_gct(&j.context, &j.goal, sig, &budget),
                    }
                };
                let mut premises_hold = true;
                for p in &instance.premises {
                    let v = entails(p)?;
                    if !(v.holds && v.exact) {
                        premises_hold = false;
                        break;
                    }
                }
                if !premises_hold {
                    outcome.vacuous += 1;
                    continue;
                }
                let v = entails(&instance.conclusion)?;
                if !v.holds && v.exact {
                    outcome.violations.push(format!(
                        "{} instance {} under {:?}: premises hold but {} ⊭ {}",
                        rule.name(),
                        k,
                        mode,
                        instance
                            .conclusion
                            .context
                            .iter()
                            .map(|f| render(f, sig))
                            .collect::<Vec<_>>()
                            .join(", "),
                        render(&instance.conclusion.goal, sig)
                    ));
                } else if !v.exact {
                    outcome.vacuous += 1;
                }
            }
        }
        rules.push(outcome);
    }
    Ok(FuzzReport { calculus, rules })
}

// ---------------------------------------------------------------------------
// Random material.

fn rand_var(rng: &mut ChaCha8Rng, sig: &Signature) -> VarIx {
    rng.gen_range(0..sig.var_count())
}

fn rand_eq(rng: &mut ChaCha8Rng, sig: &Signature) -> Formula {
    let x = rand_var(rng, sig);
    Formula::Eq(x, rng.gen_range(0..sig.range_size(x)) as ValIx)
}

/// A random antecedent of 1–2 equations; with `consistent`, no variable is
/// assigned two different values.
fn rand_ant(rng: &mut ChaCha8Rng, sig: &Signature, consistent: bool) -> EquationSeq {
    let len = rng.gen_range(1..=2);
    let mut eqs: Vec<(VarIx, ValIx)> = Vec::new();
    while eqs.len() < len {
        let x = rand_var(rng, sig);
        let v = rng.gen_range(0..sig.range_size(x)) as ValIx;
        if consistent && eqs.iter().any(|&(y, w)| y == x && w != v) {
            continue;
        }
        eqs.push((x, v));
    }
    EquationSeq::new(eqs).unwrap()
}

/// A random formula of bounded depth.  Negation and the left side of ⊃ stay
/// in the base language; ⩒ and dependence atoms appear only in their own
/// dialects; `allow_cf` gates counterfactuals.
fn rand_formula(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    depth: usize,
    lang: Lang,
    allow_cf: bool,
) -> Formula {
    if depth == 0 {
        return match rng.gen_range(0..8) {
            0 if lang == Lang::Cod => rand_dep(rng, sig),
            1 => Formula::Bot,
            _ => rand_eq(rng, sig),
        };
    }
    let rec = |rng: &mut ChaCha8Rng, l: Lang| rand_formula(rng, sig, depth - 1, l, allow_cf);
    match rng.gen_range(0..10) {
        0 | 1 => rand_eq(rng, sig),
        2 => Formula::neg(rec(rng, Lang::Co)),
        3 | 4 => Formula::and(rec(rng, lang), rec(rng, lang)),
        5 => Formula::or(rec(rng, lang), rec(rng, lang)),
        6 if allow_cf => {
            let ant = rand_ant(rng, sig, false);
            Formula::cf(ant, rec(rng, lang))
        }
        7 => Formula::selimp(rec(rng, Lang::Co), rec(rng, lang)),
        8 if lang == Lang::CoI => Formula::idisj(rec(rng, lang), rec(rng, lang)),
        8 if lang == Lang::Cod => rand_dep(rng, sig),
        _ => rand_eq(rng, sig),
    }
}

fn rand_dep(rng: &mut ChaCha8Rng, sig: &Signature) -> Formula {
    let y = rand_var(rng, sig);
    let mut xs: Vec<VarIx> = (0..sig.var_count())
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    xs.truncate(2);
    Formula::Dep(xs, y)
}

/// A random context of 0–2 formulas.
fn rand_context(rng: &mut ChaCha8Rng, sig: &Signature, lang: Lang) -> Vec<Formula> {
    let k = rng.gen_range(0..=2);
    (0..k).map(|_| rand_formula(rng, sig, 2, lang, true)).collect()
}

// ---------------------------------------------------------------------------
// Per-rule instance generators.

fn draw(rule: RuleId, sig: &Arc<Signature>, lang: Lang, rng: &mut ChaCha8Rng) -> Option<Instance> {
    let f = |rng: &mut ChaCha8Rng, depth: usize| rand_formula(rng, sig, depth, lang, true);
    let co = |rng: &mut ChaCha8Rng, depth: usize| rand_formula(rng, sig, depth, Lang::Co, true);

    // Plain rules: the premise formulas themselves form the context.
    let plain = |premises: Vec<Formula>, conclusion: Formula| -> Option<Instance> {
        Some(Instance {
            premises: Vec::new(),
            conclusion: judge(premises, conclusion),
        })
    };

    use RuleId::*;
    match rule {
        Hyp => {
            let phi = f(rng, 2);
            plain(vec![phi.clone()], phi)
        }
        ValDef => {
            let x = rand_var(rng, sig);
            plain(
                vec![],
                Formula::big_or(sig.values(x).map(|v| Formula::Eq(x, v)).collect()),
            )
        }
        ValUnq => {
            let x = rand_var(rng, sig);
            if sig.range_size(x) < 2 {
                return None;
            }
            let v = rng.gen_range(0..sig.range_size(x)) as ValIx;
            let mut w = rng.gen_range(0..sig.range_size(x)) as ValIx;
            if w == v {
                w = (w + 1) % sig.range_size(x) as ValIx;
            }
            plain(vec![Formula::Eq(x, v)], Formula::neg(Formula::Eq(x, w)))
        }
        AndI => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            plain(vec![a.clone(), b.clone()], Formula::and(a, b))
        }
        AndEL | AndER => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            let part = if rule == AndEL { a.clone() } else { b.clone() };
            plain(vec![Formula::and(a, b)], part)
        }
        OrIL | OrIR => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            let have = if rule == OrIL { a.clone() } else { b.clone() };
            plain(vec![have], Formula::or(a, b))
        }
        OrE => {
            let (a, b) = (co(rng, 2), co(rng, 2));
            let guaranteed = rng.gen_bool(0.5);
            let alpha =
                if guaranteed { Formula::or(a.clone(), b.clone()) } else { co(rng, 2) };
            let gamma = if guaranteed {
                vec![Formula::or(a.clone(), b.clone())]
            } else {
                rand_context(rng, sig, lang)
            };
            let with = |extra: &Formula| {
                let mut ctx = gamma.clone();
                ctx.push(extra.clone());
                ctx
            };
            Some(Instance {
                premises: vec![
                    judge(gamma.clone(), Formula::or(a.clone(), b.clone())),
                    judge(with(&a), alpha.clone()),
                    judge(with(&b), alpha.clone()),
                ],
                conclusion: judge(gamma, alpha),
            })
        }
        NegI => {
            let guaranteed = rng.gen_bool(0.5);
            let alpha = if guaranteed {
                let beta = co(rng, 1);
                Formula::and(beta.clone(), Formula::neg(beta))
            } else {
                co(rng, 2)
            };
            let gamma = rand_context(rng, sig, lang);
            let mut ctx = gamma.clone();
            ctx.push(alpha.clone());
            Some(Instance {
                premises: vec![judge(ctx, Formula::Bot)],
                conclusion: judge(gamma, Formula::neg(alpha)),
            })
        }
        NegE => {
            let a = co(rng, 2);
            let chi = f(rng, 2);
            plain(vec![a.clone(), Formula::neg(a)], chi)
        }
        Raa => {
            let guaranteed = rng.gen_bool(0.5);
            let alpha = if guaranteed {
                let beta = co(rng, 1);
                Formula::or(beta.clone(), Formula::neg(beta))
            } else {
                co(rng, 2)
            };
            let gamma = rand_context(rng, sig, lang);
            let mut ctx = gamma.clone();
            ctx.push(Formula::neg(alpha.clone()));
            Some(Instance {
                premises: vec![judge(ctx, Formula::Bot)],
                conclusion: judge(gamma, alpha),
            })
        }
        CfEff => {
            let ant = rand_ant(rng, sig, false);
            let pick = rng.gen_range(0..ant.equations().len());
            let (y, v) = ant.equations()[pick];
            plain(vec![], Formula::cf(ant, Formula::Eq(y, v)))
        }
        CfCmp => {
            let ant = rand_ant(rng, sig, false);
            let w = rand_var(rng, sig);
            let v = rng.gen_range(0..sig.range_size(w)) as ValIx;
            let gamma = rand_formula(rng, sig, 2, lang, false);
            let mut eqs = ant.equations().to_vec();
            eqs.push((w, v));
            plain(
                vec![
                    Formula::cf(ant.clone(), Formula::Eq(w, v)),
                    Formula::cf(ant, gamma.clone()),
                ],
                Formula::cf(EquationSeq::new(eqs).unwrap(), gamma),
            )
        }
        CfBotE => {
            let ant = rand_ant(rng, sig, true);
            let chi = f(rng, 2);
            plain(vec![Formula::cf(ant, Formula::Bot)], chi)
        }
        BotCfE => {
            let x = rand_var(rng, sig);
            if sig.range_size(x) < 2 {
                return None;
            }
            let v = rng.gen_range(0..sig.range_size(x)) as ValIx;
            let w = (v + 1) % sig.range_size(x) as ValIx;
            let mut eqs = if rng.gen_bool(0.5) {
                rand_ant(rng, sig, false).equations().to_vec()
            } else {
                vec![]
            };
            eqs.push((x, v));
            eqs.push((x, w));
            plain(
                vec![],
                Formula::cf(EquationSeq::new(eqs).unwrap(), f(rng, 2)),
            )
        }
        CfCtr | CfWk => {
            let ant = rand_ant(rng, sig, false);
            let phi = f(rng, 2);
            let mut doubled = vec![ant.equations()[0]];
            doubled.extend_from_slice(ant.equations());
            let long = Formula::cf(EquationSeq::new(doubled).unwrap(), phi.clone());
            let short = Formula::cf(ant, phi);
            if rule == CfCtr {
                plain(vec![long], short)
            } else {
                plain(vec![short], long)
            }
        }
        CfSub => {
            let ant = rand_ant(rng, sig, false);
            let phi = f(rng, 2);
            let psi = if rng.gen_bool(0.5) {
                Formula::or(phi.clone(), f(rng, 2))
            } else {
                f(rng, 2)
            };
            let gamma = rand_context(rng, sig, lang);
            Some(Instance {
                premises: vec![
                    judge(gamma.clone(), Formula::cf(ant.clone(), phi.clone())),
                    judge(vec![phi], psi.clone()),
                ],
                conclusion: judge(gamma, Formula::cf(ant, psi)),
            })
        }
        CfAndI => {
            let ant = rand_ant(rng, sig, false);
            let (a, b) = (f(rng, 2), f(rng, 2));
            plain(
                vec![
                    Formula::cf(ant.clone(), a.clone()),
                    Formula::cf(ant.clone(), b.clone()),
                ],
                Formula::cf(ant, Formula::and(a, b)),
            )
        }
        CfOrDstFwd | CfOrDstBwd => {
            let ant = rand_ant(rng, sig, false);
            let (a, b) = (f(rng, 2), f(rng, 2));
            let joint = Formula::cf(ant.clone(), Formula::or(a.clone(), b.clone()));
            let split = Formula::or(
                Formula::cf(ant.clone(), a),
                Formula::cf(ant, b),
            );
            if rule == CfOrDstFwd {
                plain(vec![joint], split)
            } else {
                plain(vec![split], joint)
            }
        }
        CfExtr => {
            let outer = rand_ant(rng, sig, true);
            let inner = rand_ant(rng, sig, false);
            let phi = f(rng, 2);
            let inner_mask = inner.var_mask();
            let mut eqs: Vec<(VarIx, ValIx)> = outer
                .equations()
                .iter()
                .copied()
                .filter(|&(v, _)| inner_mask & (1 << v) == 0)
                .collect();
            eqs.extend_from_slice(inner.equations());
            plain(
                vec![Formula::cf(outer, Formula::cf(inner, phi.clone()))],
                Formula::cf(EquationSeq::new(eqs).unwrap(), phi),
            )
        }
        CfExp => {
            if sig.var_count() < 2 {
                return None;
            }
            let mut vars: Vec<VarIx> = (0..sig.var_count()).collect();
            let pick = rng.gen_range(0..vars.len());
            vars.swap(0, pick);
            let take = rng.gen_range(2..=vars.len().min(3));
            let eqs: Vec<(VarIx, ValIx)> = vars[..take]
                .iter()
                .map(|&x| (x, rng.gen_range(0..sig.range_size(x)) as ValIx))
                .collect();
            let k = rng.gen_range(1..take);
            let phi = f(rng, 2);
            let head = EquationSeq::new(eqs[..k].to_vec()).unwrap();
            let tail = EquationSeq::new(eqs[k..].to_vec()).unwrap();
            plain(
                vec![Formula::cf(EquationSeq::new(eqs.clone()).unwrap(), phi.clone())],
                Formula::cf(head, Formula::cf(tail, phi)),
            )
        }
        NegCfE => {
            let ant = rand_ant(rng, sig, false);
            let alpha = co(rng, 2);
            plain(
                vec![Formula::neg(Formula::cf(ant.clone(), alpha.clone()))],
                Formula::cf(ant, Formula::neg(alpha)),
            )
        }
        Recur => {
            if sig.var_count() < 2 {
                return None;
            }
            let len = rng.gen_range(2..=sig.var_count().min(3));
            let mut vars: Vec<VarIx> = (0..sig.var_count()).collect();
            for i in 0..len {
                let j = rng.gen_range(i..vars.len());
                vars.swap(i, j);
            }
            let chain = &vars[..len];
            let mut premises = Vec::new();
            for i in 0..len - 1 {
                premises.push(charform::leadsto(chain[i], chain[i + 1], sig).ok()?);
            }
            let closing = charform::leadsto(chain[len - 1], chain[0], sig).ok()?;
            plain(premises, Formula::neg(closing))
        }
        OrCom => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            plain(
                vec![Formula::or(a.clone(), b.clone())],
                Formula::or(b, a),
            )
        }
        OrAss => {
            let (a, b, c) = (f(rng, 2), f(rng, 2), f(rng, 2));
            plain(
                vec![Formula::or(Formula::or(a.clone(), b.clone()), c.clone())],
                Formula::or(a, Formula::or(b, c)),
            )
        }
        OrSub => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            let guaranteed = rng.gen_bool(0.5);
            let chi = if guaranteed { a.clone() } else { f(rng, 2) };
            let gamma = if guaranteed {
                vec![Formula::or(a.clone(), b.clone())]
            } else {
                rand_context(rng, sig, lang)
            };
            let mut ctx = gamma.clone();
            ctx.push(a.clone());
            Some(Instance {
                premises: vec![
                    judge(gamma.clone(), Formula::or(a, b.clone())),
                    judge(ctx, chi.clone()),
                ],
                conclusion: judge(gamma, Formula::or(chi, b)),
            })
        }
        IDisjIL | IDisjIR => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            let have = if rule == IDisjIL { a.clone() } else { b.clone() };
            plain(vec![have], Formula::idisj(a, b))
        }
        IDisjE => {
            let (a, b) = (f(rng, 2), f(rng, 2));
            let guaranteed = rng.gen_bool(0.5);
            let chi =
                if guaranteed { Formula::idisj(a.clone(), b.clone()) } else { f(rng, 2) };
            let gamma = if guaranteed {
                vec![Formula::idisj(a.clone(), b.clone())]
            } else {
                rand_context(rng, sig, lang)
            };
            let with = |extra: &Formula| {
                let mut ctx = gamma.clone();
                ctx.push(extra.clone());
                ctx
            };
            Some(Instance {
                premises: vec![
                    judge(gamma.clone(), Formula::idisj(a.clone(), b.clone())),
                    judge(with(&a), chi.clone()),
                    judge(with(&b), chi.clone()),
                ],
                conclusion: judge(gamma, chi),
            })
        }
        OrIDisjDst => {
            let (a, b, c) = (f(rng, 2), f(rng, 2), f(rng, 2));
            plain(
                vec![Formula::or(a.clone(), Formula::idisj(b.clone(), c.clone()))],
                Formula::idisj(
                    Formula::or(a.clone(), b),
                    Formula::or(a, c),
                ),
            )
        }
        CfIDisjDst => {
            let ant = rand_ant(rng, sig, false);
            let (a, b) = (f(rng, 2), f(rng, 2));
            plain(
                vec![Formula::cf(ant.clone(), Formula::idisj(a.clone(), b.clone()))],
                Formula::idisj(
                    Formula::cf(ant.clone(), a),
                    Formula::cf(ant, b),
                ),
            )
        }
        Unf => plain(vec![], charform::unf(sig)),
        DepI0 => {
            let x = rand_var(rng, sig);
            let v = rng.gen_range(0..sig.range_size(x)) as ValIx;
            plain(vec![Formula::Eq(x, v)], Formula::constancy(x))
        }
        DepI => {
            let y = rand_var(rng, sig);
            let xs: Vec<VarIx> = (0..sig.var_count()).filter(|_| rng.gen_bool(0.5)).collect();
            let guaranteed = rng.gen_bool(0.5);
            let gamma = if guaranteed {
                vec![Formula::Dep(xs.clone(), y)]
            } else {
                rand_context(rng, sig, lang)
            };
            let mut ctx = gamma.clone();
            ctx.extend(xs.iter().map(|&x| Formula::constancy(x)));
            Some(Instance {
                premises: vec![judge(ctx, Formula::constancy(y))],
                conclusion: judge(gamma, Formula::Dep(xs, y)),
            })
        }
        Dep0E => {
            let x = rand_var(rng, sig);
            let graft = rng.gen_range(0..3);
            let body = rand_formula(rng, sig, 1, lang, true);
            let phi = match graft {
                0 => Formula::and(Formula::constancy(x), body),
                1 => Formula::or(body, Formula::constancy(x)),
                _ => Formula::cf(rand_ant(rng, sig, false), Formula::constancy(x)),
            };
            let occurrence = 0;
            let guaranteed = rng.gen_bool(0.5);
            let gamma = vec![phi.clone()];
            let psi = if guaranteed {
                Formula::big_or(
                    sig.values(x)
                        .map(|v| super::check::substitute_constancy(&phi, x, occurrence, v))
                        .collect(),
                )
            } else {
                f(rng, 2)
            };
            let mut premises = vec![judge(gamma.clone(), phi.clone())];
            for v in sig.values(x) {
                let mut ctx = gamma.clone();
                ctx.push(super::check::substitute_constancy(&phi, x, occurrence, v));
                premises.push(judge(ctx, psi.clone()));
            }
            Some(Instance { premises, conclusion: judge(gamma, psi) })
        }
        DepE => {
            let y = rand_var(rng, sig);
            let xs: Vec<VarIx> = (0..sig.var_count()).filter(|_| rng.gen_bool(0.5)).collect();
            let mut ctx = vec![Formula::Dep(xs.clone(), y)];
            ctx.extend(xs.iter().map(|&x| Formula::constancy(x)));
            plain(ctx, Formula::constancy(y))
        }
        OneFun => plain(vec![], charform::one_fun(sig)),
        NoMix => plain(vec![], charform::no_mix(sig)),
    }
}
