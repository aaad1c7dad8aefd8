//! Formula ASTs for the three languages over a signature, their
//! well-formedness classification, and the definable-connective desugarings.
//!
//! The base language has equations `X=x`, falsum, negation, conjunction,
//! local disjunction `∨`, selective implication `⊃`, and the counterfactual
//! `X=x □→ φ`.  It extends in two directions that do not mix:
//!
//! * with dependence atoms `=(X₁,…,Xₙ;Y)` and constancy atoms `=(Y)`;
//! * with the global disjunction `⩒`.
//!
//! Negation applies only to base-language formulas, as does the left side of
//! `⊃`.  [`classify`] checks these restrictions and names the offending
//! subformula by its path when they fail; [`parse`](crate::syntax::parse)
//! enforces them with source positions.
//!
//! Concrete syntax (ASCII): `->` for `□→`, `=>` for `⊃`, `\/` for `∨`,
//! `\\/` for `⩒`, `/\` for `∧`, `!` for `¬`, `!=` for `≠`, `_|_` for `⊥`,
//! `=(X1,...,Xn;Y)` and `=(X)` for the dependence and constancy atoms.
//! Precedence, loosest first: `->`, `=>`, `\\/`, `\/`, `/\`, `!`; binary
//! connectives associate to the right.

mod parse;
mod render;

pub use parse::{parse, SyntaxError};
pub use render::render;

use crate::error::ModelError;
use crate::signature::{EquationSeq, Signature, ValIx, VarIx};

/// A formula over an ambient signature; variables and values by index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `X = x`.
    Eq(VarIx, ValIx),
    /// `⊥`.
    Bot,
    /// `¬α`; well-formed only when `α` is in the base language.
    Neg(Box<Formula>),
    /// `φ ∧ ψ`.
    And(Box<Formula>, Box<Formula>),
    /// Local (team-splitting) disjunction `φ ∨ ψ`.
    Or(Box<Formula>, Box<Formula>),
    /// Global disjunction `φ ⩒ ψ`.
    IntDisj(Box<Formula>, Box<Formula>),
    /// Dependence atom `=(X₁,…,Xₙ;Y)`; an empty list is the constancy atom
    /// `=(Y)`.
    Dep(Vec<VarIx>, VarIx),
    /// Counterfactual `X₁=x₁ ∧ … ∧ Xₙ=xₙ □→ φ` with the antecedent kept as
    /// an ordered sequence (repeats allowed; proof rules reorder them).
    Cf(EquationSeq, Box<Formula>),
    /// Selective implication `α ⊃ ψ`; well-formed only when `α` is in the
    /// base language.  Definable as `¬α ∨ ψ`, see [`desugar`].
    SelImp(Box<Formula>, Box<Formula>),
}

/// The language a well-formed formula belongs to.
///
/// `Co` formulas belong to both extensions; `Cod` adds dependence atoms,
/// `CoI` adds the global disjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaClass {
    Co,
    Cod,
    CoI,
}

impl FormulaClass {
    /// True iff a formula of this class is also one of `other`'s.
    pub fn within(self, other: FormulaClass) -> bool {
        self == FormulaClass::Co || self == other
    }
}

/// Why a formula failed classification, with the path (child indices from
/// the root) of the offending subformula.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IllFormed {
    #[error("negation applies only to base-language formulas (at path {path:?})")]
    NegationOverNonBase { path: Vec<usize> },
    #[error("the left side of => must be a base-language formula (at path {path:?})")]
    SelImpLeftNonBase { path: Vec<usize> },
    #[error("dependence atoms and \\\\/ cannot mix (at path {path:?})")]
    MixedExtensions { path: Vec<usize> },
}

impl IllFormed {
    /// The path of the offending subformula.
    pub fn path(&self) -> &[usize] {
        match self {
            IllFormed::NegationOverNonBase { path }
            | IllFormed::SelImpLeftNonBase { path }
            | IllFormed::MixedExtensions { path } => path,
        }
    }
}

fn join(
    a: FormulaClass,
    b: FormulaClass,
    path: &[usize],
) -> Result<FormulaClass, IllFormed> {
    use FormulaClass::*;
    match (a, b) {
        (Co, x) | (x, Co) => Ok(x),
        (Cod, Cod) => Ok(Cod),
        (CoI, CoI) => Ok(CoI),
        _ => Err(IllFormed::MixedExtensions { path: path.to_vec() }),
    }
}

/// Determines which grammar generates the formula, or how it fails all
/// three.
pub fn classify(phi: &Formula) -> Result<FormulaClass, IllFormed> {
    fn go(phi: &Formula, path: &mut Vec<usize>) -> Result<FormulaClass, IllFormed> {
        use FormulaClass::*;
        match phi {
            Formula::Eq(..) | Formula::Bot => Ok(Co),
            Formula::Dep(..) => Ok(Cod),
            Formula::Neg(a) => {
                path.push(0);
                let ca = go(a, path)?;
                path.pop();
                if ca == Co {
                    Ok(Co)
                } else {
                    Err(IllFormed::NegationOverNonBase { path: path.clone() })
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::IntDisj(a, b) => {
                path.push(0);
                let ca = go(a, path)?;
                path.pop();
                path.push(1);
                let cb = go(b, path)?;
                path.pop();
                let joined = join(ca, cb, path)?;
                if matches!(phi, Formula::IntDisj(..)) {
                    join(joined, CoI, path)
                } else {
                    Ok(joined)
                }
            }
            Formula::Cf(_, c) => {
                path.push(0);
                let cc = go(c, path)?;
                path.pop();
                Ok(cc)
            }
            Formula::SelImp(a, b) => {
                path.push(0);
                let ca = go(a, path)?;
                path.pop();
                if ca != Co {
                    return Err(IllFormed::SelImpLeftNonBase { path: path.clone() });
                }
                path.push(1);
                let cb = go(b, path)?;
                path.pop();
                Ok(cb)
            }
        }
    }
    go(phi, &mut Vec::new())
}

/// Checks that every variable and value index is legal for the signature.
pub fn validate(phi: &Formula, sig: &Signature) -> Result<(), ModelError> {
    let check_var = |v: VarIx| -> Result<(), ModelError> {
        if v >= sig.var_count() {
            return Err(ModelError::Invalid(format!("variable index {v} out of range")));
        }
        Ok(())
    };
    let check_eq = |v: VarIx, x: ValIx| -> Result<(), ModelError> {
        check_var(v)?;
        if (x as usize) >= sig.range_size(v) {
            return Err(ModelError::ValueOutOfRange {
                var: sig.var_name(v).to_string(),
                value: x as usize,
            });
        }
        Ok(())
    };
    match phi {
        Formula::Eq(v, x) => check_eq(*v, *x),
        Formula::Bot => Ok(()),
        Formula::Neg(a) => validate(a, sig),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::IntDisj(a, b)
        | Formula::SelImp(a, b) => {
            validate(a, sig)?;
            validate(b, sig)
        }
        Formula::Dep(xs, y) => {
            for &x in xs {
                check_var(x)?;
            }
            check_var(*y)
        }
        Formula::Cf(ant, c) => {
            for &(v, x) in ant.equations() {
                check_eq(v, x)?;
            }
            validate(c, sig)
        }
    }
}

impl Formula {
    pub fn eq(v: VarIx, x: ValIx) -> Formula {
        Formula::Eq(v, x)
    }

    #[allow(clippy::should_implement_trait)] // ¬ constructor, not arithmetic negation
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn idisj(a: Formula, b: Formula) -> Formula {
        Formula::IntDisj(Box::new(a), Box::new(b))
    }

    pub fn dep(xs: Vec<VarIx>, y: VarIx) -> Formula {
        Formula::Dep(xs, y)
    }

    /// The constancy atom `=(Y)`.
    pub fn constancy(y: VarIx) -> Formula {
        Formula::Dep(Vec::new(), y)
    }

    pub fn cf(ant: EquationSeq, c: Formula) -> Formula {
        Formula::Cf(ant, Box::new(c))
    }

    pub fn selimp(a: Formula, b: Formula) -> Formula {
        Formula::SelImp(Box::new(a), Box::new(b))
    }

    /// `⊤`, spelled `¬⊥`.
    pub fn top() -> Formula {
        Formula::neg(Formula::Bot)
    }

    /// A counterfactual over a possibly empty list of equations: with an
    /// empty list there is nothing to intervene on and the consequent is
    /// returned bare.
    pub fn cf_over(pairs: Vec<(VarIx, ValIx)>, c: Formula) -> Formula {
        match EquationSeq::new(pairs) {
            Ok(ant) => Formula::cf(ant, c),
            Err(_) => c,
        }
    }

    /// Right-nested conjunction; empty input yields `⊤`.
    pub fn big_and(parts: Vec<Formula>) -> Formula {
        parts
            .into_iter()
            .rev()
            .reduce(|acc, f| Formula::and(f, acc))
            .unwrap_or_else(Formula::top)
    }

    /// Right-nested local disjunction; empty input yields `⊥`.
    pub fn big_or(parts: Vec<Formula>) -> Formula {
        parts
            .into_iter()
            .rev()
            .reduce(|acc, f| Formula::or(f, acc))
            .unwrap_or(Formula::Bot)
    }

    /// Right-nested global disjunction; empty input yields `⊥`.
    pub fn big_idisj(parts: Vec<Formula>) -> Formula {
        parts
            .into_iter()
            .rev()
            .reduce(|acc, f| Formula::idisj(f, acc))
            .unwrap_or(Formula::Bot)
    }

    /// `⊥` spelled as the contradictory conjunction `X=x ∧ X≠x` over the
    /// first variable and its first value, for contexts that need falsum as
    /// a concrete pair of equation literals.
    pub fn bot_as_equations() -> Formula {
        Formula::and(Formula::Eq(0, 0), Formula::neg(Formula::Eq(0, 0)))
    }

    /// True iff the formula contains no `Dep` and no `IntDisj` and so lies
    /// in the base language (assuming it is well-formed at all).
    pub fn is_base(&self) -> bool {
        matches!(classify(self), Ok(FormulaClass::Co))
    }
}

/// Eliminates selective implications: `α ⊃ ψ` becomes `¬α ∨ ψ`.
pub fn desugar(phi: &Formula) -> Formula {
    match phi {
        Formula::Eq(..) | Formula::Bot | Formula::Dep(..) => phi.clone(),
        Formula::Neg(a) => Formula::neg(desugar(a)),
        Formula::And(a, b) => Formula::and(desugar(a), desugar(b)),
        Formula::Or(a, b) => Formula::or(desugar(a), desugar(b)),
        Formula::IntDisj(a, b) => Formula::idisj(desugar(a), desugar(b)),
        Formula::Cf(ant, c) => Formula::cf(ant.clone(), desugar(c)),
        Formula::SelImp(a, b) => Formula::or(Formula::neg(desugar(a)), desugar(b)),
    }
}

/// Eliminates selective implications *and* dependence atoms, producing a
/// formula of the global-disjunction language:
///
/// * `=(Y)` becomes `⩒_{y ∈ Ran(Y)} Y=y`;
/// * `=(X₁,…,Xₙ;Y)` becomes `⋁` over all value tuples `x` of
///   `X₁=x₁ ∧ … ∧ Xₙ=xₙ ∧ (⩒_y Y=y)`.
pub fn desugar_dep(phi: &Formula, sig: &Signature) -> Formula {
    match phi {
        Formula::Eq(..) | Formula::Bot => phi.clone(),
        Formula::Neg(a) => Formula::neg(desugar_dep(a, sig)),
        Formula::And(a, b) => Formula::and(desugar_dep(a, sig), desugar_dep(b, sig)),
        Formula::Or(a, b) => Formula::or(desugar_dep(a, sig), desugar_dep(b, sig)),
        Formula::IntDisj(a, b) => Formula::idisj(desugar_dep(a, sig), desugar_dep(b, sig)),
        Formula::Cf(ant, c) => Formula::cf(ant.clone(), desugar_dep(c, sig)),
        Formula::SelImp(a, b) => {
            Formula::or(Formula::neg(desugar_dep(a, sig)), desugar_dep(b, sig))
        }
        Formula::Dep(xs, y) => {
            let constancy = Formula::big_idisj(
                sig.values(*y).map(|v| Formula::Eq(*y, v)).collect(),
            );
            if xs.is_empty() {
                return constancy;
            }
            let mut disjuncts = Vec::new();
            crate::fc::for_each_tuple(sig, xs, |tuple| {
                let mut parts: Vec<Formula> = xs
                    .iter()
                    .zip(tuple)
                    .map(|(&x, &v)| Formula::Eq(x, v))
                    .collect();
                parts.push(constancy.clone());
                disjuncts.push(Formula::big_and(parts));
            });
            Formula::big_or(disjuncts)
        }
    }
}
