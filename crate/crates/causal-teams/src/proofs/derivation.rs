//! Derivations as indexed node lists with explicit hypothesis bookkeeping.
//!
//! A node records the open hypotheses of its subderivation, its conclusion,
//! the rule that produced it, the earlier nodes it consumes, and any
//! rule-specific side data.  Keeping the hypothesis sets explicit makes the
//! discharge conditions of rules like [`RuleId::OrE`] local: the checker
//! recomputes every set from the premises and compares.

use crate::signature::VarIx;
use crate::syntax::{Formula, FormulaClass};
use std::collections::BTreeSet;

/// The five checkable calculi.  All contain the base rules
/// ([`RuleId::is_base`]); the extensions add connective rules and, for the
/// causal-team variants, the axioms characterizing uniformity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Calculus {
    /// Base language; sound and complete over both kinds of teams.
    Co,
    /// Global-disjunction language over generalized causal teams.
    CoiGct,
    /// Global-disjunction language over causal teams: adds `Unf`.
    CoiCt,
    /// Dependence language over generalized causal teams.
    CodGct,
    /// Dependence language over causal teams: adds `OneFun` and `NoMix`.
    CodCt,
}

impl Calculus {
    pub const ALL: [Calculus; 5] = [
        Calculus::Co,
        Calculus::CoiGct,
        Calculus::CoiCt,
        Calculus::CodGct,
        Calculus::CodCt,
    ];

    /// The largest formula class the calculus speaks about.
    pub fn language(self) -> FormulaClass {
        match self {
            Calculus::Co => FormulaClass::Co,
            Calculus::CoiGct | Calculus::CoiCt => FormulaClass::CoI,
            Calculus::CodGct | Calculus::CodCt => FormulaClass::Cod,
        }
    }

    /// Is the rule part of this calculus?
    pub fn admits(self, rule: RuleId) -> bool {
        use RuleId::*;
        if rule.is_base() {
            return true;
        }
        match rule {
            OrCom | OrAss | OrSub => self != Calculus::Co,
            IDisjIL | IDisjIR | IDisjE | OrIDisjDst | CfIDisjDst => {
                matches!(self, Calculus::CoiGct | Calculus::CoiCt)
            }
            Unf => self == Calculus::CoiCt,
            DepI0 | DepI | Dep0E | DepE => {
                matches!(self, Calculus::CodGct | Calculus::CodCt)
            }
            OneFun | NoMix => self == Calculus::CodCt,
            _ => unreachable!("base rules already handled"),
        }
    }

    /// Stable command-line spelling.
    pub fn name(self) -> &'static str {
        match self {
            Calculus::Co => "co",
            Calculus::CoiGct => "coi-gct",
            Calculus::CoiCt => "coi-ct",
            Calculus::CodGct => "cod-gct",
            Calculus::CodCt => "cod-ct",
        }
    }

    pub fn from_name(name: &str) -> Option<Calculus> {
        Calculus::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Every inference rule of every calculus, plus `Hyp` for opening a
/// hypothesis.  The derivation file format uses [`RuleId::name`] spellings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// Opens the hypothesis φ, concluding φ from {φ}.
    Hyp,
    /// Axiom: some value of the variable obtains, `⋁_x X=x`.
    ValDef,
    /// From `X=x` conclude `¬ X=x′` for a different value `x′`.
    ValUnq,
    AndI,
    AndEL,
    AndER,
    OrIL,
    OrIR,
    /// Case elimination for `∨`; the conclusion must be base-language.
    OrE,
    NegI,
    NegE,
    Raa,
    /// Axiom: an intervention forces the values it sets.
    CfEff,
    /// Merges a derived equation into the antecedent; the consequent must
    /// be counterfactual-free.
    CfCmp,
    /// A consistently-reachable contradiction proves anything.
    CfBotE,
    /// Axiom: a counterfactual with a contradictory antecedent holds.
    BotCfE,
    /// Drops a duplicated leading antecedent equation.
    CfCtr,
    /// Duplicates the leading antecedent equation.
    CfWk,
    /// Rewrites the consequent by a subderivation from it alone.
    CfSub,
    CfAndI,
    CfOrDstFwd,
    CfOrDstBwd,
    /// Flattens a nested counterfactual; outer antecedent consistent.
    CfExtr,
    /// Nests a counterfactual at a split with disjoint variable sets.
    CfExp,
    /// Pushes a negation through a counterfactual.
    NegCfE,
    /// From a chain of influence formulas, denies the closing link.
    Recur,
    OrCom,
    OrAss,
    /// Rewrites the left disjunct by a subderivation.
    OrSub,
    IDisjIL,
    IDisjIR,
    IDisjE,
    OrIDisjDst,
    CfIDisjDst,
    /// Axiom: the uniformity formula of the signature.
    Unf,
    /// From `X=x` conclude the constancy atom `=(X)`.
    DepI0,
    /// Introduces a dependence atom by discharging constancy hypotheses.
    DepI,
    /// Eliminates one constancy-atom occurrence by cases over the range.
    Dep0E,
    /// A dependence atom plus constant arguments yield a constant value.
    DepE,
    /// Axiom: direct-cause variables follow one shared function.
    OneFun,
    /// Axiom: members agree on which variables are endogenous.
    NoMix,
}

impl RuleId {
    pub const ALL: [RuleId; 41] = {
        use RuleId::*;
        [
            Hyp, ValDef, ValUnq, AndI, AndEL, AndER, OrIL, OrIR, OrE, NegI, NegE, Raa,
            CfEff, CfCmp, CfBotE, BotCfE, CfCtr, CfWk, CfSub, CfAndI, CfOrDstFwd,
            CfOrDstBwd, CfExtr, CfExp, NegCfE, Recur, OrCom, OrAss, OrSub, IDisjIL,
            IDisjIR, IDisjE, OrIDisjDst, CfIDisjDst, Unf, DepI0, DepI, Dep0E, DepE,
            OneFun, NoMix,
        ]
    };

    /// Base rules, common to all five calculi.
    pub fn is_base(self) -> bool {
        use RuleId::*;
        matches!(
            self,
            Hyp | ValDef
                | ValUnq
                | AndI
                | AndEL
                | AndER
                | OrIL
                | OrIR
                | OrE
                | NegI
                | NegE
                | Raa
                | CfEff
                | CfCmp
                | CfBotE
                | BotCfE
                | CfCtr
                | CfWk
                | CfSub
                | CfAndI
                | CfOrDstFwd
                | CfOrDstBwd
                | CfExtr
                | CfExp
                | NegCfE
                | Recur
        )
    }

    /// The spelling used in derivation files.
    pub fn name(self) -> &'static str {
        use RuleId::*;
        match self {
            Hyp => "Hyp",
            ValDef => "ValDef",
            ValUnq => "ValUnq",
            AndI => "AndI",
            AndEL => "AndE_L",
            AndER => "AndE_R",
            OrIL => "OrI_L",
            OrIR => "OrI_R",
            OrE => "OrE",
            NegI => "NegI",
            NegE => "NegE",
            Raa => "RAA",
            CfEff => "CfEff",
            CfCmp => "CfCmp",
            CfBotE => "CfBotE",
            BotCfE => "BotCfE",
            CfCtr => "CfCtr",
            CfWk => "CfWk",
            CfSub => "CfSub",
            CfAndI => "CfAndI",
            CfOrDstFwd => "CfOrDst_fwd",
            CfOrDstBwd => "CfOrDst_bwd",
            CfExtr => "CfExtr",
            CfExp => "CfExp",
            NegCfE => "NegCfE",
            Recur => "Recur",
            OrCom => "OrCom",
            OrAss => "OrAss",
            OrSub => "OrSub",
            IDisjIL => "IDisjI_L",
            IDisjIR => "IDisjI_R",
            IDisjE => "IDisjE",
            OrIDisjDst => "OrIDisjDst",
            CfIDisjDst => "CfIDisjDst",
            Unf => "Unf",
            DepI0 => "DepI0",
            DepI => "DepI",
            Dep0E => "Dep0E",
            DepE => "DepE",
            OneFun => "OneFun",
            NoMix => "NoMix",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == name)
    }
}

/// Rule-specific payload carried by a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideData {
    None,
    /// `CfExp`: how many leading antecedent equations stay on the outer
    /// counterfactual.
    Split(usize),
    /// `Dep0E`: which constancy-atom occurrence of `var` (0-based, in
    /// preorder) in the major premise is eliminated.
    Occurrence { var: VarIx, occurrence: usize },
    /// `Recur`: the influence chain `X₁ ⤳ … ⤳ X_k`.
    Chain(Vec<VarIx>),
}

/// One inference step.  `premises` are 1-based indices of earlier nodes,
/// matching the numbering of the file format and of error reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub hypotheses: BTreeSet<Formula>,
    pub conclusion: Formula,
    pub rule: RuleId,
    pub premises: Vec<usize>,
    pub side: SideData,
}

/// A derivation: declared assumptions plus the node list.  The last node is
/// the conclusion; checking verifies its hypotheses are all declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub assumptions: Vec<Formula>,
    pub nodes: Vec<Node>,
}

impl Derivation {
    /// The conclusion of the final node, if any.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.nodes.last().map(|n| &n.conclusion)
    }
}
