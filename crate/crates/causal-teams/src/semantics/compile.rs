//! Compilation of formulas into a flat node arena.
//!
//! Both evaluators walk the same compiled form.  Each node records whether
//! its subformula lies in the base language (no dependence atoms, no global
//! disjunction): base-language formulas are flat — a team satisfies one iff
//! every singleton subteam does — so they are evaluated through per-point
//! satisfaction masks instead of subset search.  Counterfactual antecedents
//! are normalized at compile time into their forced-value list (or marked
//! inconsistent, in which case the counterfactual is vacuously true).

use crate::error::ModelError;
use crate::signature::{Signature, ValIx, VarIx};
use crate::syntax::{classify, validate, Formula};

pub(crate) type NodeId = usize;

pub(crate) enum NodeKind {
    Eq(VarIx, ValIx),
    Bot,
    Neg(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    IntDisj(NodeId, NodeId),
    Dep(Vec<VarIx>, VarIx),
    Cf {
        /// `None` when the antecedent gives one variable two values: the
        /// counterfactual is then vacuously true.  Otherwise the forced
        /// value of each intervened variable, in variable order.
        forced: Option<Vec<(VarIx, ValIx)>>,
        /// Bitmask of the intervened variables.
        var_mask: u64,
        child: NodeId,
    },
    SelImp(NodeId, NodeId),
}

pub(crate) struct Node {
    pub kind: NodeKind,
    /// True iff this subformula is in the base language (flat).
    pub base: bool,
}

/// One or more formulas compiled into a shared arena (children precede
/// parents; no cross-formula sharing).
pub(crate) struct Program {
    pub nodes: Vec<Node>,
}

/// Compiles several formulas over one signature, returning the arena and
/// each formula's root node.
pub(crate) fn compile_many(
    formulas: &[&Formula],
    sig: &Signature,
) -> Result<(Program, Vec<NodeId>), ModelError> {
    let mut prog = Program { nodes: Vec::new() };
    let mut roots = Vec::with_capacity(formulas.len());
    for phi in formulas {
        validate(phi, sig)?;
        classify(phi).map_err(|e| ModelError::Invalid(e.to_string()))?;
        roots.push(build(phi, sig, &mut prog));
    }
    Ok((prog, roots))
}

fn build(phi: &Formula, sig: &Signature, prog: &mut Program) -> NodeId {
    let node = match phi {
        Formula::Eq(v, x) => Node { kind: NodeKind::Eq(*v, *x), base: true },
        Formula::Bot => Node { kind: NodeKind::Bot, base: true },
        Formula::Neg(a) => {
            let a = build(a, sig, prog);
            Node { kind: NodeKind::Neg(a), base: true }
        }
        Formula::And(a, b) => {
            let a = build(a, sig, prog);
            let b = build(b, sig, prog);
            let base = prog.nodes[a].base && prog.nodes[b].base;
            Node { kind: NodeKind::And(a, b), base }
        }
        Formula::Or(a, b) => {
            let a = build(a, sig, prog);
            let b = build(b, sig, prog);
            let base = prog.nodes[a].base && prog.nodes[b].base;
            Node { kind: NodeKind::Or(a, b), base }
        }
        Formula::IntDisj(a, b) => {
            let a = build(a, sig, prog);
            let b = build(b, sig, prog);
            Node { kind: NodeKind::IntDisj(a, b), base: false }
        }
        Formula::Dep(xs, y) => Node { kind: NodeKind::Dep(xs.clone(), *y), base: false },
        Formula::Cf(ant, c) => {
            let child = build(c, sig, prog);
            let base = prog.nodes[child].base;
            let forced = ant.forced_values(sig).ok();
            Node {
                kind: NodeKind::Cf { forced, var_mask: ant.var_mask(), child },
                base,
            }
        }
        Formula::SelImp(a, b) => {
            let a = build(a, sig, prog);
            let b = build(b, sig, prog);
            let base = prog.nodes[b].base;
            Node { kind: NodeKind::SelImp(a, b), base }
        }
    };
    prog.nodes.push(node);
    prog.nodes.len() - 1
}
