//! A plain-text file format for derivations.
//!
//! ```text
//! # anything after a hash is a comment
//! calculus: coi-gct
//! assume: X=1 /\ Y=2
//!
//! node 1
//!   hyp: X=1 /\ Y=2
//!   conclude: X=1 /\ Y=2
//!   rule: Hyp
//!
//! node 2
//!   hyp: X=1 /\ Y=2
//!   conclude: X=1
//!   rule: AndE_L
//!   from: 1
//! ```
//!
//! Nodes are numbered consecutively from 1 in the order written; `from`
//! refers back by those numbers.  The three optional side-data keys are
//! `split: <k>` (antecedent nesting), `var: <name>` with `occurrence: <k>`
//! (constancy elimination), and `chain: <names...>` (influence cycles);
//! at most one may appear per node.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::signature::Signature;
use crate::syntax::{parse, render, Formula};

use super::derivation::{Calculus, Derivation, Node, RuleId, SideData};

/// A parse failure, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {detail}")]
pub struct FormatError {
    pub line: usize,
    pub detail: String,
}

fn fail(line: usize, detail: impl Into<String>) -> FormatError {
    FormatError { line, detail: detail.into() }
}

struct PendingNode {
    line: usize,
    hypotheses: BTreeSet<Formula>,
    conclusion: Option<Formula>,
    rule: Option<RuleId>,
    premises: Vec<usize>,
    side: SideData,
    pending_var: Option<(usize, crate::signature::VarIx)>,
    pending_occurrence: Option<usize>,
}

impl PendingNode {
    fn new(line: usize) -> Self {
        PendingNode {
            line,
            hypotheses: BTreeSet::new(),
            conclusion: None,
            rule: None,
            premises: Vec::new(),
            side: SideData::None,
            pending_var: None,
            pending_occurrence: None,
        }
    }

    fn finish(mut self) -> Result<Node, FormatError> {
        if let Some((line, var)) = self.pending_var {
            let Some(occurrence) = self.pending_occurrence else {
                return Err(fail(line, "`var:` needs a matching `occurrence:` line"));
            };
            self.set_side(line, SideData::Occurrence { var, occurrence })?;
        } else if self.pending_occurrence.is_some() {
            return Err(fail(self.line, "`occurrence:` needs a matching `var:` line"));
        }
        let conclusion = self
            .conclusion
            .ok_or_else(|| fail(self.line, "node has no `conclude:` line"))?;
        let rule = self.rule.ok_or_else(|| fail(self.line, "node has no `rule:` line"))?;
        Ok(Node {
            hypotheses: self.hypotheses,
            conclusion,
            rule,
            premises: self.premises,
            side: self.side,
        })
    }

    fn set_side(&mut self, line: usize, side: SideData) -> Result<(), FormatError> {
        if !matches!(self.side, SideData::None) {
            return Err(fail(line, "a node carries at most one kind of side data"));
        }
        self.side = side;
        Ok(())
    }
}

/// Parses the text form of a derivation and its optional calculus header.
pub fn parse_derivation(
    text: &str,
    sig: &Arc<Signature>,
) -> Result<(Option<Calculus>, Derivation), FormatError> {
    let mut calculus = None;
    let mut assumptions = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut current: Option<PendingNode> = None;

    for (ix, raw) in text.lines().enumerate() {
        let lno = ix + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        if let Some(rest) = line.strip_prefix("node") {
            let rest = rest.trim();
            let k: usize = rest
                .parse()
                .map_err(|_| fail(lno, format!("expected a node number, found `{rest}`")))?;
            if let Some(pending) = current.take() {
                nodes.push(pending.finish()?);
            }
            if k != nodes.len() + 1 {
                return Err(fail(
                    lno,
                    format!("nodes must be numbered consecutively; expected {}", nodes.len() + 1),
                ));
            }
            current = Some(PendingNode::new(lno));
            continue;
        }

        let Some((key, value)) = line.split_once(':') else {
            return Err(fail(lno, format!("expected `key: value`, found `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        let formula = |v: &str| -> Result<Formula, FormatError> {
            parse(v, sig).map_err(|e| fail(lno, e.to_string()))
        };

        match (key, &mut current) {
            ("calculus", None) => {
                if calculus.is_some() {
                    return Err(fail(lno, "duplicate `calculus:` line"));
                }
                calculus = Some(Calculus::from_name(value).ok_or_else(|| {
                    fail(lno, format!("unknown calculus `{value}`"))
                })?);
            }
            ("assume", None) => assumptions.push(formula(value)?),
            ("calculus" | "assume", Some(_)) => {
                return Err(fail(lno, format!("`{key}:` must come before the first node")));
            }
            (_, None) => {
                return Err(fail(lno, format!("`{key}:` appears outside a node")));
            }
            ("hyp", Some(node)) => {
                node.hypotheses.insert(formula(value)?);
            }
            ("conclude", Some(node)) => {
                if node.conclusion.is_some() {
                    return Err(fail(lno, "duplicate `conclude:` line"));
                }
                node.conclusion = Some(formula(value)?);
            }
            ("rule", Some(node)) => {
                if node.rule.is_some() {
                    return Err(fail(lno, "duplicate `rule:` line"));
                }
                node.rule = Some(
                    RuleId::from_name(value)
                        .ok_or_else(|| fail(lno, format!("unknown rule `{value}`")))?,
                );
            }
            ("from", Some(node)) => {
                for part in value.split_whitespace() {
                    let p: usize = part.parse().map_err(|_| {
                        fail(lno, format!("expected node numbers, found `{part}`"))
                    })?;
                    node.premises.push(p);
                }
            }
            ("split", Some(node)) => {
                let k: usize = value
                    .parse()
                    .map_err(|_| fail(lno, format!("expected a position, found `{value}`")))?;
                node.set_side(lno, SideData::Split(k))?;
            }
            ("var", Some(node)) => {
                let var = sig
                    .var_index(value)
                    .ok_or_else(|| fail(lno, format!("unknown variable `{value}`")))?;
                if node.pending_var.is_some() {
                    return Err(fail(lno, "duplicate `var:` line"));
                }
                node.pending_var = Some((lno, var));
            }
            ("occurrence", Some(node)) => {
                let occurrence: usize = value
                    .parse()
                    .map_err(|_| fail(lno, format!("expected an index, found `{value}`")))?;
                if node.pending_occurrence.is_some() {
                    return Err(fail(lno, "duplicate `occurrence:` line"));
                }
                node.pending_occurrence = Some(occurrence);
            }
            ("chain", Some(node)) => {
                let mut chain = Vec::new();
                for name in value.split_whitespace() {
                    chain.push(sig.var_index(name).ok_or_else(|| {
                        fail(lno, format!("unknown variable `{name}`"))
                    })?);
                }
                node.set_side(lno, SideData::Chain(chain))?;
            }
            (other, Some(_)) => {
                return Err(fail(lno, format!("unknown key `{other}:`")));
            }
        }
    }

    if let Some(pending) = current.take() {
        nodes.push(pending.finish()?);
    }
    if nodes.is_empty() {
        return Err(fail(text.lines().count().max(1), "no nodes found"));
    }
    Ok((calculus, Derivation { assumptions, nodes }))
}

/// Renders a derivation in the format `parse_derivation` reads back.
pub fn render_derivation(
    d: &Derivation,
    calculus: Option<Calculus>,
    sig: &Signature,
) -> String {
    let mut out = String::new();
    if let Some(c) = calculus {
        out.push_str(&format!("calculus: {}\n", c.name()));
    }
    for a in &d.assumptions {
        out.push_str(&format!("assume: {}\n", render(a, sig)));
    }
    for (pos, node) in d.nodes.iter().enumerate() {
        out.push_str(&format!("\nnode {}\n", pos + 1));
        for h in &node.hypotheses {
            out.push_str(&format!("  hyp: {}\n", render(h, sig)));
        }
        out.push_str(&format!("  conclude: {}\n", render(&node.conclusion, sig)));
        out.push_str(&format!("  rule: {}\n", node.rule.name()));
        if !node.premises.is_empty() {
            let refs: Vec<String> = node.premises.iter().map(usize::to_string).collect();
            out.push_str(&format!("  from: {}\n", refs.join(" ")));
        }
        match &node.side {
            SideData::None => {}
            SideData::Split(k) => out.push_str(&format!("  split: {k}\n")),
            SideData::Occurrence { var, occurrence } => {
                out.push_str(&format!("  var: {}\n", sig.var_name(*var)));
                out.push_str(&format!("  occurrence: {occurrence}\n"));
            }
            SideData::Chain(vars) => {
                let names: Vec<&str> = vars.iter().map(|&v| sig.var_name(v)).collect();
                out.push_str(&format!("  chain: {}\n", names.join(" ")));
            }
        }
    }
    out
}
