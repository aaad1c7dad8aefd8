//! Canonical printer: minimal parentheses, single spaces around binary
//! connectives, `X!=v` for negated equations, `!_|_` for `¬⊥`, and `!(…)`
//! for every other negation.  `parse ∘ render` is the identity on ASTs.

use std::fmt::Write as _;

use crate::signature::Signature;
use crate::syntax::Formula;

/// Binding strength; higher binds tighter.  A child whose level is below
/// the context's minimum gets parenthesized.  Binary connectives associate
/// to the right, so the left child requires one level more than the node.
fn level(phi: &Formula) -> u8 {
    match phi {
        Formula::Cf(..) => 0,
        Formula::SelImp(..) => 1,
        Formula::IntDisj(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Eq(..) | Formula::Bot | Formula::Neg(..) | Formula::Dep(..) => 5,
    }
}

fn go(phi: &Formula, min: u8, sig: &Signature, out: &mut String) {
    if level(phi) < min {
        out.push('(');
        go(phi, 0, sig, out);
        out.push(')');
        return;
    }
    match phi {
        Formula::Eq(v, x) => {
            let _ = write!(out, "{}={}", sig.var_name(*v), sig.value_name(*v, *x));
        }
        Formula::Bot => out.push_str("_|_"),
        Formula::Neg(a) => match a.as_ref() {
            Formula::Eq(v, x) => {
                let _ = write!(out, "{}!={}", sig.var_name(*v), sig.value_name(*v, *x));
            }
            Formula::Bot => out.push_str("!_|_"),
            other => {
                out.push_str("!(");
                go(other, 0, sig, out);
                out.push(')');
            }
        },
        Formula::And(a, b) => {
            go(a, 5, sig, out);
            out.push_str(" /\\ ");
            go(b, 4, sig, out);
        }
        Formula::Or(a, b) => {
            go(a, 4, sig, out);
            out.push_str(" \\/ ");
            go(b, 3, sig, out);
        }
        Formula::IntDisj(a, b) => {
            go(a, 3, sig, out);
            out.push_str(" \\\\/ ");
            go(b, 2, sig, out);
        }
        Formula::SelImp(a, b) => {
            go(a, 2, sig, out);
            out.push_str(" => ");
            go(b, 1, sig, out);
        }
        Formula::Cf(ant, c) => {
            out.push_str(&ant.render(sig));
            out.push_str(" -> ");
            go(c, 0, sig, out);
        }
        Formula::Dep(xs, y) => {
            out.push_str("=(");
            for (i, &x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(sig.var_name(x));
            }
            if !xs.is_empty() {
                out.push(';');
            }
            out.push_str(sig.var_name(*y));
            out.push(')');
        }
    }
}

/// Renders a formula in the canonical concrete syntax.
pub fn render(phi: &Formula, sig: &Signature) -> String {
    let mut out = String::new();
    go(phi, 0, sig, &mut out);
    out
}
