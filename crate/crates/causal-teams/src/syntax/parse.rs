//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Tokens: names (letters, digits, `_`, matched exactly against the
//! signature), `=`, `!=`, `_|_`, `!`, `/\`, `\/`, `\\/`, `->`, `=>`, `=(`,
//! `(`, `)`, `,`, `;`.  Precedence, loosest first: `->`, `=>`, `\\/`, `\/`,
//! `/\`, `!`; binary connectives associate to the right.  The left-hand
//! side of `->` is parsed as a formula and then coerced: it must be a
//! conjunction of equations, which is flattened in order into the
//! counterfactual's antecedent sequence.
//!
//! Grammar restrictions are enforced as the tree is built, so every
//! rejection carries the byte offset of the offending token: `!` demands a
//! base-language operand, the left side of `=>` must be base-language, and
//! dependence atoms cannot mix with `\\/`.

use crate::signature::{EquationSeq, Signature, ValIx, VarIx};
use crate::syntax::Formula;

/// A parse or well-formedness error with the byte offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at byte {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Eq,      // =
    Neq,     // !=
    Bot,     // _|_
    Bang,    // !
    And,     // /\
    Or,      // \/
    IntDisj, // \\/
    CfArrow, // ->
    SelImp,  // =>
    DepOpen, // =(
    LParen,
    RParen,
    Comma,
    Semi,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let is_name_byte = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'_' if bytes.get(i + 1) == Some(&b'|') => {
                if bytes.get(i + 2) == Some(&b'_') {
                    toks.push((Tok::Bot, start));
                    i += 3;
                } else {
                    return err(start, "expected _|_");
                }
            }
            b'=' => match bytes.get(i + 1) {
                Some(b'>') => {
                    toks.push((Tok::SelImp, start));
                    i += 2;
                }
                Some(b'(') => {
                    toks.push((Tok::DepOpen, start));
                    i += 2;
                }
                _ => {
                    toks.push((Tok::Eq, start));
                    i += 1;
                }
            },
            b'!' => {
                // `!=` is the negated-equation operator, except in `!=(`,
                // which is `!` applied to a dependence atom.
                if bytes.get(i + 1) == Some(&b'=') && bytes.get(i + 2) != Some(&b'(') {
                    toks.push((Tok::Neq, start));
                    i += 2;
                } else {
                    toks.push((Tok::Bang, start));
                    i += 1;
                }
            }
            b'/' => {
                if bytes.get(i + 1) == Some(&b'\\') {
                    toks.push((Tok::And, start));
                    i += 2;
                } else {
                    return err(start, "expected /\\");
                }
            }
            b'\\' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(b'\\'), Some(b'/')) => {
                    toks.push((Tok::IntDisj, start));
                    i += 3;
                }
                (Some(b'/'), _) => {
                    toks.push((Tok::Or, start));
                    i += 2;
                }
                _ => return err(start, "expected \\/ or \\\\/"),
            },
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::CfArrow, start));
                    i += 2;
                } else {
                    return err(start, "expected ->");
                }
            }
            b'(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            b';' => {
                toks.push((Tok::Semi, start));
                i += 1;
            }
            _ if is_name_byte(b) => {
                let mut j = i;
                while j < bytes.len() && is_name_byte(bytes[j]) {
                    j += 1;
                }
                toks.push((Tok::Name(text[i..j].to_string()), start));
                i = j;
            }
            _ => return err(start, format!("unexpected character {:?}", b as char)),
        }
    }
    Ok(toks)
}

/// What a parsed subformula contains, for the grammar-mixing checks.
#[derive(Debug, Clone, Copy, Default)]
struct Flags {
    has_dep: bool,
    has_idisj: bool,
}

impl Flags {
    fn union(self, other: Flags) -> Flags {
        Flags {
            has_dep: self.has_dep || other.has_dep,
            has_idisj: self.has_idisj || other.has_idisj,
        }
    }

    fn is_base(self) -> bool {
        !self.has_dep && !self.has_idisj
    }
}

struct Parser<'a> {
    sig: &'a Signature,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, SyntaxError> {
        if self.peek() == Some(&want) {
            Ok(self.bump().1)
        } else {
            err(self.here(), format!("expected {what}"))
        }
    }

    fn var(&mut self) -> Result<(VarIx, usize), SyntaxError> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Name(_)) => {
                let (Tok::Name(name), p) = self.bump() else { unreachable!() };
                match self.sig.var_index(&name) {
                    Some(v) => Ok((v, p)),
                    None => err(p, format!("unknown variable {name}")),
                }
            }
            _ => err(at, "expected a variable name"),
        }
    }

    fn val(&mut self, v: VarIx) -> Result<ValIx, SyntaxError> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Name(_)) => {
                let (Tok::Name(name), p) = self.bump() else { unreachable!() };
                match self.sig.value_index(v, &name) {
                    Some(x) => Ok(x),
                    None => err(
                        p,
                        format!(
                            "value {name} is not in the range of {}",
                            self.sig.var_name(v)
                        ),
                    ),
                }
            }
            _ => err(at, "expected a value name"),
        }
    }

    /// Lowest precedence: the counterfactual arrow.
    fn formula(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        let (lhs, lf) = self.selimp_level()?;
        if self.peek() == Some(&Tok::CfArrow) {
            let (_, arrow_at) = self.bump();
            let ant = coerce_antecedent(&lhs, arrow_at)?;
            let (rhs, rf) = self.formula()?;
            Ok((Formula::cf(ant, rhs), rf))
        } else {
            Ok((lhs, lf))
        }
    }

    fn selimp_level(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        let (lhs, lf) = self.idisj_level()?;
        if self.peek() == Some(&Tok::SelImp) {
            let (_, at) = self.bump();
            if !lf.is_base() {
                return err(at, "the left side of => must be a base-language formula");
            }
            let (rhs, rf) = self.selimp_level()?;
            Ok((Formula::selimp(lhs, rhs), rf))
        } else {
            Ok((lhs, lf))
        }
    }

    fn idisj_level(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        let (lhs, lf) = self.or_level()?;
        if self.peek() == Some(&Tok::IntDisj) {
            let (_, at) = self.bump();
            let (rhs, rf) = self.idisj_level()?;
            let flags = lf.union(rf);
            if flags.has_dep {
                return err(at, "dependence atoms and \\\\/ cannot mix");
            }
            Ok((Formula::idisj(lhs, rhs), Flags { has_idisj: true, ..flags }))
        } else {
            Ok((lhs, lf))
        }
    }

    fn or_level(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        let (lhs, lf) = self.and_level()?;
        if self.peek() == Some(&Tok::Or) {
            let (_, at) = self.bump();
            let (rhs, rf) = self.or_level()?;
            let flags = lf.union(rf);
            if flags.has_dep && flags.has_idisj {
                return err(at, "dependence atoms and \\\\/ cannot mix");
            }
            Ok((Formula::or(lhs, rhs), flags))
        } else {
            Ok((lhs, lf))
        }
    }

    fn and_level(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        let (lhs, lf) = self.neg_level()?;
        if self.peek() == Some(&Tok::And) {
            let (_, at) = self.bump();
            let (rhs, rf) = self.and_level()?;
            let flags = lf.union(rf);
            if flags.has_dep && flags.has_idisj {
                return err(at, "dependence atoms and \\\\/ cannot mix");
            }
            Ok((Formula::and(lhs, rhs), flags))
        } else {
            Ok((lhs, lf))
        }
    }

    fn neg_level(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        if self.peek() == Some(&Tok::Bang) {
            let (_, at) = self.bump();
            let (operand, flags) = self.neg_level()?;
            if !flags.is_base() {
                return err(at, "negation applies only to base-language formulas");
            }
            Ok((Formula::neg(operand), flags))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<(Formula, Flags), SyntaxError> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Bot) => {
                self.bump();
                Ok((Formula::Bot, Flags::default()))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen, ")")?;
                Ok(inner)
            }
            Some(Tok::DepOpen) => {
                self.bump();
                let mut vars = vec![self.var()?.0];
                while self.peek() == Some(&Tok::Comma) {
                    self.bump();
                    vars.push(self.var()?.0);
                }
                let phi = if self.peek() == Some(&Tok::Semi) {
                    self.bump();
                    let (y, _) = self.var()?;
                    Formula::dep(vars, y)
                } else {
                    if vars.len() != 1 {
                        return err(at, "constancy atom =(Y) takes one variable");
                    }
                    Formula::constancy(vars[0])
                };
                self.expect(Tok::RParen, ")")?;
                Ok((phi, Flags { has_dep: true, has_idisj: false }))
            }
            Some(Tok::Name(_)) => {
                let (v, _) = self.var()?;
                match self.peek() {
                    Some(Tok::Eq) => {
                        self.bump();
                        let x = self.val(v)?;
                        Ok((Formula::Eq(v, x), Flags::default()))
                    }
                    Some(Tok::Neq) => {
                        self.bump();
                        let x = self.val(v)?;
                        Ok((Formula::neg(Formula::Eq(v, x)), Flags::default()))
                    }
                    _ => err(self.here(), "expected = or != after a variable"),
                }
            }
            _ => err(at, "expected a formula"),
        }
    }
}

/// Flattens a conjunction of equations, in order, into an antecedent.
fn coerce_antecedent(lhs: &Formula, arrow_at: usize) -> Result<EquationSeq, SyntaxError> {
    fn collect(
        phi: &Formula,
        out: &mut Vec<(VarIx, ValIx)>,
        arrow_at: usize,
    ) -> Result<(), SyntaxError> {
        match phi {
            Formula::Eq(v, x) => {
                out.push((*v, *x));
                Ok(())
            }
            Formula::And(a, b) => {
                collect(a, out, arrow_at)?;
                collect(b, out, arrow_at)
            }
            _ => err(
                arrow_at,
                "the antecedent of -> must be a conjunction of equations",
            ),
        }
    }
    let mut eqs = Vec::new();
    collect(lhs, &mut eqs, arrow_at)?;
    Ok(EquationSeq::new(eqs).expect("conjunction is nonempty"))
}

/// Parses a formula over the signature, rejecting unknown names,
/// out-of-range values, and grammar violations — each with a byte offset.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { sig, toks, pos: 0, end: text.len() };
    let (phi, _) = p.formula()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "unexpected trailing input");
    }
    Ok(phi)
}
