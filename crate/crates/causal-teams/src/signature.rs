//! Signatures, assignments, and equation sequences.
//!
//! A signature σ = (Dom, Ran) fixes a finite, ordered list of variable names
//! and a finite, ordered range of values for each variable.  Every other
//! object in the crate — assignments, function components, teams, formulas —
//! refers to variables and values by *index* into the signature, which makes
//! comparisons exact and keeps enumeration orders canonical:
//!
//! - variables are ordered as declared (`VarIx` is the position in `Dom`);
//! - values are ordered as declared (`ValIx` is the position in `Ran(X)`);
//! - tuples of values are ordered lexicographically with the leftmost
//!   variable most significant.
//!
//! Variable names and value names are compared by exact identity: distinct
//! symbols denote distinct objects.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::ModelError;

/// Index of a variable in the signature's domain order.
pub type VarIx = usize;
/// Index of a value in a variable's declared range.
pub type ValIx = u16;

/// A finite signature: ordered variables, each with an ordered finite range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    vars: Vec<String>,
    ranges: Vec<Vec<String>>,
}

impl Signature {
    /// Builds a signature from `(variable, range)` pairs, validating that the
    /// domain is nonempty and duplicate-free and every range is nonempty and
    /// duplicate-free.
    pub fn new(entries: Vec<(String, Vec<String>)>) -> Result<Arc<Self>, ModelError> {
        if entries.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        let mut vars = Vec::with_capacity(entries.len());
        let mut ranges = Vec::with_capacity(entries.len());
        for (var, range) in entries {
            if vars.contains(&var) {
                return Err(ModelError::DuplicateVariable(var));
            }
            if range.is_empty() {
                return Err(ModelError::EmptyRange(var));
            }
            for (i, v) in range.iter().enumerate() {
                if range[..i].contains(v) {
                    return Err(ModelError::DuplicateValue {
                        var,
                        value: v.clone(),
                    });
                }
            }
            vars.push(var);
            ranges.push(range);
        }
        Ok(Arc::new(Signature { vars, ranges }))
    }

    /// Convenience constructor from string slices.
    pub fn from_names(entries: &[(&str, &[&str])]) -> Result<Arc<Self>, ModelError> {
        Self::new(
            entries
                .iter()
                .map(|(v, r)| (v.to_string(), r.iter().map(|s| s.to_string()).collect()))
                .collect(),
        )
    }

    /// Number of variables in the domain.
    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Iterator over all variable indices in domain order.
    pub fn vars(&self) -> impl Iterator<Item = VarIx> {
        0..self.var_count()
    }

    /// The declared name of a variable.
    pub fn var_name(&self, v: VarIx) -> &str {
        &self.vars[v]
    }

    /// Index of a named variable, if declared.
    pub fn var_index(&self, name: &str) -> Option<VarIx> {
        self.vars.iter().position(|v| v == name)
    }

    /// The declared value names of a variable's range.
    pub fn range(&self, v: VarIx) -> &[String] {
        &self.ranges[v]
    }

    /// Number of values in a variable's range.
    pub fn range_size(&self, v: VarIx) -> usize {
        self.ranges[v].len()
    }

    /// Iterator over the value indices of a variable's range.
    pub fn values(&self, v: VarIx) -> impl Iterator<Item = ValIx> {
        0..self.range_size(v) as ValIx
    }

    /// The declared name of a value.
    pub fn value_name(&self, v: VarIx, x: ValIx) -> &str {
        &self.ranges[v][x as usize]
    }

    /// Index of a named value in a variable's range, if present.
    pub fn value_index(&self, v: VarIx, name: &str) -> Option<ValIx> {
        self.ranges[v].iter().position(|x| x == name).map(|i| i as ValIx)
    }

    /// `|𝔸σ|`: the number of assignments over the signature.
    pub fn assignment_count(&self) -> usize {
        self.ranges.iter().map(Vec::len).product()
    }
}

/// A total assignment of values to the signature's variables, stored as one
/// value index per variable in domain order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub Vec<ValIx>);

impl Assignment {
    /// Builds an assignment from value indices, validating arity and ranges.
    pub fn new(sig: &Signature, values: Vec<ValIx>) -> Result<Self, ModelError> {
        if values.len() != sig.var_count() {
            return Err(ModelError::AssignmentArity {
                expected: sig.var_count(),
                got: values.len(),
            });
        }
        for (v, &x) in values.iter().enumerate() {
            if (x as usize) >= sig.range_size(v) {
                return Err(ModelError::ValueOutOfRange {
                    var: sig.var_name(v).to_string(),
                    value: x as usize,
                });
            }
        }
        Ok(Assignment(values))
    }

    /// Builds an assignment from `(variable, value)` name pairs; every
    /// variable of the signature must be bound exactly once.
    pub fn from_names(sig: &Signature, pairs: &[(&str, &str)]) -> Result<Self, ModelError> {
        let mut values: Vec<Option<ValIx>> = vec![None; sig.var_count()];
        for (var, val) in pairs {
            let v = sig
                .var_index(var)
                .ok_or_else(|| ModelError::UnknownVariable(var.to_string()))?;
            let x = sig
                .value_index(v, val)
                .ok_or_else(|| ModelError::UnknownValue {
                    var: var.to_string(),
                    value: val.to_string(),
                })?;
            if values[v].is_some() {
                return Err(ModelError::DuplicateVariable(var.to_string()));
            }
            values[v] = Some(x);
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(ModelError::AssignmentArity {
                expected: sig.var_count(),
                got: pairs.len(),
            })?;
        Ok(Assignment(values))
    }

    /// The value assigned to a variable.
    pub fn get(&self, v: VarIx) -> ValIx {
        self.0[v]
    }

    /// All values in domain order.
    pub fn values(&self) -> &[ValIx] {
        &self.0
    }

    /// Renders the assignment as `V1=x1 V2=x2 …` using declared names.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for v in sig.vars() {
            if v > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}={}", sig.var_name(v), sig.value_name(v, self.0[v]));
        }
        out
    }
}

/// An ordered, possibly repeating sequence of equations `X₁=x₁ ∧ … ∧ Xₙ=xₙ`,
/// used as a counterfactual antecedent and as an intervention description.
///
/// The sequence must be nonempty.  Repeats of the same equation are allowed
/// (the contraction/weakening proof rules manipulate them); a sequence giving
/// one variable two *distinct* values is inconsistent but still well-formed —
/// a counterfactual with an inconsistent antecedent is vacuously true, and
/// [`crate::intervention`] refuses to act on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EquationSeq(Vec<(VarIx, ValIx)>);

impl EquationSeq {
    /// Builds a sequence, rejecting the empty one.
    pub fn new(eqs: Vec<(VarIx, ValIx)>) -> Result<Self, ModelError> {
        if eqs.is_empty() {
            return Err(ModelError::EmptyEquationSeq);
        }
        Ok(EquationSeq(eqs))
    }

    /// The equations in sequence order.
    pub fn equations(&self) -> &[(VarIx, ValIx)] {
        &self.0
    }

    /// True iff no variable is given two distinct values.
    pub fn is_consistent(&self) -> bool {
        self.0
            .iter()
            .all(|&(v, x)| self.0.iter().all(|&(w, y)| v != w || x == y))
    }

    /// The forced value of each mentioned variable, in variable order.
    ///
    /// Errors with [`ModelError::InconsistentEquations`] when the sequence is
    /// inconsistent; interventions must screen for this first.
    pub fn forced_values(&self, sig: &Signature) -> Result<Vec<(VarIx, ValIx)>, ModelError> {
        let mut forced: Vec<Option<ValIx>> = vec![None; sig.var_count()];
        for &(v, x) in &self.0 {
            match forced[v] {
                None => forced[v] = Some(x),
                Some(y) if y == x => {}
                Some(_) => {
                    return Err(ModelError::InconsistentEquations {
                        var: sig.var_name(v).to_string(),
                    })
                }
            }
        }
        Ok(forced
            .into_iter()
            .enumerate()
            .filter_map(|(v, x)| x.map(|x| (v, x)))
            .collect())
    }

    /// The set of mentioned variables as a bitmask.
    pub fn var_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &(v, _)| m | (1 << v))
    }

    /// Renders as `X1=x1 /\ X2=x2 …` using declared names.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for (i, &(v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                out.push_str(" /\\ ");
            }
            let _ = write!(out, "{}={}", sig.var_name(v), sig.value_name(v, x));
        }
        out
    }
}

/// Free-function form of [`EquationSeq::is_consistent`].
pub fn eq_consistent(eq: &EquationSeq) -> bool {
    eq.is_consistent()
}
