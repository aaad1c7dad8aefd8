//! Causal teams and generalized causal teams.
//!
//! A causal team `T = (T⁻, F)` couples a set of assignments with one
//! function component; every row must be compatible with `F` (each
//! endogenous column is computed by its mechanism from the parent columns).
//! A generalized causal team is a set of `(assignment, function component)`
//! pairs drawn from `Sem_σ = {(s, F) : s compatible with F}`; it can mix
//! different causal laws across members.
//!
//! Both kinds are canonical sets: rows/members are deduplicated and stored
//! sorted, so structural equality is set equality.  The model checker
//! addresses rows and members by bitmask, which caps teams at 128 elements —
//! far beyond anything the enumeration-based oracles can visit anyway.
//!
//! Causal equivalence `≈` identifies teams that satisfy the same formulas:
//!
//! - causal teams: `T ≈ S` iff `T⁻ = S⁻` and the function components are
//!   similar (`~`);
//! - generalized causal teams: `T ≈ S` iff for every `~`-class of function
//!   components, the rows carried by members of that class agree (the
//!   class-slice *profile* of [`GeneralizedCausalTeam::profile`]).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::ModelError;
use crate::fc::{compatible, fc_similar, union_fc, FunctionComponent};
use crate::signature::{Assignment, Signature};

/// Upper bound on rows per causal team and members per generalized causal
/// team (bitmask-based model checking uses `u128` masks).
pub const MAX_TEAM_SIZE: usize = 128;

/// A causal team: a set of compatible rows sharing one function component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CausalTeam {
    sig: Arc<Signature>,
    rows: Vec<Assignment>,
    fc: Arc<FunctionComponent>,
}

impl CausalTeam {
    /// Builds a team, validating row compatibility; rows are deduplicated
    /// and sorted.
    pub fn new(
        sig: Arc<Signature>,
        fc: Arc<FunctionComponent>,
        mut rows: Vec<Assignment>,
    ) -> Result<Self, ModelError> {
        rows.sort();
        rows.dedup();
        if rows.len() > MAX_TEAM_SIZE {
            return Err(ModelError::TeamTooLarge {
                cap: MAX_TEAM_SIZE,
                got: rows.len(),
            });
        }
        for row in &rows {
            if row.values().len() != sig.var_count() {
                return Err(ModelError::AssignmentArity {
                    expected: sig.var_count(),
                    got: row.values().len(),
                });
            }
            if !compatible(row, &fc, &sig) {
                let bad = fc
                    .endogenous_vars()
                    .find(|&v| row.get(v) != fc.mechanism(v).unwrap().eval(&sig, row))
                    .unwrap();
                return Err(ModelError::IncompatibleRow {
                    row: row.render(&sig),
                    var: sig.var_name(bad).to_string(),
                });
            }
        }
        Ok(CausalTeam { sig, rows, fc })
    }

    /// The empty team over a function component.
    pub fn empty(sig: Arc<Signature>, fc: Arc<FunctionComponent>) -> Self {
        CausalTeam {
            sig,
            rows: Vec::new(),
            fc,
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// The team component `T⁻`, sorted and deduplicated.
    pub fn rows(&self) -> &[Assignment] {
        &self.rows
    }

    pub fn fc(&self) -> &Arc<FunctionComponent> {
        &self.fc
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// A generalized causal team: a set of compatible `(row, fc)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneralizedCausalTeam {
    sig: Arc<Signature>,
    members: Vec<(Assignment, Arc<FunctionComponent>)>,
}

impl GeneralizedCausalTeam {
    /// Builds a generalized team, validating member compatibility; members
    /// are deduplicated and sorted.
    pub fn new(
        sig: Arc<Signature>,
        mut members: Vec<(Assignment, Arc<FunctionComponent>)>,
    ) -> Result<Self, ModelError> {
        members.sort_by(|a, b| (&a.0, &*a.1).cmp(&(&b.0, &*b.1)));
        members.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        if members.len() > MAX_TEAM_SIZE {
            return Err(ModelError::TeamTooLarge {
                cap: MAX_TEAM_SIZE,
                got: members.len(),
            });
        }
        for (row, fc) in &members {
            if row.values().len() != sig.var_count() {
                return Err(ModelError::AssignmentArity {
                    expected: sig.var_count(),
                    got: row.values().len(),
                });
            }
            if !compatible(row, fc, &sig) {
                let bad = fc
                    .endogenous_vars()
                    .find(|&v| row.get(v) != fc.mechanism(v).unwrap().eval(&sig, row))
                    .unwrap();
                return Err(ModelError::IncompatibleRow {
                    row: row.render(&sig),
                    var: sig.var_name(bad).to_string(),
                });
            }
        }
        Ok(GeneralizedCausalTeam { sig, members })
    }

    /// The empty generalized team.
    pub fn empty(sig: Arc<Signature>) -> Self {
        GeneralizedCausalTeam {
            sig,
            members: Vec::new(),
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// The members, sorted and deduplicated.
    pub fn members(&self) -> &[(Assignment, Arc<FunctionComponent>)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The `≈`-invariant of the team: for each `~`-class of function
    /// components occurring in it, keyed by the class core, the set of rows
    /// carried by members of that class.
    pub fn profile(&self) -> BTreeMap<FunctionComponent, Vec<Assignment>> {
        let mut out: BTreeMap<FunctionComponent, Vec<Assignment>> = BTreeMap::new();
        for (row, fc) in &self.members {
            out.entry(fc.core(&self.sig)).or_default().push(row.clone());
        }
        for rows in out.values_mut() {
            rows.sort();
            rows.dedup();
        }
        out
    }
}

/// Causal equivalence of causal teams: similar function components and equal
/// team components.
pub fn ct_equivalent(s: &CausalTeam, t: &CausalTeam) -> bool {
    s.signature() == t.signature()
        && s.rows() == t.rows()
        && fc_similar(s.fc(), t.fc(), s.signature())
}

/// Causal equivalence of generalized causal teams: equal `~`-class-slice
/// profiles.
pub fn gct_equivalent(s: &GeneralizedCausalTeam, t: &GeneralizedCausalTeam) -> bool {
    s.signature() == t.signature() && s.profile() == t.profile()
}

/// Union of two similar causal teams: rows are united and the function
/// components are merged by [`union_fc`].  Partial: errors when the
/// components are not similar.
pub fn ct_union(s: &CausalTeam, t: &CausalTeam) -> Result<CausalTeam, ModelError> {
    if s.signature() != t.signature() {
        return Err(ModelError::SignatureMismatch);
    }
    let fc = union_fc(s.fc(), t.fc(), s.signature())?;
    let mut rows = s.rows().to_vec();
    rows.extend_from_slice(t.rows());
    CausalTeam::new(s.signature().clone(), fc, rows)
}

/// The generalized team `T^g = {(s, F) : s ∈ T⁻}` of a causal team.
pub fn to_gct(t: &CausalTeam) -> GeneralizedCausalTeam {
    GeneralizedCausalTeam::new(
        t.signature().clone(),
        t.rows()
            .iter()
            .map(|row| (row.clone(), t.fc().clone()))
            .collect(),
    )
    .expect("rows of a causal team are compatible")
}

/// The causal team of a nonempty generalized team whose members share one
/// identical function component.  Partial: errors on empty or mixed input.
pub fn to_ct(t: &GeneralizedCausalTeam) -> Result<CausalTeam, ModelError> {
    let Some((_, fc)) = t.members().first() else {
        return Err(ModelError::EmptyGeneralizedTeam);
    };
    if t.members().iter().any(|(_, g)| g != fc) {
        return Err(ModelError::MixedFunctionComponents);
    }
    CausalTeam::new(
        t.signature().clone(),
        fc.clone(),
        t.members().iter().map(|(row, _)| row.clone()).collect(),
    )
}

/// True iff all members' function components are pairwise similar.
pub fn uniform(t: &GeneralizedCausalTeam) -> bool {
    let Some((_, first)) = t.members().first() else {
        return true;
    };
    t.members()
        .iter()
        .all(|(_, fc)| fc_similar(fc, first, t.signature()))
}
