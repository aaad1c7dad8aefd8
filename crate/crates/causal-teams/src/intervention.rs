//! Interventions `do(X = x)` on pairs, causal teams, and generalized teams.
//!
//! Intervening with a consistent equation sequence `X = x` on `(s, F)`:
//!
//! 1. the function component loses the mechanisms of the intervened
//!    variables (`F_{X=x}` is `F` restricted to `En(F) \ X`; parent lists of
//!    the surviving mechanisms are unchanged);
//! 2. the assignment is rewritten by the three-case recursion — intervened
//!    variables take their forced value, exogenous variables keep `s`'s
//!    value, and the remaining endogenous variables are recomputed by their
//!    mechanisms in some topological order of `G_{F_{X=x}}`.
//!
//! The result does not depend on which topological order is chosen (each
//! variable's value is determined by its ancestors alone); the test suite
//! checks this by recomputing with two different orders via
//! [`recompute_with_order`].
//!
//! Team-level interventions apply the pair operation row-by-row
//! (member-by-member) and deduplicate: distinct rows may collapse.
//!
//! Inconsistent equation sequences are rejected here with an error; the
//! *semantics* of a counterfactual with an inconsistent antecedent
//! (vacuous truth) is handled by the model checker, never by this module.

use std::collections::BTreeMap;

use crate::error::ModelError;
use crate::fc::{compatible, FunctionComponent};
use crate::signature::{Assignment, EquationSeq, Signature, ValIx, VarIx};
use crate::team::{CausalTeam, GeneralizedCausalTeam};

/// Intervenes on a single compatible pair, returning `(s_{X=x}, F_{X=x})`.
pub fn intervene_pair(
    s: &Assignment,
    f: &FunctionComponent,
    sig: &Signature,
    eq: &EquationSeq,
) -> Result<(Assignment, std::sync::Arc<FunctionComponent>), ModelError> {
    let forced: BTreeMap<VarIx, ValIx> = eq.forced_values(sig)?.into_iter().collect();
    let restricted = f.restrict(eq.var_mask());
    let row = recompute(s, &restricted, sig, &forced);
    debug_assert!(compatible(&row, &restricted, sig));
    Ok((row, restricted))
}

/// Rewrites an assignment against an already-restricted component: forced
/// variables take their forced value, exogenous variables keep `s`'s value,
/// endogenous variables are recomputed from their parents (memoized
/// recursion, so no explicit topological order is needed).
fn recompute(
    s: &Assignment,
    restricted: &FunctionComponent,
    sig: &Signature,
    forced: &BTreeMap<VarIx, ValIx>,
) -> Assignment {
    fn value_of(
        v: VarIx,
        s: &Assignment,
        restricted: &FunctionComponent,
        sig: &Signature,
        forced: &BTreeMap<VarIx, ValIx>,
        memo: &mut Vec<Option<ValIx>>,
    ) -> ValIx {
        if let Some(x) = memo[v] {
            return x;
        }
        let x = if let Some(&x) = forced.get(&v) {
            x
        } else if let Some(mech) = restricted.mechanism(v) {
            mech.eval_values(sig, |p| value_of(p, s, restricted, sig, forced, memo))
        } else {
            s.get(v)
        };
        memo[v] = Some(x);
        x
    }
    let mut memo = vec![None; sig.var_count()];
    Assignment(
        sig.vars()
            .map(|v| value_of(v, s, restricted, sig, forced, &mut memo))
            .collect(),
    )
}

/// [`recompute`] with the forced values as a slice; the model checker's
/// frame machinery keeps them in this form.
pub(crate) fn apply_forced(
    s: &Assignment,
    restricted: &FunctionComponent,
    sig: &Signature,
    forced: &[(VarIx, ValIx)],
) -> Assignment {
    let map: BTreeMap<VarIx, ValIx> = forced.iter().copied().collect();
    recompute(s, restricted, sig, &map)
}

/// Rewrites an assignment by walking an explicit variable order; the order
/// must be topological for the restricted component (parents first).  Only
/// used to demonstrate order-independence of [`intervene_pair`].
pub fn recompute_with_order(
    s: &Assignment,
    restricted: &FunctionComponent,
    sig: &Signature,
    forced: &BTreeMap<VarIx, ValIx>,
    order: &[VarIx],
) -> Assignment {
    let mut values: Vec<ValIx> = s.values().to_vec();
    for &v in order {
        if let Some(&x) = forced.get(&v) {
            values[v] = x;
        } else if let Some(mech) = restricted.mechanism(v) {
            values[v] = mech.eval_values(sig, |p| values[p]);
        }
    }
    Assignment(values)
}

/// The intervention `do(X = x)` on a causal team: every row is rewritten,
/// the results are deduplicated, and the function component is restricted.
pub fn intervene_ct(t: &CausalTeam, eq: &EquationSeq) -> Result<CausalTeam, ModelError> {
    let sig = t.signature();
    let forced: BTreeMap<VarIx, ValIx> = eq.forced_values(sig)?.into_iter().collect();
    let restricted = t.fc().restrict(eq.var_mask());
    let rows = t
        .rows()
        .iter()
        .map(|row| recompute(row, &restricted, sig, &forced))
        .collect();
    CausalTeam::new(sig.clone(), restricted, rows)
}

/// The intervention on a generalized causal team, member by member.
pub fn intervene_gct(
    t: &GeneralizedCausalTeam,
    eq: &EquationSeq,
) -> Result<GeneralizedCausalTeam, ModelError> {
    let sig = t.signature();
    let forced: BTreeMap<VarIx, ValIx> = eq.forced_values(sig)?.into_iter().collect();
    let mask = eq.var_mask();
    let members = t
        .members()
        .iter()
        .map(|(row, fc)| {
            let restricted = fc.restrict(mask);
            let row = recompute(row, &restricted, sig, &forced);
            (row, restricted)
        })
        .collect();
    GeneralizedCausalTeam::new(sig.clone(), members)
}
