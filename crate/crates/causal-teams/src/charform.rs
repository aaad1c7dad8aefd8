//! Characterization formulas and constructive team-class definability.
//!
//! Causal teams and generalized causal teams over a fixed signature can be
//! pinned down — exactly, up to causal equivalence `≈` — by formulas of the
//! object languages themselves.  This module builds those formulas:
//!
//! - [`phi_f`]: `Φ^F` holds in a generalized team iff every member's function
//!   component is similar to `F` (and in a nonempty causal team iff its
//!   component is similar to `F`);
//! - [`theta_t`]: `Θ^T` holds in a team iff its rows are among the given ones;
//! - [`chi_k`]: `χ_k` holds in a causal team iff it has at most `k` rows;
//! - [`xi_t`]: `Ξ^T` holds in a causal team `S` iff no `≈`-copy of `T` is a
//!   subteam of `S` — the building block for defining downward-closed classes;
//! - [`xi_star`]: the generalized-team variant of `Ξ`, driven by the
//!   `≈`-profile of its argument;
//! - [`unf`]: the generalized team is uniform (all members share one
//!   similarity class);
//! - [`beta_dc`], [`beta_en`]: in a singleton team, `β_DC(X, V)` detects
//!   direct causal influence of `X` on `V`, and `β_En(V)` detects that `V` is
//!   governed by a non-constant mechanism;
//! - [`one_fun`], [`no_mix`]: together these axiomatize uniformity — `1Fun`
//!   forces members that agree on `β_En(V)` to give `V` one constant fate
//!   under each total intervention, and `NoMix` forbids mixing a member whose
//!   singleton satisfies `β_En(V)` with one whose singleton does not;
//! - [`leadsto`]: `X ⤳ Y`, "some intervention context makes `X` matter for
//!   `Y`" — the semantic guard behind the `Recur` proof rule;
//! - [`define_flat_class`] / [`define_downward_class`]: given an extensional
//!   [`TeamClass`] that satisfies the closure properties (checked, with
//!   witnesses on failure), produce a formula whose causal-team models are
//!   exactly the class.
//!
//! All constructions are deterministic: variables, values, rows, function
//! components and similarity classes are always iterated in enumeration
//! order, so equal inputs yield byte-identical formulas.  Empty big
//! conjunctions collapse to `⊤` (more precisely they are skipped — see
//! [`Formula::big_and`]), empty big disjunctions to `⊥`, and empty
//! intervention lists to the bare consequent.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::enumeration::{
    compatible_assignments, enum_assignments, enum_causal_teams, enum_function_components,
    representatives,
};
use crate::error::ModelError;
use crate::fc::{fc_similar, for_each_tuple, FunctionComponent};
use crate::semantics::satisfies_gct;
use crate::signature::{Assignment, Signature, ValIx, VarIx};
use crate::syntax::Formula;
use crate::team::{ct_union, CausalTeam, GeneralizedCausalTeam};

/// Which language the dependence-free cardinality formulas are written in:
/// `Cod` renders "the team is constant on `V`" as the dependence atom
/// `=(V)`, `CoI` as the global disjunction `⩒_{x ∈ Ran(V)} V = x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Cod,
    CoI,
}

/// `⋀_{V ∈ Dom} V = s(V)`: the singleton team `{s}` from above.
fn row_equations(sig: &Signature, s: &Assignment) -> Formula {
    Formula::big_and(sig.vars().map(|v| Formula::Eq(v, s.get(v))).collect())
}

/// `=(V)` in the requested dialect.
fn constancy_in(v: VarIx, sig: &Signature, dialect: Dialect) -> Formula {
    match dialect {
        Dialect::Cod => Formula::constancy(v),
        Dialect::CoI => {
            Formula::big_idisj(sig.values(v).map(|x| Formula::Eq(v, x)).collect())
        }
    }
}

/// `η_σ(V)` for an endogenous `V` with a non-constant mechanism: under every
/// total intervention context `(W = w, PA_V = p)` with `W = Dom ∖ (PA_V ∪
/// {V})`, the variable takes its mechanism's value `F_V(p)`.
fn eta(f: &FunctionComponent, v: VarIx, sig: &Signature) -> Formula {
    let mech = f.mechanism(v).expect("η is only built for endogenous variables");
    let pa = &mech.parents;
    let w: Vec<VarIx> = sig
        .vars()
        .filter(|u| *u != v && !pa.contains(u))
        .collect();
    let mut parts = Vec::new();
    for_each_tuple(sig, &w, |ws| {
        for_each_tuple(sig, pa, |ps| {
            let mut ant: Vec<(VarIx, ValIx)> =
                w.iter().copied().zip(ws.iter().copied()).collect();
            ant.extend(pa.iter().copied().zip(ps.iter().copied()));
            let out = mech.eval_values(sig, |u| {
                ps[pa.iter().position(|&q| q == u).expect("parent")]
            });
            parts.push(Formula::cf_over(ant, Formula::Eq(v, out)));
        });
    });
    Formula::big_and(parts)
}

/// `ξ_σ(V)` for a variable that is exogenous or constant: whatever value it
/// has, it keeps under every intervention on the other variables.
fn xi(v: VarIx, sig: &Signature) -> Formula {
    let w: Vec<VarIx> = sig.vars().filter(|u| *u != v).collect();
    let mut parts = Vec::new();
    for x in sig.values(v) {
        for_each_tuple(sig, &w, |ws| {
            let ant: Vec<(VarIx, ValIx)> =
                w.iter().copied().zip(ws.iter().copied()).collect();
            parts.push(Formula::selimp(
                Formula::Eq(v, x),
                Formula::cf_over(ant, Formula::Eq(v, x)),
            ));
        });
    }
    Formula::big_and(parts)
}

/// `Φ^F := ⋀_{V ∈ En(F)∖Cn(F)} η_σ(V) ∧ ⋀_{V ∈ (Dom∖En(F)) ∪ Cn(F)} ξ_σ(V)`.
///
/// A generalized team satisfies `Φ^F` iff all member components are similar
/// to `F`; a nonempty causal team iff its component is.  `η` ranges over the
/// *properly* endogenous variables because a constant mechanism behaves like
/// an exogenous variable: pinning its constant would split one similarity
/// class in two.
pub fn phi_f(f: &FunctionComponent, sig: &Signature) -> Formula {
    let proper = f.proper_en_mask();
    let mut parts = Vec::new();
    for v in sig.vars() {
        if proper & (1 << v) != 0 {
            parts.push(eta(f, v, sig));
        }
    }
    for v in sig.vars() {
        if proper & (1 << v) == 0 {
            parts.push(xi(v, sig));
        }
    }
    Formula::big_and(parts)
}

/// `Θ^T := ⋁_{s ∈ rows} ⋀_{V ∈ Dom} V = s(V)`: satisfied by exactly the
/// teams whose rows all appear in `rows`.  No rows yields `⊥`, which only
/// empty teams satisfy.
pub fn theta_t(rows: &[Assignment], sig: &Signature) -> Formula {
    let mut rows: Vec<&Assignment> = rows.iter().collect();
    rows.sort();
    rows.dedup();
    Formula::big_or(rows.into_iter().map(|s| row_equations(sig, s)).collect())
}

/// `χ₁` in the requested dialect: every variable is constant on the team.
fn chi_one(sig: &Signature, dialect: Dialect) -> Formula {
    Formula::big_and(
        sig.vars()
            .map(|v| constancy_in(v, sig, dialect))
            .collect(),
    )
}

/// `χ_k`: satisfied by a causal team iff it has at most `k` rows.  `χ₀ = ⊥`,
/// `χ₁` says every variable is constant, and for `k > 1` the team is split by
/// `∨` into `k` constant parts.
pub fn chi_k(k: usize, sig: &Signature, dialect: Dialect) -> Formula {
    if k == 0 {
        return Formula::Bot;
    }
    Formula::big_or(vec![chi_one(sig, dialect); k])
}

/// `Ξ^T := (χ_{|T⁻|−1} ∨ Θ^{𝔸σ∖T⁻}) ∨ ⋁_{G₀ ∈ 𝔽⁰σ, G₀ ≁ F} Φ^{G₀}`, for a
/// nonempty causal team `T = (T⁻, F)`.
///
/// A causal team `S` satisfies `Ξ^T` iff no `≈`-copy of `T` is a subteam of
/// `S`: either `S` has a different similarity class (third disjunct), or it
/// splits into a part too small to contain `T⁻` and a part avoiding some row
/// of `T⁻`.  Errors on the empty team, which is a subteam of everything up
/// to `≈` only when the components match — use the conjunction of the other
/// classes' `Φ`s directly for that.
pub fn xi_t(t: &CausalTeam, dialect: Dialect) -> Result<Formula, ModelError> {
    if t.is_empty() {
        return Err(ModelError::Invalid(
            "Ξ^T is only defined for nonempty teams".into(),
        ));
    }
    let sig = t.signature();
    let chi = chi_k(t.len() - 1, sig, dialect);
    let complement: Vec<Assignment> = enum_assignments(sig)
        .into_iter()
        .filter(|s| !t.rows().contains(s))
        .collect();
    let core = t.fc().core(sig);
    let others = representatives(sig)
        .iter()
        .filter(|g| g.as_ref() != &core)
        .map(|g| phi_f(g, sig))
        .collect();
    Ok(Formula::or(
        Formula::or(chi, theta_t(&complement, sig)),
        Formula::big_or(others),
    ))
}

/// `χ₁^*`: every variable is constant and stays constant under every total
/// intervention on the other variables.  A generalized team satisfies it iff
/// its `≈`-profile has at most one point `(row, class)`.
fn chi_one_star(sig: &Signature, dialect: Dialect) -> Formula {
    Formula::big_and(
        sig.vars()
            .map(|v| {
                let w: Vec<VarIx> = sig.vars().filter(|u| *u != v).collect();
                let mut cfs = Vec::new();
                for_each_tuple(sig, &w, |ws| {
                    let ant: Vec<(VarIx, ValIx)> =
                        w.iter().copied().zip(ws.iter().copied()).collect();
                    cfs.push(Formula::cf_over(ant, constancy_in(v, sig, dialect)));
                });
                Formula::and(constancy_in(v, sig, dialect), Formula::big_and(cfs))
            })
            .collect(),
    )
}

/// The generalized-team variant of `Ξ`, built from the `≈`-profile of `t`: a
/// generalized team `U` satisfies `Ξ_*^t` iff the profile of `t` is not
/// contained in the profile of `U`.
///
/// The shape mirrors [`xi_t`] with `χ_k` starred, `Θ` ranging over the
/// profile points `(u, G₀)` *not* in `t`'s profile (each rendered as
/// `⋀_V V=u(V) ∧ Φ^{G₀}` over the compatible rows of `t`'s classes), and the
/// last disjunct collecting the `Φ`s of the untouched classes.  Errors on
/// the empty team.
pub fn xi_star(t: &GeneralizedCausalTeam, dialect: Dialect) -> Result<Formula, ModelError> {
    if t.is_empty() {
        return Err(ModelError::Invalid(
            "Ξ_* is only defined for nonempty teams".into(),
        ));
    }
    let sig = t.signature();
    let profile = t.profile();
    let points: usize = profile.values().map(|rows| rows.len()).sum();
    let chi = if points == 1 {
        Formula::Bot
    } else {
        Formula::big_or(vec![chi_one_star(sig, dialect); points - 1])
    };
    let mut theta_parts = Vec::new();
    let mut others = Vec::new();
    for g in representatives(sig) {
        match profile.get(g.as_ref()) {
            Some(rows) => {
                for u in compatible_assignments(&g, sig) {
                    if !rows.contains(&u) {
                        theta_parts
                            .push(Formula::and(row_equations(sig, &u), phi_f(&g, sig)));
                    }
                }
            }
            None => others.push(phi_f(&g, sig)),
        }
    }
    Ok(Formula::or(
        Formula::or(chi, Formula::big_or(theta_parts)),
        Formula::big_or(others),
    ))
}

/// `Unf := ⩒_{F ∈ 𝔽σ} Φ^F`: the generalized team is uniform, i.e. all
/// member components lie in one similarity class.
pub fn unf(sig: &Signature) -> Formula {
    Formula::big_idisj(
        enum_function_components(sig)
            .iter()
            .map(|f| phi_f(f, sig))
            .collect(),
    )
}

/// `β_DC(X, V)`: in a singleton team, `X` directly influences `V` — some
/// total context `Z = z` over `Z = Dom ∖ {X, V}` makes two `X`-settings
/// produce two different `V`-values.  Errors unless `X ≠ V`.
pub fn beta_dc(x: VarIx, v: VarIx, sig: &Signature) -> Result<Formula, ModelError> {
    if x == v {
        return Err(ModelError::Invalid(
            "β_DC needs two distinct variables".into(),
        ));
    }
    let z: Vec<VarIx> = sig.vars().filter(|u| *u != x && *u != v).collect();
    let mut parts = Vec::new();
    for_each_tuple(sig, &z, |zs| {
        let context: Vec<(VarIx, ValIx)> =
            z.iter().copied().zip(zs.iter().copied()).collect();
        for x0 in sig.values(x) {
            for x1 in sig.values(x) {
                if x0 == x1 {
                    continue;
                }
                for v0 in sig.values(v) {
                    for v1 in sig.values(v) {
                        if v0 == v1 {
                            continue;
                        }
                        let mut a0 = context.clone();
                        a0.push((x, x0));
                        let mut a1 = context.clone();
                        a1.push((x, x1));
                        parts.push(Formula::and(
                            Formula::cf_over(a0, Formula::Eq(v, v0)),
                            Formula::cf_over(a1, Formula::Eq(v, v1)),
                        ));
                    }
                }
            }
        }
    });
    Ok(Formula::big_or(parts))
}

/// `β_En(V) := ⋁_{X ∈ Dom∖{V}} β_DC(X, V)`: in a singleton team, `V` is
/// governed by a non-constant mechanism.  Over a one-variable signature this
/// is the empty disjunction `⊥`.
pub fn beta_en(v: VarIx, sig: &Signature) -> Formula {
    Formula::big_or(
        sig.vars()
            .filter(|x| *x != v)
            .map(|x| beta_dc(x, v, sig).expect("x ≠ v"))
            .collect(),
    )
}

/// `1Fun := ⋀_V (β_En(V) ⊃ ⋀_{w ∈ Ran(W_V)} (W_V = w □→ =(V)))` with
/// `W_V = Dom ∖ {V}`: on the members where `V` is properly endogenous, each
/// total intervention context fixes a single value of `V` — the mechanisms
/// for `V` agree where they are non-constant.
pub fn one_fun(sig: &Signature) -> Formula {
    Formula::big_and(
        sig.vars()
            .map(|v| {
                let w: Vec<VarIx> = sig.vars().filter(|u| *u != v).collect();
                let mut cfs = Vec::new();
                for_each_tuple(sig, &w, |ws| {
                    let ant: Vec<(VarIx, ValIx)> =
                        w.iter().copied().zip(ws.iter().copied()).collect();
                    cfs.push(Formula::cf_over(ant, Formula::constancy(v)));
                });
                Formula::selimp(beta_en(v, sig), Formula::big_and(cfs))
            })
            .collect(),
    )
}

/// `NoMix := ⋀_V ⋀ {Ξ_*^{{a,b}} : {a} ⊨ β_En(V), {b} ⊭ β_En(V)}`: no team
/// mixes a member on which `V` is properly endogenous with one on which it
/// is not.
///
/// `Ξ_*` only depends on the `≈`-profile of `{a, b}`, and whether a
/// singleton satisfies `β_En(V)` is invariant under `≈`, so the conjunction
/// — a *set* of formulas — is materialized by ranging `a` and `b` over the
/// representative points `(row, class core)` of the semantic universe.  The
/// membership tests use the actual model checker rather than a shortcut
/// through the components' endogeneity masks; the two agree (tested), but
/// only the former is the definition.
pub fn no_mix(sig: &Arc<Signature>) -> Formula {
    let mut points: Vec<(Assignment, Arc<FunctionComponent>)> = Vec::new();
    for f in representatives(sig) {
        for u in compatible_assignments(&f, sig) {
            points.push((u, f.clone()));
        }
    }
    let mut conjuncts = Vec::new();
    for v in sig.vars() {
        let beta = beta_en(v, sig);
        let mut yes = Vec::new();
        let mut no = Vec::new();
        for p in &points {
            let singleton = GeneralizedCausalTeam::new(sig.clone(), vec![p.clone()])
                .expect("representative points are compatible");
            if satisfies_gct(&singleton, &beta).expect("β_En is well-formed") {
                yes.push(p.clone());
            } else {
                no.push(p.clone());
            }
        }
        for a in &yes {
            for b in &no {
                let pair =
                    GeneralizedCausalTeam::new(sig.clone(), vec![a.clone(), b.clone()])
                        .expect("representative points are compatible");
                conjuncts.push(
                    xi_star(&pair, Dialect::Cod).expect("the pair team is nonempty"),
                );
            }
        }
    }
    Formula::big_and(conjuncts)
}

/// `X ⤳ Y`: under some intervention context `Z = z` with
/// `Z ⊆ Dom ∖ {X, Y}` (possibly empty), two settings of `X` alone lead to
/// two different values of `Y`.  Errors unless `X ≠ Y`.
pub fn leadsto(x: VarIx, y: VarIx, sig: &Signature) -> Result<Formula, ModelError> {
    if x == y {
        return Err(ModelError::Invalid(
            "⤳ needs two distinct variables".into(),
        ));
    }
    let rest: Vec<VarIx> = sig.vars().filter(|u| *u != x && *u != y).collect();
    let mut parts = Vec::new();
    for mask in 0u64..(1 << rest.len()) {
        let z: Vec<VarIx> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, u)| *u)
            .collect();
        for_each_tuple(sig, &z, |zs| {
            let context: Vec<(VarIx, ValIx)> =
                z.iter().copied().zip(zs.iter().copied()).collect();
            for x0 in sig.values(x) {
                for x1 in sig.values(x) {
                    if x0 == x1 {
                        continue;
                    }
                    for y0 in sig.values(y) {
                        for y1 in sig.values(y) {
                            if y0 == y1 {
                                continue;
                            }
                            let inner = Formula::and(
                                Formula::cf_over(vec![(x, x0)], Formula::Eq(y, y0)),
                                Formula::cf_over(vec![(x, x1)], Formula::Eq(y, y1)),
                            );
                            parts.push(Formula::cf_over(context.clone(), inner));
                        }
                    }
                }
            }
        });
    }
    Ok(Formula::big_or(parts))
}

/// A finite, extensional class of causal teams over one signature.
///
/// This is the input format of the definability constructions: membership is
/// literal set membership (rows *and* function component must match exactly,
/// not merely up to `≈`).  The saturation helpers close a seed class under
/// the operations the constructions demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamClass {
    sig: Arc<Signature>,
    members: BTreeSet<CausalTeam>,
}

impl TeamClass {
    /// Collects the members, checking they share `sig`.
    pub fn new(
        sig: Arc<Signature>,
        members: impl IntoIterator<Item = CausalTeam>,
    ) -> Result<Self, ModelError> {
        let mut set = BTreeSet::new();
        for t in members {
            if t.signature() != &sig {
                return Err(ModelError::SignatureMismatch);
            }
            set.insert(t);
        }
        Ok(TeamClass { sig, members: set })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn members(&self) -> impl Iterator<Item = &CausalTeam> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &CausalTeam) -> bool {
        self.members.contains(t)
    }

    /// The closure under subteams, `≈`-copies and all empty teams: the least
    /// downward-closed, `≈`-closed extension containing every empty team.
    /// Exponential in the row count of the largest member.
    pub fn saturate_downward(&self) -> TeamClass {
        self.saturate(false)
    }

    /// [`Self::saturate_downward`] plus closure under defined unions: the
    /// least flat, `≈`-closed extension.
    pub fn saturate_flat(&self) -> TeamClass {
        self.saturate(true)
    }

    fn saturate(&self, unions: bool) -> TeamClass {
        let all_fcs = enum_function_components(&self.sig);
        let mut members = self.members.clone();
        for f in &all_fcs {
            members.insert(CausalTeam::empty(self.sig.clone(), f.clone()));
        }
        loop {
            let mut fresh: Vec<CausalTeam> = Vec::new();
            for t in &members {
                for mask in 0u64..(1 << t.len()) {
                    let rows: Vec<Assignment> = t
                        .rows()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, s)| s.clone())
                        .collect();
                    let sub = CausalTeam::new(self.sig.clone(), t.fc().clone(), rows)
                        .expect("rows of a team are compatible");
                    if !members.contains(&sub) {
                        fresh.push(sub);
                    }
                }
                for g in &all_fcs {
                    if fc_similar(g, t.fc(), &self.sig)
                        && t.rows().iter().all(|s| {
                            crate::fc::compatible(s, g, &self.sig)
                        })
                    {
                        let copy =
                            CausalTeam::new(self.sig.clone(), g.clone(), t.rows().to_vec())
                                .expect("checked compatible");
                        if !members.contains(&copy) {
                            fresh.push(copy);
                        }
                    }
                }
            }
            if unions {
                for s in &members {
                    for t in &members {
                        if let Ok(u) = ct_union(s, t) {
                            if !members.contains(&u) {
                                fresh.push(u);
                            }
                        }
                    }
                }
            }
            if fresh.is_empty() {
                return TeamClass {
                    sig: self.sig.clone(),
                    members,
                };
            }
            members.extend(fresh);
        }
    }
}

/// One-line description of a team, for closure-violation witnesses.
fn team_label(t: &CausalTeam) -> String {
    let sig = t.signature();
    let rows = t
        .rows()
        .iter()
        .map(|s| format!("({})", s.render(sig)))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{}}} with [{}]", rows, t.fc().render(sig).replace('\n', "; "))
}

fn check_nonempty(class: &TeamClass) -> Result<(), ModelError> {
    if class.is_empty() {
        return Err(ModelError::EmptyClass);
    }
    Ok(())
}

fn check_all_empties(
    class: &TeamClass,
    all_fcs: &[Arc<FunctionComponent>],
) -> Result<(), ModelError> {
    let sig = class.signature();
    for f in all_fcs {
        let empty = CausalTeam::empty(sig.clone(), f.clone());
        if !class.contains(&empty) {
            return Err(ModelError::ClassNotClosed {
                property: "inclusive of all empty teams",
                witness: format!("missing {}", team_label(&empty)),
            });
        }
    }
    Ok(())
}

fn check_downward(class: &TeamClass) -> Result<(), ModelError> {
    let sig = class.signature();
    for t in class.members() {
        for mask in 0u64..(1 << t.len()) {
            let rows: Vec<Assignment> = t
                .rows()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| s.clone())
                .collect();
            let sub = CausalTeam::new(sig.clone(), t.fc().clone(), rows)
                .expect("rows of a team are compatible");
            if !class.contains(&sub) {
                return Err(ModelError::ClassNotClosed {
                    property: "downward closed",
                    witness: format!(
                        "{} is a member but its subteam {} is not",
                        team_label(t),
                        team_label(&sub)
                    ),
                });
            }
        }
    }
    Ok(())
}

fn check_equiv_closed(
    class: &TeamClass,
    all_fcs: &[Arc<FunctionComponent>],
) -> Result<(), ModelError> {
    let sig = class.signature();
    for t in class.members() {
        for g in all_fcs {
            if !fc_similar(g, t.fc(), sig)
                || !t.rows().iter().all(|s| crate::fc::compatible(s, g, sig))
            {
                continue;
            }
            let copy = CausalTeam::new(sig.clone(), g.clone(), t.rows().to_vec())
                .expect("checked compatible");
            if !class.contains(&copy) {
                return Err(ModelError::ClassNotClosed {
                    property: "closed under ≈",
                    witness: format!(
                        "{} is a member but the equivalent {} is not",
                        team_label(t),
                        team_label(&copy)
                    ),
                });
            }
        }
    }
    Ok(())
}

fn check_union_closed(class: &TeamClass) -> Result<(), ModelError> {
    for s in class.members() {
        for t in class.members() {
            if let Ok(u) = ct_union(s, t) {
                if !class.contains(&u) {
                    return Err(ModelError::ClassNotClosed {
                        property: "union closed",
                        witness: format!(
                            "{} and {} are members but their union {} is not",
                            team_label(s),
                            team_label(t),
                            team_label(&u)
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Defines a flat, `≈`-closed class of causal teams in the counterfactual
/// base language: the result `φ` satisfies `{T : T ⊨ᶜ φ} = class`.
///
/// The preconditions — nonempty, containing every empty team, downward
/// closed, union closed, `≈`-closed — are checked first and reported with a
/// witness when violated.  The formula disjoins, over the similarity-class
/// representatives `F₀`, the pair `Θ^{T_{F₀}} ∧ Φ^{F₀}` where `T_{F₀}` pools
/// the rows of all members in the class slice of `F₀`.
pub fn define_flat_class(class: &TeamClass) -> Result<Formula, ModelError> {
    let sig = class.signature();
    let all_fcs = enum_function_components(sig);
    check_nonempty(class)?;
    check_all_empties(class, &all_fcs)?;
    check_downward(class)?;
    check_union_closed(class)?;
    check_equiv_closed(class, &all_fcs)?;
    let mut rows_by_core: BTreeMap<FunctionComponent, BTreeSet<Assignment>> = BTreeMap::new();
    for t in class.members() {
        rows_by_core
            .entry(t.fc().core(sig))
            .or_default()
            .extend(t.rows().iter().cloned());
    }
    let disjuncts = representatives(sig)
        .iter()
        .map(|f0| {
            let rows: Vec<Assignment> = rows_by_core
                .get(f0.as_ref())
                .map(|set| set.iter().cloned().collect())
                .unwrap_or_default();
            Formula::and(theta_t(&rows, sig), phi_f(f0, sig))
        })
        .collect();
    Ok(Formula::big_or(disjuncts))
}

/// Defines a downward-closed, `≈`-closed class of causal teams in the
/// dependence language: the result `φ` satisfies `{T : T ⊨ᶜ φ} = class`.
///
/// The preconditions — nonempty, containing every empty team, downward
/// closed, `≈`-closed — are checked first and reported with a witness when
/// violated.  The formula conjoins `Ξ^T` over every team `T` outside the
/// class; it therefore enumerates all of `ℂσ` and is only practical for
/// small signatures.
pub fn define_downward_class(class: &TeamClass) -> Result<Formula, ModelError> {
    let sig = class.signature();
    let all_fcs = enum_function_components(sig);
    check_nonempty(class)?;
    check_all_empties(class, &all_fcs)?;
    check_downward(class)?;
    check_equiv_closed(class, &all_fcs)?;
    let conjuncts = enum_causal_teams(sig)
        .into_iter()
        .filter(|t| !class.contains(t))
        .map(|t| xi_t(&t, Dialect::Cod).expect("excluded teams are nonempty"))
        .collect();
    Ok(Formula::big_and(conjuncts))
}
