//! Brute-force entailment `Δ ⊨ ψ` by enumerating (or sampling) the team
//! universes.
//!
//! Causal teams: for each function component, the compatible assignments
//! form one frame and every subteam is a bitmask over it, so the whole
//! universe `ℂσ` is swept with shared satisfaction masks and memo tables.
//! When a component has more compatible rows than the budget allows, its
//! subteams are sampled instead and the verdict is marked inexact.
//!
//! Generalized teams, by an exactness ladder:
//!
//! 1. `|Sem_σ|` within budget: enumerate all subsets of `Sem_σ`.
//! 2. Otherwise, if the per-class row sets of the similarity
//!    representatives fit the budget: enumerate all subsets of
//!    `{(s, F₀) : F₀ a representative, s compatible with F₀}`.  Satisfaction
//!    is invariant under replacing a member's component by its
//!    representative (closure under causal equivalence), and every
//!    equivalence profile is realized by exactly one such subset, so this
//!    route is still exact.
//! 3. Otherwise sample subsets of `Sem_σ`; the verdict is inexact.
//!
//! A counterexample verdict is always exact: the failing team is in hand.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::enumeration::{
    compatible_assignments, enum_function_components, enum_sem, representatives, UniverseBudget,
};
use crate::error::ModelError;
use crate::fc::FunctionComponent;
use crate::semantics::compile::{compile_many, NodeId, Program};
use crate::semantics::eval_ct::CtEvaluator;
use crate::semantics::eval_gct::GctEvaluator;
use crate::semantics::{Counterexample, Mode, Verdict};
use crate::signature::{Assignment, Signature};
use crate::syntax::Formula;
use crate::team::{CausalTeam, GeneralizedCausalTeam};

fn compile_query<'f>(
    delta: &'f [Formula],
    psi: &'f Formula,
    sig: &Signature,
) -> Result<(Program, Vec<NodeId>, NodeId), ModelError> {
    let mut all: Vec<&Formula> = delta.iter().collect();
    all.push(psi);
    let (prog, mut roots) = compile_many(&all, sig)?;
    let psi_root = roots.pop().expect("ψ root");
    Ok((prog, roots, psi_root))
}

/// Does every causal team over σ that satisfies all of Δ satisfy ψ?
pub fn entails_ct(
    delta: &[Formula],
    psi: &Formula,
    sig: &Arc<Signature>,
    budget: &UniverseBudget,
) -> Result<Verdict, ModelError> {
    let (prog, delta_roots, psi_root) = compile_query(delta, psi, sig)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.rng_seed);
    let mut exact = true;
    for fc in enum_function_components(sig) {
        let rows = compatible_assignments(&fc, sig);
        let check = |ev: &mut CtEvaluator, frame: usize, mask: u128| -> bool {
            delta_roots.iter().all(|&d| ev.eval(frame, d, mask))
                && !ev.eval(frame, psi_root, mask)
        };
        if rows.len() <= budget.max_sem_size {
            let mut ev = CtEvaluator::new(sig, &prog);
            let frame = ev.add_frame(rows.clone(), fc.clone());
            for mask in 0..1u128 << rows.len() {
                if check(&mut ev, frame, mask) {
                    let team = team_of_mask(sig, &fc, &rows, mask);
                    return Ok(counterexample(Mode::Ct, Counterexample::Ct(team)));
                }
            }
        } else {
            exact = false;
            let mut ev = CtEvaluator::new(sig, &prog);
            for _ in 0..budget.sample_count {
                let sample: Vec<Assignment> = rows
                    .iter()
                    .filter(|_| rng.gen::<bool>())
                    .take(128)
                    .cloned()
                    .collect();
                let frame = ev.add_frame(sample.clone(), fc.clone());
                let full = ev.full(frame);
                if check(&mut ev, frame, full) {
                    let team = CausalTeam::new(sig.clone(), fc.clone(), sample)?;
                    return Ok(counterexample(Mode::Ct, Counterexample::Ct(team)));
                }
            }
        }
    }
    Ok(Verdict { holds: true, mode: Mode::Ct, exact, counterexample: None })
}

/// Does every generalized causal team over σ that satisfies all of Δ
/// satisfy ψ?
pub fn entails_gct(
    delta: &[Formula],
    psi: &Formula,
    sig: &Arc<Signature>,
    budget: &UniverseBudget,
) -> Result<Verdict, ModelError> {
    let (prog, delta_roots, psi_root) = compile_query(delta, psi, sig)?;
    let sem = enum_sem(sig);
    let check = |ev: &mut GctEvaluator, frame: usize, mask: u128| -> bool {
        delta_roots.iter().all(|&d| ev.eval(frame, d, mask))
            && !ev.eval(frame, psi_root, mask)
    };

    let exhaustive_base = if sem.len() <= budget.max_sem_size {
        Some(sem.clone())
    } else {
        let mut base: Vec<(Assignment, Arc<FunctionComponent>)> = Vec::new();
        for rep in representatives(sig) {
            for row in compatible_assignments(&rep, sig) {
                base.push((row, rep.clone()));
            }
        }
        base.sort();
        if base.len() <= budget.max_sem_size {
            Some(base)
        } else {
            None
        }
    };

    if let Some(base) = exhaustive_base {
        let mut ev = GctEvaluator::new(sig, &prog);
        let frame = ev.add_frame(base.clone());
        for mask in 0..1u128 << base.len() {
            if check(&mut ev, frame, mask) {
                let members: Vec<_> = base
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, m)| m.clone())
                    .collect();
                let team = GeneralizedCausalTeam::new(sig.clone(), members)?;
                return Ok(counterexample(Mode::Gct, Counterexample::Gct(team)));
            }
        }
        return Ok(Verdict { holds: true, mode: Mode::Gct, exact: true, counterexample: None });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.rng_seed);
    let mut ev = GctEvaluator::new(sig, &prog);
    for _ in 0..budget.sample_count {
        let members: Vec<_> = sem
            .iter()
            .filter(|_| rng.gen::<bool>())
            .take(128)
            .cloned()
            .collect();
        let frame = ev.add_frame(members.clone());
        let full = ev.full(frame);
        if check(&mut ev, frame, full) {
            let team = GeneralizedCausalTeam::new(sig.clone(), members)?;
            return Ok(counterexample(Mode::Gct, Counterexample::Gct(team)));
        }
    }
    Ok(Verdict { holds: true, mode: Mode::Gct, exact: false, counterexample: None })
}

/// Two-sided entailment.
pub fn equivalent(
    phi: &Formula,
    psi: &Formula,
    sig: &Arc<Signature>,
    mode: Mode,
    budget: &UniverseBudget,
) -> Result<Verdict, ModelError> {
    let entails = |delta: &[Formula], goal: &Formula| match mode {
        Mode::Ct => entails_ct(delta, goal, sig, budget),
        Mode::Gct => entails_gct(delta, goal, sig, budget),
    };
    let fwd = entails(std::slice::from_ref(phi), psi)?;
    if !fwd.holds {
        return Ok(fwd);
    }
    let bwd = entails(std::slice::from_ref(psi), phi)?;
    Ok(Verdict {
        holds: bwd.holds,
        mode,
        exact: fwd.exact && bwd.exact,
        counterexample: bwd.counterexample,
    })
}

fn counterexample(mode: Mode, ce: Counterexample) -> Verdict {
    Verdict { holds: false, mode, exact: true, counterexample: Some(ce) }
}

fn team_of_mask(
    sig: &Arc<Signature>,
    fc: &Arc<FunctionComponent>,
    rows: &[Assignment],
    mask: u128,
) -> CausalTeam {
    let selected: Vec<Assignment> = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, r)| r.clone())
        .collect();
    CausalTeam::new(sig.clone(), fc.clone(), selected).expect("rows are compatible")
}
