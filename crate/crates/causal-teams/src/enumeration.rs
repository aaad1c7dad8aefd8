//! Exhaustive generation of the finite semantic universes.
//!
//! For a signature σ this module enumerates, in deterministic canonical
//! orders:
//!
//! | universe | contents | order |
//! |----------|----------|-------|
//! | `𝔸σ`  | all assignments | lexicographic, leftmost variable most significant |
//! | `𝔽σ`  | all recursive function components | `En` bitmask ascending, then parent-mask vectors, then tables |
//! | `Sem_σ` | all compatible `(assignment, fc)` pairs | per-fc, fcs in `𝔽σ` order |
//! | `𝔽⁰σ` | one representative per `~`-class | the class core = least class member in `𝔽σ` order |
//! | `ℂσ`  | all causal teams | per-fc, row subsets by bitmask ascending |
//!
//! Generalized causal teams are subsets of `Sem_σ`; their number is
//! `2^|Sem_σ|`, so [`enum_gcts`] enumerates exactly only up to a
//! [`UniverseBudget`] and falls back to seeded uniform sampling beyond it,
//! reporting the fallback explicitly.
//!
//! The orders matter: characterization formulas index their big operators by
//! them, so formula output is byte-stable, and class representatives are
//! reproducible across runs.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fc::{compatible, for_each_tuple, FunctionComponent, Mechanism};
use crate::signature::{Assignment, Signature, ValIx, VarIx};
use crate::team::{CausalTeam, GeneralizedCausalTeam};

/// Resource limits for operations that would otherwise enumerate `2^|Sem_σ|`
/// generalized teams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseBudget {
    /// Cap on `|Sem_σ|` (or on the profile base size, for the entailment
    /// oracle's exact reduction) up to which subsets are enumerated exactly.
    pub max_sem_size: usize,
    /// Number of sampled teams when exact enumeration is out of budget.
    pub sample_count: usize,
    /// Seed for the sampling RNG; equal seeds give equal samples.
    pub rng_seed: u64,
}

impl Default for UniverseBudget {
    fn default() -> Self {
        // 2^18 subsets is comfortable desk scale.
        UniverseBudget {
            max_sem_size: 18,
            sample_count: 20_000,
            rng_seed: 0,
        }
    }
}

/// All assignments over σ in lexicographic order.
pub fn enum_assignments(sig: &Signature) -> Vec<Assignment> {
    let vars: Vec<VarIx> = sig.vars().collect();
    let mut out = Vec::with_capacity(sig.assignment_count());
    for_each_tuple(sig, &vars, |tuple| out.push(Assignment(tuple.to_vec())));
    out
}

/// All recursive function components over σ, each exactly once, in the
/// canonical order (`En` bitmask ascending, then the vector of parent
/// bitmasks in variable order lexicographically, then tables
/// lexicographically).
///
/// The count grows doubly exponentially; call this only for desk-scale
/// signatures (the property suites use ≤ 2 variables with ranges ≤ 3).
pub fn enum_function_components(sig: &Signature) -> Vec<Arc<FunctionComponent>> {
    let n = sig.var_count();
    let mut out = Vec::new();
    for en_mask in 0..(1u64 << n) {
        let en_vars: Vec<VarIx> = (0..n).filter(|&v| en_mask & (1 << v) != 0).collect();
        let mut parent_masks: Vec<u64> = vec![0; en_vars.len()];
        loop {
            if parent_profile_is_acyclic(n, en_mask, &en_vars, &parent_masks) {
                emit_tables(sig, &en_vars, &parent_masks, &mut out);
            }
            if !advance_parent_masks(n, &en_vars, &mut parent_masks) {
                break;
            }
        }
    }
    out
}

/// Advances the vector of parent masks like a mixed-radix counter (last
/// variable fastest); each variable's mask ranges over subsets of
/// `Dom \ {V}` in ascending mask order.
fn advance_parent_masks(n: usize, en_vars: &[VarIx], masks: &mut [u64]) -> bool {
    for i in (0..en_vars.len()).rev() {
        let v = en_vars[i];
        loop {
            masks[i] += 1;
            if masks[i] >= (1 << n) {
                masks[i] = 0;
                break; // carry to the previous position
            }
            if masks[i] & (1 << v) == 0 {
                return true;
            }
        }
    }
    false
}

fn parent_profile_is_acyclic(n: usize, en_mask: u64, en_vars: &[VarIx], masks: &[u64]) -> bool {
    // Kahn's algorithm over the candidate graph.
    let parents = |v: VarIx| -> u64 {
        en_vars
            .iter()
            .position(|&w| w == v)
            .map_or(0, |i| masks[i])
    };
    // `removed` starts with all exogenous variables (no incoming mechanism).
    let all = (1u64 << n) - 1;
    let mut removed: u64 = !en_mask & all;
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if removed & (1 << v) == 0 && parents(v) & !removed & all == 0 {
                removed |= 1 << v;
                changed = true;
            }
        }
    }
    removed == all
}

/// Emits every total-table assignment for a fixed endogenous set and parent
/// profile, tables in lexicographic order.
fn emit_tables(
    sig: &Signature,
    en_vars: &[VarIx],
    parent_masks: &[u64],
    out: &mut Vec<Arc<FunctionComponent>>,
) {
    let n = sig.var_count();
    let parent_lists: Vec<Vec<VarIx>> = parent_masks
        .iter()
        .map(|&m| (0..n).filter(|&p| m & (1 << p) != 0).collect())
        .collect();
    let table_lens: Vec<usize> = en_vars
        .iter()
        .zip(&parent_lists)
        .map(|(_, ps)| ps.iter().map(|&p| sig.range_size(p)).product())
        .collect();
    let radices: Vec<usize> = en_vars.iter().map(|&v| sig.range_size(v)).collect();

    // One table entry per (variable, tuple) position; iterate all
    // combinations lexicographically (later variables' tables vary fastest,
    // within a table the later tuple entries vary fastest).
    let total_positions: usize = table_lens.iter().sum();
    let mut digits: Vec<ValIx> = vec![0; total_positions];
    loop {
        let mut mechanisms: Vec<Option<Mechanism>> = vec![None; n];
        let mut offset = 0;
        for (i, &v) in en_vars.iter().enumerate() {
            let table = digits[offset..offset + table_lens[i]].to_vec();
            offset += table_lens[i];
            mechanisms[v] = Some(Mechanism {
                parents: parent_lists[i].clone(),
                table,
            });
        }
        out.push(
            FunctionComponent::new(sig, mechanisms)
                .expect("enumerated components are valid by construction"),
        );
        // Advance digits: rightmost position fastest, radix = |Ran(V)| of
        // the variable owning that position.
        let mut pos = total_positions;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            let var_of_pos = {
                let mut acc = 0;
                let mut var = 0;
                for (i, &len) in table_lens.iter().enumerate() {
                    if pos < acc + len {
                        var = i;
                        break;
                    }
                    acc += len;
                }
                var
            };
            digits[pos] += 1;
            if (digits[pos] as usize) < radices[var_of_pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The assignments compatible with a function component, in `𝔸σ` order.
pub fn compatible_assignments(f: &FunctionComponent, sig: &Signature) -> Vec<Assignment> {
    enum_assignments(sig)
        .into_iter()
        .filter(|s| compatible(s, f, sig))
        .collect()
}

/// `Sem_σ`: all compatible `(assignment, fc)` pairs, grouped by fc in `𝔽σ`
/// order.
pub fn enum_sem(sig: &Signature) -> Vec<(Assignment, Arc<FunctionComponent>)> {
    let mut out = Vec::new();
    for fc in enum_function_components(sig) {
        for s in compatible_assignments(&fc, sig) {
            out.push((s, fc.clone()));
        }
    }
    out
}

/// `𝔽⁰σ`: one representative per `~`-class — the class core, which is also
/// the least class member in `𝔽σ` enumeration order.
pub fn representatives(sig: &Signature) -> Vec<Arc<FunctionComponent>> {
    enum_function_components(sig)
        .into_iter()
        .filter(|f| f.core(sig) == **f)
        .collect()
}

/// `ℂσ`: all causal teams — for each fc, every subset of its compatible
/// assignments, subsets by bitmask ascending (so the empty team comes first
/// for every fc).
pub fn enum_causal_teams(sig: &Arc<Signature>) -> Vec<CausalTeam> {
    let mut out = Vec::new();
    for fc in enum_function_components(sig) {
        let comp = compatible_assignments(&fc, sig);
        assert!(comp.len() < usize::BITS as usize, "universe too large");
        for mask in 0..(1usize << comp.len()) {
            let rows: Vec<Assignment> = comp
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| s.clone())
                .collect();
            out.push(
                CausalTeam::new(sig.clone(), fc.clone(), rows)
                    .expect("subsets of compatible assignments are compatible"),
            );
        }
    }
    out
}

/// Result of [`enum_gcts`]: either the exact universe of generalized teams
/// or a seeded uniform sample (reported, never silent).
pub enum GctUniverse {
    Exact(Vec<GeneralizedCausalTeam>),
    Sampled(Vec<GeneralizedCausalTeam>),
}

impl GctUniverse {
    pub fn teams(&self) -> &[GeneralizedCausalTeam] {
        match self {
            GctUniverse::Exact(ts) | GctUniverse::Sampled(ts) => ts,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, GctUniverse::Exact(_))
    }
}

/// All generalized causal teams (subsets of `Sem_σ`) when
/// `|Sem_σ| ≤ budget.max_sem_size`; otherwise `budget.sample_count` teams
/// sampled uniformly (each pair kept with probability ½) with the seeded
/// RNG.
pub fn enum_gcts(sig: &Arc<Signature>, budget: &UniverseBudget) -> GctUniverse {
    let sem = enum_sem(sig);
    if sem.len() <= budget.max_sem_size {
        let mut out = Vec::with_capacity(1 << sem.len());
        for mask in 0..(1usize << sem.len()) {
            out.push(gct_from_mask(sig, &sem, mask));
        }
        GctUniverse::Exact(out)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.rng_seed);
        let mut out = Vec::with_capacity(budget.sample_count);
        for _ in 0..budget.sample_count {
            let members = sem.iter().filter(|_| rng.gen::<bool>()).cloned().collect();
            out.push(
                GeneralizedCausalTeam::new(sig.clone(), members)
                    .expect("subsets of Sem are valid"),
            );
        }
        GctUniverse::Sampled(out)
    }
}

fn gct_from_mask(
    sig: &Arc<Signature>,
    sem: &[(Assignment, Arc<FunctionComponent>)],
    mask: usize,
) -> GeneralizedCausalTeam {
    let members = sem
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, m)| m.clone())
        .collect();
    GeneralizedCausalTeam::new(sig.clone(), members).expect("subsets of Sem are valid")
}

/// All generalized causal teams with at most `max_members` members —
/// exhaustive regardless of budget (the count is `Σ_{k≤m} C(|Sem|, k)`).
pub fn enum_gcts_up_to_size(sig: &Arc<Signature>, max_members: usize) -> Vec<GeneralizedCausalTeam> {
    let sem = enum_sem(sig);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        sig: &Arc<Signature>,
        sem: &[(Assignment, Arc<FunctionComponent>)],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<GeneralizedCausalTeam>,
    ) {
        let members = chosen.iter().map(|&i| sem[i].clone()).collect();
        out.push(
            GeneralizedCausalTeam::new(sig.clone(), members).expect("subsets of Sem are valid"),
        );
        if left == 0 {
            return;
        }
        for i in start..sem.len() {
            chosen.push(i);
            rec(sig, sem, i + 1, left - 1, chosen, out);
            chosen.pop();
        }
    }
    rec(sig, &sem, 0, max_members, &mut chosen, &mut out);
    out
}
