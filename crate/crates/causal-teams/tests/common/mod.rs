//! Shared helpers for the integration suites: seeded random generators for
//! signatures, function components, teams, and formulas of each dialect.

#![allow(dead_code)]

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use causal_teams::{
    Assignment, CausalTeam, EquationSeq, Formula, FormulaClass, FunctionComponent,
    GeneralizedCausalTeam, Mechanism, Signature,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two binary variables: the smallest signature whose function components
/// split into more than one similarity class.
pub fn two_binary() -> Arc<Signature> {
    Signature::from_names(&[("A", &["0", "1"]), ("B", &["0", "1"])]).unwrap()
}

/// The component `child := parent` (identity table); other variables stay
/// exogenous.  Both variables must be binary.
pub fn identity_fc(sig: &Signature, parent: usize, child: usize) -> Arc<FunctionComponent> {
    FunctionComponent::from_entries(
        sig,
        vec![(child, Mechanism::tabulate(sig, vec![parent], |t| t[0]))],
    )
    .unwrap()
}

/// The component `child := ¬parent` (negation table); both binary.
pub fn negation_fc(sig: &Signature, parent: usize, child: usize) -> Arc<FunctionComponent> {
    FunctionComponent::from_entries(
        sig,
        vec![(child, Mechanism::tabulate(sig, vec![parent], |t| 1 - t[0]))],
    )
    .unwrap()
}

/// The running example signature: U, X binary, Y ∈ {1,2}, Z ∈ {2..6}.
pub fn example_signature() -> Arc<Signature> {
    Signature::from_names(&[
        ("U", &["0", "1"]),
        ("X", &["0", "1"]),
        ("Y", &["1", "2"]),
        ("Z", &["2", "3", "4", "5", "6"]),
    ])
    .unwrap()
}

/// The running example laws: X := U, Y := X + 1, Z := 2Y + X + U.
pub fn example_fc(sig: &Signature) -> Arc<FunctionComponent> {
    FunctionComponent::from_entries(
        sig,
        vec![
            (1, Mechanism { parents: vec![0], table: vec![0, 1] }),
            (2, Mechanism { parents: vec![1], table: vec![0, 1] }),
            (3, Mechanism { parents: vec![0, 1, 2], table: vec![0, 2, 1, 3, 1, 3, 2, 4] }),
        ],
    )
    .unwrap()
}

/// The running example team: rows (0,0,1,2) and (1,1,2,6).
pub fn example_team() -> CausalTeam {
    let sig = example_signature();
    let fc = example_fc(&sig);
    let rows = vec![
        Assignment::new(&sig, vec![0, 0, 0, 0]).unwrap(),
        Assignment::new(&sig, vec![1, 1, 1, 4]).unwrap(),
    ];
    CausalTeam::new(sig, fc, rows).unwrap()
}

/// A random signature with `vars` variables whose ranges have 2 or 3 values.
pub fn random_signature(rng: &mut ChaCha8Rng, vars: usize) -> Arc<Signature> {
    let names = ["A", "B", "C", "D", "E"];
    let entries: Vec<(String, Vec<String>)> = (0..vars)
        .map(|v| {
            let size = rng.gen_range(2..=3usize);
            (
                names[v].to_string(),
                (0..size).map(|x| x.to_string()).collect(),
            )
        })
        .collect();
    Signature::new(entries).unwrap()
}

/// A random recursive function component: a random variable order, and each
/// variable independently exogenous or given a mechanism over a random set
/// of earlier variables.
pub fn random_fc(rng: &mut ChaCha8Rng, sig: &Signature) -> Arc<FunctionComponent> {
    let n = sig.var_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut entries = Vec::new();
    for (pos, &v) in order.iter().enumerate() {
        if rng.gen_bool(0.5) {
            continue;
        }
        let mut parents: Vec<usize> = order[..pos]
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        parents.sort_unstable();
        let mech = Mechanism::tabulate(sig, parents, |_| {
            rng.gen_range(0..sig.range_size(v)) as u16
        });
        entries.push((v, mech));
    }
    FunctionComponent::from_entries(sig, entries).unwrap()
}

/// A random causal team over a random component: each compatible assignment
/// is kept with probability ½, capped at `max_rows`.
pub fn random_ct(rng: &mut ChaCha8Rng, sig: &Arc<Signature>, max_rows: usize) -> CausalTeam {
    let fc = random_fc(rng, sig);
    let mut rows = causal_teams::compatible_assignments(&fc, sig);
    rows.retain(|_| rng.gen_bool(0.5));
    rows.truncate(max_rows);
    CausalTeam::new(sig.clone(), fc, rows).unwrap()
}

/// A random generalized causal team with at most `max_members` members.
pub fn random_gct(
    rng: &mut ChaCha8Rng,
    sig: &Arc<Signature>,
    max_members: usize,
) -> GeneralizedCausalTeam {
    let count = rng.gen_range(0..=max_members);
    let mut members = Vec::new();
    for _ in 0..count {
        let fc = random_fc(rng, sig);
        let rows = causal_teams::compatible_assignments(&fc, sig);
        let row = rows.choose(rng).expect("every component has a row").clone();
        members.push((row, fc));
    }
    GeneralizedCausalTeam::new(sig.clone(), members).unwrap()
}

/// A random well-formed formula of the given dialect with the given depth
/// budget.  `Co` formulas come out of either dialect's generator when the
/// extension-specific constructor happens not to fire.
pub fn random_formula(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    depth: usize,
    dialect: FormulaClass,
) -> Formula {
    let n = sig.var_count();
    let atom = |rng: &mut ChaCha8Rng| {
        let v = rng.gen_range(0..n);
        let x = rng.gen_range(0..sig.range_size(v)) as u16;
        Formula::Eq(v, x)
    };
    if depth == 0 {
        return match rng.gen_range(0..10) {
            0 => Formula::Bot,
            1 if dialect == FormulaClass::Cod => {
                let y = rng.gen_range(0..n);
                let xs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
                Formula::dep(xs, y)
            }
            _ => atom(rng),
        };
    }
    match rng.gen_range(0..12) {
        0 => Formula::Bot,
        1 => atom(rng),
        2 | 3 => Formula::and(
            random_formula(rng, sig, depth - 1, dialect),
            random_formula(rng, sig, depth - 1, dialect),
        ),
        4 | 5 => Formula::or(
            random_formula(rng, sig, depth - 1, dialect),
            random_formula(rng, sig, depth - 1, dialect),
        ),
        6 => Formula::neg(random_formula(rng, sig, depth - 1, FormulaClass::Co)),
        7 | 8 => {
            let len = rng.gen_range(1..=2usize);
            let eqs: Vec<(usize, u16)> = (0..len)
                .map(|_| {
                    let v = rng.gen_range(0..n);
                    (v, rng.gen_range(0..sig.range_size(v)) as u16)
                })
                .collect();
            Formula::cf(
                EquationSeq::new(eqs).unwrap(),
                random_formula(rng, sig, depth - 1, dialect),
            )
        }
        9 => Formula::selimp(
            random_formula(rng, sig, depth - 1, FormulaClass::Co),
            random_formula(rng, sig, depth - 1, dialect),
        ),
        10 if dialect == FormulaClass::CoI => Formula::idisj(
            random_formula(rng, sig, depth - 1, dialect),
            random_formula(rng, sig, depth - 1, dialect),
        ),
        10 if dialect == FormulaClass::Cod => {
            let y = rng.gen_range(0..n);
            let xs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
            Formula::dep(xs, y)
        }
        _ => atom(rng),
    }
}
