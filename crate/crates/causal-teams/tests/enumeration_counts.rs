//! Frozen cardinalities and structural invariants for the enumerators.
//!
//! The counts over one and two binary variables were derived by hand:
//!
//! * one binary variable A: components are "A exogenous", "A := 0", "A := 1",
//!   so |F| = 3, all mutually similar (one class); |Sem| = 2 + 1 + 1 = 4.
//! * two binary variables A, B: per variable the mechanism choices are
//!   "none" (1), "constant" (2), or one of the 2^(2^1) = 4 unary tables, and
//!   choices combine acyclically: 33 components, 5 similarity classes,
//!   |Sem| = 48, and Σ_F 2^|compatible(F)| = 104 causal teams.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use causal_teams::fc::fc_similar;
use causal_teams::{
    compatible_assignments, enum_assignments, enum_causal_teams, enum_function_components,
    enum_gcts, enum_sem, representatives, FunctionComponent, Signature, UniverseBudget,
};

fn binary(names: &[&str]) -> Arc<Signature> {
    let spec: Vec<(&str, &[&str])> = names.iter().map(|n| (*n, ["0", "1"].as_slice())).collect();
    Signature::from_names(&spec).unwrap()
}

#[test]
fn assignment_counts() {
    assert_eq!(enum_assignments(&binary(&["A"])).len(), 2);
    assert_eq!(enum_assignments(&binary(&["A", "B"])).len(), 4);
    let example = Signature::from_names(&[
        ("U", &["0", "1"]),
        ("X", &["0", "1"]),
        ("Y", &["1", "2"]),
        ("Z", &["2", "3", "4", "5", "6"]),
    ])
    .unwrap();
    assert_eq!(example.assignment_count(), 40);
    let all = enum_assignments(&example);
    assert_eq!(all.len(), 40);
    let dedup: BTreeSet<_> = all.iter().cloned().collect();
    assert_eq!(dedup.len(), 40, "no duplicates");
    assert!(all.windows(2).all(|w| w[0] < w[1]), "ascending order");
}

#[test]
fn function_component_counts() {
    assert_eq!(enum_function_components(&binary(&["A"])).len(), 3);
    let fcs = enum_function_components(&binary(&["A", "B"]));
    assert_eq!(fcs.len(), 33);
    let dedup: BTreeSet<_> = fcs.iter().map(|f| (**f).clone()).collect();
    assert_eq!(dedup.len(), 33);
    for f in &fcs {
        assert!(f.is_recursive(&binary(&["A", "B"])));
    }
}

/// Independent cross-check of the 33: generate per-variable mechanism options
/// naively (including cyclic combinations), filter through the validating
/// constructor, and compare as a set.
#[test]
fn function_components_match_a_naive_generator() {
    let sig = binary(&["A", "B"]);
    let mut options_per_var: Vec<Vec<Option<causal_teams::Mechanism>>> = Vec::new();
    for v in 0..2usize {
        let other = 1 - v;
        let mut opts = vec![None];
        for c in 0..2u16 {
            opts.push(Some(causal_teams::Mechanism { parents: vec![], table: vec![c] }));
        }
        for t0 in 0..2u16 {
            for t1 in 0..2u16 {
                opts.push(Some(causal_teams::Mechanism {
                    parents: vec![other],
                    table: vec![t0, t1],
                }));
            }
        }
        options_per_var.push(opts);
    }
    let mut naive = BTreeSet::new();
    for a in &options_per_var[0] {
        for b in &options_per_var[1] {
            let mut entries = Vec::new();
            if let Some(m) = a {
                entries.push((0, m.clone()));
            }
            if let Some(m) = b {
                entries.push((1, m.clone()));
            }
            if let Ok(f) = FunctionComponent::from_entries(&sig, entries) {
                naive.insert((*f).clone());
            }
        }
    }
    let enumerated: BTreeSet<_> = enum_function_components(&sig)
        .into_iter()
        .map(|f| (*f).clone())
        .collect();
    assert_eq!(naive, enumerated);
}

#[test]
fn sem_and_team_counts() {
    let sig1 = binary(&["A"]);
    assert_eq!(enum_sem(&sig1).len(), 4);
    assert_eq!(enum_causal_teams(&sig1).len(), 8); // 2^2 + 2^1 + 2^1

    let sig2 = binary(&["A", "B"]);
    let sem = enum_sem(&sig2);
    assert_eq!(sem.len(), 48);
    let dedup: BTreeSet<_> = sem.iter().cloned().collect();
    assert_eq!(dedup.len(), 48);

    let teams = enum_causal_teams(&sig2);
    assert_eq!(teams.len(), 104);
    // Closed form: Σ over components of 2^(number of compatible assignments).
    let total: usize = enum_function_components(&sig2)
        .iter()
        .map(|f| 1usize << compatible_assignments(f, &sig2).len())
        .sum();
    assert_eq!(total, 104);
    // Every component contributes exactly one empty team.
    let empties = teams.iter().filter(|t| t.is_empty()).count();
    assert_eq!(empties, 33);
}

#[test]
fn representatives_partition_by_similarity() {
    for sig in [binary(&["A"]), binary(&["A", "B"])] {
        let fcs = enum_function_components(&sig);
        let reps = representatives(&sig);
        // Pairwise dissimilar.
        for (i, r) in reps.iter().enumerate() {
            for s in reps.iter().skip(i + 1) {
                assert!(!fc_similar(r, s, &sig));
            }
        }
        // Every component is similar to exactly one representative, namely
        // its core.
        for f in &fcs {
            let matches: Vec<_> = reps.iter().filter(|r| fc_similar(f, r, &sig)).collect();
            assert_eq!(matches.len(), 1);
            assert_eq!(**matches[0], f.core(&sig));
        }
        // Representatives are their own cores (dummy- and constant-free).
        for r in &reps {
            assert_eq!((**r).clone(), r.core(&sig));
        }
    }
    assert_eq!(representatives(&binary(&["A"])).len(), 1);
    assert_eq!(representatives(&binary(&["A", "B"])).len(), 5);
}

#[test]
fn class_row_sets_for_two_binary_variables() {
    // Used by the generalized-team entailment route: for each similarity
    // class, the rows compatible with its core. The five classes over A, B
    // are: both exogenous (4 rows), A := B (2), B := A (2), and the two
    // "essential function both ways" classes do not exist (cyclic), while
    // constants collapse into the exogenous class... in fact the classes are
    // distinguished by which unary tables are essential:
    //   exogenous-core (4 rows), A := B (2), A := ¬B (2), B := A (2),
    //   B := ¬A (2); total row mass 12.
    let sig = binary(&["A", "B"]);
    let reps = representatives(&sig);
    let mut mass = 0usize;
    let mut sizes: Vec<usize> = Vec::new();
    for r in &reps {
        let rows = compatible_assignments(r, &sig);
        sizes.push(rows.len());
        mass += rows.len();
    }
    sizes.sort();
    assert_eq!(sizes, vec![2, 2, 2, 2, 4]);
    assert_eq!(mass, 12);
}

#[test]
fn gct_enumeration_is_exact_for_small_universes() {
    let sig = binary(&["A"]);
    let budget = UniverseBudget::default();
    let universe = enum_gcts(&sig, &budget);
    assert!(universe.is_exact());
    let teams = universe.teams();
    assert_eq!(teams.len(), 16); // 2^4 subsets of Sem
    let dedup: BTreeSet<_> = teams.iter().cloned().collect();
    assert_eq!(dedup.len(), 16);
    assert_eq!(teams.iter().filter(|g| g.is_empty()).count(), 1);
}

#[test]
fn gct_sampling_is_reproducible() {
    let sig = binary(&["A", "B"]); // |Sem| = 48 > default cap of 18
    let budget = UniverseBudget { max_sem_size: 18, sample_count: 64, rng_seed: 7 };
    let u1 = enum_gcts(&sig, &budget);
    let u2 = enum_gcts(&sig, &budget);
    assert!(!u1.is_exact());
    assert_eq!(u1.teams(), u2.teams());
    assert_eq!(u1.teams().len(), 64);
    let other = enum_gcts(&sig, &UniverseBudget { rng_seed: 8, ..budget });
    assert_ne!(u1.teams(), other.teams());
}

#[test]
fn bounded_gct_enumeration_count() {
    // All generalized teams with at most three members over two binary
    // variables: C(48,0) + C(48,1) + C(48,2) + C(48,3) = 1 + 48 + 1128 + 17296.
    let sig = binary(&["A", "B"]);
    let teams = causal_teams::enumeration::enum_gcts_up_to_size(&sig, 3);
    assert_eq!(teams.len(), 18_473);
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for t in &teams {
        *by_size.entry(t.len()).or_default() += 1;
    }
    assert_eq!(by_size[&0], 1);
    assert_eq!(by_size[&1], 48);
    assert_eq!(by_size[&2], 1128);
    assert_eq!(by_size[&3], 17_296);
}
