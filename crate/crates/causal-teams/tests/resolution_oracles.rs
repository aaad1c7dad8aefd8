//! Resolution oracles: frozen resolution sets for small formulas, the
//! base-language shape of every member, the defining equivalence
//! `φ ⟚ ⩒R(φ)` in both semantics, entailment of the whole by each member,
//! and the premise restriction in the disjunction-property argument.

mod common;

use causal_teams::syntax::desugar_dep;
use causal_teams::{
    entails_gct, equivalent, parse, resolution_disjunction, resolutions, satisfies_ct,
    satisfies_gct, unf, Formula, FormulaClass, Mode, Signature, UniverseBudget,
};
use common::{example_signature, random_ct, random_formula, random_gct, rng, two_binary};

fn one_binary() -> std::sync::Arc<Signature> {
    Signature::from_names(&[("A", &["0", "1"])]).unwrap()
}

fn budget() -> UniverseBudget {
    UniverseBudget::default()
}

fn classify(phi: &Formula) -> FormulaClass {
    causal_teams::classify(phi).unwrap()
}

#[test]
fn frozen_resolution_sets() {
    // A base-language atom resolves to itself alone.
    let sig = example_signature();
    let atom = parse("X=1", &sig).unwrap();
    let r = resolutions(&atom).unwrap();
    assert_eq!(r.members(), std::slice::from_ref(&atom));
    assert_eq!(r.len(), 1);
    assert!(!r.is_empty());
    assert!(r.contains(&atom));

    // A global disjunction of atoms resolves to the two atoms.
    let two = two_binary();
    let phi = parse("A=0 \\\\/ A=1", &two).unwrap();
    let r = resolutions(&phi).unwrap();
    let expected = vec![parse("A=0", &two).unwrap(), parse("A=1", &two).unwrap()];
    assert_eq!(r.members(), expected.as_slice());

    // A counterfactual distributes into its consequent's resolutions.
    let phi = parse("X=1 -> (Y=1 \\\\/ Y=2)", &sig).unwrap();
    let r = resolutions(&phi).unwrap();
    let expected = vec![
        parse("X=1 -> Y=1", &sig).unwrap(),
        parse("X=1 -> Y=2", &sig).unwrap(),
    ];
    let mut sorted = expected.clone();
    sorted.sort();
    assert_eq!(r.members(), sorted.as_slice());
    assert!(r.contains(&expected[0]) && r.contains(&expected[1]));
}

#[test]
fn members_are_base_language_and_duplicate_free() {
    let mut rng = rng(0x5e01);
    for sigs in [two_binary(), example_signature()] {
        for _ in 0..150 {
            let phi = random_formula(&mut rng, &sigs, 3, FormulaClass::CoI);
            let r = resolutions(&phi).unwrap();
            assert!(!r.is_empty(), "resolution sets are never empty");
            for gamma in r.members() {
                assert_eq!(
                    classify(gamma),
                    FormulaClass::Co,
                    "non-base resolution {} of {}",
                    causal_teams::render(gamma, &sigs),
                    causal_teams::render(&phi, &sigs),
                );
            }
            let mut dedup = r.members().to_vec();
            dedup.dedup();
            assert_eq!(dedup.len(), r.len(), "members are strictly increasing");
        }
    }
}

#[test]
fn base_formulas_resolve_to_themselves() {
    let mut rng = rng(0x5e02);
    let sig = two_binary();
    for _ in 0..200 {
        let phi = random_formula(&mut rng, &sig, 3, FormulaClass::Co);
        let r = resolutions(&phi).unwrap();
        assert_eq!(r.members(), std::slice::from_ref(&phi));
        // …and the resolution disjunction of a singleton is the member bare.
        assert_eq!(resolution_disjunction(&phi).unwrap(), phi);
    }
}

#[test]
fn each_resolution_entails_the_formula() {
    let mut rng = rng(0x5e03);
    let b = budget();
    let small = one_binary();
    let two = two_binary();
    let mut multi = 0usize;
    for (sig, rounds, depth) in [(&small, 180, 3), (&two, 15, 2)] {
        for _ in 0..rounds {
            let phi = random_formula(&mut rng, sig, depth, FormulaClass::CoI);
            let r = resolutions(&phi).unwrap();
            multi += usize::from(r.len() > 1);
            for gamma in r.members() {
                let v = entails_gct(std::slice::from_ref(gamma), &phi, sig, &b).unwrap();
                assert!(v.exact);
                assert!(
                    v.holds,
                    "{} does not entail {}",
                    causal_teams::render(gamma, sig),
                    causal_teams::render(&phi, sig),
                );
            }
        }
    }
    assert!(multi >= 20, "only {multi} formulas had more than one resolution");
}

#[test]
fn formula_is_equivalent_to_its_resolution_disjunction() {
    let mut rng = rng(0x5e04);
    let b = budget();
    let small = one_binary();
    let two = two_binary();

    // Exact two-sided entailment in both semantics.
    for (sig, rounds, depth) in [(&small, 100, 3), (&two, 15, 2)] {
        for _ in 0..rounds {
            let phi = random_formula(&mut rng, sig, depth, FormulaClass::CoI);
            let rd = resolution_disjunction(&phi).unwrap();
            for mode in [Mode::Ct, Mode::Gct] {
                let v = equivalent(&phi, &rd, sig, mode, &b).unwrap();
                assert!(
                    v.holds && v.exact,
                    "{} not equivalent to {} ({mode:?})",
                    causal_teams::render(&phi, sig),
                    causal_teams::render(&rd, sig),
                );
            }
        }
    }

    // Pointwise agreement on random teams of both kinds.
    for _ in 0..250 {
        let phi = random_formula(&mut rng, &two, 3, FormulaClass::CoI);
        let rd = resolution_disjunction(&phi).unwrap();
        let t = random_ct(&mut rng, &two, 4);
        assert_eq!(
            satisfies_ct(&t, &phi).unwrap(),
            satisfies_ct(&t, &rd).unwrap()
        );
        let g = random_gct(&mut rng, &two, 3);
        assert_eq!(
            satisfies_gct(&g, &phi).unwrap(),
            satisfies_gct(&g, &rd).unwrap()
        );
    }
}

#[test]
fn uniformity_axiom_resolves_by_similarity_class() {
    // The uniformity axiom globally disjoins one description per function
    // component, but similar components share a description verbatim, so
    // the resolution set collapses to one member per similarity class:
    // five on two binary variables.
    let sig = two_binary();
    let u = unf(&sig);
    let r = resolutions(&u).unwrap();
    assert_eq!(r.len(), 5);
    let rd = resolution_disjunction(&u).unwrap();
    let b = budget();
    for mode in [Mode::Ct, Mode::Gct] {
        let v = equivalent(&u, &rd, &sig, mode, &b).unwrap();
        assert!(v.holds && v.exact);
    }
}

#[test]
fn flat_premises_entail_some_resolution_of_their_consequences() {
    // For a base-language premise, entailment of a formula passes to
    // entailment of one of its resolutions: the premise's satisfying class
    // is closed under unions and subteams, so distinct escapes into
    // different resolutions would recombine into a team escaping them all.
    let mut rng = rng(0x5e05);
    let b = budget();
    let sig = one_binary();
    let a0 = Formula::Eq(0, 0);
    let a1 = Formula::Eq(0, 1);

    let mut checked = 0usize;
    let mut nontrivial = 0usize;
    let mut pairs: Vec<(Formula, Formula)> = vec![
        (a0.clone(), Formula::idisj(a0.clone(), a1.clone())),
        (Formula::Bot, Formula::idisj(a0.clone(), a1.clone())),
    ];
    for _ in 0..600 {
        pairs.push((
            random_formula(&mut rng, &sig, 2, FormulaClass::Co),
            random_formula(&mut rng, &sig, 3, FormulaClass::CoI),
        ));
    }
    for (phi, psi) in &pairs {
        let v = entails_gct(std::slice::from_ref(phi), psi, &sig, &b).unwrap();
        assert!(v.exact);
        if !v.holds {
            continue;
        }
        checked += 1;
        let r = resolutions(psi).unwrap();
        nontrivial += usize::from(r.len() > 1);
        let some = r.members().iter().any(|alpha| {
            entails_gct(std::slice::from_ref(phi), alpha, &sig, &b)
                .unwrap()
                .holds
        });
        assert!(
            some,
            "{} entails {} but none of its resolutions",
            causal_teams::render(phi, &sig),
            causal_teams::render(psi, &sig),
        );
    }
    assert!(checked >= 40, "only {checked} entailed pairs");
    assert!(nontrivial >= 8, "only {nontrivial} with a choice to make");

    // The restriction to base-language premises is essential: a global
    // disjunction entails itself, yet neither of its resolutions follows,
    // because a team can split between them.
    let psi = Formula::idisj(a0.clone(), a1.clone());
    assert!(entails_gct(std::slice::from_ref(&psi), &psi, &sig, &b).unwrap().holds);
    for alpha in [&a0, &a1] {
        let v = entails_gct(std::slice::from_ref(&psi), alpha, &sig, &b).unwrap();
        assert!(v.exact && !v.holds);
    }
}

#[test]
fn dependence_atoms_are_rejected() {
    let sig = two_binary();
    let plain = Formula::dep(vec![0], 1);
    let e = resolutions(&plain).unwrap_err();
    assert!(e.to_string().contains("desugar"), "unhelpful error: {e}");

    // …even buried under other connectives.
    let nested = Formula::and(Formula::Eq(0, 0), Formula::constancy(1));
    assert!(resolutions(&nested).is_err());
    assert!(resolution_disjunction(&nested).is_err());

    // The advertised way out: translate the atom away, then resolve.  The
    // translation is equivalent over generalized teams, and so is its
    // resolution disjunction.
    let b = budget();
    let translated = desugar_dep(&plain, &sig);
    let rd = resolution_disjunction(&translated).unwrap();
    let v = equivalent(&plain, &rd, &sig, Mode::Gct, &b).unwrap();
    assert!(v.holds && v.exact);
}
