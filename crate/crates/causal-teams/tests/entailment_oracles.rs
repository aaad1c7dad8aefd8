//! Entailment oracles: validities from no premises, reflexivity, agreement
//! of the two satisfaction relations on base-language queries, the global
//! disjunction property over generalized teams, genuineness of reported
//! counterexamples, and the budget ladder's exactness flags.

mod common;

use causal_teams::syntax::desugar_dep;
use rand::Rng;

use causal_teams::{
    entails_ct, entails_gct, equivalent, satisfies_ct, satisfies_gct, Counterexample, Formula,
    FormulaClass, Mode, Signature, UniverseBudget,
};
use common::{random_formula, rng};

fn two_binary() -> std::sync::Arc<Signature> {
    Signature::from_names(&[("A", &["0", "1"]), ("B", &["0", "1"])]).unwrap()
}

fn budget() -> UniverseBudget {
    UniverseBudget::default()
}

#[test]
fn validities_follow_from_no_premises() {
    let sig = two_binary();
    let b = budget();
    // Every variable takes some value; refuting either disjunction needs a
    // row outside the range.
    let defined = Formula::big_or((0..2).map(|x| Formula::Eq(0, x)).collect());
    let top = Formula::top();
    for phi in [defined, top] {
        let ct = entails_ct(&[], &phi, &sig, &b).unwrap();
        assert!(ct.holds && ct.exact, "{phi:?}");
        let gct = entails_gct(&[], &phi, &sig, &b).unwrap();
        assert!(gct.holds && gct.exact, "{phi:?}");
    }
    // A plain atom is not valid, and the refuting team is handed back.
    let atom = Formula::Eq(0, 0);
    let ct = entails_ct(&[], &atom, &sig, &b).unwrap();
    assert!(!ct.holds && ct.exact);
    match ct.counterexample.unwrap() {
        Counterexample::Ct(t) => assert!(!satisfies_ct(&t, &atom).unwrap()),
        Counterexample::Gct(_) => panic!("ct query answered with a gct"),
    }
    let gct = entails_gct(&[], &atom, &sig, &b).unwrap();
    assert!(!gct.holds && gct.exact);
    match gct.counterexample.unwrap() {
        Counterexample::Gct(t) => assert!(!satisfies_gct(&t, &atom).unwrap()),
        Counterexample::Ct(_) => panic!("gct query answered with a ct"),
    }
}

#[test]
fn entailment_is_reflexive() {
    let sig = two_binary();
    let b = budget();
    let mut r = rng(201);
    for case in 0..40 {
        let dialect = match case % 3 {
            0 => FormulaClass::Co,
            1 => FormulaClass::Cod,
            _ => FormulaClass::CoI,
        };
        let phi = random_formula(&mut r, &sig, 3, dialect);
        let delta = [phi.clone()];
        assert!(entails_ct(&delta, &phi, &sig, &b).unwrap().holds, "{phi:?}");
        assert!(entails_gct(&delta, &phi, &sig, &b).unwrap().holds, "{phi:?}");
    }
}

#[test]
fn base_language_entailment_agrees_across_modes() {
    // On the base language the two relations define the same consequences,
    // so the exact oracles must return identical verdicts.
    let sig = two_binary();
    let b = budget();
    let mut r = rng(202);
    let mut holds = 0;
    for _ in 0..100 {
        let delta = [random_formula(&mut r, &sig, 3, FormulaClass::Co)];
        let psi = random_formula(&mut r, &sig, 3, FormulaClass::Co);
        let ct = entails_ct(&delta, &psi, &sig, &b).unwrap();
        let gct = entails_gct(&delta, &psi, &sig, &b).unwrap();
        assert!(ct.exact && gct.exact);
        assert_eq!(ct.holds, gct.holds, "{delta:?} ⊨ {psi:?}");
        if ct.holds {
            holds += 1;
        }
    }
    assert!(holds > 5, "{holds}");
}

#[test]
fn gct_validity_has_the_disjunction_property() {
    // A valid global disjunction has a valid disjunct: the union of two
    // refuting generalized teams is again a generalized team, and downward
    // closure pushes the refutations through it.
    let sig = two_binary();
    let b = budget();
    let mut r = rng(203);
    let defined_or = |v: usize, sig: &Signature| {
        Formula::big_or((0..sig.range_size(v)).map(|x| Formula::Eq(v, x as u16)).collect())
    };
    let mut premises_hit = 0;
    for case in 0..150 {
        // Random pairs rarely make the premise true, so every fourth case
        // plants a valid disjunct.
        let phi = if case % 4 == 0 {
            defined_or(case % 2, &sig)
        } else {
            random_formula(&mut r, &sig, 2, FormulaClass::CoI)
        };
        let psi = random_formula(&mut r, &sig, 2, FormulaClass::CoI);
        let both = Formula::idisj(phi.clone(), psi.clone());
        if entails_gct(&[], &both, &sig, &b).unwrap().holds {
            premises_hit += 1;
            let left = entails_gct(&[], &phi, &sig, &b).unwrap().holds;
            let right = entails_gct(&[], &psi, &sig, &b).unwrap().holds;
            assert!(left || right, "⩒ valid with no valid disjunct: {both:?}");
        }
    }
    assert!(premises_hit >= 30, "{premises_hit}");
}

#[test]
fn counterexamples_satisfy_premises_and_refute_conclusions() {
    let sig = two_binary();
    let b = budget();
    let mut r = rng(204);
    let mut ct_refuted = 0;
    let mut gct_refuted = 0;
    for case in 0..150 {
        let dialect = match case % 3 {
            0 => FormulaClass::Co,
            1 => FormulaClass::Cod,
            _ => FormulaClass::CoI,
        };
        let delta = [
            random_formula(&mut r, &sig, 2, dialect),
            random_formula(&mut r, &sig, 2, dialect),
        ];
        let psi = random_formula(&mut r, &sig, 3, dialect);
        let ct = entails_ct(&delta, &psi, &sig, &b).unwrap();
        if !ct.holds {
            ct_refuted += 1;
            assert!(ct.exact);
            let Some(Counterexample::Ct(t)) = ct.counterexample else {
                panic!("refutation without a causal team witness");
            };
            assert!(delta.iter().all(|d| satisfies_ct(&t, d).unwrap()));
            assert!(!satisfies_ct(&t, &psi).unwrap());
        }
        let gct = entails_gct(&delta, &psi, &sig, &b).unwrap();
        if !gct.holds {
            gct_refuted += 1;
            assert!(gct.exact);
            let Some(Counterexample::Gct(t)) = gct.counterexample else {
                panic!("refutation without a generalized team witness");
            };
            assert!(delta.iter().all(|d| satisfies_gct(&t, d).unwrap()));
            assert!(!satisfies_gct(&t, &psi).unwrap());
        }
    }
    assert!(ct_refuted > 40 && gct_refuted > 40, "{ct_refuted} / {gct_refuted}");
}

#[test]
fn dependence_atoms_match_their_base_translations() {
    let sig = two_binary();
    let b = budget();
    // Constancy is the global disjunction of the values...
    let constancy = Formula::constancy(1);
    let spelled =
        Formula::big_idisj((0..2).map(|x| Formula::Eq(1, x)).collect());
    // ...and a dependence atom the global case split over argument values.
    let dep = Formula::dep(vec![0], 1);
    let translated = desugar_dep(&dep, &sig);
    for (lhs, rhs) in [(&constancy, &spelled), (&dep, &translated)] {
        for mode in [Mode::Ct, Mode::Gct] {
            let verdict = equivalent(lhs, rhs, &sig, mode, &b).unwrap();
            assert!(verdict.holds && verdict.exact, "{lhs:?} vs {rhs:?} ({mode:?})");
        }
    }
    // Sanity: constancy of B is not valid, so the equivalences are not
    // between validities.
    assert!(!entails_ct(&[], &constancy, &sig, &b).unwrap().holds);
}

#[test]
fn profile_reduction_matches_direct_enumeration() {
    // One variable, two values: the full member space has four points, so a
    // default budget enumerates it directly, while a budget of three forces
    // the reduction to representative components.  Verdicts must agree.
    let sig = Signature::from_names(&[("A", &["0", "1"])]).unwrap();
    let direct = budget();
    let reduced = UniverseBudget { max_sem_size: 3, ..budget() };
    let mut r = rng(205);
    let mut refuted = 0;
    for case in 0..80 {
        let dialect = match case % 3 {
            0 => FormulaClass::Co,
            1 => FormulaClass::Cod,
            _ => FormulaClass::CoI,
        };
        let delta = [random_formula(&mut r, &sig, 2, dialect)];
        let psi = random_formula(&mut r, &sig, 2, dialect);
        let a = entails_gct(&delta, &psi, &sig, &direct).unwrap();
        let b = entails_gct(&delta, &psi, &sig, &reduced).unwrap();
        assert!(a.exact && b.exact);
        assert_eq!(a.holds, b.holds, "{delta:?} ⊨ {psi:?}");
        if !a.holds {
            refuted += 1;
        }
    }
    assert!(refuted > 10, "{refuted}");
}

#[test]
fn sampling_marks_confirmations_inexact_and_refutations_exact() {
    // Twenty values for one variable put both the member space (40 points)
    // and the reduced base (20 rows for the single class) past the default
    // cap, so confirmations come from sampling.
    let values: Vec<String> = (0..20).map(|x| x.to_string()).collect();
    let sig = Signature::new(vec![("V".to_string(), values)]).unwrap();
    let b = UniverseBudget { sample_count: 200, ..budget() };
    let top = Formula::top();
    let ct = entails_ct(&[], &top, &sig, &b).unwrap();
    assert!(ct.holds && !ct.exact);
    let gct = entails_gct(&[], &top, &sig, &b).unwrap();
    assert!(gct.holds && !gct.exact);
    // A refutation found under sampling is still a real team.
    let atom = Formula::Eq(0, 0);
    let ct = entails_ct(&[], &atom, &sig, &b).unwrap();
    assert!(!ct.holds && ct.exact && ct.counterexample.is_some());
    let gct = entails_gct(&[], &atom, &sig, &b).unwrap();
    assert!(!gct.holds && gct.exact && gct.counterexample.is_some());
}

#[test]
fn base_entailment_reduces_to_uniform_gct_entailment() {
    // Entailment over causal teams is entailment over generalized teams
    // with the uniformity axiom added to the premises: uniform generalized
    // teams are exactly the causal teams in disguise.
    let mut r = rng(0xced);
    let b = budget();
    let one = Signature::from_names(&[("A", &["0", "1"])]).unwrap();
    let two = two_binary();
    let mut disagreements = 0usize;
    let mut held = 0usize;
    for (sig, rounds) in [(&one, 60), (&two, 40)] {
        let axiom = causal_teams::unf(sig);
        for _ in 0..rounds {
            let delta: Vec<Formula> = (0..r.gen_range(0..=2usize))
                .map(|_| random_formula(&mut r, sig, 2, FormulaClass::CoI))
                .collect();
            let psi = random_formula(&mut r, sig, 2, FormulaClass::CoI);
            let base = entails_ct(&delta, &psi, sig, &b).unwrap();
            let mut extended = delta.clone();
            extended.push(axiom.clone());
            let general = entails_gct(&extended, &psi, sig, &b).unwrap();
            assert!(base.exact && general.exact);
            disagreements += usize::from(base.holds != general.holds);
            held += usize::from(base.holds);
        }
    }
    assert_eq!(disagreements, 0);
    // The comparison only means something if both answers occur.
    assert!((20..=80).contains(&held), "{held} of 100 held");
}
