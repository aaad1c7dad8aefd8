//! Oracle tests for the characterization formulas: each formula's defining
//! semantic property is checked against direct enumeration — exhaustively
//! over the two-binary-variable signature, whose universes are small enough
//! to sweep, and by seeded sampling elsewhere.

mod common;

use causal_teams::{
    beta_dc, beta_en, chi_k, classify, define_downward_class, define_flat_class,
    enum_causal_teams, enum_function_components, enum_gcts_up_to_size, enum_sem, entails_ct,
    entails_gct, equivalent, fc_similar, leadsto, no_mix, one_fun, phi_f, satisfies_ct,
    satisfies_gct, theta_t, to_gct, unf, uniform, xi_star, xi_t, Assignment, CausalTeam,
    Dialect, Formula, FormulaClass, FunctionComponent, GeneralizedCausalTeam, Mode, ModelError,
    TeamClass, UniverseBudget,
};
use common::{
    example_signature, example_team, identity_fc, negation_fc, random_gct, rng, two_binary,
};

/// `Φ^F` holds in a generalized team iff every member component is similar
/// to `F`, and in a causal team iff it is empty or its component is; the
/// formula stays in the base language.
#[test]
fn phi_pins_the_similarity_class() {
    let sig = two_binary();
    let fcs = enum_function_components(&sig);
    let cts = enum_causal_teams(&sig);
    let gcts = enum_gcts_up_to_size(&sig, 2);
    let mut r = rng(0xC0F1);
    for f in &fcs {
        let phi = phi_f(f, &sig);
        assert_eq!(classify(&phi).unwrap(), FormulaClass::Co);
        for t in &cts {
            let expected = t.is_empty() || fc_similar(t.fc(), f, &sig);
            assert_eq!(satisfies_ct(t, &phi).unwrap(), expected, "{}", f.render(&sig));
        }
        for t in &gcts {
            let expected = t.members().iter().all(|(_, g)| fc_similar(g, f, &sig));
            assert_eq!(satisfies_gct(t, &phi).unwrap(), expected);
        }
        for _ in 0..20 {
            let t = random_gct(&mut r, &sig, 4);
            let expected = t.members().iter().all(|(_, g)| fc_similar(g, f, &sig));
            assert_eq!(satisfies_gct(&t, &phi).unwrap(), expected);
        }
    }
}

/// `Θ^T` holds in a team iff its rows are among `T`'s rows.
#[test]
fn theta_holds_exactly_on_subsets() {
    let sig = two_binary();
    let cts = enum_causal_teams(&sig);
    for t in &cts {
        let theta = theta_t(t.rows(), &sig);
        assert_eq!(classify(&theta).unwrap(), FormulaClass::Co);
        for s in &cts {
            let expected = s.rows().iter().all(|row| t.rows().contains(row));
            assert_eq!(satisfies_ct(s, &theta).unwrap(), expected);
        }
    }
    // Independent of the function components: also check in generalized
    // teams, whose members may mix classes.
    let gcts = enum_gcts_up_to_size(&sig, 2);
    let probe = &cts[cts.len() / 2];
    let theta = theta_t(probe.rows(), &sig);
    for s in &gcts {
        let expected = s
            .members()
            .iter()
            .all(|(row, _)| probe.rows().contains(row));
        assert_eq!(satisfies_gct(s, &theta).unwrap(), expected);
    }
}

/// `Θ^{T⁻} ∧ Φ^F` holds in a causal team `S` iff `S` is empty or `S⁻ ⊆ T⁻`
/// and the component of `S` is similar to `F` — i.e. iff some `≈`-copy of a
/// subteam-sized fragment of `T` equals `S`.
#[test]
fn theta_and_phi_capture_equivalent_subteams() {
    let sig = two_binary();
    let cts = enum_causal_teams(&sig);
    for t in &cts {
        let pin = Formula::and(theta_t(t.rows(), &sig), phi_f(&t.fc().core(&sig), &sig));
        for s in &cts {
            let expected = s.is_empty()
                || (s.rows().iter().all(|row| t.rows().contains(row))
                    && fc_similar(s.fc(), t.fc(), &sig));
            assert_eq!(satisfies_ct(s, &pin).unwrap(), expected);
        }
    }
}

/// `χ_k` holds in a causal team iff it has at most `k` rows, in either
/// dialect, and the two dialects are equivalent.
#[test]
fn chi_bounds_team_cardinality() {
    let sig = two_binary();
    let cts = enum_causal_teams(&sig);
    for k in 0..=4 {
        for dialect in [Dialect::Cod, Dialect::CoI] {
            let chi = chi_k(k, &sig, dialect);
            if k > 0 {
                let expected_class = match dialect {
                    Dialect::Cod => FormulaClass::Cod,
                    Dialect::CoI => FormulaClass::CoI,
                };
                assert_eq!(classify(&chi).unwrap(), expected_class);
            }
            for t in &cts {
                assert_eq!(satisfies_ct(t, &chi).unwrap(), t.len() <= k, "k={k}");
            }
        }
        let budget = UniverseBudget::default();
        let cod = chi_k(k, &sig, Dialect::Cod);
        let coi = chi_k(k, &sig, Dialect::CoI);
        for mode in [Mode::Ct, Mode::Gct] {
            let verdict = equivalent(&cod, &coi, &sig, mode, &budget).unwrap();
            assert!(verdict.holds && verdict.exact, "k={k} {mode:?}");
        }
    }
}

/// `Ξ^T` holds in a causal team `S` iff no `≈`-copy of `T` is a subteam of
/// `S`, i.e. iff `T⁻ ⊈ S⁻` or the components are dissimilar; the empty team
/// is rejected.
#[test]
fn xi_excludes_exactly_the_embeddings() {
    let sig = two_binary();
    let cts = enum_causal_teams(&sig);
    for dialect in [Dialect::Cod, Dialect::CoI] {
        for t in cts.iter().filter(|t| !t.is_empty()) {
            let xi = xi_t(t, dialect).unwrap();
            for s in &cts {
                let embeds = t.rows().iter().all(|row| s.rows().contains(row))
                    && fc_similar(s.fc(), t.fc(), &sig);
                assert_eq!(satisfies_ct(s, &xi).unwrap(), !embeds);
            }
            // In particular a team never satisfies its own exclusion formula.
            assert!(!satisfies_ct(t, &xi).unwrap());
        }
    }
    let empty = CausalTeam::empty(sig.clone(), enum_function_components(&sig)[0].clone());
    assert!(xi_t(&empty, Dialect::Cod).is_err());
    // A singleton's exclusion formula has `χ₀ = ⊥` and stays in the base
    // language; from two rows on the cardinality bound brings in the
    // dialect's constancy rendering.
    let singleton = cts.iter().find(|t| t.len() == 1).unwrap();
    let pair = cts.iter().find(|t| t.len() == 2).unwrap();
    assert_eq!(
        classify(&xi_t(singleton, Dialect::Cod).unwrap()).unwrap(),
        FormulaClass::Co
    );
    assert_eq!(
        classify(&xi_t(pair, Dialect::Cod).unwrap()).unwrap(),
        FormulaClass::Cod
    );
    assert_eq!(
        classify(&xi_t(pair, Dialect::CoI).unwrap()).unwrap(),
        FormulaClass::CoI
    );
}

/// The generalized-team variant: `U ⊨ Ξ_*^T` iff the `≈`-profile of `T` is
/// not contained in the profile of `U`.
#[test]
fn xi_star_excludes_exactly_the_profile_extensions() {
    let sig = two_binary();
    let probes = enum_gcts_up_to_size(&sig, 2);
    let mut r = rng(0x51A5);
    let mut subjects: Vec<GeneralizedCausalTeam> = probes
        .iter()
        .filter(|t| !t.is_empty())
        .step_by(23)
        .cloned()
        .collect();
    for _ in 0..15 {
        let t = random_gct(&mut r, &sig, 3);
        if !t.is_empty() {
            subjects.push(t);
        }
    }
    let profile_contained = |t: &GeneralizedCausalTeam, u: &GeneralizedCausalTeam| {
        let up = u.profile();
        t.profile().iter().all(|(core, rows)| {
            up.get(core)
                .is_some_and(|urows| rows.iter().all(|row| urows.contains(row)))
        })
    };
    for t in &subjects {
        let xi = xi_star(t, Dialect::Cod).unwrap();
        for u in &probes {
            assert_eq!(
                satisfies_gct(u, &xi).unwrap(),
                !profile_contained(t, u),
                "t={t:?} u={u:?}"
            );
        }
        assert!(!satisfies_gct(t, &xi).unwrap());
    }
    // The dialects agree.
    for t in subjects.iter().take(6) {
        let cod = xi_star(t, Dialect::Cod).unwrap();
        let coi = xi_star(t, Dialect::CoI).unwrap();
        for u in probes.iter().step_by(7) {
            assert_eq!(
                satisfies_gct(u, &cod).unwrap(),
                satisfies_gct(u, &coi).unwrap()
            );
        }
    }
    assert!(xi_star(&GeneralizedCausalTeam::empty(sig), Dialect::Cod).is_err());
}

/// `Unf` holds in a generalized team iff the team is uniform; every causal
/// team (viewed either way) is.
#[test]
fn unf_detects_uniformity() {
    let sig = two_binary();
    let formula = unf(&sig);
    assert_eq!(classify(&formula).unwrap(), FormulaClass::CoI);
    for t in &enum_gcts_up_to_size(&sig, 2) {
        assert_eq!(satisfies_gct(t, &formula).unwrap(), uniform(t));
    }
    let mut r = rng(0x0F17);
    for _ in 0..300 {
        let t = random_gct(&mut r, &sig, 4);
        assert_eq!(satisfies_gct(&t, &formula).unwrap(), uniform(&t));
    }
    for t in &enum_causal_teams(&sig) {
        assert!(satisfies_ct(t, &formula).unwrap());
        assert!(satisfies_gct(&to_gct(t), &formula).unwrap());
    }
}

/// In a singleton team, `β_DC(X, V)` detects a direct influence of `X` on
/// `V` and `β_En(V)` a non-constant mechanism for `V` — exhaustively over
/// `Sem_σ`, and on the worked example.
#[test]
fn beta_formulas_detect_direct_influence() {
    let sig = two_binary();
    for (row, f) in enum_sem(&sig) {
        for v in sig.vars() {
            let singleton = CausalTeam::new(sig.clone(), f.clone(), vec![row.clone()]).unwrap();
            let expected = f.proper_en_mask() & (1 << v) != 0;
            assert_eq!(
                satisfies_ct(&singleton, &beta_en(v, &sig)).unwrap(),
                expected,
                "{} at {}",
                f.render(&sig),
                sig.var_name(v)
            );
        }
    }

    // Worked example: Y := X, Z := f(U, X, Y), U and X upstream.
    let ex = example_signature();
    let team = example_team();
    let (u, x, y, z) = (0, 1, 2, 3);
    for row in team.rows() {
        let singleton =
            CausalTeam::new(ex.clone(), team.fc().clone(), vec![row.clone()]).unwrap();
        assert!(satisfies_ct(&singleton, &beta_dc(x, y, &ex).unwrap()).unwrap());
        assert!(satisfies_ct(&singleton, &beta_dc(u, x, &ex).unwrap()).unwrap());
        assert!(!satisfies_ct(&singleton, &beta_dc(z, u, &ex).unwrap()).unwrap());
        assert!(!satisfies_ct(&singleton, &beta_en(u, &ex)).unwrap());
        for endo in [x, y, z] {
            assert!(satisfies_ct(&singleton, &beta_en(endo, &ex)).unwrap());
        }
    }
    assert!(beta_dc(x, x, &ex).is_err());
    assert_eq!(classify(&beta_en(z, &ex)).unwrap(), FormulaClass::Co);
}

/// `1Fun ∧ NoMix` holds in a generalized team iff the team is uniform, and
/// neither conjunct suffices alone.
#[test]
fn one_fun_and_no_mix_axiomatize_uniformity() {
    let sig = two_binary();
    let one = one_fun(&sig);
    let mix = no_mix(&sig);
    assert_eq!(classify(&one).unwrap(), FormulaClass::Cod);
    assert_eq!(classify(&mix).unwrap(), FormulaClass::Cod);
    let check = |t: &GeneralizedCausalTeam| {
        let both = satisfies_gct(t, &one).unwrap() && satisfies_gct(t, &mix).unwrap();
        assert_eq!(both, uniform(t), "{t:?}");
    };
    for t in &enum_gcts_up_to_size(&sig, 2) {
        check(t);
    }
    let mut r = rng(0x1F0F);
    for _ in 0..200 {
        check(&random_gct(&mut r, &sig, 4));
    }

    // Mixing an endogenous-B member with an exogenous member violates only
    // NoMix; mixing two disagreeing mechanisms for B violates only 1Fun.
    let (a, b) = (0, 1);
    let row = |va: u16, vb: u16| Assignment::new(&sig, vec![va, vb]).unwrap();
    let id = identity_fc(&sig, a, b);
    let exo = FunctionComponent::exogenous(&sig);
    let mixed = GeneralizedCausalTeam::new(
        sig.clone(),
        vec![(row(0, 0), id.clone()), (row(1, 0), exo)],
    )
    .unwrap();
    assert!(satisfies_gct(&mixed, &one).unwrap());
    assert!(!satisfies_gct(&mixed, &mix).unwrap());
    let disagreeing = GeneralizedCausalTeam::new(
        sig.clone(),
        vec![(row(0, 0), id), (row(0, 1), negation_fc(&sig, a, b))],
    )
    .unwrap();
    assert!(!satisfies_gct(&disagreeing, &one).unwrap());
    assert!(satisfies_gct(&disagreeing, &mix).unwrap());
}

/// `X ⤳ Y` finds an intervention context in which `X` matters for `Y`.
#[test]
fn leadsto_detects_causal_influence() {
    let ex = example_signature();
    let team = example_team();
    let (u, x, y, z) = (0, 1, 2, 3);
    assert!(satisfies_ct(&team, &leadsto(x, y, &ex).unwrap()).unwrap());
    assert!(satisfies_ct(&team, &leadsto(u, z, &ex).unwrap()).unwrap());
    assert!(!satisfies_ct(&team, &leadsto(y, x, &ex).unwrap()).unwrap());
    assert!(!satisfies_ct(&team, &leadsto(z, u, &ex).unwrap()).unwrap());
    assert!(leadsto(x, x, &ex).is_err());
    assert_eq!(classify(&leadsto(x, y, &ex).unwrap()).unwrap(), FormulaClass::Co);

    // With every variable exogenous nothing leads to anything.
    let exo_team = CausalTeam::new(
        ex.clone(),
        FunctionComponent::exogenous(&ex),
        team.rows().to_vec(),
    )
    .unwrap();
    for from in ex.vars() {
        for to in ex.vars().filter(|t| *t != from) {
            assert!(!satisfies_ct(&exo_team, &leadsto(from, to, &ex).unwrap()).unwrap());
        }
    }
}

/// The flat-class construction: the defined formula's causal-team models are
/// exactly the class, checked over all of `ℂσ`.
#[test]
fn flat_class_definition_is_exact() {
    let sig = two_binary();
    let cts = enum_causal_teams(&sig);

    // The class of all teams.
    let top = TeamClass::new(sig.clone(), cts.iter().cloned()).unwrap();
    let phi = define_flat_class(&top).unwrap();
    assert_eq!(classify(&phi).unwrap(), FormulaClass::Co);
    for t in &cts {
        assert!(satisfies_ct(t, &phi).unwrap());
    }

    // The flat saturation of one two-row team.
    let (a, b) = (0, 1);
    let row = |va: u16, vb: u16| Assignment::new(&sig, vec![va, vb]).unwrap();
    let seed = CausalTeam::new(
        sig.clone(),
        identity_fc(&sig, a, b),
        vec![row(0, 0), row(1, 1)],
    )
    .unwrap();
    let class = TeamClass::new(sig.clone(), [seed.clone()])
        .unwrap()
        .saturate_flat();
    let phi = define_flat_class(&class).unwrap();
    for t in &cts {
        assert_eq!(satisfies_ct(t, &phi).unwrap(), class.contains(t), "{t:?}");
    }
}

/// The flat-class preconditions are enforced, each with a witness.
#[test]
fn flat_class_preconditions_are_checked() {
    let sig = two_binary();
    let all_fcs = enum_function_components(&sig);
    let empties: Vec<CausalTeam> = all_fcs
        .iter()
        .map(|f| CausalTeam::empty(sig.clone(), f.clone()))
        .collect();
    let (a, b) = (0, 1);
    let row = |va: u16, vb: u16| Assignment::new(&sig, vec![va, vb]).unwrap();
    let seed = CausalTeam::new(
        sig.clone(),
        identity_fc(&sig, a, b),
        vec![row(0, 0), row(1, 1)],
    )
    .unwrap();

    let empty_class = TeamClass::new(sig.clone(), []).unwrap();
    assert_eq!(
        define_flat_class(&empty_class).unwrap_err(),
        ModelError::EmptyClass
    );

    let no_empties = TeamClass::new(sig.clone(), [seed.clone()]).unwrap();
    let property = |e: ModelError| match e {
        ModelError::ClassNotClosed { property, .. } => property,
        other => panic!("expected a closure failure, got {other}"),
    };
    assert_eq!(
        property(define_flat_class(&no_empties).unwrap_err()),
        "inclusive of all empty teams"
    );

    let not_downward = TeamClass::new(
        sig.clone(),
        empties.iter().cloned().chain([seed.clone()]),
    )
    .unwrap();
    assert_eq!(
        property(define_flat_class(&not_downward).unwrap_err()),
        "downward closed"
    );

    // Two core-seated singletons whose union is missing.
    let id = identity_fc(&sig, a, b);
    let not_union = TeamClass::new(
        sig.clone(),
        empties.iter().cloned().chain([
            CausalTeam::new(sig.clone(), id.clone(), vec![row(0, 0)]).unwrap(),
            CausalTeam::new(sig.clone(), id, vec![row(1, 1)]).unwrap(),
        ]),
    )
    .unwrap();
    assert_eq!(
        property(define_flat_class(&not_union).unwrap_err()),
        "union closed"
    );

    // A core-seated singleton (unions cannot leave the core) missing an
    // `≈`-copy over a constant-mechanism component.
    let not_equiv = TeamClass::new(
        sig.clone(),
        empties.iter().cloned().chain([CausalTeam::new(
            sig.clone(),
            FunctionComponent::exogenous(&sig),
            vec![row(0, 0)],
        )
        .unwrap()]),
    )
    .unwrap();
    assert_eq!(
        property(define_flat_class(&not_equiv).unwrap_err()),
        "closed under ≈"
    );
}

/// The downward-class construction: the defined formula's causal-team models
/// are exactly the class, checked over all of `ℂσ`.
#[test]
fn downward_class_definition_is_exact() {
    let sig = two_binary();
    let cts = enum_causal_teams(&sig);
    let (a, b) = (0, 1);
    let row = |va: u16, vb: u16| Assignment::new(&sig, vec![va, vb]).unwrap();

    // The downward saturation of one two-row team.  It is not union closed
    // (the seed's two singleton fragments reunite to the seed, but e.g. the
    // two-row exogenous fragments do not), so the flat construction does not
    // apply, while the downward one does.
    let seed = CausalTeam::new(
        sig.clone(),
        identity_fc(&sig, a, b),
        vec![row(0, 0), row(1, 1)],
    )
    .unwrap();
    let class = TeamClass::new(sig.clone(), [seed])
        .unwrap()
        .saturate_downward();
    let phi = define_downward_class(&class).unwrap();
    assert_eq!(classify(&phi).unwrap(), FormulaClass::Cod);
    for t in &cts {
        assert_eq!(satisfies_ct(t, &phi).unwrap(), class.contains(t), "{t:?}");
    }

    // The class of exactly the empty teams.
    let empties = TeamClass::new(
        sig.clone(),
        enum_function_components(&sig)
            .iter()
            .map(|f| CausalTeam::empty(sig.clone(), f.clone())),
    )
    .unwrap();
    let phi = define_downward_class(&empties).unwrap();
    for t in &cts {
        assert_eq!(satisfies_ct(t, &phi).unwrap(), t.is_empty());
    }
}

/// The downward-class preconditions are enforced, each with a witness.
#[test]
fn downward_class_preconditions_are_checked() {
    let sig = two_binary();
    let all_fcs = enum_function_components(&sig);
    let empties: Vec<CausalTeam> = all_fcs
        .iter()
        .map(|f| CausalTeam::empty(sig.clone(), f.clone()))
        .collect();
    let (a, b) = (0, 1);
    let row = |va: u16, vb: u16| Assignment::new(&sig, vec![va, vb]).unwrap();
    let property = |e: ModelError| match e {
        ModelError::ClassNotClosed { property, .. } => property,
        other => panic!("expected a closure failure, got {other}"),
    };

    let seed = CausalTeam::new(
        sig.clone(),
        identity_fc(&sig, a, b),
        vec![row(0, 0), row(1, 1)],
    )
    .unwrap();
    assert_eq!(
        define_downward_class(&TeamClass::new(sig.clone(), []).unwrap()).unwrap_err(),
        ModelError::EmptyClass
    );
    assert_eq!(
        property(
            define_downward_class(&TeamClass::new(sig.clone(), [seed.clone()]).unwrap())
                .unwrap_err()
        ),
        "inclusive of all empty teams"
    );
    assert_eq!(
        property(
            define_downward_class(
                &TeamClass::new(sig.clone(), empties.iter().cloned().chain([seed])).unwrap()
            )
            .unwrap_err()
        ),
        "downward closed"
    );
    // Downward closed but missing the exogenous `≈`-copy of a singleton
    // seated on a constant-mechanism component.
    let constant_seated = CausalTeam::new(
        sig.clone(),
        FunctionComponent::from_entries(
            &sig,
            vec![(a, causal_teams::Mechanism::constant(0))],
        )
        .unwrap(),
        vec![row(0, 0)],
    )
    .unwrap();
    assert_eq!(
        property(
            define_downward_class(
                &TeamClass::new(sig.clone(), empties.iter().cloned().chain([constant_seated]))
                    .unwrap()
            )
            .unwrap_err()
        ),
        "closed under ≈"
    );
}

/// Over causal teams, validity does not distribute over `⩒`: the uniformity
/// disjunction is valid while none of its disjuncts is.  (Over generalized
/// teams validity does distribute — see the entailment suite.)
#[test]
fn ct_validity_lacks_the_disjunction_property() {
    let sig = two_binary();
    let budget = UniverseBudget::default();
    let whole = entails_ct(&[], &unf(&sig), &sig, &budget).unwrap();
    assert!(whole.holds && whole.exact);
    // Over generalized teams the same formula is not even valid.
    let gct = entails_gct(&[], &unf(&sig), &sig, &budget).unwrap();
    assert!(!gct.holds && gct.exact);
    for f in causal_teams::representatives(&sig) {
        let part = entails_ct(&[], &phi_f(&f, &sig), &sig, &budget).unwrap();
        assert!(!part.holds && part.exact, "{}", f.render(&sig));
        assert!(part.counterexample.is_some());
    }
}

/// Equal inputs produce byte-identical formulas.
#[test]
fn constructions_are_deterministic() {
    let sig = two_binary();
    let team = enum_causal_teams(&sig)
        .into_iter()
        .find(|t| t.len() == 2)
        .unwrap();
    let class = TeamClass::new(sig.clone(), [team.clone()])
        .unwrap()
        .saturate_flat();
    let builds = || {
        vec![
            causal_teams::render(&unf(&sig), &sig),
            causal_teams::render(&no_mix(&sig), &sig),
            causal_teams::render(&one_fun(&sig), &sig),
            causal_teams::render(&xi_t(&team, Dialect::Cod).unwrap(), &sig),
            causal_teams::render(&define_flat_class(&class).unwrap(), &sig),
        ]
    };
    assert_eq!(builds(), builds());
}

/// The leadsto disjunction mentions the empty intervention context: over a
/// signature with no third variable the bare conjunction of counterfactuals
/// still appears.
#[test]
fn leadsto_covers_the_empty_context() {
    let sig = two_binary();
    let (a, b) = (0, 1);
    let formula = leadsto(a, b, &sig).unwrap();
    let team = CausalTeam::new(
        sig.clone(),
        identity_fc(&sig, a, b),
        vec![Assignment::new(&sig, vec![0, 0]).unwrap()],
    )
    .unwrap();
    assert!(satisfies_ct(&team, &formula).unwrap());
    assert!(!satisfies_ct(&team, &leadsto(b, a, &sig).unwrap()).unwrap());
}
