//! Frozen parses, classification, desugaring, and print/parse round-trips.

mod common;

use causal_teams::syntax::{classify, desugar, desugar_dep, parse, render, validate};
use causal_teams::{EquationSeq, Formula, FormulaClass, IllFormed, Signature};
use common::{example_signature, random_formula, rng};

fn p(text: &str) -> Formula {
    parse(text, &example_signature()).unwrap()
}

#[test]
fn frozen_parses() {
    // Variable indices: U=0, X=1, Y=2, Z=3; Y's values "1","2" are 0,1.
    assert_eq!(
        p("X=1 -> Y=2"),
        Formula::cf(EquationSeq::new(vec![(1, 1)]).unwrap(), Formula::Eq(2, 1))
    );
    assert_eq!(
        p("Y!=2 \\/ Y=2"),
        Formula::or(Formula::neg(Formula::Eq(2, 1)), Formula::Eq(2, 1))
    );
    assert_eq!(p("=(Y;Z)"), Formula::dep(vec![2], 3));
    assert_eq!(p("=(Y)"), Formula::constancy(2));
    assert_eq!(p("=(U,X;Z)"), Formula::dep(vec![0, 1], 3));
    assert_eq!(p("_|_"), Formula::Bot);
    assert_eq!(p("!_|_"), Formula::top());
    assert_eq!(
        p("Y!=2 \\\\/ Y=2"),
        Formula::idisj(Formula::neg(Formula::Eq(2, 1)), Formula::Eq(2, 1))
    );
}

#[test]
fn precedence_and_associativity() {
    // -> binds loosest and is right-associative, with its left side coerced
    // to an equation sequence.
    assert_eq!(
        p("X=1 /\\ U=0 -> Y=2"),
        Formula::cf(EquationSeq::new(vec![(1, 1), (0, 0)]).unwrap(), Formula::Eq(2, 1))
    );
    assert_eq!(
        p("X=1 -> U=0 -> Y=2"),
        Formula::cf(
            EquationSeq::new(vec![(1, 1)]).unwrap(),
            Formula::cf(EquationSeq::new(vec![(0, 0)]).unwrap(), Formula::Eq(2, 1)),
        )
    );
    // Repeats in the antecedent are kept, in order.
    assert_eq!(
        p("X=1 /\\ X=1 -> Y=2"),
        Formula::cf(EquationSeq::new(vec![(1, 1), (1, 1)]).unwrap(), Formula::Eq(2, 1))
    );
    // /\ binds tighter than \/, which binds tighter than \\/ and =>.
    assert_eq!(
        p("U=0 \\/ U=1 /\\ X=0"),
        Formula::or(Formula::Eq(0, 0), Formula::and(Formula::Eq(0, 1), Formula::Eq(1, 0)))
    );
    assert_eq!(
        p("U=0 \\/ U=1 \\\\/ X=0"),
        Formula::idisj(Formula::or(Formula::Eq(0, 0), Formula::Eq(0, 1)), Formula::Eq(1, 0))
    );
    assert_eq!(
        p("U=0 => X=0 \\/ X=1"),
        Formula::selimp(Formula::Eq(0, 0), Formula::or(Formula::Eq(1, 0), Formula::Eq(1, 1)))
    );
    // Binary connectives associate right; parens force the other grouping.
    assert_eq!(
        p("U=0 /\\ U=1 /\\ X=0"),
        Formula::and(Formula::Eq(0, 0), Formula::and(Formula::Eq(0, 1), Formula::Eq(1, 0)))
    );
    assert_eq!(
        p("(U=0 /\\ U=1) /\\ X=0"),
        Formula::and(Formula::and(Formula::Eq(0, 0), Formula::Eq(0, 1)), Formula::Eq(1, 0))
    );
    // ! binds tightest and nests.
    assert_eq!(
        p("!X=1 /\\ Y=2"),
        Formula::and(Formula::neg(Formula::Eq(1, 1)), Formula::Eq(2, 1))
    );
    assert_eq!(p("!(X!=1)"), Formula::neg(Formula::neg(Formula::Eq(1, 1))));
}

#[test]
fn parse_errors_carry_positions() {
    let sig = example_signature();
    let e = parse("W=1", &sig).unwrap_err();
    assert_eq!(e.pos, 0);
    assert!(e.msg.contains("unknown variable"));

    let e = parse("Y=7", &sig).unwrap_err();
    assert_eq!(e.pos, 2);
    assert!(e.msg.contains("range"));

    let e = parse("X=1 -> Y=2 /\\", &sig).unwrap_err();
    assert_eq!(e.pos, 13, "error at end of input");

    let e = parse("X=1 X=2", &sig).unwrap_err();
    assert!(e.msg.contains("trailing"));

    let e = parse("Y=2 \\/ X=1 -> Y=2", &sig).unwrap_err();
    assert_eq!(e.pos, 11, "left of -> must be a conjunction of equations");

    let e = parse("!=(Y)", &sig).unwrap_err();
    assert_eq!(e.pos, 0);
    assert!(e.msg.contains("base-language"));

    let e = parse("!(Y=1 \\\\/ Y=2)", &sig).unwrap_err();
    assert_eq!(e.pos, 0);

    let e = parse("=(Y) => X=1", &sig).unwrap_err();
    assert!(e.msg.contains("left side of =>"));

    let e = parse("=(Y) /\\ (X=1 \\\\/ X=0)", &sig).unwrap_err();
    assert!(e.msg.contains("cannot mix"));

    let e = parse("=(X,Y)", &sig).unwrap_err();
    assert!(e.msg.contains("constancy"));
}

#[test]
fn classification() {
    assert_eq!(classify(&p("X=1")), Ok(FormulaClass::Co));
    assert_eq!(classify(&p("X=1 -> Y=2 /\\ !_|_")), Ok(FormulaClass::Co));
    assert_eq!(classify(&p("=(Y;Z)")), Ok(FormulaClass::Cod));
    assert_eq!(classify(&p("X=1 -> =(Y)")), Ok(FormulaClass::Cod));
    assert_eq!(classify(&p("Y=1 \\\\/ Y=2")), Ok(FormulaClass::CoI));
    assert_eq!(classify(&p("X=1 => Y=1 \\\\/ Y=2")), Ok(FormulaClass::CoI));

    // Programmatically built violations, with paths to the bad subformula.
    let bad = Formula::neg(Formula::idisj(Formula::Eq(0, 0), Formula::Eq(0, 1)));
    assert_eq!(classify(&bad), Err(IllFormed::NegationOverNonBase { path: vec![] }));
    let bad = Formula::and(Formula::Eq(0, 0), Formula::neg(Formula::constancy(1)));
    assert_eq!(classify(&bad), Err(IllFormed::NegationOverNonBase { path: vec![1] }));
    let bad = Formula::selimp(Formula::constancy(1), Formula::Eq(0, 0));
    assert_eq!(classify(&bad), Err(IllFormed::SelImpLeftNonBase { path: vec![] }));
    let bad = Formula::and(
        Formula::constancy(0),
        Formula::idisj(Formula::Eq(0, 0), Formula::Eq(0, 1)),
    );
    assert_eq!(classify(&bad), Err(IllFormed::MixedExtensions { path: vec![] }));
    // The mix is reported at the node that joins the two extensions.
    let bad = Formula::or(
        Formula::Eq(1, 0),
        Formula::and(
            Formula::constancy(0),
            Formula::idisj(Formula::Eq(0, 0), Formula::Eq(0, 1)),
        ),
    );
    assert_eq!(classify(&bad), Err(IllFormed::MixedExtensions { path: vec![1] }));
}

#[test]
fn desugaring() {
    let sig = example_signature();
    // α ⊃ ψ becomes ¬α ∨ ψ.
    assert_eq!(desugar(&p("X=1 => Y=2")), p("X!=1 \\/ Y=2"));
    // =(Y) over Ran(Y) = {1,2} becomes Y=1 ⩒ Y=2.
    assert_eq!(desugar_dep(&p("=(Y)"), &sig), p("Y=1 \\\\/ Y=2"));
    // =(X;Y) splits on X's value.
    assert_eq!(
        desugar_dep(&p("=(X;Y)"), &sig),
        p("X=0 /\\ (Y=1 \\\\/ Y=2) \\/ X=1 /\\ (Y=1 \\\\/ Y=2)")
    );

    fn has_selimp(f: &Formula) -> bool {
        match f {
            Formula::SelImp(..) => true,
            Formula::Eq(..) | Formula::Bot | Formula::Dep(..) => false,
            Formula::Neg(a) => has_selimp(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::IntDisj(a, b) => {
                has_selimp(a) || has_selimp(b)
            }
            Formula::Cf(_, c) => has_selimp(c),
        }
    }
    fn has_dep(f: &Formula) -> bool {
        match f {
            Formula::Dep(..) => true,
            Formula::Eq(..) | Formula::Bot => false,
            Formula::Neg(a) => has_dep(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::IntDisj(a, b)
            | Formula::SelImp(a, b) => has_dep(a) || has_dep(b),
            Formula::Cf(_, c) => has_dep(c),
        }
    }

    let mut r = rng(11);
    for i in 0..300 {
        let dialect = match i % 3 {
            0 => FormulaClass::Co,
            1 => FormulaClass::Cod,
            _ => FormulaClass::CoI,
        };
        let f = random_formula(&mut r, &sig, 4, dialect);
        let d = desugar(&f);
        assert!(!has_selimp(&d));
        // Desugaring never breaks well-formedness.
        let c = classify(&f).unwrap();
        let cd = classify(&d).unwrap();
        assert!(cd.within(c) || c == FormulaClass::Co);
        let dd = desugar_dep(&f, &sig);
        assert!(!has_selimp(&dd) && !has_dep(&dd));
        assert!(matches!(classify(&dd).unwrap(), FormulaClass::Co | FormulaClass::CoI));
        validate(&f, &sig).unwrap();
    }
}

#[test]
fn render_frozen() {
    let sig = example_signature();
    let show = |text: &str| render(&p(text), &sig);
    assert_eq!(show("X=1 -> Y=2"), "X=1 -> Y=2");
    assert_eq!(show("Y!=2 \\/ Y=2"), "Y!=2 \\/ Y=2");
    assert_eq!(show("=(Y;Z)"), "=(Y;Z)");
    assert_eq!(show("=(U,X;Z)"), "=(U,X;Z)");
    assert_eq!(show("_|_"), "_|_");
    assert_eq!(show("!_|_"), "!_|_");
    assert_eq!(show("!(X=1 /\\ Y=2)"), "!(X=1 /\\ Y=2)");
    assert_eq!(show("(U=0 /\\ U=1) /\\ X=0"), "(U=0 /\\ U=1) /\\ X=0");
    assert_eq!(show("U=0 /\\ (U=1 /\\ X=0)"), "U=0 /\\ U=1 /\\ X=0");
    assert_eq!(show("(X=1 -> Y=2) /\\ U=0"), "(X=1 -> Y=2) /\\ U=0");
    assert_eq!(show("X=1 /\\ U=0 -> Y=2"), "X=1 /\\ U=0 -> Y=2");
    assert_eq!(show("U=0 \\/ (X=0 \\\\/ X=1)"), "U=0 \\/ (X=0 \\\\/ X=1)");
    assert_eq!(show("U=0 => (X=1 -> Y=2)"), "U=0 => (X=1 -> Y=2)");
    assert_eq!(
        render(&Formula::bot_as_equations(), &sig),
        "U=0 /\\ U!=0"
    );
}

#[test]
fn parse_render_round_trip_on_random_formulas() {
    let mut r = rng(23);
    let sigs = [
        example_signature(),
        Signature::from_names(&[("A", &["0", "1"]), ("B", &["x", "y", "z"])]).unwrap(),
    ];
    for i in 0..1000 {
        let sig = &sigs[i % sigs.len()];
        let dialect = match i % 3 {
            0 => FormulaClass::Co,
            1 => FormulaClass::Cod,
            _ => FormulaClass::CoI,
        };
        let f = random_formula(&mut r, sig, 5, dialect);
        let text = render(&f, sig);
        let back = parse(&text, sig)
            .unwrap_or_else(|e| panic!("render of {f:?} gave unparsable {text:?}: {e}"));
        assert_eq!(back, f, "round trip failed for {text:?}");
    }
}
