//! Values frozen from the brute-force oracle in `tools/oracle.py`.

use uninorm_core::normalize::{rewrite_r1, rewrite_r2, Direction};
use uninorm_core::realization::format_g;
use uninorm_core::{
    build_basic, build_representation, eval_uninorm, from_unit_interval, normalize, parse_element, parse_term,
    realize, sample_grid, to_unit_interval, Coord, Element, Error, Subgroup, Term,
};

fn t(text: &str) -> Term {
    parse_term(text).unwrap()
}

fn e(term: &Term, text: &str) -> Element {
    parse_element(term, text).unwrap()
}

fn list(elements: &[Element]) -> Vec<String> {
    elements.iter().map(ToString::to_string).collect()
}

#[test]
fn residuum_in_u1() {
    let u1 = build_basic(1);
    assert_eq!(u1.res(&e(&u1, "(1,2)"), &e(&u1, "(0,0)")).unwrap(), e(&u1, "(-1,-2)"));
    assert_eq!(u1.res(&e(&u1, "(0,T)"), &e(&u1, "(0,T)")).unwrap(), e(&u1, "(0,T)"));
}

#[test]
fn products_and_negation_in_u1() {
    let u1 = build_basic(1);
    let top = e(&u1, "(0,T)");
    assert_eq!(u1.mul(&top, &top).unwrap(), top);
    assert!(u1.is_idempotent(&top).unwrap());
    assert_eq!(u1.mul(&e(&u1, "(-1,T)"), &e(&u1, "(-1,T)")).unwrap(), e(&u1, "(-2,T)"));
    assert_eq!(u1.neg(&top).unwrap(), e(&u1, "(-1,T)"));
}

#[test]
fn idempotent_lists() {
    let cases: [(&str, &[&str], usize, usize); 6] = [
        ("R", &["0"], 1, 1),
        ("PLP2(Z;R)", &["(0,0)", "(0,T)"], 2, 1),
        ("PLP2(Z;PLP2(Z;R))", &["(0,(0,0))", "(0,(0,T))", "(0,T)"], 3, 1),
        (
            "PLP2(Z;PLP2(Z;PLP2(Z;R)))",
            &["(0,(0,(0,0)))", "(0,(0,(0,T)))", "(0,(0,T))", "(0,T)"],
            4,
            1,
        ),
        ("PLP1(R;1*Zint;R)", &["(0,B)", "(0,0)", "(0,T)"], 2, 2),
        (
            "PLP1(PLP2(Z;R);full x triv;R)",
            &["((0,0),B)", "((0,0),0)", "((0,0),T)", "((0,T),B)"],
            3,
            2,
        ),
    ];
    for (text, expected, pos, neg) in cases {
        let c = t(text).idempotent_census();
        assert_eq!(list(&c.elements), expected, "{text}");
        assert_eq!((c.positive, c.negative), (pos, neg), "{text}");
    }
}

#[test]
fn representation_builder() {
    assert_eq!(build_representation(&[0], &[]).unwrap(), Term::r());
    assert_eq!(
        build_representation(&[0, 0], &[Subgroup::new(vec![Coord::scaled(1, 1)])]).unwrap(),
        t("PLP1(R;1*Zint;R)")
    );
    let built = build_representation(&[1, 0], &[Subgroup::new(vec![Coord::Full, Coord::Trivial])]).unwrap();
    assert_eq!(built, t("PLP1(PLP2(Z;R);full x triv;R)"));
    assert_eq!(built.idempotent_census().negative, 2);
}

#[test]
fn gaps_found_by_window_search() {
    let iii = t("PLP3(R;full;1*Zint;R)");
    let w = iii.find_gap().unwrap();
    assert_eq!((w.lower.to_string(), w.upper.to_string()), ("(1/2,B)".into(), "(1/2,T)".into()));
    let u1 = build_basic(1);
    assert!(u1.find_gap().is_none());
    assert_eq!(u1.successor(&e(&u1, "(0,T)")).unwrap(), e(&u1, "(0,T)"));
}

#[test]
fn discreteness_rejections() {
    assert!(matches!(parse_term("PLP2(R;R)"), Err(Error::DiscretenessViolation(_))));
    assert!(matches!(parse_term("PLP2(PLP2(Z;R);R)"), Err(Error::DiscretenessViolation(_))));
    assert!(matches!(parse_term("PLP1(Z;1/2*Zint;R)"), Err(Error::SubgroupChainViolation(_))));
}

#[test]
fn rewrite_instances() {
    assert_eq!(
        rewrite_r1(&t("PLP2(PLP2(Z;Z);R)"), vec![], Direction::LeftToRight).unwrap(),
        build_basic(2)
    );
    assert_eq!(
        rewrite_r2(&t("PLP2(PLP1(R;1*Zint;Z);R)"), vec![], Direction::LeftToRight).unwrap(),
        t("PLP1(R;1*Zint;PLP2(Z;R))")
    );
    assert!(matches!(
        rewrite_r1(&Term::z(), vec![], Direction::LeftToRight),
        Err(Error::PatternMismatch(_))
    ));
    assert_eq!(
        normalize(&t("PLP2(PLP1(R;1*Zint;Z);R)")).unwrap().form.to_string(),
        "[(0, 1*Zint), (1)]"
    );
}

#[test]
fn realization_values() {
    let u1 = build_basic(1);
    let m = realize(&u1).unwrap();
    let values: Vec<f64> = ["(0,0)", "(0,T)", "(1,0)"].iter().map(|s| m.forward(&e(&u1, s))).collect();
    assert_eq!(values, [0.5, 1.0, 1.5]);
    assert_eq!(realize(&Term::r()).unwrap().forward(&e(&Term::r(), "3/2")), 1.5);

    let i = t("PLP1(R;1*Zint;R)");
    let m = realize(&i).unwrap();
    let expected = [0.5, 0.75, 1.0, 1.5, 2.0];
    for (s, v) in ["(0,B)", "(0,0)", "(0,T)", "(1/2,B)", "(1,B)"].iter().zip(expected) {
        assert!((m.forward(&e(&i, s)) - v).abs() < 1e-15, "{s}");
    }
}

#[test]
fn unit_interval_values() {
    assert_eq!(to_unit_interval(0.0), 0.5);
    assert!((from_unit_interval(0.75).unwrap() - 1.0).abs() < 1e-15);
    assert!((from_unit_interval(to_unit_interval(2.5)).unwrap() - 2.5).abs() < 1e-12);
    assert!(matches!(from_unit_interval(1.0), Err(Error::DomainError(_))));
    let v = eval_uninorm(&Term::r(), 0.75, 0.75).unwrap();
    assert_eq!(format_g(v, 12), "0.85241638235");
    assert_eq!(eval_uninorm(&Term::r(), 0.0, 0.9).unwrap(), 0.0);
    assert!((eval_uninorm(&Term::r(), 0.5, 0.3).unwrap() - 0.3).abs() < 1e-9);
}

#[test]
fn small_grid() {
    let g = sample_grid(&realize(&Term::r()).unwrap(), 3).unwrap();
    assert_eq!(g.to_csv(), "# term=R resolution=3\n0,0,0\n0,0.5,1\n0,1,1\n");
}
