use ars_core::lambda::{
    abs, app, beta_step_enum, closed_terms, identity, is_beta_nf, k_combinator, leftmost_outermost_step, normalize,
    omega, parse_term, shift, substitute, terms_of_size, var, ConversionSearch, NormalizeResult, Strategy, Term,
};
use proptest::prelude::{prop_assert, prop_assert_eq, prop_assume, prop_oneof, proptest};
use proptest::strategy::Strategy as _;

#[test]
fn closed_term_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| terms_of_size(n, 0).len()).collect();
    assert_eq!(counts, [0, 1, 2, 4, 13, 42, 139]);
    assert_eq!(closed_terms(7).len(), 201);
    assert!(closed_terms(7).iter().all(Term::is_closed));
}

#[test]
fn step_enumeration_is_empty_exactly_on_normal_forms() {
    for t in closed_terms(7) {
        assert_eq!(beta_step_enum(&t).is_empty(), is_beta_nf(&t), "{t:?}");
        assert_eq!(leftmost_outermost_step(&t).is_none(), is_beta_nf(&t));
    }
}

#[test]
fn desk_checks() {
    let kio = app(app(k_combinator(), identity()), omega());
    match normalize(&kio, Strategy::LeftmostOutermost, 10) {
        NormalizeResult::NormalForm { term, path } => {
            assert_eq!(term, identity());
            assert_eq!(path.len(), 3);
        }
        other => panic!("{other:?}"),
    }
    // The first-enumerated strategy also picks the outer redex first here.
    assert!(matches!(
        normalize(&omega(), Strategy::FirstEnumerated, 50),
        NormalizeResult::FuelExhausted { steps: 50, .. }
    ));
    let t = app(abs(abs(var(0))), app(identity(), identity()));
    let NormalizeResult::NormalForm { term, .. } = normalize(&t, Strategy::LeftmostOutermost, 10) else {
        panic!()
    };
    assert_eq!(term, abs(var(0)));
}

#[test]
fn conversion_search_finds_real_conversions() {
    let search = ConversionSearch::new(10);
    let ii = app(identity(), identity());
    let path = search.connect(&ii, &identity(), 6).unwrap();
    assert_eq!(path.len(), 2);
    // A conversion that needs an expansion: K I I and I I are both convertible to I.
    let kii = app(app(k_combinator(), identity()), identity());
    let path = search.connect(&kii, &ii, 6).unwrap();
    assert!(path.len() <= 5, "{path:?}");
    // Distinct normal forms stay apart.
    let k = k_combinator();
    assert!(search.connect(&k, &identity(), 6).is_none());
}

#[test]
fn distinct_normal_forms_are_not_connected() {
    let search = ConversionSearch::new(10);
    let nfs: Vec<Term> = closed_terms(6).into_iter().filter(is_beta_nf).collect();
    for (i, a) in nfs.iter().enumerate() {
        let ball = search.ball(a, 6);
        for b in &nfs[i + 1..] {
            assert!(!ball.contains(b), "{a:?} ~ {b:?}");
        }
    }
}

#[test]
fn parser_accepts_the_grammar() {
    let ctx = vec!["z".to_string()];
    assert_eq!(parse_term("λx.x", &[]).unwrap(), identity());
    assert_eq!(parse_term("\\x y. x", &[]).unwrap(), k_combinator());
    assert_eq!(parse_term("(\\x. x x) (\\x. x x)", &[]).unwrap(), omega());
    assert_eq!(parse_term("z \\x. x", &ctx).unwrap(), app(var(0), identity()));
    assert_eq!(parse_term("\\x. z", &ctx).unwrap(), abs(var(1)));
    assert!(parse_term("\\x. y", &ctx).is_err());
    assert!(parse_term("", &[]).is_err());
    assert!(parse_term("(x", &["x".into()]).is_err());
    assert!(parse_term("x)", &["x".into()]).is_err());
}

fn arb_term(binders: usize) -> impl proptest::strategy::Strategy<Value = Term> {
    let leaf = (0..binders.max(1)).prop_map(var);
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| app(f, a)),
            inner.prop_map(abs),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(t in arb_term(3)) {
        let ctx: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let shown = t.display_with(&ctx).to_string();
        prop_assert_eq!(parse_term(&shown, &ctx).unwrap(), t);
    }

    #[test]
    fn shifting_up_then_down_is_identity(t in arb_term(3), d in 0usize..4, c in 0usize..3) {
        let up = shift(&t, d as isize, c).unwrap();
        prop_assert_eq!(shift(&up, -(d as isize), c).unwrap(), t);
    }

    #[test]
    fn substituting_an_absent_variable_changes_nothing(t in arb_term(2), s in arb_term(2)) {
        // Variable 5 never occurs in terms over two free variables.
        prop_assert_eq!(substitute(&t, 5, &s), t);
    }

    #[test]
    fn reducts_keep_free_variables(t in arb_term(2)) {
        prop_assume!(t.is_closed_under(2));
        for r in beta_step_enum(&t) {
            prop_assert!(r.is_closed_under(2));
        }
    }

    #[test]
    fn normal_forms_are_normal(t in arb_term(2)) {
        if let NormalizeResult::NormalForm { term, path } = normalize(&t, Strategy::LeftmostOutermost, 200) {
            prop_assert!(is_beta_nf(&term));
            prop_assert_eq!(path.first(), Some(&t));
            for w in path.windows(2) {
                prop_assert!(beta_step_enum(&w[0]).contains(&w[1]));
            }
        }
    }
}
