use bgg_core::exactmath::{rat, ExactScalar, Exponents, MultiPoly};
use proptest::prelude::*;

const NVARS: usize = 3;

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-6i64..7, 1i64..5).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, NVARS), scalar()), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(NVARS, terms.into_iter().map(|(e, c)| (Exponents::new(e), c))))
}

fn point() -> impl Strategy<Value = Vec<ExactScalar>> {
    proptest::collection::vec(scalar(), NVARS)
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(NVARS), a.clone());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), v in 0usize..NVARS) {
        let lhs = (&a * &b).partial(v).unwrap();
        let rhs = &(&a.partial(v).unwrap() * &b) + &(&a * &b.partial(v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), x in point()) {
        let (ea, eb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), ea + eb);
    }

    #[test]
    fn canonical_text_round_trips(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(MultiPoly::parse(&text, NVARS).unwrap(), a);
    }

    #[test]
    fn degree_is_additive(a in poly(), b in poly()) {
        if let (Some(da), Some(db)) = (a.total_degree(), b.total_degree()) {
            prop_assert_eq!((&a * &b).total_degree(), Some(da + db));
        }
    }
}

#[test]
fn variable_count_is_checked() {
    let a = MultiPoly::var(2, 0);
    let b = MultiPoly::var(3, 0);
    assert!(a.checked_add(&b).is_err());
    assert!(a.checked_mul(&b).is_err());
    assert!(a.eval(&[rat(1, 1)]).is_err());
    assert!(a.partial(2).is_err());
}
