use bgg_core::exactmath::ExactScalar;
use bgg_core::liemodel::GeometryKind;
use bgg_core::repforge::{
    dual_rep, exterior_power, quotient_projection, standard_rep, tensor_product, BasisLabel, RepDescriptor,
    Representation,
};
use num_traits::Zero;
use proptest::prelude::*;

fn build(g: GeometryKind, d: &str) -> Representation {
    d.parse::<RepDescriptor>().unwrap().build(&g.build().unwrap()).unwrap()
}

fn geometry() -> impl Strategy<Value = GeometryKind> {
    prop_oneof![
        (2usize..5).prop_map(|n| GeometryKind::Projective { n }),
        (0usize..4, 0usize..4)
            .prop_filter("n >= 2", |(p, q)| p + q >= 2 && p + q <= 4)
            .prop_map(|(p, q)| GeometryKind::Conformal { p, q }),
    ]
}

fn descriptor() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "std",
        "dual(std)",
        "ext(2,std)",
        "ext(3,std)",
        "sym(2,std)",
        "sym(2,dual(std))",
        "tensor(std,dual(std))",
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generators_lower_the_grading(g in geometry(), d in descriptor()) {
        let r = build(g, d);
        prop_assert!(r.check_invariants().is_ok(), "{}", r.check_invariants().unwrap_err());
        prop_assert_eq!(r.grading().iter().copied().min(), Some(0));
        prop_assert_eq!(r.labels().len(), r.dim());
        for l in r.labels() {
            prop_assert_eq!(&l.to_string().parse::<BasisLabel>().unwrap(), l);
        }
    }

    #[test]
    fn generators_commute(g in geometry(), d in descriptor()) {
        let r = build(g, d);
        for a in r.generators() {
            for b in r.generators() {
                prop_assert!(a.commutator(b).is_zero());
            }
        }
    }

    #[test]
    fn grading_element_acts_by_minus_one(g in geometry(), d in descriptor()) {
        let r = build(g, d);
        let e = r.grading_element();
        let minus_one = -ExactScalar::from_integer(1.into());
        for b in r.generators() {
            prop_assert_eq!(e.commutator(b), b.scale(&minus_one));
        }
    }

    #[test]
    fn double_dual_is_identity(g in geometry(), d in descriptor()) {
        let r = build(g, d);
        let dd = dual_rep(&dual_rep(&r));
        prop_assert_eq!(dd.generators(), r.generators());
        prop_assert_eq!(dd.labels(), r.labels());
        prop_assert_eq!(dd.eigenvalues(), r.eigenvalues());
    }

    #[test]
    fn top_power_is_trivial(g in geometry()) {
        let s = standard_rep(&g.build().unwrap());
        let top = exterior_power(&s, s.dim()).unwrap();
        prop_assert_eq!(top.dim(), 1);
        prop_assert!(top.eigenvalues()[0].is_zero());
        let t = tensor_product(&s, &top).unwrap();
        prop_assert_eq!(t.generators(), s.generators());
    }
}

#[test]
fn exterior_dimensions() {
    for n in 2..=4 {
        let g = GeometryKind::Projective { n };
        for r in 1..=n + 1 {
            let e = build(g, &format!("ext({r},std)"));
            assert_eq!(e.dim(), binomial(n + 1, r));
            let lowest = if r <= n { binomial(n, r) } else { 1 };
            assert_eq!(quotient_projection(&e).slots().len(), lowest);
        }
    }
    let c = build(GeometryKind::Conformal { p: 2, q: 1 }, "ext(3,std)");
    assert_eq!(c.dim(), 10);
    assert_eq!(c.depth(), 2);
}

#[test]
fn cartan_component_dimensions() {
    // dim S²(Λ²W) − dim Λ⁴W with dim W = n + 1
    for (n, expected) in [(2, 6), (3, 20), (4, 50)] {
        let r = build(GeometryKind::Projective { n }, "cartanS2L2");
        assert_eq!(r.dim(), expected);
        let q = quotient_projection(&r);
        assert_eq!(q.slots().len(), n * (n + 1) / 2);
        r.check_invariants().unwrap();
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
