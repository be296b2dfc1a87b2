use num_integer::Integer;
use proptest::prelude::*;
use slicekit::forms::{
    annihilator, cyclic_form, direct_sum, direct_sum_all, find_metabolizer, isotropic_cone,
    largest_cone_subgroup, primes_of, witt_class_mod_p, LinkingForm, Subgroup, DEFAULT_BOUND,
};
use slicekit::intlinalg::{cokernel_with_pairing, determinant, IntMatrix};

fn cyclic_summand(orders: &'static [u64]) -> impl Strategy<Value = LinkingForm> {
    prop::sample::select(orders).prop_flat_map(|d| {
        (1..d as i64)
            .prop_filter("unit", move |a| a.gcd(&(d as i64)) == 1)
            .prop_map(move |a| cyclic_form(d, a).unwrap())
    })
}

/// Diagonal forms from cyclic summands with |H| ≤ `max_order`.
fn diagonal_form(orders: &'static [u64], max_order: u64) -> impl Strategy<Value = LinkingForm> {
    prop::collection::vec(cyclic_summand(orders), 1..=3)
        .prop_map(|parts| direct_sum_all(&parts))
        .prop_filter("group too large", move |f| f.order().unwrap() <= max_order)
}

/// Forms presented by small symmetric matrices, usually not diagonal.
fn presented_form() -> impl Strategy<Value = LinkingForm> {
    prop::collection::vec(-4i64..=4, 6).prop_filter_map("even or large determinant", |u| {
        let a = IntMatrix::from_rows(&[
            vec![u[0], u[1], u[2]],
            vec![u[1], u[3], u[4]],
            vec![u[2], u[4], u[5]],
        ]);
        let det = determinant(&a).ok()?;
        let odd = det.is_odd();
        let small = det.magnitude() <= &num_bigint::BigUint::from(2000u32);
        (odd && small)
            .then(|| cokernel_with_pairing(&a).ok())
            .flatten()
    })
}

fn any_form() -> impl Strategy<Value = LinkingForm> {
    prop_oneof![
        diagonal_form(&[3, 5, 7, 9, 11, 13, 15, 21, 25, 27], 10_000),
        presented_form(),
    ]
}

fn element(f: &LinkingForm) -> impl Strategy<Value = Vec<u64>> {
    let orders = f.orders().to_vec();
    orders.into_iter().map(|d| 0..d).collect::<Vec<_>>()
}

fn form_with_elements(k: usize) -> impl Strategy<Value = (LinkingForm, Vec<Vec<u64>>)> {
    any_form().prop_flat_map(move |f| {
        let els = prop::collection::vec(element(&f), k);
        (Just(f), els)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn annihilator_order_complements((f, gens) in form_with_elements(2), take in 0usize..=2) {
        let g = Subgroup::generated(&f, gens[..take].to_vec());
        let perp = annihilator(&f, &g, DEFAULT_BOUND).unwrap();
        prop_assert_eq!(g.order * perp.order, f.order().unwrap());
        for x in perp.elements(&f) {
            for h in &g.generators {
                prop_assert_eq!(f.pair(&x, h), 0);
            }
        }
    }

    #[test]
    fn polarization_identity((f, xs) in form_with_elements(2)) {
        let e = f.exponent();
        let (x, y) = (&xs[0], &xs[1]);
        let lhs = (2 * f.pair(x, y)) % e;
        let rhs = (f.q(&f.add(x, y)) + 2 * e - f.q(x) - f.q(y)) % e;
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.pair(x, y), f.pair(y, x));
    }

    #[test]
    fn cone_subgroups_are_isotropic(f in diagonal_form(&[3, 9, 27, 81, 5, 25], 2025)) {
        prop_assume!(2025 % f.order().unwrap() == 0);
        let cone = isotropic_cone(&f, DEFAULT_BOUND, true).unwrap().elements.unwrap();
        for x in &cone {
            for y in &cone {
                let g = Subgroup::generated(&f, vec![x.clone(), y.clone()]);
                let inside = g.elements(&f).iter().all(|z| f.q(z) == 0);
                if inside {
                    prop_assert_eq!(f.pair(x, y), 0);
                }
            }
        }
        let largest = largest_cone_subgroup(&f, DEFAULT_BOUND).unwrap();
        let members = largest.witness.elements(&f);
        prop_assert_eq!(members.len() as u64, largest.order);
        for x in &members {
            for y in &members {
                prop_assert_eq!(f.pair(x, y), 0);
            }
        }
    }

    #[test]
    fn metabolizer_is_its_own_annihilator(f in any_form()) {
        if let Some(m) = find_metabolizer(&f, DEFAULT_BOUND).unwrap() {
            prop_assert_eq!(m.order * m.order, f.order().unwrap());
            let perp = annihilator(&f, &m, DEFAULT_BOUND).unwrap();
            prop_assert_eq!(perp.order, m.order);
            for x in perp.elements(&f) {
                prop_assert!(m.contains(&f, &x));
            }
            for p in primes_of(&f) {
                prop_assert!(witt_class_mod_p(&f, p).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn form_plus_negative_is_witt_trivial(f in any_form()) {
        let g = direct_sum(&f, &f.negated());
        for p in primes_of(&g) {
            prop_assert!(witt_class_mod_p(&g, p).unwrap().is_identity(), "p = {}", p);
        }
    }

    #[test]
    fn fourfold_sum_is_witt_trivial_for_3_mod_4(
        p in prop::sample::select(vec![3u64, 7, 11, 19, 23, 31, 43]),
        k in 1u32..=2,
        a in 1i64..1000,
    ) {
        let d = p.pow(k);
        prop_assume!(a.gcd(&(d as i64)) == 1);
        let f = cyclic_form(d, a).unwrap();
        let once = witt_class_mod_p(&f, p).unwrap();
        prop_assert_eq!(once.is_identity(), k % 2 == 0);
        let four = direct_sum_all(&[f.clone(), f.clone(), f.clone(), f]);
        prop_assert!(witt_class_mod_p(&four, p).unwrap().is_identity());
    }
}

#[test]
fn cyclic_form_plus_negative_has_diagonal_metabolizer() {
    let mut checked = 0;
    for d in (3..=200u64).step_by(2) {
        for a in 1..d as i64 {
            if a.gcd(&(d as i64)) != 1 {
                continue;
            }
            let f = cyclic_form(d, a).unwrap();
            let g = direct_sum(&f, &f.negated());
            let diagonal = Subgroup::generated(&g, vec![vec![1, 1]]);
            assert_eq!(diagonal.order * diagonal.order, g.order().unwrap());
            assert_eq!(g.q(&[1, 1]), 0, "cyclic({d}, {a})");
            let m = find_metabolizer(&g, DEFAULT_BOUND)
                .unwrap()
                .unwrap_or_else(|| panic!("cyclic({d}, {a}) ⊕ −cyclic({d}, {a})"));
            assert_eq!(m.order, d);
            checked += 1;
        }
    }
    assert!(checked > 8000);
}
