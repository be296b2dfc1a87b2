use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use slicekit::diagram::{
    bennequin, connected_sum_at, goeritz_determinant, goeritz_matrix, mirror, parse_dt, parse_pd,
    rudolph_bennequin, seifert_matrix, switch_crossing, two_bridge_diagram, Diagram,
};
use slicekit::fixtures::{dt_records, figure_records, pd_records};
use slicekit::intlinalg::determinant;
use slicekit::signatures::murasugi_signature;

fn table() -> &'static [Diagram] {
    static TABLE: OnceLock<Vec<Diagram>> = OnceLock::new();
    TABLE.get_or_init(|| {
        pd_records()
            .into_iter()
            .chain(dt_records())
            .chain(figure_records())
            .filter_map(|r| r.diagram.ok())
            .filter(|d| d.crossing_count() <= 13)
            .collect()
    })
}

/// A table diagram, optionally mirrored and with one crossing switched.
fn knot() -> impl Strategy<Value = Diagram> {
    (
        0..table().len(),
        any::<bool>(),
        any::<Option<prop::sample::Index>>(),
    )
        .prop_map(|(i, m, switch)| {
            let mut d = table()[i].clone();
            if m {
                d = mirror(&d);
            }
            if let Some(ix) = switch {
                d = switch_crossing(&d, ix.index(d.crossing_count())).unwrap();
            }
            d
        })
}

fn symmetrized_det(d: &Diagram) -> num_bigint::BigInt {
    let v = seifert_matrix(d).unwrap();
    determinant(&v.add(&v.transpose()).unwrap()).unwrap().abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn pd_round_trip(d in knot()) {
        let text = d.to_pd_string();
        let back = parse_pd(&text).unwrap();
        prop_assert_eq!(back.to_pd_string(), text);
    }

    #[test]
    fn dt_round_trip(d in knot()) {
        let code = d.to_dt().unwrap();
        let back = parse_dt(&code).unwrap();
        prop_assert_eq!(back.to_dt().unwrap(), code);
        prop_assert_eq!(back.crossing_count(), d.crossing_count());
    }

    #[test]
    fn goeritz_and_seifert_determinants_agree(d in knot()) {
        prop_assert_eq!(goeritz_determinant(&d).unwrap().abs(), symmetrized_det(&d));
        let g = goeritz_matrix(&d).unwrap();
        prop_assert!(g.is_symmetric());
    }

    #[test]
    fn bennequin_is_integral(d in knot()) {
        let s = d.seifert_data();
        prop_assert_eq!(s.writhe, d.writhe());
        prop_assert!((s.writhe - s.count() as i64 + 1) % 2 == 0);
        prop_assert_eq!(2 * bennequin(&d), s.writhe - s.count() as i64 + 1);
    }

    #[test]
    fn mirror_negates_signature(d in knot()) {
        let s = murasugi_signature(&seifert_matrix(&d).unwrap()).unwrap();
        let m = murasugi_signature(&seifert_matrix(&mirror(&d)).unwrap()).unwrap();
        prop_assert_eq!(m, -s);
        prop_assert!(s % 2 == 0);
    }

    #[test]
    fn rb_is_additive_under_connected_sum(
        a in knot(),
        b in knot(),
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
    ) {
        prop_assume!(a.crossing_count() > 0 && b.crossing_count() > 0);
        let (sa, sb) = (a.seifert_data(), b.seifert_data());
        let ea = ia.index(2 * a.crossing_count()) as u32 + 1;
        let eb = ib.index(2 * b.crossing_count()) as u32 + 1;
        let circle = |s: &slicekit::diagram::SeifertData, e: u32| {
            s.circles.iter().position(|c| c.contains(&e)).unwrap()
        };
        let (ca, cb) = (circle(&sa, ea), circle(&sb, eb));
        let meets_negative = sa.negative_circles.contains(&ca) || sb.negative_circles.contains(&cb);
        let sum = connected_sum_at(&a, ea, &b, eb).unwrap();
        prop_assert_eq!(sum.crossing_count(), a.crossing_count() + b.crossing_count());
        prop_assert_eq!(bennequin(&sum), bennequin(&a) + bennequin(&b));
        if let (Ok(ra), Ok(rb), Ok(rs)) = (rudolph_bennequin(&a), rudolph_bennequin(&b), rudolph_bennequin(&sum)) {
            // The merged circle is negative only if both joined circles were, so
            // s₋ drops by one whenever either joined circle is negative.
            let expected = ra + rb - i64::from(meets_negative);
            prop_assert_eq!(rs, expected);
        }
    }
}

#[test]
fn two_bridge_determinant_is_p() {
    let mut checked = 0;
    for p in (3..=200i64).step_by(2) {
        for q in 1..p {
            if num_integer::Integer::gcd(&p, &q) != 1 {
                continue;
            }
            let d = two_bridge_diagram(p, q).unwrap();
            assert!(d.is_knot(), "{p}/{q}");
            assert_eq!(goeritz_determinant(&d).unwrap().abs(), p.into(), "{p}/{q}");
            checked += 1;
        }
    }
    assert!(checked > 5000);
}

#[test]
fn two_bridge_seifert_route_matches_on_small_p() {
    for p in (3..=61i64).step_by(2) {
        for q in 1..p {
            if num_integer::Integer::gcd(&p, &q) != 1 {
                continue;
            }
            let d = two_bridge_diagram(p, q).unwrap();
            let det = symmetrized_det(&d);
            assert!(!det.is_zero());
            assert_eq!(det, p.into(), "{p}/{q}");
        }
    }
}
