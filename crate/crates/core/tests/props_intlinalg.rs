use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use slicekit::intlinalg::{
    cokernel_with_pairing, determinant, signature_symmetric, smith_normal_form, IntMatrix,
};

fn matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn square(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))
}

fn symmetric(max_dim: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim).prop_flat_map(move |n| symmetric_of(n, range))
}

fn symmetric_of(n: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-range..=range, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[i][j] = upper[k];
                m[j][i] = upper[k];
                k += 1;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_factorizes_input(rows in matrix(5)) {
        let a = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        let uav = snf.u.mul(&a).unwrap().mul(&snf.v).unwrap();
        prop_assert_eq!(&uav, &snf.d);
        prop_assert_eq!(determinant(&snf.u).unwrap().abs(), BigInt::one());
        prop_assert_eq!(determinant(&snf.v).unwrap().abs(), BigInt::one());

        let d = snf.d.to_rows();
        let k = a.rows().min(a.cols());
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    prop_assert!(x.is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..k).map(|i| d[i][i].clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn snf_is_deterministic(rows in matrix(4)) {
        let a = IntMatrix::from_rows(&rows);
        prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn determinant_is_product_of_invariant_factors(rows in square(5)) {
        let a = IntMatrix::from_rows(&rows);
        let det = determinant(&a).unwrap().abs();
        let snf = smith_normal_form(&a);
        let factors = snf.invariant_factors();
        if det.is_zero() {
            prop_assert!(factors.len() < a.rows());
        } else {
            prop_assert_eq!(factors.len(), a.rows());
            prop_assert_eq!(factors.iter().product::<BigInt>(), det);
        }
    }

    #[test]
    fn signature_negates(rows in symmetric(5, 6)) {
        let a = IntMatrix::from_rows(&rows);
        let s = signature_symmetric(&a).unwrap();
        prop_assert_eq!(signature_symmetric(&a.neg()).unwrap(), -s);
        prop_assert!(s.unsigned_abs() as usize <= a.rows());
    }

    #[test]
    fn signature_of_one_by_one_is_sign(x in -1000i64..=1000) {
        let a = IntMatrix::from_rows(&[vec![x]]);
        prop_assert_eq!(signature_symmetric(&a).unwrap(), x.signum());
    }

    #[test]
    fn signature_is_congruence_invariant(
        (rows, p) in (1usize..=4).prop_flat_map(|n| (symmetric_of(n, 4), prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)))
    ) {
        let a = IntMatrix::from_rows(&rows);
        let p = IntMatrix::from_rows(&p);
        prop_assume!(!determinant(&p).unwrap().is_zero());
        let b = p.transpose().mul(&a).unwrap().mul(&p).unwrap();
        prop_assert_eq!(signature_symmetric(&b).unwrap(), signature_symmetric(&a).unwrap());
    }

    #[test]
    fn cokernel_pairing_is_nondegenerate(rows in symmetric(4, 5)) {
        let a = IntMatrix::from_rows(&rows);
        let det = determinant(&a).unwrap().abs();
        prop_assume!(!det.is_zero());
        let two = BigInt::from(2);
        prop_assume!(!(&det % &two).is_zero());
        prop_assume!(det <= BigInt::from(10_000));
        let f = cokernel_with_pairing(&a).unwrap();
        prop_assert_eq!(BigInt::from(f.order().unwrap()), det.clone());
        let all: Vec<_> = f.elements().collect();
        for x in all.iter().skip(1) {
            prop_assert!(all.iter().any(|y| f.pair(x, y) != 0), "degenerate at {:?}", x);
        }
        for i in 0..f.rank() {
            let (_, d) = f.gram_entry(i, i);
            prop_assert!(BigInt::from(d) <= det && (&det % BigInt::from(d)).is_zero());
        }
    }
}
