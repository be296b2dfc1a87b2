use num_integer::Integer;
use proptest::prelude::*;
use slicekit::numtheory::{
    factorize, is_prime, isqrt, legendre, mod_pow, prime_in_progression, sqrt_mod, two_squares,
};

/// Every prime ≡ 3 mod 4 divides n to an even power.
fn sum_of_two_squares_criterion(n: u64) -> bool {
    factorize(n)
        .into_iter()
        .all(|(p, e)| p % 4 != 3 || e % 2 == 0)
}

fn trial_division_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

#[test]
fn two_squares_matches_criterion_exhaustively() {
    let limit = 100_000u64;
    let mut representable = vec![false; limit as usize + 1];
    for a in 0..=isqrt(limit) {
        for b in a..=isqrt(limit - a * a) {
            representable[(a * a + b * b) as usize] = true;
        }
    }
    for n in 0..=limit {
        let found = two_squares(n);
        assert_eq!(found.is_some(), representable[n as usize], "n = {n}");
        if n > 0 {
            assert_eq!(found.is_some(), sum_of_two_squares_criterion(n), "n = {n}");
        }
        if let Some((a, b)) = found {
            assert!(a <= b);
            assert_eq!(a * a + b * b, n);
        }
    }
}

#[test]
fn primality_matches_trial_division() {
    for n in 0..20_000u64 {
        assert_eq!(is_prime(n), trial_division_prime(n), "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn prime_in_progression_is_prime_and_congruent(a in 0u64..500, m in 1u64..500) {
        prop_assume!(a.gcd(&m) == 1);
        let p = prime_in_progression(a, m).unwrap();
        prop_assert_eq!(p % m, a % m);
        prop_assert!(trial_division_prime(p));
        let mut q = a % m;
        while q < p {
            prop_assert!(!trial_division_prime(q), "{} is a smaller prime", q);
            q += m;
        }
    }

    #[test]
    fn prime_in_progression_rejects_common_factor(a in 1u64..500, m in 2u64..500) {
        prop_assume!(a.gcd(&m) != 1);
        prop_assert!(prime_in_progression(a, m).is_err());
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..u64::MAX / 2) {
        let f = factorize(n);
        let mut prod = 1u64;
        for &(p, e) in &f {
            prop_assert!(is_prime(p));
            prod *= p.pow(e);
        }
        prop_assert_eq!(prod, n);
        prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn sqrt_mod_squares_back(p in prop::sample::select(vec![3u64, 5, 7, 13, 101, 1009, 10007, 1_000_003]), a in -5000i64..5000) {
        let r = sqrt_mod(a, p);
        let a_mod = a.rem_euclid(p as i64) as u64;
        if a_mod == 0 {
            prop_assert_eq!(legendre(a, p), 0);
        } else {
            let euler = mod_pow(a_mod, (p - 1) / 2, p) == 1;
            prop_assert_eq!(r.is_some(), euler);
            prop_assert_eq!(legendre(a, p), if euler { 1 } else { -1 });
        }
        if let Some(r) = r {
            prop_assert_eq!((r as u128 * r as u128 % p as u128) as u64, a_mod);
        }
    }
}
