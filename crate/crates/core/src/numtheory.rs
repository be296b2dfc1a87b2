//! Elementary number theory on machine integers.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("{p} divides {a}")]
    DividesArgument { a: i64, p: u64 },
    #[error("gcd({a}, {m}) != 1")]
    NotCoprime { a: u64, m: u64 },
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3;
    while p * p <= n && p < 1_000_000 {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        let mut rest = Vec::new();
        split_large(n, &mut rest);
        rest.sort_unstable();
        for q in rest {
            match out.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => out.push((q, 1)),
            }
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn pollard_rho(n: u64) -> u64 {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Euler's criterion; `p` must be an odd prime.
pub fn is_quadratic_residue(a: i64, p: u64) -> bool {
    let a = a.rem_euclid(p as i64) as u64;
    a == 0 || mod_pow(a, (p - 1) / 2, p) == 1
}

/// Quadratic residuosity of a unit `a` modulo an odd prime `p`.
pub fn is_qr(a: i64, p: u64) -> Result<bool, NumError> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(NumError::DividesArgument { a, p });
    }
    Ok(is_quadratic_residue(a, p))
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        0
    } else if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks square root of `a` modulo an odd prime `p`.
pub fn sqrt_mod(a: i64, p: u64) -> Option<u64> {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Some(0);
    }
    if !is_quadratic_residue(a as i64, p) {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| !is_quadratic_residue(z as i64, p))?;
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b);
        t = mulmod(t, c);
        r = mulmod(r, b);
    }
    Some(r)
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let a = a.rem_euclid(m);
    let e = a.extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Some `(a, b)` with `a <= b` and `a^2 + b^2 = n`.
pub fn two_squares(n: u64) -> Option<(u64, u64)> {
    if n == 0 {
        return Some((0, 0));
    }
    // Gaussian integer accumulated as (re, im).
    let mut acc: (i128, i128) = (1, 0);
    let mul = |x: (i128, i128), y: (i128, i128)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    for (p, e) in factorize(n) {
        if p == 2 {
            for _ in 0..e {
                acc = mul(acc, (1, 1));
            }
        } else if p % 4 == 3 {
            if e % 2 == 1 {
                return None;
            }
            for _ in 0..e / 2 {
                acc = mul(acc, (p as i128, 0));
            }
        } else {
            let g = cornacchia(p);
            for _ in 0..e {
                acc = mul(acc, g);
            }
        }
    }
    let (a, b) = (acc.0.unsigned_abs() as u64, acc.1.unsigned_abs() as u64);
    Some((a.min(b), a.max(b)))
}

/// Write a prime p = 1 mod 4 as x^2 + y^2.
fn cornacchia(p: u64) -> (i128, i128) {
    let r = sqrt_mod(-1, p).expect("p = 1 mod 4");
    let (mut a, mut b) = (p, r);
    while b * b > p {
        let t = a % b;
        a = b;
        b = t;
    }
    let c = ((p - b * b) as f64).sqrt().round() as u64;
    debug_assert_eq!(b * b + c * c, p);
    (b as i128, c as i128)
}

/// Smallest prime congruent to `a` modulo `m`.
pub fn prime_in_progression(a: u64, m: u64) -> Result<u64, NumError> {
    if m == 0 || a.gcd(&m) != 1 {
        return Err(NumError::NotCoprime { a, m });
    }
    let mut p = a % m;
    loop {
        if is_prime(p) {
            return Ok(p);
        }
        p += m;
    }
}

/// Square-free part: product of primes with odd exponent.
pub fn squarefree_part(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
