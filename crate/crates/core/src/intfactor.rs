//! Factorization of (big) integers: trial division, Miller–Rabin, Pollard–Brent rho.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

const TRIAL_LIMIT: u64 = 1 << 16;

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize + 1;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Miller–Rabin with the first twelve prime bases (deterministic below 3.3·10^24) plus
/// random bases beyond that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            return true;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                return true;
            }
        }
        false
    };
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if !witness(&BigUint::from(p)) {
            return false;
        }
    }
    if n.bits() > 80 {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..16 {
            let a = rng.gen_biguint_range(&two, &n1);
            if !witness(&a) {
                return false;
            }
        }
    }
    true
}

fn pollard_brent(n: &BigUint, effort: u64, seed: u64) -> Option<BigUint> {
    let mut rng = StdRng::seed_from_u64(seed);
    let one = BigUint::one();
    let mut y = rng.gen_biguint_below(n);
    let c = rng.gen_biguint_range(&one, n);
    let m = 128u64;
    let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
    let mut x = y.clone();
    let mut ys = y.clone();
    let f = |v: &BigUint| (v * v + &c) % n;
    let mut steps = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            steps += m;
            if steps > effort {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
/// `effort` bounds the Pollard iterations per composite cofactor.
pub fn factor_integer(n: &BigInt, effort: u64) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.abs().to_biguint().expect("nonnegative");
    if m.is_zero() {
        return Err(Error::Invalid("factoring zero".into()));
    }
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in small_primes(TRIAL_LIMIT) {
        if m.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut stack = if m.is_one() { vec![] } else { vec![m] };
    let mut seed = 1u64;
    while let Some(c) = stack.pop() {
        if c.bits() <= 32 || is_probable_prime(&c) {
            // anything left below TRIAL_LIMIT^2 without a small factor is prime
            match out.iter_mut().find(|(p, _)| p == &c) {
                Some(e) => e.1 += 1,
                None => out.push((c, 1)),
            }
            continue;
        }
        let r = c.sqrt();
        if &r * &r == c {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut found = None;
        for _ in 0..8 {
            seed += 1;
            if let Some(d) = pollard_brent(&c, effort, seed) {
                found = Some(d);
                break;
            }
        }
        match found {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => return Err(Error::Factoring(c.to_string())),
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(p, e)| (BigInt::from(p), e)).collect())
}

/// Default Pollard effort used by the field-discriminant computation.
pub const DEFAULT_EFFORT: u64 = 2_000_000;

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn fact(n: i128) -> Vec<(i128, u32)> {
        factor_integer(&BigInt::from(n), DEFAULT_EFFORT)
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_i128().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_and_composite() {
        assert_eq!(fact(-60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(fact(1), vec![]);
        fact_check(249495552);
        fact_check(-276629609244703713);
        // two primes above the trial-division range
        let p = 1_000_003i128;
        let q = 998_244_353i128;
        assert_eq!(fact(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(fact(p * p * 7), vec![(7, 1), (p, 2)]);
    }

    fn fact_check(n: i128) -> Vec<(i128, u32)> {
        let f = fact(n);
        let prod: i128 = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(prod, n.abs());
        f
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(998_244_353u64)));
        assert!(!is_probable_prime(&BigUint::from(561u64)));
        let m61 = (BigUint::one() << 61usize) - 1u32;
        assert!(is_probable_prime(&m61));
    }
}
