//! Factorization of integer polynomials: squarefree decomposition, Cantor–Zassenhaus
//! modulo a small prime, Hensel lifting and Zassenhaus recombination.

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &Fp) -> isize {
    a.len() as isize - 1
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_from(f: &IntPoly, p: u64) -> Fp {
    let bp = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect())
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(v)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    if deg(&r) < deg(b) {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let il = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let f = mulmod(r[dr], il, p);
        q[dr - db] = f;
        for (j, &bc) in b.iter().enumerate() {
            r[dr - db + j] = (r[dr - db + j] + p - mulmod(f, bc, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    if a.is_empty() {
        return vec![];
    }
    let il = inv(*a.last().unwrap(), p);
    a.iter().map(|&c| mulmod(c, il, p)).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = s1;
        s1 = s;
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = t1;
        t1 = t;
    }
    let il = inv(*r0.last().unwrap(), p);
    let sc = |v: &Fp| trim(v.iter().map(|&c| mulmod(c, il, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_deriv(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn fp_powmod(base: &Fp, mut e: BigInt, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_rem(base, m, p);
    let two = BigInt::from(2);
    while e > BigInt::zero() {
        if e.is_odd() {
            r = fp_rem(&fp_mul(&r, &b, p), m, p);
        }
        e /= &two;
        if e > BigInt::zero() {
            b = fp_rem(&fp_mul(&b, &b, p), m, p);
        }
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while deg(&f) >= 2 * d as isize {
        h = fp_powmod(&h, BigInt::from(p), &f, p);
        let g = fp_gcd(&f, &fp_sub(&h, &x, p), p);
        if deg(&g) > 0 {
            out.push((g.clone(), d));
            f = fp_divrem(&f, &g, p).0;
            h = fp_rem(&h, &f, p);
        }
        d += 1;
    }
    if deg(&f) > 0 {
        let df = deg(&f) as usize;
        out.push((f, df));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd p).
fn edf(f: &Fp, d: usize, p: u64, rng: &mut StdRng) -> Vec<Fp> {
    let n = deg(f) as usize;
    if n == d {
        return vec![fp_monic(f, p)];
    }
    let e: BigInt = (num_traits::pow(BigInt::from(p), d) - 1) / 2;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let g = fp_gcd(&a, f, p);
        let cand = if deg(&g) > 0 {
            g
        } else {
            let b = fp_powmod(&a, e.clone(), f, p);
            fp_gcd(&fp_sub(&b, &vec![1], p), f, p)
        };
        if deg(&cand) > 0 && deg(&cand) < n as isize {
            let other = fp_divrem(f, &cand, p).0;
            let mut v = edf(&cand, d, p, rng);
            v.extend(edf(&other, d, p, rng));
            return v;
        }
    }
}

fn factor_mod_p(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = StdRng::seed_from_u64(p);
    let mut out = Vec::new();
    for (g, d) in ddf(&fp_monic(f, p), p) {
        out.extend(edf(&g, d, p, &mut rng));
    }
    out
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

// Polynomials with BigInt coefficients modulo m (kept in [0, m)).
fn zm_reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zm_reduce(&v, m)
}

fn fp_to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn z_to_fp(a: &[BigInt], p: u64) -> Fp {
    let bp = BigInt::from(p);
    trim(a.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect())
}

/// Lift monic `g·h ≡ target (mod p)` to `G·H ≡ target (mod p^k)`, `G, H` monic.
fn hensel_pair(target: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, t) = fp_xgcd(g, h, p);
    let bp = BigInt::from(p);
    let mut gz = fp_to_z(g);
    let mut hz = fp_to_z(h);
    let mut pj = bp.clone();
    for _ in 1..k {
        let pj1 = &pj * &bp;
        let gh = zm_mul(&gz, &hz, &pj1);
        let t_red = zm_reduce(target, &pj1);
        let n = t_red.len().max(gh.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| t_red.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        let e: Vec<BigInt> = diff.iter().map(|c| (c / &pj).mod_floor(&bp)).collect();
        let ep = z_to_fp(&e, p);
        let dh = fp_rem(&fp_mul(&s, &ep, p), h, p);
        let dg = fp_rem(&fp_mul(&t, &ep, p), g, p);
        for (i, c) in dg.iter().enumerate() {
            gz[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            hz[i] += &pj * BigInt::from(*c);
        }
        gz = zm_reduce(&gz, &pj1);
        hz = zm_reduce(&hz, &pj1);
        pj = pj1;
    }
    (gz, hz)
}

fn fp_product(fs: &[Fp], p: u64) -> Fp {
    fs.iter().fold(vec![1u64], |acc, f| fp_mul(&acc, f, p))
}

/// Lift all monic modular factors of `target` (monic mod p) to modulus p^k.
fn hensel_multi(target: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let m = num_traits::pow(BigInt::from(p), k as usize);
        return vec![zm_reduce(target, &m)];
    }
    let mid = factors.len() / 2;
    let g = fp_product(&factors[..mid], p);
    let h = fp_product(&factors[mid..], p);
    let (gz, hz) = hensel_pair(target, &g, &h, p, k);
    let mut out = hensel_multi(&gz, &factors[..mid], p, k);
    out.extend(hensel_multi(&hz, &factors[mid..], p, k));
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factor a primitive squarefree polynomial of degree ≥ 1 into irreducibles.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.normalized()];
    }
    let lc = f.lead();
    // choose a prime giving few modular factors
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 6 {
        p += 2;
        if !is_prime_u64(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_from(f, p);
        if deg(&fp) != f.degree() as isize || deg(&fp_gcd(&fp, &fp_deriv(&fp, p), p)) > 0 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp, p);
        if facs.len() == 1 {
            return vec![f.normalized()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.unwrap();
    // Mignotte-style bound on factor coefficients
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1) * (BigInt::one() << f.degree()) * lc.abs();
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut m = bp.clone();
    while m <= &bound * 2 {
        m *= &bp;
        k += 1;
    }
    let monic_target: Vec<BigInt> = {
        let lc_inv = lc.modinv(&m).expect("lc invertible mod p^k");
        zm_reduce(&f.coeffs().iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &m)
    };
    let mut lifted = hensel_multi(&monic_target, &facs, p, k);
    let mut out = Vec::new();
    let mut g = f.primitive_part();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for comb in combinations(lifted.len(), s) {
            let lcg = g.lead();
            let mut prod = vec![lcg.clone()];
            for &i in &comb {
                prod = zm_mul(&prod, &lifted[i], &m);
            }
            let cand = IntPoly::new(symmetric(&prod, &m)).primitive_part();
            if cand.degree() == 0 {
                continue;
            }
            if let Some(q) = g.div_exact(&cand) {
                out.push(cand.normalized());
                g = q.primitive_part();
                let mut rest = Vec::new();
                for (i, l) in lifted.into_iter().enumerate() {
                    if !comb.contains(&i) {
                        rest.push(l);
                    }
                }
                lifted = rest;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if g.degree() > 0 {
        out.push(g.normalized());
    }
    out
}

/// Squarefree decomposition: pairs `(a_i, i)` with `f = c · ∏ a_i^i`.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let f = f.primitive_part();
    if f.degree() == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut rest = f.gcd(&f.derivative());
    let mut all = f.div_exact(&rest).expect("gcd divides").primitive_part();
    let mut i = 1;
    while all.degree() > 0 {
        let t = rest.gcd(&all);
        let part = all.div_exact(&t).expect("gcd divides").primitive_part();
        if part.degree() > 0 {
            out.push((part.normalized(), i));
        }
        rest = rest.div_exact(&t).expect("gcd divides").primitive_part();
        all = t;
        i += 1;
    }
    out
}

/// Full factorization into irreducible primitive factors with multiplicities
/// (the integer content is dropped).
pub fn factor(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    for (part, e) in squarefree_decomposition(f) {
        for g in factor_squarefree(&part) {
            out.push((g, e));
        }
    }
    out.sort();
    out
}

/// Irreducible over the rationals (degree ≥ 1).
pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let fac = factor(f);
    fac.len() == 1 && fac[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn expand(fs: &[(IntPoly, u32)]) -> IntPoly {
        fs.iter().fold(IntPoly::one(), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }

    #[test]
    fn table_polys_are_irreducible() {
        for c in [
            vec![-11, 0, 9, 0, 1],
            vec![15, 0, 1],
            vec![-47, 0, 19060, 0, -4234, 0, 212, 0, 1],
            vec![111, 0, -45, 0, -3, 0, 1],
        ] {
            assert!(is_irreducible(&p(&c)), "{c:?}");
        }
    }

    #[test]
    fn swinnerton_dyer_like_and_products() {
        // x^4 - 10x^2 + 1 splits modulo every prime into factors of degree <= 2
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])));
        let a = p(&[1, 0, -10, 0, 1]);
        let b = p(&[-2, 0, 0, 1]);
        let c = p(&[3, 1]);
        let f = a.mul(&b).mul(&c).mul(&c);
        let fac = factor(&f);
        assert_eq!(expand(&fac), f.normalized());
        assert_eq!(fac.len(), 3);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12
        let mut v = vec![0i64; 13];
        v[0] = -1;
        v[12] = 1;
        let fac = factor(&p(&v));
        assert_eq!(fac.len(), 6);
        assert_eq!(expand(&fac), p(&v));
    }

    #[test]
    fn non_monic() {
        let f = p(&[-1, 2]).mul(&p(&[1, 0, 3])).mul(&p(&[5, -7, 6]));
        let fac = factor(&f);
        assert_eq!(fac.len(), 3);
        assert_eq!(expand(&fac), f.normalized());
    }
}
