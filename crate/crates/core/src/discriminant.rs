//! Discriminant of the maximal order by the round-2 algorithm.
//!
//! Orders are kept as a rational basis matrix over the power basis. At each prime
//! whose square divides the polynomial discriminant we compute the radical of `pO`,
//! its ring of multipliers, and enlarge until nothing changes.

use crate::error::{Error, Result};
use crate::intfactor::{factor_integer, DEFAULT_EFFORT};
use crate::poly::{poly_discriminant, IntPoly, QPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type QMat = Vec<Vec<BigRational>>;
type ZMat = Vec<Vec<BigInt>>;

fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Inverse of a square rational matrix (rows are basis vectors).
fn inverse(m: &QMat) -> QMat {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).expect("singular basis");
        a.swap(c, piv);
        let inv = BigRational::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let v = &f * &a[c][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn det(m: &QMat) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let piv = match (c..n).find(|&r| !a[r][c].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if piv != c {
            a.swap(c, piv);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let v = &f * &a[c][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    d
}

fn row_times(v: &[BigRational], m: &QMat) -> Vec<BigRational> {
    let n = m[0].len();
    (0..n).map(|j| v.iter().zip(m).map(|(a, row)| a * &row[j]).sum()).collect()
}

/// Row Hermite normal form of a full-rank integer lattice; returns `n` rows.
pub fn hnf(rows: &ZMat, n: usize) -> ZMat {
    let mut a: ZMat = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: ZMat = Vec::with_capacity(n);
    for c in 0..n {
        // gcd-combine column c into one pivot row
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&r| !a[r][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| a[r][c].abs()).unwrap();
            for &r in &nz {
                if r != p {
                    let q = a[r][c].div_floor(&a[p][c]);
                    let pr = a[p].clone();
                    for (x, y) in a[r].iter_mut().zip(pr) {
                        *x -= &q * y;
                    }
                }
            }
        }
        let p = match (0..a.len()).find(|&r| !a[r][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        let mut row = a.remove(p);
        if row[c].is_negative() {
            row = row.into_iter().map(|x| -x).collect();
        }
        for prev in out.iter_mut() {
            let q = prev[c].div_floor(&row[c]);
            if !q.is_zero() {
                for (x, y) in prev.iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
        out.push(row);
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    out
}

/// Kernel of the linear map whose matrix rows are images of basis vectors, over F_p.
fn left_kernel_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    // augment with identity to track combinations
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| -> u64 {
        let (mut r, mut e, mut b) = (1u64, p - 2, x % p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..m {
        let piv = match (rank..n).find(|&r| a[r][c] != 0) {
            Some(x) => x,
            None => continue,
        };
        a.swap(rank, piv);
        let iv = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = mulm(*x, iv);
        }
        for r in 0..n {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..m + n {
                    let v = mulm(f, a[rank][k]);
                    a[r][k] = (a[r][k] + p - v) % p;
                }
            }
        }
        rank += 1;
    }
    a[rank..].iter().map(|r| r[m..].to_vec()).collect()
}

struct Order {
    n: usize,
    basis: QMat,
    /// `w_i w_j = Σ_k mult[i][j][k] w_k`
    mult: Vec<Vec<Vec<BigInt>>>,
}

impl Order {
    fn new(f: &QPoly, basis: QMat) -> Order {
        let n = basis.len();
        let inv = inverse(&basis);
        let elems: Vec<QPoly> = basis.iter().map(|r| QPoly::new(r.clone())).collect();
        let mut mult = vec![vec![vec![BigInt::zero(); n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = elems[i].mul(&elems[j]).rem(f);
                let v: Vec<BigRational> = (0..n).map(|k| prod.coeff(k)).collect();
                let c = row_times(&v, &inv);
                let c: Vec<BigInt> = c
                    .into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "basis does not span a ring");
                        x.to_integer()
                    })
                    .collect();
                mult[i][j] = c.clone();
                mult[j][i] = c;
            }
        }
        Order { n, basis, mult }
    }

    fn mul(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for k in 0..self.n {
                    out[k] += &ab * &self.mult[i][j][k];
                }
            }
        }
        out
    }

    fn mul_mod(&self, u: &[u64], v: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u128; self.n];
        let pm = p as u128;
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = (a as u128 * b as u128) % pm;
                for k in 0..self.n {
                    let c = self.mult[i][j][k].mod_floor(&BigInt::from(p)).to_u64().unwrap() as u128;
                    out[k] = (out[k] + ab * c) % pm;
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    /// One round-2 step at `p`; `None` when the order is already p-maximal.
    fn enlarge(&self, f: &QPoly, p: u64) -> Option<Order> {
        let n = self.n;
        let pb = BigInt::from(p);
        // radical of pO: kernel of x -> x^(p^j), p^j >= n
        let mut q = BigInt::from(p);
        while q < BigInt::from(n) {
            q *= p;
        }
        let frob: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                let mut acc = {
                    let mut one = vec![0u64; n];
                    // the identity in O-coordinates
                    let id = self.identity();
                    for k in 0..n {
                        one[k] = id[k].mod_floor(&pb).to_u64().unwrap();
                    }
                    one
                };
                let mut base = e;
                let mut k = q.clone();
                while !k.is_zero() {
                    if k.is_odd() {
                        acc = self.mul_mod(&acc, &base, p);
                    }
                    k >>= 1;
                    if !k.is_zero() {
                        base = self.mul_mod(&base, &base, p);
                    }
                }
                acc
            })
            .collect();
        let rad = left_kernel_mod_p(&frob, p);
        let mut gens: ZMat = (0..n)
            .map(|i| (0..n).map(|j| if i == j { pb.clone() } else { BigInt::zero() }).collect())
            .collect();
        gens.extend(rad.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
        let ip = hnf(&gens, n);
        let ip_q: QMat = ip.iter().map(|r| r.iter().map(qi).collect()).collect();
        let ip_inv = inverse(&ip_q);
        // kernel of O/pO -> End(I_p / p I_p)
        let images: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                let mut row = Vec::with_capacity(n * n);
                for beta in &ip {
                    let prod = self.mul(&e, beta);
                    let pq: Vec<BigRational> = prod.iter().map(qi).collect();
                    let y = row_times(&pq, &ip_inv);
                    for c in y {
                        debug_assert!(c.is_integer());
                        row.push(c.to_integer().mod_floor(&pb).to_u64().unwrap());
                    }
                }
                row
            })
            .collect();
        let ker = left_kernel_mod_p(&images, p);
        if ker.is_empty() {
            return None;
        }
        let mut gens: ZMat = (0..n)
            .map(|i| (0..n).map(|j| if i == j { pb.clone() } else { BigInt::zero() }).collect())
            .collect();
        gens.extend(ker.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
        let u = hnf(&gens, n);
        let pinv = BigRational::new(BigInt::one(), pb.clone());
        let new_basis: QMat = u
            .iter()
            .map(|r| {
                let rq: Vec<BigRational> = r.iter().map(|x| qi(x) * &pinv).collect();
                row_times(&rq, &self.basis)
            })
            .collect();
        Some(Order::new(f, new_basis))
    }

    fn identity(&self) -> Vec<BigInt> {
        let inv = inverse(&self.basis);
        let mut one = vec![BigRational::zero(); self.n];
        one[0] = BigRational::one();
        row_times(&one, &inv).into_iter().map(|x| x.to_integer()).collect()
    }
}

/// Monic integral polynomial defining the same field: roots scaled by the leading coefficient.
pub fn monic_model(p: &IntPoly) -> IntPoly {
    let d = p.degree();
    let lc = p.lead();
    let mut c: Vec<BigInt> = (0..d).map(|i| p.coeff(i) * num_traits::pow(lc.clone(), d - 1 - i)).collect();
    c.push(BigInt::one());
    IntPoly::new(c)
}

/// Discriminant of the ring of integers of `Q[z]/(p)`, with the index `[O_K : Z[θ]]`.
pub fn field_discriminant_with_index(p: &IntPoly, effort: u64) -> Result<(BigInt, BigInt)> {
    if p.degree() == 0 {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    let f = if p.lead().is_negative() { p.neg() } else { p.clone() };
    let f = if f.is_monic() { f } else { monic_model(&f) };
    let d0 = poly_discriminant(&f);
    let n = f.degree();
    if n == 1 {
        return Ok((BigInt::one(), BigInt::one()));
    }
    let fq = f.to_q();
    let mut order = Order::new(
        &fq,
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect(),
    );
    for (prime, e) in factor_integer(&d0, effort)? {
        if e < 2 {
            continue;
        }
        let pr = prime
            .to_u64()
            .filter(|&x| x < (1u64 << 62))
            .ok_or_else(|| Error::Factoring(format!("prime {prime} is beyond the supported range")))?;
        while let Some(next) = order.enlarge(&fq, pr) {
            order = next;
        }
    }
    let dt = det(&order.basis);
    let index = (BigRational::one() / dt).abs();
    assert!(index.is_integer());
    let index = index.to_integer();
    let disc = &d0 / (&index * &index);
    debug_assert_eq!(&disc * &index * &index, d0);
    Ok((disc, index))
}

/// Discriminant of the maximal order of `Q[z]/(p)`.
pub fn field_discriminant(p: &IntPoly) -> Result<BigInt> {
    Ok(field_discriminant_with_index(p, DEFAULT_EFFORT)?.0)
}
