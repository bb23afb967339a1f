//! Exact algebraic numbers: an irreducible integer polynomial plus an isolating box.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::interval::{CInterval, RInterval};
use crate::poly::IntPoly;
use crate::precision::Precision;
use crate::roots::{isolate_root_boxes, RootBox};
use crate::sturm::{isolate_real_roots, refine_real_root, sturm_real_roots, Bound, RealRoot};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Degree and place counts of the number field `Q[z]/(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldSignature {
    pub degree: usize,
    pub real_places: usize,
    pub complex_places: usize,
}

/// Signature of the field generated by a root of an irreducible polynomial.
pub fn signature(p: &IntPoly) -> Result<NumberFieldSignature> {
    if p.degree() == 0 {
        return Err(Error::Invalid("signature of a constant".into()));
    }
    if !is_irreducible(p) {
        return Err(Error::Reducible(p.to_string()));
    }
    let r = sturm_real_roots(p, &Bound::NegInf, &Bound::PosInf);
    Ok(NumberFieldSignature { degree: p.degree(), real_places: r, complex_places: (p.degree() - r) / 2 })
}

#[derive(Clone, Debug)]
enum Loc {
    Real(RealRoot),
    Complex(CInterval),
}

/// An algebraic number given by its primitive irreducible minimal polynomial (positive
/// leading coefficient) and an enclosure isolating one of its roots.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    min_poly: IntPoly,
    loc: Loc,
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> Self {
        let p = IntPoly::linear_root(q).normalized();
        let d = Dyadic::from_rational(q, 64, crate::dyadic::Round::Down);
        // a bracket with a sign change, or an exact dyadic point
        let root = if d.to_rational() == *q {
            RealRoot { lo: d.clone(), hi: d }
        } else {
            RealRoot { lo: d.clone(), hi: Dyadic::from_rational(q, 64, crate::dyadic::Round::Up) }
        };
        AlgebraicNumber { min_poly: p, loc: Loc::Real(root) }
    }

    pub fn from_int(n: i64) -> Self {
        AlgebraicNumber::from_rational(&BigRational::from_integer(n.into()))
    }

    pub(crate) fn from_root_box(p: IntPoly, b: RootBox) -> Self {
        let loc = match b.real {
            Some(r) => Loc::Real(r),
            None => Loc::Complex(b.enclosure),
        };
        AlgebraicNumber { min_poly: p.normalized(), loc }
    }

    /// The `k`-th real root (ascending) of an irreducible polynomial.
    pub fn real_root(p: &IntPoly, k: usize) -> Result<Self> {
        let roots = isolate_real_roots(p);
        match roots.get(k) {
            Some(r) if is_irreducible(p) => Ok(AlgebraicNumber { min_poly: p.normalized(), loc: Loc::Real(r.clone()) }),
            Some(_) => Err(Error::Reducible(p.to_string())),
            None => Err(Error::Invalid(format!("{p} has only {} real roots", roots.len()))),
        }
    }

    /// Every root of an irreducible polynomial, in the canonical order (real part, then
    /// imaginary part).
    pub fn roots_of(p: &IntPoly, policy: &Precision) -> Result<Vec<Self>> {
        if !is_irreducible(p) {
            return Err(Error::Reducible(p.to_string()));
        }
        let boxes = policy.escalate(&format!("isolating roots of {p}"), |prec| isolate_root_boxes(p, prec))?;
        Ok(boxes.into_iter().map(|b| AlgebraicNumber::from_root_box(p.clone(), b)).collect())
    }

    /// The unique root of `p` (any nonzero polynomial) compatible with the enclosures
    /// produced by `approx`, which must contain the intended value at every precision.
    pub fn locate(p: &IntPoly, policy: &Precision, mut approx: impl FnMut(u32) -> Result<CInterval>) -> Result<Self> {
        if p.is_zero() || p.degree() == 0 {
            return Err(Error::Invalid("locating a root of a constant".into()));
        }
        let factors: Vec<IntPoly> = factor(p).into_iter().map(|(f, _)| f.normalized()).collect();
        policy.escalate(&format!("locating a root of {p}"), |prec| {
            let target = approx(prec)?;
            let mut hit: Option<(IntPoly, RootBox)> = None;
            for f in &factors {
                let boxes = match isolate_root_boxes(f, prec)? {
                    Some(b) => b,
                    None => return Ok(None),
                };
                for b in boxes {
                    if b.enclosure.overlaps(&target) {
                        if hit.is_some() {
                            return Ok(None);
                        }
                        hit = Some((f.clone(), b));
                    }
                }
            }
            match hit {
                Some((f, b)) => Ok(Some(AlgebraicNumber::from_root_box(f, b))),
                None => Err(Error::Invalid(format!("no root of {p} near the given value"))),
            }
        })
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn is_real(&self) -> bool {
        matches!(self.loc, Loc::Real(_))
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.min_poly.is_monic()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.degree() == 1 {
            let c = self.min_poly.coeffs();
            Some(BigRational::new(-&c[0], c[1].clone()))
        } else {
            None
        }
    }

    /// Stored enclosure, at whatever precision it was built with.
    pub fn coarse_enclosure(&self) -> CInterval {
        match &self.loc {
            Loc::Real(r) => CInterval::real(RInterval::new(r.lo.clone(), r.hi.clone(), 64)),
            Loc::Complex(b) => b.clone(),
        }
    }

    /// An enclosure accurate to roughly `prec` bits.
    pub fn enclosure(&self, prec: u32) -> Result<CInterval> {
        if let Some(q) = self.as_rational() {
            return Ok(CInterval::from_rational(&q, prec));
        }
        match &self.loc {
            Loc::Real(r) => Ok(CInterval::real(refine_real_root(&self.min_poly, r, prec).to_interval(prec))),
            Loc::Complex(b) => {
                let policy = Precision::new(prec.max(16), prec.max(16).max(crate::precision::CAP_BITS))?;
                policy.escalate("refining an algebraic number", |pr| {
                    let boxes = match isolate_root_boxes(&self.min_poly, pr)? {
                        Some(v) => v,
                        None => return Ok(None),
                    };
                    let hits: Vec<&RootBox> = boxes.iter().filter(|x| x.enclosure.overlaps(b)).collect();
                    Ok(if hits.len() == 1 { Some(hits[0].enclosure.clone()) } else { None })
                })
            }
        }
    }

    /// Double-precision value `(re, im)`.
    pub fn to_f64(&self) -> (f64, f64) {
        match self.enclosure(64) {
            Ok(b) => b.to_f64(),
            Err(_) => self.coarse_enclosure().to_f64(),
        }
    }

    /// Whether the two numbers are equal.
    pub fn same_value(&self, other: &AlgebraicNumber) -> Result<bool> {
        if self.min_poly != other.min_poly || self.is_real() != other.is_real() {
            return Ok(false);
        }
        if self.degree() == 1 {
            return Ok(true);
        }
        Precision::default().escalate("comparing algebraic numbers", |prec| {
            let a = self.enclosure(prec)?;
            let b = other.enclosure(prec)?;
            if !a.overlaps(&b) {
                return Ok(Some(false));
            }
            // both enclose roots of one polynomial; a common isolating box means equal
            let boxes = match isolate_root_boxes(&self.min_poly, prec)? {
                Some(v) => v,
                None => return Ok(None),
            };
            let hits: Vec<&RootBox> =
                boxes.iter().filter(|x| x.enclosure.overlaps(&a) || x.enclosure.overlaps(&b)).collect();
            Ok(if hits.len() == 1 { Some(true) } else { None })
        })
    }

    /// `num·self + shift`.
    pub fn affine(&self, num: &BigRational, shift: &BigRational) -> Result<Self> {
        if num.is_zero() {
            return Ok(AlgebraicNumber::from_rational(shift));
        }
        if let Some(q) = self.as_rational() {
            return Ok(AlgebraicNumber::from_rational(&(q * num + shift)));
        }
        let p = self.min_poly.affine_image(num, shift).normalized();
        AlgebraicNumber::locate(&p, &Precision::default(), |prec| {
            let z = self.enclosure(prec)?;
            Ok(z.mul_real(&RInterval::from_rational(num, prec + 32)).add(&CInterval::from_rational(shift, prec + 32)))
        })
    }

    pub fn neg(&self) -> Result<Self> {
        self.affine(&-BigRational::one(), &BigRational::zero())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let (re, im) = self.to_f64();
        if self.is_real() {
            write!(f, "root of {} near {re:.12}", self.min_poly)
        } else {
            write!(f, "root of {} near {re:.12}{:+.12}i", self.min_poly, im)
        }
    }
}

/// JSON view of an algebraic number.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraicNumberView {
    pub min_poly: IntPoly,
    pub re: f64,
    pub im: f64,
}

impl AlgebraicNumber {
    pub fn view(&self) -> AlgebraicNumberView {
        let (re, im) = self.to_f64();
        AlgebraicNumberView { min_poly: self.min_poly.clone(), re, im }
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.view().serialize(s)
    }
}

fn mobius(mut n: u64) -> i32 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// The cyclotomic polynomial `Φ_n` as `∏_{d|n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let f = IntPoly::monomial(BigInt::one(), d as usize).sub(&IntPoly::one());
        match mobius(n / d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// Minimal polynomial of `2cos(2π/n)`.
pub fn two_cos_min_poly(n: u64) -> IntPoly {
    match n {
        0 => panic!("zero order"),
        1 => IntPoly::from_i64s(&[-2, 1]),
        2 => IntPoly::from_i64s(&[2, 1]),
        _ => {
            let phi = cyclotomic(n);
            let m = phi.degree() / 2;
            // x^{-m}Φ(x) = a_m + Σ a_{m+k} (x^k + x^{-k}), and x^k + x^{-k} = D_k(x + 1/x)
            let mut out = IntPoly::constant(phi.coeff(m));
            let (mut d0, mut d1) = (IntPoly::constant(2.into()), IntPoly::x());
            for k in 1..=m {
                out = out.add(&d1.scale(&phi.coeff(m + k)));
                let d2 = IntPoly::x().mul(&d1).sub(&d0);
                d0 = d1;
                d1 = d2;
            }
            out.normalized()
        }
    }
}

/// Which trigonometric value [`trig_value`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigKind {
    Cos,
    SinSq,
    TwoCos,
}

/// `2cos(πj/m)` as an exact real algebraic integer.
pub fn two_cos(j: i64, m: u64) -> Result<AlgebraicNumber> {
    if m == 0 {
        return Err(Error::Invalid("zero denominator".into()));
    }
    let two_m = 2 * m as i64;
    let j = j.rem_euclid(two_m);
    let g = j.gcd(&two_m);
    let (mut a, n) = (j / g, (two_m / g) as u64);
    // value 2cos(2πa/n) with gcd(a, n) = 1
    if n <= 2 {
        let v = if n == 1 { 2 } else { -2 };
        return Ok(AlgebraicNumber::from_int(v));
    }
    if a as u64 > n / 2 {
        a = n as i64 - a;
    }
    let ks: Vec<u64> = (1..n.div_ceil(2)).filter(|k| k.gcd(&n) == 1).collect();
    let pos = ks.iter().position(|&k| k == a as u64).expect("reduced residue");
    let p = two_cos_min_poly(n);
    // 2cos(2πk/n) decreases in k, so the k-th residue is the (len-1-pos)-th root ascending
    AlgebraicNumber::real_root(&p, ks.len() - 1 - pos)
}

/// `cos(πj/m)`, `sin²(πj/m)` or `2cos(πj/m)` as an exact algebraic number.
pub fn trig_value(kind: TrigKind, j: i64, m: u64) -> Result<AlgebraicNumber> {
    let half = BigRational::new(1.into(), 2.into());
    match kind {
        TrigKind::TwoCos => two_cos(j, m),
        TrigKind::Cos => two_cos(j, m)?.affine(&half, &BigRational::zero()),
        // sin²x = (2 - 2cos 2x)/4
        TrigKind::SinSq => two_cos(2 * j, m)?.affine(&BigRational::new((-1).into(), 4.into()), &half),
    }
}

/// Round the interval coefficients of `∏(z - c_j)` to integers. `Ok(None)` when some
/// coefficient is not yet pinned to a single integer; an error when a tight
/// coefficient has no integer nearby.
pub fn expand_conjugates(conj: &[CInterval]) -> Result<Option<IntPoly>> {
    if conj.is_empty() {
        return Ok(Some(IntPoly::one()));
    }
    let prec = conj.iter().map(|c| c.prec()).max().unwrap_or(64) + 32;
    let mut acc = vec![CInterval::one(prec)];
    for c in conj {
        let mut next = vec![CInterval::zero(prec); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a);
            next[i] = next[i].sub(&a.mul(c));
        }
        acc = next;
    }
    let quarter = Dyadic::pow2(-2);
    let mut out = Vec::with_capacity(acc.len());
    for c in &acc {
        if c.im.lo < -&quarter || c.im.hi > quarter {
            if c.im.width() < quarter {
                return Err(Error::Invalid("conjugates are not closed under complex conjugation".into()));
            }
            return Ok(None);
        }
        match c.re.nearest_integer() {
            Some(k) if c.re.width() < quarter => out.push(k),
            _ => {
                if c.re.width() < Dyadic::pow2(-3) {
                    return Err(Error::Invalid("product coefficients are not integers".into()));
                }
                return Ok(None);
            }
        }
    }
    Ok(Some(IntPoly::new(out)))
}

/// Irreducible factor of the rounded product that vanishes at the first conjugate.
pub fn min_poly_from_conjugate_boxes(conj: &[CInterval]) -> Result<Option<IntPoly>> {
    let prod = match expand_conjugates(conj)? {
        Some(p) => p,
        None => return Ok(None),
    };
    if conj.is_empty() {
        return Err(Error::Invalid("empty orbit".into()));
    }
    let hits: Vec<IntPoly> = factor(&prod)
        .into_iter()
        .map(|(f, _)| f.normalized())
        .filter(|f| f.eval_complex(&conj[0]).contains_zero())
        .collect();
    Ok(match hits.len() {
        1 => Some(hits.into_iter().next().unwrap()),
        0 => return Err(Error::Invalid("no factor vanishes at the first conjugate".into())),
        _ => None,
    })
}

/// Minimal polynomial of an algebraic number from its Galois orbit; `orbit(prec)` must
/// return enclosures of the whole orbit (possibly with repetitions) at that precision.
pub fn min_poly_from_conjugates(
    policy: &Precision,
    mut orbit: impl FnMut(u32) -> Result<Vec<CInterval>>,
) -> Result<IntPoly> {
    policy.escalate("minimal polynomial from conjugates", |prec| min_poly_from_conjugate_boxes(&orbit(prec)?))
}

/// Exact endpoints of an interval.
pub fn rational_bracket(x: &RInterval) -> (BigRational, BigRational) {
    (x.lo.to_rational(), x.hi.to_rational())
}

/// The rational `n/d`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(15).degree(), 8);
    }

    #[test]
    fn two_cos_polys() {
        assert_eq!(two_cos_min_poly(5), IntPoly::from_i64s(&[-1, 1, 1]));
        assert_eq!(two_cos_min_poly(10), IntPoly::from_i64s(&[-1, -1, 1]));
        assert_eq!(two_cos_min_poly(8), IntPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(two_cos_min_poly(7), IntPoly::from_i64s(&[-1, -2, 1, 1]));
    }

    #[test]
    fn trig_examples() {
        let c = trig_value(TrigKind::Cos, 1, 3).unwrap();
        assert_eq!(c.min_poly(), &IntPoly::from_i64s(&[-1, 2]));
        let g = trig_value(TrigKind::TwoCos, 1, 5).unwrap();
        assert_eq!(g.min_poly(), &IntPoly::from_i64s(&[-1, -1, 1]));
        assert!((g.to_f64().0 - 1.618_033_988_749_895).abs() < 1e-12);
        let s = trig_value(TrigKind::SinSq, 1, 6).unwrap();
        assert_eq!(s.min_poly(), &IntPoly::from_i64s(&[-1, 4]));
        for (j, m) in [(1, 7), (3, 7), (5, 12), (7, 9), (-2, 5), (13, 30)] {
            let v = trig_value(TrigKind::Cos, j, m).unwrap().to_f64().0;
            let want = (std::f64::consts::PI * j as f64 / m as f64).cos();
            assert!((v - want).abs() < 1e-12, "{j}/{m}: {v} vs {want}");
        }
    }

    #[test]
    fn conjugate_orbits() {
        let prec = 128;
        let r15 = RInterval::from_int(15, prec).sqrt().unwrap();
        let orbit = vec![
            CInterval::new(RInterval::zero(prec), r15.clone()),
            CInterval::new(RInterval::zero(prec), r15.neg()),
        ];
        assert_eq!(min_poly_from_conjugate_boxes(&orbit).unwrap().unwrap(), IntPoly::from_i64s(&[15, 0, 1]));
        let one = vec![CInterval::one(prec)];
        assert_eq!(min_poly_from_conjugate_boxes(&one).unwrap().unwrap(), IntPoly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn signatures() {
        let s = |c: &[i64]| signature(&IntPoly::from_i64s(c)).unwrap();
        assert_eq!(s(&[15, 0, 1]), NumberFieldSignature { degree: 2, real_places: 0, complex_places: 1 });
        assert_eq!(s(&[-11, 0, 9, 0, 1]), NumberFieldSignature { degree: 4, real_places: 2, complex_places: 1 });
        assert_eq!(s(&[-2, 0, 1]), NumberFieldSignature { degree: 2, real_places: 2, complex_places: 0 });
        assert!(matches!(signature(&IntPoly::from_i64s(&[-1, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn equality_and_affine() {
        let g = trig_value(TrigKind::TwoCos, 1, 5).unwrap();
        let back = g.affine(&q(2, 1), &q(-1, 1)).unwrap(); // 2φ - 1 = √5
        assert_eq!(back.min_poly(), &IntPoly::from_i64s(&[-5, 0, 1]));
        let s5 = AlgebraicNumber::real_root(&IntPoly::from_i64s(&[-5, 0, 1]), 1).unwrap();
        assert!(back.same_value(&s5).unwrap());
        assert!(!back.same_value(&s5.neg().unwrap()).unwrap());
        let roots = AlgebraicNumber::roots_of(&IntPoly::from_i64s(&[1, 1, 1]), &Precision::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(!roots[0].same_value(&roots[1]).unwrap());
        assert!(roots[1].same_value(&roots[1].clone()).unwrap());
    }
}
