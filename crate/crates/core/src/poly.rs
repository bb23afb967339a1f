//! Dense univariate polynomials over the integers and the rationals.

use crate::dyadic::Dyadic;
use crate::error::Error;
use crate::interval::{CInterval, RInterval};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Integer polynomial, coefficients in ascending degree order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c · x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    /// The linear polynomial `x - r` scaled to be integral and primitive.
    pub fn linear_root(r: &BigRational) -> Self {
        IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).normalized()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive with positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let p = self.primitive_part();
        if p.lead().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Dyadic::from_int(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` at a dyadic point, computed exactly.
    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        self.eval_dyadic(x).signum()
    }

    pub fn eval_interval(&self, x: &RInterval) -> RInterval {
        let mut acc = RInterval::zero(x.prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RInterval::from_int(c.clone(), x.prec));
        }
        acc
    }

    pub fn eval_complex(&self, z: &CInterval) -> CInterval {
        let prec = z.prec();
        let mut acc = CInterval::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&CInterval::from_int(c.clone(), prec));
        }
        acc
    }

    /// Pseudo-remainder: `lead(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return self.clone();
        }
        let db = b.degree();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut e = self.degree() - db + 1;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + j] -= &lr * bc;
            }
            e -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let k = num_traits::pow(lb, e);
        IntPoly::new(r).scale(&k)
    }

    /// Exact quotient over the integers, if `b` divides `self`.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.to_q().divrem(&b.to_q());
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let cont = self.content().gcd(&o.content());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        let g = a.normalized();
        if g.is_zero() {
            return IntPoly::constant(cont);
        }
        if g.degree() == 0 {
            return IntPoly::one();
        }
        g
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Product of the distinct irreducible factors, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part().div_exact(&g).expect("gcd divides").normalized()
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    /// `self(x^2)`
    pub fn even_lift(&self) -> IntPoly {
        let mut v = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[2 * i] = c.clone();
        }
        IntPoly::new(v)
    }

    /// Only even powers present.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    /// `den^deg · p((num·x + shift)/den)` made primitive: the polynomial whose roots are
    /// `(den·r - shift)/num` for roots `r` of `self`.
    pub fn affine_image(&self, num: &BigRational, shift: &BigRational) -> IntPoly {
        // roots y = num * r + shift  =>  r = (y - shift)/num
        let inv = BigRational::one() / num;
        let q = self.to_q();
        let lin = QPoly::new(vec![-shift * &inv, inv]);
        q.compose(&lin).to_primitive_int()
    }

    /// `p(-x)` normalized.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
        .normalized()
    }

    /// Power of two strictly larger than the modulus of every complex root.
    pub fn root_bound(&self) -> Dyadic {
        let lead = BigRational::from_integer(self.lead().abs());
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let v = BigRational::from_integer(c.abs()) / &lead;
            if v > m {
                m = v;
            }
        }
        let bound = m + BigRational::one();
        let mut e = 0i64;
        while BigRational::from_integer(BigInt::one() << (e as usize)) <= bound {
            e += 1;
        }
        Dyadic::pow2(e)
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Parse comma-separated ascending coefficients, e.g. `"-11,0,9,0,1"`.
    pub fn parse_csv(s: &str) -> Result<IntPoly, Error> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }

    /// Comma-separated ascending coefficients.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parse the human form produced by `Display`, e.g. `"-11+9 z^2+z^4"`.
    pub fn parse_human(s: &str) -> Result<IntPoly, Error> {
        let bad = || Error::Parse(format!("bad polynomial {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, term.trim_start_matches('+').to_string()),
            };
            let (c, k) = match body.find('z') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let cs = &body[..pos];
                    let c = if cs.is_empty() { BigInt::one() } else { cs.parse().map_err(|_| bad())? };
                    let rest = &body[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c * sign;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    /// Ascending human form: `-11+9 z^2+z^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            if k == 1 {
                write!(f, "z")?;
            } else {
                write!(f, "z^{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::serde_util::bigint_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::serde_util::bigint_vec::deserialize(d).map(IntPoly::new)
    }
}

/// Resultant with the convention `res(p, q) = lead(p)^deg q · ∏ q(α)` over the roots
/// `α` of `p`, computed with the subresultant pseudo-remainder sequence.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let (dp, dq) = (p.degree(), q.degree());
    if dp == 0 {
        return num_traits::pow(p.lead(), dq);
    }
    if dq == 0 {
        return num_traits::pow(q.lead(), dp);
    }
    let ca = p.content();
    let cb = q.content();
    let mut a = p.primitive_part();
    let mut b = q.primitive_part();
    let t = num_traits::pow(ca, dq) * num_traits::pow(cb, dp);
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree(), b.degree());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = IntPoly::new(r.coeffs.iter().map(|c| c / &div).collect());
        g = a.lead();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.degree() == 0 {
            break;
        }
    }
    let da = a.degree();
    let hh = num_traits::pow(b.lead(), da) / num_traits::pow(h, da - 1);
    s * t * hh
}

/// Polynomial discriminant `(-1)^(d(d-1)/2) · res(p, p') / lead(p)`.
pub fn poly_discriminant(p: &IntPoly) -> BigInt {
    let d = p.degree();
    if d == 0 {
        return BigInt::zero();
    }
    if d == 1 {
        return BigInt::one();
    }
    let r = resultant(p, &p.derivative()) / p.lead();
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Polynomial with rational coefficients, ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::new(v)
    }

    pub fn divrem(&self, b: &QPoly) -> (QPoly, QPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return (QPoly::zero(), self.clone());
        }
        let db = b.degree();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); self.degree() - db + 1];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let f = &r[dr] / &lb;
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + j] -= &f * bc;
            }
            q[dr - db] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, b: &QPoly) -> QPoly {
        self.divrem(b).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(BigRational::one() / l))
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn xgcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let l = BigRational::one() / r0.lead();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &CInterval) -> CInterval {
        let prec = z.prec();
        let mut acc = CInterval::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&CInterval::from_rational(c, prec));
        }
        acc
    }

    pub fn eval_interval(&self, x: &RInterval) -> RInterval {
        let mut acc = RInterval::zero(x.prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RInterval::from_rational(c, x.prec));
        }
        acc
    }

    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Clear denominators and make primitive with positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        let d = self.denominator();
        IntPoly::new(self.coeffs.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect())
            .normalized()
    }

    /// Integer polynomial if all coefficients are integers.
    pub fn to_int_exact(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn human_format_matches_table_style() {
        assert_eq!(p(&[-11, 0, 9, 0, 1]).to_string(), "-11+9 z^2+z^4");
        assert_eq!(p(&[15, 0, 1]).to_string(), "15+z^2");
        assert_eq!(p(&[-31, 0, -2, 0, 1]).to_string(), "-31-2 z^2+z^4");
        assert_eq!(p(&[-1, 2]).to_string(), "-1+2 z");
        for poly in [p(&[-11, 0, 9, 0, 1]), p(&[0, -1]), p(&[7]), p(&[1, -1, 0, -5])] {
            assert_eq!(IntPoly::parse_human(&poly.to_string()).unwrap(), poly);
        }
    }

    #[test]
    fn csv_roundtrip() {
        let q = IntPoly::parse_csv("-11,0,9,0,1").unwrap();
        assert_eq!(q, p(&[-11, 0, 9, 0, 1]));
        assert_eq!(q.to_csv(), "-11,0,9,0,1");
        assert!(IntPoly::parse_csv("1,x").is_err());
    }

    #[test]
    fn json_is_ascending_integer_list() {
        let q = p(&[-11, 0, 9, 0, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[-11,0,9,0,1]");
        let back: IntPoly = serde_json::from_str("[-11,0,9,0,1]").unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn resultant_linear_convention() {
        for (a, b) in [(3, 7), (-2, 5), (0, 0), (4, -4)] {
            assert_eq!(resultant(&p(&[-a, 1]), &p(&[-b, 1])), BigInt::from(a - b));
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(poly_discriminant(&p(&[15, 0, 1])), BigInt::from(-60));
        assert_eq!(poly_discriminant(&p(&[36, 0, 1])), BigInt::from(-144));
        assert_eq!(poly_discriminant(&p(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(poly_discriminant(&p(&[1, -3, 0, 1])), BigInt::from(81));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 1]).mul(&p(&[2, 0, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let sq = p(&[-1, 1]).pow(3).mul(&p(&[5, 1]));
        assert_eq!(sq.squarefree_part(), p(&[-1, 1]).mul(&p(&[5, 1])));
    }

    #[test]
    fn affine_image_moves_roots() {
        // roots of z^2 - 2 are ±√2; y = 2r + 1 has min poly y^2 - 2y - 7
        let q = p(&[-2, 0, 1]).affine_image(&BigRational::from_integer(2.into()), &BigRational::one());
        assert_eq!(q, p(&[-7, -2, 1]));
    }
}
