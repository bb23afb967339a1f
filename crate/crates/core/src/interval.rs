//! Real and complex interval arithmetic over dyadic endpoints with outward rounding.

use crate::dyadic::{Dyadic, Round};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Closed real interval `[lo, hi]`. Results of arithmetic are rounded outward to
/// the larger working precision of the operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub prec: u32,
}

impl RInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        RInterval { lo, hi, prec }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        RInterval { lo: x.clone(), hi: x, prec }
    }

    pub fn zero(prec: u32) -> Self {
        RInterval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        RInterval::point(Dyadic::one(), prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        RInterval::point(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        RInterval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &RInterval) -> RInterval {
        RInterval {
            lo: Dyadic::min(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn with_prec(&self, prec: u32) -> RInterval {
        RInterval { lo: self.lo.round(prec, Round::Down), hi: self.hi.round(prec, Round::Up), prec }
    }

    fn out(lo: Dyadic, hi: Dyadic, prec: u32) -> RInterval {
        RInterval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Certified sign: `Some(±1)` when the interval excludes zero, `Some(0)` for the
    /// exact point zero, `None` otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn overlaps(&self, other: &RInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `self < other` certainly.
    pub fn lt(&self, other: &RInterval) -> bool {
        self.hi < other.lo
    }

    pub fn neg(&self) -> RInterval {
        RInterval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn abs(&self) -> RInterval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let m = Dyadic::max(&self.lo.abs(), &self.hi);
            RInterval { lo: Dyadic::zero(), hi: m, prec: self.prec }
        }
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    pub fn add(&self, o: &RInterval) -> RInterval {
        RInterval::out(&self.lo + &o.lo, &self.hi + &o.hi, self.prec.max(o.prec))
    }

    pub fn sub(&self, o: &RInterval) -> RInterval {
        RInterval::out(&self.lo - &o.hi, &self.hi - &o.lo, self.prec.max(o.prec))
    }

    pub fn mul(&self, o: &RInterval) -> RInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RInterval::out(lo, hi, self.prec.max(o.prec))
    }

    pub fn sqr(&self) -> RInterval {
        let a = self.abs();
        RInterval::out(&a.lo * &a.lo, &a.hi * &a.hi, self.prec)
    }

    pub fn scale_int(&self, k: &BigInt) -> RInterval {
        self.mul(&RInterval::from_int(k.clone(), self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> RInterval {
        RInterval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), prec: self.prec }
    }

    /// Division; `None` when the divisor contains zero.
    pub fn div(&self, o: &RInterval) -> Option<RInterval> {
        if o.contains_zero() {
            return None;
        }
        let p = self.prec.max(o.prec);
        let inv_lo = Dyadic::one().div(&o.hi, p + 8, Round::Down);
        let inv_hi = Dyadic::one().div(&o.lo, p + 8, Round::Up);
        let inv = RInterval { lo: inv_lo, hi: inv_hi, prec: p + 8 };
        Some(self.mul(&inv).with_prec(p))
    }

    /// Square root of the nonnegative part; `None` if the interval is entirely negative.
    pub fn sqrt(&self) -> Option<RInterval> {
        if self.hi.signum() < 0 {
            return None;
        }
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(self.prec, Round::Down)
        };
        let hi = self.hi.sqrt(self.prec, Round::Up);
        Some(RInterval { lo, hi, prec: self.prec })
    }

    pub fn powi(&self, k: u32) -> RInterval {
        let mut acc = RInterval::one(self.prec);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The unique integer within a quarter of every point of the interval, if any.
    pub fn nearest_integer(&self) -> Option<BigInt> {
        let n = self.mid().round_to_exp(0, Round::Nearest).floor();
        let nd = Dyadic::from_int(n.clone());
        let quarter = Dyadic::pow2(-2);
        if &(&nd - &quarter) < &self.lo && &self.hi < &(&nd + &quarter) {
            Some(n)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInterval {
    pub re: RInterval,
    pub im: RInterval,
}

impl CInterval {
    pub fn new(re: RInterval, im: RInterval) -> Self {
        CInterval { re, im }
    }

    pub fn real(re: RInterval) -> Self {
        let p = re.prec;
        CInterval { re, im: RInterval::zero(p) }
    }

    pub fn zero(prec: u32) -> Self {
        CInterval::real(RInterval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        CInterval::real(RInterval::one(prec))
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        CInterval::real(RInterval::from_int(v, prec))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        CInterval::real(RInterval::from_rational(q, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        CInterval {
            re: RInterval::point(Dyadic::from_f64(re), prec),
            im: RInterval::point(Dyadic::from_f64(im), prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec.max(self.im.prec)
    }

    pub fn with_prec(&self, prec: u32) -> CInterval {
        CInterval { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &CInterval) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn hull(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.hull(&o.re), im: self.im.hull(&o.im) }
    }

    pub fn conj(&self) -> CInterval {
        CInterval { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> CInterval {
        CInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &CInterval) -> CInterval {
        if self.is_real() && o.is_real() {
            return CInterval::real(self.re.mul(&o.re));
        }
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CInterval { re, im }
    }

    pub fn mul_real(&self, r: &RInterval) -> CInterval {
        CInterval { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn scale_int(&self, k: &BigInt) -> CInterval {
        CInterval { re: self.re.scale_int(k), im: self.im.scale_int(k) }
    }

    pub fn mul_pow2(&self, k: i64) -> CInterval {
        CInterval { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> CInterval {
        CInterval { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn norm_sqr(&self) -> RInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Upper bound for |z|.
    pub fn abs_upper(&self) -> Dyadic {
        self.norm_sqr().sqrt().unwrap().hi
    }

    /// Enclosure of |z|.
    pub fn abs(&self) -> RInterval {
        self.norm_sqr().sqrt().unwrap()
    }

    pub fn inv(&self) -> Option<CInterval> {
        if self.is_real() {
            return RInterval::one(self.prec()).div(&self.re).map(CInterval::real);
        }
        let n = self.norm_sqr();
        let re = self.re.div(&n)?;
        let im = self.im.neg().div(&n)?;
        Some(CInterval { re, im })
    }

    pub fn div(&self, o: &CInterval) -> Option<CInterval> {
        Some(self.mul(&o.inv()?))
    }

    pub fn powi(&self, k: u32) -> CInterval {
        let mut acc = CInterval::one(self.prec());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Square root with a fixed branch: principal off the negative real axis, and
    /// `i·sqrt(|x|)` on it. `None` when the box is too wide to decide the branch.
    pub fn sqrt(&self) -> Option<CInterval> {
        let prec = self.prec();
        if self.is_real() {
            if self.re.lo.signum() >= 0 {
                return Some(CInterval::real(self.re.sqrt()?));
            }
            if self.re.hi.signum() <= 0 {
                let s = self.re.neg().sqrt()?;
                return Some(CInterval { re: RInterval::zero(prec), im: s });
            }
            return Some(CInterval::disc_hull(self.abs_upper().sqrt(prec, Round::Up), prec));
        }
        let r = self.abs();
        if self.re.is_positive() {
            let u = r.add(&self.re).mul_pow2(-1).sqrt()?;
            let v = self.im.div(&u.mul_pow2(1))?;
            return Some(CInterval { re: u, im: v });
        }
        if self.im.is_positive() || self.im.is_negative() {
            let u = r.add(&self.re).mul_pow2(-1).sqrt()?;
            let w = r.sub(&self.re).mul_pow2(-1).sqrt()?;
            let v = if self.im.is_positive() { w } else { w.neg() };
            return Some(CInterval { re: u, im: v });
        }
        if self.contains_zero() {
            return Some(CInterval::disc_hull(self.abs_upper().sqrt(prec, Round::Up), prec));
        }
        None
    }

    fn disc_hull(r: Dyadic, prec: u32) -> CInterval {
        let iv = RInterval::new(-&r, r, prec);
        CInterval { re: iv.clone(), im: iv }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Largest side length.
    pub fn width(&self) -> Dyadic {
        Dyadic::max(&self.re.width(), &self.im.width())
    }
}

impl fmt::Display for CInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "{a:+.12e}{b:+.12e}i")
    }
}

/// Interval with exact rational endpoints, used for search regions and margins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "crate::serde_util::rational")]
    pub lo: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        RationalInterval { lo, hi }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        RationalInterval { lo: BigRational::from_integer(lo.into()), hi: BigRational::from_integer(hi.into()) }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_interval(&self, prec: u32) -> RInterval {
        RInterval::new(
            Dyadic::from_rational(&self.lo, prec, Round::Down),
            Dyadic::from_rational(&self.hi, prec, Round::Up),
            prec,
        )
    }

    pub fn unit() -> Self {
        RationalInterval { lo: BigRational::zero(), hi: BigRational::one() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(a: i64, b: i64) -> RInterval {
        RInterval::new(Dyadic::from_int(a), Dyadic::from_int(b), 64)
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let p = ri(-2, 3).mul(&ri(-5, 1));
        assert_eq!(p.lo, Dyadic::from_int(-15));
        assert_eq!(p.hi, Dyadic::from_int(10));
    }

    #[test]
    fn nearest_integer_requires_tight_box() {
        let x = RInterval::from_rational(&BigRational::new(7.into(), 2.into()), 64);
        assert_eq!(x.nearest_integer(), None);
        assert_eq!(ri(5, 5).nearest_integer(), Some(5.into()));
    }

    #[test]
    fn complex_sqrt_branches() {
        let m = CInterval::from_int(-15, 128);
        let s = m.sqrt().unwrap();
        assert!(s.re.contains_zero());
        let sq = s.mul(&s);
        assert!(sq.re.contains(&Dyadic::from_int(-15)) || sq.re.overlaps(&ri(-15, -15)));
        let z = CInterval::from_f64(-3.0, 4.0, 128);
        let r = z.sqrt().unwrap();
        assert!(r.re.contains(&Dyadic::one()) || r.re.overlaps(&ri(1, 1)));
        assert!(r.im.overlaps(&ri(2, 2)));
    }
}
