//! Sturm chains, exact real-root counting and isolation.

use crate::dyadic::{Dyadic, Round};
use crate::interval::RInterval;
use crate::poly::IntPoly;
use num_traits::Signed;

/// Sturm sequence of an integer polynomial, kept primitive to limit coefficient growth.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

/// Endpoint for root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Dyadic),
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut polys = vec![p.primitive_part(), p.derivative().primitive_part()];
        if polys[1].is_zero() {
            polys.pop();
            return SturmChain { polys };
        }
        loop {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let delta = a.degree() - b.degree();
            let mut r = a.pseudo_rem(b);
            // pseudo_rem scales by lead(b)^(delta+1); undo a negative multiplier's sign
            let flips = b.lead().is_negative() && delta % 2 == 0;
            if !flips {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            polys.push(r.primitive_part());
        }
        SturmChain { polys }
    }

    fn changes(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut n = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    fn variations(&self, b: &Bound) -> usize {
        match b {
            Bound::PosInf => SturmChain::changes(self.polys.iter().map(|p| p.lead().signum().try_into().unwrap_or(0))),
            Bound::NegInf => SturmChain::changes(self.polys.iter().map(|p| {
                let s: i32 = p.lead().signum().try_into().unwrap_or(0);
                if p.degree() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })),
            Bound::At(x) => SturmChain::changes(self.polys.iter().map(|p| p.sign_at(x))),
        }
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let a = self.variations(lo);
        let b = self.variations(hi);
        a.saturating_sub(b)
    }

    pub fn count_all(&self) -> usize {
        self.count(&Bound::NegInf, &Bound::PosInf)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]` (or on the whole line).
pub fn sturm_real_roots(p: &IntPoly, lo: &Bound, hi: &Bound) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    SturmChain::new(p).count(lo, hi)
}

/// An isolated real root: either exact (`lo == hi`) or strictly inside `(lo, hi)` with
/// `p(lo)·p(hi) < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn to_interval(&self, prec: u32) -> RInterval {
        RInterval::new(self.lo.round(prec, Round::Down), self.hi.round(prec, Round::Up), prec)
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }
}

/// Isolate every distinct real root of a squarefree polynomial, ascending.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<RealRoot> {
    if p.degree() == 0 {
        return vec![];
    }
    let chain = SturmChain::new(p);
    let m = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-&m, m.clone())];
    while let Some((a, b)) = stack.pop() {
        let c = chain.count(&Bound::At(a.clone()), &Bound::At(b.clone()));
        if c == 0 {
            continue;
        }
        let sa = p.sign_at(&a);
        let sb = p.sign_at(&b);
        if c == 1 && sb == 0 {
            out.push(RealRoot { lo: b.clone(), hi: b });
            continue;
        }
        if c == 1 && sa != 0 {
            out.push(RealRoot { lo: a, hi: b });
            continue;
        }
        let mid = (&a + &b).mul_pow2(-1);
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Shrink an isolating interval until its width is at most `2^(e - prec)` where `2^e`
/// bounds the root's magnitude (absolute width `2^-prec` near zero).
pub fn refine_real_root(p: &IntPoly, r: &RealRoot, prec: u32) -> RealRoot {
    if r.is_exact() {
        return r.clone();
    }
    let mag = Dyadic::max(&r.lo.abs(), &r.hi.abs());
    let e = mag.log2_floor().unwrap_or(0).max(0) + 1;
    let target = Dyadic::pow2(e - prec as i64);
    let dp = p.derivative();
    let (mut a, mut b) = (r.lo.clone(), r.hi.clone());
    let sa = p.sign_at(&a);
    let mut stalled = 0u32;
    while &b - &a > target {
        // Newton proposal from the midpoint, verified by a sign change around it.
        if stalled < 3 {
            let w = &b - &a;
            let wbits = -w.log2_floor().unwrap_or(0);
            let work = (2 * wbits + 16).clamp(64, 2 * prec as i64 + 64) as u32;
            let m = (&a + &b).mul_pow2(-1);
            let fm = p.eval_dyadic(&m);
            if fm.is_zero() {
                return RealRoot { lo: m.clone(), hi: m };
            }
            let dm = dp.eval_dyadic(&m);
            if !dm.is_zero() {
                let step = fm.div(&dm, work, Round::Nearest);
                let x = (&m - &step).round(work, Round::Nearest);
                let h = Dyadic::max(&w.mul_pow2(-(wbits.min(work as i64 / 2) + 2)), &target.mul_pow2(-1));
                let (l, u) = (&x - &h, &x + &h);
                if l > a && u < b {
                    let sl = p.sign_at(&l);
                    let su = p.sign_at(&u);
                    if sl == 0 {
                        return RealRoot { lo: l.clone(), hi: l };
                    }
                    if su == 0 {
                        return RealRoot { lo: u.clone(), hi: u };
                    }
                    if sl == sa && su != sa {
                        a = l;
                        b = u;
                        continue;
                    }
                }
            }
            stalled += 1;
        }
        for _ in 0..4 {
            let m = (&a + &b).mul_pow2(-1);
            let sm = p.sign_at(&m);
            if sm == 0 {
                return RealRoot { lo: m.clone(), hi: m };
            }
            if sm == sa {
                a = m;
            } else {
                b = m;
            }
        }
        stalled = stalled.saturating_sub(1);
    }
    RealRoot { lo: a, hi: b }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn counts_from_examples() {
        let all = |q: &IntPoly| sturm_real_roots(q, &Bound::NegInf, &Bound::PosInf);
        assert_eq!(all(&p(&[15, 0, 1])), 0);
        assert_eq!(all(&p(&[-11, 0, 9, 0, 1])), 2);
        assert_eq!(sturm_real_roots(&p(&[-1, 1]), &Bound::At(Dyadic::zero()), &Bound::At(Dyadic::from_int(2))), 1);
    }

    #[test]
    fn isolation_and_refinement() {
        let q = p(&[-2, 0, 1]);
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), 2);
        let r = refine_real_root(&q, &roots[1], 200);
        assert!(r.width() <= Dyadic::pow2(-196));
        let lo2 = &r.lo * &r.lo;
        let hi2 = &r.hi * &r.hi;
        assert!(lo2 < Dyadic::from_int(2) && hi2 > Dyadic::from_int(2));
    }

    #[test]
    fn exact_dyadic_roots_are_found() {
        let q = p(&[0, -1, 0, 4]); // 4x^3 - x = x(2x-1)(2x+1)
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|r| r.is_exact() && r.lo == Dyadic::zero()));
    }
}
