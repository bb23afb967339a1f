//! Arithmetic in `Q(γ) = Q[x]/(m_γ)` and the two exact field questions the criterion
//! needs: is `θ` in `Q(γ)`, and is `D` a square there.
//!
//! Both are decided the same way. A candidate element `c(γ)` is pinned down by its
//! values at every embedding, so we enumerate the admissible ways of assigning values
//! to embeddings, interpolate with interval arithmetic, round the scaled coordinates
//! to integers and then verify the resulting polynomial identity exactly.

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::interval::CInterval;
use crate::poly::{poly_discriminant, IntPoly, QPoly};
use crate::precision::Precision;
use crate::roots::{isolate_root_boxes, RootBox};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Embeddings of a number field at a fixed working precision.
#[derive(Clone, Debug)]
pub struct Embeddings {
    /// Root boxes of the defining polynomial, canonical order.
    pub boxes: Vec<CInterval>,
    /// Position of the distinguished root.
    pub identity: usize,
    /// Index of the complex-conjugate embedding (itself for real ones).
    pub partner: Vec<usize>,
}

impl Embeddings {
    pub fn is_real(&self, i: usize) -> bool {
        self.partner[i] == i
    }

    fn from_boxes(boxes: Vec<RootBox>, target: &CInterval) -> Option<Embeddings> {
        let hits: Vec<usize> = (0..boxes.len()).filter(|&i| boxes[i].enclosure.overlaps(target)).collect();
        if hits.len() != 1 {
            return None;
        }
        let encl: Vec<CInterval> = boxes.into_iter().map(|b| b.enclosure).collect();
        let partner = (0..encl.len())
            .map(|i| {
                if encl[i].is_real() {
                    i
                } else {
                    let c = encl[i].conj();
                    (0..encl.len()).find(|&j| encl[j] == c).expect("conjugate boxes are mirrored")
                }
            })
            .collect();
        Some(Embeddings { boxes: encl, identity: hits[0], partner })
    }
}

/// The field generated by an algebraic number, with elements stored as rational
/// polynomials of degree below the field degree.
#[derive(Clone, Debug)]
pub struct NumberField {
    gen: AlgebraicNumber,
    modulus: QPoly,
}

/// An element of a [`NumberField`] in the power basis of the generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(pub QPoly);

impl FieldElement {
    pub fn coords(&self) -> &QPoly {
        &self.0
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.0.degree() == 0 {
            Some(self.0.coeff(0))
        } else {
            None
        }
    }
}

impl NumberField {
    pub fn new(gen: AlgebraicNumber) -> Self {
        let modulus = gen.min_poly().to_q().monic();
        NumberField { gen, modulus }
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.gen
    }

    pub fn degree(&self) -> usize {
        self.gen.degree()
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn reduce(&self, p: &QPoly) -> FieldElement {
        FieldElement(p.rem(&self.modulus))
    }

    pub fn rational(&self, q: BigRational) -> FieldElement {
        FieldElement(QPoly::constant(q))
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.rational(BigRational::from_integer(n.into()))
    }

    pub fn gen_elem(&self) -> FieldElement {
        self.reduce(&QPoly::x())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.add(&b.0))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.sub(&b.0))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.neg())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(&a.0.mul(&b.0))
    }

    pub fn scale(&self, a: &FieldElement, k: &BigRational) -> FieldElement {
        FieldElement(a.0.scale(k))
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.0.is_zero() {
            return None;
        }
        let (g, s, _) = a.0.xgcd(&self.modulus);
        debug_assert!(g.degree() == 0);
        Some(self.reduce(&s))
    }

    pub fn pow(&self, a: &FieldElement, k: u32) -> FieldElement {
        let mut acc = self.int(1);
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Value at the embedding whose generator value lies in `z`.
    pub fn eval(&self, a: &FieldElement, z: &CInterval) -> CInterval {
        a.0.eval_complex(z)
    }

    /// All embeddings at the given precision; `None` when not yet separated.
    pub fn embeddings(&self, prec: u32) -> Result<Option<Embeddings>> {
        let boxes = match isolate_root_boxes(self.gen.min_poly(), prec)? {
            Some(b) => b,
            None => return Ok(None),
        };
        let target = self.gen.enclosure(prec)?;
        Ok(Embeddings::from_boxes(boxes, &target))
    }

    /// Embeddings under the precision policy.
    pub fn embeddings_at_least(&self, policy: &Precision) -> Result<(u32, Embeddings)> {
        policy.escalate("separating embeddings", |prec| Ok(self.embeddings(prec)?.map(|e| (prec, e))))
    }

    /// Characteristic polynomial of multiplication by `a` (Faddeev–LeVerrier, exact).
    pub fn char_poly(&self, a: &FieldElement) -> QPoly {
        let d = self.degree();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for j in 0..d {
            let col = self.reduce(&a.0.mul(&QPoly::x().pow_q(j)));
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.0.coeff(i);
            }
        }
        let matmul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
            let mut r = vec![vec![BigRational::zero(); d]; d];
            for i in 0..d {
                for k in 0..d {
                    if x[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        r[i][j] += &x[i][k] * &y[k][j];
                    }
                }
            }
            r
        };
        let mut c = vec![BigRational::zero(); d + 1];
        c[d] = BigRational::one();
        let mut mk = vec![vec![BigRational::zero(); d]; d];
        for k in 1..=d {
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &c[d - k + 1];
            }
            let am = matmul(&m, &mk);
            let tr: BigRational = (0..d).map(|i| am[i][i].clone()).sum();
            c[d - k] = -tr / BigRational::from_integer(BigInt::from(k));
            mk = am;
        }
        QPoly::new(c)
    }

    /// Minimal polynomial of an element, exactly.
    pub fn elem_min_poly(&self, a: &FieldElement) -> IntPoly {
        let cp = self.char_poly(a).to_primitive_int();
        cp.squarefree_part().normalized()
    }

    /// The element as a standalone algebraic number.
    pub fn to_algebraic(&self, a: &FieldElement) -> Result<AlgebraicNumber> {
        if let Some(q) = a.as_rational() {
            return Ok(AlgebraicNumber::from_rational(&q));
        }
        let p = self.elem_min_poly(a);
        AlgebraicNumber::locate(&p, &Precision::default(), |prec| Ok(self.eval(a, &self.gen.enclosure(prec + 32)?)))
    }

    /// Integral scale: `lc·γ` is an algebraic integer with monic minimal polynomial `m'`.
    fn integral_data(&self) -> (BigInt, IntPoly) {
        let m = self.gen.min_poly();
        let lc = m.lead();
        let d = m.degree();
        // m'(y) = lc^(d-1) m(y/lc)
        let mut c: Vec<BigInt> = (0..d).map(|i| m.coeff(i) * num_traits::pow(lc.clone(), d - 1 - i)).collect();
        c.push(BigInt::one());
        (lc, IntPoly::new(c))
    }

    /// Search for `c` with `c(γ_i) = values[assign[i]]` at every embedding, rounded and
    /// checked by `accept`. Returns `Ok(None)` when precision was insufficient.
    #[allow(clippy::too_many_arguments)]
    fn interpolate_search(
        &self,
        emb: &Embeddings,
        prec: u32,
        scale: &BigInt,
        choices: &dyn Fn(usize, &[usize]) -> Vec<usize>,
        values: &[CInterval],
        accept: &mut dyn FnMut(&FieldElement) -> bool,
    ) -> Result<Option<Option<FieldElement>>> {
        let (lc, _) = self.integral_data();
        let lc_i = CInterval::from_int(lc.clone(), prec);
        let xs: Vec<CInterval> = emb.boxes.iter().map(|b| b.mul(&lc_i)).collect();
        let d = xs.len();
        let mut order: Vec<usize> = vec![emb.identity];
        order.extend((0..d).filter(|&i| i != emb.identity));
        let mut assign = vec![usize::MAX; d];
        let mut ambiguous = false;
        let mut found = None;
        self.dfs(&order, 0, &mut assign, choices, &mut |assign| {
            let ys: Vec<CInterval> = assign.iter().map(|&k| values[k].clone()).collect();
            match round_interpolant(&xs, &ys, scale, prec) {
                Rounded::Ambiguous => {
                    ambiguous = true;
                    false
                }
                Rounded::Reject => false,
                Rounded::Coeffs(b) => {
                    // c(x) = Σ b_i (lc·x)^i / scale
                    let lcq = BigRational::from_integer(lc.clone());
                    let sc = BigRational::from_integer(scale.clone());
                    let mut pw = BigRational::one();
                    let mut cs = Vec::with_capacity(b.len());
                    for bi in &b {
                        cs.push(BigRational::from_integer(bi.clone()) * &pw / &sc);
                        pw *= &lcq;
                    }
                    let e = self.reduce(&QPoly::new(cs));
                    if accept(&e) {
                        found = Some(e);
                        true
                    } else {
                        false
                    }
                }
            }
        });
        if found.is_some() {
            return Ok(Some(found));
        }
        Ok(if ambiguous { None } else { Some(None) })
    }

    fn dfs(
        &self,
        order: &[usize],
        k: usize,
        assign: &mut Vec<usize>,
        choices: &dyn Fn(usize, &[usize]) -> Vec<usize>,
        leaf: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == order.len() {
            return leaf(assign);
        }
        let i = order[k];
        for c in choices(i, assign) {
            assign[i] = c;
            if self.dfs(order, k + 1, assign, choices, leaf) {
                return true;
            }
        }
        assign[i] = usize::MAX;
        false
    }

    /// Coordinates of `θ` in the power basis of `γ` when `θ ∈ Q(γ)`.
    pub fn membership(&self, theta: &AlgebraicNumber, policy: &Precision) -> Result<Option<FieldElement>> {
        if let Some(q) = theta.as_rational() {
            return Ok(Some(self.rational(q)));
        }
        let d = self.degree();
        let e = theta.degree();
        if d % e != 0 {
            return Ok(None);
        }
        let (_, mprime) = self.integral_data();
        let scale = poly_discriminant(&mprime).abs() * theta.min_poly().lead();
        let start = policy.start.max(scale.bits() as u32 + 64).min(policy.cap);
        let policy = Precision::new(start, policy.cap)?;
        let fiber = d / e;
        let mt = theta.min_poly().to_q();
        policy.escalate("field membership", |prec| {
            let emb = match self.embeddings(prec)? {
                Some(e) => e,
                None => return Ok(None),
            };
            let tb = match isolate_root_boxes(theta.min_poly(), prec)? {
                Some(b) => b,
                None => return Ok(None),
            };
            let tvals: Vec<CInterval> = tb.iter().map(|b| b.enclosure.clone()).collect();
            let tself = theta.enclosure(prec)?;
            let hits: Vec<usize> = (0..e).filter(|&k| tvals[k].overlaps(&tself)).collect();
            if hits.len() != 1 {
                return Ok(None);
            }
            let tid = hits[0];
            let tpartner: Vec<usize> = (0..e)
                .map(|k| {
                    if tvals[k].is_real() {
                        k
                    } else {
                        let c = tvals[k].conj();
                        (0..e).find(|&j| tvals[j] == c).unwrap_or(k)
                    }
                })
                .collect();
            let choices = |i: usize, assign: &[usize]| -> Vec<usize> {
                if i == emb.identity {
                    return vec![tid];
                }
                let p = emb.partner[i];
                if p != i && assign[p] != usize::MAX {
                    return vec![tpartner[assign[p]]];
                }
                (0..e)
                    .filter(|&k| !emb.is_real(i) || tpartner[k] == k)
                    .filter(|&k| {
                        let used = |t: usize| assign.iter().filter(|&&a| a == t).count();
                        if p == i {
                            used(k) < fiber
                        } else if tpartner[k] == k {
                            used(k) + 2 <= fiber
                        } else {
                            used(k) < fiber && used(tpartner[k]) < fiber
                        }
                    })
                    .collect()
            };
            let mut accept = |c: &FieldElement| {
                let img = self.reduce(&mt.compose(&c.0));
                if !img.0.is_zero() {
                    return false;
                }
                let v = self.eval(c, &emb.boxes[emb.identity]);
                (0..e).filter(|&k| tvals[k].overlaps(&v)).collect::<Vec<_>>() == vec![tid]
            };
            self.interpolate_search(&emb, prec, &scale, &choices, &tvals, &mut accept)
        })
    }

    /// A square root of `a` inside the field, if one exists.
    pub fn sqrt(&self, a: &FieldElement, policy: &Precision) -> Result<Option<FieldElement>> {
        if a.0.is_zero() {
            return Ok(Some(a.clone()));
        }
        if let Some(q) = a.as_rational() {
            if let (Some(n), Some(dd)) = (exact_sqrt(q.numer()), exact_sqrt(q.denom())) {
                return Ok(Some(self.rational(BigRational::new(n, dd))));
            }
        }
        let (_, mprime) = self.integral_data();
        // L·a is integral in the scaled basis, so disc(m')·L·sqrt(a) has integer coordinates
        let lc = self.gen.min_poly().lead();
        let mut l = a.0.denominator();
        let d = self.degree();
        l *= num_traits::pow(lc.clone(), d.saturating_sub(1));
        let scale = poly_discriminant(&mprime).abs() * &l;
        let start = policy.start.max(scale.bits() as u32 + 64).min(policy.cap);
        let policy = Precision::new(start, policy.cap)?;
        policy.escalate("square root in a number field", |prec| {
            let emb = match self.embeddings(prec)? {
                Some(e) => e,
                None => return Ok(None),
            };
            let mut vals = Vec::with_capacity(2 * d);
            for (i, b) in emb.boxes.iter().enumerate() {
                let v = self.eval(a, b);
                if emb.is_real(i) && v.re.is_negative() {
                    return Ok(Some(None));
                }
                let s = match v.sqrt() {
                    Some(s) => s,
                    None => return Ok(None),
                };
                if s.contains_zero() {
                    return Ok(None);
                }
                vals.push(s.clone());
                vals.push(s.neg());
            }
            // value index 2i is +sqrt at embedding i, 2i+1 is -sqrt
            let choices = |i: usize, assign: &[usize]| -> Vec<usize> {
                if i == emb.identity {
                    return vec![2 * i];
                }
                let p = emb.partner[i];
                if p != i && assign[p] != usize::MAX {
                    // conj(s(γ_p)) = s(γ_i); pick the sign of the mirrored branch
                    let want = vals[assign[p]].conj();
                    return if vals[2 * i].overlaps(&want) { vec![2 * i] } else { vec![2 * i + 1] };
                }
                vec![2 * i, 2 * i + 1]
            };
            let mut accept = |c: &FieldElement| self.sub(&self.mul(c, c), a).0.is_zero();
            self.interpolate_search(&emb, prec, &scale, &choices, &vals, &mut accept)
        })
    }
}

enum Rounded {
    Coeffs(Vec<BigInt>),
    Reject,
    Ambiguous,
}

/// Newton interpolation through `(x_i, y_i)`; coefficients of `scale·c(x)` rounded.
fn round_interpolant(xs: &[CInterval], ys: &[CInterval], scale: &BigInt, prec: u32) -> Rounded {
    let n = xs.len();
    let mut dd: Vec<CInterval> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            match num.div(&xs[i].sub(&xs[i - j])) {
                Some(v) => dd[i] = v,
                None => return Rounded::Ambiguous,
            }
        }
    }
    let mut poly: Vec<CInterval> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly·(x - x_i) + dd[i]
        let mut next = vec![CInterval::zero(prec); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(&xs[i]));
        }
        next[0] = next[0].add(&dd[i]);
        poly = next;
    }
    let sc = CInterval::from_int(scale.clone(), prec);
    let quarter = crate::dyadic::Dyadic::pow2(-2);
    let mut out = Vec::with_capacity(n);
    for c in poly {
        let v = c.mul(&sc);
        if v.re.width() >= quarter || v.im.width() >= quarter {
            return Rounded::Ambiguous;
        }
        if !v.im.contains_zero() {
            return Rounded::Reject;
        }
        match v.re.nearest_integer() {
            Some(k) if v.re.contains(&crate::dyadic::Dyadic::from_int(k.clone())) => out.push(k),
            _ => return Rounded::Reject,
        }
    }
    Rounded::Coeffs(out)
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// `θ ∈ Q(γ)`: coordinates of `θ` in the power basis of `γ`, if present.
pub fn membership(theta: &AlgebraicNumber, gamma: &AlgebraicNumber) -> Result<Option<FieldElement>> {
    NumberField::new(gamma.clone()).membership(theta, &Precision::from_env()?)
}

/// `√D` as an element of `Q(γ)` when `z² - D` splits there; an error when `D ∉ Q(γ)`.
pub fn is_square_in_field(d: &AlgebraicNumber, gamma: &AlgebraicNumber) -> Result<Option<AlgebraicNumber>> {
    let policy = Precision::from_env()?;
    let k = NumberField::new(gamma.clone());
    let e = k
        .membership(d, &policy)?
        .ok_or_else(|| Error::Invalid(format!("{d} is not in the field of {gamma}")))?;
    match k.sqrt(&e, &policy)? {
        Some(s) => Ok(Some(k.to_algebraic(&s)?)),
        None => Ok(None),
    }
}

trait PowQ {
    fn pow_q(&self, k: usize) -> QPoly;
}

impl PowQ for QPoly {
    fn pow_q(&self, k: usize) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{q, trig_value, TrigKind};

    fn root(c: &[i64], k: usize) -> AlgebraicNumber {
        let p = IntPoly::from_i64s(c);
        AlgebraicNumber::roots_of(&p, &Precision::default()).unwrap().remove(k)
    }

    #[test]
    fn rational_membership() {
        let g = root(&[15, 0, 1], 1);
        let th = trig_value(TrigKind::Cos, 2, 3).unwrap();
        let c = membership(&th, &g).unwrap().unwrap();
        assert_eq!(c.as_rational(), Some(q(-1, 2)));
    }

    #[test]
    fn sqrt5_in_quartic() {
        let g = root(&[-11, 0, 9, 0, 1], 3);
        let s5 = AlgebraicNumber::real_root(&IntPoly::from_i64s(&[-5, 0, 1]), 1).unwrap();
        let c = membership(&s5, &g).unwrap().expect("√5 lies in Q(γ)");
        // 2γ² + 9 = ±5√5
        let k = NumberField::new(g.clone());
        let lhs = k.add(&k.scale(&k.pow(&k.gen_elem(), 2), &q(2, 1)), &k.int(9));
        let rhs = k.scale(&c, &q(5, 1));
        assert!(lhs == rhs || lhs == k.neg(&rhs));
        let sq = is_square_in_field(&AlgebraicNumber::from_int(5), &g).unwrap();
        assert!(sq.is_some());
    }

    #[test]
    fn absent_members() {
        let g = root(&[15, 0, 1], 1);
        let s2 = AlgebraicNumber::real_root(&IntPoly::from_i64s(&[-2, 0, 1]), 1).unwrap();
        assert!(membership(&s2, &g).unwrap().is_none());
        assert!(is_square_in_field(&AlgebraicNumber::from_int(2), &g).unwrap().is_none());
        assert_eq!(is_square_in_field(&AlgebraicNumber::from_int(4), &g).unwrap().unwrap().as_rational(), Some(q(2, 1)));
        assert!(is_square_in_field(&AlgebraicNumber::from_int(-15), &g).unwrap().is_some());
    }

    #[test]
    fn min_poly_of_element() {
        let g = root(&[-11, 0, 9, 0, 1], 3);
        let k = NumberField::new(g);
        let sq = k.pow(&k.gen_elem(), 2);
        assert_eq!(k.elem_min_poly(&sq), IntPoly::from_i64s(&[-11, 9, 1]));
        let inv = k.inv(&k.gen_elem()).unwrap();
        assert_eq!(k.mul(&inv, &k.gen_elem()), k.int(1));
    }
}
