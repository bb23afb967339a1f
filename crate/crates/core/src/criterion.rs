//! The arithmeticity criterion for two-generator groups with elliptic or parabolic
//! generators, decided exactly from the commutator parameter `γ = tr[f,g] - 2`.
//!
//! For elliptic generators of orders `p`, `q` the group is a subgroup of an arithmetic
//! Kleinian group when
//!
//! 1. `γ` is an algebraic integer,
//! 2. `Q(γ)` contains `L = Q(cos 2π/p, cos 2π/q)` and has exactly one complex place,
//! 3. every real embedding `τ` of `Q(γ)` satisfies `-σ(4 sin²π/p sin²π/q) < τ(γ) < 0`,
//!    where `σ` is the embedding of `L` that `τ` restricts to,
//! 4. the Fricke quadratic splits over `Q(γ)`.

use crate::algebraic::{signature, trig_value, AlgebraicNumber, NumberFieldSignature, TrigKind};
use crate::discriminant::field_discriminant;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::interval::RInterval;
use crate::precision::Precision;
use crate::serde_util::rational_to_string;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Order of a generator: finite (elliptic) or parabolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenOrder {
    Finite(u32),
    Infinite,
}

impl GenOrder {
    pub fn finite(&self) -> Option<u32> {
        match self {
            GenOrder::Finite(n) => Some(*n),
            GenOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GenOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenOrder::Finite(n) => write!(f, "{n}"),
            GenOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for GenOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(GenOrder::Infinite),
            t => {
                let n: u32 = t.parse().map_err(|_| Error::Parse(format!("bad order {t:?}")))?;
                if n < 2 {
                    return Err(Error::Invalid(format!("order {n} is below 2")));
                }
                Ok(GenOrder::Finite(n))
            }
        }
    }
}

impl Serialize for GenOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GenOrder::Finite(n) => s.serialize_u32(*n),
            GenOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for GenOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum R {
            N(u32),
            S(String),
        }
        match R::deserialize(d)? {
            R::N(n) => Ok(GenOrder::Finite(n)),
            R::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A group `⟨f, g⟩` named by the generator orders and `γ`.
#[derive(Clone, Debug)]
pub struct GammaCandidate {
    pub p: GenOrder,
    pub q: GenOrder,
    pub gamma: AlgebraicNumber,
}

/// Outcome of one strict comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Undetermined,
}

/// Condition 3 at one real embedding: the enclosure of `τ(γ)` and of the lower bound
/// `-σ(4 sin²π/p sin²π/q)`, rational endpoints as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingMargin {
    pub embedding: usize,
    pub value: [String; 2],
    pub lower_bound: [String; 2],
    pub verdict: Verdict,
}

/// Per-condition verdicts plus the invariants of `Q(γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub integrality: bool,
    pub field_contains_l: bool,
    pub signature_ok: bool,
    pub embedding_bounds_ok: bool,
    pub embedding_margins: Vec<EmbeddingMargin>,
    pub fricke_splits: bool,
    pub field_degree: usize,
    pub field_signature: NumberFieldSignature,
    #[serde(with = "crate::serde_util::opt_bigint")]
    pub field_discriminant: Option<BigInt>,
    pub all_pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn finish(mut self) -> Self {
        self.all_pass = self.integrality
            && self.field_contains_l
            && self.signature_ok
            && self.embedding_bounds_ok
            && self.fricke_splits;
        self
    }
}

/// Coefficients of `x² - b x + c` as elements of `Q(γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrickeQuadratic {
    pub b: FieldElement,
    pub c: FieldElement,
}

impl FrickeQuadratic {
    /// `b² - 4c`.
    pub fn discriminant(&self, k: &NumberField) -> FieldElement {
        k.sub(&k.mul(&self.b, &self.b), &k.scale(&self.c, &BigRational::from_integer(4.into())))
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `cos(2π/p)` expressed in `Q(γ)`, if it lies there.
fn cos_two_pi_over(k: &NumberField, p: u32, policy: &Precision) -> Result<Option<FieldElement>> {
    let c = trig_value(TrigKind::Cos, 2, p as u64)?;
    k.membership(&c, policy)
}

struct TrigCoords {
    cp: FieldElement,
    cq: FieldElement,
}

impl TrigCoords {
    fn cos_sq(k: &NumberField, c: &FieldElement) -> FieldElement {
        k.scale(&k.add(&k.int(1), c), &half())
    }

    fn sin_sq(k: &NumberField, c: &FieldElement) -> FieldElement {
        k.scale(&k.sub(&k.int(1), c), &half())
    }
}

fn trig_coords(k: &NumberField, p: u32, q: u32, policy: &Precision) -> Result<Option<TrigCoords>> {
    let cp = match cos_two_pi_over(k, p, policy)? {
        Some(c) => c,
        None => return Ok(None),
    };
    let cq = match cos_two_pi_over(k, q, policy)? {
        Some(c) => c,
        None => return Ok(None),
    };
    Ok(Some(TrigCoords { cp, cq }))
}

fn fricke_from(k: &NumberField, t: &TrigCoords) -> FrickeQuadratic {
    let cp2 = TrigCoords::cos_sq(k, &t.cp);
    let cq2 = TrigCoords::cos_sq(k, &t.cq);
    let sp2 = TrigCoords::sin_sq(k, &t.cp);
    let b = k.scale(&k.mul(&cp2, &cq2), &BigRational::from_integer(16.into()));
    let four = BigRational::from_integer(4.into());
    // 4cos²(π/q) - 4sin²(π/p) - γ
    let inner = k.sub(&k.sub(&k.scale(&cq2, &four), &k.scale(&sp2, &four)), &k.gen_elem());
    let c = k.mul(&b, &inner);
    FrickeQuadratic { b, c }
}

/// The quadratic `x² - 16cos²(π/p)cos²(π/q) x + 16cos²(π/p)cos²(π/q)(4cos²(π/q) - 4sin²(π/p) - γ)`
/// over `Q(γ)`. Its discriminant is `64cos²(π/p)cos²(π/q)(4sin²(π/p)sin²(π/q) + γ)`.
pub fn fricke_quadratic(p: u32, q: u32, gamma: &AlgebraicNumber) -> Result<FrickeQuadratic> {
    let policy = Precision::from_env()?;
    let k = NumberField::new(gamma.clone());
    let t = trig_coords(&k, p, q, &policy)?
        .ok_or_else(|| Error::Invalid(format!("Q(γ) does not contain cos 2π/{p} and cos 2π/{q}")))?;
    Ok(fricke_from(&k, &t))
}

fn bracket(x: &RInterval) -> [String; 2] {
    [rational_to_string(&x.lo.to_rational()), rational_to_string(&x.hi.to_rational())]
}

fn margins(k: &NumberField, t: &TrigCoords, policy: &Precision) -> Result<Vec<EmbeddingMargin>> {
    let one = k.int(1);
    // 4 sin²(π/p) sin²(π/q) = (1 - cos 2π/p)(1 - cos 2π/q)
    let bound = k.mul(&k.sub(&one, &t.cp), &k.sub(&one, &t.cq));
    let boundary = k.add(&k.gen_elem(), &bound).0.is_zero();
    let mut out: Option<Vec<EmbeddingMargin>> = None;
    for prec in policy.levels() {
        let emb = match k.embeddings(prec)? {
            Some(e) => e,
            None => continue,
        };
        let mut v = Vec::new();
        let mut settled = true;
        for (i, b) in emb.boxes.iter().enumerate() {
            if !emb.is_real(i) {
                continue;
            }
            let tau = b.re.clone();
            let lower = bound.0.eval_interval(&tau).neg();
            let upper_ok = tau.is_negative();
            let upper_bad = tau.lo.signum() >= 0;
            let diff = tau.sub(&lower);
            let verdict = if boundary {
                Verdict::Undetermined
            } else if upper_bad || diff.hi.signum() <= 0 {
                Verdict::Fail
            } else if upper_ok && diff.is_positive() {
                Verdict::Pass
            } else {
                settled = false;
                Verdict::Undetermined
            };
            v.push(EmbeddingMargin { embedding: i, value: bracket(&tau), lower_bound: bracket(&lower), verdict });
        }
        out = Some(v);
        if settled {
            break;
        }
    }
    out.ok_or_else(|| Error::Precision { cap: policy.cap, what: "separating embeddings".into() })
}

/// Condition 3 at every real embedding of `Q(γ)`.
pub fn embedding_bounds_check(p: u32, q: u32, gamma: &AlgebraicNumber) -> Result<Vec<EmbeddingMargin>> {
    let policy = Precision::from_env()?;
    let k = NumberField::new(gamma.clone());
    let t = trig_coords(&k, p, q, &policy)?
        .ok_or_else(|| Error::Invalid(format!("Q(γ) does not contain cos 2π/{p} and cos 2π/{q}")))?;
    margins(&k, &t, &policy)
}

/// Decide conditions 1–4 for elliptic generators and a non-real `γ`.
pub fn check_arithmetic_subgroup(cand: &GammaCandidate) -> Result<CriterionReport> {
    check_arithmetic_subgroup_with(cand, &Precision::from_env()?)
}

pub fn check_arithmetic_subgroup_with(cand: &GammaCandidate, policy: &Precision) -> Result<CriterionReport> {
    let (p, q) = match (cand.p, cand.q) {
        (GenOrder::Finite(p), GenOrder::Finite(q)) => (p, q),
        _ => return Err(Error::Invalid("parabolic generators: use parabolic_check".into())),
    };
    if cand.gamma.is_real() {
        return Err(Error::RealGamma(format!(
            "γ = {} is real; the criterion applies to non-real γ (see the slope-1/2 pipeline)",
            cand.gamma
        )));
    }
    let gamma = &cand.gamma;
    let k = NumberField::new(gamma.clone());
    let sig = signature(gamma.min_poly())?;
    let mut notes = Vec::new();
    let fd = match field_discriminant(gamma.min_poly()) {
        Ok(d) => Some(d),
        Err(e) => {
            notes.push(format!("field discriminant unresolved: {e}"));
            None
        }
    };
    let t = trig_coords(&k, p, q, policy)?;
    let (bounds_ok, margins_v, splits) = match &t {
        Some(t) => {
            let m = margins(&k, t, policy)?;
            let ok = m.iter().all(|x| x.verdict == Verdict::Pass);
            let fr = fricke_from(&k, t);
            let splits = k.sqrt(&fr.discriminant(&k), policy)?.is_some();
            (ok, m, splits)
        }
        None => {
            notes.push("conditions 3 and 4 need L ⊂ Q(γ)".into());
            (false, vec![], false)
        }
    };
    Ok(CriterionReport {
        integrality: gamma.is_algebraic_integer(),
        field_contains_l: t.is_some(),
        signature_ok: sig.complex_places == 1,
        embedding_bounds_ok: bounds_ok,
        embedding_margins: margins_v,
        fricke_splits: splits,
        field_degree: sig.degree,
        field_signature: sig,
        field_discriminant: fd,
        all_pass: false,
        notes,
    }
    .finish())
}

/// Criterion for two parabolic generators `[[1,1],[0,1]]`, `[[1,0],[ρ,1]]` with
/// `γ = ρ²`: `γ` must be an algebraic integer and the trace field `Q(ρ)` imaginary
/// quadratic. The invariants of `Q(γ)` are reported alongside in the notes.
pub fn parabolic_check(rho: &AlgebraicNumber) -> Result<CriterionReport> {
    let k = NumberField::new(rho.clone());
    let g = k.pow(&k.gen_elem(), 2);
    let gamma = k.to_algebraic(&g)?;
    let sig = signature(rho.min_poly())?;
    let mut notes = Vec::new();
    let gsig = signature(gamma.min_poly())?;
    notes.push(format!(
        "Q(γ): γ = ρ² has minimal polynomial {}, degree {}, {} real and {} complex places",
        gamma.min_poly(),
        gsig.degree,
        gsig.real_places,
        gsig.complex_places
    ));
    let fd = match field_discriminant(rho.min_poly()) {
        Ok(d) => Some(d),
        Err(e) => {
            notes.push(format!("field discriminant unresolved: {e}"));
            None
        }
    };
    let imag_quadratic = sig.degree == 2 && sig.complex_places == 1;
    Ok(CriterionReport {
        integrality: gamma.is_algebraic_integer(),
        field_contains_l: true,
        signature_ok: imag_quadratic,
        embedding_bounds_ok: true,
        embedding_margins: vec![],
        fricke_splits: true,
        field_degree: sig.degree,
        field_signature: sig,
        field_discriminant: fd,
        all_pass: false,
        notes,
    }
    .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::q;
    use crate::poly::IntPoly;

    fn root(c: &[i64], k: usize) -> AlgebraicNumber {
        AlgebraicNumber::roots_of(&IntPoly::from_i64s(c), &Precision::default()).unwrap().remove(k)
    }

    #[test]
    fn fricke_rational_cases() {
        let g = AlgebraicNumber::from_int(-3);
        let f = fricke_quadratic(3, 3, &g).unwrap();
        assert_eq!(f.b.as_rational(), Some(q(1, 1)));
        assert_eq!(f.c.as_rational(), Some(q(1, 1)));
        let g = AlgebraicNumber::from_int(-2);
        let f = fricke_quadratic(3, 6, &g).unwrap();
        assert_eq!(f.b.as_rational(), Some(q(3, 1)));
        // 3·(3 - 3 + 2) = 6, discriminant 9 - 24 = -15 = α²
        assert_eq!(f.c.as_rational(), Some(q(6, 1)));
    }

    #[test]
    fn fricke_discriminant_is_alpha_squared() {
        // p = q = 6, so L = Q; γ = -2 - √3
        let g = root(&[1, 4, 1], 0);
        let f = fricke_quadratic(6, 6, &g).unwrap();
        let k = NumberField::new(g.clone());
        let d = f.discriminant(&k);
        // 64·(9/16)·(4·(1/16) + γ) = 36·(1/4 + γ)
        let want = k.scale(&k.add(&k.rational(q(1, 4)), &k.gen_elem()), &q(36, 1));
        assert_eq!(d, want);
    }

    #[test]
    fn cyclotomic_gamma_report() {
        // γ a root of z²+z+1, p = q = 3
        let g = root(&[1, 1, 1], 1);
        let cand = GammaCandidate { p: GenOrder::Finite(3), q: GenOrder::Finite(3), gamma: g };
        let r = check_arithmetic_subgroup(&cand).unwrap();
        assert!(r.integrality && r.field_contains_l && r.signature_ok && r.embedding_bounds_ok);
        assert_eq!(r.field_discriminant, Some(BigInt::from(-3)));
    }

    #[test]
    fn real_and_non_integral_gamma() {
        let cand = GammaCandidate { p: GenOrder::Finite(3), q: GenOrder::Finite(3), gamma: AlgebraicNumber::from_int(1) };
        assert!(matches!(check_arithmetic_subgroup(&cand), Err(Error::RealGamma(_))));
        let g = root(&[1, 1, 2], 1);
        let cand = GammaCandidate { p: GenOrder::Finite(3), q: GenOrder::Finite(3), gamma: g };
        assert!(!check_arithmetic_subgroup(&cand).unwrap().integrality);
    }

    #[test]
    fn embedding_bounds_on_cubics() {
        // z³+z+1: real embedding ≈ -0.682 lies in (-9/4, 0)
        let m = embedding_bounds_check(3, 3, &root(&[1, 1, 0, 1], 2)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].verdict, Verdict::Pass);
        // z³-z-1: real embedding ≈ 1.3247 is positive
        let m = embedding_bounds_check(3, 3, &root(&[-1, -1, 0, 1], 2)).unwrap();
        assert_eq!(m[0].verdict, Verdict::Fail);
        // z³+3z²+3: real embedding ≈ -3.28 is below -9/4
        let m = embedding_bounds_check(3, 3, &root(&[3, 0, 3, 1], 2)).unwrap();
        assert_eq!(m[0].verdict, Verdict::Fail);
    }

    #[test]
    fn parabolic_points() {
        let r7 = root(&[2, -1, 1], 1);
        let rep = parabolic_check(&r7).unwrap();
        assert!(rep.all_pass);
        assert_eq!(rep.field_discriminant, Some(BigInt::from(-7)));
        let r2 = root(&[2, 0, 1], 1);
        assert!(parabolic_check(&r2).unwrap().all_pass);
        let half = AlgebraicNumber::from_rational(&q(1, 2));
        assert!(!parabolic_check(&half).unwrap().all_pass);
    }
}
