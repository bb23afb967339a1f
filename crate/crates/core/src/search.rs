//! Bounded enumeration of candidate `γ` values and of parabolic parameters `ρ`.
//!
//! A candidate `γ` is a root of a monic irreducible integer polynomial with one pair of
//! complex conjugate roots (the upper one in a given box) and every other root real in
//! `(-B, 0)`. Coefficient ranges come from elementary symmetric functions of the root
//! ranges. Surviving points are run through the arithmeticity criterion, then through
//! sufficient free-product tests, then through the Farey relator search.

use crate::algebraic::{AlgebraicNumber, AlgebraicNumberView};
use crate::criterion::{check_arithmetic_subgroup, parabolic_check, CriterionReport, GammaCandidate, GenOrder};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::farey::{cos_sin, generator_matrices, relator_search, relator_search_parabolic, RelatorHit};
use crate::interval::{CInterval, RInterval, RationalInterval};
use crate::poly::IntPoly;
use crate::precision::Precision;
use crate::sturm::{Bound, SturmChain};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Where the roots of a candidate's minimal polynomial may lie.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRegion {
    /// Real part of the upper root of the complex pair.
    pub re: RationalInterval,
    /// Imaginary part of the upper root; values below zero are ignored.
    pub im: RationalInterval,
    /// Optional bound on the modulus of the pair.
    #[serde(default, with = "crate::serde_util::opt_rational")]
    pub max_modulus: Option<BigRational>,
    /// Real roots lie in `(-B, 0)`.
    #[serde(with = "crate::serde_util::rational")]
    pub real_bound: BigRational,
}

impl SearchRegion {
    /// A box for the complex root, real roots in `(-4, 0)`. Every real embedding allowed
    /// by the criterion lies there since `(1 - cos 2π/p)(1 - cos 2π/q) ≤ 4`.
    pub fn new(re: RationalInterval, im: RationalInterval) -> Self {
        SearchRegion { re, im, max_modulus: None, real_bound: BigRational::from_integer(4.into()) }
    }

    pub fn with_real_bound(mut self, b: BigRational) -> Self {
        self.real_bound = b;
        self
    }

    pub fn with_max_modulus(mut self, r: BigRational) -> Self {
        self.max_modulus = Some(r);
        self
    }

    fn im_upper(&self) -> RationalInterval {
        let lo = if self.im.lo.is_negative() { BigRational::zero() } else { self.im.lo.clone() };
        RationalInterval::new(lo, self.im.hi.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty() || self.im_upper().is_empty() || !self.real_bound.is_positive()
    }

    /// Range of `|z|²` over the box (and the modulus bound).
    fn norm_range(&self) -> RationalInterval {
        let sq = |r: &RationalInterval| {
            let (a, b) = (&r.lo * &r.lo, &r.hi * &r.hi);
            let hi = if a > b { a.clone() } else { b.clone() };
            let lo = if r.lo.is_negative() && r.hi.is_positive() {
                BigRational::zero()
            } else if a < b {
                a
            } else {
                b
            };
            RationalInterval::new(lo, hi)
        };
        let (x, y) = (sq(&self.re), sq(&self.im_upper()));
        let mut hi = &x.hi + &y.hi;
        if let Some(m) = &self.max_modulus {
            let m2 = m * m;
            if m2 < hi {
                hi = m2;
            }
        }
        RationalInterval::new(&x.lo + &y.lo, hi)
    }
}

/// Inclusive integer range, empty when `lo > hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRange {
    #[serde(with = "crate::serde_util::bigint")]
    pub lo: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    pub hi: BigInt,
}

impl CoeffRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> BigInt {
        if self.is_empty() {
            BigInt::zero()
        } else {
            &self.hi - &self.lo + 1
        }
    }
}

fn ri_add(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    RationalInterval::new(&a.lo + &b.lo, &a.hi + &b.hi)
}

fn ri_mul(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    let c = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = c.iter().min().unwrap().clone();
    let hi = c.iter().max().unwrap().clone();
    RationalInterval::new(lo, hi)
}

fn ri_point(x: BigRational) -> RationalInterval {
    RationalInterval::new(x.clone(), x)
}

/// Ranges of `a_0, …, a_{d-1}` for monic `z^d + a_{d-1}z^{d-1} + … + a_0` with one complex
/// pair in the region and `d - 2` real roots in `[-B, 0]`.
pub fn coefficient_bounds(degree: usize, region: &SearchRegion) -> Vec<CoeffRange> {
    assert!(degree >= 2, "degree below 2 has no complex pair");
    let empty = || vec![CoeffRange { lo: BigInt::one(), hi: BigInt::zero() }; degree];
    if region.is_empty() {
        return empty();
    }
    let nr = region.norm_range();
    if nr.is_empty() {
        return empty();
    }
    let two = BigRational::from_integer(2.into());
    // z² - s z + n with s = 2 re
    let s = RationalInterval::new(&region.re.lo * &two, &region.re.hi * &two);
    let mut poly = vec![nr, RationalInterval::new(-&s.hi, -&s.lo), ri_point(BigRational::one())];
    let minus_r = RationalInterval::new(BigRational::zero(), region.real_bound.clone());
    for _ in 0..degree - 2 {
        let mut next = vec![ri_point(BigRational::zero()); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = ri_add(&next[i + 1], c);
            next[i] = ri_add(&next[i], &ri_mul(c, &minus_r));
        }
        poly = next;
    }
    poly.pop();
    poly.iter().map(|c| CoeffRange { lo: c.lo.ceil().to_integer(), hi: c.hi.floor().to_integer() }).collect()
}

/// Ranges from the crude bound `|a_k| ≤ C(d,k) R^{d-k}`, `R` bounding every root.
fn unpruned_bounds(degree: usize, region: &SearchRegion) -> Vec<CoeffRange> {
    if region.is_empty() {
        return vec![CoeffRange { lo: BigInt::one(), hi: BigInt::zero() }; degree];
    }
    let nr = region.norm_range();
    let r2 = if nr.hi > &region.real_bound * &region.real_bound { nr.hi.clone() } else { &region.real_bound * &region.real_bound };
    // R = ceil(sqrt(r2))
    let mut r = BigInt::one();
    while BigRational::from_integer(&r * &r) < r2 {
        r += 1;
    }
    (0..degree)
        .map(|k| {
            let b = binomial(degree, k) * num_traits::pow(r.clone(), degree - k);
            CoeffRange { lo: -b.clone(), hi: b }
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

/// Limits and knobs for the scans.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Abort with [`Error::SearchOverflow`] above this many lattice points.
    pub max_points: u64,
    /// Farey slopes up to this denominator are searched; 0 skips the relator search.
    pub max_denominator: u64,
    pub tolerance: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_points: 10_000_000, max_denominator: 100, tolerance: 1e-9 }
    }
}

/// One scanned point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidatePoint {
    pub p: GenOrder,
    pub q: GenOrder,
    pub gamma: AlgebraicNumberView,
    /// The parabolic parameter, for two parabolic generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<AlgebraicNumberView>,
    pub report: CriterionReport,
    pub excluded_free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusion_test: Option<String>,
    pub relator_hits: Vec<RelatorHit>,
}

impl CandidatePoint {
    /// `excluded`, `relator` (a certified hit) or `open`.
    pub fn status(&self) -> &'static str {
        if self.excluded_free {
            "excluded"
        } else if self.relator_hits.iter().any(|h| h.certified) {
            "relator"
        } else {
            "open"
        }
    }
}

fn decode(mut idx: u64, ranges: &[CoeffRange]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(ranges.len() + 1);
    for r in ranges {
        let w = r.len().to_u64().unwrap();
        out.push(&r.lo + BigInt::from(idx % w));
        idx /= w;
    }
    out.push(BigInt::one());
    out
}

/// Roots of `p` in `(-B, 0)`, counted exactly (`B` rational).
fn real_roots_in(p: &IntPoly, b: &BigRational) -> usize {
    // r ∈ (-B, 0) iff z = -r/B ∈ (0, 1); q(z) = v^d p(-u z / v) for B = u/v
    let (u, v) = (b.numer().clone(), b.denom().clone());
    let d = p.degree();
    let coeffs: Vec<BigInt> = (0..=d)
        .map(|k| p.coeff(k) * num_traits::pow(-u.clone(), k) * num_traits::pow(v.clone(), d - k))
        .collect();
    let q = IntPoly::new(coeffs);
    let c = SturmChain::new(&q).count(&Bound::At(Dyadic::zero()), &Bound::At(Dyadic::one()));
    let at_one = !q.eval_int(&BigInt::one()).is_zero();
    c - usize::from(!at_one)
}

/// The exact layout predicate: squarefree, irreducible, `d - 2` real roots all in
/// `(-B, 0)`, upper complex root in the box. Returns that root.
fn layout_root(p: &IntPoly, region: &SearchRegion) -> Result<Option<AlgebraicNumber>> {
    let d = p.degree();
    if d < 2 || p.coeff(0).is_zero() || !p.is_squarefree() {
        return Ok(None);
    }
    let chain = SturmChain::new(p);
    if chain.count_all() != d - 2 || real_roots_in(p, &region.real_bound) != d - 2 {
        return Ok(None);
    }
    if !is_irreducible(p) {
        return Ok(None);
    }
    if d == 2 {
        // z = -a1/2 + i sqrt(a0 - a1²/4)
        let a1 = BigRational::from_integer(p.coeff(1));
        let re = -&a1 / BigRational::from_integer(2.into());
        let im2 = BigRational::from_integer(p.coeff(0)) - &re * &re;
        let im = region.im_upper();
        let in_box = region.re.contains(&re)
            && &im.lo * &im.lo <= im2
            && im2 <= &im.hi * &im.hi
            && region.max_modulus.as_ref().map_or(true, |m| BigRational::from_integer(p.coeff(0)) <= m * m);
        return upper_root(p, in_box);
    }
    let roots = AlgebraicNumber::roots_of(p, &Precision::default())?;
    let z = roots.into_iter().find(|r| !r.is_real() && r.to_f64().1 > 0.0).expect("one complex pair");
    let policy = Precision::from_env()?;
    let inside = policy.escalate(&format!("locating the complex root of {p} against the search box"), |prec| {
        let e = z.enclosure(prec)?;
        let im = region.im_upper();
        let re_r = region.re.to_interval(prec);
        let im_r = im.to_interval(prec);
        let mut verdicts = vec![side(&e.re, &re_r), side(&e.im, &im_r)];
        if let Some(m) = &region.max_modulus {
            let m2 = RInterval::from_rational(&(m * m), prec);
            verdicts.push(side(&e.norm_sqr(), &RInterval::new(Dyadic::zero(), m2.hi.clone(), prec)));
        }
        if verdicts.iter().any(|v| *v == Some(false)) {
            return Ok(Some(false));
        }
        if verdicts.iter().all(|v| *v == Some(true)) {
            return Ok(Some(true));
        }
        Ok(None)
    })?;
    Ok(if inside { Some(z) } else { None })
}

/// `Some(true)` if `x` is inside `[lo, hi]`, `Some(false)` if outside, `None` if unclear.
fn side(x: &RInterval, range: &RInterval) -> Option<bool> {
    if x.lo >= range.lo && x.hi <= range.hi {
        Some(true)
    } else if x.hi < range.lo || x.lo > range.hi {
        Some(false)
    } else {
        None
    }
}

fn upper_root(p: &IntPoly, keep: bool) -> Result<Option<AlgebraicNumber>> {
    if !keep {
        return Ok(None);
    }
    let roots = AlgebraicNumber::roots_of(p, &Precision::default())?;
    Ok(roots.into_iter().find(|r| r.to_f64().1 > 0.0))
}

fn lattice_scan(degree_max: usize, region: &SearchRegion, opts: &SearchOptions, pruned: bool) -> Result<Vec<(IntPoly, AlgebraicNumber)>> {
    if degree_max > 10 {
        return Err(Error::Invalid(format!("degree bound {degree_max} exceeds 10")));
    }
    let mut all = Vec::new();
    for d in 2..=degree_max {
        let ranges = if pruned { coefficient_bounds(d, region) } else { unpruned_bounds(d, region) };
        if ranges.iter().any(|r| r.is_empty()) {
            continue;
        }
        let total = ranges.iter().fold(BigInt::one(), |acc, r| acc * r.len());
        let total = match total.to_u64() {
            Some(t) if t <= opts.max_points => t,
            _ => {
                return Err(Error::SearchOverflow(format!(
                    "degree {d}: {total} coefficient vectors exceed the cap of {}",
                    opts.max_points
                )))
            }
        };
        let found: Vec<Result<Option<(IntPoly, AlgebraicNumber)>>> = (0..total)
            .into_par_iter()
            .map(|i| {
                let p = IntPoly::new(decode(i, &ranges));
                Ok(layout_root(&p, region)?.map(|z| (p, z)))
            })
            .collect();
        let mut v = Vec::new();
        for f in found {
            if let Some(x) = f? {
                v.push(x);
            }
        }
        v.sort_by(|a, b| a.0.coeffs().cmp(b.0.coeffs()));
        all.extend(v);
    }
    Ok(all)
}

/// Minimal polynomials in the region, pruned by [`coefficient_bounds`], ordered by degree
/// then coefficients. A reducible polynomial is skipped: the factor carrying its complex
/// pair has the same layout and is met at its own degree.
pub fn enumerate_gamma_polys(degree_max: usize, region: &SearchRegion, opts: &SearchOptions) -> Result<Vec<IntPoly>> {
    Ok(lattice_scan(degree_max, region, opts, true)?.into_iter().map(|x| x.0).collect())
}

/// As [`enumerate_gamma_polys`] over the full lattice `|a_k| ≤ C(d,k) R^{d-k}`.
pub fn enumerate_gamma_polys_unpruned(degree_max: usize, region: &SearchRegion, opts: &SearchOptions) -> Result<Vec<IntPoly>> {
    Ok(lattice_scan(degree_max, region, opts, false)?.into_iter().map(|x| x.0).collect())
}

fn finish_points(p: u32, q: u32, found: Vec<(IntPoly, AlgebraicNumber)>, opts: &SearchOptions) -> Result<Vec<CandidatePoint>> {
    let (po, qo) = (GenOrder::Finite(p), GenOrder::Finite(q));
    let pts: Vec<Result<Option<CandidatePoint>>> = found
        .into_par_iter()
        .map(|(_, gamma)| {
            let report = check_arithmetic_subgroup(&GammaCandidate { p: po, q: qo, gamma: gamma.clone() })?;
            if !report.all_pass {
                return Ok(None);
            }
            let excl = free_exclusion(po, qo, &gamma)?;
            let hits = if excl.is_none() && opts.max_denominator > 0 {
                relator_search(po, qo, &gamma, opts.max_denominator, opts.tolerance)?.hits
            } else {
                vec![]
            };
            Ok(Some(CandidatePoint {
                p: po,
                q: qo,
                gamma: gamma.view(),
                rho: None,
                report,
                excluded_free: excl.is_some(),
                exclusion_test: excl,
                relator_hits: hits,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for x in pts {
        if let Some(c) = x? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Candidate points for `Z_p * Z_q`: layout match, the arithmeticity criterion, free
/// exclusion and relator hits, ordered by degree then coefficients.
pub fn enumerate_gammas(p: u32, q: u32, degree_max: usize, region: &SearchRegion, opts: &SearchOptions) -> Result<Vec<CandidatePoint>> {
    check_pq(p, q)?;
    finish_points(p, q, lattice_scan(degree_max, region, opts, true)?, opts)
}

/// [`enumerate_gammas`] over the unpruned lattice; the two must agree.
pub fn enumerate_gammas_unpruned(
    p: u32,
    q: u32,
    degree_max: usize,
    region: &SearchRegion,
    opts: &SearchOptions,
) -> Result<Vec<CandidatePoint>> {
    check_pq(p, q)?;
    finish_points(p, q, lattice_scan(degree_max, region, opts, false)?, opts)
}

fn check_pq(p: u32, q: u32) -> Result<()> {
    if p < 2 || q < 2 {
        return Err(Error::Invalid(format!("generator orders ({p},{q}) must be at least 2")));
    }
    Ok(())
}

/// Name of a sufficient test proving `⟨f, g⟩ ≅ Z_p * Z_q` (so not a Heckoid group), or
/// `None` when no test fires.
///
/// * `parabolic |ρ| ≥ 4`: two parabolics with `|ρ| ≥ 4` generate a free group.
/// * `lune ping-pong`: the closed lune of angle `2π(1 - 1/p)` through the fixed points of
///   `f` (the complement of a fundamental domain of `⟨f⟩`) lies inside a fundamental
///   domain of `⟨g⟩`, after normalizing the two fixed-point pairs to `±1` and `±k`; Klein
///   combination then gives the free product. Fires when `|k| > cot(π/2p) cot(π/2q)`.
pub fn free_exclusion(p: GenOrder, q: GenOrder, gamma: &AlgebraicNumber) -> Result<Option<String>> {
    match (p, q) {
        (GenOrder::Infinite, GenOrder::Infinite) => {
            // |ρ|² = |γ|
            let prec = Precision::from_env()?.start;
            let e = gamma.enclosure(prec)?;
            let m = e.norm_sqr().sqrt().ok_or_else(|| Error::Other("modulus of γ".into()))?;
            Ok(if m.lo >= Dyadic::from_int(16) { Some("parabolic |ρ| ≥ 4".into()) } else { None })
        }
        (GenOrder::Finite(a), GenOrder::Finite(b)) if a.max(b) >= 3 => lune_ping_pong(a, b, gamma),
        _ => Ok(None),
    }
}

/// [`free_exclusion`] for the parabolic parameter `ρ` directly.
pub fn free_exclusion_parabolic(rho: &AlgebraicNumber) -> Result<Option<String>> {
    let prec = Precision::from_env()?.start;
    let m = rho.enclosure(prec)?.norm_sqr();
    Ok(if m.lo >= Dyadic::from_int(16) { Some("parabolic |ρ| ≥ 4".into()) } else { None })
}

/// `cot(π/2p) = (1 + cos π/p)/sin π/p`.
fn cot_half(p: u32, prec: u32) -> Result<Option<RInterval>> {
    let (c, s) = cos_sin(GenOrder::Finite(p), prec)?;
    Ok(RInterval::one(prec).add(&c).div(&s))
}

/// Normalize so the fixed points of `f` are `±1` and those of `g` are `±k`, `|k| ≥ 1`.
/// The big lune of `f` (angle `2π - 2π/p`, symmetric about `[-1, 1]`) lies in the disc of
/// radius `cot(π/2p)` about 0, and the thin lune of `g` (angle `2π/q`, symmetric about
/// `[-k, k]`) contains the disc of radius `|k| tan(π/2q)`. When the first disc is inside
/// the second, the complements of the two fundamental domains are disjoint.
fn lune_ping_pong(p: u32, q: u32, gamma: &AlgebraicNumber) -> Result<Option<String>> {
    let prec = Precision::from_env()?.start;
    let g = gamma.enclosure(prec + 32)?;
    let (f, gm) = match generator_matrices(GenOrder::Finite(p), GenOrder::Finite(q), &g, prec) {
        Ok(x) => x,
        Err(_) => return Ok(None),
    };
    let one = CInterval::one(prec);
    let (a, b, c, binv) = (&f.0[0], &gm.0[0], &gm.0[2], &gm.0[3]);
    // fixed points: f at ∞ and a/(1 - a²), g at 0 and (b - 1/b)/c
    let wf = match a.div(&one.sub(&a.mul(a))) {
        Some(w) => w,
        None => return Ok(None),
    };
    let wg = match b.sub(binv).div(c) {
        Some(w) => w,
        None => return Ok(None),
    };
    // cross ratio (∞, wf; 0, wg) = 1 - wg/wf = ((1 - k)/(1 + k))²
    let lam = match wg.div(&wf) {
        Some(x) => one.sub(&x),
        None => return Ok(None),
    };
    let s = match lam.sqrt() {
        Some(s) => s,
        None => return Ok(None),
    };
    let k = match one.sub(&s).abs().div(&one.add(&s).abs()) {
        Some(k) => k,
        None => return Ok(None),
    };
    let kmax = match RInterval::one(prec).div(&k) {
        Some(inv) if inv.lo > k.lo => inv.lo,
        _ => k.lo,
    };
    let bound = match (cot_half(p, prec)?, cot_half(q, prec)?) {
        (Some(x), Some(y)) => x.mul(&y).hi,
        _ => return Ok(None),
    };
    Ok((kmax > bound).then(|| "lune ping-pong".to_string()))
}

/// A box in the `ρ`-plane; only `ρ` with positive imaginary part are scanned (`ρ̄` gives
/// the complex-conjugate group).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoRegion {
    pub re: RationalInterval,
    pub im: RationalInterval,
}

impl Default for RhoRegion {
    /// `[-4, 4] × [-4, 4]`; beyond `|ρ| = 4` every group is free.
    fn default() -> Self {
        RhoRegion { re: RationalInterval::from_ints(-4, 4), im: RationalInterval::from_ints(-4, 4) }
    }
}

/// Monic `z² + b z + c` with a root in the region's upper half, `b² < 4c`.
fn parabolic_polys(region: &RhoRegion) -> Vec<IntPoly> {
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let b_lo = (-&region.re.hi * &two).ceil().to_integer();
    let b_hi = (-&region.re.lo * &two).floor().to_integer();
    let y_lo = if region.im.lo.is_negative() { BigRational::zero() } else { region.im.lo.clone() };
    let y_hi = region.im.hi.clone();
    let mut out = Vec::new();
    if y_hi <= BigRational::zero() || b_lo > b_hi {
        return out;
    }
    let mut b = b_lo;
    while b <= b_hi {
        let bq = BigRational::from_integer(b.clone());
        // im² = c - b²/4
        let base = &bq * &bq / &four;
        let c_lo = (&base + &y_lo * &y_lo).ceil().to_integer();
        let c_hi = (&base + &y_hi * &y_hi).floor().to_integer();
        let mut c = c_lo;
        while c <= c_hi {
            if BigRational::from_integer(c.clone()) > base {
                out.push(IntPoly::new(vec![c.clone(), b.clone(), BigInt::one()]));
            }
            c += 1;
        }
        b += 1;
    }
    out
}

/// Imaginary quadratic integers `ρ` in the region (upper half), with the parabolic
/// criterion, the `|ρ| ≥ 4` exclusion and exactly certified relator hits. With
/// `symmetry_reduce`, `ρ` and `-ρ̄` (the image of `-ρ` in the upper half) are identified
/// and the one with nonnegative real part is kept.
pub fn parabolic_scan(region: &RhoRegion, symmetry_reduce: bool, opts: &SearchOptions) -> Result<Vec<CandidatePoint>> {
    let mut polys = parabolic_polys(region);
    if symmetry_reduce {
        // -ρ̄ is a root of z² - b z + c; keep b ≤ 0 (Re ρ ≥ 0)
        polys.retain(|p| !p.coeff(1).is_positive());
    }
    polys.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    let pts: Vec<Result<CandidatePoint>> = polys
        .par_iter()
        .map(|p| {
            let rho = upper_root(p, true)?.expect("non-real root");
            let report = parabolic_check(&rho)?;
            let excl = free_exclusion_parabolic(&rho)?;
            let hits = if excl.is_none() && opts.max_denominator > 0 {
                relator_search_parabolic(&rho, opts.max_denominator, opts.tolerance)?.hits
            } else {
                vec![]
            };
            let k = crate::field::NumberField::new(rho.clone());
            let gamma = k.to_algebraic(&k.pow(&k.gen_elem(), 2))?;
            Ok(CandidatePoint {
                p: GenOrder::Infinite,
                q: GenOrder::Infinite,
                gamma: gamma.view(),
                rho: Some(rho.view()),
                report,
                excluded_free: excl.is_some(),
                exclusion_test: excl,
                relator_hits: hits,
            })
        })
        .collect();
    pts.into_iter().collect()
}

/// One JSON object per line.
pub fn write_jsonl<W: std::io::Write>(points: &[CandidatePoint], mut out: W) -> Result<()> {
    for p in points {
        let line = serde_json::to_string(p).map_err(|e| Error::Other(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::Other(e.to_string()))?;
    }
    Ok(())
}

pub fn read_jsonl<R: std::io::BufRead>(input: R) -> Result<Vec<CandidatePoint>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?);
    }
    Ok(out)
}

/// Point-cloud row for plotting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudRow {
    pub re: f64,
    pub im: f64,
    pub degree: usize,
    pub status: String,
}

/// CSV with columns `re, im, degree, status`; the plotted coordinate is `ρ` for parabolic
/// scans and `γ` otherwise.
pub fn write_point_cloud<W: std::io::Write>(points: &[CandidatePoint], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for p in points {
        let v = p.rho.as_ref().unwrap_or(&p.gamma);
        w.serialize(CloudRow { re: v.re, im: v.im, degree: v.min_poly.degree(), status: p.status().into() })
            .map_err(|e| Error::Other(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Other(e.to_string()))?;
    Ok(())
}

pub fn read_point_cloud<R: std::io::Read>(input: R) -> Result<Vec<CloudRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::q;

    fn ri(a: i64, b: i64) -> RationalInterval {
        RationalInterval::from_ints(a, b)
    }

    #[test]
    fn quadratic_bounds() {
        let r = SearchRegion::new(ri(-2, 2), ri(-2, 2)).with_max_modulus(q(2, 1));
        let b = coefficient_bounds(2, &r);
        assert_eq!((b[1].lo.clone(), b[1].hi.clone()), (BigInt::from(-4), BigInt::from(4)));
        assert_eq!((b[0].lo.clone(), b[0].hi.clone()), (BigInt::from(0), BigInt::from(4)));
        let e = SearchRegion::new(ri(1, 0), ri(0, 1));
        assert!(coefficient_bounds(2, &e).iter().all(|c| c.is_empty()));
    }

    #[test]
    fn real_root_window() {
        // (z+1)(z+3): one root in (-2, 0)
        let p = IntPoly::from_i64s(&[3, 4, 1]);
        assert_eq!(real_roots_in(&p, &q(2, 1)), 1);
        assert_eq!(real_roots_in(&p, &q(3, 1)), 1);
        assert_eq!(real_roots_in(&p, &q(7, 2)), 2);
    }

    #[test]
    fn small_box_scan() {
        let r = SearchRegion::new(RationalInterval::new(q(-2, 1), q(-1, 1)), RationalInterval::new(q(0, 1), q(3, 2)))
            .with_real_bound(q(1, 1));
        let opts = SearchOptions { max_denominator: 0, ..Default::default() };
        let a = enumerate_gamma_polys(3, &r, &opts).unwrap();
        let b = enumerate_gamma_polys_unpruned(3, &r, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&IntPoly::from_i64s(&[3, 3, 1])));
    }

    #[test]
    fn parabolic_exclusion() {
        let five = AlgebraicNumber::from_int(5);
        assert!(free_exclusion_parabolic(&five).unwrap().is_some());
        let rho = upper_root(&IntPoly::from_i64s(&[2, -1, 1]), true).unwrap().unwrap();
        assert!(free_exclusion_parabolic(&rho).unwrap().is_none());
    }

    #[test]
    fn far_box_is_excluded() {
        let r = RhoRegion {
            re: RationalInterval::new(q(19, 2), q(21, 2)),
            im: RationalInterval::new(q(19, 2), q(21, 2)),
        };
        let pts = parabolic_scan(&r, false, &SearchOptions::default()).unwrap();
        assert!(!pts.is_empty() && pts.iter().all(|p| p.excluded_free));
    }
}
