//! Classification of thin generalized triangle groups `(p,q;1/2,n)`.
//!
//! For each unordered pair `p ≤ q` and each `n`: take `γ = -2 - 2cos(π/n)`, require a
//! hyperbolic vertex triple `(p,p,n)` or `(q,q,n)`, form
//! `α = 8 cos(π/p) cos(π/q) √(4 sin²(π/p) sin²(π/q) + γ)`, keep it when `Q(α)` has exactly
//! one complex place, and record the minimal polynomial and field discriminant of `α`.

use crate::algebraic::{signature, two_cos, two_cos_min_poly, AlgebraicNumber};
use crate::criterion::GenOrder;
use crate::discriminant::field_discriminant;
use crate::error::{Error, Result};
use crate::farey::{farey_trace, GroupClass, GroupSymbol, Slope};
use crate::interval::{CInterval, RInterval};
use crate::poly::IntPoly;
use crate::precision::Precision;
use crate::sturm::{isolate_real_roots, refine_real_root, Bound, SturmChain};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// The committed table, one row per group.
pub const GOLDEN_CSV: &str = include_str!("../data/slope_half_55.csv");

/// One table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeHalfRow {
    pub index: usize,
    pub symbol: GroupSymbol,
    #[serde(with = "crate::serde_util::bigint")]
    pub field_disc: BigInt,
    pub min_poly: IntPoly,
}

/// Orders of a vertex triangle group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleTriple {
    pub a: GenOrder,
    pub b: GenOrder,
    pub c: GenOrder,
}

impl TriangleTriple {
    /// `1/a + 1/b + 1/c < 1`.
    pub fn is_hyperbolic(&self) -> bool {
        let inv = |o: GenOrder| match o {
            GenOrder::Finite(k) => BigRational::new(1.into(), k.into()),
            GenOrder::Infinite => BigRational::zero(),
        };
        inv(self.a) + inv(self.b) + inv(self.c) < BigRational::one()
    }
}

/// `γ = -2 - 2cos(π/n)`.
pub fn gamma_of_n(n: u32) -> Result<AlgebraicNumber> {
    if n < 2 {
        return Err(Error::Invalid(format!("relator power {n} must be at least 2")));
    }
    two_cos(1, n as u64)?.affine(&-BigRational::one(), &BigRational::from_integer((-2).into()))
}

/// Either vertex `(p,p,n)` or `(q,q,n)` is a hyperbolic triangle triple.
pub fn hyperfinite_vertex_check(p: u32, q: u32, n: u32) -> bool {
    let t = |x: u32| TriangleTriple { a: GenOrder::Finite(x), b: GenOrder::Finite(x), c: GenOrder::Finite(n) };
    t(p).is_hyperbolic() || t(q).is_hyperbolic()
}

fn check_orders(p: u32, q: u32, n: u32) -> Result<()> {
    if p < 3 || q < 3 {
        return Err(Error::Invalid(format!("generator orders ({p},{q}) must be at least 3")));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("relator power {n} must be at least 2")));
    }
    Ok(())
}

/// Enclosures of `cos(aπ/m)` for `0 < a < m`, `gcd(a, 2m) = 1`, from the roots of `Ψ_{2m}`.
fn cos_pi_table(m: u64, prec: u32) -> HashMap<u64, RInterval> {
    let psi = two_cos_min_poly(2 * m);
    let roots = isolate_real_roots(&psi);
    let res: Vec<u64> = (1..m).filter(|a| a.gcd(&(2 * m)) == 1).collect();
    let res = if m == 1 { vec![] } else { res };
    debug_assert_eq!(roots.len(), res.len().max(1));
    let len = roots.len();
    res.iter()
        .enumerate()
        .map(|(pos, &a)| {
            let r = refine_real_root(&psi, &roots[len - 1 - pos], prec + 8);
            (a, r.to_interval(prec + 8).mul_pow2(-1))
        })
        .collect()
}

fn cos_lookup(table: &HashMap<u64, RInterval>, k: u64, m: u64) -> RInterval {
    let b = k % (2 * m);
    let b = if b > m { 2 * m - b } else { b };
    table[&b].clone()
}

/// `(±k mod p, ±k mod q, ±k mod 2n)`: `α²(k)` depends only on this class.
fn class_key(k: u64, p: u64, q: u64, n: u64) -> (u64, u64, u64) {
    let f = |m: u64| {
        let r = k % m;
        r.min(m - r)
    };
    (f(p), f(q), f(2 * n))
}

/// Representatives `k ∈ (Z/M)^*`, `M = lcm(2p,2q,2n)`, one per class, identity first.
fn class_reps(p: u64, q: u64, n: u64) -> Vec<u64> {
    let m = (2 * p).lcm(&(2 * q)).lcm(&(2 * n));
    let mut seen = BTreeMap::new();
    let mut reps = Vec::new();
    for k in 1..m / 2 + 1 {
        if k.gcd(&m) != 1 {
            continue;
        }
        let key = class_key(k, p, q, n);
        if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
            e.insert(k);
            reps.push(k);
        }
    }
    reps
}

fn alpha_sq_f64(p: u64, q: u64, n: u64, k: u64) -> f64 {
    let pi = std::f64::consts::PI;
    let cp = (k as f64 * pi / p as f64).cos();
    let cq = (k as f64 * pi / q as f64).cos();
    let cn = (k as f64 * pi / n as f64).cos();
    let (cp2, cq2) = (cp * cp, cq * cq);
    64.0 * cp2 * cq2 * (4.0 * (1.0 - cp2) * (1.0 - cq2) - 2.0 - 2.0 * cn)
}

/// Enclosures of `α²` over the class representatives, identity first.
fn alpha_sq_orbit(p: u64, q: u64, n: u64, reps: &[u64], prec: u32) -> Vec<CInterval> {
    let (tp, tq, tn) = (cos_pi_table(p, prec), cos_pi_table(q, prec), cos_pi_table(n, prec));
    reps.iter()
        .map(|&k| {
            let cp2 = cos_lookup(&tp, k, p).sqr();
            let cq2 = cos_lookup(&tq, k, q).sqr();
            let cn = cos_lookup(&tn, k, n);
            let one = RInterval::one(prec);
            let sp2 = one.sub(&cp2);
            let sq2 = one.sub(&cq2);
            let inner = sp2.mul(&sq2).mul_pow2(2).sub(&RInterval::from_int(2, prec)).sub(&cn.mul_pow2(1));
            CInterval::real(cp2.mul(&cq2).mul(&inner).mul_pow2(6))
        })
        .collect()
}

/// Minimal polynomial of `α²` over the rationals.
pub fn alpha_sq_min_poly(p: u32, q: u32, n: u32) -> Result<IntPoly> {
    check_orders(p, q, n)?;
    let (p, q, n) = (p as u64, q as u64, n as u64);
    let reps = class_reps(p, q, n);
    Precision::from_env()?.escalate("minimal polynomial of α²", |prec| {
        crate::algebraic::min_poly_from_conjugate_boxes(&alpha_sq_orbit(p, q, n, &reps, prec))
    })
}

/// Every Galois image of `α²` other than the identity class is strictly positive and
/// the identity value is negative, i.e. `Q(α)` has exactly one complex place.
///
/// Decided in double precision with a rigorous margin; ties and near-zero values fall
/// back to exact root counting on the minimal polynomial of `α²`.
pub fn galois_positivity_filter(p: u32, q: u32, n: u32) -> Result<bool> {
    check_orders(p, q, n)?;
    const EPS: f64 = 1e-9;
    let (pu, qu, nu) = (p as u64, q as u64, n as u64);
    let reps = class_reps(pu, qu, nu);
    let vals: Vec<f64> = reps.iter().map(|&k| alpha_sq_f64(pu, qu, nu, k)).collect();
    let v1 = vals[0];
    let mut certain = v1.abs() > EPS;
    if certain && v1 > 0.0 {
        return Ok(false);
    }
    if certain {
        for &v in &vals[1..] {
            if (v - v1).abs() <= 2.0 * EPS || v.abs() <= EPS {
                certain = false;
                break;
            }
            if v < 0.0 {
                return Ok(false);
            }
        }
    }
    if certain {
        return Ok(true);
    }
    let m = alpha_sq_min_poly(p, q, n)?;
    if m.coeff(0).is_zero() {
        return Ok(false);
    }
    let negative = SturmChain::new(&m).count(&Bound::NegInf, &Bound::At(crate::dyadic::Dyadic::zero()));
    if negative != 1 {
        return Ok(false);
    }
    // the identity value must be the negative root
    let policy = Precision::from_env()?;
    policy.escalate("sign of α² at the identity", |prec| {
        let v = alpha_sq_orbit(pu, qu, nu, &reps[..1], prec).remove(0).re;
        Ok(v.sign().map(|s| s < 0))
    })
}

/// `α` with the principal branch of the square root.
pub fn alpha(p: u32, q: u32, n: u32) -> Result<AlgebraicNumber> {
    let m = alpha_sq_min_poly(p, q, n)?;
    if m == IntPoly::x() {
        return Err(Error::Invalid(format!("α vanishes for ({p},{q},{n})")));
    }
    let (pu, qu, nu) = (p as u64, q as u64, n as u64);
    let policy = Precision::from_env()?;
    AlgebraicNumber::locate(&m.even_lift(), &policy, |prec| {
        let tp = cos_pi_table(pu, prec);
        let tq = cos_pi_table(qu, prec);
        let c = cos_lookup(&tp, 1, pu).mul(&cos_lookup(&tq, 1, qu)).mul_pow2(3);
        let a2 = alpha_sq_orbit(pu, qu, nu, &[1], prec).remove(0);
        let a2 = a2.re.div(&cos_lookup(&tp, 1, pu).mul(&cos_lookup(&tq, 1, qu)).sqr().mul_pow2(6));
        let rad = a2.ok_or_else(|| Error::Other("degenerate cosine product".into()))?;
        let root = CInterval::real(rad).sqrt().ok_or_else(|| Error::Other("square-root branch undetermined".into()))?;
        Ok(root.mul_real(&c))
    })
}

/// Full row computation for one triple; `None` when the triple is not in the table.
pub fn slope_half_row(p: u32, q: u32, n: u32) -> Result<Option<SlopeHalfRow>> {
    check_orders(p, q, n)?;
    let (p, q) = (p.min(q), p.max(q));
    if !hyperfinite_vertex_check(p, q, n) || !galois_positivity_filter(p, q, n)? {
        return Ok(None);
    }
    let a = alpha(p, q, n).map_err(|e| name_triple(e, p, q, n))?;
    let mp = a.min_poly().clone();
    let sig = signature(&mp).map_err(|e| name_triple(e, p, q, n))?;
    if sig.complex_places != 1 {
        return Ok(None);
    }
    let disc = field_discriminant(&mp).map_err(|e| name_triple(e, p, q, n))?;
    Ok(Some(SlopeHalfRow {
        index: 0,
        symbol: GroupSymbol {
            p: GenOrder::Finite(p),
            q: GenOrder::Finite(q),
            slope: Slope::half(),
            n,
            index: 1,
            class: GroupClass::GeneralizedTriangle,
        },
        field_disc: disc,
        min_poly: mp,
    }))
}

fn name_triple(e: Error, p: u32, q: u32, n: u32) -> Error {
    Error::Other(format!("triple (p,q,n) = ({p},{q},{n}): {e}"))
}

/// All rows with `3 ≤ p ≤ q`, `p ≤ p_max`, `q ≤ q_max`, `2 ≤ n ≤ n_max`, sorted by
/// `(n, p, q)` and numbered from 1.
pub fn enumerate_slope_half(p_max: u32, q_max: u32, n_max: u32) -> Result<Vec<SlopeHalfRow>> {
    if p_max < 3 || q_max < 3 {
        return Err(Error::Invalid(format!("order bounds ({p_max},{q_max}) must be at least 3")));
    }
    if n_max < 2 {
        return Err(Error::Invalid(format!("relator bound {n_max} must be at least 2")));
    }
    let mut triples = Vec::new();
    for n in 2..=n_max {
        for p in 3..=p_max.max(q_max) {
            for q in p..=p_max.max(q_max) {
                // unordered pair: one of the two orders is bounded by p_max, the other by q_max
                if (p <= p_max && q <= q_max) || (q <= p_max && p <= q_max) {
                    triples.push((n, p, q));
                }
            }
        }
    }
    let found: Vec<Result<Option<SlopeHalfRow>>> =
        triples.par_iter().map(|&(n, p, q)| slope_half_row(p, q, n)).collect();
    let mut rows = Vec::new();
    for r in found {
        if let Some(row) = r? {
            rows.push(row);
        }
    }
    rows.sort_by_key(|r| (r.symbol.n, r.symbol.p, r.symbol.q));
    for (i, r) in rows.iter_mut().enumerate() {
        r.index = i + 1;
    }
    Ok(rows)
}

/// The row's `α` comes from `γ = -2 - 2cos(π/n)`, and the slope-1/2 Farey trace at that
/// `γ` is certified to equal `-2cos(π/n)`.
pub fn relator_consistency(row: &SlopeHalfRow) -> Result<bool> {
    let (p, q) = match (row.symbol.p, row.symbol.q) {
        (GenOrder::Finite(p), GenOrder::Finite(q)) => (p, q),
        _ => return Ok(false),
    };
    let n = row.symbol.n;
    if row.symbol.slope != Slope::half() || check_orders(p, q, n).is_err() {
        return Ok(false);
    }
    let a = alpha(p, q, n)?;
    if a.min_poly() != &row.min_poly {
        return Ok(false);
    }
    let gamma = gamma_of_n(n)?;
    let target = two_cos(1, n as u64)?.neg()?;
    // exact: F_{1/2}(γ) = γ + 2
    let f = gamma.affine(&BigRational::one(), &BigRational::from_integer(2.into()))?;
    if !f.same_value(&target)? {
        return Ok(false);
    }
    let prec = Precision::from_env()?.start;
    let tr = farey_trace(Slope::half(), GenOrder::Finite(p), GenOrder::Finite(q), &gamma, prec)?;
    Ok(tr.overlaps(&target.enclosure(prec)?))
}

#[derive(Debug, Deserialize, Serialize)]
struct CsvRecord {
    index: usize,
    symbol: String,
    field_discriminant: String,
    min_poly_string: String,
    min_poly_coeffs_json: String,
}

/// Write rows as CSV with columns
/// `index, symbol, field_discriminant, min_poly_string, min_poly_coeffs_json`.
pub fn write_csv<W: std::io::Write>(rows: &[SlopeHalfRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for r in rows {
        let coeffs: Vec<String> = r.min_poly.coeffs().iter().map(|c| c.to_string()).collect();
        w.serialize(CsvRecord {
            index: r.index,
            symbol: r.symbol.to_string(),
            field_discriminant: r.field_disc.to_string(),
            min_poly_string: r.min_poly.to_string(),
            min_poly_coeffs_json: format!("[{}]", coeffs.join(",")),
        })
        .map_err(|e| Error::Other(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Other(e.to_string()))?;
    Ok(())
}

/// Parse rows written by [`write_csv`]; the string and JSON polynomial columns must agree.
pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<SlopeHalfRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for rec in rd.deserialize::<CsvRecord>() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs: Vec<String> =
            serde_json::from_str::<Vec<serde_json::Value>>(&rec.min_poly_coeffs_json)
                .map_err(|e| Error::Parse(e.to_string()))?
                .iter()
                .map(|v| v.to_string())
                .collect();
        let poly = IntPoly::parse_csv(&coeffs.join(","))?;
        if IntPoly::parse_human(&rec.min_poly_string)? != poly {
            return Err(Error::Parse(format!("row {}: polynomial columns disagree", rec.index)));
        }
        rows.push(SlopeHalfRow {
            index: rec.index,
            symbol: rec.symbol.parse()?,
            field_disc: rec.field_discriminant.parse().map_err(|_| Error::Parse("bad discriminant".into()))?,
            min_poly: poly,
        });
    }
    Ok(rows)
}

/// The committed 55-row table.
pub fn golden_rows() -> Vec<SlopeHalfRow> {
    read_csv(GOLDEN_CSV.as_bytes()).expect("committed table parses")
}

/// Row-level differences between an expected and a computed table, compared by symbol
/// and then by position. Empty iff the tables agree.
pub fn diff_rows(expected: &[SlopeHalfRow], actual: &[SlopeHalfRow]) -> Vec<String> {
    let key = |r: &SlopeHalfRow| r.symbol.to_string();
    let exp: BTreeMap<String, &SlopeHalfRow> = expected.iter().map(|r| (key(r), r)).collect();
    let act: BTreeMap<String, &SlopeHalfRow> = actual.iter().map(|r| (key(r), r)).collect();
    let mut out = Vec::new();
    for r in expected {
        match act.get(&key(r)) {
            None => out.push(format!("- {} {} {}", r.symbol, r.field_disc, r.min_poly)),
            Some(a) if a.field_disc != r.field_disc || a.min_poly != r.min_poly => out.push(format!(
                "~ {}: expected {} {}, got {} {}",
                r.symbol, r.field_disc, r.min_poly, a.field_disc, a.min_poly
            )),
            _ => {}
        }
    }
    for r in actual {
        if !exp.contains_key(&key(r)) {
            out.push(format!("+ {} {} {}", r.symbol, r.field_disc, r.min_poly));
        }
    }
    if out.is_empty() {
        for (e, a) in expected.iter().zip(actual) {
            if e.index != a.index {
                out.push(format!("order: {} expected at {}, found at {}", e.symbol, e.index, a.index));
            }
        }
    }
    out
}
