use heckoid::algebraic::{signature, AlgebraicNumber};
use heckoid::criterion::{check_arithmetic_subgroup, check_arithmetic_subgroup_with, GammaCandidate, GenOrder, Verdict};
use heckoid::factor::is_irreducible;
use heckoid::field::{FieldElement, NumberField};
use heckoid::poly::{IntPoly, QPoly};
use heckoid::precision::Precision;
use heckoid::roots::aberth_f64;
use heckoid::slope_half::golden_rows;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn policy() -> Precision {
    Precision::new(128, 4096).unwrap()
}

fn upper_root(p: &IntPoly) -> Option<AlgebraicNumber> {
    if p.degree() < 2 || !is_irreducible(p) {
        return None;
    }
    AlgebraicNumber::roots_of(p, &policy()).ok()?.into_iter().find(|a| a.to_f64().1 > 0.0)
}

fn monic(d: std::ops::RangeInclusive<usize>, c: i64) -> impl Strategy<Value = IntPoly> {
    d.prop_flat_map(move |d| {
        prop::collection::vec(-c..=c, d).prop_map(|mut v| {
            v.push(1);
            IntPoly::from_i64s(&v)
        })
    })
}

/// A non-real `γ`: either a root of a random polynomial, or built so that the Fricke
/// discriminant is a square, `γ = (t² - b² + 4bK)/(4b)` for a random `t`.
fn candidate_gamma(p: u32, q: u32) -> impl Strategy<Value = Option<AlgebraicNumber>> {
    (monic(2..=4, 4), any::<bool>()).prop_map(move |(poly, built)| {
        let t = upper_root(&poly)?;
        if !built {
            return Some(t);
        }
        let (b, kk) = fricke_constants(p, q);
        let k = NumberField::new(t);
        let t2 = k.pow(&k.gen_elem(), 2);
        let shift = k.rational(&b * &b - BigRational::from_integer(4.into()) * &b * &kk);
        let g = k.scale(&k.sub(&t2, &shift), &(BigRational::from_integer(1.into()) / (BigRational::from_integer(4.into()) * &b)));
        let g = k.to_algebraic(&g).ok()?;
        if g.is_real() {
            None
        } else {
            Some(g)
        }
    })
}

fn cos_sq(p: u32) -> BigRational {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match p {
        3 => r(1, 4),
        4 => r(1, 2),
        6 => r(3, 4),
        _ => unreachable!("only orders with rational cos²"),
    }
}

/// `b = 16cos²(π/p)cos²(π/q)` and `K = 4cos²(π/q) - 4sin²(π/p)`, so the quadratic is
/// `x² - b x + b(K - γ)`.
fn fricke_constants(p: u32, q: u32) -> (BigRational, BigRational) {
    let four = BigRational::from_integer(4.into());
    let b = BigRational::from_integer(16.into()) * cos_sq(p) * cos_sq(q);
    let k = &four * cos_sq(q) - &four * (BigRational::from_integer(1.into()) - cos_sq(p));
    (b, k)
}

fn solve(mut a: Vec<Vec<Complex64>>, mut y: Vec<Complex64>) -> Vec<Complex64> {
    let n = y.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].norm().partial_cmp(&a[j][c].norm()).unwrap()).unwrap();
        a.swap(c, piv);
        y.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= f * t;
            }
            let t = y[c];
            y[r] -= f * t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = y[r];
        for k in r + 1..n {
            s -= a[r][k] * x[k];
        }
        x[r] = s / a[r][r];
    }
    x
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    let r = h1 as f64 / k1 as f64;
    ((r - x).abs() < 1e-7 * (1.0 + x.abs())).then(|| BigRational::new(h1.into(), k1.into()))
}

/// Solve the quadratic at every embedding, try every choice of root per embedding,
/// rationalize the coordinates in the power basis of `γ` and verify exactly.
fn fricke_splits_brute_force(p: u32, q: u32, gamma: &AlgebraicNumber) -> bool {
    let (b, kk) = fricke_constants(p, q);
    let mp = gamma.min_poly();
    let d = mp.degree();
    let roots = aberth_f64(mp);
    let (bf, kf) = (b.to_f64().unwrap(), kk.to_f64().unwrap());
    let x_pm: Vec<[Complex64; 2]> = roots
        .iter()
        .map(|g| {
            let disc = Complex64::new(bf * bf, 0.0) - 4.0 * bf * (Complex64::new(kf, 0.0) - g);
            let s = disc.sqrt();
            [(bf + s) / 2.0, (bf - s) / 2.0]
        })
        .collect();
    let vander: Vec<Vec<Complex64>> = roots.iter().map(|g| (0..d).map(|j| g.powu(j as u32)).collect()).collect();
    let k = NumberField::new(gamma.clone());
    let b_el = k.rational(b.clone());
    let c_el = k.scale(&k.sub(&k.rational(kk.clone()), &k.gen_elem()), &b);
    for mask in 0..(1u32 << d) {
        let y: Vec<Complex64> = (0..d).map(|i| x_pm[i][((mask >> i) & 1) as usize]).collect();
        let v = solve(vander.clone(), y);
        if v.iter().any(|c| c.im.abs() > 1e-6 * (1.0 + c.re.abs())) {
            continue;
        }
        let coords: Option<Vec<BigRational>> = v.iter().map(|c| rationalize(c.re, 1_000_000)).collect();
        let coords = match coords {
            Some(c) => c,
            None => continue,
        };
        let x: FieldElement = k.reduce(&QPoly::new(coords));
        // x² - b x + c = 0 in Q(γ)
        let val = k.add(&k.sub(&k.mul(&x, &x), &k.mul(&b_el, &x)), &c_el);
        if val.coords().is_zero() {
            return true;
        }
    }
    false
}

fn orders() -> impl Strategy<Value = (u32, u32)> {
    (prop::sample::select(vec![3u32, 4, 6]), prop::sample::select(vec![3u32, 4, 6]))
}

fn report(p: u32, q: u32, g: &AlgebraicNumber) -> heckoid::criterion::CriterionReport {
    check_arithmetic_subgroup(&GammaCandidate { p: GenOrder::Finite(p), q: GenOrder::Finite(q), gamma: g.clone() })
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fricke_splitting_matches_brute_force(((p, q), g) in orders().prop_flat_map(|(p, q)| (Just((p, q)), candidate_gamma(p, q)))) {
        let g = match g { Some(g) => g, None => return Ok(()) };
        let r = report(p, q, &g);
        prop_assert!(r.field_contains_l);
        prop_assert_eq!(r.fricke_splits, fricke_splits_brute_force(p, q, &g), "γ root of {}", g.min_poly());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn swapping_orders_changes_nothing(p in 2u32..=8, q in 2u32..=8, poly in monic(2..=4, 4)) {
        let g = match upper_root(&poly) { Some(g) => g, None => return Ok(()) };
        let a = report(p, q, &g);
        let b = report(q, p, &g);
        prop_assert_eq!(a.all_pass, b.all_pass);
        prop_assert_eq!(a.integrality, b.integrality);
        prop_assert_eq!(a.field_contains_l, b.field_contains_l);
        prop_assert_eq!(a.signature_ok, b.signature_ok);
        prop_assert_eq!(a.embedding_bounds_ok, b.embedding_bounds_ok);
        prop_assert_eq!(a.fricke_splits, b.fricke_splits);
        prop_assert_eq!(a.field_signature, b.field_signature);
        prop_assert_eq!(&a.field_discriminant, &b.field_discriminant);
        let verdicts = |r: &heckoid::criterion::CriterionReport| r.embedding_margins.iter().map(|m| m.verdict).collect::<Vec<_>>();
        prop_assert_eq!(verdicts(&a), verdicts(&b));
    }

    #[test]
    fn all_pass_is_the_conjunction(p in 2u32..=8, q in 2u32..=8, poly in monic(2..=4, 4)) {
        let g = match upper_root(&poly) { Some(g) => g, None => return Ok(()) };
        let r = report(p, q, &g);
        let conj = r.integrality && r.field_contains_l && r.signature_ok && r.embedding_bounds_ok && r.fricke_splits;
        prop_assert_eq!(r.all_pass, conj);
        prop_assert_eq!(r.embedding_bounds_ok, r.field_contains_l && r.embedding_margins.iter().all(|m| m.verdict == Verdict::Pass));
    }

    #[test]
    fn embedding_verdicts_are_stable_under_refinement(p in 2u32..=8, q in 2u32..=8, poly in monic(2..=4, 4)) {
        let g = match upper_root(&poly) { Some(g) => g, None => return Ok(()) };
        let cand = GammaCandidate { p: GenOrder::Finite(p), q: GenOrder::Finite(q), gamma: g };
        let coarse = check_arithmetic_subgroup_with(&cand, &Precision::new(32, 4096).unwrap()).unwrap();
        let fine = check_arithmetic_subgroup_with(&cand, &Precision::new(1024, 4096).unwrap()).unwrap();
        prop_assert_eq!(coarse.embedding_bounds_ok, fine.embedding_bounds_ok);
        let v = |r: &heckoid::criterion::CriterionReport| r.embedding_margins.iter().map(|m| m.verdict).collect::<Vec<_>>();
        prop_assert_eq!(v(&coarse), v(&fine));
    }
}

#[test]
fn table_fields_have_one_complex_place() {
    for r in golden_rows() {
        let s = signature(&r.min_poly).unwrap();
        assert_eq!(s.complex_places, 1, "{}", r.symbol);
        assert_eq!(s.real_places, r.min_poly.degree() - 2, "{}", r.symbol);
    }
}

#[test]
fn eisenstein_gamma_for_three_three_is_frozen() {
    // γ = ω = (-1 + √-3)/2 with p = q = 3: every condition but the Fricke splitting holds
    let g = upper_root(&IntPoly::from_i64s(&[1, 1, 1])).unwrap();
    let r = report(3, 3, &g);
    assert!(r.integrality && r.field_contains_l && r.signature_ok);
    assert!(!r.fricke_splits);
    assert!(!r.all_pass);
    assert_eq!(r.field_discriminant, Some(BigInt::from(-3)));
}

#[test]
fn real_gamma_is_rejected() {
    let g = AlgebraicNumber::from_int(-3);
    let err = check_arithmetic_subgroup(&GammaCandidate { p: GenOrder::Finite(3), q: GenOrder::Finite(3), gamma: g });
    assert!(matches!(err, Err(heckoid::error::Error::RealGamma(_))));
}

#[test]
fn brute_force_oracle_sees_both_outcomes() {
    // p = q = 3: b = 1, K = -2, so γ = (t² - 9)/4 makes the discriminant t²
    let t = upper_root(&IntPoly::from_i64s(&[1, -1, 1])).unwrap();
    let k = NumberField::new(t);
    let g = k.scale(
        &k.sub(&k.pow(&k.gen_elem(), 2), &k.int(9)),
        &BigRational::new(1.into(), 4.into()),
    );
    let g = k.to_algebraic(&g).unwrap();
    assert!(fricke_splits_brute_force(3, 3, &g));
    assert!(report(3, 3, &g).fricke_splits);
    let w = upper_root(&IntPoly::from_i64s(&[1, 1, 1])).unwrap();
    assert!(!fricke_splits_brute_force(3, 3, &w));
}
