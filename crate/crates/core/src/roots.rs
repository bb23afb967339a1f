//! Certified isolation of all complex roots of a squarefree integer polynomial.
//!
//! Real roots come from Sturm isolation. Non-real roots are approximated with the
//! Aberth iteration in double precision, polished by Newton steps at the working
//! precision, and certified with inclusion discs: for distinct approximations
//! `z_i`, every root lies in the union of the discs `|z - z_i| <= d·|p(z_i)| / |lc·∏(z_i - z_j)|`,
//! and a disc disjoint from the others holds exactly one root.

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::{CInterval, RInterval};
use crate::poly::IntPoly;
use crate::precision::Precision;
use crate::sturm::{isolate_real_roots, refine_real_root, RealRoot};
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// Aberth–Ehrlich approximations of all roots in double precision.
pub fn aberth_f64(p: &IntPoly) -> Vec<Complex64> {
    let d = p.degree();
    if d == 0 {
        return vec![];
    }
    let lc = p.lead().to_f64().unwrap_or(f64::MAX);
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::MAX) / lc).collect();
    let radius = c[..d].iter().map(|a| a.abs()).fold(0.0f64, f64::max).max(1e-3).min(1e12);
    let r0 = radius.powf(1.0 / d as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            df = df * x + f;
            f = f * x + a;
        }
        (f, df)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (f, df) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

type Approx = (Dyadic, Dyadic);

fn approx_to_box(z: &Approx, prec: u32) -> CInterval {
    CInterval::new(RInterval::point(z.0.clone(), prec), RInterval::point(z.1.clone(), prec))
}

fn newton_polish(p: &IntPoly, z: Approx, prec: u32) -> Approx {
    let dp = p.derivative();
    let work = prec + 32;
    let mut z = z;
    let mut iters = 0;
    loop {
        let b = approx_to_box(&z, work);
        let f = p.eval_complex(&b);
        let df = dp.eval_complex(&b);
        let step = match f.div(&df) {
            Some(s) => s,
            None => return z,
        };
        let (sr, si) = (step.re.mid(), step.im.mid());
        z = ((&z.0 - &sr).round(work, Round::Nearest), (&z.1 - &si).round(work, Round::Nearest));
        iters += 1;
        let mag = Dyadic::max(&sr.abs(), &si.abs());
        let scale = Dyadic::max(&Dyadic::max(&z.0.abs(), &z.1.abs()), &Dyadic::one());
        let tiny = &scale * &Dyadic::pow2(-(prec as i64) - 8);
        if mag <= tiny || iters > 64 {
            return z;
        }
    }
}

/// A certified root enclosure. Real roots keep their Sturm bracket.
#[derive(Clone, Debug)]
pub struct RootBox {
    pub enclosure: CInterval,
    pub real: Option<RealRoot>,
}

fn order(a: &CInterval, b: &CInterval) -> std::cmp::Ordering {
    if a.re.overlaps(&b.re) {
        a.im.mid().cmp(&b.im.mid())
    } else {
        a.re.mid().cmp(&b.re.mid())
    }
}

/// Root boxes of `p`, each containing exactly one root, sorted by real part then
/// imaginary part. Real roots have a degenerate zero imaginary part.
pub fn isolate_all_roots(p: &IntPoly, prec: u32) -> Result<Option<Vec<CInterval>>> {
    Ok(isolate_root_boxes(p, prec)?.map(|v| v.into_iter().map(|b| b.enclosure).collect()))
}

/// As [`isolate_all_roots`], keeping real brackets.
pub fn isolate_root_boxes(p: &IntPoly, prec: u32) -> Result<Option<Vec<RootBox>>> {
    let d = p.degree();
    if d == 0 {
        return Ok(Some(vec![]));
    }
    let reals: Vec<RealRoot> = isolate_real_roots(p).iter().map(|r| refine_real_root(p, r, prec)).collect();
    let nc = d - reals.len();
    let mut out: Vec<RootBox> = reals
        .iter()
        .map(|r| RootBox { enclosure: CInterval::real(r.to_interval(prec)), real: Some(r.clone()) })
        .collect();
    if nc == 0 {
        return Ok(Some(out));
    }
    let mut approx = aberth_f64(p);
    approx.sort_by(|a, b| b.im.abs().partial_cmp(&a.im.abs()).unwrap_or(std::cmp::Ordering::Equal));
    let mut upper: Vec<Approx> = approx[..nc]
        .iter()
        .filter(|z| z.im > 0.0)
        .map(|z| (Dyadic::from_f64(z.re), Dyadic::from_f64(z.im)))
        .collect();
    if upper.len() * 2 != nc {
        return Ok(None);
    }
    upper = upper.into_iter().map(|z| newton_polish(p, z, prec)).collect();
    // every approximation, in a fixed order: reals, upper, lower
    let mut pts: Vec<Approx> = reals.iter().map(|r| ((&r.lo + &r.hi).mul_pow2(-1), Dyadic::zero())).collect();
    pts.extend(upper.iter().cloned());
    pts.extend(upper.iter().map(|z| (z.0.clone(), -&z.1)));
    let work = prec + 16;
    let lc = CInterval::from_int(p.lead(), work);
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let zi = approx_to_box(&pts[i], work);
        let mut den = lc.clone();
        for (j, zj) in pts.iter().enumerate() {
            if j != i {
                den = den.mul(&zi.sub(&approx_to_box(zj, work)));
            }
        }
        let w = match p.eval_complex(&zi).div(&den) {
            Some(w) => w,
            None => return Ok(None),
        };
        radii.push(&w.abs_upper() * &Dyadic::from_int(d as i64));
    }
    // squares of half-width r_i around each approximation must be pairwise disjoint
    for i in 0..d {
        for j in i + 1..d {
            let s = &radii[i] + &radii[j];
            let dre = (&pts[i].0 - &pts[j].0).abs();
            let dim = (&pts[i].1 - &pts[j].1).abs();
            if dre <= s && dim <= s {
                return Ok(None);
            }
        }
    }
    let nr = reals.len();
    for k in 0..nc / 2 {
        let (z, r) = (&pts[nr + k], &radii[nr + k]);
        if &z.1 <= r {
            return Ok(None);
        }
        let re = RInterval::new((&z.0 - r).round(prec, Round::Down), (&z.0 + r).round(prec, Round::Up), prec);
        let im = RInterval::new((&z.1 - r).round(prec, Round::Down), (&z.1 + r).round(prec, Round::Up), prec);
        let b = CInterval::new(re, im);
        out.push(RootBox { enclosure: b.conj(), real: None });
        out.push(RootBox { enclosure: b, real: None });
    }
    out.sort_by(|a, b| order(&a.enclosure, &b.enclosure));
    Ok(Some(out))
}

/// All root boxes under the precision policy.
pub fn all_roots(p: &IntPoly, policy: &Precision) -> Result<Vec<CInterval>> {
    if !p.is_squarefree() {
        return Err(Error::Invalid(format!("root isolation needs a squarefree polynomial, got {p}")));
    }
    policy.escalate(&format!("isolating roots of {p}"), |prec| isolate_all_roots(p, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_from_table() {
        let p = IntPoly::from_i64s(&[-11, 0, 9, 0, 1]);
        let roots = all_roots(&p, &Precision::default()).unwrap();
        assert_eq!(roots.len(), 4);
        let nonreal: Vec<_> = roots.iter().filter(|b| !b.is_real()).collect();
        assert_eq!(nonreal.len(), 2);
        for b in &roots {
            assert!(p.eval_complex(b).contains_zero());
        }
        // z^2 = (-9 - √125)/2, so z ≈ ±3.17650i
        let (_, im) = nonreal[1].to_f64();
        assert!((im - 3.176_502_785).abs() < 1e-6, "{im}");
    }

    #[test]
    fn high_degree_cyclotomic_like() {
        // x^8 + 212x^6 - 4234x^4 + 19060x^2 - 47
        let p = IntPoly::from_i64s(&[-47, 0, 19060, 0, -4234, 0, 212, 0, 1]);
        let roots = all_roots(&p, &Precision::default()).unwrap();
        assert_eq!(roots.iter().filter(|b| !b.is_real()).count(), 2);
        for b in &roots {
            assert!(p.eval_complex(b).contains_zero());
        }
    }
}
