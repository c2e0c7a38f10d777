//! The primitivity defect set D(φ) and its exact densities δₑ.
//!
//! The defect of a primitive parameter is gcd(φ₀(s,t), φ∞(s,t)); every value
//! divides R = |Res(φ₀, φ∞)|, so only primes p | R contribute. For each such
//! prime the distribution of min(v_p φ₀, v_p φ∞) over p-primitive residue
//! classes is computed by adaptive refinement: a class mod p^k is decided as
//! soon as the minimum valuation is < k (the evaluations are known mod p^k),
//! otherwise it splits into its p² children mod p^(k+1). Primitive pairs have
//! minimum valuation at most v_p(R), so depth v_p(R)+1 always suffices;
//! in practice refinement stops at the largest achieved valuation plus one.
//! Densities are uniform over p-primitive classes and combine across primes
//! by multiplicativity.

use crate::belyi::BelyiMapData;
use crate::factor::valuation;
use crate::forms::BinaryForm;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum DefectError {
    #[error("parameter (s,t) must be coprime")]
    ParameterNotCoprime,
}

/// gcd(|φ₀(s,t)|, |φ∞(s,t)|) at a primitive parameter.
pub fn defect_of(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    s: &BigInt,
    t: &BigInt,
) -> Result<BigUint, DefectError> {
    if !s.gcd(t).is_one() {
        return Err(DefectError::ParameterNotCoprime);
    }
    let g = phi0.eval(s, t).gcd(&phi_inf.eval(s, t));
    Ok(g.magnitude().clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectProfile {
    /// R = |Res(φ₀, φ∞)|
    pub resultant: BigInt,
    /// per prime p | R, the distribution of v_p(defect) as exact rationals
    pub primes: Vec<(u64, BTreeMap<u32, BigRational>)>,
    /// δₑ for each e ∈ D(φ)
    pub defects: BTreeMap<BigUint, BigRational>,
}

impl DefectProfile {
    pub fn density(&self, e: &BigUint) -> BigRational {
        self.defects.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn max_defect(&self) -> BigUint {
        self.defects.keys().max().cloned().unwrap_or_else(BigUint::one)
    }

    /// Σₑ δₑ·e^(2/d), evaluated in floating point.
    pub fn sum_term(&self, degree: usize) -> f64 {
        self.defects
            .iter()
            .map(|(e, d)| {
                let ef = big_rational_to_f64(&BigRational::from_integer(BigInt::from(e.clone())));
                big_rational_to_f64(d) * ef.powf(2.0 / degree as f64)
            })
            .sum()
    }
}

pub fn big_rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn defect_profile(map: &BelyiMapData) -> DefectProfile {
    defect_profile_forms(&map.phi0, &map.phi_inf, map.resultant_factors())
}

/// Profile from the forms and the factored resultant.
pub fn defect_profile_forms(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    res_factors: &BTreeMap<u64, u32>,
) -> DefectProfile {
    let mut primes = Vec::new();
    for (&p, &r) in res_factors {
        let dist = prime_distribution(phi0, phi_inf, p, r + 1);
        primes.push((p, dist));
    }

    let mut defects: BTreeMap<BigUint, BigRational> = BTreeMap::new();
    defects.insert(BigUint::one(), BigRational::one());
    for (p, dist) in &primes {
        let mut next = BTreeMap::new();
        for (e, de) in &defects {
            for (k, q) in dist {
                let key = e * BigUint::from(*p).pow(*k);
                let w = de * q;
                if !w.is_zero() {
                    *next.entry(key).or_insert_with(BigRational::zero) += w;
                }
            }
        }
        defects = next;
    }
    defects.retain(|_, d| !d.is_zero());

    DefectProfile {
        resultant: res_factors
            .iter()
            .fold(BigInt::one(), |acc, (&p, &e)| acc * BigInt::from(p).pow(e)),
        primes,
        defects,
    }
}

// Univariate integer polynomials, ascending coefficients.
type Poly = Vec<BigInt>;

fn poly_eval(f: &Poly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// f(y0 + p·y) by synthetic Horner.
fn poly_shift_scale(f: &Poly, y0: &BigInt, p: &BigInt) -> Poly {
    let mut res: Poly = vec![f.last().cloned().unwrap_or_else(BigInt::zero)];
    for c in f.iter().rev().skip(1) {
        let mut next = vec![BigInt::zero(); res.len() + 1];
        for (j, r) in res.iter().enumerate() {
            next[j] += r * y0;
            next[j + 1] += r * p;
        }
        next[0] += c;
        res = next;
    }
    res
}

/// Strips the largest power of p dividing every coefficient.
fn poly_strip_p(f: &Poly, p: u64) -> (u32, Poly) {
    let v = f
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| valuation(c, p).0)
        .min()
        .expect("nonzero polynomial");
    if v == 0 {
        return (0, f.clone());
    }
    let pk = BigInt::from(p).pow(v);
    (v, f.iter().map(|c| c / &pk).collect())
}

fn val_at(f: &Poly, x: &BigInt, p: u64) -> Option<u32> {
    let v = poly_eval(f, x);
    if v.is_zero() {
        None
    } else {
        Some(valuation(&v, p).0)
    }
}

/// Distribution of min(v_p φ₀, v_p φ∞) over p-primitive classes.
///
/// A p-primitive pair has a unit coordinate, so the problem splits into the
/// chart x = s/t ∈ Z_p (t a unit, conditional measure p/(p+1)) and the chart
/// t/s ∈ pZ_p (measure 1/(p+1)). Within a chart the pair of dehomogenized
/// polynomials is refined residue by residue: a residue x₀ is decided once
/// one polynomial has a p-unit value and its accumulated offset is minimal;
/// otherwise substitute x = x₀ + p·y and strip the p-content of both
/// polynomials, which strictly increases the offsets and terminates by the
/// resultant bound on the minimum valuation.
fn prime_distribution(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    p: u64,
    cap: u32,
) -> BTreeMap<u32, BigRational> {
    let d = phi0.degree();
    let pb = BigInt::from(p);
    let mut dist: BTreeMap<u32, BigRational> = BTreeMap::new();

    // chart weights among p-primitive classes
    let w_unit_t = BigRational::new(BigInt::from(p), BigInt::from(p + 1));
    let w_unit_s = BigRational::new(BigInt::one(), BigInt::from(p + 1));

    // (f0, fInf, c0, cInf, weight, depth): min(c0 + v_p f0(y), cInf + v_p fInf(y))
    // for y uniform in Z_p
    let mut stack: Vec<(Poly, Poly, u32, u32, BigRational, u32)> = Vec::new();

    let at_t1: Poly = phi0.coeffs().to_vec();
    let inf_t1: Poly = phi_inf.coeffs().to_vec();
    stack.push((at_t1, inf_t1, 0, 0, w_unit_t, 0));

    // phi(1, p·y): coefficient of y^j is coeffs[d−j]·p^j
    let scaled = |form: &BinaryForm| -> Poly {
        let mut g: Poly = (0..=d).map(|j| form.coeff(d - j) * pb.pow(j as u32)).collect();
        while g.len() > 1 && g.last().unwrap().is_zero() {
            g.pop();
        }
        g
    };
    let (g0, f0b) = poly_strip_p(&scaled(phi0), p);
    let (g_inf, f_inf_b) = poly_strip_p(&scaled(phi_inf), p);
    stack.push((f0b, f_inf_b, g0, g_inf, w_unit_s, 0));

    let depth_cap = 2 * cap + 16;
    while let Some((f0, f_inf, c0, c_inf, w, depth)) = stack.pop() {
        assert!(
            depth <= depth_cap,
            "refinement at p = {p} exceeded depth {depth_cap}; are the forms coprime?"
        );
        let leaf_w = &w / BigRational::from_integer(pb.clone());
        for x0 in 0..p {
            let x0 = BigInt::from(x0);
            let u0 = val_at(&f0, &x0, p);
            let u_inf = val_at(&f_inf, &x0, p);
            let decided = match (u0, u_inf) {
                (Some(0), Some(0)) => Some(c0.min(c_inf)),
                (Some(0), _) if c0 <= c_inf => Some(c0),
                (_, Some(0)) if c_inf <= c0 => Some(c_inf),
                _ => None,
            };
            if let Some(v) = decided {
                *dist.entry(v).or_insert_with(BigRational::zero) += leaf_w.clone();
            } else {
                let (a0, h0) = poly_strip_p(&poly_shift_scale(&f0, &x0, &pb), p);
                let (a_inf, h_inf) = poly_strip_p(&poly_shift_scale(&f_inf, &x0, &pb), p);
                stack.push((h0, h_inf, c0 + a0, c_inf + a_inf, leaf_w.clone(), depth + 1));
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::catalog_by_name;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn defect_of_examples() {
        let py = catalog_by_name("pythagoras").unwrap();
        assert_eq!(defect_of(&py.phi0, &py.phi_inf, &big(2), &big(1)).unwrap(), BigUint::from(1u32));
        assert_eq!(defect_of(&py.phi0, &py.phi_inf, &big(1), &big(1)).unwrap(), BigUint::from(4u32));
        assert_eq!(defect_of(&py.phi0, &py.phi_inf, &big(3), &big(1)).unwrap(), BigUint::from(4u32));
        assert!(defect_of(&py.phi0, &py.phi_inf, &big(2), &big(2)).is_err());
    }

    #[test]
    fn pythagoras_profile() {
        let prof = defect_profile(catalog_by_name("pythagoras").unwrap());
        let expected: BTreeMap<BigUint, BigRational> = [
            (BigUint::from(1u32), ratio(2, 3)),
            (BigUint::from(4u32), ratio(1, 3)),
        ]
        .into_iter()
        .collect();
        assert_eq!(prof.defects, expected);
        assert_eq!(prof.resultant, big(256));
    }

    #[test]
    fn dihedral3_profile() {
        let prof = defect_profile(catalog_by_name("dihedral-3").unwrap());
        let expected: BTreeMap<BigUint, BigRational> = [
            (BigUint::from(1u32), ratio(2, 3)),
            (BigUint::from(4u32), ratio(1, 3)),
        ]
        .into_iter()
        .collect();
        assert_eq!(prof.defects, expected);
    }

    #[test]
    fn trivial_resultant_profile() {
        let prof = defect_profile_forms(
            &BinaryForm::from_i64(1, &[0, 1]),
            &BinaryForm::from_i64(1, &[1, 0]),
            &BTreeMap::new(),
        );
        assert_eq!(prof.defects.len(), 1);
        assert_eq!(prof.density(&BigUint::one()), BigRational::one());
    }

    #[test]
    fn densities_sum_to_one_and_divide_resultant() {
        for m in crate::belyi::catalog_all() {
            let prof = defect_profile(m);
            let total: BigRational = prof.defects.values().cloned().sum();
            assert_eq!(total, BigRational::one(), "{}", m.name);
            let r = m.resultant();
            for e in prof.defects.keys() {
                assert!((&r % BigInt::from(e.clone())).is_zero(), "{} defect {e}", m.name);
            }
        }
    }

    #[test]
    fn empirical_frequencies_match_small_box() {
        let m = catalog_by_name("pythagoras").unwrap();
        let prof = defect_profile(m);
        let mut counts: BTreeMap<BigUint, u64> = BTreeMap::new();
        let mut total = 0u64;
        let bound = 60i64;
        for s in -bound..=bound {
            for t in -bound..=bound {
                if big(s).gcd(&big(t)).is_one() {
                    let e = defect_of(&m.phi0, &m.phi_inf, &big(s), &big(t)).unwrap();
                    *counts.entry(e).or_insert(0) += 1;
                    total += 1;
                }
            }
        }
        for (e, n) in &counts {
            let freq = *n as f64 / total as f64;
            let exact = big_rational_to_f64(&prof.density(e));
            assert!((freq - exact).abs() < 0.02, "e={e}: {freq} vs {exact}");
            assert!(prof.defects.contains_key(e), "observed defect {e} missing");
        }
    }

    #[test]
    fn sum_term_pythagoras() {
        let prof = defect_profile(catalog_by_name("pythagoras").unwrap());
        // 2/3 + (1/3)·4^(1/2) = 4/3
        assert!((prof.sum_term(4) - 4.0 / 3.0).abs() < 1e-12);
    }
}
