//! #Aut(φ) by rational fiber counting, and the leading constants δ(φ), κ(φ).
//!
//! For unramified Q the rational fiber φ⁻¹(Q)(Q) has #Aut(φ) points when it
//! is nonempty, so sampling image points and counting rational roots of the
//! fiber form num(Q)·φ∞ − den(Q)·φ₀ determines the automorphism count. Any
//! primitive parameter in the fiber satisfies max(|φ̃|) = e·Ht(Q) with e a
//! defect, so its height is at most r_sup·(e_max·Ht(Q))^(1/d); root
//! candidates are divisor pairs below that bound.

use crate::belyi::{BelyiMapData, BelyiError};
use crate::defects::{defect_profile, DefectProfile};
use crate::forms::BinaryForm;
use crate::points::ProjPoint;
use crate::volume::{max_boundary_radius, volume, VolumeError};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum ConstantsError {
    #[error("critical value: the fiber at {0} is ramified")]
    CriticalValue(ProjPoint),
    #[error("fiber counts disagree across sample points: {0:?}")]
    Disagreement(Vec<usize>),
    #[error("could not collect enough unramified sample points")]
    SamplingExhausted,
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error(transparent)]
    Belyi(#[from] BelyiError),
}

/// Number of rational points of φ⁻¹(Q), for unramified Q.
pub fn fiber_count(map: &BelyiMapData, q: &ProjPoint) -> Result<usize, ConstantsError> {
    let e_max = defect_profile(map).max_defect();
    fiber_count_forms(&map.phi0, &map.phi_inf, q, &e_max)
}

/// Fiber count from raw coprime forms and a bound on the primitivity defect.
pub fn fiber_count_forms(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    q: &ProjPoint,
    e_max: &BigUint,
) -> Result<usize, ConstantsError> {
    let fiber = phi_inf.scale(q.num()).sub(&phi0.scale(q.den()));
    assert!(!fiber.is_zero(), "fiber form vanishes; is the map nonconstant?");
    if !fiber.is_squarefree() {
        return Err(ConstantsError::CriticalValue(q.clone()));
    }
    let d = fiber.degree();
    let r_sup = max_boundary_radius(phi0, phi_inf);
    let ht = q.height().to_f64().unwrap_or(f64::INFINITY)
        * e_max.to_f64().unwrap_or(f64::INFINITY);
    let bound = (r_sup * ht.powf(1.0 / d as f64) * 1.05).ceil() as u64 + 1;

    let (es, et, core) = {
        let lo = fiber.s_multiplicity().expect("nonzero");
        let hi = fiber.s_degree().unwrap();
        (lo, fiber.degree() - hi, fiber.coeffs()[lo..=hi].to_vec())
    };
    let mut count = 0usize;
    if es >= 1 {
        count += 1; // root (0:1)
    }
    if et >= 1 {
        count += 1; // root (1:0)
    }
    let constant = &core[0];
    let leading = core.last().unwrap();
    if core.len() > 1 {
        for qq in 1..=bound {
            if !(leading % BigInt::from(qq)).is_zero() {
                continue;
            }
            for pp in 1..=bound {
                if qq.gcd(&pp) != 1 || !(constant % BigInt::from(pp)).is_zero() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let s = BigInt::from(pp as i64 * sign);
                    let t = BigInt::from(qq);
                    if fiber.eval(&s, &t).is_zero() {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// The common fiber count over `trials` distinct unramified image points,
/// sampled deterministically. Disagreement is an error.
pub fn aut_size(map: &BelyiMapData, trials: usize) -> Result<usize, ConstantsError> {
    aut_size_seeded(map, trials, 0x5eed)
}

pub fn aut_size_seeded(
    map: &BelyiMapData,
    trials: usize,
    seed: u64,
) -> Result<usize, ConstantsError> {
    assert!(trials >= 3, "at least 3 trials required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e_max = defect_profile(map).max_defect();
    let mut seen: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut counts = Vec::new();
    let mut attempts = 0usize;
    while counts.len() < trials {
        attempts += 1;
        if attempts > 200 * trials {
            return Err(ConstantsError::SamplingExhausted);
        }
        let s = BigInt::from(rng.gen_range(-40i64..=40));
        let t = BigInt::from(rng.gen_range(-40i64..=40));
        if (s.is_zero() && t.is_zero()) || !s.gcd(&t).is_one() {
            continue;
        }
        let v0 = map.phi0.eval(&s, &t);
        let v_inf = map.phi_inf.eval(&s, &t);
        let q = crate::points::canonicalize(v0, v_inf).expect("coprime forms");
        if q.is_cusp() || seen.contains(&q) {
            continue;
        }
        match fiber_count_forms(&map.phi0, &map.phi_inf, &q, &e_max) {
            Ok(n) => {
                seen.insert(q);
                counts.push(n);
            }
            Err(ConstantsError::CriticalValue(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let first = counts[0];
    if counts.iter().any(|&c| c != first) {
        return Err(ConstantsError::Disagreement(counts));
    }
    Ok(first)
}

#[derive(Debug, Clone)]
pub struct ConstantReport {
    pub vol: f64,
    pub vol_error: f64,
    pub sum_term: f64,
    pub aut_size: usize,
    pub delta: f64,
    pub kappa: f64,
    pub profile: DefectProfile,
}

/// δ(φ) = (3/π²)·vol(R_φ)·Σₑ δₑ e^(2/d) and κ(φ) = δ(φ)/#Aut(φ).
pub fn constant_report(map: &BelyiMapData, tol: f64) -> Result<ConstantReport, ConstantsError> {
    let v = volume(map, tol)?;
    let profile = defect_profile(map);
    let sum_term = profile.sum_term(map.degree());
    let aut = aut_size(map, 9)?;
    let delta = 3.0 / (std::f64::consts::PI * std::f64::consts::PI) * v.value * sum_term;
    let kappa = delta / aut as f64;
    Ok(ConstantReport {
        vol: v.value,
        vol_error: v.error_bound,
        sum_term,
        aut_size: aut,
        delta,
        kappa,
        profile,
    })
}

// keep the exact-rational accessor close to its consumers
pub use crate::defects::big_rational_to_f64 as rational_to_f64;
