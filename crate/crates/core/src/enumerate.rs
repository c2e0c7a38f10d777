//! Brute-force enumeration oracles for solution and image counts.
//!
//! Everything here is deliberately independent of the analytic machinery: the
//! counts are produced by exhaustive scans over explicit boxes so they can
//! serve as ground truth for the predicted constants.
//!
//! The Fermat scan bound: for a primitive solution of A·xᵃ + B·yᵇ + C·z𝑐 = 0
//! and a prime p dividing both x and z, p cannot divide y, so
//! v_p(B) = v_p(A·xᵃ + C·z𝑐) ≥ min(v_p(A·xᵃ), v_p(C·z𝑐)); hence
//! min(v_p(A·xᵃ), v_p(C·z𝑐)) ≤ v_p(A·B·C) for every p, and with
//! G = Π_{p | ABC} p^{v_p(ABC)} the j-image (−A·xᵃ : C·z𝑐) of a solution of
//! height ≤ h satisfies |A·xᵃ| ≤ G·h and |C·z𝑐| ≤ G·h.

use crate::defects::defect_profile;
use crate::factor::strip_primes;
use crate::forms::BinaryForm;
use crate::points::{canonicalize, coeff, in_omega, PointError, ProjPoint, Signature};
use crate::volume::max_boundary_radius;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Parameter boxes are capped at this many evaluations.
pub const EVAL_BUDGET: u128 = 1_000_000_000;
/// Default height cap for the O(h²) direct P¹ scan.
pub const OMEGA_SCAN_CAP: u64 = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum EnumerateError {
    #[error("coefficient for {0} must be nonzero")]
    ZeroCoefficient(&'static str),
    #[error("scan needs {required} evaluations, over the {budget} budget")]
    Budget { required: u128, budget: u128 },
    #[error("direct scan height {height} exceeds the cap {cap}")]
    CapExceeded { height: u64, cap: u64 },
    #[error("degenerate sample series: {0}")]
    DegenerateSamples(&'static str),
    #[error(transparent)]
    Point(#[from] PointError),
}

/// A generalized Fermat equation A·xᵃ + B·yᵇ + C·z𝑐 = 0 with a prime set S
/// for the simplification conventions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatEquation {
    pub a_coef: BigInt,
    pub b_coef: BigInt,
    pub c_coef: BigInt,
    pub sig: Signature,
    pub s_primes: Vec<u64>,
}

impl FermatEquation {
    pub fn new(
        a_coef: BigInt,
        b_coef: BigInt,
        c_coef: BigInt,
        sig: Signature,
        s_primes: Vec<u64>,
    ) -> Result<Self, EnumerateError> {
        for (c, name) in [(&a_coef, "x"), (&b_coef, "y"), (&c_coef, "z")] {
            if c.is_zero() {
                return Err(EnumerateError::ZeroCoefficient(name));
            }
        }
        Ok(FermatEquation { a_coef, b_coef, c_coef, sig, s_primes })
    }

    /// A > 0, each coefficient power-free for its exponent, supported on S.
    pub fn is_simplified(&self) -> bool {
        use crate::factor::power_free_part;
        let slots = [
            (&self.a_coef, self.sig.a),
            (&self.b_coef, self.sig.b),
            (&self.c_coef, self.sig.c),
        ];
        self.a_coef.is_positive()
            && slots.iter().all(|(c, k)| {
                power_free_part(c, *k, &self.s_primes).1.is_one()
                    && strip_primes(c, &self.s_primes).is_one()
            })
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
        &self.a_coef * x.pow(self.sig.a)
            + &self.b_coef * y.pow(self.sig.b)
            + &self.c_coef * z.pow(self.sig.c)
    }
}

impl fmt::Display for FermatEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |f: &mut fmt::Formatter<'_>, c: &BigInt, v: &str, e: u32, lead: bool| {
            let mag = c.magnitude();
            if lead {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{v}^{e}")
        };
        term(f, &self.a_coef, "x", self.sig.a, true)?;
        term(f, &self.b_coef, "y", self.sig.b, false)?;
        term(f, &self.c_coef, "z", self.sig.c, false)?;
        write!(f, " = 0")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// M̃(h): every lattice point of the dilated region, including (0,0).
    All,
    /// Ñ(h): coprime parameters only.
    Primitive,
    /// Ñₑ(h): coprime parameters with the given primitivity defect.
    Defect(u64),
}

/// Exact count of (s,t) ∈ Z² with max(|φ₀|, |φ∞|) ≤ h, filtered by mode,
/// by scanning the box |s|,|t| ≤ ceil(r_max·h^(1/d)).
pub fn count_lattice(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    h: u64,
    mode: CountMode,
) -> Result<u64, EnumerateError> {
    assert!(h >= 1);
    let d = phi0.degree();
    assert!(d >= 1 && phi_inf.degree() == d);
    let r_max = max_boundary_radius(phi0, phi_inf);
    let r = (r_max * (h as f64).powf(1.0 / d as f64)).ceil() as i64 + 1;
    let side = 2 * r as u128 + 1;
    if side * side > EVAL_BUDGET {
        return Err(EnumerateError::Budget { required: side * side, budget: EVAL_BUDGET });
    }

    let hb = BigInt::from(h);
    let total = (-r..=r)
        .into_par_iter()
        .map(|s| {
            let mut row = 0u64;
            for t in -r..=r {
                let inside = match (phi0.eval_i128(s as i128, t as i128), phi_inf.eval_i128(s as i128, t as i128)) {
                    (Some(v0), Some(vi)) => {
                        if v0.unsigned_abs().max(vi.unsigned_abs()) > h as u128 {
                            false
                        } else {
                            match mode {
                                CountMode::All => true,
                                CountMode::Primitive => (s.unsigned_abs()).gcd(&t.unsigned_abs()) == 1,
                                CountMode::Defect(e) => {
                                    s.unsigned_abs().gcd(&t.unsigned_abs()) == 1
                                        && v0.unsigned_abs().gcd(&vi.unsigned_abs()) == e as u128
                                }
                            }
                        }
                    }
                    _ => {
                        // overflow: redo in big integers
                        let (sb, tb) = (BigInt::from(s), BigInt::from(t));
                        let v0 = phi0.eval(&sb, &tb);
                        let vi = phi_inf.eval(&sb, &tb);
                        v0.magnitude().max(vi.magnitude()) <= hb.magnitude()
                            && match mode {
                                CountMode::All => true,
                                CountMode::Primitive => sb.gcd(&tb).is_one(),
                                CountMode::Defect(e) => {
                                    sb.gcd(&tb).is_one() && v0.gcd(&vi) == BigInt::from(e)
                                }
                            }
                    }
                };
                if inside {
                    row += 1;
                }
            }
            row
        })
        .sum();
    Ok(total)
}

/// Image of the primitive parameters under φ, restricted to height ≤ h.
///
/// Parameters are projective: the pair ±(s,t) counts once, so the
/// multiplicity at an unramified image point is #φ⁻¹(Q)(Q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageCount {
    /// canonical image point → number of parameter points mapping to it
    pub histogram: BTreeMap<ProjPoint, u64>,
    /// total parameter points counted
    pub param_count: u64,
}

impl ImageCount {
    pub fn n_points(&self) -> usize {
        self.histogram.len()
    }

    /// The parameter-weighted count N(h), satisfying N(h) = ½ Σₑ Ñₑ(e·h)
    /// (the lattice counts Ñₑ see both of ±(s,t)).
    pub fn weighted(&self) -> u64 {
        self.param_count
    }
}

pub fn count_image(
    map: &crate::belyi::BelyiMapData,
    h: u64,
) -> Result<ImageCount, EnumerateError> {
    let e_max = defect_profile(map).max_defect();
    count_image_forms(&map.phi0, &map.phi_inf, &e_max, h)
}

/// Scans primitive (s,t) with max(|φ₀|, |φ∞|) ≤ e_max·h (the defect bound
/// covers every parameter whose image has height ≤ h), canonicalizes images,
/// and keeps those of height ≤ h.
pub fn count_image_forms(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    e_max: &BigUint,
    h: u64,
) -> Result<ImageCount, EnumerateError> {
    assert!(h >= 1);
    let d = phi0.degree();
    let r_max = max_boundary_radius(phi0, phi_inf);
    let bound = e_max.to_f64().unwrap_or(f64::INFINITY) * h as f64;
    let r = (r_max * bound.powf(1.0 / d as f64)).ceil() as i64 + 1;
    let side = 2 * r as u128 + 1;
    if side * side > EVAL_BUDGET {
        return Err(EnumerateError::Budget { required: side * side, budget: EVAL_BUDGET });
    }

    let hb = BigUint::from(h);
    let merged = (-r..=r)
        .into_par_iter()
        .map(|s| {
            let mut hist: BTreeMap<ProjPoint, u64> = BTreeMap::new();
            let mut params = 0u64;
            for t in -r..=r {
                // one representative per projective parameter point
                if t < 0 || (t == 0 && s <= 0) {
                    continue;
                }
                if s.unsigned_abs().gcd(&t.unsigned_abs()) != 1 {
                    continue;
                }
                let (sb, tb) = (BigInt::from(s), BigInt::from(t));
                let v0 = phi0.eval(&sb, &tb);
                let vi = phi_inf.eval(&sb, &tb);
                let q = canonicalize(v0, vi).expect("coprime forms never vanish together");
                if q.height() <= hb {
                    *hist.entry(q).or_insert(0) += 1;
                    params += 1;
                }
            }
            (hist, params)
        })
        .reduce(
            || (BTreeMap::new(), 0),
            |(mut ha, pa), (hb, pb)| {
                for (k, v) in hb {
                    *ha.entry(k).or_insert(0) += v;
                }
                (ha, pa + pb)
            },
        );
    Ok(ImageCount { histogram: merged.0, param_count: merged.1 })
}

/// All canonical points of height ≤ h in Ω_S(a,b,c), by direct scan.
pub fn count_omega_direct(
    sig: Signature,
    s_primes: &[u64],
    h: u64,
) -> Result<BTreeSet<ProjPoint>, EnumerateError> {
    count_omega_direct_capped(sig, s_primes, h, OMEGA_SCAN_CAP)
}

pub fn count_omega_direct_capped(
    sig: Signature,
    s_primes: &[u64],
    h: u64,
    cap: u64,
) -> Result<BTreeSet<ProjPoint>, EnumerateError> {
    assert!(h >= 1);
    if h > cap {
        return Err(EnumerateError::CapExceeded { height: h, cap });
    }
    if s_primes.is_empty() {
        return Ok(omega_power_grid(sig, h));
    }
    let mut set: BTreeSet<ProjPoint> = (1..=h as i64)
        .into_par_iter()
        .map(|n| {
            let mut local = BTreeSet::new();
            for m in -(h as i64)..=h as i64 {
                if m.unsigned_abs().gcd(&n.unsigned_abs()) != 1 {
                    continue;
                }
                let q = ProjPoint::new(m, n).expect("nonzero");
                if in_omega(&q, sig, s_primes) {
                    local.insert(q);
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    set.insert(ProjPoint::new(1, 0).expect("infinity"));
    Ok(set)
}

/// S = ∅ fast path: membership means |num|, |num−den|, |den| are perfect
/// a-th, b-th, c-th powers, so candidates are pairs of powers.
fn omega_power_grid(sig: Signature, h: u64) -> BTreeSet<ProjPoint> {
    let powers = |k: u32, bound: u64| -> Vec<u64> {
        let mut v = vec![0u64];
        let mut x = 1u64;
        while let Some(p) = x.checked_pow(k) {
            if p > bound {
                break;
            }
            v.push(p);
            x += 1;
        }
        v
    };
    let pa = powers(sig.a, h);
    let pc = powers(sig.c, h);
    let mut out = BTreeSet::new();
    out.insert(ProjPoint::new(1, 0).expect("infinity"));
    for &n in pc.iter().skip(1) {
        for &u in &pa {
            let signs: &[i64] = if u == 0 { &[1] } else { &[1, -1] };
            for &sg in signs {
                let m = sg * u as i64;
                if m.unsigned_abs().gcd(&n) != 1 {
                    continue;
                }
                if is_kth_power(m.abs_diff(n as i64), sig.b) {
                    out.insert(ProjPoint::new(m, n as i64).expect("nonzero"));
                }
            }
        }
    }
    out
}

fn is_kth_power(v: u64, k: u32) -> bool {
    if v <= 1 {
        return true;
    }
    let est = (v as f64).powf(1.0 / k as f64).round() as u64;
    (est.saturating_sub(2)..=est + 2).any(|r| r.checked_pow(k) == Some(v))
}

/// Ω(F): j-images of the primitive solutions of F, restricted to height ≤ h.
///
/// Scans |x| ≤ (G·h/|A|)^(1/a), |z| ≤ (G·h/|C|)^(1/c) with G = Π p^(v_p(ABC))
/// (see the module docs for the bound), solves for y by a b-th-power test,
/// and maps through j = (−A·xᵃ : C·z𝑐).
pub fn count_fermat(
    eq: &FermatEquation,
    h: u64,
) -> Result<BTreeSet<ProjPoint>, EnumerateError> {
    assert!(h >= 1);
    let g: BigInt = BigInt::from((&eq.a_coef * &eq.b_coef * &eq.c_coef).magnitude().clone());
    let gh = &g * BigInt::from(h);
    let xb = root_bound(&gh, &eq.a_coef, eq.sig.a);
    let zb = root_bound(&gh, &eq.c_coef, eq.sig.c);
    let required = (xb as u128 + 1) * (zb as u128 + 1) * 4;
    if required > EVAL_BUDGET {
        return Err(EnumerateError::Budget { required, budget: EVAL_BUDGET });
    }

    // the whole scan fits in i128 when the extreme term values do
    let fits = |c: &BigInt, bound: u64, k: u32| {
        (c * BigInt::from(bound).pow(k)).magnitude().bits() < 120
    };
    let use_i128 = fits(&eq.a_coef, xb, eq.sig.a) && fits(&eq.c_coef, zb, eq.sig.c);

    let set = (0..=xb as i64)
        .into_par_iter()
        .map(|x| {
            if use_i128 {
                fermat_row_i128(eq, h, x, zb)
            } else {
                fermat_row_big(eq, h, x, zb)
            }
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(set)
}

/// Largest r ≥ 0 with |c|·r^k ≤ bound.
fn root_bound(bound: &BigInt, c: &BigInt, k: u32) -> u64 {
    let cf = c.magnitude().to_f64().unwrap_or(f64::INFINITY);
    let bf = bound.to_f64().unwrap_or(f64::INFINITY);
    let mut r = (bf / cf).powf(1.0 / k as f64).floor() as u64;
    let c = BigInt::from(c.magnitude().clone());
    while &c * BigInt::from(r + 1).pow(k) <= *bound {
        r += 1;
    }
    while r > 0 && &c * BigInt::from(r).pow(k) > *bound {
        r -= 1;
    }
    r
}

fn fermat_row_i128(eq: &FermatEquation, h: u64, x: i64, zb: u64) -> BTreeSet<ProjPoint> {
    let mut out = BTreeSet::new();
    let a = eq.a_coef.to_i128().unwrap();
    let b = eq.b_coef.to_i128().unwrap();
    let c = eq.c_coef.to_i128().unwrap();
    let xs: &[i128] = if eq.sig.a % 2 == 1 && x > 0 { &[1, -1] } else { &[1] };
    for &sx in xs {
        let ax = a * (sx * x as i128).pow(eq.sig.a);
        for z in 0..=zb as i128 {
            let zs: &[i128] = if eq.sig.c % 2 == 1 && z > 0 { &[1, -1] } else { &[1] };
            for &sz in zs {
                let cz = c * (sz * z).pow(eq.sig.c);
                let s = ax + cz;
                if s % b != 0 {
                    continue;
                }
                let w = -s / b;
                let y = match signed_root_i128(w, eq.sig.b) {
                    Some(y) => y,
                    None => continue,
                };
                let gcd = (x.unsigned_abs() as u128)
                    .gcd(&y.unsigned_abs())
                    .gcd(&(z.unsigned_abs() as u128));
                if gcd != 1 {
                    continue;
                }
                let q = canonicalize(BigInt::from(-ax), BigInt::from(cz))
                    .expect("x and z cannot both vanish in a solution");
                if q.height() <= BigUint::from(h) {
                    out.insert(q);
                }
            }
        }
    }
    out
}

/// y with y^k = w, respecting the sign; None if there is none.
fn signed_root_i128(w: i128, k: u32) -> Option<i128> {
    if w == 0 {
        return Some(0);
    }
    if w < 0 && k % 2 == 0 {
        return None;
    }
    let mag = w.unsigned_abs();
    let est = (mag as f64).powf(1.0 / k as f64).round() as u128;
    let root = (est.saturating_sub(2)..=est + 2).find(|r| r.checked_pow(k) == Some(mag))?;
    Some(if w < 0 { -(root as i128) } else { root as i128 })
}

fn fermat_row_big(eq: &FermatEquation, h: u64, x: i64, zb: u64) -> BTreeSet<ProjPoint> {
    use crate::factor::perfect_power_root;
    let mut out = BTreeSet::new();
    let xs: &[i64] = if eq.sig.a % 2 == 1 && x > 0 { &[1, -1] } else { &[1] };
    for &sx in xs {
        let ax = &eq.a_coef * BigInt::from(sx * x).pow(eq.sig.a);
        for z in 0..=zb as i64 {
            let zs: &[i64] = if eq.sig.c % 2 == 1 && z > 0 { &[1, -1] } else { &[1] };
            for &sz in zs {
                let cz = &eq.c_coef * BigInt::from(sz * z).pow(eq.sig.c);
                let s = &ax + &cz;
                let (q, r) = (-&s).div_rem(&eq.b_coef);
                if !r.is_zero() {
                    continue;
                }
                let w = q;
                let y: BigInt = if w.is_zero() {
                    BigInt::zero()
                } else if w.is_negative() && eq.sig.b % 2 == 0 {
                    continue;
                } else {
                    match perfect_power_root(&BigInt::from(w.magnitude().clone()), eq.sig.b) {
                        Some(root) => BigInt::from(root) * w.signum(),
                        None => continue,
                    }
                };
                if !BigInt::from(x).gcd(&y).gcd(&BigInt::from(z)).is_one() {
                    continue;
                }
                let q = canonicalize(-ax.clone(), cz)
                    .expect("x and z cannot both vanish in a solution");
                if q.height() <= BigUint::from(h) {
                    out.insert(q);
                }
            }
        }
    }
    out
}

/// Samples of an enumeration count against the expected power law κ·h^exp.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub samples: Vec<(u64, u64)>,
    pub exponent: f64,
    /// per-sample count/h^exp
    pub ratios: Vec<f64>,
    /// weighted least squares of count/h^exp, weights h^exp (large h dominates)
    pub fitted_constant: f64,
    pub reference_constant: Option<f64>,
}

pub fn fit_series(
    samples: &[(u64, u64)],
    exponent: f64,
    reference_constant: Option<f64>,
) -> Result<CountSeries, EnumerateError> {
    if samples.len() < 3 {
        return Err(EnumerateError::DegenerateSamples("need at least 3 samples"));
    }
    if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err(EnumerateError::DegenerateSamples("heights must strictly increase"));
    }
    if !samples.windows(2).all(|w| w[0].1 <= w[1].1) {
        return Err(EnumerateError::DegenerateSamples("counts must be nondecreasing"));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    let mut ratios = Vec::with_capacity(samples.len());
    for &(h, count) in samples {
        let w = (h as f64).powf(exponent);
        ratios.push(count as f64 / w);
        num += count as f64;
        den += w;
    }
    Ok(CountSeries {
        samples: samples.to_vec(),
        exponent,
        ratios,
        fitted_constant: num / den,
        reference_constant,
    })
}

/// Groups the direct-scan points of Ω_S(a,b,c) by their coefficient triple
/// (A, B, C); the groups partition the scan by construction.
pub fn classify_partition(
    sig: Signature,
    s_primes: &[u64],
    h: u64,
) -> Result<BTreeMap<(BigInt, BigInt, BigInt), BTreeSet<ProjPoint>>, EnumerateError> {
    let points = count_omega_direct(sig, s_primes, h)?;
    let mut groups: BTreeMap<(BigInt, BigInt, BigInt), BTreeSet<ProjPoint>> = BTreeMap::new();
    for q in points {
        let t = coeff(&q, sig, s_primes)?;
        groups
            .entry((t.a_coef, t.b_coef, t.c_coef))
            .or_default()
            .insert(q);
    }
    Ok(groups)
}
