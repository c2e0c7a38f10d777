//! Points of P¹(Q) in canonical form, heights, Ω-membership, and extraction
//! of Fermat coefficient triples with a solution witness.
//!
//! A point is stored as a coprime pair (m, n) with n > 0, or (1, 0) for ∞.
//! Membership in Ω_S(a,b,c) asks that v_p(m), v_p(m−n), v_p(n) vanish mod
//! a, b, c for every prime p outside S; equivalently, each value with its
//! S-part stripped must be a perfect power, which needs no factorization.

use crate::factor::{factorize, perfect_power_root, strip_primes, valuation};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum PointError {
    #[error("(0,0) is not a projective point")]
    ZeroPoint,
    #[error("exponent {0} must be at least 2")]
    BadExponent(u32),
    #[error("not in the membership set: {coordinate} value {value} fails the {exponent}-th power condition at prime {prime}")]
    NotInOmega {
        coordinate: &'static str,
        value: BigInt,
        exponent: u32,
        prime: BigUint,
    },
    #[error("cannot parse {0:?} as a point m/n")]
    Parse(String),
}

/// Exponent triple (a,b,c), the ramification orders over 0, 1, ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Signature {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, PointError> {
        for e in [a, b, c] {
            if e < 2 {
                return Err(PointError::BadExponent(e));
            }
        }
        Ok(Signature { a, b, c })
    }

    /// χ = 1/a + 1/b + 1/c − 1.
    pub fn chi(&self) -> Rational64 {
        let inv = |e: u32| Rational64::new(1, e as i64);
        inv(self.a) + inv(self.b) + inv(self.c) - Rational64::one()
    }

    pub fn is_spherical(&self) -> bool {
        self.chi() > Rational64::zero()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A point of P¹(Q): coprime (m, n) with n > 0, or (1, 0) for ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    m: BigInt,
    n: BigInt,
}

/// Reduces (m, n) to the canonical representative.
pub fn canonicalize(m: BigInt, n: BigInt) -> Result<ProjPoint, PointError> {
    if m.is_zero() && n.is_zero() {
        return Err(PointError::ZeroPoint);
    }
    let g = m.gcd(&n);
    let (mut m, mut n) = (m / &g, n / &g);
    if n.is_negative() || (n.is_zero() && m.is_negative()) {
        m = -m;
        n = -n;
    }
    Ok(ProjPoint { m, n })
}

impl ProjPoint {
    pub fn new(m: i64, n: i64) -> Result<Self, PointError> {
        canonicalize(BigInt::from(m), BigInt::from(n))
    }

    pub fn num(&self) -> &BigInt {
        &self.m
    }

    pub fn den(&self) -> &BigInt {
        &self.n
    }

    /// Ht(Q) = max(|m|, |n|).
    pub fn height(&self) -> BigUint {
        self.m.magnitude().max(self.n.magnitude()).clone()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.m == self.n
    }

    pub fn is_infinity(&self) -> bool {
        self.n.is_zero()
    }

    pub fn is_cusp(&self) -> bool {
        self.is_zero() || self.is_one() || self.is_infinity()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

impl FromStr for ProjPoint {
    type Err = PointError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PointError::Parse(s.to_string());
        let (ms, ns) = match s.split_once('/') {
            Some((ms, ns)) => (ms, ns),
            None => (s, "1"),
        };
        let m = BigInt::from_str(ms.trim()).map_err(|_| bad())?;
        let n = BigInt::from_str(ns.trim()).map_err(|_| bad())?;
        canonicalize(m, n)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Q ∈ Ω_S(a,b,c): for primes p ∉ S, the valuations of num, num−den, den
/// are multiples of a, b, c respectively. Zero values pass vacuously.
pub fn in_omega(p: &ProjPoint, sig: Signature, s_primes: &[u64]) -> bool {
    let checks = [
        (p.num().clone(), sig.a),
        (p.num() - p.den(), sig.b),
        (p.den().clone(), sig.c),
    ];
    checks.iter().all(|(v, k)| value_is_power(v, *k, s_primes))
}

fn value_is_power(v: &BigInt, k: u32, s_primes: &[u64]) -> bool {
    if v.is_zero() {
        return true;
    }
    let stripped = strip_primes(v, s_primes);
    perfect_power_root(&BigInt::from(stripped), k).is_some()
}

/// S-simplified Fermat coefficients (A, B, C) at a point of Ω_S(a,b,c),
/// together with a primitive witness solving A·xᵃ + B·yᵇ + C·z𝑐 = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffTriple {
    pub a_coef: BigInt,
    pub b_coef: BigInt,
    pub c_coef: BigInt,
    pub witness: (BigInt, BigInt, BigInt),
}

impl fmt::Display for CoeffTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a_coef, self.b_coef, self.c_coef)
    }
}

enum Slot {
    /// coefficient kept positive; when the exponent is even the caller must
    /// have arranged a nonnegative value by choice of representative
    First,
    /// sign goes to the witness when the exponent is odd, else to the coefficient
    Middle,
    /// witness kept nonnegative, sign always on the coefficient
    Last,
}

/// coeff(Q): extracts (A, B, C) from (−num, num−den, den) of the
/// representative ±(m,n) chosen so that A > 0, splitting each value as
/// coefficient · witnessᵏ with the coefficient supported on S and k-th
/// power free.
pub fn coeff(p: &ProjPoint, sig: Signature, s_primes: &[u64]) -> Result<CoeffTriple, PointError> {
    // A > 0 forces the representative when a is even and num ≠ 0; otherwise
    // the canonical one serves.
    let flip = sig.a % 2 == 0 && p.num().is_positive();
    let (m, n) = if flip {
        (-p.num(), -p.den())
    } else {
        (p.num().clone(), p.den().clone())
    };

    let (ca, x) = slot_decompose(&-&m, sig.a, s_primes, Slot::First, "numerator")?;
    let (cb, y) = slot_decompose(&(&m - &n), sig.b, s_primes, Slot::Middle, "numerator minus denominator")?;
    let (cc, z) = slot_decompose(&n, sig.c, s_primes, Slot::Last, "denominator")?;

    let t = CoeffTriple {
        a_coef: ca,
        b_coef: cb,
        c_coef: cc,
        witness: (x, y, z),
    };
    debug_assert!(
        (&t.a_coef * t.witness.0.pow(sig.a)
            + &t.b_coef * t.witness.1.pow(sig.b)
            + &t.c_coef * t.witness.2.pow(sig.c))
            .is_zero()
    );
    Ok(t)
}

fn slot_decompose(
    v: &BigInt,
    k: u32,
    s_primes: &[u64],
    slot: Slot,
    coordinate: &'static str,
) -> Result<(BigInt, BigInt), PointError> {
    if v.is_zero() {
        return Ok((BigInt::one(), BigInt::zero()));
    }
    let sign = v.signum();
    let mut coef = BigUint::one();
    let mut w = BigUint::one();
    let mut rem = BigInt::from(v.magnitude().clone());
    for &p in s_primes {
        let (e, r) = valuation(&rem, p);
        rem = r;
        let pb = BigUint::from(p);
        coef *= pb.pow(e % k);
        w *= pb.pow(e / k);
    }
    match perfect_power_root(&rem, k) {
        Some(root) => w *= root,
        None => {
            let prime = factorize(rem.magnitude())
                .into_iter()
                .find(|(_, e)| e % k != 0)
                .map(|(p, _)| p)
                .expect("a non-power has an offending prime");
            return Err(PointError::NotInOmega {
                coordinate,
                value: v.clone(),
                exponent: k,
                prime,
            });
        }
    }
    let coef = BigInt::from(coef);
    let w = BigInt::from(w);
    Ok(match slot {
        Slot::First => {
            if k % 2 == 1 {
                (coef, sign * w)
            } else {
                assert!(sign.is_positive(), "representative choice guarantees A > 0");
                (coef, w)
            }
        }
        Slot::Middle => {
            if k % 2 == 1 {
                (coef, sign * w)
            } else {
                (sign * coef, w)
            }
        }
        Slot::Last => (sign * coef, w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(m: i64, n: i64) -> ProjPoint {
        ProjPoint::new(m, n).unwrap()
    }

    fn sig(a: u32, b: u32, c: u32) -> Signature {
        Signature::new(a, b, c).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(pt(-25, -32), pt(25, 32));
        let p = pt(6, -4);
        assert_eq!((p.num().clone(), p.den().clone()), (big(-3), big(2)));
        let inf = pt(5, 0);
        assert_eq!((inf.num().clone(), inf.den().clone()), (big(1), big(0)));
        assert!(canonicalize(BigInt::zero(), BigInt::zero()).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(pt(9, 25).height(), BigUint::from(25u32));
        assert_eq!(pt(1, 0).height(), BigUint::from(1u32));
        assert_eq!(pt(-3, 2).height(), BigUint::from(3u32));
    }

    #[test]
    fn signature_chi() {
        assert_eq!(sig(2, 2, 2).chi(), Rational64::new(1, 2));
        assert_eq!(sig(2, 3, 5).chi(), Rational64::new(1, 30));
        assert!(!sig(3, 7, 42).is_spherical());
        assert!(Signature::new(1, 2, 3).is_err());
    }

    #[test]
    fn omega_membership() {
        assert!(in_omega(&pt(9, 1), sig(2, 3, 5), &[]));
        assert!(in_omega(&pt(0, 1), sig(2, 3, 5), &[]));
        assert!(in_omega(&pt(1, 1), sig(2, 2, 2), &[]));
        assert!(in_omega(&pt(1, 0), sig(2, 2, 2), &[]));
        assert!(!in_omega(&pt(2, 1), sig(2, 2, 2), &[]));
        assert!(in_omega(&pt(25, 32), sig(2, 3, 5), &[2, 7]));
        assert!(!in_omega(&pt(25, 32), sig(2, 3, 5), &[]));
    }

    #[test]
    fn coeff_worked_example() {
        // 25 + 7·1 − 32 = 0 from the representative (−25, −32)
        let t = coeff(&pt(25, 32), sig(2, 3, 5), &[2, 7]).unwrap();
        assert_eq!((t.a_coef, t.b_coef, t.c_coef), (big(1), big(7), big(-1)));
        assert_eq!(t.witness, (big(5), big(1), big(2)));
    }

    #[test]
    fn coeff_nine_one() {
        let t = coeff(&pt(9, 1), sig(2, 3, 5), &[]).unwrap();
        assert_eq!((t.a_coef, t.b_coef, t.c_coef), (big(1), big(1), big(-1)));
        assert_eq!(t.witness, (big(3), big(-2), big(1)));
    }

    #[test]
    fn coeff_zero_coordinate_convention() {
        let t = coeff(&pt(0, 1), sig(2, 2, 2), &[]).unwrap();
        assert_eq!((t.a_coef, t.b_coef, t.c_coef), (big(1), big(-1), big(1)));
        assert_eq!(t.witness, (big(0), big(1), big(1)));
    }

    #[test]
    fn coeff_rejects_non_members() {
        let err = coeff(&pt(2, 1), sig(2, 2, 2), &[]).unwrap_err();
        match err {
            PointError::NotInOmega { prime, .. } => assert_eq!(prime, BigUint::from(2u32)),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn coeff_j_map_round_trip() {
        for (m, n, s) in [(9i64, 25i64, sig(2, 2, 2)), (9, 1, sig(2, 3, 5)), (-16, 9, sig(2, 2, 2))] {
            let p = pt(m, n);
            assert!(in_omega(&p, s, &[]), "{p} should be a member");
            let t = coeff(&p, s, &[]).unwrap();
            let (x, _, z) = &t.witness;
            let back = canonicalize(-&t.a_coef * x.pow(s.a), &t.c_coef * z.pow(s.c)).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn point_serialization() {
        let p = pt(-9, 16);
        assert_eq!(p.to_string(), "-9/16");
        assert_eq!("-9/16".parse::<ProjPoint>().unwrap(), p);
        assert_eq!("18/-32".parse::<ProjPoint>().unwrap(), p);
        assert_eq!("1/0".parse::<ProjPoint>().unwrap(), pt(1, 0));
        assert_eq!("7".parse::<ProjPoint>().unwrap(), pt(7, 1));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "\"-9/16\"");
        assert_eq!(serde_json::from_str::<ProjPoint>(&json).unwrap(), p);
    }
}
