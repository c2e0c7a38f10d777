//! Geometrically Galois Belyi maps over Q: the data model, validation, a
//! catalog for the spherical signatures, permutation of {0,1,∞}, and the
//! associated Fermat equation.
//!
//! A map is stored as coprime forms (φ₀ : φ∞) of common degree d = 2/χ with
//! φ₁ = φ₀ − φ∞ and power decompositions φ₀ = C₀Xᵃ, φ₁ = C₁Yᵇ, φ∞ = C∞Z𝑐.

use crate::enumerate::FermatEquation;
use crate::factor::factorize;
use crate::forms::{BinaryForm, FormError};
use crate::points::{canonicalize, coeff, CoeffTriple, PointError, ProjPoint, Signature};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum BelyiError {
    #[error("form error: {0}")]
    Form(#[from] FormError),
    #[error("point error: {0}")]
    Point(#[from] PointError),
    #[error("the forms must be nonzero")]
    ZeroForm,
    #[error("degree mismatch: phi0 has degree {0}, phiInf degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("signature {0} is not spherical")]
    NotSpherical(Signature),
    #[error("degree {degree} does not equal 2/chi = {expected} for signature {sig}")]
    WrongDegree { degree: usize, expected: i64, sig: Signature },
    #[error("{which} is not a constant times a {exponent}-th power")]
    NotAPower { which: &'static str, exponent: u32 },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(&'static str, &'static str),
    #[error("no catalog entry for signature {0}")]
    NoCatalogEntry(Signature),
    #[error("a prime factor of the resultant data exceeds 64 bits: {0}")]
    PrimeTooLarge(num_bigint::BigUint),
    #[error("parameter (s,t) must be coprime")]
    ParameterNotCoprime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelyiMapData {
    pub name: String,
    pub sig: Signature,
    pub phi0: BinaryForm,
    pub phi1: BinaryForm,
    pub phi_inf: BinaryForm,
    pub x_form: BinaryForm,
    pub y_form: BinaryForm,
    pub z_form: BinaryForm,
    pub c0: BigInt,
    pub c1: BigInt,
    pub c_inf: BigInt,
    res0_factors: BTreeMap<u64, u32>,
    res1_factors: BTreeMap<u64, u32>,
    bad_primes: Vec<u64>,
}

impl BelyiMapData {
    pub fn degree(&self) -> usize {
        self.phi0.degree()
    }

    /// R(φ) = |Res(φ₀, φ∞)|.
    pub fn resultant(&self) -> BigInt {
        factors_value(&self.res0_factors)
    }

    pub fn resultant_factors(&self) -> &BTreeMap<u64, u32> {
        &self.res0_factors
    }

    pub fn resultant1_factors(&self) -> &BTreeMap<u64, u32> {
        &self.res1_factors
    }

    /// S(φ): primes dividing C₀·C₁·C∞ or either resultant. A computable
    /// superset of the minimal bad set.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }
}

impl fmt::Display for BelyiMapData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: ({}) : ({})",
            self.name,
            self.sig,
            self.phi0.display(),
            self.phi_inf.display()
        )
    }
}

fn factors_value(factors: &BTreeMap<u64, u32>) -> BigInt {
    let mut out = BigInt::one();
    for (&p, &e) in factors {
        out *= BigInt::from(p).pow(e);
    }
    out
}

fn factorize_u64(n: &BigInt, out: &mut BTreeMap<u64, u32>, mult: u32) -> Result<(), BelyiError> {
    if n.magnitude().is_one() {
        return Ok(());
    }
    for (p, e) in factorize(n.magnitude()) {
        let p = p.to_u64().ok_or(BelyiError::PrimeTooLarge(p))?;
        *out.entry(p).or_insert(0) += e * mult;
    }
    Ok(())
}

/// Checks the invariants of a candidate (φ₀, φ∞, sig) and assembles the data.
pub fn validate(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    sig: Signature,
) -> Result<BelyiMapData, BelyiError> {
    validate_named("user", phi0, phi_inf, sig)
}

pub fn validate_named(
    name: &str,
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    sig: Signature,
) -> Result<BelyiMapData, BelyiError> {
    if phi0.is_zero() || phi_inf.is_zero() {
        return Err(BelyiError::ZeroForm);
    }
    let d = phi0.degree();
    if phi_inf.degree() != d {
        return Err(BelyiError::DegreeMismatch(d, phi_inf.degree()));
    }
    if !sig.is_spherical() {
        return Err(BelyiError::NotSpherical(sig));
    }
    let chi = sig.chi();
    let expected = (Rational64::from_integer(2) / chi).to_integer();
    if chi * Rational64::from_integer(d as i64) != Rational64::from_integer(2) {
        return Err(BelyiError::WrongDegree { degree: d, expected, sig });
    }

    let (c0, x_form) = phi0
        .power_decompose(sig.a)?
        .ok_or(BelyiError::NotAPower { which: "phi0", exponent: sig.a })?;
    let (c_inf, z_form) = phi_inf
        .power_decompose(sig.c)?
        .ok_or(BelyiError::NotAPower { which: "phiInf", exponent: sig.c })?;
    let res_xz = BinaryForm::resultant(&x_form, &z_form)?;
    if res_xz.is_zero() {
        return Err(BelyiError::NotCoprime("phi0", "phiInf"));
    }
    let phi1 = phi0.sub(phi_inf);
    if phi1.is_zero() {
        return Err(BelyiError::ZeroForm);
    }
    let (c1, y_form) = phi1
        .power_decompose(sig.b)?
        .ok_or(BelyiError::NotAPower { which: "phi1", exponent: sig.b })?;
    let res_yz = BinaryForm::resultant(&y_form, &z_form)?;
    if res_yz.is_zero() {
        return Err(BelyiError::NotCoprime("phi1", "phiInf"));
    }

    // |Res(φ₀, φ∞)| = |C₀|^d · |C∞|^d · |Res(X,Z)|^(a·c), by multiplicativity;
    // the direct Sylvester determinant is prohibitive at degree 60.
    let d32 = d as u32;
    let mut res0 = BTreeMap::new();
    factorize_u64(&c0, &mut res0, d32)?;
    factorize_u64(&c_inf, &mut res0, d32)?;
    factorize_u64(&res_xz, &mut res0, sig.a * sig.c)?;
    let mut res1 = BTreeMap::new();
    factorize_u64(&c1, &mut res1, d32)?;
    factorize_u64(&c_inf, &mut res1, d32)?;
    factorize_u64(&res_yz, &mut res1, sig.b * sig.c)?;

    let mut coef_factors = BTreeMap::new();
    factorize_u64(&(&c0 * &c1 * &c_inf), &mut coef_factors, 1)?;
    let mut bad_primes: Vec<u64> = coef_factors
        .keys()
        .chain(res0.keys())
        .chain(res1.keys())
        .copied()
        .collect();
    bad_primes.sort_unstable();
    bad_primes.dedup();

    Ok(BelyiMapData {
        name: name.to_string(),
        sig,
        phi0: phi0.clone(),
        phi1,
        phi_inf: phi_inf.clone(),
        x_form,
        y_form,
        z_form,
        c0,
        c1,
        c_inf,
        res0_factors: res0,
        res1_factors: res1,
        bad_primes,
    })
}

/// The six permutations of {0, 1, ∞}, realized by Möbius transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Perm {
    Id,
    Swap01,
    Swap0Inf,
    Swap1Inf,
    /// 0 → 1 → ∞ → 0
    Cycle,
    /// 0 → ∞ → 1 → 0
    CycleInv,
}

impl Perm {
    pub const ALL: [Perm; 6] =
        [Perm::Id, Perm::Swap01, Perm::Swap0Inf, Perm::Swap1Inf, Perm::Cycle, Perm::CycleInv];

    pub fn inverse(self) -> Perm {
        match self {
            Perm::Cycle => Perm::CycleInv,
            Perm::CycleInv => Perm::Cycle,
            other => other,
        }
    }
}

/// Post-composes the map with the Möbius transform realizing σ and
/// re-validates. The signature entries are permuted accordingly.
pub fn permute(map: &BelyiMapData, sigma: Perm) -> Result<BelyiMapData, BelyiError> {
    let Signature { a, b, c } = map.sig;
    let (phi0, phi_inf, (na, nb, nc)) = match sigma {
        Perm::Id => return Ok(map.clone()),
        // 1 − φ
        Perm::Swap01 => (map.phi1.neg(), map.phi_inf.clone(), (b, a, c)),
        // 1/φ
        Perm::Swap0Inf => (map.phi_inf.clone(), map.phi0.clone(), (c, b, a)),
        // φ/(φ − 1)
        Perm::Swap1Inf => (map.phi0.clone(), map.phi1.clone(), (a, c, b)),
        // 1/(1 − φ)
        Perm::Cycle => (map.phi_inf.clone(), map.phi1.neg(), (c, a, b)),
        // (φ − 1)/φ
        Perm::CycleInv => (map.phi1.clone(), map.phi0.clone(), (b, c, a)),
    };
    let name = format!("{}.{:?}", map.name, sigma);
    validate_named(&name, &phi0, &phi_inf, Signature::new(na, nb, nc)?)
}

/// The S(φ)-simplified Fermat equation attached to the map: from
/// −C₀Xᵃ + C₁Yᵇ + C∞Z𝑐 = 0, negated if needed so the x-coefficient is
/// positive.
pub fn coeff_of_map(map: &BelyiMapData) -> FermatEquation {
    let eps = -map.c0.signum();
    FermatEquation::new(
        &eps * -&map.c0,
        &eps * &map.c1,
        &eps * &map.c_inf,
        map.sig,
        map.bad_primes.clone(),
    )
    .expect("map constants are nonzero")
}

/// φ(s:t) as a canonical point together with its coefficient triple.
///
/// When the parameter has primitivity defect 1 the triple is checked against
/// coeff_of_map: slots with odd exponent are compared up to the sign of the
/// coefficient (the witness absorbs it), and slots with a zero witness
/// coordinate are skipped (the zero-coordinate convention forces 1 there).
pub fn solution_from_parameter(
    map: &BelyiMapData,
    s: &BigInt,
    t: &BigInt,
) -> Result<(ProjPoint, CoeffTriple), BelyiError> {
    if !s.gcd(t).is_one() {
        return Err(BelyiError::ParameterNotCoprime);
    }
    let v0 = map.phi0.eval(s, t);
    let v_inf = map.phi_inf.eval(s, t);
    let q = canonicalize(v0.clone(), v_inf.clone())?;
    let triple = coeff(&q, map.sig, &map.bad_primes)?;
    if v0.gcd(&v_inf).is_one() {
        let eq = coeff_of_map(map);
        let slots = [
            (&triple.a_coef, &eq.a_coef, &triple.witness.0, map.sig.a),
            (&triple.b_coef, &eq.b_coef, &triple.witness.1, map.sig.b),
            (&triple.c_coef, &eq.c_coef, &triple.witness.2, map.sig.c),
        ];
        for (got, want, w, k) in slots {
            if w.is_zero() {
                continue;
            }
            let ok = if k % 2 == 1 {
                got.magnitude() == want.magnitude()
            } else {
                got == want
            };
            assert!(ok, "defect-1 parameter ({s},{t}) yields {triple}, map equation {eq}");
        }
    }
    Ok((q, triple))
}

/// A catalog row as serialized to and from the shipped data file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawMapRecord {
    pub name: String,
    pub sig: (u32, u32, u32),
    pub phi0: BinaryForm,
    #[serde(rename = "phiInf")]
    pub phi_inf: BinaryForm,
}

impl RawMapRecord {
    pub fn validate(&self) -> Result<BelyiMapData, BelyiError> {
        let (a, b, c) = self.sig;
        validate_named(&self.name, &self.phi0, &self.phi_inf, Signature::new(a, b, c)?)
    }
}

pub fn from_map(map: &BelyiMapData) -> RawMapRecord {
    RawMapRecord {
        name: map.name.clone(),
        sig: (map.sig.a, map.sig.b, map.sig.c),
        phi0: map.phi0.clone(),
        phi_inf: map.phi_inf.clone(),
    }
}

/// Parses a catalog file: a JSON list of RawMapRecord.
pub fn load_catalog(text: &str) -> Result<Vec<BelyiMapData>, Box<dyn std::error::Error>> {
    let raws: Vec<RawMapRecord> = serde_json::from_str(text)?;
    let mut out = Vec::new();
    for raw in raws {
        out.push(raw.validate()?);
    }
    Ok(out)
}

fn f(d: usize, c: &[i64]) -> BinaryForm {
    BinaryForm::from_i64(d, c)
}

fn dihedral(c: u32) -> (BinaryForm, BinaryForm) {
    let cu = c as usize;
    let mut v = vec![BigInt::zero(); cu + 1];
    v[0] = BigInt::one();
    v[cu] = BigInt::one();
    let phi0 = BinaryForm::new(cu, v).unwrap().pow(2);
    let phi_inf = BinaryForm::monomial(2 * cu, cu, BigInt::from(4));
    (phi0, phi_inf)
}

fn build_catalog() -> Vec<BelyiMapData> {
    let mut rows: Vec<(&str, u32, u32, u32, BinaryForm, BinaryForm)> = Vec::new();

    rows.push((
        "pythagoras",
        2,
        2,
        2,
        f(2, &[-1, 0, 1]).pow(2),
        f(2, &[1, 0, 1]).pow(2),
    ));
    for c in [2u32, 3, 5] {
        let (phi0, phi_inf) = dihedral(c);
        let name: &str = match c {
            2 => "dihedral-2",
            3 => "dihedral-3",
            _ => "dihedral-5",
        };
        rows.push((name, 2, 2, c, phi0, phi_inf));
    }

    let tet0 = f(2, &[-2, -2, 1]).mul(&f(4, &[4, -4, 6, 2, 1])).pow(2);
    let tet_inf = f(1, &[1, 0])
        .mul(&f(1, &[-1, 1]))
        .mul(&f(2, &[1, 1, 1]))
        .pow(3)
        .scale(&BigInt::from(-64));
    rows.push(("tetrahedral", 2, 3, 3, tet0, tet_inf));

    let oct_x = f(2, &[0, 4, 0])
        .mul(&f(2, &[-3, 0, 1]))
        .mul(&f(4, &[81, 0, 6, 0, 1]))
        .mul(&f(4, &[3, 0, 2, 0, 3]));
    let oct0 = oct_x.pow(2).neg();
    let oct_inf = f(2, &[3, 0, 1]).mul(&f(4, &[9, 0, -18, 0, 1])).pow(4);
    rows.push(("octahedral", 2, 3, 4, oct0, oct_inf));

    let mut k10 = vec![0i64; 11];
    k10[0] = 256;
    k10[10] = 81;
    let mut p20 = vec![0i64; 21];
    p20[0] = 65536;
    p20[5] = 19243008;
    p20[10] = -207484416;
    p20[15] = -6088608;
    p20[20] = 6561;
    let ico0 = f(10, &k10).mul(&f(20, &p20)).pow(2).neg();
    let mut g10 = vec![0i64; 11];
    g10[0] = -256;
    g10[5] = -1584;
    g10[10] = 81;
    let ico_inf = f(2, &[0, 1, 0])
        .mul(&f(10, &g10))
        .pow(5)
        .scale(&BigInt::from(248832));
    rows.push(("icosahedral", 2, 3, 5, ico0, ico_inf));

    rows.into_iter()
        .map(|(name, a, b, c, phi0, phi_inf)| {
            validate_named(name, &phi0, &phi_inf, Signature::new(a, b, c).unwrap())
                .unwrap_or_else(|e| panic!("catalog row {name} failed validation: {e}"))
        })
        .collect()
}

static CATALOG: Lazy<Vec<BelyiMapData>> = Lazy::new(build_catalog);

pub fn catalog_all() -> &'static [BelyiMapData] {
    &CATALOG
}

pub fn catalog_by_name(name: &str) -> Option<&'static BelyiMapData> {
    CATALOG.iter().find(|m| m.name == name)
}

/// The table row for a spherical signature, matched after nondecreasing
/// reorder: (2,2,c) → dihedral, (2,3,3), (2,3,4), (2,3,5).
pub fn catalog(sig: Signature) -> Result<&'static BelyiMapData, BelyiError> {
    if !sig.is_spherical() {
        return Err(BelyiError::NotSpherical(sig));
    }
    let mut key = [sig.a, sig.b, sig.c];
    key.sort_unstable();
    CATALOG
        .iter()
        .find(|m| m.name != "pythagoras" && {
            let mut k = [m.sig.a, m.sig.b, m.sig.c];
            k.sort_unstable();
            k == key
        })
        .ok_or(BelyiError::NoCatalogEntry(sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::in_omega;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn pythagoras_validates() {
        let m = catalog_by_name("pythagoras").unwrap();
        assert_eq!(m.degree(), 4);
        assert_eq!(m.phi1, f(4, &[0, 0, -4, 0, 0]));
        assert_eq!((&m.c0, &m.c1, &m.c_inf), (&big(1), &big(-1), &big(1)));
        assert_eq!(m.x_form, f(2, &[-1, 0, 1]));
        assert_eq!(m.y_form, f(2, &[0, 2, 0]));
        assert_eq!(m.z_form, f(2, &[1, 0, 1]));
        assert_eq!(m.resultant(), big(256));
        assert_eq!(m.bad_primes(), &[2]);
    }

    #[test]
    fn dihedral_rows() {
        let m = catalog(Signature::new(2, 2, 3).unwrap()).unwrap();
        assert_eq!(m.name, "dihedral-3");
        assert_eq!(m.degree(), 6);
        assert_eq!(m.phi1, f(3, &[-1, 0, 0, 1]).pow(2));
        assert_eq!((&m.c0, &m.c1, &m.c_inf), (&big(1), &big(1), &big(4)));
        assert_eq!(m.z_form, f(2, &[0, 1, 0]));
        assert_eq!(m.resultant(), BigInt::from(2).pow(12));

        let m2 = catalog(Signature::new(2, 2, 2).unwrap()).unwrap();
        assert_eq!(m2.name, "dihedral-2");
        assert_eq!(m2.z_form, f(2, &[0, 2, 0]));
        assert_eq!((&m2.c0, &m2.c1, &m2.c_inf), (&big(1), &big(1), &big(1)));
    }

    #[test]
    fn exotic_rows_validate() {
        let tet = catalog_by_name("tetrahedral").unwrap();
        assert_eq!(tet.degree(), 12);
        assert_eq!((&tet.c0, &tet.c1, &tet.c_inf), (&big(1), &big(1), &big(-1)));
        assert_eq!(tet.z_form, f(4, &[-4, 0, 0, 4, 0]));

        let oct = catalog_by_name("octahedral").unwrap();
        assert_eq!(oct.degree(), 24);
        assert_eq!((&oct.c0, &oct.c1, &oct.c_inf), (&big(-1), &big(-1), &big(1)));

        let ico = catalog_by_name("icosahedral").unwrap();
        assert_eq!(ico.degree(), 60);
        assert_eq!((&ico.c0, &ico.c1, &ico.c_inf), (&big(-1), &big(-1), &big(1)));
        // resultant is smooth: primes 2, 3, 5 only
        assert!(ico.resultant_factors().keys().all(|p| [2, 3, 5].contains(p)));
    }

    #[test]
    fn degree_chi_law() {
        for m in catalog_all() {
            let chi = m.sig.chi();
            assert_eq!(chi * Rational64::from_integer(m.degree() as i64), Rational64::from_integer(2));
        }
    }

    #[test]
    fn validate_rejects_bad_input() {
        let sig = Signature::new(2, 2, 2).unwrap();
        let e = validate(&f(4, &[0, 0, 0, 0, 1]), &f(4, &[0, 0, 1, 0, 0]), sig).unwrap_err();
        assert!(matches!(e, BelyiError::NotCoprime(..)), "{e}");
        let e = validate(&f(2, &[1, 0, 1]), &f(2, &[0, 1, 0]), sig).unwrap_err();
        assert!(matches!(e, BelyiError::WrongDegree { .. }), "{e}");
        assert!(catalog(Signature::new(3, 7, 42).unwrap()).is_err());
    }

    #[test]
    fn permute_examples() {
        let py = catalog_by_name("pythagoras").unwrap();
        let id = permute(py, Perm::Id).unwrap();
        assert_eq!(&id, py);

        let sw = permute(py, Perm::Swap01).unwrap();
        assert_eq!(sw.phi0, f(4, &[0, 0, 4, 0, 0]));
        assert_eq!(sw.sig, py.sig);

        let di = catalog_by_name("dihedral-3").unwrap();
        let sw = permute(di, Perm::Swap0Inf).unwrap();
        assert_eq!(sw.sig, Signature::new(3, 2, 2).unwrap());
    }

    #[test]
    fn permute_round_trips() {
        for name in ["pythagoras", "dihedral-3", "tetrahedral"] {
            let m = catalog_by_name(name).unwrap();
            for p in Perm::ALL {
                let back = permute(&permute(m, p).unwrap(), p.inverse()).unwrap();
                assert_eq!(back.phi0, m.phi0, "{name} {p:?}");
                assert_eq!(back.phi_inf, m.phi_inf, "{name} {p:?}");
                assert_eq!(back.sig, m.sig, "{name} {p:?}");
            }
        }
    }

    #[test]
    fn map_equations() {
        let py = coeff_of_map(catalog_by_name("pythagoras").unwrap());
        assert_eq!(py.to_string(), "x^2 + y^2 - z^2 = 0");
        let di = coeff_of_map(catalog_by_name("dihedral-3").unwrap());
        assert_eq!(di.to_string(), "x^2 - y^2 - 4z^3 = 0");
        // the X,Y,Z forms witness the equation identically in (s,t)
        for m in catalog_all() {
            let eq = coeff_of_map(m);
            let total = m
                .x_form
                .pow(m.sig.a)
                .scale(&eq.a_coef)
                .add(&m.y_form.pow(m.sig.b).scale(&eq.b_coef))
                .add(&m.z_form.pow(m.sig.c).scale(&eq.c_coef));
            assert!(total.is_zero(), "{}", m.name);
        }
    }

    #[test]
    fn solutions_from_parameters() {
        let py = catalog_by_name("pythagoras").unwrap();
        let (q, t) = solution_from_parameter(py, &big(2), &big(1)).unwrap();
        assert_eq!(q, ProjPoint::new(9, 25).unwrap());
        assert_eq!(t.witness, (big(3), big(4), big(5)));
        assert_eq!((t.a_coef, t.b_coef, t.c_coef), (big(1), big(1), big(-1)));

        let (q, t) = solution_from_parameter(py, &big(1), &big(1)).unwrap();
        assert_eq!(q, ProjPoint::new(0, 1).unwrap());
        assert_eq!(t.witness, (big(0), big(1), big(1)));

        let di = catalog_by_name("dihedral-3").unwrap();
        let (q, _) = solution_from_parameter(di, &big(1), &big(0)).unwrap();
        assert_eq!(q, ProjPoint::new(1, 0).unwrap());

        assert!(solution_from_parameter(py, &big(2), &big(2)).is_err());
    }

    #[test]
    fn images_are_members() {
        for m in catalog_all() {
            for (s, t) in [(1i64, 2i64), (3, 1), (5, -4), (7, 2), (-3, 8)] {
                let (q, _) = solution_from_parameter(m, &big(s), &big(t)).unwrap();
                assert!(in_omega(&q, m.sig, m.bad_primes()), "{} ({s},{t}) -> {q}", m.name);
            }
        }
    }

    #[test]
    fn catalog_round_trips_through_records() {
        let records: Vec<RawMapRecord> = catalog_all().iter().map(from_map).collect();
        let text = serde_json::to_string(&records).unwrap();
        let reloaded = load_catalog(&text).unwrap();
        assert_eq!(reloaded.len(), catalog_all().len());
        for (a, b) in reloaded.iter().zip(catalog_all()) {
            assert_eq!(a, b);
        }
    }
}
