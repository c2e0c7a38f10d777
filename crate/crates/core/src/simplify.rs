//! Simplification of Fermat equations and the integrality-lattice
//! substitution that adapts a catalog map to non-simplified coefficients.

use crate::belyi::{validate_named, BelyiError, BelyiMapData};
use crate::enumerate::{EnumerateError, FermatEquation};
use crate::factor::{factorize, power_free_part};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum SimplifyError {
    #[error("coefficients must have trivial common divisor")]
    NotCoprime,
    #[error("coefficient prime does not fit in u64")]
    PrimeTooLarge,
    #[error("search bound {0} too small: lattice span unstable under doubling")]
    Unstable(u64),
    #[error("no integral points found within the search bound")]
    EmptySearch,
    #[error("substitution basis is degenerate")]
    DegenerateBasis,
    #[error(transparent)]
    Equation(#[from] EnumerateError),
    #[error(transparent)]
    Belyi(#[from] BelyiError),
}

/// F′ with A′ = A·A₀ᵃ, B′ = B·B₁ᵇ, C′ = C·C∞𝑐 reduces to the simplified F;
/// returns F (with S = primes dividing A′B′C′) and the scalers (A₀, B₁, C∞).
pub fn simplify_equation(
    eq: &FermatEquation,
) -> Result<(FermatEquation, (BigInt, BigInt, BigInt)), SimplifyError> {
    if !eq.a_coef.gcd(&eq.b_coef).gcd(&eq.c_coef).is_one() {
        return Err(SimplifyError::NotCoprime);
    }
    let product = (&eq.a_coef * &eq.b_coef * &eq.c_coef).magnitude().clone();
    let mut s_primes = Vec::new();
    for (p, _) in factorize(&product) {
        s_primes.push(p.to_u64().ok_or(SimplifyError::PrimeTooLarge)?);
    }
    s_primes.sort_unstable();

    let (mut a, a0) = power_free_part(&eq.a_coef, eq.sig.a, &s_primes);
    let (mut b, b1) = power_free_part(&eq.b_coef, eq.sig.b, &s_primes);
    let (mut c, c_inf) = power_free_part(&eq.c_coef, eq.sig.c, &s_primes);
    if a.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    let f = FermatEquation::new(a, b, c, eq.sig, s_primes)?;
    debug_assert!(f.is_simplified());
    Ok((f, (BigInt::from(a0), BigInt::from(b1), BigInt::from(c_inf))))
}

/// Λ(α) for α(s,t) = (X(s,t)/A₀, Y(s,t)/B₁, Z(s,t)/C∞): the span of the
/// parameters with integral image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityLattice {
    /// rows generate Λ; lower triangular, positive diagonal, 0 ≤ b₂₁ < b₁₁
    pub basis: [[BigRational; 2]; 2],
    /// determinant of the basis = covolume of Λ
    pub det: BigRational,
}

/// Searches (s,t) = (u/D, v/D) with D = A₀·B₁·C∞ and |u|, |v| ≤ bound,
/// spans the integral points, and requires the span to be stable when the
/// bound doubles.
pub fn integrality_lattice(
    map: &BelyiMapData,
    scalers: (&BigInt, &BigInt, &BigInt),
    search_bound: u64,
) -> Result<IntegralityLattice, SimplifyError> {
    let (a0, b1, c_inf) = scalers;
    if a0.is_zero() || b1.is_zero() || c_inf.is_zero() {
        return Err(SimplifyError::DegenerateBasis);
    }
    let d: BigInt = BigInt::from((a0 * b1 * c_inf).magnitude().clone());
    let first = span_at(map, scalers, &d, search_bound)?;
    let second = span_at(map, scalers, &d, 2 * search_bound)?;
    if first != second {
        return Err(SimplifyError::Unstable(search_bound));
    }
    let [[b11, b12], [b21, b22]] = first;
    let rat = |num: &BigInt| BigRational::new(num.clone(), d.clone());
    let det = rat(&b11) * rat(&b22) - rat(&b12) * rat(&b21);
    Ok(IntegralityLattice {
        basis: [[rat(&b11), rat(&b12)], [rat(&b21), rat(&b22)]],
        det,
    })
}

/// HNF basis of D·Λ restricted to the search box, as integer rows.
fn span_at(
    map: &BelyiMapData,
    (a0, b1, c_inf): (&BigInt, &BigInt, &BigInt),
    d: &BigInt,
    bound: u64,
) -> Result<[[BigInt; 2]; 2], SimplifyError> {
    let db = bound as i64;
    let checks = [
        (&map.x_form, a0),
        (&map.y_form, b1),
        (&map.z_form, c_inf),
    ];
    // X(u/D, v/D) / A₀ ∈ Z ⟺ A₀·D^deg | X(u,v), and likewise for Y, Z
    let moduli: Vec<BigInt> = checks
        .iter()
        .map(|(form, scale)| {
            BigInt::from((d.pow(form.degree() as u32) * *scale).magnitude().clone())
        })
        .collect();
    let mut points: Vec<(BigInt, BigInt)> = Vec::new();
    for u in -db..=db {
        for v in -db..=db {
            if (u, v) == (0, 0) {
                continue;
            }
            let (ub, vb) = (BigInt::from(u), BigInt::from(v));
            let integral = checks
                .iter()
                .zip(&moduli)
                .all(|((form, _), m)| form.eval(&ub, &vb).mod_floor(m).is_zero());
            if integral {
                points.push((ub, vb));
            }
        }
    }
    hnf2(&points)
}

/// Lower-triangular HNF basis [(a,0),(b,c)] of the span of integer pairs.
fn hnf2(points: &[(BigInt, BigInt)]) -> Result<[[BigInt; 2]; 2], SimplifyError> {
    if points.is_empty() {
        return Err(SimplifyError::EmptySearch);
    }
    // combination with second coordinate gcd of all second coordinates
    let mut w = (BigInt::zero(), BigInt::zero());
    for p in points {
        if p.1.is_zero() {
            continue;
        }
        if w.1.is_zero() {
            w = p.clone();
            continue;
        }
        let e = w.1.extended_gcd(&p.1);
        w = (&e.x * &w.0 + &e.y * &p.0, e.gcd);
    }
    // first-axis residue after clearing second coordinates
    let mut a = BigInt::zero();
    for p in points {
        let reduced = if w.1.is_zero() {
            p.0.clone()
        } else {
            &p.0 - (&p.1 / &w.1) * &w.0
        };
        a = a.gcd(&reduced);
    }
    if a.is_zero() || w.1.is_zero() {
        return Err(SimplifyError::DegenerateBasis);
    }
    if w.1.is_negative() {
        w = (-w.0, -w.1);
    }
    let b = w.0.mod_floor(&a);
    Ok([[a, BigInt::zero()], [b, w.1]])
}

/// Composes the map with (s,t) ↦ s·v₁ + t·v₂ and re-validates; rational
/// bases are cleared to integers first (scaling φ by D^d, harmless to the
/// Belyi identity).
pub fn substitute(
    map: &BelyiMapData,
    basis: &[[BigRational; 2]; 2],
) -> Result<BelyiMapData, SimplifyError> {
    let mut denom = BigInt::one();
    for row in basis {
        for e in row {
            denom = denom.lcm(e.denom());
        }
    }
    let scaled: Vec<BigInt> = basis
        .iter()
        .flatten()
        .map(|e| (e * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    let (v1s, v1t, v2s, v2t) = (&scaled[0], &scaled[1], &scaled[2], &scaled[3]);
    if (v1s * v2t - v1t * v2s).is_zero() {
        return Err(SimplifyError::DegenerateBasis);
    }
    let phi0 = map.phi0.compose_linear(v1s, v2s, v1t, v2t);
    let phi_inf = map.phi_inf.compose_linear(v1s, v2s, v1t, v2t);
    Ok(validate_named(
        &format!("{}-substituted", map.name),
        &phi0,
        &phi_inf,
        map.sig,
    )?)
}

/// The primes dividing any of the three coefficients, ascending.
pub fn coefficient_primes(eq: &FermatEquation) -> Result<Vec<u64>, SimplifyError> {
    let product = (&eq.a_coef * &eq.b_coef * &eq.c_coef).magnitude().clone();
    let mut out = BTreeSet::new();
    for (p, _) in factorize(&product) {
        out.insert(p.to_u64().ok_or(SimplifyError::PrimeTooLarge)?);
    }
    Ok(out.into_iter().collect())
}
