//! Exact arithmetic on homogeneous binary integer forms.
//!
//! A [`BinaryForm`] of degree d stores d+1 coefficients, `coeffs[i]`
//! multiplying s^i t^(d-i). Forms keep their declared degree even when the
//! leading coefficient vanishes (a factor of t), so nothing is silently
//! dehomogenized.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use crate::factor::{perfect_power_root, power_free_part};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("coefficient count {got} does not match degree {degree} (need degree + 1)")]
    CoefficientCount { degree: usize, got: usize },
    #[error("zero form has no content")]
    ZeroContent,
    #[error("resultant requires nonzero forms")]
    ZeroResultant,
    #[error("power index must be >= 1")]
    BadPowerIndex,
    #[error("zero form cannot be power-decomposed")]
    ZeroDecompose,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl std::fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryForm(deg {}; {})", self.degree, self.display())
    }
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<BigInt>) -> Result<Self, FormError> {
        if coeffs.len() != degree + 1 {
            return Err(FormError::CoefficientCount { degree, got: coeffs.len() });
        }
        Ok(Self { degree, coeffs })
    }

    /// The zero form; represented only at degree 0.
    pub fn zero() -> Self {
        Self { degree: 0, coeffs: vec![BigInt::zero()] }
    }

    pub fn constant(c: i64) -> Self {
        Self { degree: 0, coeffs: vec![BigInt::from(c)] }
    }

    /// Convenience constructor from small coefficients, `coeffs[i] * s^i t^(d-i)`.
    pub fn from_i64(degree: usize, coeffs: &[i64]) -> Self {
        Self::new(degree, coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("coefficient count mismatch")
    }

    /// c * s^i * t^(d-i)
    pub fn monomial(degree: usize, i: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[i] = c;
        Self { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the highest nonzero coefficient (s-degree), if any.
    pub fn s_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Index of the lowest nonzero coefficient (multiplicity of s), if any.
    pub fn s_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of the highest s-power present.
    pub fn leading(&self) -> &BigInt {
        self.s_degree().map(|i| &self.coeffs[i]).unwrap_or(&self.coeffs[0])
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let j = self.degree - i;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) if i == 1 => "s".into(),
                (i, 0) => format!("s^{i}"),
                (0, j) if j == 1 => "t".into(),
                (0, j) => format!("t^{j}"),
                (1, 1) => "s*t".into(),
                (1, j) => format!("s*t^{j}"),
                (i, 1) => format!("s^{i}*t"),
                (i, j) => format!("s^{i}*t^{j}"),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (k, term) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(term);
            } else if let Some(stripped) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(term);
            }
        }
        out
    }

    pub fn eval(&self, s: &BigInt, t: &BigInt) -> BigInt {
        // Horner in s with running powers of t.
        let mut acc = self.coeffs[self.degree].clone();
        let mut tp = BigInt::one();
        for i in (0..self.degree).rev() {
            tp *= t;
            acc = acc * s + &self.coeffs[i] * &tp;
        }
        acc
    }

    /// i128 evaluation; None on overflow at any intermediate step.
    pub fn eval_i128(&self, s: i128, t: i128) -> Option<i128> {
        let mut acc: i128 = self.coeffs[self.degree].to_i128()?;
        let mut tp: i128 = 1;
        for i in (0..self.degree).rev() {
            tp = tp.checked_mul(t)?;
            let c = self.coeffs[i].to_i128()?;
            acc = acc.checked_mul(s)?.checked_add(c.checked_mul(tp)?)?;
        }
        Some(acc)
    }

    pub fn eval_f64(&self, s: f64, t: f64) -> f64 {
        let mut acc = big_to_f64(&self.coeffs[self.degree]);
        let mut tp = 1.0;
        for i in (0..self.degree).rev() {
            tp *= t;
            acc = acc * s + big_to_f64(&self.coeffs[i]) * tp;
        }
        acc
    }

    /// gcd of |coefficients|; errors on the zero form.
    pub fn content(&self) -> Result<BigInt, FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroContent);
        }
        let mut g = BigUint::zero();
        for c in &self.coeffs {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                break;
            }
        }
        Ok(BigInt::from(g))
    }

    /// self / content, with the sign of the leading coefficient preserved.
    pub fn primitive_part(&self) -> Result<BinaryForm, FormError> {
        let c = self.content()?;
        Ok(self.div_scalar(&c))
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> BinaryForm {
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    fn div_scalar(&self, k: &BigInt) -> BinaryForm {
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c / k).collect() }
    }

    /// Sum of forms of equal declared degree.
    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "degree mismatch in form addition");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        if self.is_zero() || other.is_zero() {
            return BinaryForm::zero();
        }
        let d = self.degree + other.degree;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm { degree: d, coeffs }
    }

    pub fn pow(&self, k: u32) -> BinaryForm {
        let mut acc = BinaryForm::from_i64(0, &[1]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to s, as a form of degree d-1.
    pub fn derivative_s(&self) -> BinaryForm {
        if self.degree == 0 {
            return BinaryForm::zero();
        }
        let d = self.degree - 1;
        let coeffs = (1..=self.degree).map(|i| &self.coeffs[i] * BigInt::from(i)).collect();
        BinaryForm { degree: d, coeffs }
    }

    /// Composition with an integer linear substitution (s,t) -> (a s + b t, c s + d t).
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BinaryForm {
        let ls = BinaryForm::new(1, vec![b.clone(), a.clone()]).unwrap();
        let lt = BinaryForm::new(1, vec![d.clone(), c.clone()]).unwrap();
        let mut acc = BinaryForm::monomial(self.degree, 0, BigInt::zero());
        // build s^i t^(d-i) products incrementally
        let mut spow = vec![BinaryForm::from_i64(0, &[1])];
        for _ in 0..self.degree {
            spow.push(spow.last().unwrap().mul(&ls));
        }
        let mut tpow = vec![BinaryForm::from_i64(0, &[1])];
        for _ in 0..self.degree {
            tpow.push(tpow.last().unwrap().mul(&lt));
        }
        for (i, cf) in self.coeffs.iter().enumerate() {
            if cf.is_zero() {
                continue;
            }
            let term = spow[i].mul(&tpow[self.degree - i]).scale(cf);
            let term = pad_to_degree(&term, self.degree);
            acc = acc.add(&term);
        }
        acc
    }

    /// Sylvester resultant, f-rows first, fraction-free Bareiss elimination.
    ///
    /// Degrees are the declared form degrees, so factors of t (vanishing
    /// leading coefficients) contribute through genuinely zero matrix entries
    /// rather than a shrunken matrix.
    pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<BigInt, FormError> {
        if f.is_zero() || g.is_zero() {
            return Err(FormError::ZeroResultant);
        }
        let m = f.degree;
        let n = g.degree;
        if m == 0 {
            return Ok(f.coeffs[0].pow(n as u32));
        }
        if n == 0 {
            return Ok(g.coeffs[0].pow(m as u32));
        }
        let size = m + n;
        // row of f: descending coefficients c_m .. c_0 shifted
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for k in 0..=m {
                mat[row][row + k] = f.coeffs[m - k].clone();
            }
        }
        for row in 0..m {
            for k in 0..=n {
                mat[n + row][row + k] = g.coeffs[n - k].clone();
            }
        }
        Ok(bareiss_determinant(mat))
    }

    /// Nonconstant-gcd test: resultant vanishes iff the forms share a
    /// projective root over the algebraic closure.
    pub fn coprime(f: &BinaryForm, g: &BinaryForm) -> Result<bool, FormError> {
        Ok(!Self::resultant(f, g)?.is_zero())
    }

    /// gcd as binary forms: primitive with positive leading coefficient.
    pub fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
        if f.is_zero() {
            return normalize_sign(g.clone());
        }
        if g.is_zero() {
            return normalize_sign(f.clone());
        }
        let (es_f, et_f, pf) = f.split_monomials();
        let (es_g, et_g, pg) = g.split_monomials();
        let es = es_f.min(es_g);
        let et = et_f.min(et_g);
        let core = poly_gcd(&pf, &pg);
        let core_deg = core.len() - 1;
        let mut coeffs = vec![BigInt::zero(); core_deg + es + et + 1];
        for (i, c) in core.iter().enumerate() {
            coeffs[i + es] = c.clone();
        }
        normalize_sign(BinaryForm { degree: core_deg + es + et, coeffs })
    }

    /// Splits f = s^es * t^et * core where core has nonzero constant and
    /// leading coefficients as a polynomial in s.
    fn split_monomials(&self) -> (usize, usize, Vec<BigInt>) {
        let lo = self.s_multiplicity().expect("zero form");
        let hi = self.s_degree().unwrap();
        let et = self.degree - hi;
        (lo, et, self.coeffs[lo..=hi].to_vec())
    }

    /// If f = C * X^k with X primitive, positive leading coefficient and C
    /// free of k-th powers (integer k-th powers absorbed into X), returns the
    /// unique such pair.
    pub fn power_decompose(&self, k: u32) -> Result<Option<(BigInt, BinaryForm)>, FormError> {
        if k < 1 {
            return Err(FormError::BadPowerIndex);
        }
        if self.is_zero() {
            return Err(FormError::ZeroDecompose);
        }
        let (es, et, core) = self.split_monomials();
        if es % k as usize != 0 || et % k as usize != 0 {
            return Ok(None);
        }
        let content = self.content()?;
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        let prim: Vec<BigInt> = core.iter().map(|c| c / (&content * &sign)).collect();
        // prim is primitive with positive leading coefficient; find its k-th root
        let root = match poly_kth_root(&prim, k) {
            Some(r) => r,
            None => return Ok(None),
        };
        let signed_content = &sign * &content;
        // k = 1: everything is a first power, so C = sign and X absorbs the content
        let (c_free, mult) = if k == 1 {
            (sign.clone(), content.magnitude().clone())
        } else {
            power_free_part(&signed_content, k, &[])
        };
        let mult = BigInt::from(mult);
        let xdeg = (root.len() - 1) + es / k as usize + et / k as usize;
        let mut coeffs = vec![BigInt::zero(); xdeg + 1];
        for (i, c) in root.iter().enumerate() {
            coeffs[i + es / k as usize] = c * &mult;
        }
        let x = BinaryForm { degree: xdeg, coeffs };
        debug_assert_eq!(x.pow(k).scale(&c_free), *self);
        Ok(Some((c_free, x)))
    }

    /// Squarefree as a binary form (no repeated projective root).
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let (es, et, core) = self.split_monomials();
        if es > 1 || et > 1 {
            return false;
        }
        if core.len() == 1 {
            return true;
        }
        let d = poly_derivative(&core);
        poly_gcd(&core, &d).len() == 1
    }
}

fn pad_to_degree(f: &BinaryForm, degree: usize) -> BinaryForm {
    assert!(f.degree <= degree);
    if f.degree == degree {
        return f.clone();
    }
    // zero form composed/multiplied may have lost degree; re-pad as t-powers
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    coeffs[..f.coeffs.len()].clone_from_slice(&f.coeffs);
    BinaryForm { degree, coeffs }
}

fn normalize_sign(f: BinaryForm) -> BinaryForm {
    if f.is_zero() {
        return f;
    }
    let prim = f.primitive_part().unwrap();
    if prim.leading().is_negative() {
        prim.neg()
    } else {
        prim
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Fraction-free Bareiss determinant; consumes the matrix.
fn bareiss_determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    sign * mat[n - 1][n - 1].clone()
}

// ---- dense univariate helpers (ascending coefficients, nonempty, exact) ----

fn poly_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn poly_is_zero(v: &[BigInt]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn poly_content(v: &[BigInt]) -> BigInt {
    let mut g = BigUint::zero();
    for c in v {
        g = g.gcd(c.magnitude());
        if g.is_one() {
            break;
        }
    }
    BigInt::from(g)
}

fn poly_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = poly_content(v);
    if c.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
    if out.last().unwrap().is_negative() {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    out
}

fn poly_derivative(v: &[BigInt]) -> Vec<BigInt> {
    if v.len() <= 1 {
        return vec![BigInt::zero()];
    }
    (1..v.len()).map(|i| &v[i] * BigInt::from(i)).collect()
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division in Z[x]; None if not exactly divisible.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let num = poly_trim(num.to_vec());
    let den = poly_trim(den.to_vec());
    if poly_is_zero(&den) {
        return None;
    }
    if poly_is_zero(&num) {
        return Some(vec![BigInt::zero()]);
    }
    if num.len() < den.len() {
        return None;
    }
    let mut rem = num.clone();
    let mut quot = vec![BigInt::zero(); num.len() - den.len() + 1];
    let dlead = den.last().unwrap();
    for qi in (0..quot.len()).rev() {
        let ri = qi + den.len() - 1;
        if rem[ri].is_zero() {
            continue;
        }
        let (q, r) = rem[ri].div_rem(dlead);
        if !r.is_zero() {
            return None;
        }
        quot[qi] = q;
        for (j, dc) in den.iter().enumerate() {
            let delta = dc * &quot[qi];
            rem[qi + j] -= delta;
        }
    }
    if poly_is_zero(&rem) {
        Some(poly_trim(quot))
    } else {
        None
    }
}

/// Pseudo-remainder: lc(den)^(deg num - deg den + 1) * num mod den.
fn poly_pseudo_rem(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = poly_trim(num.to_vec());
    let den = poly_trim(den.to_vec());
    let dlead = den.last().unwrap().clone();
    let dd = den.len() - 1;
    while rem.len() > dd && !poly_is_zero(&rem) {
        let shift = rem.len() - 1 - dd;
        let rl = rem.last().unwrap().clone();
        rem.iter_mut().for_each(|c| *c *= &dlead);
        for (j, dc) in den.iter().enumerate() {
            rem[shift + j] -= dc * &rl;
        }
        rem = poly_trim(rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    rem
}

/// Primitive-PRS gcd in Z[x]; primitive output with positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut f = poly_primitive(&poly_trim(a.to_vec()));
    let mut g = poly_primitive(&poly_trim(b.to_vec()));
    if poly_is_zero(&f) {
        return g;
    }
    if poly_is_zero(&g) {
        return f;
    }
    let int_gcd = BigInt::from(poly_content(a).magnitude().gcd(poly_content(b).magnitude()));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.len() == 1 {
            if g[0].is_zero() {
                break;
            }
            f = vec![BigInt::one()];
            break;
        }
        let r = poly_pseudo_rem(&f, &g);
        if poly_is_zero(&r) {
            f = g;
            break;
        }
        f = g;
        g = poly_primitive(&r);
    }
    // re-attach shared integer content so that gcd(2, 4x) = 2
    let mut out = f;
    if !int_gcd.is_one() {
        out.iter_mut().for_each(|c| *c *= &int_gcd);
    }
    out
}

/// Yun squarefree decomposition of a primitive polynomial with positive
/// leading coefficient: f = prod factors[i].0 ^ factors[i].1.
fn poly_squarefree_decomposition(f: &[BigInt]) -> Vec<(Vec<BigInt>, u32)> {
    let f = poly_trim(f.to_vec());
    if f.len() == 1 {
        return vec![];
    }
    let df = poly_derivative(&f);
    let a0 = poly_gcd(&f, &df);
    let mut b = poly_div_exact(&f, &a0).expect("gcd divides");
    let mut c = poly_div_exact(&df, &a0).expect("gcd divides derivative");
    let mut out = Vec::new();
    let mut i = 1u32;
    loop {
        let db = poly_derivative(&b);
        let d: Vec<BigInt> = {
            let n = c.len().max(db.len());
            let mut v = vec![BigInt::zero(); n];
            for (k, x) in c.iter().enumerate() {
                v[k] += x;
            }
            for (k, x) in db.iter().enumerate() {
                v[k] -= x;
            }
            poly_trim(v)
        };
        if b.len() == 1 {
            break;
        }
        let a = poly_gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = poly_div_exact(&b, &a).expect("gcd divides b");
        c = poly_div_exact(&d, &a).expect("gcd divides d");
        i += 1;
    }
    out
}

/// k-th root of a primitive positive-leading polynomial, if one exists.
fn poly_kth_root(f: &[BigInt], k: u32) -> Option<Vec<BigInt>> {
    let f = poly_trim(f.to_vec());
    if f.len() == 1 {
        // constant: primitive positive => 1
        return if f[0].is_one() { Some(vec![BigInt::one()]) } else { None };
    }
    if k == 1 {
        return Some(f);
    }
    if (f.len() - 1) % k as usize != 0 {
        return None;
    }
    let decomp = poly_squarefree_decomposition(&f);
    let mut root = vec![BigInt::one()];
    let mut check_deg = 0usize;
    for (g, m) in &decomp {
        if m % k != 0 {
            return None;
        }
        for _ in 0..m / k {
            root = poly_mul(&root, g);
        }
        check_deg += (g.len() - 1) * (*m as usize);
    }
    if check_deg != f.len() - 1 {
        return None;
    }
    // verify exactly
    let mut acc = vec![BigInt::one()];
    for _ in 0..k {
        acc = poly_mul(&acc, &root);
    }
    if poly_trim(acc) == f {
        Some(root)
    } else {
        None
    }
}

// ---- serialization: {"degree": d, "coeffs": ["…", …]}, decimal strings ----

#[derive(Serialize, Deserialize)]
struct FormRecord {
    degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormRecord {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rec = FormRecord::deserialize(deserializer)?;
        let coeffs: Result<Vec<BigInt>, _> = rec
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}"))))
            .collect();
        BinaryForm::new(rec.degree, coeffs?).map_err(D::Error::custom)
    }
}
