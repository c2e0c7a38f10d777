//! Area of the region R_φ = {(s,t) ∈ R² : max(|φ₀(s,t)|, |φ∞(s,t)|) ≤ 1}.
//!
//! By d-homogeneity the boundary in direction θ sits at radius
//! r(θ) = m(θ)^(−1/d) with m(θ) = max(|φ₀|, |φ∞|) on the unit circle, so the
//! area is ½∫ r(θ)² dθ. The integrand is piecewise analytic; its kinks are
//! the crossings |φ₀| = |φ∞|, i.e. circle zeros of (φ₀−φ∞)(φ₀+φ∞). Panels
//! never straddle a detected kink, and each panel is handled by adaptive
//! Gauss–Kronrod 15(7) bisection.

use crate::belyi::BelyiMapData;
use crate::forms::BinaryForm;

#[derive(Debug, Clone, Copy)]
pub struct VolumeResult {
    pub value: f64,
    pub error_bound: f64,
    pub subdivisions: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum VolumeError {
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("panel budget exhausted; reached error {0:e}")]
    Budget(f64),
}

const PANEL_BUDGET: usize = 1_000_000;
const BREAK_GRID: usize = 4096;

// Gauss-Kronrod 15(7) on [-1, 1]: Kronrod nodes/weights and the embedded
// 7-point Gauss weights (QUADPACK dqk15 constants).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn m_theta(phi0: &BinaryForm, phi_inf: &BinaryForm, theta: f64) -> f64 {
    let (s, t) = (theta.cos(), theta.sin());
    phi0.eval_f64(s, t).abs().max(phi_inf.eval_f64(s, t).abs())
}

pub fn boundary_radius_forms(phi0: &BinaryForm, phi_inf: &BinaryForm, theta: f64) -> f64 {
    let m = m_theta(phi0, phi_inf, theta);
    assert!(m > 0.0, "coprime forms cannot vanish simultaneously on the circle");
    m.powf(-1.0 / phi0.degree() as f64)
}

pub fn boundary_radius(map: &BelyiMapData, theta: f64) -> f64 {
    boundary_radius_forms(&map.phi0, &map.phi_inf, theta)
}

/// sup of r(θ), for bounding-box sizing of lattice scans.
pub fn max_boundary_radius(phi0: &BinaryForm, phi_inf: &BinaryForm) -> f64 {
    let mut r_max: f64 = 0.0;
    for i in 0..BREAK_GRID {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / BREAK_GRID as f64;
        r_max = r_max.max(boundary_radius_forms(phi0, phi_inf, theta));
    }
    // pad for grid resolution; callers only need a safe upper bound
    r_max * 1.01 + 1e-9
}

/// Circle zeros of (φ₀−φ∞)(φ₀+φ∞): sign changes on a fine grid, bisected.
fn detect_breaks(phi0: &BinaryForm, phi_inf: &BinaryForm) -> Vec<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let diff = phi0.sub(phi_inf);
    let sum = phi0.add(phi_inf);
    let mut breaks = vec![0.0, two_pi];
    for form in [&diff, &sum] {
        let g = |theta: f64| {
            let (s, t) = (theta.cos(), theta.sin());
            form.eval_f64(s, t)
        };
        let mut prev_theta = 0.0;
        let mut prev = g(0.0);
        for i in 1..=BREAK_GRID {
            let theta = two_pi * i as f64 / BREAK_GRID as f64;
            let cur = g(theta);
            if prev == 0.0 {
                breaks.push(prev_theta);
            } else if prev.signum() != cur.signum() && cur != 0.0 {
                let (mut lo, mut hi) = (prev_theta, theta);
                let (mut glo, _) = (prev, cur);
                while hi - lo > 1e-13 {
                    let mid = 0.5 * (lo + hi);
                    let gm = g(mid);
                    if gm == 0.0 {
                        break;
                    }
                    if gm.signum() == glo.signum() {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                breaks.push(0.5 * (lo + hi));
            }
            prev_theta = theta;
            prev = cur;
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    breaks
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (f1, f2) = (f(center - half * x), f(center + half * x));
        let pair = if x == 0.0 { f1 } else { f1 + f2 };
        kronrod += wk * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    (value, err)
}

pub fn volume_forms(
    phi0: &BinaryForm,
    phi_inf: &BinaryForm,
    tol: f64,
) -> Result<VolumeResult, VolumeError> {
    if !(tol > 0.0) {
        return Err(VolumeError::BadTolerance);
    }
    let d = phi0.degree() as f64;
    let integrand = |theta: f64| 0.5 * m_theta(phi0, phi_inf, theta).powf(-2.0 / d);
    let breaks = detect_breaks(phi0, phi_inf);
    let total_width: f64 = 2.0 * std::f64::consts::PI;

    let mut value = 0.0;
    let mut error = 0.0;
    let mut panels = 0usize;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-12 {
            continue;
        }
        let budget = tol * (b - a) / total_width;
        let (v, e, n) = adaptive(&integrand, a, b, budget, &mut panels)?;
        value += v;
        error += e;
        let _ = n;
    }
    Ok(VolumeResult { value, error_bound: error, subdivisions: panels })
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    panels: &mut usize,
) -> Result<(f64, f64, usize), VolumeError> {
    *panels += 1;
    if *panels > PANEL_BUDGET {
        return Err(VolumeError::Budget(tol));
    }
    let (v, e) = gk15(f, a, b);
    if e <= tol || b - a < 1e-14 {
        return Ok((v, e, 1));
    }
    let mid = 0.5 * (a + b);
    let (v1, e1, n1) = adaptive(f, a, mid, 0.5 * tol, panels)?;
    let (v2, e2, n2) = adaptive(f, mid, b, 0.5 * tol, panels)?;
    Ok((v1 + v2, e1 + e2, n1 + n2))
}

pub fn volume(map: &BelyiMapData, tol: f64) -> Result<VolumeResult, VolumeError> {
    volume_forms(&map.phi0, &map.phi_inf, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::catalog_by_name;
    use std::f64::consts::PI;

    fn f(d: usize, c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(d, c)
    }

    #[test]
    fn pythagoras_radius_is_one() {
        let m = catalog_by_name("pythagoras").unwrap();
        for k in 0..32 {
            let theta = 2.0 * PI * k as f64 / 32.0;
            assert!((boundary_radius(m, theta) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn square_region_radii() {
        let (p0, p_inf) = (f(2, &[0, 0, 1]), f(2, &[1, 0, 0]));
        assert!((boundary_radius_forms(&p0, &p_inf, 0.0) - 1.0).abs() < 1e-12);
        let r = boundary_radius_forms(&p0, &p_inf, PI / 4.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn pythagoras_volume_is_pi() {
        let m = catalog_by_name("pythagoras").unwrap();
        let v = volume(m, 1e-10).unwrap();
        assert!((v.value - PI).abs() < 1e-8, "{}", v.value);
        assert!(v.error_bound <= 1e-10);
    }

    #[test]
    fn square_regions_have_area_four() {
        let v = volume_forms(&f(2, &[0, 0, 1]), &f(2, &[1, 0, 0]), 1e-10).unwrap();
        assert!((v.value - 4.0).abs() < 1e-8, "{}", v.value);
        let v = volume_forms(&f(4, &[0, 0, 0, 0, 1]), &f(4, &[1, 0, 0, 0, 0]), 1e-10).unwrap();
        assert!((v.value - 4.0).abs() < 1e-8, "{}", v.value);
    }

    #[test]
    fn scaling_law() {
        let m = catalog_by_name("dihedral-3").unwrap();
        let v1 = volume(m, 1e-10).unwrap();
        let lam = 3i64;
        let scale = num_bigint::BigInt::from(lam.pow(m.degree() as u32));
        let v2 = volume_forms(&m.phi0.scale(&scale), &m.phi_inf.scale(&scale), 1e-10).unwrap();
        assert!((v2.value - v1.value / (lam * lam) as f64).abs() < 2e-10);
    }

    #[test]
    fn half_turn_symmetry() {
        for name in ["pythagoras", "dihedral-3", "octahedral"] {
            let m = catalog_by_name(name).unwrap();
            for k in 0..16 {
                let theta = 2.0 * PI * k as f64 / 16.0;
                let a = boundary_radius(m, theta);
                let b = boundary_radius(m, theta + PI);
                assert!((a - b).abs() < 1e-9 * a.abs().max(1.0), "{name} at {theta}");
            }
        }
    }

    #[test]
    fn all_catalog_volumes_converge() {
        for m in crate::belyi::catalog_all() {
            let v = volume(m, 1e-9).unwrap();
            assert!(v.value.is_finite() && v.value > 0.0, "{}", m.name);
            assert!(v.error_bound <= 1e-9, "{}: {}", m.name, v.error_bound);
        }
    }
}
