//! Randomized property suites over forms, points, maps, and defects.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use spherical_fermat::belyi::{catalog_all, permute, Perm};
use spherical_fermat::defects::{defect_of, defect_profile};
use spherical_fermat::factor::{perfect_power_root, power_free_part};
use spherical_fermat::forms::BinaryForm;
use spherical_fermat::points::canonicalize;

fn form_of_degree(d: usize) -> impl Strategy<Value = BinaryForm> {
    proptest::collection::vec(-9i64..=9, d + 1).prop_filter_map("nonzero form", |coeffs| {
        if coeffs.iter().all(|&c| c == 0) {
            None
        } else {
            Some(BinaryForm::from_i64(coeffs.len() - 1, &coeffs))
        }
    })
}

fn small_form(max_degree: usize) -> impl Strategy<Value = BinaryForm> {
    (1..=max_degree).prop_flat_map(form_of_degree)
}

proptest! {
    #[test]
    fn resultant_is_multiplicative(
        f in small_form(3),
        g in small_form(3),
        h in small_form(3),
    ) {
        let gh = g.mul(&h);
        let lhs = BinaryForm::resultant(&f, &gh).unwrap();
        let rhs = BinaryForm::resultant(&f, &g).unwrap() * BinaryForm::resultant(&f, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_swap_sign(f in small_form(4), g in small_form(4)) {
        let fg = BinaryForm::resultant(&f, &g).unwrap();
        let gf = BinaryForm::resultant(&g, &f).unwrap();
        let sign = if (f.degree() * g.degree()) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(fg, gf * BigInt::from(sign));
    }

    #[test]
    fn resultant_scaling(f in small_form(3), g in small_form(3), c in 1i64..=5) {
        let scaled = f.scale(&BigInt::from(c));
        let lhs = BinaryForm::resultant(&scaled, &g).unwrap();
        let rhs = BigInt::from(c).pow(g.degree() as u32) * BinaryForm::resultant(&f, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_homogeneous(f in small_form(5), s in -20i64..=20, t in -20i64..=20, lam in -5i64..=5) {
        let d = f.degree() as u32;
        let direct = f.eval(&BigInt::from(lam * s), &BigInt::from(lam * t));
        let scaled = BigInt::from(lam).pow(d) * f.eval(&BigInt::from(s), &BigInt::from(t));
        prop_assert_eq!(direct, scaled);
    }

    #[test]
    fn power_decompose_round_trip(x in small_form(3), c in prop::sample::select(vec![-6i64, -3, -2, -1, 1, 2, 3, 5, 6]), k in 2u32..=4) {
        let f = x.pow(k).scale(&BigInt::from(c));
        if let Some((c_out, x_out)) = f.power_decompose(k).unwrap() {
            // reassembly is exact and the content residue is k-th-power-free
            prop_assert_eq!(x_out.pow(k).scale(&c_out), f);
            let (free, _) = power_free_part(&c_out, k, &[]);
            prop_assert_eq!(free, c_out);
        } else {
            // only possible when the scalar kept f from being a k-th power
            prop_assert!(perfect_power_root(&BigInt::from(c), k).is_none());
        }
    }

    #[test]
    fn canonicalize_is_idempotent(m in -1000i64..=1000, n in -1000i64..=1000, k in prop::sample::select(vec![-7i64, -2, -1, 1, 2, 9])) {
        prop_assume!(m != 0 || n != 0);
        let p = canonicalize(BigInt::from(m), BigInt::from(n)).unwrap();
        let again = canonicalize(p.num().clone(), p.den().clone()).unwrap();
        prop_assert_eq!(&again, &p);
        // height is invariant under scaling the representative
        let scaled = canonicalize(BigInt::from(m * k), BigInt::from(n * k)).unwrap();
        prop_assert_eq!(scaled.height(), p.height());
    }

    #[test]
    fn defect_divides_resultant(
        (f, g) in (1usize..=6).prop_flat_map(|d| (form_of_degree(d), form_of_degree(d))),
        s in -50i64..=50,
        t in -50i64..=50,
    ) {
        prop_assume!((s, t) != (0, 0) && s.gcd(&t) == 1);
        let res = BinaryForm::resultant(&f, &g).unwrap();
        prop_assume!(!res.is_zero());
        let e = defect_of(&f, &g, &BigInt::from(s), &BigInt::from(t)).unwrap();
        prop_assert!((res.magnitude() % &e).is_zero(), "defect {e} vs resultant {res}");
    }
}

#[test]
fn permute_round_trips_on_catalog() {
    for m in catalog_all() {
        for sigma in Perm::ALL {
            let there = permute(m, sigma).unwrap();
            let back = permute(&there, sigma.inverse()).unwrap();
            assert_eq!(back.phi0, m.phi0, "{} under {sigma:?}", m.name);
            assert_eq!(back.phi_inf, m.phi_inf, "{} under {sigma:?}", m.name);
            assert_eq!(back.sig, m.sig, "{} under {sigma:?}", m.name);
        }
    }
}

#[test]
fn empirical_defect_frequencies_match_densities() {
    // frequencies over the primitive parameters of a 500-box, vs exact δₑ
    for name in ["pythagoras", "dihedral-3", "tetrahedral"] {
        let m = spherical_fermat::belyi::catalog_by_name(name).unwrap();
        let profile = defect_profile(m);
        let r = 500i64;
        let mut total = 0u64;
        let mut counts: std::collections::BTreeMap<num_bigint::BigUint, u64> =
            std::collections::BTreeMap::new();
        for s in -r..=r {
            for t in -r..=r {
                if (s, t) == (0, 0) || s.gcd(&t) != 1 {
                    continue;
                }
                let e = defect_of(&m.phi0, &m.phi_inf, &BigInt::from(s), &BigInt::from(t))
                    .unwrap();
                *counts.entry(e).or_insert(0) += 1;
                total += 1;
            }
        }
        for (e, freq) in &counts {
            let expected = spherical_fermat::defects::big_rational_to_f64(&profile.density(e));
            let observed = *freq as f64 / total as f64;
            assert!(
                (observed - expected).abs() < 0.01,
                "{name}: defect {e} observed {observed} expected {expected}"
            );
        }
        // every observed defect has positive predicted density
        let one = BigRational::one();
        let sum: BigRational = profile.defects.values().cloned().sum();
        assert_eq!(sum, one, "{name}: densities sum to 1");
    }
}
