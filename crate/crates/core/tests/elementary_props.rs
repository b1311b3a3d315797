use std::f64::consts::PI;

use lagmut::elementary::{
    cr_residual, cr_residual_of, elementary_count, elementary_index_witness, evaluate_formula,
    evaluate_section, phase_action, reeb_endpoint_sign, verify_section_properties,
    ElementarySection, GridSpec, SectionSamples, Side, Sign,
};
use lagmut::index::{disc_index, single_puncture_index, IndexData};
use proptest::prelude::*;

mod common;
use common::{all_sections, c, projection_data};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phase_action_is_equivariant(
        n in 2u32..=6,
        eps in 0.05f64..2.0,
        theta in prop::collection::vec(-PI..PI, 5),
        re in -4.0f64..4.0,
        lift in 0.0f64..4.0,
        lower in any::<bool>(),
        k in 1u32..=6,
    ) {
        let theta = theta[..n as usize - 1].to_vec();
        let zero = vec![0.0; n as usize - 1];
        let (with, without) = if lower {
            let k = (k - 1) % n + 1;
            (ElementarySection::lower(n, eps, k, theta.clone()).unwrap(), ElementarySection::lower(n, eps, k, zero).unwrap())
        } else {
            (ElementarySection::upper(n, eps, theta.clone()).unwrap(), ElementarySection::upper(n, eps, zero).unwrap())
        };
        let z = c(re, with.boundary_line() + lift);
        let a = evaluate_section(&with, z).unwrap();
        let b = phase_action(&theta, &evaluate_section(&without, z).unwrap()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).norm() <= 4.0 * f64::EPSILON * x.norm().max(1.0));
        }
    }

    #[test]
    fn endpoint_sign_composes(l1 in 1u32..20, l2 in 1u32..20, plus in any::<bool>()) {
        let s = if plus { Sign::Plus } else { Sign::Minus };
        let twice = reeb_endpoint_sign(reeb_endpoint_sign(s, l1).unwrap(), l1).unwrap();
        prop_assert_eq!(twice, s);
        let stepwise = reeb_endpoint_sign(reeb_endpoint_sign(s, l1).unwrap(), l2).unwrap();
        prop_assert_eq!(stepwise, reeb_endpoint_sign(s, l1 + l2).unwrap());
        prop_assert_eq!(reeb_endpoint_sign(s, l1).unwrap() == s, l1 % 2 == 0);
    }
}

#[test]
fn sections_satisfy_identity_and_boundary_condition() {
    for n in 2..=5 {
        for eps in [0.1, 0.5, 1.7] {
            let theta: Vec<f64> = (0..n - 1).map(|j| 0.7 * j as f64 - 0.4).collect();
            for (i, s) in all_sections(n, eps, &theta).into_iter().enumerate() {
                let samples = SectionSamples::random(&s, 1000, 17 + i as u64);
                let r = verify_section_properties(&s, &samples).unwrap();
                assert!(r.valid, "n={n} eps={eps} {s:?}: {r:?}");
            }
        }
    }
}

#[test]
fn spec_section_examples() {
    let s = ElementarySection::upper(3, 0.5, vec![0.3, 1.2]).unwrap();
    let r = verify_section_properties(&s, &SectionSamples::random(&s, 1000, 1)).unwrap();
    assert!(r.identity_residual < 1e-12 && r.modulus_spread < 1e-12, "{r:?}");
    let s = ElementarySection::lower(4, 0.5, 2, vec![0.0; 3]).unwrap();
    let r = verify_section_properties(&s, &SectionSamples::random(&s, 1000, 2)).unwrap();
    assert!(r.identity_residual < 1e-12 && r.modulus_spread < 1e-12, "{r:?}");
}

#[test]
fn tampered_boundary_line_is_detected() {
    // Formula with ε = 0.5 checked on the line of an ε = 0.2 section.
    let s = ElementarySection::lower(3, 0.5, 1, vec![0.0, 0.0]).unwrap();
    let wrong = ElementarySection::lower(3, 0.2, 1, vec![0.0, 0.0]).unwrap();
    let samples = SectionSamples::random(&wrong, 200, 3);
    let r = verify_section_properties(&s, &samples).unwrap();
    assert!(!r.valid);
    assert!(r.modulus_spread > 1e-3, "{r:?}");
}

#[test]
fn cauchy_riemann_residual_is_small_and_second_order() {
    for s in all_sections(3, 0.5, &[0.4, -0.9]) {
        let fine = cr_residual(&s, &GridSpec::default_for(&s, 1e-5)).unwrap();
        assert!(fine < 1e-8, "{s:?}: {fine}");
        let a = cr_residual(&s, &GridSpec::default_for(&s, 1e-3)).unwrap();
        let b = cr_residual(&s, &GridSpec::default_for(&s, 5e-4)).unwrap();
        let ratio = a / b;
        assert!((3.5..=4.5).contains(&ratio), "{s:?}: ratio {ratio}");
    }
}

#[test]
fn conjugated_section_fails_cauchy_riemann() {
    let s = ElementarySection::upper(2, 0.5, vec![0.0]).unwrap();
    let grid = GridSpec::default_for(&s, 1e-5);
    // z ↦ conj(z) + 2iε reflects across the boundary line, so it stays in the domain.
    let conj = cr_residual_of(|z| evaluate_formula(&s, z.conj() + c(0.0, 2.0 * s.eps)), &grid).unwrap();
    assert!(conj > 0.1, "{conj}");
}

#[test]
fn count_table_preserves_the_total() {
    for n in 2..=8 {
        let before = elementary_count(Side::Upper, false, n).unwrap() + elementary_count(Side::Lower, false, n).unwrap();
        let after = elementary_count(Side::Upper, true, n).unwrap() + elementary_count(Side::Lower, true, n).unwrap();
        assert_eq!(before, n as u64 + 1);
        assert_eq!(after, n as u64 + 1);
    }
}

#[test]
fn index_witness_agrees_with_the_numerical_oracle() {
    for n in 2..=6 {
        let theta: Vec<f64> = (0..n - 1).map(|j| 0.3 * j as f64).collect();
        for s in all_sections(n, 0.5, &theta) {
            let (mu, w) = projection_data(&s);
            assert_eq!((mu, w), (2, 1), "{s:?}");
            let data = IndexData::new(n, mu, w, vec![]).unwrap();
            assert_eq!(disc_index(&data), single_puncture_index(n, 1).unwrap());
        }
        let witness = elementary_index_witness(n).unwrap();
        assert_eq!((witness.maslov, witness.weighted_infinity), (2, 1));
        assert_eq!(witness.index, n as i64 + 1);
    }
}
