use num_bigint::BigInt;
use probident_core::exact::rational::{frac, int};
use probident_core::exact::{factorial, PiGradedValue, Rational};
use probident_core::identities::{eval_side, verify, verify_in_p, IdentityId, Side};
use proptest::prelude::*;

#[test]
fn alternating_sum_vanishes_for_odd_order() {
    for n in (1..=99).step_by(2) {
        let lhs = eval_side(IdentityId::AlternatingConvolution, Side::Lhs, n, None).unwrap();
        assert!(lhs.is_zero(), "n = {n}");
    }
}

#[test]
fn gamma_moment_at_half_matches_brychkov_sum() {
    let half = frac(1, 2);
    for n in 0..=30u64 {
        let g = eval_side(IdentityId::GammaEvenMoment, Side::Lhs, n, Some(&half)).unwrap();
        let scale = Rational::new(BigInt::from(1) << (4 * n), factorial(2 * n));
        let b = eval_side(IdentityId::Brychkov, Side::Lhs, n, None).unwrap();
        assert_eq!(g.scale(&scale), b, "n = {n}");
    }
}

#[test]
fn multi_convolution_with_two_parts_is_central_convolution() {
    for n in 0..=30u64 {
        let multi = eval_side(IdentityId::MultiConvolution, Side::Lhs, n, Some(&int(2))).unwrap();
        let central = eval_side(IdentityId::CentralConvolution, Side::Lhs, n, None).unwrap();
        assert_eq!(multi, central);
    }
}

#[test]
fn every_identity_has_zero_residual_on_small_orders() {
    for id in IdentityId::ALL {
        for n in 1..=12u64 {
            let p = match id {
                IdentityId::MultiConvolution => Some(int(3)),
                IdentityId::GammaEvenMoment | IdentityId::BetaMoment => Some(frac(2, 7)),
                _ => None,
            };
            let r = verify(id, n, p.as_ref()).unwrap();
            assert!(r.equal && r.residual.is_zero(), "{id} n={n}: {}", r.residual);
        }
    }
}

#[test]
fn parametric_identities_hold_at_all_certification_points() {
    for id in [IdentityId::GammaEvenMoment, IdentityId::BetaMoment] {
        for n in 1..=4u64 {
            let reports = verify_in_p(id, n).unwrap();
            assert_eq!(reports.len() as u64, 8 * n + 4);
            assert!(reports.iter().all(|r| r.equal));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parametric_identities_hold_at_random_shapes(num in 1i64..200, den in 1i64..60, n in 1u64..8) {
        let p = frac(num, den);
        for id in [IdentityId::GammaEvenMoment, IdentityId::BetaMoment] {
            prop_assert!(verify(id, n, Some(&p)).unwrap().equal);
        }
    }

    #[test]
    fn rational_sides_are_pure_rationals(n in 0u64..40) {
        for id in [IdentityId::CentralConvolution, IdentityId::Gould660, IdentityId::Brychkov] {
            let lhs: PiGradedValue = eval_side(id, Side::Lhs, n, None).unwrap();
            prop_assert!(lhs.as_rational().is_some());
        }
    }
}

#[test]
fn nonpositive_shape_rejected() {
    assert!(verify(IdentityId::GammaEvenMoment, 2, Some(&int(0))).is_err());
    assert!(verify(IdentityId::BetaMoment, 2, Some(&frac(-1, 2))).is_err());
    assert!(verify(IdentityId::GammaEvenMoment, 2, None).is_err());
}
