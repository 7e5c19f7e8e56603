mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(1000))]
    #[test]
    fn canonical_type_is_idempotent_and_unit_invariant(t in arb_quotient()) {
        check_canonical_type(t)?;
    }
}

proptest! {
    #![proptest_config(config(200))]
    #[test]
    fn germ_scaling_law(g in arb_germ(), lambda in arb_positive_q(), mu in arb_positive_q()) {
        check_scaling(g, lambda, mu)?;
    }
}

proptest! {
    #![proptest_config(config(500))]
    #[test]
    fn polygon_is_monotone_under_support_extension(g in arb_germ(), extra in (0u32..=8, 0u32..=8)) {
        check_polygon_monotone(g, extra)?;
    }

    #[test]
    fn lct_is_symmetric_in_the_variables(g in arb_germ()) {
        check_symmetry(g)?;
    }

    #[test]
    fn lct_respects_multiplicity_bounds(g in arb_germ()) {
        check_mult_bound(g)?;
    }

    #[test]
    fn quasismoothness_matches_oracles(q in arb_quintuple(), seed in any::<u64>()) {
        check_quasismooth_oracle(q, seed)?;
    }

    #[test]
    fn self_intersection_is_the_index_pairing(q in arb_quintuple()) {
        check_pairing(q)?;
    }

    #[test]
    fn monomials_scale_with_the_weights(w in prop::array::uniform4(1u64..=9), d in 1u64..=40, l in 1u64..=5) {
        check_degree_scaling(w, d, l)?;
    }
}

#[test]
fn igusa_grid_agrees_with_polygon() {
    let (checked, bad) = igusa_grid();
    assert!(checked > 1600);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn plane_cubic_thresholds() {
    for (name, g, want) in cubic_fixtures() {
        let got = dplct::germ::lct_newton(&g, dplct::germ::DEFAULT_MAX_ITER).unwrap().value;
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn elimination_residuals_vanish_on_table_charts() {
    let (solved, bad) = elimination_residuals(&bundled_instances(1..=3));
    assert!(solved > 100, "{solved}");
    assert!(bad.is_empty(), "{bad:#?}");
}
