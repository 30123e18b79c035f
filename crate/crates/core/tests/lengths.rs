mod common;

use common::{all_paths, random_quiver};
use proptest::prelude::*;
use quivrel_core::ideal::{Condition1Witness, ConditionStatus};
use quivrel_core::length::{
    certify_length_admissible, check_weakly_archimedean, infinite_generator_fixture, length_relation,
    non_saturating_loop_fixture, Cut, Length, LengthAssignment, MonoidKind,
};
use quivrel_core::{check_admissible, int, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn monoid() -> impl Strategy<Value = MonoidKind> {
    prop_oneof![
        Just(MonoidKind::Nat),
        Just(MonoidKind::NonNegRational),
        (3u64..8).prop_map(MonoidKind::TruncatedNat),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cut_membership_is_monotone_along_paths(seed in any::<u64>(), m in monoid(), b in 1i64..6, closed in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, 4, 6, false);
        let lengths = q.arrow_ids().map(|_| Length::int(rng.gen_range(1..4))).collect();
        let la = LengthAssignment::new(q.clone(), m.clone(), lengths).unwrap();
        let Ok(cut) = Cut::new(m, Length::int(b), closed) else { return Ok(()) };
        for p in all_paths(&q, 4) {
            for a in q.outgoing(p.target()) {
                let ext = q.path(&[p.arrows(), &[*a]].concat()).unwrap();
                if cut.in_upper(&la.length(&p)) {
                    prop_assert!(cut.in_upper(&la.length(&ext)));
                }
            }
        }
    }

    #[test]
    fn sampled_monoids_satisfy_axioms(seed in any::<u64>(), m in monoid()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = m.sample_triples(100, &mut rng);
        let report = check_weakly_archimedean(&m, &samples, 1 << 40);
        prop_assert!(report.all_pass(), "{:?}", report);
    }
}

#[test]
fn non_saturating_infinity_breaks_archimedean_axiom() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = MonoidKind::NonSaturatingNatInf;
    let report = check_weakly_archimedean(&m, &m.sample_triples(1000, &mut rng), 1 << 40);
    assert!(!report.archimedean.passed);
    assert_eq!(report.archimedean.witness, Some(vec![Length::int(1), Length::Infinity]));
    assert!(report.total_order.passed && report.positivity.passed && report.strict_monotonicity.passed);
}

#[test]
fn appendix_counterexamples_fail_one_condition_each() {
    let (la, cut) = infinite_generator_fixture();
    let rel = length_relation(&la, &cut, 6).unwrap();
    let report = check_admissible(&rel.ideal, 64).unwrap();
    assert_eq!(report.verdict, Verdict::NotAdmissible);
    assert!(!report.condition1.passed);
    assert!(matches!(
        report.condition1.witness,
        Some(Condition1Witness::ShortTerm { .. } | Condition1Witness::ArrowInIdeal(_))
    ));
    assert_eq!(report.condition2.status, ConditionStatus::Pass);

    let (la, cut) = non_saturating_loop_fixture();
    let rel = length_relation(&la, &cut, 6).unwrap();
    let report = check_admissible(&rel.ideal, 64).unwrap();
    assert_eq!(report.verdict, Verdict::NotAdmissible);
    assert!(report.condition1.passed);
    assert_eq!(report.condition2.status, ConditionStatus::Fail);
}

#[test]
fn length_relations_with_short_arrows_are_admissible() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut certified = 0;
    for _ in 0..30 {
        let q = random_quiver(&mut rng, 4, 6, false);
        let lengths = q.arrow_ids().map(|_| Length::int(rng.gen_range(1..3))).collect();
        let la = LengthAssignment::new(q, MonoidKind::Nat, lengths).unwrap();
        let cut = Cut::new(MonoidKind::Nat, Length::Finite(int(rng.gen_range(2..5))), true).unwrap();
        let cert = certify_length_admissible(&la, &cut, 10, 64).unwrap();
        assert!(cert.consistent);
        if cert.hypotheses_hold {
            assert_eq!(cert.admissibility.verdict, Verdict::Admissible);
            certified += 1;
        }
    }
    assert!(certified > 5);
}
