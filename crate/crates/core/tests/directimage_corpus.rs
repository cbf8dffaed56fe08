mod common;

use common::corpus;
use covpar_core::report::to_canonical_json;
use covpar_core::{
    build_report, cover_to_json, parse_cover, pushforward_parabolic, summand_e, AnalysisOptions,
    ParabolicData, Rational,
};

#[test]
fn pushforward_splits_off_the_trivial_line() {
    for d in corpus(5, 120, 7) {
        let push = pushforward_parabolic(&d).unwrap();
        let e = summand_e(&d).unwrap();
        let trivial = ParabolicData::plain(1, 0).unwrap();
        assert_eq!(trivial.direct_sum(&e), push, "{d:?}");
        assert_eq!(push.rank(), d.degree);
    }
}

#[test]
fn weights_come_from_cycle_lengths() {
    for d in corpus(6, 120, 8) {
        let push = pushforward_parabolic(&d).unwrap();
        for bp in &d.branch {
            let w = push.weights_at(&bp.label);
            for m in bp.sigma.cycle_type() {
                for j in 0..m {
                    assert!(w.multiplicity_of(Rational::new(j as i64, m as i64)) > 0);
                }
            }
            assert_eq!(w.total_multiplicity(), d.degree);
        }
    }
}

#[test]
fn cover_files_round_trip() {
    for d in corpus(7, 60, 8) {
        assert_eq!(parse_cover(&cover_to_json(&d)).unwrap(), d);
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = AnalysisOptions::default();
    for d in corpus(8, 20, 6) {
        let a = build_report(&d, &opts).unwrap();
        let b = build_report(&d, &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(to_canonical_json(&a), a.to_json());
    }
}
