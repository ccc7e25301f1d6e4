use coresize::ansatzfit::{
    collect_moment_data, fit_moment, fit_polynomial, fit_report, FitMode, FitSpec,
};
use coresize::moments::{pair_moments, verify_theorem, Engine, TheoremId};
use coresize::partitions::{anderson_count, CorePair};
use coresize::pathdp::{path_count, size_generating_polynomial};

#[test]
fn seventh_moment_rediscovered_along_consecutive_pairs() {
    let pairs: Vec<CorePair> = (3..=40).map(|s| CorePair::new(s, s + 1).unwrap()).collect();
    let spec = FitSpec::new(7, FitMode::Successive);
    assert_eq!(spec.degree, 21);
    let data = collect_moment_data(7, &pairs, Engine::FastMoments).unwrap();
    let fit = fit_polynomial(&spec, &data).unwrap();
    assert!(fit.residual_check);
    assert_eq!(
        fit_report(&fit, TheoremId::new(7).ok()).matches_reference,
        Some(true)
    );
}

#[test]
fn third_moment_rediscovered_in_two_variables() {
    let spec = FitSpec::new(3, FitMode::Bivariate);
    let fit = fit_moment(&spec, 0, Engine::FastMoments).unwrap();
    assert_eq!(fit.polynomial, TheoremId::new(3).unwrap().polynomial());
}

#[test]
fn fast_and_full_engines_match_on_larger_pairs() {
    for (s, t) in [(7, 16), (11, 13), (9, 14)] {
        let p = CorePair::new(s, t).unwrap();
        assert_eq!(
            pair_moments(p, 6, Engine::Full).unwrap(),
            pair_moments(p, 6, Engine::FastMoments).unwrap()
        );
        let f = size_generating_polynomial(p).unwrap();
        assert_eq!(f.coefficient_sum().to_integer(), anderson_count(p).into());
    }
}

#[test]
fn closed_forms_hold_beyond_the_fitting_range() {
    let pairs = [
        CorePair::new(19, 30).unwrap(),
        CorePair::new(23, 29).unwrap(),
    ];
    for id in TheoremId::all().take(6) {
        assert!(
            verify_theorem(id, &pairs, Engine::FastMoments)
                .unwrap()
                .all_match(),
            "{id}"
        );
    }
    assert_eq!(path_count(pairs[0]).unwrap(), anderson_count(pairs[0]));
}
