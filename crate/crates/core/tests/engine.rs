use homexp::arith::OddPrime;
use homexp::bounds::{
    exponent_interval, fibration_upper, iterated_bundle_upper, replay::replay, sp_interval,
    sphere_exponent, su_lower, su_upper_closed, su_upper_recursive, two_cell_bundle_interval,
    Engine, RuleContext,
};
use homexp::exceptional::{crosscheck_table, ExceptionalGroup};
use homexp::facts::FactBase;
use homexp::spaces::{parse_space, validate_for_prime, Bundle, Space};
use homexp::splittings::{decompose, mnt_su_factors, recognize_su, su_prime_factor};
use homexp::Error;

fn p(n: u64) -> OddPrime {
    OddPrime::new(n).unwrap()
}

fn bounds(expr: &str, prime: u64) -> (u64, Option<u64>) {
    exponent_interval(&parse_space(expr).unwrap(), &RuleContext::new(p(prime)))
        .unwrap()
        .bounds()
}

fn cell_dims(s: &Space) -> Vec<u64> {
    match s {
        Space::Sphere(d) => vec![*d],
        Space::Bundle(b) => b.dims().to_vec(),
        other => panic!("unexpected factor {other}"),
    }
}

#[test]
fn sphere_and_two_cell_values() {
    assert_eq!(sphere_exponent(p(5), 11).unwrap().value, Some(5));
    let b = Bundle::alpha1(vec![3, 11]).unwrap();
    assert_eq!(
        two_cell_bundle_interval(p(5), &b).unwrap().bounds(),
        (6, Some(6))
    );
    let b = Bundle::alpha1(vec![11, 23]).unwrap();
    assert_eq!(
        two_cell_bundle_interval(p(7), &b).unwrap().bounds(),
        (11, Some(12))
    );
    assert!(two_cell_bundle_interval(p(7), &Bundle::alpha1(vec![3, 11]).unwrap()).is_err());
}

#[test]
fn fibration_lemma_values() {
    assert_eq!(fibration_upper(2, 23, 18), 25);
    assert_eq!(fibration_upper(3, 29, 25), 32);
    assert_eq!(fibration_upper(0, 11, 5), 11);
}

#[test]
fn symplectic_and_spin() {
    assert_eq!(sp_interval(p(5), 4).unwrap().bounds(), (7, Some(8)));
    assert_eq!(sp_interval(p(3), 3).unwrap().bounds(), (6, Some(6)));
    assert_eq!(sp_interval(p(5), 1).unwrap().bounds(), (1, Some(1)));
    assert_eq!(bounds("Spin(9)", 5), (7, Some(8)));
    assert_eq!(bounds("Spin(10)", 5), (7, Some(8)));
}

#[test]
fn group_and_product_examples() {
    assert_eq!(bounds("SU(18)", 5), (18, Some(20)));
    assert_eq!(bounds("SU(1)", 3), (0, Some(0)));
    assert_eq!(bounds("G2", 13), (5, Some(5)));
    assert_eq!(bounds("S^11 x S^23", 13), (11, Some(11)));
    assert_eq!(bounds("E8", 7), (29, Some(32)));
    assert_eq!(bounds("K5", 5), (0, None));
}

#[test]
fn excluded_torsion_primes_error() {
    let ctx = RuleContext::new(p(3));
    for g in [ExceptionalGroup::E7, ExceptionalGroup::E8] {
        let err = Engine::standard().exceptional_row(g, &ctx).unwrap_err();
        assert!(matches!(err, Error::ExcludedTorsion { .. }), "{err}");
        assert!(exponent_interval(&Space::Group(g.lie_group()), &ctx).is_err());
    }
}

#[test]
fn prime_mismatch_is_rejected() {
    let err =
        exponent_interval(&parse_space("B(3,11)").unwrap(), &RuleContext::new(p(7))).unwrap_err();
    assert!(matches!(err, Error::PrimeMismatch { .. }), "{err}");
}

#[test]
fn strict_mode_only_fires_checked_towers() {
    let b = Bundle::alpha1(vec![3, 11, 19]).unwrap();
    let loose = iterated_bundle_upper(&RuleContext::new(p(5)), &b).unwrap();
    assert!(loose.is_none_or(|c| c.extrapolated));
    assert!(iterated_bundle_upper(&RuleContext::strict(p(5)), &b)
        .unwrap()
        .is_none());
    for dims in [vec![23, 35, 47], vec![23, 35, 47, 59]] {
        let b = Bundle::alpha1(dims).unwrap();
        let cert = iterated_bundle_upper(&RuleContext::strict(p(7)), &b)
            .unwrap()
            .unwrap();
        assert!(!cert.extrapolated);
    }
    for expr in ["B(3,11,19)", "SU(12)", "E7"] {
        let s = parse_space(expr).unwrap();
        let iv = exponent_interval(&s, &RuleContext::strict(p(5))).unwrap();
        assert_eq!(
            iv.lower_cert().extrapolated_count() + iv.upper_cert().extrapolated_count(),
            0,
            "{expr}"
        );
    }
}

#[test]
fn splitting_dimensions_partition() {
    for q in [3, 5, 7, 11] {
        for n in 2..40 {
            let mut dims: Vec<u64> = mnt_su_factors(p(q), n).iter().flat_map(cell_dims).collect();
            dims.sort_unstable();
            let want: Vec<u64> = (2..=n).map(|m| 2 * m - 1).collect();
            assert_eq!(dims, want, "p={q} n={n}");
            for f in mnt_su_factors(p(q), n) {
                validate_for_prime(&f, p(q)).unwrap();
            }
            assert_eq!(recognize_su(&mnt_su_factors(p(q), n), p(q)), Some(n));
        }
    }
    assert_eq!(su_prime_factor(p(5), 18).to_string(), "B(3,11,19,27,35)");
}

#[test]
fn decomposition_preserves_interval() {
    let engine = Engine::standard();
    for q in [3, 5, 7] {
        let ctx = RuleContext::new(p(q));
        for expr in (2..=14)
            .map(|n| format!("SU({n})"))
            .chain((1..=7).map(|n| format!("Sp({n})")))
        {
            let s = parse_space(&expr).unwrap();
            let d = decompose(&s, p(q)).unwrap();
            let a = engine.exponent_interval(&s, &ctx).unwrap().bounds();
            let b = engine.exponent_interval(&d, &ctx).unwrap().bounds();
            assert_eq!(a, b, "{expr} vs {d} at p={q}");
        }
    }
}

#[test]
fn su_bound_invariants() {
    for q in [3, 5, 7, 11] {
        let mut prev = 0;
        for n in 1..300 {
            let r = su_upper_recursive(p(q), n);
            assert!(su_lower(p(q), n) <= r, "p={q} n={n}");
            assert!(r <= su_upper_closed(p(q), n), "p={q} n={n}");
            assert!(prev <= r, "p={q} n={n} not monotone");
            prev = r;
        }
    }
    assert_eq!(
        (su_upper_closed(p(3), 12), su_upper_recursive(p(3), 12)),
        (18, 17)
    );
}

#[test]
fn certificates_replay_and_tampering_is_detected() {
    let engine = Engine::standard();
    let iv = engine
        .exponent_interval(&parse_space("E7").unwrap(), &RuleContext::new(p(5)))
        .unwrap();
    let cert = iv.upper_cert().clone();
    replay(&cert, engine.facts()).unwrap();

    let mut bad = cert.clone();
    bad.value = bad.value.map(|v| v - 1);
    assert!(replay(&bad, engine.facts()).is_err());

    let mut bad = cert;
    bad.premises.clear();
    assert!(replay(&bad, engine.facts()).is_err());
}

#[test]
fn crosscheck_passes_on_standard_facts() {
    let report = crosscheck_table(Engine::standard(), false);
    assert_eq!(report.exit_code(), 0, "{}", report.render());
    assert_eq!(report.mismatches().count(), 0);
}

#[test]
fn crosscheck_flags_tampered_band() {
    let mut facts = FactBase::standard();
    let band = facts
        .bands
        .iter_mut()
        .find(|b| b.group == ExceptionalGroup::E7 && b.condition.contains(5))
        .unwrap();
    band.stated = (18, 19);
    let engine = Engine::new(facts);
    let report = crosscheck_table(&engine, false);
    assert_eq!(report.exit_code(), 1);
    assert!(report
        .mismatches()
        .any(|e| e.group == ExceptionalGroup::E7 && e.p == 5));
    assert_eq!(homexp::cli::check(&engine, false).code, 1);
}

#[test]
fn crosscheck_flags_tampered_cited_fact() {
    let mut facts = FactBase::standard();
    let w = facts
        .cited
        .iter_mut()
        .find(|f| f.space.to_string() == "W")
        .unwrap();
    w.upper = w.upper.map(|(_, c)| (32, c));
    let report = crosscheck_table(&Engine::new(facts), false);
    assert_eq!(report.exit_code(), 1);
}
