use asdim_core::amalgam::{Amalgamation, AmalgamationSpec, ResolveContext};
use asdim_core::cover::ExtNat;
use asdim_core::theorem::{lemma_strip, max_stratum, run_certificate, ProofParameters, StripVerdict, Verdict};
use asdim_core::{Rational, TheoremError};

fn shipped(text: &str) -> AmalgamationSpec {
    AmalgamationSpec::from_json(text, ResolveContext::default()).unwrap()
}

fn chain() -> AmalgamationSpec {
    shipped(include_str!("../../../specs/chain_k2.json"))
}

fn triangle() -> AmalgamationSpec {
    shipped(include_str!("../../../specs/triangle_edge.json"))
}

fn params(big_r: u32, r: u32, depth: u32) -> ProofParameters {
    ProofParameters { big_r, r, depth }
}

#[test]
fn chain_certificate_stages() {
    let cert = run_certificate(&chain(), params(2, 10, 40)).unwrap();
    assert_eq!(cert.verdict, Verdict::Pass, "{}", cert.to_json());
    assert_eq!(cert.bound, 1);
    let part = &cert.stage("partition").unwrap().data;
    assert_eq!(part["covers_core"], true);
    assert_eq!(part["interiors_disjoint"], true);
    let sep = &cert.stage("separation").unwrap().data;
    assert_eq!(sep["all_at_least_3r"], true);
    let bd = &cert.stage("boundary").unwrap().data;
    assert!(bd["multiplicity"].as_u64().unwrap() <= 1);
    assert_eq!(bd["lebesgue_exceeds_r"], true);
    for name in ["qi-W0", "qi-M_R"] {
        assert_eq!(cert.stage(name).unwrap().data["c_at_most_R"], true, "{name}");
    }
}

#[test]
fn triangle_certificate_passes() {
    let cert = run_certificate(&triangle(), params(2, 12, 30)).unwrap();
    assert!(cert.passed(), "{}", cert.to_json());
    assert_eq!(cert.bound, 1);
    assert!(cert.stage("partition").unwrap().data["frontier_excluded"].as_u64().unwrap() > 0);
}

#[test]
fn certificates_are_reproducible() {
    let a = run_certificate(&chain(), params(2, 10, 20)).unwrap().to_json();
    let b = run_certificate(&chain(), params(2, 10, 20)).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn preconditions_are_checked_before_building() {
    for p in [params(2, 8, 40), params(2, 11, 40), params(2, 10, 19)] {
        assert!(matches!(run_certificate(&chain(), p), Err(TheoremError::Precondition(_))));
    }
}

#[test]
fn inconsistent_atlas_is_rejected() {
    // without the swap of K2 the maps a→a and a→b cannot be related
    let text = include_str!("../../../specs/chain_k2.json")
        .replace(r#""tree": {"depth": 40}"#, r#""tree": {"depth": 40}, "actions": [{"generators": []}]"#);
    let spec = AmalgamationSpec::from_json(&text, ResolveContext::default()).unwrap();
    assert!(matches!(
        run_certificate(&spec, params(2, 10, 40)),
        Err(TheoremError::MissingConsistency(_))
    ));
}

#[test]
fn triangle_strips_have_uniform_constants() {
    let a = Amalgamation::build(&triangle()).unwrap();
    let root = a.tree.root();
    let mut fits = 0;
    for m in 1..=max_stratum(&a, root) {
        let rep = lemma_strip(&a, root, m, 4).unwrap();
        if let StripVerdict::Fit { fit } = rep.result {
            assert!(fit.gamma <= Rational::from_integer(2) && fit.c <= Rational::from_integer(4), "m={m}");
            fits += 1;
        } else {
            panic!("m={m}: {:?}", rep.result);
        }
        assert!(rep.min_separation == ExtNat::Infinite || rep.separation_ok, "m={m}");
    }
    assert_eq!(fits, 8);
}
