use proptest::prelude::*;

use super::*;
use crate::error::{Error, ParseError};
use crate::generate::Sampler;

#[test]
fn dimacs_body_with_comments() {
    let text = "# figure formula\nssp 3sat v1\nc plain dimacs comment\np cnf 3 2\n-1 -2 3 0\n1 2\n3 0\n";
    let Document::Instance(x) = parse_document(text).unwrap() else { panic!() };
    assert_eq!(x.kind(), ProblemKind::ThreeSatisfiability);
    assert_eq!(write_instance(&x), "ssp 3sat v1\np cnf 3 2\n-1 -2 3 0\n1 2 3 0\n");
}

#[test]
fn malformed_header_is_a_parse_error() {
    for text in ["", "spp sat v1\n", "ssp sat v2\n", "ssp chess v1\n"] {
        assert!(matches!(parse_document(text), Err(Error::Parse(_))), "{text:?}");
    }
}

#[test]
fn errors_carry_line_and_column() {
    let text = "ssp vertex_cover v1\nvertices 3\nedge 0 x\nk 1\n";
    let err = parse_document(text).unwrap_err();
    assert_eq!(err, Error::Parse(ParseError::new(3, 8, "expected a vertex, found `x`")));
    let missing = parse_document("ssp vertex_cover v1\nvertices 3\n").unwrap_err();
    assert_eq!(missing, Error::Parse(ParseError::new(1, 1, "missing `k` line")));
}

#[test]
fn unknown_keywords_and_foreign_elements_are_rejected() {
    let text = "ssp vertex_cover v1\nvertices 2\nedge 0 1\nk 1\ncolour red\n";
    assert!(matches!(parse_document(text), Err(Error::Parse(_))));
    let text = "ssp vertex_cover v1\nvertices 2\nedge 0 1\nk 1\nvariant interdiction\nthreshold 1\ncost v:7 1\n";
    assert!(matches!(parse_document(text), Err(Error::Parse(_))));
}

#[test]
fn variant_section_round_trips() {
    let text = "ssp vertex_cover v1\nvertices 3\nedge 0 1\nedge 1 2\nk 1\nvariant two-stage\nthreshold 4\ngamma 9\nfirst v:0 2\nsecond v:1 1 3\n";
    let doc = parse_document(text).unwrap();
    let Document::Variant(Variant::TwoStage(t)) = &doc else { panic!() };
    assert_eq!(t.gamma(), 3);
    assert_eq!(t.first(), &[2, 0, 0]);
    assert_eq!(write_document(&doc), text);
}

#[test]
fn every_kind_round_trips() {
    let mut s = Sampler::new(11);
    for &kind in ProblemKind::ALL {
        for _ in 0..5 {
            let x = s.instance(kind);
            let text = write_instance(&x);
            assert_eq!(parse_instance(&text).unwrap(), x, "{text}");
        }
    }
}

#[test]
fn qbf_text_form() {
    let text = "c exists x forall y\np dnf 2 2\ne 1 0\na 2 0\n1 2 0\n1 -2 0\n";
    let phi = parse_qbf(text).unwrap();
    assert_eq!(phi.shape(), "∃∀ dnf");
    assert_eq!(write_qbf(&phi), text.trim_start_matches("c exists x forall y\n"));
    assert!(matches!(parse_qbf("p cnf 2 1\na 1 0\ne 2 0\n1 0\n"), Err(Error::Parse(_))));
    assert!(matches!(parse_qbf("p cnf 2 2\ne 1 0\na 2 0\n1 0\n"), Err(Error::Parse(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn variants_round_trip(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let vc = s.vertex_cover(5, false);
        let variants = [
            Variant::CombInterdiction(s.comb_interdiction(vc.clone())),
            Variant::RestrictedRegret(s.restricted_regret(vc.clone())),
            Variant::Regret(s.regret(vc.clone(), 4)),
            Variant::CombTwoStage(s.comb_two_stage(vc)),
        ];
        for v in variants {
            let text = write_variant(&v);
            prop_assert_eq!(parse_document(&text).unwrap(), Document::Variant(v));
        }
    }

    #[test]
    fn formulas_round_trip(seed in any::<u64>()) {
        let phi = Sampler::new(seed).quantified();
        prop_assert_eq!(parse_qbf(&write_qbf(&phi)).unwrap(), phi);
    }
}
