use ars_core::catalog::{fixture, fixtures, golden_lines, verify_catalog, Site, Source, System, FIXTURE_NAMES};
use ars_core::properties::Analysis;
use ars_core::testkit::Oracle;

const GOLDENS: &str = include_str!("../src/catalog/goldens.txt");

fn frozen(name: &str) -> Vec<&'static str> {
    GOLDENS
        .lines()
        .filter(|l| !l.starts_with('#') && l.split(' ').next() == Some(name))
        .collect()
}

#[test]
fn goldens_match_the_oracle() {
    for fx in fixtures() {
        let System::Finite(ars) = &fx.system else { continue };
        let oracle = Oracle::new(ars).unwrap();
        let lines = golden_lines(
            fx.name,
            ars,
            |p, e| oracle.element(p, e).unwrap(),
            |g| oracle.global(g).unwrap(),
        );
        assert_eq!(lines, frozen(fx.name), "{}", fx.name);
    }
}

#[test]
fn goldens_match_the_deciders() {
    for fx in fixtures() {
        let System::Finite(ars) = &fx.system else { continue };
        let an = Analysis::new(ars);
        let profiles = an.profiles();
        let global = an.global_from(&profiles);
        let lines = golden_lines(fx.name, ars, |p, e| profiles[e.index()].get(p), |g| global.get(g));
        assert_eq!(lines, frozen(fx.name), "{}", fx.name);
    }
}

#[test]
fn catalog_verifies_cleanly() {
    let r = verify_catalog();
    assert!(r.ok(), "{:#?}", r.mismatches);
    assert_eq!(r.fixtures, FIXTURE_NAMES.len());
    assert!(r.witnesses > 0);
}

#[test]
fn stated_bits_survive_the_oracle() {
    let mut seen = 0;
    for fx in fixtures() {
        let System::Finite(ars) = &fx.system else { continue };
        let oracle = Oracle::new(ars).unwrap();
        for e in fx.expectations.iter().filter(|e| matches!(e.source, Source::Stated(_))) {
            let got = match &e.site {
                Site::Global => oracle.global(e.property).unwrap(),
                Site::Element(name) => {
                    let ars_core::properties::GlobalProperty::All(p) = e.property else {
                        panic!("element expectation on a global-only property")
                    };
                    oracle.element(p, ars.lookup(name).unwrap()).unwrap()
                }
            };
            assert_eq!(got, e.value, "{} {} {}", fx.name, e.site, e.property.label());
            seen += 1;
        }
    }
    assert!(seen >= 14);
}

#[test]
fn infinite_fixtures_carry_evidence() {
    for name in ["CE-6", "CE-7"] {
        let fx = fixture(name).unwrap();
        assert!(matches!(fx.system, System::Infinite(_)));
        assert!(fx.evidence.is_some(), "{name}");
    }
    assert!(fixture("CE-9").is_none());
}
