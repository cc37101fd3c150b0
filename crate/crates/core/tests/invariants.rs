use ars_core::document::{to_dot, ArsDocument};
use ars_core::properties::{join_pair, Analysis, GlobalProperty, Peak, Property};
use ars_core::relation::{path_between, scc_view, FiniteArs};
use ars_core::testkit::Oracle;
use ars_core::theorems::{ample_fuel, newman_join, normalize_finite};
use proptest::prelude::*;

fn arb_ars(max: usize) -> impl Strategy<Value = FiniteArs> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let steps = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| (i / n, i % n));
            FiniteArs::from_steps(n, steps).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn deciders_match_the_oracle(ars in arb_ars(6)) {
        let an = Analysis::new(&ars);
        let oracle = Oracle::new(&ars).unwrap();
        let profiles = an.profiles();
        for p in &profiles {
            for q in Property::ALL {
                prop_assert_eq!(p.get(q), oracle.element(q, p.element).unwrap(), "{:?} at {}", q, p.element.index());
            }
        }
        let g = an.global_from(&profiles);
        for q in Property::ALL.into_iter().map(GlobalProperty::All).chain(GlobalProperty::EXTRA) {
            prop_assert_eq!(g.get(q), oracle.global(q).unwrap(), "{:?}", q);
        }
    }

    #[test]
    fn hierarchy_holds_pointwise(ars in arb_ars(7)) {
        use Property::*;
        let edges = [
            (Nf, Sn), (Nf, Mf), (Sn, Wn), (Sn, Sm), (Wn, Wm), (Mf, Sm), (Sm, Wm), (Sm, SmSeq),
            (Cr, Wcr), (SubCommutative, Wcr), (Cp, Cr), (Cr, Cp), (Cr, UnRed), (Cr, NpRed), (NpRed, UnRed),
        ];
        for p in Analysis::new(&ars).profiles() {
            for (from, to) in edges {
                prop_assert!(!p.get(from) || p.get(to), "{:?} without {:?}", from, to);
            }
        }
    }

    #[test]
    fn witnesses_validate(ars in arb_ars(7)) {
        let an = Analysis::new(&ars);
        for p in an.profiles() {
            prop_assert_eq!(p.wn_witness.is_some(), p.get(Property::Wn));
            if let Some(w) = &p.wn_witness {
                prop_assert!(w.validate(&ars).is_ok());
                prop_assert!(ars.is_normal_form(w.target()));
            }
            prop_assert_eq!(p.cp_witness.is_some(), p.get(Property::Cp));
            if let Some(w) = &p.cp_witness {
                prop_assert!(w.validate(&ars).is_ok());
            }
            match an.infinite_reduction(p.element) {
                Some(l) => {
                    prop_assert!(!p.get(Property::Sn));
                    prop_assert_eq!(l.first(), p.element);
                }
                None => prop_assert!(p.get(Property::Sn)),
            }
            let normalized = normalize_finite(&ars, p.element, ample_fuel(&ars));
            prop_assert_eq!(normalized.is_ok(), p.get(Property::Sn));
        }
    }

    #[test]
    fn joins_validate_and_agree_with_reachability(ars in arb_ars(6)) {
        let an = Analysis::new(&ars);
        for b in ars.elements() {
            for c in ars.elements() {
                let j = join_pair(&ars, b, c);
                prop_assert_eq!(j.is_some(), an.joinable(b, c));
                if let Some(j) = j {
                    prop_assert!(j.validate(&ars).is_ok());
                }
            }
        }
    }

    #[test]
    fn newman_joins_every_peak_it_may(ars in arb_ars(6)) {
        let an = Analysis::new(&ars);
        for a in ars.elements().filter(|&a| an.is_sn(a) && an.reducts(a).all(|y| an.is_wcr(y))) {
            for b in an.reducts(a) {
                for c in an.reducts(a) {
                    let peak = Peak::between(&ars, a, b, c).unwrap();
                    let j = newman_join(&ars, &peak, ample_fuel(&ars)).unwrap();
                    prop_assert!(j.validate_for(&ars, &peak).is_ok());
                }
            }
        }
    }

    #[test]
    fn paths_follow_steps(ars in arb_ars(7)) {
        let an = Analysis::new(&ars);
        for a in ars.elements() {
            for b in ars.elements() {
                let p = path_between(&ars, a, b);
                prop_assert_eq!(p.is_some(), an.reaches(a, b));
                if let Some(p) = p {
                    prop_assert!(p.validate(&ars).is_ok());
                    prop_assert_eq!((p.source(), p.target()), (a, b));
                }
            }
        }
    }

    #[test]
    fn components_are_mutual_reachability(ars in arb_ars(7)) {
        let an = Analysis::new(&ars);
        let scc = scc_view(&ars);
        for a in ars.elements() {
            for b in ars.elements() {
                let same = scc.component_of(a) == scc.component_of(b);
                prop_assert_eq!(same, an.reaches(a, b) && an.reaches(b, a));
            }
        }
        prop_assert!(scc.topological_order().is_some());
    }

    #[test]
    fn converse_is_an_involution(ars in arb_ars(7)) {
        let back = ars.converse().converse();
        prop_assert!(back.steps().eq(ars.steps()));
        for (a, b) in ars.steps() {
            prop_assert!(ars.converse().has_step(b, a));
        }
    }

    #[test]
    fn documents_round_trip(ars in arb_ars(7)) {
        let doc = ArsDocument::from_ars(&ars);
        let back = ArsDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let rebuilt = back.to_ars().unwrap();
        prop_assert!(rebuilt.steps().eq(ars.steps()));
        prop_assert_eq!(rebuilt.names(), ars.names());
    }

    #[test]
    fn dot_lists_each_node_and_edge_once(ars in arb_ars(7)) {
        let dot = to_dot(&ars);
        let lines: Vec<&str> = dot.lines().collect();
        prop_assert_eq!(lines.len(), 2 + ars.size() + ars.step_count());
        for name in ars.names() {
            let node = format!("  {name};");
            prop_assert_eq!(lines.iter().filter(|l| **l == node).count(), 1);
        }
        for (a, b) in ars.steps() {
            let edge = format!("  {} -> {};", ars.name(a), ars.name(b));
            prop_assert_eq!(lines.iter().filter(|l| **l == edge).count(), 1);
        }
    }
}
