//! The standard counterexamples as fixtures, with expected profiles.
//!
//! Finite fixtures carry a total expectation: every element property at
//! every element plus every global property. Those bits live in
//! `goldens.txt`, generated once by the brute-force oracle and frozen; a
//! handful of bits that the literature states outright are repeated as
//! [`Source::Stated`] expectations. The two infinite fixtures are checked by
//! bounded search only.

use std::collections::BTreeSet;
use std::fmt;

use crate::enumerable::{bounded_join, bounded_normalize, bounded_profile, find_chain, is_reduction, EnumerableArs};
use crate::properties::{Analysis, GlobalProperty, Property};
use crate::relation::{ElementId, FiniteArs};
use crate::theorems::theorem_suite_in;

const GOLDENS: &str = include_str!("goldens.txt");

/// `CE-6` and `CE-7`, over integer keys.
///
/// * `CE-6`: `n` is key 0 and `f_i` is key `i + 1`; `f_i -> f_{i+1}` and
///   `f_i -> n`.
/// * `CE-7`: `n_i` is key `2i + 1` and `f_i` is key `2i + 2`;
///   `f_i -> f_{i+1}` and `f_i -> n_i`.
///
/// Successor lists put the chain step first and the normal form last; code
/// that follows first successors depends on this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Infinite {
    Ce6,
    Ce7,
}

impl Infinite {
    pub fn root(self) -> u64 {
        self.key_of("f0").expect("f0 exists")
    }

    pub fn key_name(self, key: u64) -> Option<String> {
        match self {
            Infinite::Ce6 if key == 0 => Some("n".into()),
            Infinite::Ce6 => Some(format!("f{}", key - 1)),
            Infinite::Ce7 if key == 0 => None,
            Infinite::Ce7 if key % 2 == 1 => Some(format!("n{}", key / 2)),
            Infinite::Ce7 => Some(format!("f{}", key / 2 - 1)),
        }
    }

    pub fn key_of(self, name: &str) -> Option<u64> {
        let index = |prefix: &str| name.strip_prefix(prefix)?.parse::<u64>().ok();
        match self {
            Infinite::Ce6 if name == "n" => Some(0),
            Infinite::Ce6 => index("f").map(|i| i + 1),
            Infinite::Ce7 => index("n").map(|i| 2 * i + 1).or_else(|| index("f").map(|i| 2 * i + 2)),
        }
    }
}

impl EnumerableArs for Infinite {
    type Key = u64;

    fn successors_of(&self, key: &u64) -> Vec<u64> {
        match self {
            Infinite::Ce6 if *key == 0 => vec![],
            Infinite::Ce6 => vec![key + 1, 0],
            Infinite::Ce7 if *key == 0 || key % 2 == 1 => vec![],
            Infinite::Ce7 => vec![key + 2, key - 1],
        }
    }
}

#[derive(Debug, Clone)]
pub enum System {
    Finite(FiniteArs),
    Infinite(Infinite),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Stated in the literature about this counterexample.
    Stated(&'static str),
    /// Frozen oracle output.
    Golden,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Element(String),
    Global,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Element(e) => f.write_str(e),
            Site::Global => f.write_str("*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub site: Site,
    pub property: GlobalProperty,
    pub value: bool,
    pub source: Source,
}

/// Demands on an infinite fixture, each decidable by bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceSpec {
    /// Reductions of every length `1..=chain_length` start at `from`.
    pub from: String,
    pub chain_length: usize,
    /// `(x, n)`: `x` reduces to the normal form `n`.
    pub normalizes: Vec<(String, String)>,
    /// Window depth for the bounded profile.
    pub depth: usize,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub system: System,
    pub expectations: Vec<Expectation>,
    pub evidence: Option<EvidenceSpec>,
    pub notes: Vec<&'static str>,
}

impl Fixture {
    pub fn finite(&self) -> Option<&FiniteArs> {
        match &self.system {
            System::Finite(a) => Some(a),
            System::Infinite(_) => None,
        }
    }
}

pub const FIXTURE_NAMES: [&str; 10] = [
    "CE-1",
    "CE-2",
    "CE-3",
    "CE-4",
    "CE-5",
    "CE-6",
    "CE-7",
    "CE-8",
    "CE-11",
    "terese-trs",
];

fn finite(names: &[&str], steps: &[(&str, &str)]) -> FiniteArs {
    FiniteArs::build(names, steps).expect("fixture is well formed")
}

fn ce1_steps() -> Vec<(&'static str, &'static str)> {
    vec![("b", "a"), ("b", "c"), ("c", "b"), ("c", "d")]
}

const P: &str = "p(a)";
const Q: &str = "p(b)";

fn terese() -> FiniteArs {
    // Ground terms over a, b, p/1, f/2 and k reachable from the f-redexes.
    let f = |x: &str, y: &str| format!("f({x},{y})");
    let mut names: Vec<String> = ["a", "b", "k", P, Q].iter().map(|s| s.to_string()).collect();
    let mut steps: Vec<(String, String)> = vec![(P.into(), Q.into()), (Q.into(), P.into())];
    let flip = |t: &str| if t == P { Q } else { P };
    for x in [P, Q] {
        for y in [P, Q] {
            names.push(f(x, y));
            steps.push((f(x, y), f(flip(x), y)));
            steps.push((f(x, y), f(x, flip(y))));
            if x == y {
                steps.push((f(x, y), "k".into()));
            }
        }
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let steps: Vec<(&str, &str)> = steps.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    finite(&names, &steps)
}

fn finite_system(name: &str) -> Option<FiniteArs> {
    let abcd = ["a", "b", "c", "d"];
    Some(match name {
        "CE-1" => finite(&abcd, &ce1_steps()),
        "CE-2" => {
            let mut s = ce1_steps();
            s.push(("d", "d"));
            finite(&abcd, &s)
        }
        "CE-3" => {
            let mut s = ce1_steps();
            s.extend([("d", "d"), ("a", "a")]);
            finite(&abcd, &s)
        }
        "CE-4" => finite(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("a", "e"), ("b", "e"), ("b", "c"), ("c", "d"), ("d", "c")],
        ),
        "CE-5" => finite(
            &["a", "b", "c", "d", "m", "n"],
            &[("c", "n"), ("c", "a"), ("a", "b"), ("b", "a"), ("d", "b"), ("d", "m")],
        ),
        "CE-8" => finite(&["a", "b"], &[("a", "b"), ("b", "a")]),
        "CE-11" => finite(&["a", "b", "c"], &[("a", "c"), ("a", "b"), ("b", "a")]),
        "terese-trs" => terese(),
        _ => return None,
    })
}

fn stated(site: Site, bits: &[(Property, bool)], why: &'static str) -> Vec<Expectation> {
    bits.iter()
        .map(|&(p, value)| Expectation {
            site: site.clone(),
            property: GlobalProperty::All(p),
            value,
            source: Source::Stated(why),
        })
        .collect()
}

fn goldens_for(name: &str) -> Vec<Expectation> {
    parse_goldens()
        .into_iter()
        .filter(|(fixture, _, _, _)| fixture == name)
        .map(|(_, site, property, value)| Expectation {
            site,
            property,
            value,
            source: Source::Golden,
        })
        .collect()
}

/// Lines are `FIXTURE SITE: LABEL...` listing the properties that hold;
/// every other property is false. `*` is the global site.
fn parse_goldens() -> Vec<(String, Site, GlobalProperty, bool)> {
    let mut out = Vec::new();
    for line in GOLDENS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (head, tail) = line.split_once(':').expect("golden line has a colon");
        let (fixture, site) = head.split_once(' ').expect("golden line names fixture and site");
        let holding: BTreeSet<&str> = tail.split_whitespace().collect();
        let site = match site {
            "*" => Site::Global,
            e => Site::Element(e.to_string()),
        };
        let props: Vec<GlobalProperty> = match site {
            Site::Global => Property::ALL
                .into_iter()
                .map(GlobalProperty::All)
                .chain(GlobalProperty::EXTRA)
                .collect(),
            Site::Element(_) => Property::ALL.into_iter().map(GlobalProperty::All).collect(),
        };
        for label in &holding {
            assert!(
                props.iter().any(|p| p.label() == *label),
                "unknown property {label} in goldens"
            );
        }
        for p in props {
            out.push((fixture.to_string(), site.clone(), p, holding.contains(p.label())));
        }
    }
    out
}

fn bounded_expectations(bits: &[(&str, Property, bool)]) -> Vec<Expectation> {
    bits.iter()
        .map(|&(site, p, value)| Expectation {
            site: if site == "*" {
                Site::Global
            } else {
                Site::Element(site.to_string())
            },
            property: GlobalProperty::All(p),
            value,
            source: Source::Golden,
        })
        .collect()
}

pub fn fixture(name: &str) -> Option<Fixture> {
    use Property::*;
    let el = |e: &str| Site::Element(e.to_string());
    if let Some(ars) = finite_system(name) {
        let mut expectations = goldens_for(name);
        let mut notes = Vec::new();
        match name {
            "CE-2" => expectations.extend(stated(
                Site::Global,
                &[(UnRed, true), (Wm, true), (Cr, false)],
                "unique normal forms and weak minimalization do not give confluence",
            )),
            "CE-3" => expectations.extend(stated(
                Site::Global,
                &[(NpRed, true), (Wm, true), (Cr, false)],
                "the normal form property and weak minimalization do not give confluence",
            )),
            "CE-4" => {
                expectations.extend(stated(
                    el("a"),
                    &[
                        (Sm, true),
                        (Wn, true),
                        (Sn, false),
                        (Wcr, true),
                        (UnRed, true),
                        (Cr, false),
                    ],
                    "a is strongly minimalizing and weakly normalizing but not terminating; \
                     local confluence with unique normal forms does not give confluence",
                ));
                notes.push("WCR holds at a but fails at b (peak e <- b -> c); the expectation is per element");
            }
            "CE-5" => {
                expectations.extend(stated(
                    Site::Global,
                    &[(UnRed, true), (UnConv, false)],
                    "unique normal forms by reduction without unique normal forms by conversion",
                ));
                expectations.extend(stated(
                    el("n"),
                    &[(Nf, true), (UnRed, true), (UnConv, false)],
                    "n is convertible to the distinct normal form m",
                ));
            }
            "terese-trs" => notes.push(
                "SM fails at the four f-terms: the p(a) <-> p(b) flip inside f never reaches a \
                 minimal form, so the least SM set excludes them; WCR and CR still hold",
            ),
            _ => {}
        }
        return Some(Fixture {
            name: FIXTURE_NAMES.iter().find(|n| **n == name).expect("known"),
            system: System::Finite(ars),
            expectations,
            evidence: None,
            notes,
        });
    }
    match name {
        "CE-6" => Some(Fixture {
            name: "CE-6",
            system: System::Infinite(Infinite::Ce6),
            expectations: bounded_expectations(&[
                ("f0", Sn, false),
                ("f0", Wn, true),
                ("f0", Wcr, true),
                ("f0", Cr, true),
                ("f0", UnRed, true),
                ("f0", NpRed, true),
                ("f0", Mp, true),
                ("*", Sn, false),
                ("*", Wn, true),
                ("*", Wcr, true),
                ("*", Cr, true),
                ("*", UnRed, true),
            ]),
            evidence: Some(EvidenceSpec {
                from: "f0".into(),
                chain_length: 100,
                normalizes: vec![("f0".into(), "n".into())],
                depth: 8,
            }),
            notes: vec![],
        }),
        "CE-7" => Some(Fixture {
            name: "CE-7",
            system: System::Infinite(Infinite::Ce7),
            expectations: bounded_expectations(&[
                ("f0", Sn, false),
                ("f0", Wn, true),
                ("f0", Wcr, false),
                ("f0", Cr, false),
                ("f0", UnRed, false),
                ("*", Sn, false),
                ("*", Wn, true),
                ("*", Cr, false),
            ]),
            evidence: Some(EvidenceSpec {
                from: "f0".into(),
                chain_length: 100,
                normalizes: vec![("f0".into(), "n0".into()), ("f0".into(), "n1".into())],
                depth: 8,
            }),
            notes: vec![
                "CE-7 is listed as showing that global CR and WN do not give SN, but CR fails at f0 \
                 (f0 reaches the distinct normal forms n0 and n1); CE-6 fits that role and is used \
                 as the witness instead",
            ],
        }),
        _ => None,
    }
}

pub fn fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| fixture(n).expect("every listed fixture exists"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub fixture: String,
    pub site: Site,
    /// A property label, or a check name such as `witness` or `chain`.
    pub property: String,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: expected {}, computed {}",
            self.fixture, self.site, self.property, self.expected, self.computed
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct CatalogReport {
    pub fixtures: usize,
    /// Expectation bits and evidence demands checked.
    pub checks: usize,
    /// Witnesses re-validated along the way.
    pub witnesses: usize,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl CatalogReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn show(b: bool) -> String {
    b.to_string()
}

fn verify_finite(fx: &Fixture, ars: &FiniteArs, report: &mut CatalogReport) {
    let an = Analysis::new(ars);
    let profiles = an.profiles();
    let global = an.global_from(&profiles);
    let mut miss = |site: Site, property: String, expected: String, computed: String| {
        report.mismatches.push(Mismatch {
            fixture: fx.name.to_string(),
            site,
            property,
            expected,
            computed,
        })
    };
    for e in &fx.expectations {
        let computed = match (&e.site, e.property) {
            (Site::Global, g) => Some(global.get(g)),
            (Site::Element(name), GlobalProperty::All(p)) => ars.lookup(name).map(|x| profiles[x.0].get(p)),
            (Site::Element(_), _) => None,
        };
        report.checks += 1;
        if computed != Some(e.value) {
            let computed = computed.map_or("nothing".into(), show);
            miss(e.site.clone(), e.property.label().into(), show(e.value), computed);
        }
    }
    for p in &profiles {
        let site = || Site::Element(ars.name(p.element).to_string());
        if let Some(w) = &p.wn_witness {
            report.witnesses += 1;
            if w.validate(ars).is_err() || !an.is_nf(w.target()) || w.source() != p.element {
                miss(site(), "WN witness".into(), "valid".into(), "invalid".into());
            }
        }
        if let Some(w) = &p.cp_witness {
            report.witnesses += 1;
            if w.validate(ars).is_err() {
                miss(site(), "CP witness".into(), "valid".into(), "invalid".into());
            }
        }
    }
    if let Some(numbering) = &global.inc_witness {
        report.witnesses += 1;
        if !ars.steps().all(|(a, b)| numbering[a.0] < numbering[b.0]) {
            miss(Site::Global, "Inc witness".into(), "valid".into(), "invalid".into());
        }
    }
    let suite = theorem_suite_in(&an, &profiles, &global);
    report.checks += suite.verdicts.len();
    for v in suite.failures() {
        let shown = v.counterexample.as_ref().map_or("failure".into(), |c| c.render(ars));
        miss(Site::Global, v.label.into(), "holds".into(), shown);
    }
}

fn verify_infinite(fx: &Fixture, sys: Infinite, report: &mut CatalogReport) {
    let demand = fx.evidence.as_ref().expect("infinite fixtures carry evidence demands");
    let mut miss = |site: Site, property: &str, expected: String, computed: String| {
        report.mismatches.push(Mismatch {
            fixture: fx.name.to_string(),
            site,
            property: property.to_string(),
            expected,
            computed,
        })
    };
    let key = |name: &str| sys.key_of(name).expect("evidence names are valid keys");
    let from = key(&demand.from);
    for k in 1..=demand.chain_length {
        report.checks += 1;
        match find_chain(&sys, &from, k) {
            Some(chain) if chain.len() == k + 1 && is_reduction(&sys, &chain) => report.witnesses += 1,
            _ => miss(
                Site::Element(demand.from.clone()),
                "chain",
                format!("length {k}"),
                "none".into(),
            ),
        }
    }
    for (x, n) in &demand.normalizes {
        report.checks += 1;
        let (kx, kn) = (key(x), key(n));
        let reached =
            bounded_join(&sys, &kx, &kn, demand.depth).filter(|j| j.target == kn && is_reduction(&sys, &j.from_left));
        if reached.is_some() && sys.is_normal_form(&kn) {
            report.witnesses += 1;
        } else {
            miss(
                Site::Element(x.clone()),
                "normalizes",
                n.clone(),
                "not within bound".into(),
            );
        }
    }
    let profile = bounded_profile(&sys, &sys.root(), demand.depth);
    for e in &fx.expectations {
        let GlobalProperty::All(p) = e.property else {
            continue;
        };
        let computed = match &e.site {
            Site::Element(name) if key(name) == sys.root() => profile.element(p),
            Site::Element(_) => None,
            Site::Global => profile.global(p),
        };
        report.checks += 1;
        if computed != Some(e.value) {
            let computed = computed.map_or("unknown".into(), show);
            miss(e.site.clone(), p.label(), show(e.value), computed);
        }
    }
    match sys {
        Infinite::Ce6 => {
            // every single-step peak f_{i+1} <- f_i -> n joins at n
            for i in 0..=demand.chain_length as u64 {
                report.checks += 1;
                let fi = i + 1;
                let [next, n] = sys.successors_of(&fi)[..] else {
                    unreachable!("f_i has two successors")
                };
                match bounded_join(&sys, &next, &n, 2) {
                    Some(j) if j.target == 0 => report.witnesses += 1,
                    _ => miss(Site::Element(format!("f{i}")), "peak join", "n".into(), "none".into()),
                }
            }
        }
        Infinite::Ce7 => {
            // n0 <- f0 -> f1 ->* n1 cannot be joined
            report.checks += 1;
            let (n0, n1) = (key("n0"), key("n1"));
            let nf = sys.is_normal_form(&n0) && sys.is_normal_form(&n1);
            if !nf || n0 == n1 || bounded_join(&sys, &n0, &n1, demand.depth).is_some() {
                miss(
                    Site::Element("f0".into()),
                    "distinct normal forms",
                    "n0, n1".into(),
                    "joined".into(),
                );
            }
            if let Some((nf0, path)) = bounded_normalize(&sys, &from, demand.depth) {
                report.witnesses += 1;
                if nf0 != n0 || !is_reduction(&sys, &path) {
                    miss(
                        Site::Element("f0".into()),
                        "nearest normal form",
                        "n0".into(),
                        format!("{nf0}"),
                    );
                }
            }
        }
    }
}

/// Recompute everything and compare against the frozen expectations.
pub fn verify_catalog() -> CatalogReport {
    let mut report = CatalogReport::default();
    for fx in fixtures() {
        report.fixtures += 1;
        match &fx.system {
            System::Finite(ars) => verify_finite(&fx, ars, &mut report),
            System::Infinite(sys) => verify_infinite(&fx, *sys, &mut report),
        }
        report
            .notes
            .extend(fx.notes.iter().map(|n| format!("{}: {n}", fx.name)));
    }
    report
}

/// One golden line per element and one global line, in the frozen format.
pub fn golden_lines(
    name: &str,
    ars: &FiniteArs,
    element: impl Fn(Property, ElementId) -> bool,
    global: impl Fn(GlobalProperty) -> bool,
) -> Vec<String> {
    let mut out = Vec::new();
    for e in ars.elements() {
        let holding: Vec<&str> = Property::ALL
            .into_iter()
            .filter(|&p| element(p, e))
            .map(Property::label)
            .collect();
        out.push(format!("{name} {}: {}", ars.name(e), holding.join(" ")));
    }
    let holding: Vec<&str> = Property::ALL
        .into_iter()
        .map(GlobalProperty::All)
        .chain(GlobalProperty::EXTRA)
        .filter(|&g| global(g))
        .map(GlobalProperty::label)
        .collect();
    out.push(format!("{name} *: {}", holding.join(" ")));
    out
}
