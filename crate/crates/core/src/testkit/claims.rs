//! The implications (and non-implications) between properties that the
//! fuzzer checks.

use std::fmt;

use crate::catalog::{fixture, Infinite, System};
use crate::enumerable::{bounded_profile, BoundedProfile};
use crate::properties::{Analysis, ElementProfile, GlobalProfile, GlobalProperty, Property};
use crate::relation::{ElementId, FiniteArs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// The property at the element under consideration.
    Here(Property),
    /// The property of the whole system.
    Everywhere(GlobalProperty),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Here(p) => write!(f, "{p}"),
            Atom::Everywhere(g) => write!(f, "{g}!"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimKind {
    Implication,
    Equivalence,
    NonImplication,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// At every element separately.
    Pointwise,
    /// Between universal properties of the whole system.
    Global,
}

/// A fixture (and, for pointwise claims, one of its elements) where the
/// premise holds and the conclusion fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Witness {
    pub fixture: &'static str,
    pub element: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Claim {
    pub kind: ClaimKind,
    pub scope: Scope,
    pub premise: Vec<Atom>,
    pub conclusion: Vec<Atom>,
    pub witness: Option<Witness>,
}

impl Claim {
    /// E.g. `WN & UNred => CR`, with `!` marking a global atom inside a
    /// pointwise claim and a `global` prefix for global claims.
    pub fn label(&self) -> String {
        let join = |atoms: &[Atom]| {
            if atoms.is_empty() {
                return "true".to_string();
            }
            atoms
                .iter()
                .map(|a| match (self.scope, a) {
                    (Scope::Global, Atom::Everywhere(g)) => g.to_string(),
                    _ => a.to_string(),
                })
                .collect::<Vec<_>>()
                .join(" & ")
        };
        let arrow = match self.kind {
            ClaimKind::Implication => "=>",
            ClaimKind::Equivalence => "<=>",
            ClaimKind::NonImplication => "=/=>",
        };
        let prefix = match self.scope {
            Scope::Pointwise => "",
            Scope::Global => "global ",
        };
        format!("{prefix}{} {arrow} {}", join(&self.premise), join(&self.conclusion))
    }

    /// The offending element (`None` for global claims) if the claim fails.
    pub fn violation(&self, facts: &Facts) -> Option<Option<ElementId>> {
        let holds = |atoms: &[Atom], x: Option<ElementId>| atoms.iter().all(|&a| facts.atom(a, x));
        let ok = |x: Option<ElementId>| {
            let (p, c) = (holds(&self.premise, x), holds(&self.conclusion, x));
            match self.kind {
                ClaimKind::Implication => !p || c,
                ClaimKind::Equivalence => p == c,
                ClaimKind::NonImplication => true,
            }
        };
        match self.scope {
            Scope::Global => (!ok(None)).then_some(None),
            Scope::Pointwise => facts.ars.elements().find(|&x| !ok(Some(x))).map(Some),
        }
    }

    pub fn violated_by(&self, ars: &FiniteArs) -> bool {
        self.violation(&Facts::new(ars)).is_some()
    }

    /// For a non-implication: does the named witness refute the implication?
    pub fn confirm_witness(&self) -> WitnessCheck {
        let Some(w) = self.witness else {
            return WitnessCheck::Missing;
        };
        let Some(fx) = fixture(w.fixture) else {
            return WitnessCheck::UnknownFixture;
        };
        let refutes = |atom: &dyn Fn(Atom) -> Option<bool>| -> WitnessCheck {
            let all = |atoms: &[Atom]| -> Option<bool> {
                let mut v = true;
                for &a in atoms {
                    v &= atom(a)?;
                }
                Some(v)
            };
            match (all(&self.premise), all(&self.conclusion)) {
                (Some(true), Some(false)) => WitnessCheck::Confirmed,
                (Some(_), Some(_)) => WitnessCheck::Refuted,
                _ => WitnessCheck::Undetermined,
            }
        };
        match fx.system {
            System::Finite(ars) => {
                let facts = Facts::new(&ars);
                let x = match (self.scope, w.element) {
                    (Scope::Pointwise, Some(name)) => match ars.lookup(name) {
                        Some(x) => Some(x),
                        None => return WitnessCheck::UnknownFixture,
                    },
                    (Scope::Pointwise, None) => return WitnessCheck::Missing,
                    (Scope::Global, _) => None,
                };
                refutes(&|a| Some(facts.atom(a, x)))
            }
            System::Infinite(sys) => {
                let root_named = w.element.is_none_or(|e| sys.key_of(e) == Some(sys.root()));
                if !root_named {
                    return WitnessCheck::Undetermined;
                }
                let bp = bounded_infinite(sys);
                let scope = self.scope;
                refutes(&|a| match (scope, a) {
                    (Scope::Pointwise, Atom::Here(p)) => bp.element(p),
                    (_, Atom::Everywhere(GlobalProperty::All(p))) => bp.global(p),
                    (Scope::Global, Atom::Here(p)) => bp.global(p),
                    _ => None,
                })
            }
        }
    }
}

fn bounded_infinite(sys: Infinite) -> BoundedProfile {
    let depth = fixture(match sys {
        Infinite::Ce6 => "CE-6",
        Infinite::Ce7 => "CE-7",
    })
    .and_then(|f| f.evidence)
    .map_or(8, |e| e.depth);
    bounded_profile(&sys, &sys.root(), depth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCheck {
    Confirmed,
    /// The witness does not refute the implication.
    Refuted,
    /// Bounded evidence could not settle a property.
    Undetermined,
    UnknownFixture,
    Missing,
}

/// Everything the claims look at, computed once per system.
pub struct Facts<'a> {
    pub ars: &'a FiniteArs,
    pub profiles: Vec<ElementProfile>,
    pub global: GlobalProfile,
}

impl<'a> Facts<'a> {
    pub fn new(ars: &'a FiniteArs) -> Self {
        let an = Analysis::new(ars);
        Self::from_analysis(&an)
    }

    pub fn from_analysis(an: &Analysis<'a>) -> Self {
        let profiles = an.profiles();
        let global = an.global_from(&profiles);
        Facts {
            ars: an.ars(),
            profiles,
            global,
        }
    }

    pub fn atom(&self, a: Atom, at: Option<ElementId>) -> bool {
        match (a, at) {
            (Atom::Here(p), Some(x)) => self.profiles[x.0].get(p),
            (Atom::Here(p), None) => self.global.all(p),
            (Atom::Everywhere(g), _) => self.global.get(g),
        }
    }
}

fn here(ps: &[Property]) -> Vec<Atom> {
    ps.iter().map(|&p| Atom::Here(p)).collect()
}

fn all(ps: &[Property]) -> Vec<Atom> {
    ps.iter().map(|&p| Atom::Everywhere(GlobalProperty::All(p))).collect()
}

fn glob(gs: &[GlobalProperty]) -> Vec<Atom> {
    gs.iter().map(|&g| Atom::Everywhere(g)).collect()
}

fn claim(kind: ClaimKind, scope: Scope, premise: Vec<Atom>, conclusion: Vec<Atom>) -> Claim {
    Claim {
        kind,
        scope,
        premise,
        conclusion,
        witness: None,
    }
}

fn pointwise(kind: ClaimKind, premise: &[Property], conclusion: &[Property]) -> Claim {
    claim(kind, Scope::Pointwise, here(premise), here(conclusion))
}

fn global(kind: ClaimKind, premise: Vec<Atom>, conclusion: Vec<Atom>) -> Claim {
    claim(kind, Scope::Global, premise, conclusion)
}

fn local_counter(premise: &[Property], conclusion: Property, fixture: &'static str, element: &'static str) -> Claim {
    // Counterexamples to local implications are taken where WCR holds.
    let mut p = vec![Property::Wcr];
    p.extend_from_slice(premise);
    let mut c = pointwise(ClaimKind::NonImplication, &p, &[conclusion]);
    c.witness = Some(Witness {
        fixture,
        element: Some(element),
    });
    c
}

fn global_counter(premise: &[Property], conclusion: Property, fixture: &'static str, with_wcr: bool) -> Claim {
    let mut p = Vec::new();
    if with_wcr {
        p.push(Property::Wcr);
    }
    p.extend_from_slice(premise);
    let mut c = global(ClaimKind::NonImplication, all(&p), all(&[conclusion]));
    c.witness = Some(Witness { fixture, element: None });
    c
}

/// The frozen claim list.
pub fn claim_set() -> Vec<Claim> {
    use ClaimKind::*;
    use GlobalProperty::{Bp, Inc, Rp, RpMinus};
    use Property::*;
    let g = |p: Property| GlobalProperty::All(p);
    let mut out = vec![
        // hierarchy of single properties
        pointwise(Implication, &[Nf], &[Mf]),
        pointwise(Equivalence, &[Mf, Wn], &[Nf]),
        pointwise(Equivalence, &[Mf, Sn], &[Nf]),
        pointwise(Implication, &[Nf], &[Sn]),
        pointwise(Implication, &[Sn], &[Wn]),
        pointwise(Implication, &[Sn], &[Sm]),
        pointwise(Implication, &[Mf], &[Sm]),
        pointwise(Implication, &[Wn], &[Wm]),
        pointwise(Implication, &[Sm], &[Wm]),
        pointwise(Equivalence, &[Sm], &[SmSeq]),
        pointwise(Implication, &[Cr], &[Mp]),
        pointwise(Implication, &[Mp], &[NpRed]),
        pointwise(Implication, &[NpRed], &[UnRed]),
        pointwise(Implication, &[Cr], &[Wcr]),
        pointwise(Equivalence, &[Cp], &[Cr]),
        // local completeness results
        pointwise(Implication, &[NpRed, Wn], &[Cr]),
        pointwise(Implication, &[Mp, Wm], &[Cr]),
        pointwise(Implication, &[Wn, NpRed, Sm], &[Sn]),
        pointwise(Implication, &[UnRed, Sn], &[Cr]),
        claim(
            Implication,
            Scope::Pointwise,
            [all(&[Wcr]), here(&[Sm])].concat(),
            here(&[Cr]),
        ),
        claim(
            Implication,
            Scope::Pointwise,
            [all(&[Wn]), here(&[Sm])].concat(),
            here(&[Sn]),
        ),
        // global results
        global(Equivalence, all(&[NpConv]), all(&[NpRed])),
        global(Implication, all(&[UnConv]), all(&[UnRed])),
        global(Implication, all(&[SubCommutative]), all(&[Cr])),
        global(Equivalence, glob(&[RpMinus]), glob(&[Rp])),
        global(Equivalence, all(&[SmSeq]), glob(&[Rp, Bp])),
        global(Implication, glob(&[Inc]), glob(&[Rp])),
        global(Implication, all(&[Cr]), all(&[NpConv])),
        global(Implication, all(&[NpConv]), all(&[UnConv])),
        global(Implication, all(&[Wn, UnConv]), all(&[Cr])),
        global(Implication, all(&[Wn, UnRed]), all(&[Cr])),
        global(Implication, all(&[Wn, UnRed]), glob(&[Bp])),
        global(Implication, [all(&[Wn, UnConv]), glob(&[Rp])].concat(), all(&[Sn])),
        global(Implication, [all(&[Wn, Wcr]), glob(&[RpMinus])].concat(), all(&[Sn])),
        global(Implication, [all(&[Wcr, Wn]), glob(&[Inc])].concat(), all(&[Sn])),
        global(Implication, all(&[Sn, Wcr]), all(&[Cr])),
        global(Implication, all(&[Wcr, Sm]), all(&[Cr])),
        global(Implication, all(&[Wn, Sm]), all(&[Sn])),
        global(Implication, all(&[Mp, Wm]), all(&[Cr])),
        global(Equivalence, all(&[Cp]), all(&[Cr])),
        global(Implication, vec![], glob(&[Bp, g(Wm)])),
        // counterexamples, local
        local_counter(&[UnRed, Wm], Cr, "CE-4", "a"),
        local_counter(&[UnRed, Wm], Sn, "CE-11", "a"),
        local_counter(&[UnRed, Wn], Cr, "CE-4", "a"),
        local_counter(&[UnRed, Wn], Sn, "CE-6", "f0"),
        local_counter(&[UnRed, Sm], Sn, "CE-8", "a"),
        local_counter(&[UnRed, Sm, Wn], Sn, "CE-4", "a"),
        local_counter(&[NpRed, Wm], Cr, "CE-3", "b"),
        local_counter(&[NpRed, Wm], Sn, "CE-8", "a"),
        local_counter(&[NpRed, Wn], Sn, "CE-6", "f0"),
        local_counter(&[NpRed, Sm], Sn, "CE-8", "a"),
        local_counter(&[Mp, Wm], Sn, "CE-8", "a"),
        local_counter(&[Mp, Wn], Sn, "CE-6", "f0"),
        local_counter(&[Mp, Sm], Sn, "CE-8", "a"),
        local_counter(&[Cr, Wm], Sn, "CE-8", "a"),
        local_counter(&[Cr, Wn], Sn, "CE-6", "f0"),
        local_counter(&[Cr, Sm], Sn, "CE-8", "a"),
        local_counter(&[Wn, UnRed], Cr, "CE-4", "a"),
        // counterexamples, global
        global_counter(&[UnRed, Wm], Cr, "CE-2", true),
        global_counter(&[UnRed, Wm], Sn, "CE-8", true),
        global_counter(&[UnRed, Wn], Sn, "CE-6", true),
        global_counter(&[UnRed, Sm], Sn, "CE-8", true),
        global_counter(&[NpRed, Wm], Cr, "CE-3", true),
        global_counter(&[NpRed, Wm], Sn, "CE-8", true),
        global_counter(&[NpRed, Wn], Sn, "CE-6", true),
        global_counter(&[NpRed, Sm], Sn, "CE-8", true),
        global_counter(&[Mp, Wm], Sn, "CE-8", true),
        global_counter(&[Mp, Wn], Sn, "CE-6", true),
        global_counter(&[Mp, Sm], Sn, "CE-8", true),
        global_counter(&[Cr, Wm], Sn, "CE-8", true),
        global_counter(&[Cr, Wn], Sn, "CE-6", true),
        global_counter(&[Cr, Sm], Sn, "CE-8", true),
        global_counter(&[UnRed], UnConv, "CE-5", false),
    ];
    // drop exact duplicates that the table layout produces
    let mut seen = std::collections::HashSet::new();
    out.retain(|c| seen.insert(c.clone()));
    out
}

/// A deliberately false claim, for exercising the fuzzer and shrinker.
pub fn corrupted_claim() -> Claim {
    pointwise(ClaimKind::Implication, &[Property::Wn], &[Property::Sn])
}
