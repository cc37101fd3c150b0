//! Witness-producing versions of the classical confluence theorems.
//!
//! Every procedure checks its own hypotheses first and reports the element
//! at which one fails, so misuse surfaces as [`Error::PreconditionFailed`]
//! instead of a wrong answer. Recursions whose termination argument is
//! semantic (strong normalization, strong minimalization) carry a fuel
//! budget and report [`Error::FuelExhausted`] when it runs out.

use std::collections::BTreeMap;

use crate::enumerable::{terminating_walk, EnumerableArs};
use crate::error::{Error, Precondition, Result};
use crate::properties::{
    join_with, Analysis, CofinalityWitness, Coverage, ElementProfile, GlobalProfile, Join, Peak, Property,
};
use crate::relation::{path_between, ElementId, FiniteArs, Lasso, PathWitness, StepMode};

/// Which construction produced a join.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinMethod {
    Newman,
    GeneralizedNewman,
    WnUn,
    Cofinality,
    /// Plain reachability search; the oracle the others are compared with.
    Exhaustive,
}

impl JoinMethod {
    pub const ALL: [JoinMethod; 5] = [
        JoinMethod::Newman,
        JoinMethod::GeneralizedNewman,
        JoinMethod::WnUn,
        JoinMethod::Cofinality,
        JoinMethod::Exhaustive,
    ];

    pub fn label(self) -> &'static str {
        match self {
            JoinMethod::Newman => "newman",
            JoinMethod::GeneralizedNewman => "gnewman",
            JoinMethod::WnUn => "wnun",
            JoinMethod::Cofinality => "cp",
            JoinMethod::Exhaustive => "exhaustive",
        }
    }
}

fn failed(p: Precondition) -> Error {
    Error::PreconditionFailed(p)
}

fn check_peak(ars: &FiniteArs, peak: &Peak) -> Result<()> {
    peak.validate(ars)
        .map_err(|e| failed(Precondition::InvalidPeak(e.to_string())))
}

fn not_sn(an: &Analysis, element: ElementId) -> Error {
    failed(Precondition::NotStronglyNormalizing {
        element,
        cycle: an.infinite_reduction(element).expect("element is not SN"),
    })
}

fn require_wcr<I: IntoIterator<Item = ElementId>>(an: &Analysis, elements: I) -> Result<()> {
    for x in elements {
        if let Some((left, right)) = an.first_unjoinable_step_peak(x) {
            return Err(failed(Precondition::NotWeaklyConfluent {
                element: x,
                left,
                right,
            }));
        }
    }
    Ok(())
}

fn require_global_wn_un(an: &Analysis) -> Result<()> {
    let ars = an.ars();
    if let Some(x) = ars.elements().find(|&x| !an.is_wn(x)) {
        return Err(failed(Precondition::NotWeaklyNormalizing { element: x }));
    }
    for x in ars.elements() {
        if let [first, second, ..] = an.normal_forms_of(x)[..] {
            return Err(failed(Precondition::NotUniqueNormalForms {
                element: x,
                first,
                second,
            }));
        }
    }
    Ok(())
}

/// The recursion shared by both Newman constructions: split off the first
/// steps, close them with the local join, then recurse at the two one-step
/// reducts. With `mf_base`, a minimal-form apex is closed directly by
/// reducing both ends back to it.
fn descend(
    an: &Analysis,
    left: &PathWitness,
    right: &PathWitness,
    depth: usize,
    fuel: usize,
    mf_base: bool,
) -> Result<Join> {
    let ars = an.ars();
    if left.step_count() == 0 {
        return Ok(Join {
            target: right.target(),
            from_left: right.clone(),
            from_right: PathWitness::trivial(right.target()),
        });
    }
    if right.step_count() == 0 {
        return Ok(Join {
            target: left.target(),
            from_left: PathWitness::trivial(left.target()),
            from_right: left.clone(),
        });
    }
    let apex = left.source();
    if mf_base && an.is_mf(apex) {
        let back = |from| path_between(ars, from, apex).expect("minimal forms are reachable back");
        return Ok(Join {
            target: apex,
            from_left: back(left.target()),
            from_right: back(right.target()),
        });
    }
    if depth == 0 {
        return Err(Error::FuelExhausted { steps: fuel });
    }
    let (b1, c1) = (left.nodes()[1], right.nodes()[1]);
    let local = join_with(ars, an.reach(), b1, c1).ok_or_else(|| {
        failed(Precondition::NotWeaklyConfluent {
            element: apex,
            left: b1,
            right: c1,
        })
    })?;
    let left_tail = left.tail().expect("at least one step");
    let right_tail = right.tail().expect("at least one step");
    // b1 ->* b and b1 ->* d close to some e
    let j1 = descend(an, &left_tail, &local.from_left, depth - 1, fuel, mf_base)?;
    // c1 ->* c and c1 ->* d ->* e close to some f
    let via = local.from_right.then(&j1.from_right);
    let j2 = descend(an, &right_tail, &via, depth - 1, fuel, mf_base)?;
    Ok(Join {
        target: j2.target,
        from_left: j1.from_left.then(&j2.from_right),
        from_right: j2.from_left,
    })
}

/// Join a peak from a strongly normalizing, locally confluent apex.
pub fn newman_join(ars: &FiniteArs, peak: &Peak, fuel: usize) -> Result<Join> {
    newman_join_in(&Analysis::new(ars), peak, fuel)
}

pub fn newman_join_in(an: &Analysis, peak: &Peak, fuel: usize) -> Result<Join> {
    check_peak(an.ars(), peak)?;
    if !an.is_sn(peak.apex) {
        return Err(not_sn(an, peak.apex));
    }
    require_wcr(an, an.reducts(peak.apex))?;
    descend(an, &peak.left, &peak.right, fuel, fuel, false)
}

/// Join a peak from a strongly minimalizing apex in a locally confluent system.
pub fn generalized_newman_join(ars: &FiniteArs, peak: &Peak, fuel: usize) -> Result<Join> {
    generalized_newman_join_in(&Analysis::new(ars), peak, fuel)
}

pub fn generalized_newman_join_in(an: &Analysis, peak: &Peak, fuel: usize) -> Result<Join> {
    check_peak(an.ars(), peak)?;
    require_wcr(an, an.ars().elements())?;
    if !an.is_sm(peak.apex) {
        return Err(failed(Precondition::NotStronglyMinimalizing { element: peak.apex }));
    }
    descend(an, &peak.left, &peak.right, fuel, fuel, true)
}

/// Normalize both ends; unique normal forms make them meet.
pub fn wn_un_join(ars: &FiniteArs, peak: &Peak) -> Result<Join> {
    wn_un_join_in(&Analysis::new(ars), peak)
}

pub fn wn_un_join_in(an: &Analysis, peak: &Peak) -> Result<Join> {
    check_peak(an.ars(), peak)?;
    require_global_wn_un(an)?;
    let nf = |x: ElementId| an.nearest_normal_form(x).expect("WN holds everywhere");
    let (l, r) = (nf(peak.left.target()), nf(peak.right.target()));
    if l.target() != r.target() {
        return Err(failed(Precondition::NotUniqueNormalForms {
            element: peak.apex,
            first: l.target(),
            second: r.target(),
        }));
    }
    Ok(Join {
        target: l.target(),
        from_left: l,
        from_right: r,
    })
}

/// `s(from) ->* s(to)` along the sequence, dropping stutter steps.
fn segment(seq: &Lasso, from: usize, to: usize) -> PathWitness {
    let mut nodes = vec![seq.at(from)];
    for k in from + 1..=to {
        let x = seq.at(k);
        if nodes.last() != Some(&x) {
            nodes.push(x);
        }
    }
    PathWitness::new(nodes)
}

/// Join both ends at the later of their coverage points on the cofinal sequence.
pub fn cofinality_join(ars: &FiniteArs, w: &CofinalityWitness, peak: &Peak) -> Result<Join> {
    check_peak(ars, peak)?;
    w.validate(ars)
        .map_err(|e| failed(Precondition::InvalidWitness(e.to_string())))?;
    if w.base != peak.apex {
        return Err(failed(Precondition::InvalidWitness(format!(
            "witness is for {}, peak is from {}",
            ars.name(w.base),
            ars.name(peak.apex)
        ))));
    }
    let cover = |e: ElementId| {
        w.coverage
            .get(&e)
            .ok_or(failed(Precondition::MissingCoverage { element: e }))
    };
    let (l, r) = (cover(peak.left.target())?, cover(peak.right.target())?);
    let k = l.index.max(r.index);
    Ok(Join {
        target: w.sequence.at(k),
        from_left: l.path.then(&segment(&w.sequence, l.index, k)),
        from_right: r.path.then(&segment(&w.sequence, r.index, k)),
    })
}

/// Build a cofinal sequence for a confluent element by joining the running
/// endpoint with each reduct in index order.
pub fn cr_to_cofinality(ars: &FiniteArs, a: ElementId) -> Result<CofinalityWitness> {
    cr_to_cofinality_in(&Analysis::new(ars), a)
}

pub fn cr_to_cofinality_in(an: &Analysis, a: ElementId) -> Result<CofinalityWitness> {
    let ars = an.ars();
    ars.element(a.0)?;
    let mut seq = vec![a];
    let mut coverage = BTreeMap::new();
    for x in an.reducts(a) {
        let current = *seq.last().expect("nonempty");
        let j = join_with(ars, an.reach(), current, x).ok_or_else(|| {
            failed(Precondition::NotConfluent {
                element: a,
                left: x,
                right: current,
            })
        })?;
        seq.extend_from_slice(&j.from_left.nodes()[1..]);
        coverage.insert(
            x,
            Coverage {
                index: seq.len() - 1,
                path: j.from_right,
            },
        );
    }
    let last = *seq.last().expect("nonempty");
    Ok(CofinalityWitness {
        base: a,
        sequence: Lasso::new(seq, vec![last]),
        coverage,
    })
}

/// Normal form of a strongly normalizing key, following first successors.
///
/// The whole reduction tree below `a` is explored first (each key once), so
/// an element that is not strongly normalizing exhausts the fuel even when
/// its first-successor path happens to end in a normal form.
pub fn normalize_sn<E: EnumerableArs>(ars: &E, a: &E::Key, fuel: usize) -> Result<(E::Key, Vec<E::Key>)> {
    let path = terminating_walk(ars, a, fuel).map_err(|steps| Error::FuelExhausted { steps })?;
    Ok((path.last().expect("nonempty").clone(), path))
}

/// [`normalize_sn`] on a finite system, refusing up front (with an infinite
/// reduction as evidence) when `a` is not strongly normalizing.
pub fn normalize_finite(ars: &FiniteArs, a: ElementId, fuel: usize) -> Result<PathWitness> {
    ars.element(a.0)?;
    let an = Analysis::new(ars);
    if !an.is_sn(a) {
        return Err(not_sn(&an, a));
    }
    let (_, path) = normalize_sn(ars, &a, fuel)?;
    Ok(PathWitness::new(path))
}

/// Outcome of comparing two elements by their normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conversion {
    pub convertible: bool,
    pub left: PathWitness,
    pub right: PathWitness,
}

/// Decide `a =R= b` in a complete system by comparing normal forms.
pub fn decide_conversion(ars: &FiniteArs, a: ElementId, b: ElementId) -> Result<Conversion> {
    decide_conversion_in(&Analysis::new(ars), a, b)
}

pub fn decide_conversion_in(an: &Analysis, a: ElementId, b: ElementId) -> Result<Conversion> {
    let ars = an.ars();
    ars.element(a.0)?;
    ars.element(b.0)?;
    if let Some(x) = ars.elements().find(|&x| !an.is_sn(x)) {
        return Err(not_sn(an, x));
    }
    for x in ars.elements() {
        if let Some((left, right)) = an.first_unjoinable_pair(x) {
            return Err(failed(Precondition::NotConfluent {
                element: x,
                left,
                right,
            }));
        }
    }
    let nf = |x| an.nearest_normal_form(x).expect("SN implies WN on finite systems");
    let (left, right) = (nf(a), nf(b));
    Ok(Conversion {
        convertible: left.target() == right.target(),
        left,
        right,
    })
}

/// The unique normal form of the sequence's first element bounds the sequence.
pub fn bound_from_wn_un(ars: &FiniteArs, lasso: &Lasso) -> Result<ElementId> {
    bound_from_wn_un_in(&Analysis::new(ars), lasso)
}

pub fn bound_from_wn_un_in(an: &Analysis, lasso: &Lasso) -> Result<ElementId> {
    lasso.validate(an.ars(), StepMode::Strict)?;
    require_global_wn_un(an)?;
    let bound = an
        .nearest_normal_form(lasso.first())
        .expect("WN holds everywhere")
        .target();
    if !lasso.elements().all(|e| an.reaches(e, bound)) {
        return Err(failed(Precondition::InvalidWitness(format!(
            "{} does not bound the sequence",
            an.ars().name(bound)
        ))));
    }
    Ok(bound)
}

/// What a failed claim points at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Element(ElementId),
    Peak(Peak),
    Lasso(Lasso),
}

impl Evidence {
    pub fn validate(&self, ars: &FiniteArs) -> Result<()> {
        match self {
            Evidence::Element(e) => ars.element(e.0).map(|_| ()),
            Evidence::Peak(p) => p.validate(ars),
            Evidence::Lasso(l) => l.validate(ars, StepMode::Strict),
        }
    }

    pub fn render(&self, ars: &FiniteArs) -> String {
        match self {
            Evidence::Element(e) => format!("at {}", ars.name(*e)),
            Evidence::Peak(p) => format!("peak {} / {}", ars.render_path(&p.left), ars.render_path(&p.right)),
            Evidence::Lasso(l) => format!("sequence {}", ars.render_cycle(l)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub label: &'static str,
    pub holds: bool,
    pub counterexample: Option<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TheoremReport {
    pub verdicts: Vec<ClaimVerdict>,
    /// Peaks handed to each constructive join procedure.
    pub peaks_tried: Vec<(&'static str, usize)>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimVerdict> {
        self.verdicts.iter().filter(|v| !v.holds)
    }
}

struct Suite<'s, 'a> {
    an: &'s Analysis<'a>,
    profiles: &'s [ElementProfile],
    global: &'s GlobalProfile,
    report: TheoremReport,
}

impl Suite<'_, '_> {
    fn push(&mut self, label: &'static str, counterexample: Option<Evidence>) {
        self.report.verdicts.push(ClaimVerdict {
            label,
            holds: counterexample.is_none(),
            counterexample,
        });
    }

    fn at(&self, x: ElementId, p: Property) -> bool {
        self.profiles[x.0].get(p)
    }

    /// Pointwise material implication; evidence is the first offending element.
    fn pointwise(&mut self, label: &'static str, premise: impl Fn(&Self, ElementId) -> bool, conclusion: Property) {
        let bad = self
            .an
            .ars()
            .elements()
            .find(|&x| premise(self, x) && !self.at(x, conclusion));
        self.push(label, bad.map(|x| self.evidence_for(x, conclusion)));
    }

    /// Global material implication with an element-level conclusion.
    fn global(&mut self, label: &'static str, premise: bool, conclusion: Property) {
        let bad = if premise && !self.global.all(conclusion) {
            let x = self
                .an
                .ars()
                .elements()
                .find(|&x| !self.at(x, conclusion))
                .expect("a conjunction fails somewhere");
            Some(self.evidence_for(x, conclusion))
        } else {
            None
        };
        self.push(label, bad);
    }

    fn evidence_for(&self, x: ElementId, conclusion: Property) -> Evidence {
        match (conclusion, self.an.infinite_reduction(x)) {
            (Property::Sn, Some(lasso)) => Evidence::Lasso(lasso),
            _ => Evidence::Element(x),
        }
    }

    fn peaks(&self, x: ElementId) -> Vec<Peak> {
        let reducts: Vec<ElementId> = self.an.reducts(x).collect();
        let mut out = Vec::new();
        for (i, &b) in reducts.iter().enumerate() {
            for &c in &reducts[i..] {
                out.push(Peak::between(self.an.ars(), x, b, c).expect("reducts are reachable"));
            }
        }
        out
    }

    /// Every peak from every apex satisfying `apex_ok` must be joined by `join`.
    fn constructive(
        &mut self,
        label: &'static str,
        apex_ok: impl Fn(&Self, ElementId) -> bool,
        join: impl Fn(&Analysis, &Peak) -> Result<Join>,
    ) {
        let ars = self.an.ars();
        let mut bad = None;
        let mut tried = 0;
        'outer: for x in ars.elements().filter(|&x| apex_ok(self, x)) {
            for peak in self.peaks(x) {
                tried += 1;
                let ok = matches!(join(self.an, &peak), Ok(j) if j.validate_for(ars, &peak).is_ok());
                if !ok {
                    bad = Some(Evidence::Peak(peak));
                    break 'outer;
                }
            }
        }
        self.report.peaks_tried.push((label, tried));
        self.push(label, bad);
    }
}

/// Fuel that is always enough on `ars`: the square of its size.
pub fn ample_fuel(ars: &FiniteArs) -> usize {
    ars.size() * ars.size() + 1
}

/// Evaluate every theorem on this instance, plus the constructive procedures
/// on every peak whose hypotheses hold.
pub fn theorem_suite(ars: &FiniteArs) -> TheoremReport {
    let an = Analysis::new(ars);
    let profiles = an.profiles();
    let global = an.global_from(&profiles);
    theorem_suite_in(&an, &profiles, &global)
}

pub fn theorem_suite_in(an: &Analysis, profiles: &[ElementProfile], global: &GlobalProfile) -> TheoremReport {
    use Property::*;
    let mut s = Suite {
        an,
        profiles,
        global,
        report: TheoremReport::default(),
    };
    let g = |p| global.all(p);
    let ars = an.ars();

    s.global("CR => NPconv", g(Cr), NpConv);
    s.global("NPconv => UNconv", g(NpConv), UnConv);
    s.global("WN & UNconv => CR", g(Wn) && g(UnConv), Cr);
    s.global("WN & UNred => CR", g(Wn) && g(UnRed), Cr);
    s.global("SubCommutative => CR", g(SubCommutative), Cr);
    let bp_fails = |premise: bool| premise && !global.bp;
    let lasso_anywhere = || {
        ars.elements()
            .find_map(|x| an.infinite_reduction(x))
            .map(Evidence::Lasso)
    };
    let i_conv = bp_fails(g(Wn) && g(UnConv)).then(lasso_anywhere).flatten();
    s.push("WN & UNconv => BP", i_conv);
    let i_red = bp_fails(g(Wn) && g(UnRed)).then(lasso_anywhere).flatten();
    s.push("WN & UNred => BP", i_red);
    s.global("WN & UNconv & RP => SN", g(Wn) && g(UnConv) && global.rp, Sn);
    s.global("WN & WCR & RPminus => SN", g(Wn) && g(Wcr) && global.rp_minus, Sn);
    s.global("BP & Inc => SN", global.bp && global.inc, Sn);
    s.pointwise("CP => CR", |s, x| s.at(x, Cp), Cr);
    s.pointwise("CR => CP", |s, x| s.at(x, Cr), Cp);
    s.global("SN & WCR => CR", g(Sn) && g(Wcr), Cr);
    s.pointwise("WCR & SM => CR", |s, x| g(Wcr) && s.at(x, Sm), Cr);
    s.pointwise(
        "WN & NPred & SM => SN",
        |s, x| s.at(x, Wn) && s.at(x, NpRed) && s.at(x, Sm),
        Sn,
    );
    s.pointwise("WN & SM(x) => SN(x)", |s, x| g(Wn) && s.at(x, Sm), Sn);
    s.global("WN & SM => SN", g(Wn) && g(Sm), Sn);
    s.pointwise("SN => WN", |s, x| s.at(x, Sn), Wn);

    let fuel = ample_fuel(ars);
    let wcr_below = |s: &Suite, x: ElementId| s.an.reducts(x).all(|y| s.at(y, Wcr));
    s.constructive(
        "newman join",
        |s, x| s.at(x, Sn) && wcr_below(s, x),
        |an, p| newman_join_in(an, p, fuel),
    );
    s.constructive(
        "generalized newman join",
        |s, x| g(Wcr) && s.at(x, Sm),
        |an, p| generalized_newman_join_in(an, p, fuel),
    );
    s.constructive("wn-un join", |_, _| g(Wn) && g(UnRed), wn_un_join_in);
    let profiles_ref = profiles;
    s.constructive(
        "cofinality join",
        |s, x| s.at(x, Cp),
        |an, p| {
            let w = profiles_ref[p.apex.0]
                .cp_witness
                .as_ref()
                .expect("CP carries a witness");
            cofinality_join(an.ars(), w, p)
        },
    );

    let bad = ars.elements().find(|&x| {
        let built = cr_to_cofinality_in(an, x);
        match built {
            Ok(w) => !profiles[x.0].get(Cr) || w.validate(ars).is_err(),
            Err(_) => profiles[x.0].get(Cr),
        }
    });
    s.push("CR => cofinal sequence", bad.map(Evidence::Element));

    let bad = ars.elements().find(|&x| {
        let budget = an.reducts(x).count() + 1;
        match normalize_sn(ars, &x, budget) {
            Ok((nf, path)) => {
                !profiles[x.0].get(Sn) || !ars.is_normal_form(nf) || PathWitness::new(path).validate(ars).is_err()
            }
            Err(_) => profiles[x.0].get(Sn),
        }
    });
    s.push("SN normalization", bad.map(Evidence::Element));

    let mut bad = None;
    if g(Wn) && g(UnRed) {
        for x in ars.elements() {
            if let Some(lasso) = an.infinite_reduction(x) {
                if bound_from_wn_un_in(an, &lasso).is_err() {
                    bad = Some(Evidence::Lasso(lasso));
                    break;
                }
            }
        }
    }
    s.push("WN & UNred bound", bad);

    let mut bad = None;
    if g(Sn) && g(Cr) {
        'outer: for a in ars.elements() {
            for b in ars.elements() {
                let agrees = matches!(
                    decide_conversion_in(an, a, b),
                    Ok(c) if c.convertible == an.conversion().get(a, b)
                );
                if !agrees {
                    bad = Some(Evidence::Element(a));
                    break 'outer;
                }
            }
        }
    }
    s.push("conversion by normal forms", bad);

    s.report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(names: &[&str], steps: &[(&str, &str)]) -> FiniteArs {
        FiniteArs::build(names, steps).unwrap()
    }

    fn diamond() -> FiniteArs {
        named(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    }

    fn ce8() -> FiniteArs {
        named(&["a", "b"], &[("a", "b"), ("b", "a")])
    }

    fn ce4() -> FiniteArs {
        named(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("a", "e"), ("b", "e"), ("b", "c"), ("c", "d"), ("d", "c")],
        )
    }

    fn id(ars: &FiniteArs, n: &str) -> ElementId {
        ars.lookup(n).unwrap()
    }

    fn peak(ars: &FiniteArs, apex: &str, l: &str, r: &str) -> Peak {
        Peak::between(ars, id(ars, apex), id(ars, l), id(ars, r)).unwrap()
    }

    #[test]
    fn newman_on_diamond() {
        let ars = diamond();
        let p = peak(&ars, "a", "b", "c");
        let j = newman_join(&ars, &p, 16).unwrap();
        assert_eq!(j.target, id(&ars, "d"));
        j.validate_for(&ars, &p).unwrap();
        assert_eq!(generalized_newman_join(&ars, &p, 16).unwrap(), j);
    }

    #[test]
    fn newman_rejects_cycles() {
        let ars = ce8();
        let p = peak(&ars, "a", "a", "b");
        let err = newman_join(&ars, &p, 16).unwrap_err();
        assert!(matches!(
            err,
            Error::PreconditionFailed(Precondition::NotStronglyNormalizing { .. })
        ));
    }

    #[test]
    fn generalized_newman_on_two_cycle() {
        let ars = ce8();
        let p = peak(&ars, "a", "b", "a");
        let j = generalized_newman_join(&ars, &p, 16).unwrap();
        assert_eq!(j.target, id(&ars, "b"));
        assert_eq!(j.from_left.step_count(), 0);
        assert_eq!(ars.render_path(&j.from_right), "a -> b");
    }

    #[test]
    fn generalized_newman_needs_global_wcr() {
        let ars = ce4();
        let p = peak(&ars, "a", "b", "e");
        let err = generalized_newman_join(&ars, &p, 16).unwrap_err();
        let Error::PreconditionFailed(Precondition::NotWeaklyConfluent { element, .. }) = err else {
            panic!("unexpected {err:?}");
        };
        assert_eq!(element, id(&ars, "b"));
    }

    #[test]
    fn newman_fuel_runs_out() {
        let chain = FiniteArs::from_steps(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let p = Peak::between(&chain, ElementId(0), ElementId(2), ElementId(3)).unwrap();
        assert!(matches!(newman_join(&chain, &p, 1), Err(Error::FuelExhausted { .. })));
        newman_join(&chain, &p, 17).unwrap().validate_for(&chain, &p).unwrap();
    }

    #[test]
    fn wn_un_joins() {
        let ce11 = named(&["a", "b", "c"], &[("a", "c"), ("a", "b"), ("b", "a")]);
        let p = peak(&ce11, "a", "c", "b");
        let j = wn_un_join(&ce11, &p).unwrap();
        assert_eq!(j.target, id(&ce11, "c"));
        assert_eq!(ce11.render_path(&j.from_right), "b -> a -> c");

        let ce5 = named(
            &["a", "b", "c", "d", "m", "n"],
            &[("c", "n"), ("c", "a"), ("a", "b"), ("b", "a"), ("d", "b"), ("d", "m")],
        );
        let p = peak(&ce5, "c", "n", "a");
        assert_eq!(
            wn_un_join(&ce5, &p).unwrap_err(),
            Error::PreconditionFailed(Precondition::NotWeaklyNormalizing { element: id(&ce5, "a") })
        );

        let one = FiniteArs::from_steps(1, []).unwrap();
        let p = Peak::between(&one, ElementId(0), ElementId(0), ElementId(0)).unwrap();
        assert_eq!(wn_un_join(&one, &p).unwrap().target, ElementId(0));
    }

    #[test]
    fn cofinality_examples() {
        let ars = ce8();
        let (a, b) = (id(&ars, "a"), id(&ars, "b"));
        let w = CofinalityWitness {
            base: a,
            sequence: Lasso::new(vec![], vec![a, b]),
            coverage: BTreeMap::from([
                (
                    a,
                    Coverage {
                        index: 0,
                        path: PathWitness::trivial(a),
                    },
                ),
                (
                    b,
                    Coverage {
                        index: 1,
                        path: PathWitness::trivial(b),
                    },
                ),
            ]),
        };
        let p = peak(&ars, "a", "a", "b");
        assert_eq!(cofinality_join(&ars, &w, &p).unwrap().target, b);

        let d = diamond();
        let (da, db, dc, dd) = (id(&d, "a"), id(&d, "b"), id(&d, "c"), id(&d, "d"));
        let mut w = CofinalityWitness {
            base: da,
            sequence: Lasso::new(vec![da, db], vec![dd]),
            coverage: BTreeMap::from([
                (
                    da,
                    Coverage {
                        index: 0,
                        path: PathWitness::trivial(da),
                    },
                ),
                (
                    db,
                    Coverage {
                        index: 1,
                        path: PathWitness::trivial(db),
                    },
                ),
                (
                    dc,
                    Coverage {
                        index: 2,
                        path: PathWitness::new(vec![dc, dd]),
                    },
                ),
                (
                    dd,
                    Coverage {
                        index: 2,
                        path: PathWitness::trivial(dd),
                    },
                ),
            ]),
        };
        let p = peak(&d, "a", "b", "c");
        let j = cofinality_join(&d, &w, &p).unwrap();
        assert_eq!(j.target, dd);
        j.validate_for(&d, &p).unwrap();
        w.coverage.remove(&dc);
        assert!(matches!(
            cofinality_join(&d, &w, &p),
            Err(Error::PreconditionFailed(Precondition::InvalidWitness(_)))
        ));
    }

    #[test]
    fn cofinal_sequences_from_confluence() {
        let ars = ce8();
        let w = cr_to_cofinality(&ars, id(&ars, "a")).unwrap();
        w.validate(&ars).unwrap();
        assert_eq!(w.coverage.len(), 2);

        let ars = ce4();
        assert_eq!(
            cr_to_cofinality(&ars, id(&ars, "a")).unwrap_err(),
            Error::PreconditionFailed(Precondition::NotConfluent {
                element: id(&ars, "a"),
                left: id(&ars, "e"),
                right: id(&ars, "c"),
            })
        );

        let one = FiniteArs::from_steps(1, []).unwrap();
        let w = cr_to_cofinality(&one, ElementId(0)).unwrap();
        assert_eq!(w.sequence.stem(), &[ElementId(0)]);
        w.validate(&one).unwrap();
    }

    #[test]
    fn conversion_by_normal_forms() {
        let chain = named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let c = decide_conversion(&chain, id(&chain, "a"), id(&chain, "c")).unwrap();
        assert!(c.convertible);
        assert_eq!(c.left.target(), id(&chain, "c"));
        let apart = named(&["x", "y"], &[]);
        assert!(
            !decide_conversion(&apart, ElementId(0), ElementId(1))
                .unwrap()
                .convertible
        );
        let ce5 = named(
            &["a", "b", "c", "d", "m", "n"],
            &[("c", "n"), ("c", "a"), ("a", "b"), ("b", "a"), ("d", "b"), ("d", "m")],
        );
        assert!(matches!(
            decide_conversion(&ce5, ElementId(0), ElementId(1)),
            Err(Error::PreconditionFailed(Precondition::NotStronglyNormalizing { .. }))
        ));
    }

    #[test]
    fn bounds_from_unique_normal_forms() {
        let ars = named(&["a", "b", "n"], &[("a", "b"), ("b", "a"), ("a", "n")]);
        let lasso = Lasso::new(vec![], vec![ElementId(0), ElementId(1)]);
        assert_eq!(bound_from_wn_un(&ars, &lasso).unwrap(), id(&ars, "n"));
        let lasso = Lasso::new(vec![], vec![ElementId(0), ElementId(1)]);
        assert!(matches!(
            bound_from_wn_un(&ce8(), &lasso),
            Err(Error::PreconditionFailed(Precondition::NotWeaklyNormalizing { .. }))
        ));
        let looped = named(&["m", "x"], &[("x", "x"), ("x", "m")]);
        let lasso = Lasso::new(vec![], vec![id(&looped, "x")]);
        assert_eq!(bound_from_wn_un(&looped, &lasso).unwrap(), id(&looped, "m"));
    }

    #[test]
    fn normalization_of_finite_systems() {
        let ars = named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let (nf, path) = normalize_sn(&ars, &ElementId(0), 4).unwrap();
        assert_eq!(nf, ElementId(2));
        assert_eq!(path.len(), 3);
        assert!(matches!(
            normalize_sn(&ce8(), &ElementId(0), 100),
            Err(Error::FuelExhausted { .. })
        ));
    }

    #[test]
    fn suite_holds_on_examples() {
        for ars in [ce8(), ce4(), diamond()] {
            let r = theorem_suite(&ars);
            let failures: Vec<_> = r.failures().collect();
            assert!(failures.is_empty(), "{failures:?}");
        }
    }
}
