//! Notions of well-foundedness, checked exhaustively on small systems.
//!
//! This module reads a step `(x, y)` of the input as `R x y`, i.e. "`x` is
//! below `y`", so an element is accessible when all of its predecessors in
//! the step graph are. To ask whether a rewriting system terminates, pass
//! its [`FiniteArs::converse`].
//!
//! The weak (double-negated) variants of each notion are not computed
//! separately. A running program decides every predicate, so `not not P`
//! and `P` always coincide here; the distinctions only matter in proofs.
//! [`DiagramNode`] keeps the weak nodes so the implication diagram can still
//! be checked edge by edge.

use std::fmt;

use crate::error::{Error, Result};
use crate::properties::Analysis;
use crate::relation::{ElementId, FiniteArs, Lasso, StepMode};

pub const DEFAULT_LIMIT: usize = 12;

/// A subset of the universe of one system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Predicate {
    members: Vec<bool>,
}

impl Predicate {
    pub fn empty(size: usize) -> Self {
        Predicate {
            members: vec![false; size],
        }
    }

    pub fn full(size: usize) -> Self {
        Predicate {
            members: vec![true; size],
        }
    }

    /// Bit `i` of `mask` decides membership of element `i`.
    pub fn from_mask(size: usize, mask: u64) -> Self {
        Predicate {
            members: (0..size).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn from_elements<I: IntoIterator<Item = ElementId>>(size: usize, elements: I) -> Result<Self> {
        let mut p = Self::empty(size);
        for e in elements {
            if e.0 >= size {
                return Err(Error::IndexOutOfRange { index: e.0, size });
            }
            p.members[e.0] = true;
        }
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.members[e.0]
    }

    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| ElementId(i))
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    pub fn complement(&self) -> Predicate {
        Predicate {
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Predicate) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn render(&self, ars: &FiniteArs) -> String {
        let names: Vec<&str> = self.members().map(|e| ars.name(e)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Least fixpoint: add `x` once every `y` with `R y x` is in.
pub fn accessible_set(ars: &FiniteArs) -> Predicate {
    let mut acc = Predicate::empty(ars.size());
    loop {
        let mut changed = false;
        for x in ars.elements() {
            if !acc.contains(x) && ars.predecessors(x).iter().all(|&y| acc.contains(y)) {
                acc.members[x.0] = true;
                changed = true;
            }
        }
        if !changed {
            return acc;
        }
    }
}

pub fn is_inductive(ars: &FiniteArs, p: &Predicate) -> bool {
    ars.elements()
        .all(|x| p.contains(x) || !ars.predecessors(x).iter().all(|&y| p.contains(y)))
}

pub fn is_coreductive(ars: &FiniteArs, p: &Predicate) -> bool {
    ars.elements()
        .filter(|&x| !p.contains(x))
        .all(|x| ars.predecessors(x).iter().any(|&y| !p.contains(y)))
}

pub fn minimal_elements(ars: &FiniteArs, p: &Predicate) -> Predicate {
    let mut out = Predicate::empty(ars.size());
    for x in p.members() {
        if ars.predecessors(x).iter().all(|&y| !p.contains(y)) {
            out.members[x.0] = true;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WfNotion {
    Acc,
    Ind,
    Cor,
    Min,
    MinDne,
    SeqLasso,
}

impl WfNotion {
    pub const ALL: [WfNotion; 6] = [
        WfNotion::Acc,
        WfNotion::Ind,
        WfNotion::Cor,
        WfNotion::Min,
        WfNotion::MinDne,
        WfNotion::SeqLasso,
    ];

    pub fn label(self) -> &'static str {
        match self {
            WfNotion::Acc => "acc",
            WfNotion::Ind => "ind",
            WfNotion::Cor => "cor",
            WfNotion::Min => "min",
            WfNotion::MinDne => "minDNE",
            WfNotion::SeqLasso => "seq",
        }
    }

    fn quantifies_predicates(self) -> bool {
        matches!(self, WfNotion::Ind | WfNotion::Cor | WfNotion::Min | WfNotion::MinDne)
    }
}

impl fmt::Display for WfNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WfCounterexample {
    Predicate(Predicate),
    /// An `R`-decreasing sequence: every `s(k+1)` is a predecessor of `s(k)`.
    Decreasing(Lasso),
}

impl WfCounterexample {
    /// Re-check that this really refutes `notion` on `ars`.
    pub fn refutes(&self, ars: &FiniteArs, notion: WfNotion) -> bool {
        match (self, notion) {
            (WfCounterexample::Predicate(p), WfNotion::Acc) => *p == accessible_set(ars) && !p.is_full(),
            (WfCounterexample::Predicate(p), WfNotion::Ind) => is_inductive(ars, p) && !p.is_full(),
            (WfCounterexample::Predicate(p), WfNotion::Cor) => is_coreductive(ars, p) && !p.is_full(),
            (WfCounterexample::Predicate(p), WfNotion::Min | WfNotion::MinDne) => {
                !p.is_empty() && minimal_elements(ars, p).is_empty()
            }
            (WfCounterexample::Decreasing(l), WfNotion::SeqLasso) => {
                l.validate(&ars.converse(), StepMode::Strict).is_ok()
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfVerdict {
    pub holds: bool,
    pub counterexample: Option<WfCounterexample>,
}

fn verdict(counterexample: Option<WfCounterexample>) -> WfVerdict {
    WfVerdict {
        holds: counterexample.is_none(),
        counterexample,
    }
}

fn first_predicate(ars: &FiniteArs, bad: impl Fn(&Predicate) -> bool) -> Option<WfCounterexample> {
    let n = ars.size();
    (0..1u64 << n)
        .map(|mask| Predicate::from_mask(n, mask))
        .find(|p| bad(p))
        .map(WfCounterexample::Predicate)
}

pub fn wf_check(ars: &FiniteArs, notion: WfNotion, limit: usize) -> Result<WfVerdict> {
    if notion.quantifies_predicates() && ars.size() > limit.min(63) {
        return Err(Error::CapacityExceeded {
            what: "predicate enumeration",
            size: ars.size(),
            limit,
        });
    }
    let cex = match notion {
        WfNotion::Acc => {
            let acc = accessible_set(ars);
            (!acc.is_full()).then_some(WfCounterexample::Predicate(acc))
        }
        WfNotion::Ind => first_predicate(ars, |p| !p.is_full() && is_inductive(ars, p)),
        WfNotion::Cor => first_predicate(ars, |p| !p.is_full() && is_coreductive(ars, p)),
        // Every predicate is decidable at runtime, hence double-negation closed.
        WfNotion::Min | WfNotion::MinDne => {
            first_predicate(ars, |p| !p.is_empty() && minimal_elements(ars, p).is_empty())
        }
        WfNotion::SeqLasso => {
            let conv = ars.converse();
            let an = Analysis::new(&conv);
            let lasso = conv.elements().find_map(|x| an.infinite_reduction(x));
            lasso.map(WfCounterexample::Decreasing)
        }
    };
    Ok(verdict(cex))
}

/// Nodes of the implication diagram between the notions. The weak variants
/// collapse onto their strong counterparts at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramNode {
    Min,
    MinDne,
    Acc,
    Seq,
    Cor,
    MinWeak,
    MinDneWeak,
    AccWeak,
    SeqWeak,
    CorWeak,
}

impl DiagramNode {
    pub fn notion(self) -> WfNotion {
        match self {
            DiagramNode::Min | DiagramNode::MinWeak => WfNotion::Min,
            DiagramNode::MinDne | DiagramNode::MinDneWeak => WfNotion::MinDne,
            DiagramNode::Acc | DiagramNode::AccWeak => WfNotion::Acc,
            DiagramNode::Seq | DiagramNode::SeqWeak => WfNotion::SeqLasso,
            DiagramNode::Cor | DiagramNode::CorWeak => WfNotion::Cor,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DiagramNode::Min => "WFmin",
            DiagramNode::MinDne => "WFminDNE",
            DiagramNode::Acc => "WFacc",
            DiagramNode::Seq => "WFseq",
            DiagramNode::Cor => "WFcor",
            DiagramNode::MinWeak => "WFmin--",
            DiagramNode::MinDneWeak => "WFminDNE--",
            DiagramNode::AccWeak => "WFacc--",
            DiagramNode::SeqWeak => "WFseq--",
            DiagramNode::CorWeak => "WFcor--",
        }
    }
}

/// Side conditions that label some diagram edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bridge {
    Rdec,
    Fb,
    MpSeq,
    CorDne,
    AccDne,
    AccCor,
}

impl Bridge {
    pub const ALL: [Bridge; 6] = [
        Bridge::Rdec,
        Bridge::Fb,
        Bridge::MpSeq,
        Bridge::CorDne,
        Bridge::AccDne,
        Bridge::AccCor,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Bridge::Rdec => "Rdec",
            Bridge::Fb => "FB",
            Bridge::MpSeq => "MPseq",
            Bridge::CorDne => "corDNE",
            Bridge::AccDne => "accDNE",
            Bridge::AccCor => "accCor",
        }
    }
}

/// An edge `from => to`, valid when any of `unless_one_of` holds (or always,
/// when the list is empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramEdge {
    pub from: DiagramNode,
    pub to: DiagramNode,
    pub condition: &'static [Bridge],
}

pub const DIAGRAM: [DiagramEdge; 23] = {
    use Bridge::*;
    use DiagramNode::*;
    const fn e(from: DiagramNode, to: DiagramNode, condition: &'static [Bridge]) -> DiagramEdge {
        DiagramEdge { from, to, condition }
    }
    [
        e(Min, MinDne, &[]),
        e(Min, Seq, &[]),
        e(Min, Acc, &[]),
        e(Min, MinWeak, &[]),
        e(MinDne, MinDneWeak, &[]),
        e(MinDne, Acc, &[AccDne]),
        e(MinDne, Seq, &[MpSeq]),
        e(Acc, AccWeak, &[]),
        e(Acc, Seq, &[Rdec]),
        e(Seq, SeqWeak, &[]),
        e(Cor, CorWeak, &[]),
        e(Cor, Acc, &[AccCor]),
        e(MinWeak, MinDneWeak, &[]),
        e(MinDneWeak, MinWeak, &[]),
        e(MinDneWeak, SeqWeak, &[]),
        e(MinDneWeak, AccWeak, &[Fb, AccDne]),
        e(AccWeak, SeqWeak, &[]),
        e(AccWeak, MinDneWeak, &[]),
        e(AccWeak, Acc, &[AccDne]),
        e(SeqWeak, CorWeak, &[]),
        e(CorWeak, SeqWeak, &[MpSeq]),
        e(CorWeak, Cor, &[CorDne]),
        e(CorWeak, AccWeak, &[AccCor]),
    ]
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    pub rdec: bool,
    pub fb: bool,
    pub mp_seq: bool,
    pub cor_dne: bool,
    pub acc_dne: bool,
    pub acc_cor: bool,
    /// For each inaccessible element, an inaccessible predecessor.
    pub acc_cor_witness: Vec<(ElementId, ElementId)>,
}

impl BridgeReport {
    pub fn get(&self, b: Bridge) -> bool {
        match b {
            Bridge::Rdec => self.rdec,
            Bridge::Fb => self.fb,
            Bridge::MpSeq => self.mp_seq,
            Bridge::CorDne => self.cor_dne,
            Bridge::AccDne => self.acc_dne,
            Bridge::AccCor => self.acc_cor,
        }
    }
}

/// The side conditions on a finite, explicit system. Decidability and
/// finite branching hold by construction and the double-negation closures
/// hold because every predicate is decided; accessibility being coreductive
/// is checked, with a witness.
pub fn bridge_report(ars: &FiniteArs) -> BridgeReport {
    let acc = accessible_set(ars);
    let witness: Vec<(ElementId, ElementId)> = ars
        .elements()
        .filter(|&x| !acc.contains(x))
        .filter_map(|x| ars.predecessors(x).iter().find(|&&y| !acc.contains(y)).map(|&y| (x, y)))
        .collect();
    let inaccessible = ars.elements().filter(|&x| !acc.contains(x)).count();
    BridgeReport {
        rdec: true,
        fb: true,
        mp_seq: true,
        cor_dne: true,
        acc_dne: true,
        acc_cor: is_coreductive(ars, &acc) && witness.len() == inaccessible,
        acc_cor_witness: witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfReport {
    pub verdicts: Vec<(WfNotion, WfVerdict)>,
    /// All verdicts coincide.
    pub agreement: bool,
    /// The step graph has no cycle.
    pub acyclic: bool,
    pub bridges: BridgeReport,
    /// Diagram edges whose material implication failed.
    pub edge_violations: Vec<DiagramEdge>,
}

impl WfReport {
    pub fn verdict(&self, notion: WfNotion) -> &WfVerdict {
        &self
            .verdicts
            .iter()
            .find(|(n, _)| *n == notion)
            .expect("every notion is reported")
            .1
    }

    pub fn well_founded(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.holds)
    }
}

pub fn wf_equivalence_report(ars: &FiniteArs, limit: usize) -> Result<WfReport> {
    let mut verdicts = Vec::with_capacity(WfNotion::ALL.len());
    for notion in WfNotion::ALL {
        verdicts.push((notion, wf_check(ars, notion, limit)?));
    }
    let first = verdicts[0].1.holds;
    let agreement = verdicts.iter().all(|(_, v)| v.holds == first);
    let acyclic = crate::relation::scc_view(ars).cyclic_flags().iter().all(|&c| !c);
    let bridges = bridge_report(ars);
    let holds = |node: DiagramNode| {
        verdicts
            .iter()
            .find(|(n, _)| *n == node.notion())
            .expect("reported")
            .1
            .holds
    };
    let edge_violations = DIAGRAM
        .iter()
        .filter(|e| {
            let enabled = e.condition.is_empty() || e.condition.iter().any(|&b| bridges.get(b));
            enabled && holds(e.from) && !holds(e.to)
        })
        .copied()
        .collect();
    Ok(WfReport {
        verdicts,
        agreement,
        acyclic,
        bridges,
        edge_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn self_loop() -> FiniteArs {
        FiniteArs::build(&["a"], &[("a", "a")]).unwrap()
    }

    /// `i < j` read as `R i j`.
    fn strict_order() -> FiniteArs {
        FiniteArs::from_steps(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn accessible_sets() {
        let one = FiniteArs::from_steps(1, []).unwrap();
        assert!(accessible_set(&one).is_full());
        assert!(accessible_set(&self_loop()).is_empty());
        assert!(accessible_set(&strict_order()).is_full());
    }

    #[test]
    fn inductive_and_coreductive() {
        let ars = FiniteArs::build(&["a", "b"], &[("a", "b")]).unwrap();
        let a_only = Predicate::from_elements(2, [ElementId(0)]).unwrap();
        assert!(!is_inductive(&ars, &a_only));
        assert!(is_inductive(&ars, &Predicate::full(2)));
        assert!(is_inductive(&ars, &accessible_set(&ars)));
        assert!(is_coreductive(&ars, &Predicate::full(2)));
        assert!(is_coreductive(&self_loop(), &Predicate::empty(1)));
        let one = FiniteArs::from_steps(1, []).unwrap();
        assert!(!is_coreductive(&one, &Predicate::empty(1)));
    }

    #[test]
    fn minimal_elements_examples() {
        let p = Predicate::from_elements(3, [ElementId(1), ElementId(2)]).unwrap();
        let m = minimal_elements(&strict_order(), &p);
        assert_eq!(m.members().collect::<Vec<_>>(), vec![ElementId(1)]);
        let a = Predicate::full(1);
        assert!(minimal_elements(&self_loop(), &a).is_empty());
        assert!(minimal_elements(&strict_order(), &Predicate::empty(3)).is_empty());
    }

    #[test]
    fn checks_and_counterexamples() {
        let v = wf_check(&self_loop(), WfNotion::Min, DEFAULT_LIMIT).unwrap();
        assert_eq!(v.counterexample, Some(WfCounterexample::Predicate(Predicate::full(1))));
        for notion in WfNotion::ALL {
            assert!(wf_check(&strict_order(), notion, DEFAULT_LIMIT).unwrap().holds);
        }
        let ce8 = FiniteArs::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        for notion in WfNotion::ALL {
            let v = wf_check(&ce8, notion, DEFAULT_LIMIT).unwrap();
            assert!(!v.holds);
            assert!(v.counterexample.unwrap().refutes(&ce8, notion), "{notion}");
        }
        let big = FiniteArs::from_steps(13, []).unwrap();
        assert!(matches!(
            wf_check(&big, WfNotion::Ind, DEFAULT_LIMIT),
            Err(Error::CapacityExceeded { .. })
        ));
        assert!(wf_check(&big, WfNotion::Acc, DEFAULT_LIMIT).unwrap().holds);
    }

    #[test]
    fn bridges() {
        let empty = FiniteArs::from_steps(2, []).unwrap();
        assert!(bridge_report(&empty).acc_cor);
        let ce3 = FiniteArs::build(
            &["a", "b", "c", "d"],
            &[("b", "a"), ("b", "c"), ("c", "b"), ("c", "d"), ("d", "d"), ("a", "a")],
        )
        .unwrap();
        let r = bridge_report(&ce3);
        assert!(r.acc_cor);
        assert_eq!(r.acc_cor_witness.len(), 4);
        assert!(r.acc_cor_witness.contains(&(ElementId(0), ElementId(0))));
    }

    #[test]
    fn diagram_shape() {
        assert_eq!(DIAGRAM.len(), 23);
        let unlabeled = DIAGRAM.iter().filter(|e| e.condition.is_empty()).count();
        assert_eq!(unlabeled, 14);
    }
}
