//! Deciders for the termination and confluence taxonomy.
//!
//! Every element-level property is decided on a finite system by a
//! characterization over the reachability matrix or the SCC condensation:
//!
//! | property | decided as |
//! |---|---|
//! | NF | no outgoing step |
//! | WN / WM | some normal form / minimal form is reachable |
//! | SN | no cyclic component is reachable |
//! | MF | the element's component is a sink of the condensation |
//! | SM | least set containing MF and closed under "all successors inside" |
//! | SMseq | MF, or no cycle of non-MF elements is reachable through non-MF elements |
//! | WCR / CR | every one-step / many-step peak has a common reduct |
//! | CP | some reachable component is reachable from every reachable component |
//!
//! On finite systems `BP` always holds: any infinite reduction eventually
//! stays inside one cyclic component, and every element of that component
//! bounds it. [`global_profile`] does not return a bare constant; it
//! extracts the bound for one lasso per cyclic component and checks it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{
    closure, path_between, scc_view, ClosureMode, ElementId, FiniteArs, Lasso, PathWitness, RelMatrix, SccView,
    StepMode,
};

/// Element-level properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Nf,
    Wn,
    Sn,
    Mf,
    Wm,
    Sm,
    SmSeq,
    Wcr,
    Cr,
    SubCommutative,
    NpConv,
    NpRed,
    UnConv,
    UnRed,
    Mp,
    Cp,
}

impl Property {
    pub const ALL: [Property; 16] = [
        Property::Nf,
        Property::Wn,
        Property::Sn,
        Property::Mf,
        Property::Wm,
        Property::Sm,
        Property::SmSeq,
        Property::Wcr,
        Property::Cr,
        Property::SubCommutative,
        Property::NpConv,
        Property::NpRed,
        Property::UnConv,
        Property::UnRed,
        Property::Mp,
        Property::Cp,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::Nf => "NF",
            Property::Wn => "WN",
            Property::Sn => "SN",
            Property::Mf => "MF",
            Property::Wm => "WM",
            Property::Sm => "SM",
            Property::SmSeq => "SMseq",
            Property::Wcr => "WCR",
            Property::Cr => "CR",
            Property::SubCommutative => "SubCommutative",
            Property::NpConv => "NPconv",
            Property::NpRed => "NPred",
            Property::UnConv => "UNconv",
            Property::UnRed => "UNred",
            Property::Mp => "MP",
            Property::Cp => "CP",
        }
    }

    pub fn from_label(label: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.label() == label)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Properties of the whole relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GlobalProperty {
    /// The element property holds at every element.
    All(Property),
    Bp,
    Rp,
    RpMinus,
    Inc,
    Fb,
    Dec,
}

impl GlobalProperty {
    pub const EXTRA: [GlobalProperty; 6] = [
        GlobalProperty::Bp,
        GlobalProperty::Rp,
        GlobalProperty::RpMinus,
        GlobalProperty::Inc,
        GlobalProperty::Fb,
        GlobalProperty::Dec,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GlobalProperty::All(p) => p.label(),
            GlobalProperty::Bp => "BP",
            GlobalProperty::Rp => "RP",
            GlobalProperty::RpMinus => "RPminus",
            GlobalProperty::Inc => "Inc",
            GlobalProperty::Fb => "FB",
            GlobalProperty::Dec => "Dec",
        }
    }

    pub fn from_label(label: &str) -> Option<GlobalProperty> {
        Property::from_label(label)
            .map(GlobalProperty::All)
            .or_else(|| GlobalProperty::EXTRA.into_iter().find(|g| g.label() == label))
    }
}

impl fmt::Display for GlobalProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Two reductions out of a common apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peak {
    pub apex: ElementId,
    pub left: PathWitness,
    pub right: PathWitness,
}

impl Peak {
    pub fn new(left: PathWitness, right: PathWitness) -> Self {
        Peak {
            apex: left.source(),
            left,
            right,
        }
    }

    /// The peak `apex ->* left, apex ->* right` along shortest paths, if both
    /// endpoints are reducts of `apex`.
    pub fn between(ars: &FiniteArs, apex: ElementId, left: ElementId, right: ElementId) -> Option<Peak> {
        Some(Peak {
            apex,
            left: path_between(ars, apex, left)?,
            right: path_between(ars, apex, right)?,
        })
    }

    pub fn validate(&self, ars: &FiniteArs) -> Result<()> {
        if self.left.source() != self.apex || self.right.source() != self.apex {
            return Err(Error::MalformedPath("peak sides must start at the apex".into()));
        }
        self.left.validate(ars)?;
        self.right.validate(ars)
    }
}

/// A valley closing a peak: `left ->* target <-* right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Join {
    pub target: ElementId,
    pub from_left: PathWitness,
    pub from_right: PathWitness,
}

impl Join {
    pub fn validate(&self, ars: &FiniteArs) -> Result<()> {
        if self.from_left.target() != self.target || self.from_right.target() != self.target {
            return Err(Error::MalformedPath("join sides must end at the target".into()));
        }
        self.from_left.validate(ars)?;
        self.from_right.validate(ars)
    }

    /// Valid, and starts at the two ends of `peak`.
    pub fn validate_for(&self, ars: &FiniteArs, peak: &Peak) -> Result<()> {
        self.validate(ars)?;
        if self.from_left.source() != peak.left.target() || self.from_right.source() != peak.right.target() {
            return Err(Error::MalformedPath("join does not start at the peak's ends".into()));
        }
        Ok(())
    }
}

/// Where a reduct `y` of the base element meets the cofinal sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub index: usize,
    pub path: PathWitness,
}

/// A reflexive-step sequence from `base` that every reduct of `base` reduces into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalityWitness {
    pub base: ElementId,
    pub sequence: Lasso,
    pub coverage: BTreeMap<ElementId, Coverage>,
}

impl CofinalityWitness {
    pub fn validate(&self, ars: &FiniteArs) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedLasso(m));
        self.sequence.validate(ars, StepMode::Reflexive)?;
        if self.sequence.first() != self.base {
            return bad("sequence does not start at the base element".into());
        }
        for y in reach_bfs(ars, self.base) {
            let Some(cov) = self.coverage.get(&y) else {
                return bad(format!("reduct {} is not covered", ars.name(y)));
            };
            cov.path.validate(ars)?;
            if cov.path.source() != y || cov.path.target() != self.sequence.at(cov.index) {
                return bad(format!("coverage of {} does not reach s({})", ars.name(y), cov.index));
            }
        }
        Ok(())
    }
}

/// Reducts of `from` in breadth-first order; used only by validators.
fn reach_bfs(ars: &FiniteArs, from: ElementId) -> Vec<ElementId> {
    let mut seen = vec![false; ars.size()];
    let mut order = vec![from];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in ars.successors(x) {
            if !seen[y.0] {
                seen[y.0] = true;
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementProfile {
    pub element: ElementId,
    flags: [bool; 16],
    /// Shortest reduction to a normal form, when WN holds.
    pub wn_witness: Option<PathWitness>,
    pub cp_witness: Option<CofinalityWitness>,
}

impl ElementProfile {
    pub fn get(&self, p: Property) -> bool {
        self.flags[p.slot()]
    }

    pub fn holding(&self) -> impl Iterator<Item = Property> + '_ {
        Property::ALL.into_iter().filter(|&p| self.get(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalProfile {
    all: [bool; 16],
    pub bp: bool,
    pub rp: bool,
    pub rp_minus: bool,
    pub inc: bool,
    pub fb: bool,
    pub dec: bool,
    /// A size function, strictly increasing along every step, when Inc holds.
    pub inc_witness: Option<Vec<usize>>,
}

impl GlobalProfile {
    pub fn all(&self, p: Property) -> bool {
        self.all[p.slot()]
    }

    pub fn get(&self, g: GlobalProperty) -> bool {
        match g {
            GlobalProperty::All(p) => self.all(p),
            GlobalProperty::Bp => self.bp,
            GlobalProperty::Rp => self.rp,
            GlobalProperty::RpMinus => self.rp_minus,
            GlobalProperty::Inc => self.inc,
            GlobalProperty::Fb => self.fb,
            GlobalProperty::Dec => self.dec,
        }
    }
}

/// Row-major bitset matrix; rows are intersected when testing joinability.
#[derive(Debug, Clone)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn from_matrix(m: &RelMatrix) -> Self {
        let n = m.size();
        let words = n.div_ceil(64).max(1);
        let mut data = vec![0u64; n * words];
        for (a, b) in m.pairs() {
            data[a.0 * words + b.0 / 64] |= 1 << (b.0 % 64);
        }
        BitRows { words, data }
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.data[a * self.words..(a + 1) * self.words]
    }

    fn intersects(&self, a: usize, b: usize) -> bool {
        self.row(a).iter().zip(self.row(b)).any(|(x, y)| x & y != 0)
    }
}

/// Everything the deciders share for one system, computed once.
#[derive(Debug, Clone)]
pub struct Analysis<'a> {
    ars: &'a FiniteArs,
    reach: RelMatrix,
    conv: RelMatrix,
    reach_bits: BitRows,
    refl_bits: BitRows,
    scc: SccView,
    nf: Vec<bool>,
    mf: Vec<bool>,
    sm: Vec<bool>,
    sm_seq: Vec<bool>,
    reaches_cycle: Vec<bool>,
    comp_reach: Vec<Vec<bool>>,
}

impl<'a> Analysis<'a> {
    pub fn new(ars: &'a FiniteArs) -> Self {
        let n = ars.size();
        let reach = closure(ars, ClosureMode::ReflTransitive);
        let conv = closure(ars, ClosureMode::Conversion);
        let reach_bits = BitRows::from_matrix(&reach);
        let refl_bits = BitRows::from_matrix(&closure(ars, ClosureMode::Reflexive));
        let scc = scc_view(ars);
        let nf: Vec<bool> = ars.elements().map(|e| ars.is_normal_form(e)).collect();
        let mf: Vec<bool> = ars.elements().map(|e| scc.is_sink(scc.component_of(e))).collect();

        // least fixpoint: start from MF, add x once every successor is in
        let mut sm = mf.clone();
        loop {
            let mut changed = false;
            for x in ars.elements() {
                if !sm[x.0] && ars.successors(x).iter().all(|y| sm[y.0]) {
                    sm[x.0] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        // SMseq: cycles inside the subgraph induced on non-MF elements
        let induced = FiniteArs::from_steps(
            n,
            ars.steps()
                .filter(|(a, b)| !mf[a.0] && !mf[b.0])
                .map(|(a, b)| (a.0, b.0)),
        )
        .expect("same universe");
        let induced_scc = scc_view(&induced);
        let induced_reach = closure(&induced, ClosureMode::ReflTransitive);
        let sm_seq = ars
            .elements()
            .map(|a| {
                mf[a.0]
                    || !induced_reach
                        .row(a)
                        .any(|b| induced_scc.is_cyclic(induced_scc.component_of(b)))
            })
            .collect();

        let k = scc.components().len();
        let comp_reach: Vec<Vec<bool>> = (0..k).map(|c| scc.reachable_components(c)).collect();
        let comp_reaches_cycle: Vec<bool> = (0..k)
            .map(|c| (0..k).any(|d| comp_reach[c][d] && scc.is_cyclic(d)))
            .collect();
        let reaches_cycle = ars
            .elements()
            .map(|e| comp_reaches_cycle[scc.component_of(e)])
            .collect();

        Analysis {
            ars,
            reach,
            conv,
            reach_bits,
            refl_bits,
            scc,
            nf,
            mf,
            sm,
            sm_seq,
            reaches_cycle,
            comp_reach,
        }
    }

    pub fn ars(&self) -> &'a FiniteArs {
        self.ars
    }

    pub fn reach(&self) -> &RelMatrix {
        &self.reach
    }

    pub fn conversion(&self) -> &RelMatrix {
        &self.conv
    }

    pub fn scc(&self) -> &SccView {
        &self.scc
    }

    pub fn reaches(&self, a: ElementId, b: ElementId) -> bool {
        self.reach.get(a, b)
    }

    pub fn reducts(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.reach.row(a)
    }

    pub fn joinable(&self, b: ElementId, c: ElementId) -> bool {
        self.reach_bits.intersects(b.0, c.0)
    }

    pub fn is_nf(&self, a: ElementId) -> bool {
        self.nf[a.0]
    }

    pub fn is_mf(&self, a: ElementId) -> bool {
        self.mf[a.0]
    }

    pub fn is_sn(&self, a: ElementId) -> bool {
        !self.reaches_cycle[a.0]
    }

    pub fn is_sm(&self, a: ElementId) -> bool {
        self.sm[a.0]
    }

    pub fn is_wn(&self, a: ElementId) -> bool {
        self.reducts(a).any(|b| self.nf[b.0])
    }

    pub fn is_wcr(&self, a: ElementId) -> bool {
        self.first_unjoinable_step_peak(a).is_none()
    }

    /// First one-step peak `left <- a -> right` without a common reduct.
    pub fn first_unjoinable_step_peak(&self, a: ElementId) -> Option<(ElementId, ElementId)> {
        let succ = self.ars.successors(a);
        for (i, &b) in succ.iter().enumerate() {
            for &c in &succ[i + 1..] {
                if !self.joinable(b, c) {
                    return Some((b, c));
                }
            }
        }
        None
    }

    /// First pair of reducts of `a` without a common reduct.
    pub fn first_unjoinable_pair(&self, a: ElementId) -> Option<(ElementId, ElementId)> {
        let reducts: Vec<ElementId> = self.reducts(a).collect();
        for (i, &b) in reducts.iter().enumerate() {
            for &c in &reducts[i + 1..] {
                if !self.joinable(b, c) {
                    return Some((b, c));
                }
            }
        }
        None
    }

    pub fn normal_forms_of(&self, a: ElementId) -> Vec<ElementId> {
        self.reducts(a).filter(|b| self.nf[b.0]).collect()
    }

    /// The normal form closest to `a`, with the reduction reaching it.
    pub fn nearest_normal_form(&self, a: ElementId) -> Option<PathWitness> {
        let ars = self.ars;
        let mut parent: Vec<Option<ElementId>> = vec![None; ars.size()];
        let mut seen = vec![false; ars.size()];
        seen[a.0] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if self.nf[x.0] {
                let mut nodes = vec![x];
                let mut cur = x;
                while let Some(p) = parent[cur.0] {
                    nodes.push(p);
                    cur = p;
                }
                nodes.reverse();
                return Some(PathWitness::new(nodes));
            }
            for &y in ars.successors(x) {
                if !seen[y.0] {
                    seen[y.0] = true;
                    parent[y.0] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// An infinite reduction from `a`: a path to the smallest element of a
    /// reachable cyclic component, then a shortest cycle through it.
    pub fn infinite_reduction(&self, a: ElementId) -> Option<Lasso> {
        let scc = &self.scc;
        let start = scc.component_of(a);
        let target = (0..scc.components().len())
            .filter(|&d| self.comp_reach[start][d] && scc.is_cyclic(d))
            .map(|d| scc.members(d)[0])
            .min()?;
        let stem = path_between(self.ars, a, target).expect("component is reachable");
        let mut stem_nodes = stem.nodes().to_vec();
        stem_nodes.pop();
        Some(Lasso::new(stem_nodes, self.cycle_through(target)))
    }

    /// Shortest closed walk through `x`, as the cycle part of a lasso.
    fn cycle_through(&self, x: ElementId) -> Vec<ElementId> {
        if self.ars.has_step(x, x) {
            return vec![x];
        }
        let mut best: Option<PathWitness> = None;
        for &y in self.ars.successors(x) {
            if let Some(back) = path_between(self.ars, y, x) {
                if best.as_ref().is_none_or(|b| back.step_count() < b.step_count()) {
                    best = Some(back);
                }
            }
        }
        let back = best.expect("x lies on a cycle");
        let mut cycle = vec![x];
        cycle.extend_from_slice(&back.nodes()[..back.step_count()]);
        cycle
    }

    fn cp_target(&self, a: ElementId) -> Option<ElementId> {
        let scc = &self.scc;
        let start = scc.component_of(a);
        let k = scc.components().len();
        let reachable: Vec<usize> = (0..k).filter(|&c| self.comp_reach[start][c]).collect();
        reachable
            .iter()
            .copied()
            .find(|&target| reachable.iter().all(|&c| self.comp_reach[c][target]))
            .map(|c| scc.members(c)[0])
    }

    /// Cofinal sequence: shortest path to a universally reachable element,
    /// then stutter there.
    pub fn cofinality_witness(&self, a: ElementId) -> Option<CofinalityWitness> {
        let target = self.cp_target(a)?;
        let path = path_between(self.ars, a, target).expect("target is a reduct");
        let sequence = Lasso::new(path.nodes().to_vec(), vec![target]);
        let positions = path.nodes();
        let coverage = self
            .reducts(a)
            .map(|y| {
                let index = positions
                    .iter()
                    .position(|&s| self.reaches(y, s))
                    .expect("every reduct reaches the target");
                let cov = Coverage {
                    index,
                    path: path_between(self.ars, y, positions[index]).expect("reachable"),
                };
                (y, cov)
            })
            .collect();
        Some(CofinalityWitness {
            base: a,
            sequence,
            coverage,
        })
    }

    pub fn profile(&self, a: ElementId) -> ElementProfile {
        let reducts: Vec<ElementId> = self.reducts(a).collect();
        let nf = self.nf[a.0];
        let wn = reducts.iter().any(|b| self.nf[b.0]);
        let sn = self.is_sn(a);
        let mf = self.mf[a.0];
        let wm = reducts.iter().any(|b| self.mf[b.0]);
        let wcr = self.is_wcr(a);
        let cr = self.first_unjoinable_pair(a).is_none();
        let succ = self.ars.successors(a);
        let sub_commutative = succ
            .iter()
            .all(|&b| succ.iter().all(|&c| self.refl_bits.intersects(b.0, c.0)));
        let nfs: Vec<ElementId> = reducts.iter().copied().filter(|b| self.nf[b.0]).collect();
        let np_red = nfs.iter().all(|&b| reducts.iter().all(|&c| self.reaches(c, b)));
        let conv_nfs: Vec<ElementId> = self.conv.row(a).filter(|b| self.nf[b.0]).collect();
        let np_conv = conv_nfs.iter().all(|&b| self.reaches(a, b));
        let un_red = nfs.len() <= 1;
        let un_conv = !nf || conv_nfs.iter().all(|&b| b == a);
        let mp = reducts
            .iter()
            .filter(|b| self.mf[b.0])
            .all(|&b| reducts.iter().all(|&c| self.reaches(c, b)));
        let cp_witness = self.cofinality_witness(a);

        let mut flags = [false; 16];
        for (p, v) in [
            (Property::Nf, nf),
            (Property::Wn, wn),
            (Property::Sn, sn),
            (Property::Mf, mf),
            (Property::Wm, wm),
            (Property::Sm, self.sm[a.0]),
            (Property::SmSeq, self.sm_seq[a.0]),
            (Property::Wcr, wcr),
            (Property::Cr, cr),
            (Property::SubCommutative, sub_commutative),
            (Property::NpConv, np_conv),
            (Property::NpRed, np_red),
            (Property::UnConv, un_conv),
            (Property::UnRed, un_red),
            (Property::Mp, mp),
            (Property::Cp, cp_witness.is_some()),
        ] {
            flags[p.slot()] = v;
        }
        ElementProfile {
            element: a,
            flags,
            wn_witness: if wn { self.nearest_normal_form(a) } else { None },
            cp_witness,
        }
    }

    pub fn profiles(&self) -> Vec<ElementProfile> {
        self.ars.elements().map(|a| self.profile(a)).collect()
    }

    /// Bound of a lasso: the smallest element of the component its cycle lives in.
    pub fn extract_bound(&self, lasso: &Lasso) -> ElementId {
        self.scc.members(self.scc.component_of(lasso.cycle()[0]))[0]
    }

    /// First position of the lasso holding a minimal form.
    pub fn recurrence_index(&self, lasso: &Lasso) -> Option<usize> {
        (0..lasso.period_end()).find(|&k| self.mf[lasso.at(k).0])
    }

    fn bp_checked(&self) -> bool {
        let scc = &self.scc;
        (0..scc.components().len()).filter(|&c| scc.is_cyclic(c)).all(|c| {
            let x = scc.members(c)[0];
            let lasso = Lasso::new(vec![], self.cycle_through(x));
            let bound = self.extract_bound(&lasso);
            let bounded = lasso.elements().all(|e| self.reaches(e, bound));
            bounded
        })
    }

    fn rp_minus(&self) -> bool {
        let scc = &self.scc;
        (0..scc.components().len()).filter(|&c| scc.is_cyclic(c)).all(|c| {
            let rep = scc.members(c)[0];
            self.reducts(rep).all(|b| self.reaches(b, rep))
        })
    }

    fn size_function(&self) -> Option<Vec<usize>> {
        let ars = self.ars;
        let mut indeg: Vec<usize> = ars.elements().map(|e| ars.predecessors(e).len()).collect();
        let mut ready: BTreeSet<ElementId> = ars.elements().filter(|e| indeg[e.0] == 0).collect();
        let mut numbering = vec![usize::MAX; ars.size()];
        let mut next = 0;
        while let Some(x) = ready.pop_first() {
            numbering[x.0] = next;
            next += 1;
            for &y in ars.successors(x) {
                indeg[y.0] -= 1;
                if indeg[y.0] == 0 {
                    ready.insert(y);
                }
            }
        }
        (next == ars.size()).then_some(numbering)
    }

    pub fn global(&self) -> GlobalProfile {
        let profiles = self.profiles();
        self.global_from(&profiles)
    }

    pub fn global_from(&self, profiles: &[ElementProfile]) -> GlobalProfile {
        let mut all = [true; 16];
        for p in Property::ALL {
            all[p.slot()] = profiles.iter().all(|pr| pr.get(p));
        }
        let scc = &self.scc;
        let rp = (0..scc.components().len()).all(|c| !scc.is_cyclic(c) || scc.is_sink(c));
        let inc_witness = self.size_function();
        GlobalProfile {
            all,
            bp: self.bp_checked(),
            rp,
            rp_minus: self.rp_minus(),
            inc: inc_witness.is_some(),
            fb: true,
            dec: true,
            inc_witness,
        }
    }
}

pub fn element_profile(ars: &FiniteArs, a: ElementId) -> Result<ElementProfile> {
    ars.element(a.0)?;
    Ok(Analysis::new(ars).profile(a))
}

pub fn global_profile(ars: &FiniteArs) -> GlobalProfile {
    Analysis::new(ars).global()
}

/// Does every element of the lasso reduce to `b`?
pub fn check_bound(ars: &FiniteArs, lasso: &Lasso, b: ElementId) -> Result<bool> {
    lasso.validate(ars, StepMode::Strict)?;
    ars.element(b.0)?;
    let reach = closure(ars, ClosureMode::ReflTransitive);
    Ok(lasso.elements().all(|e| reach.get(e, b)))
}

/// Common reduct of `b` and `c` with the smallest index, if any.
pub fn join_pair(ars: &FiniteArs, b: ElementId, c: ElementId) -> Option<Join> {
    let reach = closure(ars, ClosureMode::ReflTransitive);
    join_with(ars, &reach, b, c)
}

pub(crate) fn join_with(ars: &FiniteArs, reach: &RelMatrix, b: ElementId, c: ElementId) -> Option<Join> {
    let target = ars.elements().find(|&d| reach.get(b, d) && reach.get(c, d))?;
    Some(Join {
        target,
        from_left: path_between(ars, b, target)?,
        from_right: path_between(ars, c, target)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(names: &[&str], steps: &[(&str, &str)]) -> FiniteArs {
        FiniteArs::build(names, steps).unwrap()
    }

    fn ce4() -> FiniteArs {
        named(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("a", "e"), ("b", "e"), ("b", "c"), ("c", "d"), ("d", "c")],
        )
    }

    fn at(ars: &FiniteArs, name: &str) -> ElementProfile {
        element_profile(ars, ars.lookup(name).unwrap()).unwrap()
    }

    #[test]
    fn ce4_element_a() {
        let p = at(&ce4(), "a");
        use Property::*;
        for (prop, want) in [
            (Sm, true),
            (Wn, true),
            (Sn, false),
            (Wcr, true),
            (Cr, false),
            (UnRed, true),
            (NpRed, false),
            (Mp, false),
            (Cp, false),
            (Mf, false),
            (SmSeq, true),
        ] {
            assert_eq!(p.get(prop), want, "{prop}");
        }
    }

    #[test]
    fn ce5_normal_form_n() {
        let ars = named(
            &["a", "b", "c", "d", "m", "n"],
            &[("c", "n"), ("c", "a"), ("a", "b"), ("b", "a"), ("d", "b"), ("d", "m")],
        );
        let p = at(&ars, "n");
        assert!(p.get(Property::Nf));
        assert!(p.get(Property::UnRed));
        assert!(!p.get(Property::UnConv));
    }

    #[test]
    fn ce8_element_a() {
        let ars = named(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let p = at(&ars, "a");
        use Property::*;
        for (prop, want) in [
            (Nf, false),
            (Wn, false),
            (Sn, false),
            (Mf, true),
            (Sm, true),
            (Wm, true),
            (Cr, true),
            (Cp, true),
        ] {
            assert_eq!(p.get(prop), want, "{prop}");
        }
        p.cp_witness.unwrap().validate(&ars).unwrap();
    }

    #[test]
    fn chain_is_increasing() {
        let ars = FiniteArs::from_steps(3, [(0, 1), (1, 2)]).unwrap();
        let g = global_profile(&ars);
        assert!(g.inc && g.rp && g.all(Property::Sn));
        assert_eq!(g.inc_witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn ce2_and_ce3_globals() {
        let ce2 = named(
            &["a", "b", "c", "d"],
            &[("b", "a"), ("b", "c"), ("c", "b"), ("c", "d"), ("d", "d")],
        );
        let g = global_profile(&ce2);
        assert!(g.all(Property::UnRed) && g.all(Property::Wm) && !g.all(Property::Cr));
        let ce3 = named(
            &["a", "b", "c", "d"],
            &[("b", "a"), ("b", "c"), ("c", "b"), ("c", "d"), ("d", "d"), ("a", "a")],
        );
        let g = global_profile(&ce3);
        assert!(g.all(Property::NpRed) && g.all(Property::Wm) && !g.all(Property::Cr));
        assert!(!g.rp && !g.rp_minus);
    }

    #[test]
    fn bounds() {
        let ars = named(&["a", "b", "n"], &[("a", "b"), ("b", "a"), ("a", "n")]);
        let lasso = Lasso::new(vec![], vec![ElementId(0), ElementId(1)]);
        assert!(check_bound(&ars, &lasso, ElementId(2)).unwrap());
        let ce8 = named(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(check_bound(&ce8, &lasso, ElementId(0)).unwrap());
        let chain = FiniteArs::from_steps(3, [(0, 1), (1, 2)]).unwrap();
        let empty = Lasso::try_new(vec![ElementId(0)], vec![]);
        assert!(matches!(empty, Err(Error::MalformedLasso(_))));
        let not_steps = Lasso::new(vec![], vec![ElementId(0), ElementId(1)]);
        assert!(matches!(
            check_bound(&chain, &not_steps, ElementId(2)),
            Err(Error::MalformedLasso(_))
        ));
    }

    #[test]
    fn joins() {
        let diamond = FiniteArs::from_steps(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let j = join_pair(&diamond, ElementId(1), ElementId(2)).unwrap();
        assert_eq!(j.target, ElementId(3));
        j.validate(&diamond).unwrap();
        let ars = ce4();
        let (e, c) = (ars.lookup("e").unwrap(), ars.lookup("c").unwrap());
        assert!(join_pair(&ars, e, c).is_none());
        let same = join_pair(&ars, c, c).unwrap();
        assert_eq!(same.target, c);
        assert_eq!(same.from_left.step_count(), 0);
        assert_eq!(same.from_right.step_count(), 0);
    }

    #[test]
    fn out_of_range() {
        let ars = FiniteArs::from_steps(1, []).unwrap();
        assert!(matches!(
            element_profile(&ars, ElementId(3)),
            Err(Error::IndexOutOfRange { index: 3, size: 1 })
        ));
    }

    #[test]
    fn infinite_reduction_names_a_cycle() {
        let ars = ce4();
        let an = Analysis::new(&ars);
        let lasso = an.infinite_reduction(ElementId(0)).unwrap();
        lasso.validate(&ars, StepMode::Strict).unwrap();
        assert_eq!(ars.render_cycle(&lasso), "a -> b -> c -> d -> c");
        assert!(an.infinite_reduction(ars.lookup("e").unwrap()).is_none());
    }
}
