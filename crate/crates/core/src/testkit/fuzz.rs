use std::collections::BTreeMap;
use std::thread;

use super::claims::{claim_set, Claim, ClaimKind, Facts, WitnessCheck};
use super::generate::{instances, sample_lasso, GenConfig, Instance};
use super::oracle::Oracle;
use super::rng::Rng;
use crate::error::Result;
use crate::properties::{check_bound, Analysis, GlobalProperty, Property};
use crate::relation::{ElementId, FiniteArs};
use crate::theorems::{theorem_suite, theorem_suite_in};

/// Order used to pick one counterexample among many: fewer elements, then
/// fewer steps, then the step list.
fn witness_key(ars: &FiniteArs) -> (usize, usize, Vec<(usize, usize)>) {
    (
        ars.size(),
        ars.step_count(),
        ars.steps().map(|(a, b)| (a.0, b.0)).collect(),
    )
}

/// Greedy passes: drop elements from the last one down, then drop steps in
/// order, keeping each deletion that preserves `bad`; repeat until a pass
/// changes nothing, so no single deletion keeps the failure.
pub fn shrink(ars: &FiniteArs, bad: impl Fn(&FiniteArs) -> bool) -> FiniteArs {
    let mut cur = ars.clone();
    loop {
        let before = (cur.size(), cur.step_count());
        for i in (0..cur.size()).rev() {
            if cur.size() == 1 {
                break;
            }
            if let Ok(smaller) = cur.without_element(i) {
                if bad(&smaller) {
                    cur = smaller;
                }
            }
        }
        let steps: Vec<(ElementId, ElementId)> = cur.steps().collect();
        for (a, b) in steps {
            let smaller = cur.without_step(a, b);
            if bad(&smaller) {
                cur = smaller;
            }
        }
        if (cur.size(), cur.step_count()) == before {
            return cur;
        }
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub count: usize,
    /// Index of the first instance that failed.
    pub first_instance: usize,
    pub shrunk: FiniteArs,
    /// Whether the shrunk system still fails the check.
    pub revalidated: bool,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub instances: usize,
    /// Claim and theorem evaluations.
    pub evaluations: usize,
    pub witnesses_checked: usize,
    /// Keyed by claim or theorem label.
    pub violations: BTreeMap<String, Violation>,
    /// Peaks handed to each constructive join procedure.
    pub peaks_tried: BTreeMap<&'static str, usize>,
    pub non_implications: Vec<(String, WitnessCheck)>,
}

impl FuzzReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.non_implications.iter().all(|(_, c)| *c == WitnessCheck::Confirmed)
    }

    fn merge(&mut self, other: FuzzReport) {
        self.instances += other.instances;
        self.evaluations += other.evaluations;
        self.witnesses_checked += other.witnesses_checked;
        for (k, n) in other.peaks_tried {
            *self.peaks_tried.entry(k).or_default() += n;
        }
        for (label, v) in other.violations {
            match self.violations.get_mut(&label) {
                None => {
                    self.violations.insert(label, v);
                }
                Some(mine) => {
                    mine.count += v.count;
                    mine.first_instance = mine.first_instance.min(v.first_instance);
                    if witness_key(&v.shrunk) < witness_key(&mine.shrunk) {
                        mine.shrunk = v.shrunk;
                        mine.revalidated = v.revalidated;
                    }
                }
            }
        }
    }
}

/// What one instance can fail.
#[derive(Debug, Clone)]
enum Check<'c> {
    Claim(&'c Claim),
    Theorem(&'static str),
    Witness(&'static str),
}

impl Check<'_> {
    fn label(&self) -> String {
        match self {
            Check::Claim(c) => c.label(),
            Check::Theorem(t) => format!("theorem: {t}"),
            Check::Witness(w) => format!("witness: {w}"),
        }
    }

    fn fails(&self, ars: &FiniteArs) -> bool {
        match self {
            Check::Claim(c) => c.violated_by(ars),
            Check::Theorem(t) => theorem_suite(ars).verdicts.iter().any(|v| v.label == *t && !v.holds),
            Check::Witness(w) => witness_failures(&Facts::new(ars)).0.contains(w),
        }
    }
}

/// (names of witness kinds that failed, witnesses checked)
fn witness_failures(facts: &Facts) -> (Vec<&'static str>, usize) {
    let ars = facts.ars;
    let mut failed = Vec::new();
    let mut checked = 0;
    for p in &facts.profiles {
        if let Some(w) = &p.wn_witness {
            checked += 1;
            let ok = w.validate(ars).is_ok() && w.source() == p.element && ars.is_normal_form(w.target());
            if !ok && !failed.contains(&"WN") {
                failed.push("WN");
            }
        }
        if let Some(w) = &p.cp_witness {
            checked += 1;
            if w.validate(ars).is_err() && !failed.contains(&"CP") {
                failed.push("CP");
            }
        }
    }
    if let Some(numbers) = &facts.global.inc_witness {
        checked += 1;
        if !ars.steps().all(|(a, b)| numbers[a.0] < numbers[b.0]) {
            failed.push("Inc");
        }
    }
    (failed, checked)
}

fn run_chunk(chunk: &[Instance], claims: &[Claim], with_theorems: bool) -> FuzzReport {
    let mut report = FuzzReport::default();
    for inst in chunk {
        report.instances += 1;
        let ars = &inst.ars;
        let an = Analysis::new(ars);
        let facts = Facts::from_analysis(&an);
        let mut failed: Vec<Check> = Vec::new();
        for c in claims.iter().filter(|c| c.kind != ClaimKind::NonImplication) {
            report.evaluations += 1;
            if c.violation(&facts).is_some() {
                failed.push(Check::Claim(c));
            }
        }
        if with_theorems {
            let suite = theorem_suite_in(&an, &facts.profiles, &facts.global);
            report.evaluations += suite.verdicts.len();
            for (k, n) in &suite.peaks_tried {
                *report.peaks_tried.entry(k).or_default() += n;
            }
            failed.extend(suite.failures().map(|v| Check::Theorem(v.label)));
            let (bad, checked) = witness_failures(&facts);
            report.witnesses_checked += checked;
            failed.extend(bad.into_iter().map(Check::Witness));
        }
        for check in failed {
            let shrunk = shrink(ars, |a| check.fails(a));
            let revalidated = check.fails(&shrunk);
            report.merge(FuzzReport {
                violations: BTreeMap::from([(
                    check.label(),
                    Violation {
                        count: 1,
                        first_instance: inst.index,
                        shrunk,
                        revalidated,
                    },
                )]),
                ..FuzzReport::default()
            });
        }
    }
    report
}

fn in_parallel<T: Send>(items: &[Instance], work: impl Fn(&[Instance]) -> T + Sync) -> Vec<T> {
    let threads = thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let size = items.len().div_ceil(threads).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(size).map(|c| s.spawn(|| work(c))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Check `claims` on every generated instance; with `with_theorems`, also
/// run the theorem suite and re-validate every stored witness.
pub fn fuzz_claims(cfg: &GenConfig, claims: &[Claim], with_theorems: bool) -> Result<FuzzReport> {
    let all: Vec<Instance> = instances(cfg)?.collect();
    let mut report = FuzzReport::default();
    for part in in_parallel(&all, |c| run_chunk(c, claims, with_theorems)) {
        report.merge(part);
    }
    report.non_implications = claims
        .iter()
        .filter(|c| c.kind == ClaimKind::NonImplication)
        .map(|c| (c.label(), c.confirm_witness()))
        .collect();
    Ok(report)
}

/// The full claim set plus the theorem suite.
pub fn fuzz_implications(cfg: &GenConfig) -> Result<FuzzReport> {
    fuzz_claims(cfg, &claim_set(), true)
}

#[derive(Debug, Clone, Default)]
pub struct AgreementReport {
    pub instances: usize,
    pub comparisons: usize,
    pub lassos: usize,
    /// One line per disagreement: instance, site, property, decider, oracle.
    pub disagreements: Vec<String>,
}

fn agree_on(inst: &Instance) -> AgreementReport {
    let ars = &inst.ars;
    let mut r = AgreementReport {
        instances: 1,
        ..Default::default()
    };
    let oracle = Oracle::new(ars).expect("instances fit the oracle");
    let an = Analysis::new(ars);
    let profiles = an.profiles();
    let global = an.global_from(&profiles);
    let mut differ = |site: String, what: &str, decider: bool, oracle: bool| {
        r.comparisons += 1;
        if decider != oracle {
            r.disagreements.push(format!(
                "instance {} (seed {}) {site} {what}: decider {decider}, oracle {oracle}",
                inst.index, inst.seed
            ));
        }
    };
    for x in ars.elements() {
        for p in Property::ALL {
            let o = oracle.element(p, x).expect("in range");
            differ(format!("v{}", x.0), p.label(), profiles[x.0].get(p), o);
        }
    }
    for g in Property::ALL
        .into_iter()
        .map(GlobalProperty::All)
        .chain(GlobalProperty::EXTRA)
    {
        let o = oracle.global(g).expect("in range");
        differ("*".into(), g.label(), global.get(g), o);
    }
    // sampled lassos: the extracted bound is a bound, and a minimal form
    // turns up exactly as RP predicts
    let mut rng = Rng::new(inst.seed ^ 0x5DEE_CE66);
    let mut lassos = 0;
    for x in ars.elements() {
        if let Some(l) = sample_lasso(ars, x, &mut rng) {
            lassos += 1;
            let b = an.extract_bound(&l);
            differ(
                format!("lasso from v{}", x.0),
                "bound",
                check_bound(ars, &l, b).unwrap_or(false),
                true,
            );
            let k = an.recurrence_index(&l);
            let mf_at_k = k.is_some_and(|k| oracle.element(Property::Mf, l.at(k)).unwrap_or(false));
            if global.rp {
                differ(format!("lasso from v{}", x.0), "recurrence", mf_at_k, true);
            }
            if k.is_none() {
                differ(
                    format!("lasso from v{}", x.0),
                    "no recurrence => not RP",
                    global.rp,
                    false,
                );
            }
        }
    }
    r.lassos = lassos;
    r
}

/// Compare every decider with the brute-force oracle on each instance.
pub fn oracle_agreement(cfg: &GenConfig) -> Result<AgreementReport> {
    let all: Vec<Instance> = instances(cfg)?.collect();
    let parts = in_parallel(&all, |chunk| {
        let mut r = AgreementReport::default();
        for inst in chunk {
            let one = agree_on(inst);
            r.instances += one.instances;
            r.comparisons += one.comparisons;
            r.lassos += one.lassos;
            r.disagreements.extend(one.disagreements);
        }
        r
    });
    let mut out = AgreementReport::default();
    for p in parts {
        out.instances += p.instances;
        out.comparisons += p.comparisons;
        out.lassos += p.lassos;
        out.disagreements.extend(p.disagreements);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::claims::corrupted_claim;
    use super::*;

    #[test]
    fn corrupted_claim_is_caught_and_shrunk() {
        let cfg = GenConfig::new(11, 300, 6);
        let report = fuzz_claims(&cfg, &[corrupted_claim()], false).unwrap();
        let v = &report.violations["WN => SN"];
        assert!(v.revalidated);
        assert!(v.shrunk.size() <= 3, "{:?}", v.shrunk);
        assert!(corrupted_claim().violated_by(&v.shrunk));
    }

    #[test]
    fn small_run_is_clean() {
        let report = fuzz_implications(&GenConfig::new(1, 200, 5)).unwrap();
        for (label, v) in &report.violations {
            eprintln!("{label}: {} e.g. {:?}", v.count, v.shrunk);
        }
        assert!(report.clean(), "{:?}", report.non_implications);
    }

    #[test]
    fn small_agreement() {
        let r = oracle_agreement(&GenConfig::new(2, 100, 5)).unwrap();
        assert!(
            r.disagreements.is_empty(),
            "{:#?}",
            &r.disagreements[..r.disagreements.len().min(10)]
        );
        assert!(r.lassos > 0);
    }

    #[test]
    fn shrinking_keeps_the_failure() {
        let ars = FiniteArs::from_steps(5, [(0, 1), (1, 0), (0, 2), (3, 4), (4, 4)]).unwrap();
        let bad = |a: &FiniteArs| corrupted_claim().violated_by(a);
        let small = shrink(&ars, bad);
        assert!(bad(&small));
        assert_eq!(small.size(), 3);
    }
}
