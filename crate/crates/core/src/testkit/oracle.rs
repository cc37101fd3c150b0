//! Definitional deciders: plain graph search over elements, no components
//! or condensations. Slow, and only meant for small systems.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::properties::{GlobalProperty, Property};
use crate::relation::{ElementId, FiniteArs};

pub const ORACLE_LIMIT: usize = 10;

pub struct Oracle<'a> {
    ars: &'a FiniteArs,
    /// `reach[a][b]`: `a ->* b`.
    reach: Vec<Vec<bool>>,
    conv: Vec<Vec<bool>>,
    mf: Vec<bool>,
    sn: Vec<bool>,
    sm: Vec<bool>,
}

fn search(n: usize, start: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut todo = VecDeque::from([start]);
    while let Some(x) = todo.pop_front() {
        for y in next(x) {
            if !seen[y] {
                seen[y] = true;
                todo.push_back(y);
            }
        }
    }
    seen
}

/// Least set containing `base` and every element all of whose successors
/// are already in.
fn closed_under_successors(ars: &FiniteArs, base: Vec<bool>) -> Vec<bool> {
    let mut set = base;
    loop {
        let mut changed = false;
        for x in ars.elements() {
            if !set[x.0] && ars.successors(x).iter().all(|y| set[y.0]) {
                set[x.0] = true;
                changed = true;
            }
        }
        if !changed {
            return set;
        }
    }
}

impl<'a> Oracle<'a> {
    pub fn new(ars: &'a FiniteArs) -> Result<Self> {
        let n = ars.size();
        if n > ORACLE_LIMIT {
            return Err(Error::CapacityExceeded {
                what: "oracle",
                size: n,
                limit: ORACLE_LIMIT,
            });
        }
        let succ = |x: usize| ars.successors(ElementId(x)).iter().map(|e| e.0).collect();
        let reach: Vec<Vec<bool>> = (0..n).map(|a| search(n, a, succ)).collect();
        let both = |x: usize| {
            let e = ElementId(x);
            ars.successors(e)
                .iter()
                .chain(ars.predecessors(e))
                .map(|e| e.0)
                .collect()
        };
        let conv = (0..n).map(|a| search(n, a, both)).collect();
        let mf: Vec<bool> = (0..n).map(|a| (0..n).all(|b| !reach[a][b] || reach[b][a])).collect();
        let sn = closed_under_successors(ars, vec![false; n]);
        let sm = closed_under_successors(ars, mf.clone());
        Ok(Oracle {
            ars,
            reach,
            conv,
            mf,
            sn,
            sm,
        })
    }

    fn n(&self) -> usize {
        self.ars.size()
    }

    fn nf(&self, a: usize) -> bool {
        self.ars.successors(ElementId(a)).is_empty()
    }

    fn reducts(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&b| self.reach[a][b])
    }

    fn joinable(&self, b: usize, c: usize) -> bool {
        (0..self.n()).any(|d| self.reach[b][d] && self.reach[c][d])
    }

    /// A lasso from `a` that never visits `avoid`, found by depth-first
    /// search for an edge back onto the current path.
    fn lasso_avoiding(&self, a: usize, avoid: &[bool]) -> bool {
        fn go(o: &Oracle, x: usize, avoid: &[bool], on_path: &mut Vec<bool>, done: &mut Vec<bool>) -> bool {
            on_path[x] = true;
            for y in o.ars.successors(ElementId(x)) {
                let y = y.0;
                if avoid[y] || done[y] {
                    continue;
                }
                if on_path[y] || go(o, y, avoid, on_path, done) {
                    return true;
                }
            }
            on_path[x] = false;
            done[x] = true;
            false
        }
        if avoid[a] {
            return false;
        }
        go(self, a, avoid, &mut vec![false; self.n()], &mut vec![false; self.n()])
    }

    /// Calls `f` on every simple cycle, listed once from its smallest
    /// element; stops early when `f` returns false.
    fn all_simple_cycles(&self, mut f: impl FnMut(&[usize]) -> bool) -> bool {
        fn go(
            o: &Oracle,
            start: usize,
            path: &mut Vec<usize>,
            on: &mut Vec<bool>,
            f: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            let x = *path.last().expect("nonempty");
            for y in o.ars.successors(ElementId(x)) {
                let y = y.0;
                if y == start {
                    if !f(path) {
                        return false;
                    }
                } else if y > start && !on[y] {
                    on[y] = true;
                    path.push(y);
                    let keep = go(o, start, path, on, f);
                    path.pop();
                    on[y] = false;
                    if !keep {
                        return false;
                    }
                }
            }
            true
        }
        let n = self.n();
        for s in 0..n {
            let mut on = vec![false; n];
            on[s] = true;
            if !go(self, s, &mut vec![s], &mut on, &mut f) {
                return false;
            }
        }
        true
    }

    pub fn element(&self, p: Property, a: ElementId) -> Result<bool> {
        self.ars.element(a.0)?;
        let a = a.0;
        let n = self.n();
        let succ: Vec<usize> = self.ars.successors(ElementId(a)).iter().map(|e| e.0).collect();
        Ok(match p {
            Property::Nf => self.nf(a),
            Property::Wn => self.reducts(a).any(|b| self.nf(b)),
            Property::Sn => self.sn[a],
            Property::Mf => self.mf[a],
            Property::Wm => self.reducts(a).any(|b| self.mf[b]),
            Property::Sm => self.sm[a],
            Property::SmSeq => !self.lasso_avoiding(a, &self.mf),
            Property::Wcr => succ.iter().all(|&b| succ.iter().all(|&c| self.joinable(b, c))),
            Property::Cr => self.reducts(a).all(|b| self.reducts(a).all(|c| self.joinable(b, c))),
            Property::SubCommutative => succ.iter().all(|&b| {
                succ.iter().all(|&c| {
                    let one = |x: usize, d: usize| x == d || self.ars.has_step(ElementId(x), ElementId(d));
                    (0..n).any(|d| one(b, d) && one(c, d))
                })
            }),
            Property::NpConv => (0..n).all(|b| !(self.conv[a][b] && self.nf(b)) || self.reach[a][b]),
            Property::NpRed => self
                .reducts(a)
                .filter(|&b| self.nf(b))
                .all(|b| self.reducts(a).all(|c| self.reach[c][b])),
            Property::UnConv => !self.nf(a) || (0..n).all(|b| !(self.conv[a][b] && self.nf(b)) || b == a),
            Property::UnRed => self.reducts(a).filter(|&b| self.nf(b)).count() <= 1,
            Property::Mp => self
                .reducts(a)
                .filter(|&b| self.mf[b])
                .all(|b| self.reducts(a).all(|c| self.reach[c][b])),
            // The last element of a cofinal path is reached by every reduct.
            Property::Cp => self.reducts(a).any(|t| self.reducts(a).all(|y| self.reach[y][t])),
        })
    }

    pub fn global(&self, g: GlobalProperty) -> Result<bool> {
        let all = |p: Property| -> Result<bool> {
            for a in self.ars.elements() {
                if !self.element(p, a)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let reach = &self.reach;
        let bounds =
            |cycle: &[usize]| -> Vec<usize> { (0..self.n()).filter(|&b| cycle.iter().all(|&x| reach[x][b])).collect() };
        Ok(match g {
            GlobalProperty::All(p) => all(p)?,
            GlobalProperty::Bp => self.all_simple_cycles(|c| !bounds(c).is_empty()),
            GlobalProperty::Rp => self.all_simple_cycles(|c| c.iter().any(|&x| self.mf[x])),
            GlobalProperty::RpMinus => {
                self.all_simple_cycles(|c| bounds(c).into_iter().all(|b| c.iter().any(|&x| reach[b][x])))
            }
            GlobalProperty::Inc => self.all_simple_cycles(|_| false),
            GlobalProperty::Fb | GlobalProperty::Dec => true,
        })
    }
}

/// `at = Some(a)` decides an element property at `a`; `None` decides the
/// selector globally.
pub fn brute_force_oracle(ars: &FiniteArs, selector: GlobalProperty, at: Option<ElementId>) -> Result<bool> {
    let o = Oracle::new(ars)?;
    match (selector, at) {
        (GlobalProperty::All(p), Some(a)) => o.element(p, a),
        (g, None) => o.global(g),
        (g, Some(_)) => Err(Error::InvalidArgument(format!("{g} is a global property"))),
    }
}
