use std::collections::VecDeque;

use super::{ElementId, FiniteArs};
use crate::error::{Error, Result};

/// Whether consecutive elements must be one step apart, or may also be equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    /// `R`
    Strict,
    /// `R^r`
    Reflexive,
}

impl StepMode {
    fn allows(self, ars: &FiniteArs, a: ElementId, b: ElementId) -> bool {
        ars.has_step(a, b) || (self == StepMode::Reflexive && a == b)
    }
}

/// A finite reduction `nodes[0] ->* nodes[last]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWitness {
    nodes: Vec<ElementId>,
}

impl PathWitness {
    /// Panics if `nodes` is empty.
    pub fn new(nodes: Vec<ElementId>) -> Self {
        assert!(!nodes.is_empty(), "a path has at least one node");
        PathWitness { nodes }
    }

    /// The empty reduction at `e`.
    pub fn trivial(e: ElementId) -> Self {
        PathWitness { nodes: vec![e] }
    }

    pub fn nodes(&self) -> &[ElementId] {
        &self.nodes
    }

    pub fn source(&self) -> ElementId {
        self.nodes[0]
    }

    pub fn target(&self) -> ElementId {
        *self.nodes.last().expect("nonempty")
    }

    pub fn step_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `self` followed by `next`; `next` must start where `self` ends.
    pub fn then(&self, next: &PathWitness) -> PathWitness {
        assert_eq!(self.target(), next.source(), "paths do not compose");
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&next.nodes[1..]);
        PathWitness { nodes }
    }

    /// Drop the first step. `None` for the empty reduction.
    pub fn tail(&self) -> Option<PathWitness> {
        (self.nodes.len() > 1).then(|| PathWitness {
            nodes: self.nodes[1..].to_vec(),
        })
    }

    pub fn validate(&self, ars: &FiniteArs) -> Result<()> {
        for &e in &self.nodes {
            ars.element(e.0)?;
        }
        for w in self.nodes.windows(2) {
            if !ars.has_step(w[0], w[1]) {
                return Err(Error::MalformedPath(format!(
                    "{} -> {} is not a step",
                    ars.name(w[0]),
                    ars.name(w[1])
                )));
            }
        }
        Ok(())
    }
}

/// Finite presentation `stem · cycle · cycle · …` of an infinite sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    stem: Vec<ElementId>,
    cycle: Vec<ElementId>,
}

impl Lasso {
    /// Panics if `cycle` is empty; use [`Lasso::try_new`] for untrusted input.
    pub fn new(stem: Vec<ElementId>, cycle: Vec<ElementId>) -> Self {
        Self::try_new(stem, cycle).expect("lasso cycle must be nonempty")
    }

    pub fn try_new(stem: Vec<ElementId>, cycle: Vec<ElementId>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::MalformedLasso("empty cycle".into()));
        }
        Ok(Lasso { stem, cycle })
    }

    pub fn stem(&self) -> &[ElementId] {
        &self.stem
    }

    pub fn cycle(&self) -> &[ElementId] {
        &self.cycle
    }

    pub fn first(&self) -> ElementId {
        self.stem.first().copied().unwrap_or(self.cycle[0])
    }

    /// Number of distinct positions before the sequence repeats.
    pub fn period_end(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// The `k`-th element of the denoted sequence.
    pub fn at(&self, k: usize) -> ElementId {
        if k < self.stem.len() {
            self.stem[k]
        } else {
            self.cycle[(k - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Every element occurring in the sequence, with repetitions, stem first.
    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.stem.iter().chain(self.cycle.iter()).copied()
    }

    pub fn validate(&self, ars: &FiniteArs, mode: StepMode) -> Result<()> {
        if self.cycle.is_empty() {
            return Err(Error::MalformedLasso("empty cycle".into()));
        }
        for e in self.elements() {
            ars.element(e.0)?;
        }
        let n = self.period_end();
        for k in 0..n {
            let (a, b) = (self.at(k), self.at(k + 1));
            if !mode.allows(ars, a, b) {
                return Err(Error::MalformedLasso(format!(
                    "position {k}: {} -> {} is not a step",
                    ars.name(a),
                    ars.name(b)
                )));
            }
        }
        Ok(())
    }
}

/// Shortest reduction `from ->* to`, breadth-first with successors in index
/// order, so the result is deterministic.
pub fn path_between(ars: &FiniteArs, from: ElementId, to: ElementId) -> Option<PathWitness> {
    if from == to {
        return Some(PathWitness::trivial(from));
    }
    let mut parent: Vec<Option<ElementId>> = vec![None; ars.size()];
    let mut seen = vec![false; ars.size()];
    let mut queue = VecDeque::from([from]);
    seen[from.0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in ars.successors(x) {
            if seen[y.0] {
                continue;
            }
            seen[y.0] = true;
            parent[y.0] = Some(x);
            if y == to {
                let mut nodes = vec![to];
                let mut cur = to;
                while let Some(p) = parent[cur.0] {
                    nodes.push(p);
                    cur = p;
                }
                nodes.reverse();
                return Some(PathWitness::new(nodes));
            }
            queue.push_back(y);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn lasso_denotation() {
        let two = Lasso::new(vec![], vec![e(0), e(1)]);
        assert_eq!(two.at(3), e(1));
        let eventually_const = Lasso::new(vec![e(7)], vec![e(8)]);
        assert_eq!(eventually_const.at(0), e(7));
        assert_eq!(eventually_const.at(7), e(8));
    }

    #[test]
    fn lasso_validation() {
        let ars = FiniteArs::from_steps(3, [(0, 1), (1, 0), (2, 0)]).unwrap();
        Lasso::new(vec![e(2)], vec![e(0), e(1)])
            .validate(&ars, StepMode::Strict)
            .unwrap();
        assert!(Lasso::new(vec![], vec![e(2)]).validate(&ars, StepMode::Strict).is_err());
        Lasso::new(vec![e(2)], vec![e(0)])
            .validate(&ars, StepMode::Reflexive)
            .unwrap();
        assert!(Lasso::try_new(vec![e(0)], vec![]).is_err());
    }

    #[test]
    fn shortest_paths() {
        let ars = FiniteArs::from_steps(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(path_between(&ars, e(0), e(1)).unwrap().nodes(), &[e(0), e(1)]);
        assert_eq!(path_between(&ars, e(1), e(1)).unwrap().nodes(), &[e(1)]);
        // two shortest routes 0->1->3 and 0->2->3: lowest index wins
        let diamond = FiniteArs::from_steps(4, [(0, 2), (0, 1), (1, 3), (2, 3)]).unwrap();
        let p = path_between(&diamond, e(0), e(3)).unwrap();
        assert_eq!(p.nodes(), &[e(0), e(1), e(3)]);
        p.validate(&diamond).unwrap();
        assert!(path_between(&diamond, e(3), e(0)).is_none());
    }
}
