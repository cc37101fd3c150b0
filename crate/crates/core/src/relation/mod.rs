//! Finite relations and the graph machinery every decider is built on.
//!
//! A [`FiniteArs`] is an explicit universe of named elements with a single
//! step relation. Successor lists are kept sorted, so every traversal in the
//! crate visits successors in increasing index order and produces the same
//! witnesses on every run.

mod closure;
mod scc;
mod witness;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use closure::{closure, ClosureMode, RelMatrix};
pub use scc::{scc_view, SccView};
pub use witness::{path_between, Lasso, PathWitness, StepMode};

use crate::error::{Error, Result};

/// Index of an element inside one [`FiniteArs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An abstract rewriting system over a finite, explicitly named universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteArs {
    names: Vec<String>,
    succ: Vec<Vec<ElementId>>,
    pred: Vec<Vec<ElementId>>,
}

impl FiniteArs {
    /// Build a system from element names and named step pairs.
    ///
    /// Duplicate steps are dropped; self-loops are kept.
    pub fn build<N, S>(names: &[N], steps: &[(S, S)]) -> Result<Self>
    where
        N: AsRef<str>,
        S: AsRef<str>,
    {
        if names.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_ref(), i).is_some() {
                return Err(Error::DuplicateName(name.as_ref().to_string()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownName(name.to_string()))
        };
        let mut pairs = Vec::with_capacity(steps.len());
        for (from, to) in steps {
            pairs.push((lookup(from.as_ref())?, lookup(to.as_ref())?));
        }
        Self::assemble(names.iter().map(|n| n.as_ref().to_string()).collect(), pairs)
    }

    /// Build a system over `size` anonymous elements named `v0`, `v1`, ...
    pub fn from_steps<I>(size: usize, steps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let names = (0..size).map(|i| format!("v{i}")).collect();
        Self::assemble(names, steps.into_iter().collect())
    }

    fn assemble(names: Vec<String>, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let size = names.len();
        let mut succ = vec![BTreeSet::new(); size];
        for (from, to) in pairs {
            for index in [from, to] {
                if index >= size {
                    return Err(Error::IndexOutOfRange { index, size });
                }
            }
            succ[from].insert(to);
        }
        let succ: Vec<Vec<ElementId>> = succ
            .into_iter()
            .map(|s| s.into_iter().map(ElementId).collect())
            .collect();
        let mut pred = vec![Vec::new(); size];
        for (from, targets) in succ.iter().enumerate() {
            for to in targets {
                pred[to.0].push(ElementId(from));
            }
        }
        Ok(FiniteArs { names, succ, pred })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: ElementId) -> &str {
        &self.names[e.0]
    }

    pub fn lookup(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId)
    }

    /// Range-checked conversion from a raw index.
    pub fn element(&self, index: usize) -> Result<ElementId> {
        if index < self.size() {
            Ok(ElementId(index))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.size(),
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.size()).map(ElementId)
    }

    /// One-step reducts, in increasing index order.
    pub fn successors(&self, e: ElementId) -> &[ElementId] {
        &self.succ[e.0]
    }

    /// Elements with a step into `e`, in increasing index order.
    pub fn predecessors(&self, e: ElementId) -> &[ElementId] {
        &self.pred[e.0]
    }

    pub fn has_step(&self, from: ElementId, to: ElementId) -> bool {
        self.succ[from.0].binary_search(&to).is_ok()
    }

    pub fn is_normal_form(&self, e: ElementId) -> bool {
        self.succ[e.0].is_empty()
    }

    /// All steps in lexicographic order.
    pub fn steps(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(from, ts)| ts.iter().map(move |&to| (ElementId(from), to)))
    }

    pub fn step_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// The same universe with every step reversed.
    pub fn converse(&self) -> FiniteArs {
        FiniteArs {
            names: self.names.clone(),
            succ: self.pred.clone(),
            pred: self.succ.clone(),
        }
    }

    /// Drop element `index` and every step touching it; later indices shift down.
    pub fn without_element(&self, index: usize) -> Result<FiniteArs> {
        self.element(index)?;
        if self.size() == 1 {
            return Err(Error::EmptyUniverse);
        }
        let remap = |i: usize| if i > index { i - 1 } else { i };
        let names = self
            .names
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, n)| n.clone())
            .collect();
        let pairs = self
            .steps()
            .filter(|(a, b)| a.0 != index && b.0 != index)
            .map(|(a, b)| (remap(a.0), remap(b.0)))
            .collect();
        Self::assemble(names, pairs)
    }

    pub fn without_step(&self, from: ElementId, to: ElementId) -> FiniteArs {
        let pairs = self
            .steps()
            .filter(|&(a, b)| (a, b) != (from, to))
            .map(|(a, b)| (a.0, b.0))
            .collect();
        Self::assemble(self.names.clone(), pairs).expect("indices already validated")
    }

    /// `a -> b -> c`; a single element for the empty reduction.
    pub fn render_nodes(&self, nodes: &[ElementId]) -> String {
        nodes.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(" -> ")
    }

    pub fn render_path(&self, path: &PathWitness) -> String {
        self.render_nodes(path.nodes())
    }

    /// Stem and one turn of the cycle, closed back to the cycle's first element.
    pub fn render_cycle(&self, lasso: &Lasso) -> String {
        let mut nodes: Vec<ElementId> = lasso.stem().to_vec();
        nodes.extend_from_slice(lasso.cycle());
        nodes.push(lasso.cycle()[0]);
        self.render_nodes(&nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_two_cycle() {
        let ars = FiniteArs::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(ars.size(), 2);
        assert_eq!(ars.step_count(), 2);
    }

    #[test]
    fn build_single_element() {
        let ars = FiniteArs::build::<_, &str>(&["a"], &[]).unwrap();
        assert_eq!(ars.size(), 1);
        assert_eq!(ars.step_count(), 0);
        assert!(ars.is_normal_form(ElementId(0)));
    }

    #[test]
    fn build_rejects_duplicates_and_unknowns() {
        assert_eq!(
            FiniteArs::build(&["a", "a"], &[("a", "a")]),
            Err(Error::DuplicateName("a".into()))
        );
        assert_eq!(
            FiniteArs::build(&["a"], &[("a", "z")]),
            Err(Error::UnknownName("z".into()))
        );
        assert_eq!(FiniteArs::build::<&str, &str>(&[], &[]), Err(Error::EmptyUniverse));
    }

    #[test]
    fn duplicate_steps_are_dropped() {
        let ars = FiniteArs::build(&["a", "b"], &[("a", "b"), ("a", "b"), ("b", "b")]).unwrap();
        assert_eq!(ars.step_count(), 2);
        assert!(ars.has_step(ElementId(1), ElementId(1)));
    }

    #[test]
    fn converse_cases() {
        let ars = FiniteArs::build(&["a", "b"], &[("a", "b")]).unwrap();
        let conv = ars.converse();
        assert_eq!(conv.steps().collect::<Vec<_>>(), vec![(ElementId(1), ElementId(0))]);
        let empty = FiniteArs::from_steps(3, []).unwrap();
        assert_eq!(empty.converse(), empty);
        let ce8 = FiniteArs::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(ce8.converse(), ce8);
    }

    #[test]
    fn without_element_reindexes() {
        let ars = FiniteArs::from_steps(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let smaller = ars.without_element(1).unwrap();
        assert_eq!(smaller.size(), 2);
        assert_eq!(smaller.steps().collect::<Vec<_>>(), vec![(ElementId(1), ElementId(0))]);
        assert_eq!(smaller.names(), &["v0".to_string(), "v2".to_string()]);
    }
}
