use std::collections::BTreeSet;

use super::{ElementId, FiniteArs};

/// Strongly connected components of `R*` and their condensation.
///
/// Components are numbered by their smallest member, members are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccView {
    component_of: Vec<usize>,
    components: Vec<Vec<ElementId>>,
    condensation: BTreeSet<(usize, usize)>,
    cyclic: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl SccView {
    pub fn component_of(&self, e: ElementId) -> usize {
        self.component_of[e.0]
    }

    pub fn components(&self) -> &[Vec<ElementId>] {
        &self.components
    }

    pub fn members(&self, c: usize) -> &[ElementId] {
        &self.components[c]
    }

    pub fn condensation_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.condensation
    }

    /// A component is cyclic when it has two or more members or a self-loop.
    pub fn is_cyclic(&self, c: usize) -> bool {
        self.cyclic[c]
    }

    pub fn cyclic_flags(&self) -> &[bool] {
        &self.cyclic
    }

    /// Condensation successors of component `c`, ascending.
    pub fn component_successors(&self, c: usize) -> &[usize] {
        &self.out[c]
    }

    pub fn is_sink(&self, c: usize) -> bool {
        self.out[c].is_empty()
    }

    /// Components reachable from `c` in the condensation (including `c`).
    pub fn reachable_components(&self, c: usize) -> Vec<bool> {
        let mut seen = vec![false; self.components.len()];
        let mut stack = vec![c];
        seen[c] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Kahn's algorithm; `None` if the condensation had a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let k = self.components.len();
        let mut indeg = vec![0usize; k];
        for &(_, b) in &self.condensation {
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..k).filter(|&c| indeg[c] == 0).collect();
        let mut order = Vec::with_capacity(k);
        while let Some(c) = ready.pop_first() {
            order.push(c);
            for &d in &self.out[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    ready.insert(d);
                }
            }
        }
        (order.len() == k).then_some(order)
    }
}

struct Tarjan<'a> {
    ars: &'a FiniteArs,
    counter: usize,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.counter);
        self.low[v] = self.counter;
        self.counter += 1;
        self.stack.push(v);
        self.on_stack[v] = true;

        for &w in self.ars.successors(ElementId(v)) {
            let w = w.0;
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }

        if Some(self.low[v]) == self.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("tarjan stack underflow");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            self.found.push(comp);
        }
    }
}

pub fn scc_view(ars: &FiniteArs) -> SccView {
    let n = ars.size();
    let mut t = Tarjan {
        ars,
        counter: 0,
        index: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        found: Vec::new(),
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }

    let mut found = t.found;
    for comp in &mut found {
        comp.sort_unstable();
    }
    found.sort_unstable_by_key(|c| c[0]);

    let mut component_of = vec![0; n];
    for (c, comp) in found.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let mut condensation = BTreeSet::new();
    let mut cyclic: Vec<bool> = found.iter().map(|c| c.len() > 1).collect();
    for (a, b) in ars.steps() {
        let (ca, cb) = (component_of[a.0], component_of[b.0]);
        if ca == cb {
            if a == b {
                cyclic[ca] = true;
            }
        } else {
            condensation.insert((ca, cb));
        }
    }
    let mut out = vec![Vec::new(); found.len()];
    for &(a, b) in &condensation {
        out[a].push(b);
    }
    SccView {
        component_of,
        components: found
            .into_iter()
            .map(|c| c.into_iter().map(ElementId).collect())
            .collect(),
        condensation,
        cyclic,
        out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{closure, ClosureMode};

    fn ce4() -> FiniteArs {
        FiniteArs::build(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("a", "e"), ("b", "e"), ("b", "c"), ("c", "d"), ("d", "c")],
        )
        .unwrap()
    }

    /// Mutual reachability by brute force, independent of Tarjan.
    fn brute_partition(ars: &FiniteArs) -> Vec<Vec<usize>> {
        let star = closure(ars, ClosureMode::ReflTransitive);
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for a in ars.elements() {
            match parts
                .iter_mut()
                .find(|p| star.get(a, ElementId(p[0])) && star.get(ElementId(p[0]), a))
            {
                Some(p) => p.push(a.0),
                None => parts.push(vec![a.0]),
            }
        }
        parts
    }

    #[test]
    fn two_cycle_is_one_cyclic_component() {
        let ars = FiniteArs::from_steps(2, [(0, 1), (1, 0)]).unwrap();
        let v = scc_view(&ars);
        assert_eq!(v.components().len(), 1);
        assert!(v.is_cyclic(0));
        assert!(v.condensation_edges().is_empty());
        assert_eq!(brute_partition(&ars), vec![vec![0, 1]]);
    }

    #[test]
    fn chain_has_singleton_acyclic_components() {
        let ars = FiniteArs::from_steps(3, [(0, 1), (1, 2)]).unwrap();
        let v = scc_view(&ars);
        assert_eq!(v.components().len(), 3);
        assert!(v.cyclic_flags().iter().all(|c| !c));
        assert!(v.topological_order().is_some());
    }

    #[test]
    fn ce4_components() {
        let ars = ce4();
        let v = scc_view(&ars);
        let as_idx: Vec<Vec<usize>> = v.components().iter().map(|c| c.iter().map(|e| e.0).collect()).collect();
        assert_eq!(as_idx, vec![vec![0], vec![1], vec![2, 3], vec![4]]);
        assert_eq!(as_idx, brute_partition(&ars));
        assert_eq!(v.cyclic_flags(), &[false, false, true, false]);
        assert!(v.is_sink(2) && v.is_sink(3));
    }

    #[test]
    fn self_loop_marks_component_cyclic() {
        let ars = FiniteArs::from_steps(2, [(0, 0), (0, 1)]).unwrap();
        let v = scc_view(&ars);
        assert!(v.is_cyclic(v.component_of(ElementId(0))));
        assert!(!v.is_cyclic(v.component_of(ElementId(1))));
    }
}
