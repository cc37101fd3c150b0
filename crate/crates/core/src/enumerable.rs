//! Systems given by a successor enumeration rather than an explicit universe.
//!
//! Infinite systems cannot be decided, so everything here is bounded: chain
//! searches, breadth-first normalization and joining, and a profile computed
//! on an explored window of the reduction graph.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::properties::Property;
use crate::relation::{ElementId, FiniteArs};

/// A decidable, finitely branching step relation over arbitrary keys.
///
/// `successors_of` must be deterministic and return exactly the one-step
/// reducts; its order matters to the first-successor strategies.
pub trait EnumerableArs {
    type Key: Clone + Eq + Hash + Debug;

    fn successors_of(&self, key: &Self::Key) -> Vec<Self::Key>;

    fn is_normal_form(&self, key: &Self::Key) -> bool {
        self.successors_of(key).is_empty()
    }
}

impl EnumerableArs for FiniteArs {
    type Key = ElementId;

    fn successors_of(&self, key: &ElementId) -> Vec<ElementId> {
        self.successors(*key).to_vec()
    }
}

/// A reduction of exactly `length` steps from `start`, searched depth-first
/// in enumeration order.
pub fn find_chain<E: EnumerableArs>(ars: &E, start: &E::Key, length: usize) -> Option<Vec<E::Key>> {
    let mut path = vec![start.clone()];
    let mut stack: Vec<(Vec<E::Key>, usize)> = vec![(ars.successors_of(start), 0)];
    while let Some((succ, next)) = stack.last_mut() {
        if path.len() > length {
            return Some(path);
        }
        if *next < succ.len() {
            let k = succ[*next].clone();
            *next += 1;
            stack.push((ars.successors_of(&k), 0));
            path.push(k);
        } else {
            stack.pop();
            path.pop();
        }
    }
    None
}

/// Breadth-first paths from `start`, at most `depth` steps deep.
struct Bfs<K> {
    order: Vec<K>,
    parent: HashMap<K, Option<K>>,
    dist: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> Bfs<K> {
    fn run<E: EnumerableArs<Key = K>>(ars: &E, start: &K, depth: usize) -> Self {
        let mut bfs = Bfs {
            order: vec![start.clone()],
            parent: HashMap::from([(start.clone(), None)]),
            dist: HashMap::from([(start.clone(), 0)]),
        };
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            let d = bfs.dist[&x];
            if d == depth {
                continue;
            }
            for y in ars.successors_of(&x) {
                if !bfs.parent.contains_key(&y) {
                    bfs.parent.insert(y.clone(), Some(x.clone()));
                    bfs.dist.insert(y.clone(), d + 1);
                    bfs.order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        bfs
    }

    fn path_to(&self, target: &K) -> Vec<K> {
        let mut nodes = vec![target.clone()];
        let mut cur = target.clone();
        while let Some(Some(p)) = self.parent.get(&cur) {
            nodes.push(p.clone());
            cur = p.clone();
        }
        nodes.reverse();
        nodes
    }
}

/// Nearest normal form within `depth` steps, with the reduction reaching it.
pub fn bounded_normalize<E: EnumerableArs>(ars: &E, start: &E::Key, depth: usize) -> Option<(E::Key, Vec<E::Key>)> {
    let bfs = Bfs::run(ars, start, depth);
    let nf = bfs.order.iter().find(|k| ars.is_normal_form(k))?;
    Some((nf.clone(), bfs.path_to(nf)))
}

/// A bounded valley: `left ->* target <-* right`, each side at most `depth` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedJoin<K> {
    pub target: K,
    pub from_left: Vec<K>,
    pub from_right: Vec<K>,
}

pub fn bounded_join<E: EnumerableArs>(
    ars: &E,
    left: &E::Key,
    right: &E::Key,
    depth: usize,
) -> Option<BoundedJoin<E::Key>> {
    let from_left = Bfs::run(ars, left, depth);
    let from_right = Bfs::run(ars, right, depth);
    let target = from_right.order.iter().find(|k| from_left.parent.contains_key(k))?;
    Some(BoundedJoin {
        target: target.clone(),
        from_left: from_left.path_to(target),
        from_right: from_right.path_to(target),
    })
}

/// Do all consecutive keys form steps?
pub fn is_reduction<E: EnumerableArs>(ars: &E, path: &[E::Key]) -> bool {
    !path.is_empty() && path.windows(2).all(|w| ars.successors_of(&w[0]).contains(&w[1]))
}

/// Properties evaluated on an explored window of an enumerable system.
///
/// The window holds everything within `depth` steps of the root. Universal
/// quantifiers range over the core (keys within `depth / 2` steps), while
/// reachability and joins are searched in the whole window, so a core key
/// always has room to reach a join. Verdicts are therefore evidence at the
/// bound, not decisions. Properties the window cannot speak to are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedProfile {
    pub depth: usize,
    pub window_size: usize,
    pub element: BTreeMap<Property, bool>,
    pub global: BTreeMap<Property, bool>,
}

impl BoundedProfile {
    pub fn element(&self, p: Property) -> Option<bool> {
        self.element.get(&p).copied()
    }

    pub fn global(&self, p: Property) -> Option<bool> {
        self.global.get(&p).copied()
    }
}

struct Window {
    size: usize,
    dist: Vec<usize>,
    expanded: Vec<bool>,
    nf: Vec<bool>,
    reach: Vec<Vec<bool>>,
    succ: Vec<Vec<usize>>,
    /// Some node at the depth limit: a reduction of `depth` steps exists.
    deep: bool,
    cyclic: bool,
}

impl Window {
    fn explore<E: EnumerableArs>(ars: &E, root: &E::Key, depth: usize) -> Window {
        let bfs = Bfs::run(ars, root, depth);
        let index: HashMap<&E::Key, usize> = bfs.order.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let size = bfs.order.len();
        let dist: Vec<usize> = bfs.order.iter().map(|k| bfs.dist[k]).collect();
        let expanded: Vec<bool> = dist.iter().map(|&d| d < depth).collect();
        let mut succ = vec![Vec::new(); size];
        let mut nf = vec![false; size];
        for (i, k) in bfs.order.iter().enumerate() {
            if expanded[i] {
                succ[i] = ars.successors_of(k).iter().map(|y| index[y]).collect();
                nf[i] = succ[i].is_empty();
            }
        }
        let fa = FiniteArs::from_steps(
            size,
            succ.iter()
                .enumerate()
                .flat_map(|(i, s)| s.iter().map(move |&j| (i, j))),
        )
        .expect("window indices are in range");
        let star = crate::relation::closure(&fa, crate::relation::ClosureMode::ReflTransitive);
        let reach = (0..size)
            .map(|i| (0..size).map(|j| star.get(ElementId(i), ElementId(j))).collect())
            .collect();
        let scc = crate::relation::scc_view(&fa);
        Window {
            size,
            deep: dist.contains(&depth),
            cyclic: scc.cyclic_flags().iter().any(|&c| c),
            dist,
            expanded,
            nf,
            reach,
            succ,
        }
    }

    fn joinable(&self, b: usize, c: usize) -> bool {
        (0..self.size).any(|d| self.reach[b][d] && self.reach[c][d])
    }

    /// Known minimal form: fully explored reducts that all lead back.
    fn mf(&self, x: usize) -> bool {
        (0..self.size)
            .filter(|&y| self.reach[x][y])
            .all(|y| self.expanded[y] && self.reach[y][x])
    }

    fn at(&self, x: usize, core_depth: usize) -> BTreeMap<Property, bool> {
        let reducts: Vec<usize> = (0..self.size).filter(|&y| self.reach[x][y]).collect();
        let core: Vec<usize> = reducts
            .iter()
            .copied()
            .filter(|&y| self.dist[y] <= core_depth)
            .collect();
        let nfs: Vec<usize> = reducts.iter().copied().filter(|&y| self.nf[y]).collect();
        let mfs: Vec<usize> = reducts.iter().copied().filter(|&y| self.mf(y)).collect();
        let pairs_join = |set: &[usize]| set.iter().all(|&b| set.iter().all(|&c| self.joinable(b, c)));
        let everyone_reaches = |targets: &[usize]| targets.iter().all(|&b| core.iter().all(|&c| self.reach[c][b]));
        let mut out = BTreeMap::new();
        out.insert(Property::Nf, self.nf[x]);
        out.insert(Property::Wn, !nfs.is_empty());
        out.insert(Property::Wm, !mfs.is_empty());
        out.insert(Property::UnRed, nfs.len() <= 1);
        out.insert(Property::NpRed, everyone_reaches(&nfs));
        out.insert(Property::Mp, everyone_reaches(&mfs));
        out.insert(Property::Cr, pairs_join(&core));
        out.insert(Property::Wcr, pairs_join(&self.succ[x]));
        out
    }
}

/// Bounded profile of `root`. `Sn` is reported only when refuted: a reduction
/// of `depth` steps or a cycle was found.
pub fn bounded_profile<E: EnumerableArs>(ars: &E, root: &E::Key, depth: usize) -> BoundedProfile {
    let w = Window::explore(ars, root, depth);
    let core_depth = depth / 2;
    let mut element = w.at(0, core_depth);
    let mut global: BTreeMap<Property, bool> = BTreeMap::new();
    for x in (0..w.size).filter(|&x| w.dist[x] <= core_depth) {
        for (p, v) in w.at(x, core_depth) {
            *global.entry(p).or_insert(true) &= v;
        }
    }
    if w.deep || w.cyclic {
        element.insert(Property::Sn, false);
        global.insert(Property::Sn, false);
    }
    BoundedProfile {
        depth,
        window_size: w.size,
        element,
        global,
    }
}

/// Iterative DFS over keys that are not yet known to terminate; every
/// expansion costs one unit of fuel.
pub(crate) fn terminating_walk<E: EnumerableArs>(ars: &E, start: &E::Key, fuel: usize) -> Result<Vec<E::Key>, usize> {
    let mut done: HashMap<E::Key, ()> = HashMap::new();
    let mut spent = 1;
    if fuel == 0 {
        return Err(0);
    }
    let mut stack: Vec<(E::Key, Vec<E::Key>, usize)> = vec![(start.clone(), ars.successors_of(start), 0)];
    while let Some((_, succ, next)) = stack.last_mut() {
        if *next < succ.len() {
            let k = succ[*next].clone();
            *next += 1;
            if !done.contains_key(&k) {
                if spent == fuel {
                    return Err(spent);
                }
                spent += 1;
                let s = ars.successors_of(&k);
                stack.push((k, s, 0));
            }
        } else {
            let (k, _, _) = stack.pop().expect("nonempty");
            done.insert(k, ());
        }
    }
    // every key below start terminates; the first-successor walk is finite
    let mut path = vec![start.clone()];
    loop {
        let succ = ars.successors_of(path.last().expect("nonempty"));
        match succ.into_iter().next() {
            Some(k) => path.push(k),
            None => return Ok(path),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// f_i -> f_{i+1}, f_i -> n; encoded n = 0, f_i = i + 1.
    struct Fan;

    impl EnumerableArs for Fan {
        type Key = u64;
        fn successors_of(&self, k: &u64) -> Vec<u64> {
            if *k == 0 {
                vec![]
            } else {
                vec![k + 1, 0]
            }
        }
    }

    #[test]
    fn chains_and_normal_forms() {
        let chain = find_chain(&Fan, &1, 100).unwrap();
        assert_eq!(chain.len(), 101);
        assert!(is_reduction(&Fan, &chain));
        let (nf, path) = bounded_normalize(&Fan, &1, 5).unwrap();
        assert_eq!((nf, path), (0, vec![1, 0]));
        let j = bounded_join(&Fan, &2, &5, 2).unwrap();
        assert_eq!(j.target, 0);
    }

    #[test]
    fn fan_profile_at_bound() {
        let p = bounded_profile(&Fan, &1, 20);
        for prop in [
            Property::Wn,
            Property::UnRed,
            Property::NpRed,
            Property::Cr,
            Property::Wcr,
        ] {
            assert_eq!(p.element(prop), Some(true), "{prop}");
            assert_eq!(p.global(prop), Some(true), "{prop}");
        }
        assert_eq!(p.element(Property::Sn), Some(false));
    }

    #[test]
    fn walk_needs_whole_tree_to_terminate() {
        let ars = FiniteArs::from_steps(3, [(0, 1), (0, 2), (2, 2)]).unwrap();
        assert!(terminating_walk(&ars, &ElementId(0), 50).is_err());
        let ok = FiniteArs::from_steps(3, [(0, 1), (0, 2), (2, 1)]).unwrap();
        let path = terminating_walk(&ok, &ElementId(0), 4).unwrap();
        assert_eq!(path, vec![ElementId(0), ElementId(1)]);
    }
}
