use super::{ElementId, FiniteArs};

/// Which closure of the step relation to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    Reflexive,
    Symmetric,
    Transitive,
    /// `R*`
    ReflTransitive,
    /// `R=`, the equivalence relation generated by `R`.
    Conversion,
}

impl ClosureMode {
    pub const ALL: [ClosureMode; 5] = [
        ClosureMode::Reflexive,
        ClosureMode::Symmetric,
        ClosureMode::Transitive,
        ClosureMode::ReflTransitive,
        ClosureMode::Conversion,
    ];
}

/// Dense boolean relation on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelMatrix {
    size: usize,
    bits: Vec<bool>,
}

impl RelMatrix {
    pub fn empty(size: usize) -> Self {
        RelMatrix {
            size,
            bits: vec![false; size * size],
        }
    }

    pub fn from_ars(ars: &FiniteArs) -> Self {
        let mut m = Self::empty(ars.size());
        for (a, b) in ars.steps() {
            m.set(a, b);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: ElementId, b: ElementId) -> bool {
        self.bits[a.0 * self.size + b.0]
    }

    pub fn set(&mut self, a: ElementId, b: ElementId) {
        self.bits[a.0 * self.size + b.0] = true;
    }

    /// Row `a` as the list of related elements, in index order.
    pub fn row(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        let start = a.0 * self.size;
        self.bits[start..start + self.size]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ElementId(i))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        let n = self.size;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (ElementId(i / n), ElementId(i % n)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Reinterpret the matrix as a step relation over the names of `ars`.
    pub fn to_ars(&self, like: &FiniteArs) -> FiniteArs {
        FiniteArs::assemble(like.names().to_vec(), self.pairs().map(|(a, b)| (a.0, b.0)).collect())
            .expect("matrix indices are in range")
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.bits[i * self.size + i])
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(a, b)| self.get(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs().all(|(a, b)| self.row(b).all(|c| self.get(a, c)))
    }

    pub fn contains(&self, other: &RelMatrix) -> bool {
        self.size == other.size && other.pairs().all(|(a, b)| self.get(a, b))
    }

    fn add_identity(&mut self) {
        for i in 0..self.size {
            self.bits[i * self.size + i] = true;
        }
    }

    fn add_converse(&mut self) {
        for (a, b) in self.pairs().collect::<Vec<_>>() {
            self.set(b, a);
        }
    }

    /// Warshall's algorithm, in place.
    fn close_transitively(&mut self) {
        let n = self.size;
        for k in 0..n {
            for i in 0..n {
                if !self.bits[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if self.bits[k * n + j] {
                        self.bits[i * n + j] = true;
                    }
                }
            }
        }
    }
}

pub fn closure(ars: &FiniteArs, mode: ClosureMode) -> RelMatrix {
    let mut m = RelMatrix::from_ars(ars);
    match mode {
        ClosureMode::Reflexive => m.add_identity(),
        ClosureMode::Symmetric => m.add_converse(),
        ClosureMode::Transitive => m.close_transitively(),
        ClosureMode::ReflTransitive => {
            m.add_identity();
            m.close_transitively();
        }
        ClosureMode::Conversion => {
            m.add_identity();
            m.add_converse();
            m.close_transitively();
        }
    }
    m
}
