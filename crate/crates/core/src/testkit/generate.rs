use super::rng::Rng;
use crate::error::{Error, Result};
use crate::relation::{ElementId, FiniteArs, Lasso};

/// Every ordered pair `(i, j)`, self-loops included, is drawn in row-major
/// order and kept when the next float is below `p`.
pub fn random_ars(seed: u64, n: usize, p: f64) -> Result<FiniteArs> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!("edge probability {p} is not in (0, 1]")));
    }
    let mut rng = Rng::new(seed);
    let mut steps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.chance(p) {
                steps.push((i, j));
            }
        }
    }
    FiniteArs::from_steps(n, steps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    pub edge_probabilities: Vec<f64>,
}

impl GenConfig {
    pub const DEFAULT_PROBABILITIES: [f64; 4] = [0.1, 0.2, 0.35, 0.5];

    pub fn new(seed: u64, count: usize, max_size: usize) -> Self {
        GenConfig {
            seed,
            count,
            max_size,
            edge_probabilities: Self::DEFAULT_PROBABILITIES.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 || self.max_size == 0 {
            return Err(Error::InvalidArgument("count and max size must be positive".into()));
        }
        if self.edge_probabilities.is_empty() {
            return Err(Error::InvalidArgument("no edge probabilities".into()));
        }
        if let Some(p) = self.edge_probabilities.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
            return Err(Error::InvalidArgument(format!("edge probability {p} is not in (0, 1]")));
        }
        Ok(())
    }
}

/// One generated instance, with what it takes to regenerate it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub index: usize,
    pub seed: u64,
    pub size: usize,
    pub probability: f64,
    pub ars: FiniteArs,
}

/// Instance `i` has size `1 + r % max_size` and density
/// `edge_probabilities[i % len]`, and its own seed `r'`, where `r, r'` are
/// the next two draws from a generator seeded with `cfg.seed`.
pub fn instances(cfg: &GenConfig) -> Result<impl Iterator<Item = Instance> + '_> {
    cfg.validate()?;
    let mut master = Rng::new(cfg.seed);
    Ok((0..cfg.count).map(move |index| {
        let size = 1 + (master.next_u64() % cfg.max_size as u64) as usize;
        let probability = cfg.edge_probabilities[index % cfg.edge_probabilities.len()];
        let seed = master.next_u64();
        let ars = random_ars(seed, size, probability).expect("validated config");
        Instance {
            index,
            seed,
            size,
            probability,
            ars,
        }
    }))
}

/// Random walk from `start` along uniformly chosen successors until an
/// element repeats, giving a lasso; `None` when the walk hits a normal form.
pub fn sample_lasso(ars: &FiniteArs, start: ElementId, rng: &mut Rng) -> Option<Lasso> {
    let mut walk = vec![start];
    let mut seen_at = vec![usize::MAX; ars.size()];
    seen_at[start.0] = 0;
    loop {
        let cur = *walk.last().expect("nonempty");
        let succ = ars.successors(cur);
        if succ.is_empty() {
            return None;
        }
        let next = succ[rng.below(succ.len())];
        if seen_at[next.0] != usize::MAX {
            let cycle = walk.split_off(seen_at[next.0]);
            return Some(Lasso::new(walk, cycle));
        }
        seen_at[next.0] = walk.len();
        walk.push(next);
    }
}
