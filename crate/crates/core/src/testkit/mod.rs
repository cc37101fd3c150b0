//! Seeded generation, brute-force oracles and the implication fuzzer.

pub mod claims;
pub mod fuzz;
pub mod generate;
pub mod oracle;
pub mod rng;

pub use claims::{claim_set, Atom, Claim, ClaimKind, Scope};
pub use fuzz::{fuzz_implications, oracle_agreement, FuzzReport};
pub use generate::{instances, random_ars, sample_lasso, GenConfig, Instance};
pub use oracle::{brute_force_oracle, Oracle};
pub use rng::Rng;
