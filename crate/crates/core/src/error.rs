use thiserror::Error;

use crate::relation::{ElementId, FiniteArs, Lasso};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),

    #[error("unknown element name `{0}`")]
    UnknownName(String),

    #[error("the element list is empty")]
    EmptyUniverse,

    #[error("element index {index} out of range for a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("malformed lasso: {0}")]
    MalformedLasso(String),

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    CapacityExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),

    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: usize },

    #[error("negative de Bruijn index produced by shift")]
    NegativeIndex,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unbound name `{name}` at byte {position}")]
    UnboundName { name: String, position: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The hypothesis a witness-producing procedure found violated, with the
/// element (or pair) at which it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    /// `element` can start an infinite reduction; `cycle` is one such reduction.
    NotStronglyNormalizing {
        element: ElementId,
        cycle: Lasso,
    },
    NotWeaklyConfluent {
        element: ElementId,
        left: ElementId,
        right: ElementId,
    },
    NotStronglyMinimalizing {
        element: ElementId,
    },
    NotWeaklyNormalizing {
        element: ElementId,
    },
    NotUniqueNormalForms {
        element: ElementId,
        first: ElementId,
        second: ElementId,
    },
    NotConfluent {
        element: ElementId,
        left: ElementId,
        right: ElementId,
    },
    NotReachable {
        from: ElementId,
        to: ElementId,
    },
    InvalidPeak(String),
    InvalidWitness(String),
    MissingCoverage {
        element: ElementId,
    },
}

impl Precondition {
    /// Short machine-friendly tag for the violated hypothesis.
    pub fn tag(&self) -> &'static str {
        match self {
            Precondition::NotStronglyNormalizing { .. } => "SN",
            Precondition::NotWeaklyConfluent { .. } => "WCR",
            Precondition::NotStronglyMinimalizing { .. } => "SM",
            Precondition::NotWeaklyNormalizing { .. } => "WN",
            Precondition::NotUniqueNormalForms { .. } => "UNred",
            Precondition::NotConfluent { .. } => "CR",
            Precondition::NotReachable { .. } => "reachable",
            Precondition::InvalidPeak(_) => "peak",
            Precondition::InvalidWitness(_) => "witness",
            Precondition::MissingCoverage { .. } => "coverage",
        }
    }

    /// Render with element names taken from `ars`.
    pub fn describe(&self, ars: &FiniteArs) -> String {
        let n = |e: &ElementId| ars.name(*e).to_string();
        match self {
            Precondition::NotStronglyNormalizing { element, cycle } => {
                format!("SN fails at {}: reaches cycle {}", n(element), ars.render_cycle(cycle))
            }
            Precondition::NotWeaklyConfluent { element, left, right } => format!(
                "WCR fails at {}: {} <- {} -> {} has no join",
                n(element),
                n(left),
                n(element),
                n(right)
            ),
            Precondition::NotStronglyMinimalizing { element } => {
                format!("SM fails at {}", n(element))
            }
            Precondition::NotWeaklyNormalizing { element } => {
                format!("WN fails at {}: no normal form is reachable", n(element))
            }
            Precondition::NotUniqueNormalForms { element, first, second } => format!(
                "UNred fails at {}: reaches normal forms {} and {}",
                n(element),
                n(first),
                n(second)
            ),
            Precondition::NotConfluent { element, left, right } => format!(
                "CR fails at {}: reducts {} and {} are not joinable",
                n(element),
                n(left),
                n(right)
            ),
            Precondition::NotReachable { from, to } => {
                format!("{} does not reduce to {}", n(from), n(to))
            }
            Precondition::InvalidPeak(m) => format!("invalid peak: {m}"),
            Precondition::InvalidWitness(m) => format!("invalid witness: {m}"),
            Precondition::MissingCoverage { element } => {
                format!("cofinality witness does not cover {}", n(element))
            }
        }
    }
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::NotStronglyNormalizing { element, .. } => {
                write!(f, "SN fails at element #{}", element.index())
            }
            Precondition::NotWeaklyConfluent { element, left, right } => write!(
                f,
                "WCR fails at element #{}: peak (#{}, #{}) has no join",
                element.index(),
                left.index(),
                right.index()
            ),
            Precondition::NotStronglyMinimalizing { element } => {
                write!(f, "SM fails at element #{}", element.index())
            }
            Precondition::NotWeaklyNormalizing { element } => {
                write!(f, "WN fails at element #{}", element.index())
            }
            Precondition::NotUniqueNormalForms { element, first, second } => write!(
                f,
                "UNred fails at element #{}: normal forms #{} and #{}",
                element.index(),
                first.index(),
                second.index()
            ),
            Precondition::NotConfluent { element, left, right } => write!(
                f,
                "CR fails at element #{}: #{} and #{} are not joinable",
                element.index(),
                left.index(),
                right.index()
            ),
            Precondition::NotReachable { from, to } => {
                write!(f, "element #{} does not reduce to #{}", from.index(), to.index())
            }
            Precondition::InvalidPeak(m) => write!(f, "invalid peak: {m}"),
            Precondition::InvalidWitness(m) => write!(f, "invalid witness: {m}"),
            Precondition::MissingCoverage { element } => {
                write!(f, "cofinality witness does not cover element #{}", element.index())
            }
        }
    }
}
