//! Problem instances, file formats, generators and solution verification.
//!
//! Element and vertex ids are 1-based `u32`s. Every instance type is
//! immutable once built; operations that shrink an instance return a new one.

mod format;
mod generate;
mod graph;
mod hypergraph;
mod reduce;
mod tournament;
mod verify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use format::{
    parse_graph, parse_hs, parse_solution, parse_tournament, write_graph, write_hs, write_solution, write_tournament, ParseError,
    ParseErrorKind, MAX_DECLARED_IDS,
};
pub use generate::{
    gen_cluster_noise, gen_partition_tight, gen_random_graph, gen_random_hs, gen_random_tournament, gen_transitive_tournament, GenError,
};
pub use graph::Graph;
pub use hypergraph::HypergraphInstance;
pub use reduce::{cvd_to_hs, fvst_to_hs, vc_to_hs};
pub use tournament::Tournament;
pub use verify::{verify_solution, Obstruction, ProblemRef, Verdict};

/// Element or vertex identifier.
pub type Id = u32;

/// Which problem a solution answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Hs,
    Vc,
    Cvd,
    Fvst,
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProblemKind::Hs => "hs",
            ProblemKind::Vc => "vc",
            ProblemKind::Cvd => "cvd",
            ProblemKind::Fvst => "fvst",
        })
    }
}

/// A set of chosen element ids, tagged with the problem it solves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub kind: ProblemKind,
    pub elements: BTreeSet<Id>,
}

impl Solution {
    pub fn new(kind: ProblemKind, elements: impl IntoIterator<Item = Id>) -> Self {
        Solution {
            kind,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn hs(elements: impl IntoIterator<Item = Id>) -> Self {
        Self::new(ProblemKind::Hs, elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, id: Id) -> bool {
        self.elements.contains(&id)
    }

    /// Same elements under a different problem tag.
    pub fn with_kind(mut self, kind: ProblemKind) -> Self {
        self.kind = kind;
        self
    }
}

/// Errors raised when building an instance from raw parts.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("rank d must be at least 1")]
    ZeroRank,
    #[error("empty set in family")]
    EmptySet,
    #[error("set of size {size} exceeds rank {d}")]
    SetTooLarge { size: usize, d: usize },
    #[error("element {0} is not in the universe")]
    UnknownElement(Id),
    #[error("id 0 is reserved; ids are 1-based")]
    ZeroId,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Id),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Id, Id),
    #[error("duplicate arc between {0} and {1}")]
    DuplicateArc(Id, Id),
    #[error("missing arc between {0} and {1}")]
    MissingArc(Id, Id),
    #[error("universe is not dense 1..n")]
    NotDense,
}
