//! Inconsistency-tolerant reasoning over propositional knowledge bases.
//!
//! A query against a possibly inconsistent base is answered under one of ten
//! consequence relations, five for flat bases ([`flat`]) and five for bases
//! stratified into certainty layers ([`stratified`]). Every verdict carries
//! the arguments found for and against the goal. On top of these sit a
//! biweighted resolution calculus that tracks how conflicted each conclusion
//! is ([`para`]) and a multi-source merging relation ([`merge`]).

pub mod cli;
pub mod error;
pub mod flat;
pub mod kbfile;
pub mod logic;
pub mod merge;
pub mod para;
pub mod stratified;
pub mod subsets;
pub mod weight;

pub use error::{Error, ParseError, Resource, Result};
pub use flat::{FlatReasoner, FlatRelation, Verdict};
pub use logic::{parse_formula, Atom, Clause, Formula, Interpretation, Literal};
pub use merge::{SourceSet, SourceVerdict};
pub use para::{BiWeight, BiWeightedClause, ParaBase};
pub use stratified::{StratifiedKb, StratifiedReasoner, StratifiedRelation, WeightedVerdict};
pub use subsets::{Argument, FlatKb, SubsetRef};
pub use weight::Weight;

/// Resource caps. Exceeding any of them is reported as
/// [`Error::CapExceeded`], never as a negative answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Consistency/entailment checks allowed per subset enumeration.
    pub max_subset_checks: u64,
    /// Largest vocabulary for truth tables and model enumeration.
    pub max_atoms: usize,
    /// Largest clause set produced by CNF distribution.
    pub max_clauses: usize,
    /// Models or prime-implicate candidates materialized at once.
    pub max_models: usize,
    /// Entries in a saturated biweighted base.
    pub max_para_clauses: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subset_checks: 1 << 16,
            max_atoms: 20,
            max_clauses: 4096,
            max_models: 1 << 16,
            max_para_clauses: 10_000,
        }
    }
}
