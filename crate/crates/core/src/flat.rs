//! The five consequence relations over a flat base and the prime-implicate
//! characterization of argumentative consequence.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Resource, Result};
use crate::logic::sat::model_indices;
use crate::logic::simplify::dnf_from_models;
use crate::logic::{Atom, Formula};
use crate::subsets::{Argument, SubsetRef};
use crate::Limits;

pub use crate::subsets::FlatReasoner;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlatRelation {
    /// Entailed by the formulas outside every conflict.
    Free,
    /// Entailed by every maximal consistent subset.
    Universal,
    /// Entailed by every maximum-cardinality consistent subset.
    Lex,
    /// Entailed by some maximal consistent subset.
    Existential,
    /// Some argument for the goal and none for its negation.
    Argumentative,
}

impl FlatRelation {
    pub const ALL: [FlatRelation; 5] = [
        FlatRelation::Free,
        FlatRelation::Universal,
        FlatRelation::Lex,
        FlatRelation::Existential,
        FlatRelation::Argumentative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FlatRelation::Free => "free",
            FlatRelation::Universal => "universal",
            FlatRelation::Lex => "lex",
            FlatRelation::Existential => "exists",
            FlatRelation::Argumentative => "arg",
        }
    }
}

impl fmt::Display for FlatRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlatRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FlatRelation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown flat relation `{s}`"))
    }
}

/// The answer to one query, with the distinguished argument for the goal and
/// for its negation when they exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub relation: FlatRelation,
    pub holds: bool,
    pub arguments_for: Vec<Argument>,
    pub arguments_against: Vec<Argument>,
}

impl<'a> FlatReasoner<'a> {
    /// Lex(Σ): the maximal consistent subsets of largest cardinality.
    pub fn lex_subsets(&self) -> Result<Vec<SubsetRef>> {
        let mcs = self.maximal_consistent_subsets()?;
        let best = mcs.iter().map(SubsetRef::len).max().unwrap_or(0);
        Ok(mcs.into_iter().filter(|s| s.len() == best).collect())
    }

    fn all_entail(&self, sets: &[SubsetRef], goal: &crate::logic::Goal) -> Result<bool> {
        for s in sets {
            if !self.oracle.entails(s.indices(), goal)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The verdict alone, without collecting witnesses.
    pub fn decide(&self, goal: &Formula, relation: FlatRelation) -> Result<bool> {
        let g = self.oracle.goal(goal);
        match relation {
            FlatRelation::Free => self.oracle.entails(self.free_base()?.indices(), &g),
            FlatRelation::Universal => self.all_entail(&self.maximal_consistent_subsets()?, &g),
            FlatRelation::Lex => self.all_entail(&self.lex_subsets()?, &g),
            FlatRelation::Existential => self.some_mcs_entails(&g),
            FlatRelation::Argumentative => {
                let neg = self.oracle.goal(&goal.clone().negate());
                Ok(self.some_mcs_entails(&g)? && !self.some_mcs_entails(&neg)?)
            }
        }
    }

    pub fn holds(&self, goal: &Formula, relation: FlatRelation) -> Result<Verdict> {
        let holds = self.decide(goal, relation)?;
        let arguments_for = self.find_argument(goal)?.into_iter().collect();
        let arguments_against = self
            .find_argument(&goal.clone().negate())?
            .into_iter()
            .collect();
        Ok(Verdict {
            relation,
            holds,
            arguments_for,
            arguments_against,
        })
    }

    /// Model sets (canonical indices over the base vocabulary) of the
    /// argumentative prime implicates.
    ///
    /// Maximal consistent subsets have pairwise disjoint model sets, so the
    /// strongest argumentative consequences are exactly the model sets made
    /// of all models of one subset plus one model of every other subset.
    pub fn prime_implicate_models(&self) -> Result<Vec<BTreeSet<u64>>> {
        let limits: &Limits = self.limits();
        let vocab = self.kb().vocabulary();
        let mcs = self.maximal_consistent_subsets()?;
        let model_sets: Vec<Vec<u64>> = mcs
            .iter()
            .map(|s| model_indices(&self.kb().select(s), &vocab, limits))
            .collect::<Result<_>>()?;

        let mut candidates: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
        for (i, own) in model_sets.iter().enumerate() {
            let others: Vec<&Vec<u64>> = model_sets
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, m)| m)
                .collect();
            let mut picks: Vec<usize> = vec![0; others.len()];
            loop {
                let mut set: BTreeSet<u64> = own.iter().copied().collect();
                set.extend(others.iter().zip(&picks).map(|(m, &p)| m[p]));
                candidates.insert(set);
                if candidates.len() > limits.max_models {
                    return Err(Error::cap(Resource::Models, limits.max_models as u64));
                }
                // Odometer over one model per other subset.
                let Some(pos) = (0..picks.len())
                    .rev()
                    .find(|&p| picks[p] + 1 < others[p].len())
                else {
                    break;
                };
                picks[pos] += 1;
                picks[pos + 1..].fill(0);
            }
        }
        let all: Vec<BTreeSet<u64>> = candidates.into_iter().collect();
        Ok(all
            .iter()
            .filter(|c| !all.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
            .cloned()
            .collect())
    }

    /// The argumentative prime implicates over the base vocabulary, as
    /// simplified disjunctive normal forms.
    pub fn prime_implicates(&self) -> Result<Vec<Formula>> {
        let vocab: Vec<Atom> = self.kb().vocabulary().into_iter().collect();
        Ok(self
            .prime_implicate_models()?
            .iter()
            .map(|m| dnf_from_models(&vocab, m))
            .collect())
    }

    /// Whether `goal` follows classically from some prime implicate. The goal
    /// must only use atoms of the base.
    pub fn in_argumentative_closure(&self, goal: &Formula) -> Result<bool> {
        let vocab = self.kb().vocabulary();
        let outside: Vec<String> = goal
            .vocabulary()
            .into_iter()
            .filter(|a| !vocab.contains(a))
            .map(|a| a.to_string())
            .collect();
        if !outside.is_empty() {
            return Err(Error::VocabularyMismatch { atoms: outside });
        }
        let goal_models: BTreeSet<u64> =
            model_indices(std::slice::from_ref(goal), &vocab, self.limits())?
                .into_iter()
                .collect();
        Ok(self
            .prime_implicate_models()?
            .iter()
            .any(|m| m.is_subset(&goal_models)))
    }
}

pub fn holds(kb: &crate::FlatKb, goal: &Formula, relation: FlatRelation) -> Result<Verdict> {
    FlatReasoner::new(kb).holds(goal, relation)
}

pub fn lex_subsets(kb: &crate::FlatKb) -> Result<Vec<SubsetRef>> {
    FlatReasoner::new(kb).lex_subsets()
}

pub fn prime_implicates(kb: &crate::FlatKb) -> Result<Vec<Formula>> {
    FlatReasoner::new(kb).prime_implicates()
}

pub fn in_argumentative_closure(kb: &crate::FlatKb, goal: &Formula) -> Result<bool> {
    FlatReasoner::new(kb).in_argumentative_closure(goal)
}
