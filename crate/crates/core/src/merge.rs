//! Answering queries against several sources at once. A goal is accepted
//! when some source π-entails it at a weight strictly above every weight at
//! which a source π-entails its negation. Sources are never pooled: each one
//! is queried on its own.

use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::stratified::{StratifiedKb, StratifiedReasoner};
use crate::subsets::Argument;
use crate::weight::Weight;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub kb: StratifiedKb,
}

/// Named sources; at least one, names unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSet {
    sources: Vec<Source>,
}

impl SourceSet {
    pub fn new<S: Into<String>>(sources: Vec<(S, StratifiedKb)>) -> Result<SourceSet> {
        if sources.is_empty() {
            return Err(Error::NoSources);
        }
        let sources: Vec<Source> = sources
            .into_iter()
            .map(|(name, kb)| Source {
                name: name.into(),
                kb,
            })
            .collect();
        for (i, s) in sources.iter().enumerate() {
            if sources[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::DuplicateSource(s.name.clone()));
            }
        }
        Ok(SourceSet { sources })
    }

    pub fn sources(&self) -> &[Source] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }
}

/// What one source says about a goal and its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceAnswer {
    pub source: usize,
    pub for_goal: Option<Argument>,
    pub against_goal: Option<Argument>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceVerdict {
    pub holds: bool,
    /// Best weight at which some source supports the goal.
    pub weight: Option<Weight>,
    /// Source giving that weight (the first one on ties).
    pub winner: Option<usize>,
    /// Strongest source supporting the negation, with its weight.
    pub strongest_against: Option<(usize, Weight)>,
    pub per_source: Vec<SourceAnswer>,
}

fn weight_of(a: &Option<Argument>) -> Option<Weight> {
    a.as_ref().and_then(|a| a.weight)
}

pub fn am_holds(sources: &SourceSet, goal: &Formula) -> Result<SourceVerdict> {
    am_holds_with(sources, goal, &Limits::default())
}

pub fn am_holds_with(
    sources: &SourceSet,
    goal: &Formula,
    limits: &Limits,
) -> Result<SourceVerdict> {
    let neg = goal.clone().negate();
    let mut per_source = Vec::with_capacity(sources.len());
    for (i, s) in sources.sources().iter().enumerate() {
        let r = StratifiedReasoner::with_limits(&s.kb, limits);
        per_source.push(SourceAnswer {
            source: i,
            for_goal: r.pi_argument(goal)?,
            against_goal: r.pi_argument(&neg)?,
        });
    }
    let best = |pick: fn(&SourceAnswer) -> Option<Weight>| {
        per_source
            .iter()
            .filter_map(|a| pick(a).map(|w| (a.source, w)))
            .fold(None, |acc: Option<(usize, Weight)>, (i, w)| match acc {
                Some((_, b)) if b >= w => acc,
                _ => Some((i, w)),
            })
    };
    let support = best(|a| weight_of(&a.for_goal));
    let strongest_against = best(|a| weight_of(&a.against_goal));
    let holds = match (support, strongest_against) {
        (Some((_, alpha)), Some((_, beta))) => alpha > beta,
        (Some(_), None) => true,
        (None, _) => false,
    };
    Ok(SourceVerdict {
        holds,
        weight: support.map(|(_, w)| w),
        winner: support.map(|(i, _)| i),
        strongest_against,
        per_source,
    })
}

/// The queries accepted by [`am_holds`], each with its weight. The result
/// can be jointly inconsistent.
pub fn merged_base(sources: &SourceSet, queries: &[Formula]) -> Result<Vec<(Formula, Weight)>> {
    merged_base_with(sources, queries, &Limits::default())
}

pub fn merged_base_with(
    sources: &SourceSet,
    queries: &[Formula],
    limits: &Limits,
) -> Result<Vec<(Formula, Weight)>> {
    if queries.is_empty() {
        return Err(Error::NoQueries);
    }
    let mut out = Vec::new();
    for q in queries {
        let v = am_holds_with(sources, q, limits)?;
        if v.holds {
            out.push((q.clone(), v.weight.expect("accepted goals have a weight")));
        }
    }
    Ok(out)
}
