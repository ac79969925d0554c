//! Biweighted clauses `(φ α′ β′)`: α′ is the weight of the best argument for
//! φ and β′ the weight of the best argument for ¬φ in a stratified base. The
//! resolution rule below propagates both, so a conclusion records how much
//! of the base's conflict it inherits.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Resource, Result};
use crate::logic::clause::to_clauses_capped;
use crate::logic::parser::parse_formula_at;
use crate::logic::{Clause, Literal};
use crate::stratified::{StratifiedKb, StratifiedReasoner};
use crate::subsets::SubsetRef;
use crate::weight::Weight;
use crate::Limits;

/// Certainty α′ and counter-certainty β′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiWeight {
    pub certainty: Weight,
    pub counter: Weight,
}

impl BiWeight {
    pub fn new(certainty: Weight, counter: Weight) -> BiWeight {
        BiWeight { certainty, counter }
    }

    /// `min(α′, β′)`: how conflicted the formula is.
    pub fn paraconsistency(self) -> Weight {
        self.certainty.min(self.counter)
    }

    /// At least as certain and at most as conflicted, and not equal.
    pub fn dominates(self, other: BiWeight) -> bool {
        self != other && self.certainty >= other.certainty && self.counter <= other.counter
    }
}

impl fmt::Display for BiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.certainty, self.counter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiWeightedClause {
    pub clause: Clause,
    pub weight: BiWeight,
}

impl BiWeightedClause {
    pub fn new(clause: Clause, certainty: Weight, counter: Weight) -> BiWeightedClause {
        BiWeightedClause {
            clause,
            weight: BiWeight::new(certainty, counter),
        }
    }
}

impl fmt::Display for BiWeightedClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.clause, self.weight)
    }
}

fn parse_entry(text: &str, line: usize) -> Result<BiWeightedClause> {
    let bad = |column: usize, message: &str| {
        Error::Parse(ParseError {
            line,
            column,
            message: message.to_string(),
        })
    };
    let (clause_text, weights) = text
        .split_once('@')
        .ok_or_else(|| bad(1, "expected `<clause> @ <alpha> ; <beta>`"))?;
    let (a, b) = weights.split_once(';').ok_or_else(|| {
        bad(
            clause_text.len() + 2,
            "expected `; <beta>` after the certainty",
        )
    })?;
    let clause = Clause::from_formula(&parse_formula_at(clause_text, line)?)?;
    Ok(BiWeightedClause::new(
        clause,
        a.trim().parse()?,
        b.trim().parse()?,
    ))
}

impl FromStr for BiWeightedClause {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_entry(s, 1)
    }
}

/// The extended resolution rule. With `c1 = (A ∨ B, α′, β′)` and
/// `c2 = (¬B ∨ C, γ′, δ′)` the resolvent is `(A ∨ C, ε′, ρ′)` where
/// `ε′ = min(max(γ′, β′), max(α′, δ′))` and `ρ′ = max(β′, δ′)`.
///
/// The premises must clash on exactly one literal. The resolvent may be a
/// tautology only if they clash on more than one, which is rejected.
pub fn para_resolve(c1: &BiWeightedClause, c2: &BiWeightedClause) -> Result<BiWeightedClause> {
    let clashes: Vec<&Literal> = c1
        .clause
        .literals()
        .filter(|l| c2.clause.contains(&l.complement()))
        .collect();
    let pivot = match clashes.as_slice() {
        [] => return Err(Error::NoClash),
        [one] => (*one).clone(),
        _ => return Err(Error::MultipleClash),
    };
    let neg = pivot.complement();
    let clause = Clause::new(
        c1.clause
            .literals()
            .filter(|l| **l != pivot)
            .chain(c2.clause.literals().filter(|l| **l != neg))
            .cloned(),
    );
    Ok(BiWeightedClause {
        clause,
        weight: combine(c1.weight, c2.weight),
    })
}

fn combine(p: BiWeight, q: BiWeight) -> BiWeight {
    let (alpha, beta, gamma, delta) = (p.certainty, p.counter, q.certainty, q.counter);
    BiWeight::new(gamma.max(beta).min(alpha.max(delta)), beta.max(delta))
}

/// A set of biweighted clauses. Per clause only the Pareto frontier is kept
/// (higher certainty, lower counter-certainty); incomparable biweights are
/// all retained. Each entry remembers the source formulas it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParaBase {
    entries: BTreeMap<Clause, Vec<(BiWeight, SubsetRef)>>,
    source_weights: Vec<BiWeight>,
}

impl ParaBase {
    pub fn new() -> ParaBase {
        ParaBase::default()
    }

    pub fn from_entries<I: IntoIterator<Item = BiWeightedClause>>(entries: I) -> ParaBase {
        let mut pb = ParaBase::new();
        for e in entries {
            pb.insert(e, SubsetRef::empty());
        }
        pb
    }

    /// Replaces each formula `(φ α)` by `(φ α′ β′)` in clause form, or by the
    /// clauses of `¬φ` with `(β′ α′)` when `α′ < β′`; on a tie both are kept.
    /// A clause produced with different biweights by several formulas gets
    /// its biweight recomputed from the arguments for it and its negation.
    pub fn from_stratified(skb: &StratifiedKb, limits: &Limits) -> Result<ParaBase> {
        let r = StratifiedReasoner::with_limits(skb, limits);
        let best = |f: &crate::Formula| -> Result<Weight> {
            Ok(r.find_argument(f)?
                .and_then(|a| a.weight)
                .unwrap_or(Weight::ZERO))
        };
        let mut source_weights = Vec::with_capacity(skb.len());
        let mut produced: BTreeMap<Clause, Vec<(BiWeight, usize)>> = BTreeMap::new();
        for (i, phi) in skb.formulas().iter().enumerate() {
            let neg = phi.clone().negate();
            let w = BiWeight::new(best(phi)?, best(&neg)?);
            source_weights.push(w);
            if w.certainty >= w.counter {
                for c in to_clauses_capped(phi, limits.max_clauses)? {
                    produced.entry(c).or_default().push((w, i));
                }
            }
            if w.certainty <= w.counter {
                let flipped = BiWeight::new(w.counter, w.certainty);
                for c in to_clauses_capped(&neg, limits.max_clauses)? {
                    produced.entry(c).or_default().push((flipped, i));
                }
            }
        }
        let mut pb = ParaBase {
            entries: BTreeMap::new(),
            source_weights,
        };
        for (clause, found) in produced {
            let sources = SubsetRef::new(found.iter().map(|(_, i)| *i));
            let weight = if found.iter().all(|(w, _)| *w == found[0].0) {
                found[0].0
            } else {
                let f = clause.to_formula();
                BiWeight::new(best(&f)?, best(&f.negate())?)
            };
            pb.insert(BiWeightedClause { clause, weight }, sources);
        }
        Ok(pb)
    }

    /// The biweight computed for each source formula, in source order and
    /// before any flip.
    pub fn source_weights(&self) -> &[BiWeight] {
        &self.source_weights
    }

    /// Adds an entry unless an equal or dominating biweight is already held
    /// for its clause; entries it dominates are dropped. Returns whether the
    /// entry was added.
    pub fn insert(&mut self, entry: BiWeightedClause, sources: SubsetRef) -> bool {
        let frontier = self.entries.entry(entry.clause).or_default();
        let w = entry.weight;
        if frontier.iter().any(|(e, _)| *e == w || e.dominates(w)) {
            return false;
        }
        frontier.retain(|(e, _)| !w.dominates(*e));
        frontier.push((w, sources));
        frontier.sort_by_key(|e| std::cmp::Reverse(e.0));
        true
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All entries, by clause and then by decreasing certainty.
    pub fn entries(&self) -> Vec<BiWeightedClause> {
        self.entries
            .iter()
            .flat_map(|(c, ws)| {
                ws.iter().map(move |(w, _)| BiWeightedClause {
                    clause: c.clone(),
                    weight: *w,
                })
            })
            .collect()
    }

    pub fn contains(&self, entry: &BiWeightedClause) -> bool {
        self.get(&entry.clause).contains(&entry.weight)
    }

    /// The frontier of biweights held for `clause`.
    pub fn get(&self, clause: &Clause) -> Vec<BiWeight> {
        self.entries
            .get(clause)
            .map(|ws| ws.iter().map(|(w, _)| *w).collect())
            .unwrap_or_default()
    }

    /// Source formulas an entry was derived from.
    pub fn provenance(&self, entry: &BiWeightedClause) -> Option<&SubsetRef> {
        self.entries
            .get(&entry.clause)?
            .iter()
            .find(|(w, _)| *w == entry.weight)
            .map(|(_, s)| s)
    }

    /// Closes the base under [`para_resolve`], keeping per-clause frontiers.
    /// Tautological resolvents are discarded.
    pub fn saturate(&self, limits: &Limits) -> Result<ParaBase> {
        let mut out = self.clone();
        let mut queue: VecDeque<BiWeightedClause> = out.entries().into();
        while let Some(cur) = queue.pop_front() {
            let Some(cur_sources) = out.provenance(&cur).cloned() else {
                continue;
            };
            for other in out.entries() {
                let Ok(res) = para_resolve(&cur, &other) else {
                    continue;
                };
                if res.clause.is_tautology() {
                    continue;
                }
                let sources = cur_sources.union(out.provenance(&other).expect("listed entry"));
                if out.insert(res.clone(), sources) {
                    if out.len() > limits.max_para_clauses {
                        return Err(Error::cap(
                            Resource::ParaClauses,
                            limits.max_para_clauses as u64,
                        ));
                    }
                    queue.push_back(res);
                }
            }
        }
        Ok(out)
    }

    /// One entry per line as `<clause> @ <alpha> ; <beta>`.
    pub fn to_text(&self) -> String {
        self.entries().iter().map(|e| format!("{e}\n")).collect()
    }

    /// Reads the line format back; `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<ParaBase> {
        let mut pb = ParaBase::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            pb.insert(parse_entry(content, i + 1)?, SubsetRef::empty());
        }
        Ok(pb)
    }
}

pub fn biweight_base(skb: &StratifiedKb) -> Result<ParaBase> {
    ParaBase::from_stratified(skb, &Limits::default())
}

pub fn saturate(pb: &ParaBase) -> Result<ParaBase> {
    pb.saturate(&Limits::default())
}

/// The Pareto-best biweights derivable for `goal`; empty if it never is.
pub fn para_query(skb: &StratifiedKb, goal: &Clause) -> Result<Vec<BiWeight>> {
    para_query_with(skb, goal, &Limits::default())
}

pub fn para_query_with(
    skb: &StratifiedKb,
    goal: &Clause,
    limits: &Limits,
) -> Result<Vec<BiWeight>> {
    Ok(ParaBase::from_stratified(skb, limits)?
        .saturate(limits)?
        .get(goal))
}
