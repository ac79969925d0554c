//! Layered knowledge bases `B1 ∪ … ∪ Bn` with certainty weights
//! `1 = α1 > α2 > … > αn > 0`, and the five consequence relations over them.
//!
//! Formulas are addressed by a global index that runs through the layers in
//! order, so a prefix of layers is always a prefix of indices.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{Formula, Goal, Oracle};
use crate::subsets::{
    check_duplicates, maximal_extensions, minimal_inconsistent, minimal_supports, Argument, Budget,
    FlatKb, SubsetRef,
};
use crate::weight::Weight;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub weight: Weight,
    pub formulas: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedKb {
    layers: Vec<Layer>,
    formulas: Vec<Formula>,
    layer_of: Vec<usize>,
    /// `ends[k]` = number of formulas in the first `k` layers.
    ends: Vec<usize>,
}

impl StratifiedKb {
    /// Layers from most to least certain. The first weight must be exactly 1
    /// and weights must decrease strictly.
    pub fn new(layers: Vec<Layer>) -> Result<StratifiedKb> {
        if let Some(first) = layers.first() {
            if first.weight != Weight::ONE {
                return Err(Error::InvalidLayers(format!(
                    "the first layer must have weight 1, found {}",
                    first.weight
                )));
            }
        }
        Self::new_source(layers)
    }

    /// Like [`StratifiedKb::new`] but the top weight may be below 1, as for
    /// sources whose certainty is judged relative to other sources.
    pub fn new_source(layers: Vec<Layer>) -> Result<StratifiedKb> {
        for (i, l) in layers.iter().enumerate() {
            if l.weight.is_zero() {
                return Err(Error::InvalidLayers(format!(
                    "layer {} has weight 0",
                    i + 1
                )));
            }
            if i > 0 && l.weight >= layers[i - 1].weight {
                return Err(Error::InvalidLayers(format!(
                    "layer weights must strictly decrease, found {} after {}",
                    l.weight,
                    layers[i - 1].weight
                )));
            }
        }
        let formulas: Vec<Formula> = layers
            .iter()
            .flat_map(|l| l.formulas.iter().cloned())
            .collect();
        check_duplicates(&formulas)?;
        let layer_of = layers
            .iter()
            .enumerate()
            .flat_map(|(i, l)| std::iter::repeat_n(i, l.formulas.len()))
            .collect();
        let mut ends = vec![0];
        for l in &layers {
            ends.push(ends.last().unwrap() + l.formulas.len());
        }
        Ok(StratifiedKb {
            layers,
            formulas,
            layer_of,
            ends,
        })
    }

    /// Layers in order with default weights `1 - (i-1)/n`, rounded down to
    /// the weight resolution.
    pub fn from_unweighted(layers: Vec<Vec<Formula>>) -> Result<StratifiedKb> {
        let n = layers.len() as u64;
        let layers = layers
            .into_iter()
            .enumerate()
            .map(|(i, formulas)| Layer {
                weight: Weight::from_ratio_floor(n - i as u64, n).expect("i < n"),
                formulas,
            })
            .collect();
        StratifiedKb::new(layers)
    }

    /// A flat base as a single layer of weight 1.
    pub fn from_flat(kb: &FlatKb) -> StratifiedKb {
        StratifiedKb::new(vec![Layer {
            weight: Weight::ONE,
            formulas: kb.formulas().to_vec(),
        }])
        .expect("a flat base is a valid single layer")
    }

    pub fn parse(text: &str) -> Result<StratifiedKb> {
        crate::kbfile::parse_stratified(text)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// All formulas, layer by layer.
    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// Zero-based layer of a global index.
    pub fn layer_of(&self, index: usize) -> usize {
        self.layer_of[index]
    }

    pub fn weight_of(&self, index: usize) -> Weight {
        self.layers[self.layer_of[index]].weight
    }

    /// Weight of the first `k` layers taken together; 1 for the empty prefix.
    pub fn prefix_weight(&self, k: usize) -> Weight {
        if k == 0 {
            Weight::ONE
        } else {
            self.layers[k - 1].weight
        }
    }

    /// Indices of the first `k` layers.
    pub fn prefix(&self, k: usize) -> SubsetRef {
        SubsetRef::new(0..self.ends[k])
    }

    pub fn layer_indices(&self, layer: usize) -> SubsetRef {
        SubsetRef::new(self.ends[layer]..self.ends[layer + 1])
    }

    pub fn to_flat(&self) -> FlatKb {
        FlatKb::new(self.formulas.clone()).expect("duplicates rejected at construction")
    }

    /// Minimum member weight; 1 for the empty set.
    pub fn support_weight(&self, support: &SubsetRef) -> Weight {
        support
            .iter()
            .map(|i| self.weight_of(i))
            .min()
            .unwrap_or(Weight::ONE)
    }

    /// Number of members of `subset` in each layer.
    pub fn layer_counts(&self, subset: &SubsetRef) -> Vec<usize> {
        let mut counts = vec![0; self.layers.len()];
        for i in subset.iter() {
            counts[self.layer_of[i]] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StratifiedRelation {
    /// Possibilistic entailment from the longest consistent prefix.
    Pi,
    /// Entailed by that prefix plus the free formulas it drowned.
    PiFree,
    /// Entailed by every preferred subbase.
    Preferred,
    /// Entailed by every lexicographically best preferred subbase.
    LexStratified,
    /// Best argument for the goal strictly outweighs every counterargument.
    Argumentative,
}

impl StratifiedRelation {
    pub const ALL: [StratifiedRelation; 5] = [
        StratifiedRelation::Pi,
        StratifiedRelation::PiFree,
        StratifiedRelation::Preferred,
        StratifiedRelation::LexStratified,
        StratifiedRelation::Argumentative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StratifiedRelation::Pi => "pi",
            StratifiedRelation::PiFree => "pifree",
            StratifiedRelation::Preferred => "pref",
            StratifiedRelation::LexStratified => "lexs",
            StratifiedRelation::Argumentative => "args",
        }
    }
}

impl fmt::Display for StratifiedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StratifiedRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StratifiedRelation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown stratified relation `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedVerdict {
    pub relation: StratifiedRelation,
    pub holds: bool,
    pub weight: Option<Weight>,
    pub arguments_for: Vec<Argument>,
    pub arguments_against: Vec<Argument>,
}

/// Queries over one stratified base, with per-base memoization.
pub struct StratifiedReasoner<'a> {
    skb: &'a StratifiedKb,
    oracle: Oracle<'a>,
    prefix_mcs: Vec<OnceLock<Result<Vec<SubsetRef>>>>,
    mus: OnceLock<Result<Vec<SubsetRef>>>,
    pref: OnceLock<Result<Vec<SubsetRef>>>,
    pi_level: OnceLock<Result<usize>>,
}

impl<'a> StratifiedReasoner<'a> {
    pub fn new(skb: &'a StratifiedKb) -> StratifiedReasoner<'a> {
        Self::with_limits(skb, &Limits::default())
    }

    pub fn with_limits(skb: &'a StratifiedKb, limits: &Limits) -> StratifiedReasoner<'a> {
        StratifiedReasoner {
            skb,
            oracle: Oracle::new(skb.formulas(), limits),
            prefix_mcs: (0..=skb.num_layers()).map(|_| OnceLock::new()).collect(),
            mus: OnceLock::new(),
            pref: OnceLock::new(),
            pi_level: OnceLock::new(),
        }
    }

    pub fn kb(&self) -> &'a StratifiedKb {
        self.skb
    }

    pub fn limits(&self) -> &Limits {
        self.oracle.limits()
    }

    fn budget(&self) -> Budget {
        Budget::new(self.limits())
    }

    /// Number of layers in the longest consistent prefix.
    pub fn pi_level(&self) -> Result<usize> {
        self.pi_level
            .get_or_init(|| {
                let mut level = 0;
                while level < self.skb.num_layers()
                    && self
                        .oracle
                        .consistent(self.skb.prefix(level + 1).indices())?
                {
                    level += 1;
                }
                Ok(level)
            })
            .clone()
    }

    /// π(Σ): the longest consistent prefix of layers.
    pub fn pi_base(&self) -> Result<SubsetRef> {
        Ok(self.skb.prefix(self.pi_level()?))
    }

    /// Weight of the first consistent prefix entailing `goal`.
    pub fn pi_entails(&self, goal: &Formula) -> Result<Option<Weight>> {
        let g = self.oracle.goal(goal);
        for k in 0..=self.pi_level()? {
            if self.oracle.entails(self.skb.prefix(k).indices(), &g)? {
                return Ok(Some(self.skb.prefix_weight(k)));
            }
        }
        Ok(None)
    }

    /// 0 when consistent, else the weight of the layer whose addition first
    /// makes the prefix inconsistent.
    pub fn inconsistency_level(&self) -> Result<Weight> {
        let level = self.pi_level()?;
        Ok(if level == self.skb.num_layers() {
            Weight::ZERO
        } else {
            self.skb.layers()[level].weight
        })
    }

    pub fn minimal_inconsistent_subsets(&self) -> Result<Vec<SubsetRef>> {
        self.mus
            .get_or_init(|| {
                minimal_inconsistent(
                    &self.oracle,
                    self.skb.to_flat().full().indices(),
                    &mut self.budget(),
                )
            })
            .clone()
    }

    /// Free formulas of the flattened base.
    pub fn free_base(&self) -> Result<SubsetRef> {
        let mus = self.minimal_inconsistent_subsets()?;
        Ok(SubsetRef::new(mus.iter().flat_map(|s| s.iter())).complement(self.skb.len()))
    }

    /// IFree(Σ): free formulas that π(Σ) left out.
    pub fn ifree(&self) -> Result<SubsetRef> {
        let outside = self.pi_base()?.complement(self.skb.len());
        Ok(self.free_base()?.intersection(&outside))
    }

    /// Subbases built by taking, layer after layer, a maximal consistent
    /// extension of what the previous layers kept.
    pub fn preferred_subbases(&self) -> Result<Vec<SubsetRef>> {
        self.pref
            .get_or_init(|| {
                let mut budget = self.budget();
                let mut partial = vec![SubsetRef::empty()];
                for layer in 0..self.skb.num_layers() {
                    let soft = self.skb.layer_indices(layer);
                    let mut next = Vec::new();
                    for p in &partial {
                        next.extend(maximal_extensions(
                            &self.oracle,
                            p.indices(),
                            soft.indices(),
                            &mut budget,
                        )?);
                    }
                    next.sort();
                    next.dedup();
                    partial = next;
                }
                Ok(partial)
            })
            .clone()
    }

    /// Preferred subbases whose per-layer cardinalities are lexicographically
    /// greatest.
    pub fn lex_subbases(&self) -> Result<Vec<SubsetRef>> {
        let pref = self.preferred_subbases()?;
        let best = pref.iter().map(|s| self.skb.layer_counts(s)).max();
        Ok(pref
            .into_iter()
            .filter(|s| Some(self.skb.layer_counts(s)) == best)
            .collect())
    }

    fn mcs_of_prefix(&self, k: usize) -> Result<Vec<SubsetRef>> {
        self.prefix_mcs[k]
            .get_or_init(|| {
                maximal_extensions(
                    &self.oracle,
                    &[],
                    self.skb.prefix(k).indices(),
                    &mut self.budget(),
                )
            })
            .clone()
    }

    /// Whether some consistent subset of the first `k` layers entails the goal.
    fn argument_within(&self, k: usize, goal: &Goal) -> Result<bool> {
        for s in self.mcs_of_prefix(k)? {
            if self.oracle.entails(s.indices(), goal)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn support_within(&self, k: usize, goal: &Formula, g: &Goal) -> Result<Argument> {
        let support = minimal_supports(
            &self.oracle,
            self.skb.prefix(k).indices(),
            g,
            true,
            &mut self.budget(),
        )?
        .into_iter()
        .next()
        .expect("an argument exists within this prefix");
        Ok(Argument {
            support,
            conclusion: goal.clone(),
            weight: Some(self.skb.prefix_weight(k)),
        })
    }

    /// The strongest argument for `goal`: its weight is the largest, over
    /// minimal consistent supports, of the smallest member weight.
    pub fn find_argument(&self, goal: &Formula) -> Result<Option<Argument>> {
        let g = self.oracle.goal(goal);
        for k in 0..=self.skb.num_layers() {
            if self.argument_within(k, &g)? {
                return self.support_within(k, goal, &g).map(Some);
            }
        }
        Ok(None)
    }

    /// A minimal support for `goal` inside the shortest consistent prefix
    /// that entails it, weighted like [`StratifiedReasoner::pi_entails`].
    pub fn pi_argument(&self, goal: &Formula) -> Result<Option<Argument>> {
        let g = self.oracle.goal(goal);
        for k in 0..=self.pi_level()? {
            if self.oracle.entails(self.skb.prefix(k).indices(), &g)? {
                return self.support_within(k, goal, &g).map(Some);
            }
        }
        Ok(None)
    }

    fn all_entail(&self, sets: &[SubsetRef], g: &Goal) -> Result<bool> {
        for s in sets {
            if !self.oracle.entails(s.indices(), g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// π-weight of `goal` computed inside a consistent `subset`.
    fn weight_within(&self, subset: &SubsetRef, g: &Goal) -> Result<Option<Weight>> {
        for k in 0..=self.skb.num_layers() {
            let part = subset.intersection(&self.skb.prefix(k));
            if self.oracle.entails(part.indices(), g)? {
                return Ok(Some(self.skb.prefix_weight(k)));
            }
        }
        Ok(None)
    }

    /// The verdict and its weight without collecting witnesses.
    pub fn decide(
        &self,
        goal: &Formula,
        relation: StratifiedRelation,
    ) -> Result<(bool, Option<Weight>)> {
        let g = self.oracle.goal(goal);
        Ok(match relation {
            StratifiedRelation::Pi => {
                let w = self.pi_entails(goal)?;
                (w.is_some(), w)
            }
            StratifiedRelation::PiFree => {
                let base = self.pi_base()?.union(&self.ifree()?);
                let w = self.weight_within(&base, &g)?;
                (w.is_some(), w)
            }
            StratifiedRelation::Preferred => {
                (self.all_entail(&self.preferred_subbases()?, &g)?, None)
            }
            StratifiedRelation::LexStratified => {
                (self.all_entail(&self.lex_subbases()?, &g)?, None)
            }
            StratifiedRelation::Argumentative => {
                let neg = self.oracle.goal(&goal.clone().negate());
                let mut alpha = None;
                let mut beta = None;
                for k in 0..=self.skb.num_layers() {
                    if alpha.is_none() && self.argument_within(k, &g)? {
                        alpha = Some(self.skb.prefix_weight(k));
                    }
                    if beta.is_none() && self.argument_within(k, &neg)? {
                        beta = Some(self.skb.prefix_weight(k));
                    }
                    if alpha.is_some() && beta.is_some() {
                        break;
                    }
                }
                match (alpha, beta) {
                    (Some(a), Some(b)) if a > b => (true, Some(a)),
                    (Some(a), None) => (true, Some(a)),
                    (a, _) => (false, a),
                }
            }
        })
    }

    pub fn holds(&self, goal: &Formula, relation: StratifiedRelation) -> Result<WeightedVerdict> {
        let (holds, weight) = self.decide(goal, relation)?;
        Ok(WeightedVerdict {
            relation,
            holds,
            weight,
            arguments_for: self.find_argument(goal)?.into_iter().collect(),
            arguments_against: self
                .find_argument(&goal.clone().negate())?
                .into_iter()
                .collect(),
        })
    }

    /// Argumentative consequence decided by growing the base one layer at a
    /// time and stopping as soon as an argument for the goal or its negation
    /// appears: for only the goal it holds at that layer's weight, otherwise
    /// it fails.
    pub fn decide_by_layers(&self, goal: &Formula) -> Result<WeightedVerdict> {
        let neg_formula = goal.clone().negate();
        let g = self.oracle.goal(goal);
        let neg = self.oracle.goal(&neg_formula);
        for k in 0..=self.skb.num_layers() {
            let yes = self.argument_within(k, &g)?;
            let no = self.argument_within(k, &neg)?;
            if !yes && !no {
                continue;
            }
            let arguments_for = if yes {
                vec![self.support_within(k, goal, &g)?]
            } else {
                Vec::new()
            };
            let arguments_against = if no {
                vec![self.support_within(k, &neg_formula, &neg)?]
            } else {
                Vec::new()
            };
            return Ok(WeightedVerdict {
                relation: StratifiedRelation::Argumentative,
                holds: yes && !no,
                weight: yes.then(|| self.skb.prefix_weight(k)),
                arguments_for,
                arguments_against,
            });
        }
        Ok(WeightedVerdict {
            relation: StratifiedRelation::Argumentative,
            holds: false,
            weight: None,
            arguments_for: Vec::new(),
            arguments_against: Vec::new(),
        })
    }
}

pub fn pi_base(skb: &StratifiedKb) -> Result<SubsetRef> {
    StratifiedReasoner::new(skb).pi_base()
}

pub fn pi_entails(skb: &StratifiedKb, goal: &Formula) -> Result<Option<Weight>> {
    StratifiedReasoner::new(skb).pi_entails(goal)
}

pub fn inconsistency_level(skb: &StratifiedKb) -> Result<Weight> {
    StratifiedReasoner::new(skb).inconsistency_level()
}

pub fn ifree(skb: &StratifiedKb) -> Result<SubsetRef> {
    StratifiedReasoner::new(skb).ifree()
}

pub fn preferred_subbases(skb: &StratifiedKb) -> Result<Vec<SubsetRef>> {
    StratifiedReasoner::new(skb).preferred_subbases()
}

pub fn lex_subbases(skb: &StratifiedKb) -> Result<Vec<SubsetRef>> {
    StratifiedReasoner::new(skb).lex_subbases()
}

pub fn find_argument_stratified(skb: &StratifiedKb, goal: &Formula) -> Result<Option<Argument>> {
    StratifiedReasoner::new(skb).find_argument(goal)
}

pub fn holds_stratified(
    skb: &StratifiedKb,
    goal: &Formula,
    relation: StratifiedRelation,
) -> Result<WeightedVerdict> {
    StratifiedReasoner::new(skb).holds(goal, relation)
}

pub fn decide_by_layers(skb: &StratifiedKb, goal: &Formula) -> Result<WeightedVerdict> {
    StratifiedReasoner::new(skb).decide_by_layers(goal)
}
