//! Combinatorial structure of a flat base: maximal consistent subsets,
//! minimal inconsistent subsets, the conflict set `Inc` and its complement
//! `Free`, and minimal arguments.
//!
//! All results are index sets into the base. Enumerations are exhaustive
//! searches pruned by the consistency oracle; each one counts its oracle
//! calls against [`Limits::max_subset_checks`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Resource, Result};
use crate::logic::{Atom, Formula, Goal, Oracle};
use crate::weight::Weight;
use crate::Limits;

/// A flat knowledge base: a set of formulas addressed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatKb {
    formulas: Vec<Formula>,
}

impl FlatKb {
    /// Rejects structurally identical entries.
    pub fn new(formulas: Vec<Formula>) -> Result<FlatKb> {
        check_duplicates(&formulas)?;
        Ok(FlatKb { formulas })
    }

    /// Parses one formula per non-blank line.
    pub fn parse(text: &str) -> Result<FlatKb> {
        crate::kbfile::parse_flat(text)
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Formula> {
        self.formulas.get(index)
    }

    pub fn vocabulary(&self) -> BTreeSet<Atom> {
        let mut v = BTreeSet::new();
        for f in &self.formulas {
            f.collect_atoms(&mut v);
        }
        v
    }

    pub fn full(&self) -> SubsetRef {
        SubsetRef((0..self.len()).collect())
    }

    pub fn select(&self, subset: &SubsetRef) -> Vec<Formula> {
        subset.iter().map(|i| self.formulas[i].clone()).collect()
    }
}

pub(crate) fn check_duplicates(formulas: &[Formula]) -> Result<()> {
    for (j, f) in formulas.iter().enumerate() {
        if let Some(i) = formulas[..j].iter().position(|g| g == f) {
            return Err(Error::DuplicateFormula {
                formula: f.to_string(),
                first: i,
                second: j,
            });
        }
    }
    Ok(())
}

/// Sorted, duplicate-free index set into a base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct SubsetRef(Vec<usize>);

impl SubsetRef {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> SubsetRef {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        SubsetRef(set.into_iter().collect())
    }

    pub fn empty() -> SubsetRef {
        SubsetRef(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &SubsetRef) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Indices in `0..n` not in this set.
    pub fn complement(&self, n: usize) -> SubsetRef {
        SubsetRef((0..n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn union(&self, other: &SubsetRef) -> SubsetRef {
        SubsetRef::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &SubsetRef) -> SubsetRef {
        SubsetRef(self.iter().filter(|&i| other.contains(i)).collect())
    }
}

impl fmt::Display for SubsetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A minimal consistent support for a conclusion. `weight` is set only for
/// stratified bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    pub support: SubsetRef,
    pub conclusion: Formula,
    pub weight: Option<Weight>,
}

/// Counts oracle calls for one enumeration.
pub(crate) struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new(limits: &Limits) -> Budget {
        Budget {
            used: 0,
            limit: limits.max_subset_checks,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::cap(Resource::SubsetChecks, self.limit));
        }
        Ok(())
    }
}

fn consistent(oracle: &Oracle<'_>, set: &[usize], budget: &mut Budget) -> Result<bool> {
    budget.tick()?;
    oracle.consistent(set)
}

fn with(set: &[usize], x: usize) -> Vec<usize> {
    let mut v = set.to_vec();
    let at = v.partition_point(|&i| i < x);
    v.insert(at, x);
    v
}

/// All `hard ∪ F` with `F ⊆ soft` maximal such that the union is consistent.
/// Empty if `hard` itself is inconsistent. Sorted.
pub(crate) fn maximal_extensions(
    oracle: &Oracle<'_>,
    hard: &[usize],
    soft: &[usize],
    budget: &mut Budget,
) -> Result<Vec<SubsetRef>> {
    fn rec(
        oracle: &Oracle<'_>,
        soft: &[usize],
        at: usize,
        current: Vec<usize>,
        budget: &mut Budget,
        out: &mut Vec<SubsetRef>,
    ) -> Result<()> {
        if at == soft.len() {
            for &s in soft {
                if !current.contains(&s) && consistent(oracle, &with(&current, s), budget)? {
                    return Ok(());
                }
            }
            out.push(SubsetRef::new(current));
            return Ok(());
        }
        let x = soft[at];
        let plus = with(&current, x);
        let can_include = consistent(oracle, &plus, budget)?;
        if can_include {
            rec(oracle, soft, at + 1, plus, budget, out)?;
        }
        // Excluding x only leads to a maximal set if x clashes with
        // something still reachable.
        let mut reach = current.clone();
        for &y in &soft[at..] {
            reach = with(&reach, y);
        }
        if !can_include || !consistent(oracle, &reach, budget)? {
            rec(oracle, soft, at + 1, current, budget, out)?;
        }
        Ok(())
    }

    let hard = SubsetRef::new(hard.iter().copied());
    if !consistent(oracle, hard.indices(), budget)? {
        return Ok(Vec::new());
    }
    let soft: Vec<usize> = SubsetRef::new(soft.iter().copied())
        .iter()
        .filter(|&i| !hard.contains(i))
        .collect();
    let mut out = Vec::new();
    rec(oracle, &soft, 0, hard.0.clone(), budget, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimal inconsistent subsets of `universe`, sorted.
pub(crate) fn minimal_inconsistent(
    oracle: &Oracle<'_>,
    universe: &[usize],
    budget: &mut Budget,
) -> Result<Vec<SubsetRef>> {
    fn rec(
        oracle: &Oracle<'_>,
        universe: &[usize],
        from: usize,
        current: &[usize],
        budget: &mut Budget,
        out: &mut Vec<SubsetRef>,
    ) -> Result<()> {
        for k in from..universe.len() {
            let next = with(current, universe[k]);
            if consistent(oracle, &next, budget)? {
                rec(oracle, universe, k + 1, &next, budget, out)?;
                continue;
            }
            // `current` is consistent; `next` is minimal iff dropping any
            // other member restores consistency.
            let mut minimal = true;
            for &y in current {
                let without: Vec<usize> = next.iter().copied().filter(|&i| i != y).collect();
                if !consistent(oracle, &without, budget)? {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                out.push(SubsetRef::new(next));
            }
        }
        Ok(())
    }

    let universe: Vec<usize> = SubsetRef::new(universe.iter().copied()).0;
    let mut out = Vec::new();
    rec(oracle, &universe, 0, &[], budget, &mut out)?;
    out.sort();
    Ok(out)
}

/// Lexicographic k-combinations of `items`.
fn combinations(
    items: &[usize],
    k: usize,
    mut visit: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    let n = items.len();
    if k > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = vec![0; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        if !visit(&buf)? {
            return Ok(());
        }
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return Ok(());
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Minimal consistent subsets of `universe` entailing the goal, ordered by
/// size then lexicographically. With `first_only`, stops at the first one.
pub(crate) fn minimal_supports(
    oracle: &Oracle<'_>,
    universe: &[usize],
    goal: &Goal,
    first_only: bool,
    budget: &mut Budget,
) -> Result<Vec<SubsetRef>> {
    let universe: Vec<usize> = SubsetRef::new(universe.iter().copied()).0;
    let mut found: Vec<SubsetRef> = Vec::new();
    let mut inconsistent: HashSet<Vec<usize>> = HashSet::new();
    for k in 0..=universe.len() {
        let mut stop = false;
        combinations(&universe, k, |cand| {
            let cand_ref = SubsetRef(cand.to_vec());
            if found.iter().any(|s| s.is_subset(&cand_ref)) {
                return Ok(true);
            }
            // Supersets of an inconsistent (k-1)-subset are inconsistent.
            if k > 1
                && (0..k).any(|skip| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    inconsistent.contains(&sub)
                })
            {
                inconsistent.insert(cand.to_vec());
                return Ok(true);
            }
            budget.tick()?;
            if !oracle.entails(cand, goal)? {
                return Ok(true);
            }
            if !consistent(oracle, cand, budget)? {
                inconsistent.insert(cand.to_vec());
                return Ok(true);
            }
            found.push(cand_ref);
            if first_only {
                stop = true;
                return Ok(false);
            }
            Ok(true)
        })?;
        if stop {
            break;
        }
    }
    Ok(found)
}

/// Queries over one flat base. Expensive enumerations are computed once
/// and memoized; the reasoner can be shared across threads.
pub struct FlatReasoner<'a> {
    kb: &'a FlatKb,
    pub(crate) oracle: Oracle<'a>,
    mcs: OnceLock<Result<Vec<SubsetRef>>>,
    mus: OnceLock<Result<Vec<SubsetRef>>>,
}

impl<'a> FlatReasoner<'a> {
    pub fn new(kb: &'a FlatKb) -> FlatReasoner<'a> {
        Self::with_limits(kb, &Limits::default())
    }

    pub fn with_limits(kb: &'a FlatKb, limits: &Limits) -> FlatReasoner<'a> {
        FlatReasoner {
            kb,
            oracle: Oracle::new(kb.formulas(), limits),
            mcs: OnceLock::new(),
            mus: OnceLock::new(),
        }
    }

    pub fn kb(&self) -> &'a FlatKb {
        self.kb
    }

    pub fn limits(&self) -> &Limits {
        self.oracle.limits()
    }

    pub(crate) fn budget(&self) -> Budget {
        Budget::new(self.limits())
    }

    pub fn is_consistent(&self) -> Result<bool> {
        self.oracle.consistent(self.kb.full().indices())
    }

    /// MC(Σ): consistent subsets that no further formula of the base can
    /// join. The whole base when it is consistent.
    pub fn maximal_consistent_subsets(&self) -> Result<Vec<SubsetRef>> {
        self.mcs
            .get_or_init(|| {
                let all = self.kb.full();
                maximal_extensions(&self.oracle, &[], all.indices(), &mut self.budget())
            })
            .clone()
    }

    /// Inconsistent subsets all of whose proper subsets are consistent.
    pub fn minimal_inconsistent_subsets(&self) -> Result<Vec<SubsetRef>> {
        self.mus
            .get_or_init(|| {
                minimal_inconsistent(&self.oracle, self.kb.full().indices(), &mut self.budget())
            })
            .clone()
    }

    /// Inc(Σ): formulas involved in some minimal conflict.
    pub fn inc_set(&self) -> Result<SubsetRef> {
        let mus = self.minimal_inconsistent_subsets()?;
        Ok(SubsetRef::new(mus.iter().flat_map(|s| s.iter())))
    }

    /// Free(Σ) computed as the complement of Inc(Σ).
    pub fn free_base(&self) -> Result<SubsetRef> {
        Ok(self.inc_set()?.complement(self.kb.len()))
    }

    /// Free(Σ) computed as the intersection of MC(Σ).
    pub fn free_base_via_intersection(&self) -> Result<SubsetRef> {
        let mcs = self.maximal_consistent_subsets()?;
        Ok(mcs
            .iter()
            .fold(self.kb.full(), |acc, s| acc.intersection(s)))
    }

    /// Whether some maximal consistent subset entails the goal.
    pub(crate) fn some_mcs_entails(&self, goal: &Goal) -> Result<bool> {
        for s in self.maximal_consistent_subsets()? {
            if self.oracle.entails(s.indices(), goal)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The smallest (then lexicographically least) minimal argument for
    /// `goal`, if any argument exists.
    pub fn find_argument(&self, goal: &Formula) -> Result<Option<Argument>> {
        let g = self.oracle.goal(goal);
        if !self.some_mcs_entails(&g)? {
            return Ok(None);
        }
        let found = minimal_supports(
            &self.oracle,
            self.kb.full().indices(),
            &g,
            true,
            &mut self.budget(),
        )?;
        Ok(found.into_iter().next().map(|support| Argument {
            support,
            conclusion: goal.clone(),
            weight: None,
        }))
    }

    /// Every minimal argument for `goal`, smallest first.
    pub fn enumerate_arguments(&self, goal: &Formula) -> Result<Vec<Argument>> {
        let g = self.oracle.goal(goal);
        if !self.some_mcs_entails(&g)? {
            return Ok(Vec::new());
        }
        let found = minimal_supports(
            &self.oracle,
            self.kb.full().indices(),
            &g,
            false,
            &mut self.budget(),
        )?;
        Ok(found
            .into_iter()
            .map(|support| Argument {
                support,
                conclusion: goal.clone(),
                weight: None,
            })
            .collect())
    }
}

pub fn maximal_consistent_subsets(kb: &FlatKb) -> Result<Vec<SubsetRef>> {
    FlatReasoner::new(kb).maximal_consistent_subsets()
}

pub fn minimal_inconsistent_subsets(kb: &FlatKb) -> Result<Vec<SubsetRef>> {
    FlatReasoner::new(kb).minimal_inconsistent_subsets()
}

pub fn inc_set(kb: &FlatKb) -> Result<SubsetRef> {
    FlatReasoner::new(kb).inc_set()
}

pub fn free_base(kb: &FlatKb) -> Result<SubsetRef> {
    FlatReasoner::new(kb).free_base()
}

pub fn find_argument(kb: &FlatKb, goal: &Formula) -> Result<Option<Argument>> {
    FlatReasoner::new(kb).find_argument(goal)
}

pub fn enumerate_arguments(kb: &FlatKb, goal: &Formula) -> Result<Vec<Argument>> {
    FlatReasoner::new(kb).enumerate_arguments(goal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn kb(items: &[&str]) -> FlatKb {
        FlatKb::new(items.iter().map(|s| parse_formula(s).unwrap()).collect()).unwrap()
    }

    fn sets(v: Vec<SubsetRef>) -> Vec<Vec<usize>> {
        v.into_iter().map(|s| s.0).collect()
    }

    fn section22() -> FlatKb {
        kb(&["A", "!B | !A", "B", "!C | !A", "C", "!A | D"])
    }

    #[test]
    fn mcs_examples() {
        let k = kb(&["!A | B", "A | C", "A", "!A"]);
        assert_eq!(
            sets(maximal_consistent_subsets(&k).unwrap()),
            [vec![0, 1, 2], vec![0, 1, 3]]
        );
        let k = kb(&["A", "B"]);
        assert_eq!(sets(maximal_consistent_subsets(&k).unwrap()), [vec![0, 1]]);
        let k = kb(&[]);
        assert_eq!(
            sets(maximal_consistent_subsets(&k).unwrap()),
            [Vec::<usize>::new()]
        );
    }

    #[test]
    fn mcs_of_six_formula_example() {
        // !A, !B, A, B, !C | !D, !A | B
        let k = kb(&["!A", "!B", "A", "B", "!C | !D", "!A | B"]);
        let expected = [
            vec![0, 1, 4, 5],
            vec![0, 3, 4, 5],
            vec![1, 2, 4],
            vec![2, 3, 4, 5],
        ];
        assert_eq!(sets(maximal_consistent_subsets(&k).unwrap()), expected);
    }

    #[test]
    fn mus_examples() {
        assert_eq!(
            sets(minimal_inconsistent_subsets(&kb(&["A", "!A", "B"])).unwrap()),
            [vec![0, 1]]
        );
        let penguin = kb(&["p", "!p | b", "!p | !f", "!b | f", "!b | w"]);
        assert_eq!(
            sets(minimal_inconsistent_subsets(&penguin).unwrap()),
            [vec![0, 1, 2, 3]]
        );
        assert!(minimal_inconsistent_subsets(&kb(&["A", "B"]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn inc_and_free() {
        let k = kb(&["!A | !B", "A", "B", "C"]);
        assert_eq!(inc_set(&k).unwrap().0, [0, 1, 2]);
        assert_eq!(free_base(&k).unwrap().0, [3]);
        let r = FlatReasoner::new(&k);
        assert_eq!(r.free_base_via_intersection().unwrap().0, [3]);
        assert_eq!(free_base(&kb(&["A", "B"])).unwrap().0, [0, 1]);
        assert!(free_base(&kb(&["A", "!A"])).unwrap().is_empty());
        assert!(inc_set(&kb(&["A", "B"])).unwrap().is_empty());
    }

    #[test]
    fn unsatisfiable_member_is_its_own_conflict() {
        let k = kb(&["A & !A", "B"]);
        assert_eq!(sets(minimal_inconsistent_subsets(&k).unwrap()), [vec![0]]);
        assert_eq!(sets(maximal_consistent_subsets(&k).unwrap()), [vec![1]]);
    }

    #[test]
    fn find_argument_examples() {
        let g = |s| parse_formula(s).unwrap();
        let a = find_argument(&section22(), &g("D")).unwrap().unwrap();
        assert_eq!(a.support.0, [0, 5]);
        assert!(find_argument(&kb(&["A", "!A"]), &g("B")).unwrap().is_none());
        assert_eq!(
            find_argument(&kb(&["A"]), &g("A"))
                .unwrap()
                .unwrap()
                .support
                .0,
            [0]
        );
        // Tautologies are supported by the empty set.
        assert!(find_argument(&kb(&["A", "!A"]), &g("B | !B"))
            .unwrap()
            .unwrap()
            .support
            .is_empty());
    }

    #[test]
    fn enumerate_arguments_examples() {
        let g = |s| parse_formula(s).unwrap();
        let args = enumerate_arguments(&kb(&["A", "B"]), &g("A")).unwrap();
        assert_eq!(args.len(), 1);
        assert_eq!(args[0].support.0, [0]);
        let args: Vec<Vec<usize>> = enumerate_arguments(&section22(), &g("!A"))
            .unwrap()
            .into_iter()
            .map(|a| a.support.0)
            .collect();
        assert!(args.contains(&vec![1, 2]));
        assert!(args.contains(&vec![3, 4]));
        let args = enumerate_arguments(&kb(&["A", "!A"]), &g("A")).unwrap();
        assert_eq!(args.len(), 1);
        assert_eq!(args[0].support.0, [0]);
    }

    #[test]
    fn duplicates_rejected() {
        let err = FlatKb::new(vec![
            parse_formula("A").unwrap(),
            parse_formula("B").unwrap(),
            parse_formula("A").unwrap(),
        ])
        .unwrap_err();
        assert!(matches!(
            err,
            Error::DuplicateFormula {
                first: 0,
                second: 2,
                ..
            }
        ));
    }

    #[test]
    fn subset_check_cap() {
        let k = kb(&["A", "!A", "B", "!B", "C", "!C", "D", "!D"]);
        let limits = Limits {
            max_subset_checks: 20,
            ..Limits::default()
        };
        let r = FlatReasoner::with_limits(&k, &limits);
        assert!(r.maximal_consistent_subsets().unwrap_err().is_cap());
        let r = FlatReasoner::new(&k);
        assert_eq!(r.maximal_consistent_subsets().unwrap().len(), 16);
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        combinations(&[3, 5, 7, 9], 2, |c| {
            seen.push(c.to_vec());
            Ok(true)
        })
        .unwrap();
        assert_eq!(seen, [[3, 5], [3, 7], [3, 9], [5, 7], [5, 9], [7, 9]]);
        let mut count = 0;
        combinations(&[1, 2], 0, |c| {
            assert!(c.is_empty());
            count += 1;
            Ok(true)
        })
        .unwrap();
        assert_eq!(count, 1);
    }
}
