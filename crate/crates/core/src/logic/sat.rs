//! Satisfiability and entailment.
//!
//! [`Oracle`] compiles a fixed list of formulas to clauses once and then
//! answers consistency and entailment questions about index subsets of that
//! list with a small DPLL search. When a formula's clause form would exceed
//! the clause cap, the affected checks fall back to a truth table.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::error::{Error, Resource, Result};
use crate::logic::clause::{to_clauses_capped, Clause};
use crate::logic::formula::{Atom, Formula, Interpretation};
use crate::Limits;

type IntClause = Vec<i32>;

fn encode(clauses: &[Clause], ids: &impl Fn(&Atom) -> u32) -> Vec<IntClause> {
    clauses
        .iter()
        .map(|c| {
            c.literals()
                .map(|l| {
                    let v = ids(&l.atom) as i32 + 1;
                    if l.positive {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect()
}

fn dpll(clauses: &[&[i32]], assign: &mut [i8]) -> bool {
    let value = |assign: &[i8], lit: i32| -> i8 {
        let v = assign[(lit.unsigned_abs() - 1) as usize];
        if lit > 0 {
            v
        } else {
            -v
        }
    };
    loop {
        let mut changed = false;
        for c in clauses {
            let mut open = None;
            let mut n_open = 0;
            let mut sat = false;
            for &lit in c.iter() {
                match value(assign, lit) {
                    1 => {
                        sat = true;
                        break;
                    }
                    0 => {
                        n_open += 1;
                        open = Some(lit);
                    }
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            match (n_open, open) {
                (0, _) => return false,
                (1, Some(lit)) => {
                    assign[(lit.unsigned_abs() - 1) as usize] = if lit > 0 { 1 } else { -1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = clauses.iter().find_map(|c| {
        if c.iter().any(|&l| value(assign, l) == 1) {
            return None;
        }
        c.iter().copied().find(|&l| value(assign, l) == 0)
    });
    let Some(lit) = branch else {
        return true;
    };
    let var = (lit.unsigned_abs() - 1) as usize;
    for v in [1i8, -1] {
        let mut next = assign.to_vec();
        next[var] = v;
        if dpll(clauses, &mut next) {
            return true;
        }
    }
    false
}

fn solve(clauses: &[&[i32]], nvars: usize) -> bool {
    let mut assign = vec![0i8; nvars];
    dpll(clauses, &mut assign)
}

pub mod truth_table {
    //! Exhaustive evaluation over every interpretation of the joint
    //! vocabulary. Exponential, used as a fallback and as a test oracle.

    use super::*;

    fn vocabulary<'a, I: IntoIterator<Item = &'a Formula>>(formulas: I) -> Vec<Atom> {
        let mut v = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut v);
        }
        v.into_iter().collect()
    }

    fn check_atoms(n: usize, max_atoms: usize) -> Result<()> {
        if n > max_atoms || n >= 63 {
            return Err(Error::cap(Resource::Atoms, max_atoms as u64));
        }
        Ok(())
    }

    /// Calls `visit` with the index of every model of `formulas` over
    /// `vocab`, in canonical order, until it breaks.
    pub fn for_each_model(
        formulas: &[&Formula],
        vocab: &[Atom],
        max_atoms: usize,
        mut visit: impl FnMut(u64) -> Result<ControlFlow<()>>,
    ) -> Result<()> {
        check_atoms(vocab.len(), max_atoms)?;
        let n = vocab.len();
        let pos: BTreeMap<&Atom, usize> = vocab
            .iter()
            .enumerate()
            .map(|(i, a)| (a, n - 1 - i))
            .collect();
        for f in formulas {
            if let Some(a) = f.vocabulary().into_iter().find(|a| !pos.contains_key(a)) {
                return Err(Error::VocabularyMismatch {
                    atoms: vec![a.to_string()],
                });
            }
        }
        for index in 0..(1u64 << n) {
            let val = |a: &Atom| index >> pos[a] & 1 == 1;
            if formulas.iter().all(|f| f.eval_with(val)) && visit(index)?.is_break() {
                break;
            }
        }
        Ok(())
    }

    pub fn is_satisfiable(formulas: &[&Formula], max_atoms: usize) -> Result<bool> {
        let vocab = vocabulary(formulas.iter().copied());
        let mut found = false;
        for_each_model(formulas, &vocab, max_atoms, |_| {
            found = true;
            Ok(ControlFlow::Break(()))
        })?;
        Ok(found)
    }

    pub fn entails(formulas: &[&Formula], goal: &Formula, max_atoms: usize) -> Result<bool> {
        let neg = goal.clone().negate();
        let mut all: Vec<&Formula> = formulas.to_vec();
        all.push(&neg);
        Ok(!is_satisfiable(&all, max_atoms)?)
    }
}

/// A goal compiled against an [`Oracle`]: the clause form of its negation.
#[derive(Debug, Clone)]
pub struct Goal {
    negation: Formula,
    clauses: Option<Vec<IntClause>>,
    nvars: usize,
}

impl Goal {
    pub fn negation(&self) -> &Formula {
        &self.negation
    }
}

/// Consistency and entailment over index subsets of a fixed formula list.
/// Immutable after construction, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct Oracle<'a> {
    formulas: &'a [Formula],
    limits: Limits,
    ids: BTreeMap<Atom, u32>,
    cnf: Vec<Option<Vec<IntClause>>>,
}

impl<'a> Oracle<'a> {
    pub fn new(formulas: &'a [Formula], limits: &Limits) -> Oracle<'a> {
        let mut vocab = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut vocab);
        }
        let ids: BTreeMap<Atom, u32> = vocab
            .into_iter()
            .enumerate()
            .map(|(i, a)| (a, i as u32))
            .collect();
        let cnf = formulas
            .iter()
            .map(|f| {
                to_clauses_capped(f, limits.max_clauses)
                    .ok()
                    .map(|cs| encode(&cs, &|a| ids[a]))
            })
            .collect();
        Oracle {
            formulas,
            limits: limits.clone(),
            ids,
            cnf,
        }
    }

    pub fn formulas(&self) -> &'a [Formula] {
        self.formulas
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn goal(&self, goal: &Formula) -> Goal {
        let negation = goal.clone().negate();
        let mut extra: BTreeMap<Atom, u32> = BTreeMap::new();
        let base = self.ids.len() as u32;
        for a in negation.vocabulary() {
            if !self.ids.contains_key(&a) {
                let next = base + extra.len() as u32;
                extra.insert(a, next);
            }
        }
        let clauses = to_clauses_capped(&negation, self.limits.max_clauses)
            .ok()
            .map(|cs| {
                encode(&cs, &|a| {
                    self.ids.get(a).copied().unwrap_or_else(|| extra[a])
                })
            });
        Goal {
            negation,
            clauses,
            nvars: self.ids.len() + extra.len(),
        }
    }

    fn check(&self, subset: &[usize], goal: Option<&Goal>) -> Result<bool> {
        let mut clauses: Vec<&[i32]> = Vec::new();
        let mut fallback = false;
        for &i in subset {
            match &self.cnf[i] {
                Some(cs) => clauses.extend(cs.iter().map(Vec::as_slice)),
                None => fallback = true,
            }
        }
        if let Some(g) = goal {
            match &g.clauses {
                Some(cs) => clauses.extend(cs.iter().map(Vec::as_slice)),
                None => fallback = true,
            }
        }
        if fallback {
            let mut fs: Vec<&Formula> = subset.iter().map(|&i| &self.formulas[i]).collect();
            if let Some(g) = goal {
                fs.push(&g.negation);
            }
            return truth_table::is_satisfiable(&fs, self.limits.max_atoms);
        }
        let nvars = goal.map_or(self.ids.len(), |g| g.nvars);
        Ok(solve(&clauses, nvars))
    }

    /// Whether the formulas at `subset` are jointly satisfiable.
    pub fn consistent(&self, subset: &[usize]) -> Result<bool> {
        self.check(subset, None)
    }

    /// Whether the formulas at `subset` classically entail the goal.
    pub fn entails(&self, subset: &[usize], goal: &Goal) -> Result<bool> {
        Ok(!self.check(subset, Some(goal))?)
    }
}

pub fn is_satisfiable_with(formulas: &[Formula], limits: &Limits) -> Result<bool> {
    let all: Vec<usize> = (0..formulas.len()).collect();
    Oracle::new(formulas, limits).consistent(&all)
}

/// True iff some interpretation satisfies every formula.
pub fn is_satisfiable(formulas: &[Formula]) -> Result<bool> {
    is_satisfiable_with(formulas, &Limits::default())
}

pub fn entails_with(formulas: &[Formula], goal: &Formula, limits: &Limits) -> Result<bool> {
    let all: Vec<usize> = (0..formulas.len()).collect();
    let oracle = Oracle::new(formulas, limits);
    let g = oracle.goal(goal);
    oracle.entails(&all, &g)
}

/// True iff `formulas ∪ {¬goal}` is unsatisfiable.
pub fn entails(formulas: &[Formula], goal: &Formula) -> Result<bool> {
    entails_with(formulas, goal, &Limits::default())
}

fn check_vocabulary(formulas: &[Formula], vocab: &BTreeSet<Atom>) -> Result<()> {
    let mut missing = BTreeSet::new();
    for f in formulas {
        missing.extend(f.vocabulary().into_iter().filter(|a| !vocab.contains(a)));
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::VocabularyMismatch {
            atoms: missing.iter().map(ToString::to_string).collect(),
        })
    }
}

/// Canonical indices (see [`Interpretation::from_index`]) of the models of
/// `formulas` over `vocab`.
pub fn model_indices(
    formulas: &[Formula],
    vocab: &BTreeSet<Atom>,
    limits: &Limits,
) -> Result<Vec<u64>> {
    check_vocabulary(formulas, vocab)?;
    let vocab: Vec<Atom> = vocab.iter().cloned().collect();
    let refs: Vec<&Formula> = formulas.iter().collect();
    let mut out = Vec::new();
    truth_table::for_each_model(&refs, &vocab, limits.max_atoms, |i| {
        if out.len() >= limits.max_models {
            return Err(Error::cap(Resource::Models, limits.max_models as u64));
        }
        out.push(i);
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

pub fn enumerate_models_with(
    formulas: &[Formula],
    vocab: &BTreeSet<Atom>,
    limits: &Limits,
) -> Result<Vec<Interpretation>> {
    let order: Vec<Atom> = vocab.iter().cloned().collect();
    Ok(model_indices(formulas, vocab, limits)?
        .into_iter()
        .map(|i| Interpretation::from_index(&order, i))
        .collect())
}

/// Every satisfying interpretation over `vocab`, in canonical order.
pub fn enumerate_models(
    formulas: &[Formula],
    vocab: &BTreeSet<Atom>,
) -> Result<Vec<Interpretation>> {
    enumerate_models_with(formulas, vocab, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_formula;

    fn fs(items: &[&str]) -> Vec<Formula> {
        items.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    fn vocab(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(n)).collect()
    }

    #[test]
    fn satisfiability_basics() {
        assert!(!is_satisfiable(&fs(&["A", "!A"])).unwrap());
        assert!(is_satisfiable(&[]).unwrap());
        assert!(is_satisfiable(&fs(&["!A | B", "A | C", "A"])).unwrap());
        assert!(!is_satisfiable(&fs(&["false"])).unwrap());
    }

    #[test]
    fn entailment_basics() {
        let g = |s| parse_formula(s).unwrap();
        assert!(entails(&fs(&["A", "!A | B"]), &g("B")).unwrap());
        assert!(entails(&fs(&["A", "!A"]), &g("C")).unwrap());
        assert!(entails(&fs(&["!A | B", "A | C", "!A"]), &g("C")).unwrap());
        assert!(!entails(&fs(&["A | B"]), &g("A")).unwrap());
        assert!(entails(&[], &g("A | !A")).unwrap());
    }

    #[test]
    fn models_in_canonical_order() {
        let shown = |f: &[&str], v: &[&str]| -> Vec<String> {
            enumerate_models(&fs(f), &vocab(v))
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect()
        };
        assert_eq!(
            shown(&["!A | B", "A | C", "A"], &["A", "B", "C"]),
            ["A B !C", "A B C"]
        );
        assert_eq!(
            shown(&["!A | B", "A | B", "A", "C"], &["A", "B", "C"]),
            ["A B C"]
        );
        assert_eq!(shown(&[], &["A"]), ["!A", "A"]);
    }

    #[test]
    fn model_enumeration_rejects_small_vocabulary() {
        let err = enumerate_models(&fs(&["A & B"]), &vocab(&["A"])).unwrap_err();
        assert_eq!(
            err,
            Error::VocabularyMismatch {
                atoms: vec!["B".into()]
            }
        );
    }

    #[test]
    fn atom_cap_is_distinct_from_unsat() {
        let limits = Limits {
            max_atoms: 2,
            ..Limits::default()
        };
        let err = enumerate_models_with(&fs(&["A | B | C"]), &vocab(&["A", "B", "C"]), &limits)
            .unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn clause_cap_falls_back_to_truth_table() {
        let limits = Limits {
            max_clauses: 2,
            ..Limits::default()
        };
        let f = fs(&["(A & B) | (C & D)", "!A | !C"]);
        assert!(is_satisfiable_with(&f, &limits).unwrap());
        let goal = parse_formula("B | D").unwrap();
        assert!(entails_with(&f, &goal, &limits).unwrap());
        let tight = Limits {
            max_clauses: 2,
            max_atoms: 3,
            ..Limits::default()
        };
        assert!(is_satisfiable_with(&f, &tight).unwrap_err().is_cap());
    }

    #[test]
    fn oracle_goal_with_fresh_atoms() {
        let base = fs(&["A", "!A | B"]);
        let o = Oracle::new(&base, &Limits::default());
        let g = o.goal(&parse_formula("B | Z").unwrap());
        assert!(o.entails(&[0, 1], &g).unwrap());
        assert!(!o.entails(&[0], &g).unwrap());
        let z = o.goal(&parse_formula("Z").unwrap());
        assert!(!o.entails(&[0, 1], &z).unwrap());
    }
}
