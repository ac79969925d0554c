use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Resource, Result};
use crate::logic::formula::{Atom, Formula};

/// Canonical order: by atom name, negative before positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: true,
        }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: false,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    pub fn to_formula(&self) -> Formula {
        let f = Formula::Atom(self.atom.clone());
        if self.positive {
            f
        } else {
            f.negate()
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A disjunction of literals. The empty clause is a contradiction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(BTreeSet<Literal>);

impl Clause {
    pub fn new<I: IntoIterator<Item = Literal>>(lits: I) -> Clause {
        Clause(lits.into_iter().collect())
    }

    pub fn empty() -> Clause {
        Clause(BTreeSet::new())
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.0.contains(lit)
    }

    /// Contains some atom with both polarities.
    pub fn is_tautology(&self) -> bool {
        self.0
            .iter()
            .any(|l| l.positive && self.0.contains(&Literal::neg(l.atom.clone())))
    }

    pub fn is_subset(&self, other: &Clause) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_formula(&self) -> Formula {
        if self.0.is_empty() {
            return Formula::False;
        }
        Formula::disjunction(self.0.iter().map(Literal::to_formula))
    }

    /// Reads a clause back from a formula that is a literal, a disjunction of
    /// literals, or `false`.
    pub fn from_formula(f: &Formula) -> Result<Clause> {
        fn walk(f: &Formula, out: &mut BTreeSet<Literal>) -> bool {
            match f {
                Formula::False => true,
                Formula::Atom(a) => {
                    out.insert(Literal::pos(a.clone()));
                    true
                }
                Formula::Not(inner) => match inner.as_ref() {
                    Formula::Atom(a) => {
                        out.insert(Literal::neg(a.clone()));
                        true
                    }
                    _ => false,
                },
                Formula::Or(l, r) => walk(l, out) && walk(r, out),
                _ => false,
            }
        }
        let mut lits = BTreeSet::new();
        if walk(f, &mut lits) {
            Ok(Clause(lits))
        } else {
            Err(Error::NotAClause(f.to_string()))
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("false");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Negation normal form over literals, `&` and `|`.
#[derive(Debug, Clone)]
enum Nnf {
    True,
    False,
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    match (f, positive) {
        (Formula::True, true) | (Formula::False, false) => Nnf::True,
        (Formula::True, false) | (Formula::False, true) => Nnf::False,
        (Formula::Atom(a), p) => Nnf::Lit(Literal {
            atom: a.clone(),
            positive: p,
        }),
        (Formula::Not(inner), p) => nnf(inner, !p),
        (Formula::And(l, r), true) | (Formula::Or(l, r), false) => {
            Nnf::And(vec![nnf(l, positive), nnf(r, positive)])
        }
        (Formula::Or(l, r), true) | (Formula::And(l, r), false) => {
            Nnf::Or(vec![nnf(l, positive), nnf(r, positive)])
        }
        (Formula::Implies(l, r), true) => Nnf::Or(vec![nnf(l, false), nnf(r, true)]),
        (Formula::Implies(l, r), false) => Nnf::And(vec![nnf(l, true), nnf(r, false)]),
        (Formula::Iff(l, r), true) => Nnf::And(vec![
            Nnf::Or(vec![nnf(l, false), nnf(r, true)]),
            Nnf::Or(vec![nnf(l, true), nnf(r, false)]),
        ]),
        (Formula::Iff(l, r), false) => Nnf::And(vec![
            Nnf::Or(vec![nnf(l, true), nnf(r, true)]),
            Nnf::Or(vec![nnf(l, false), nnf(r, false)]),
        ]),
    }
}

/// Clause set with tautologies dropped and subsumed clauses removed.
fn normalize(clauses: Vec<Clause>) -> Vec<Clause> {
    let mut set: Vec<Clause> = clauses
        .into_iter()
        .filter(|c| !c.is_tautology())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    set.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Clause> = Vec::with_capacity(set.len());
    for c in set {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

fn cnf(node: &Nnf, cap: usize) -> Result<Vec<Clause>> {
    let out = match node {
        Nnf::True => Vec::new(),
        Nnf::False => vec![Clause::empty()],
        Nnf::Lit(l) => vec![Clause::new([l.clone()])],
        Nnf::And(parts) => {
            let mut all = Vec::new();
            for p in parts {
                all.extend(cnf(p, cap)?);
                if all.len() > cap {
                    return Err(Error::cap(Resource::Clauses, cap as u64));
                }
            }
            normalize(all)
        }
        Nnf::Or(parts) => {
            let mut acc = vec![Clause::empty()];
            for p in parts {
                let rhs = cnf(p, cap)?;
                if acc.len().saturating_mul(rhs.len()) > cap {
                    return Err(Error::cap(Resource::Clauses, cap as u64));
                }
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for a in &acc {
                    for b in &rhs {
                        next.push(Clause(a.0.union(&b.0).cloned().collect()));
                    }
                }
                acc = normalize(next);
            }
            acc
        }
    };
    if out.len() > cap {
        return Err(Error::cap(Resource::Clauses, cap as u64));
    }
    Ok(out)
}

/// Converts `f` to an equivalent clause set by negation normal form and
/// distribution. No auxiliary atoms are introduced. Tautological clauses are
/// dropped, so `true` yields the empty set and `false` the empty clause.
pub fn to_clauses_capped(f: &Formula, max_clauses: usize) -> Result<Vec<Clause>> {
    cnf(&nnf(f, true), max_clauses)
}

pub fn to_clauses(f: &Formula) -> Result<Vec<Clause>> {
    to_clauses_capped(f, crate::Limits::default().max_clauses)
}
