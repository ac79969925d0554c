use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

/// A propositional variable name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Panics if `name` is not an identifier; use the parser for untrusted text.
    pub fn new(name: &str) -> Atom {
        assert!(is_identifier(name), "invalid atom name {name:?}");
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn vocabulary(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluates under `value`, which must cover the formula's vocabulary.
    pub fn eval_with<F: Fn(&Atom) -> bool + Copy>(&self, value: F) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => value(a),
            Formula::Not(f) => !f.eval_with(value),
            Formula::And(l, r) => l.eval_with(value) && r.eval_with(value),
            Formula::Or(l, r) => l.eval_with(value) || r.eval_with(value),
            Formula::Implies(l, r) => !l.eval_with(value) || r.eval_with(value),
            Formula::Iff(l, r) => l.eval_with(value) == r.eval_with(value),
        }
    }

    /// `None` if some atom of the formula is unassigned.
    pub fn eval(&self, interp: &Interpretation) -> Option<bool> {
        if self.vocabulary().iter().any(|a| interp.value(a).is_none()) {
            return None;
        }
        Some(self.eval_with(|a| interp.value(a).unwrap_or(false)))
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Formula {
        Formula::Atom(a)
    }
}

/// Prints in the input grammar with the fewest parentheses that re-parse to
/// the same tree: `&`, `|` and `<->` associate to the left, `->` to the right.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, node: &Formula, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({node})")
            } else {
                write!(f, "{node}")
            }
        }
        let (l, r, op, right_assoc) = match self {
            Formula::True => return f.write_str("true"),
            Formula::False => return f.write_str("false"),
            Formula::Atom(a) => return write!(f, "{a}"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                return child(f, inner, inner.precedence() < 5);
            }
            Formula::And(l, r) => (l, r, " & ", false),
            Formula::Or(l, r) => (l, r, " | ", false),
            Formula::Implies(l, r) => (l, r, " -> ", true),
            Formula::Iff(l, r) => (l, r, " <-> ", false),
        };
        let p = self.precedence();
        let (lp, rp) = (l.precedence(), r.precedence());
        let left_paren = lp < p || (lp == p && right_assoc);
        let right_paren = rp < p || (rp == p && !right_assoc);
        child(f, l, left_paren)?;
        f.write_str(op)?;
        child(f, r, right_paren)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A total assignment over a fixed vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interpretation(BTreeMap<Atom, bool>);

impl Interpretation {
    pub fn new(values: BTreeMap<Atom, bool>) -> Interpretation {
        Interpretation(values)
    }

    /// The `index`-th assignment of `vocab` in canonical order: the first
    /// atom is the most significant position and false sorts before true.
    pub fn from_index(vocab: &[Atom], index: u64) -> Interpretation {
        let n = vocab.len();
        Interpretation(
            vocab
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), index >> (n - 1 - i) & 1 == 1))
                .collect(),
        )
    }

    pub fn value(&self, atom: &Atom) -> Option<bool> {
        self.0.get(atom).copied()
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = &Atom> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, bool)> {
        self.0.iter().map(|(a, v)| (a, *v))
    }

    /// The conjunction of literals this assignment satisfies.
    pub fn to_term(&self) -> Formula {
        Formula::conjunction(self.0.iter().map(|(a, &v)| {
            let f = Formula::Atom(a.clone());
            if v {
                f
            } else {
                f.negate()
            }
        }))
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, v) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if !v {
                f.write_str("!")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vocabulary_collects_each_atom_once() {
        let f = Formula::atom("B").and(Formula::atom("A").or(Formula::atom("B").negate()));
        let v: Vec<_> = f.vocabulary().into_iter().map(|a| a.to_string()).collect();
        assert_eq!(v, ["A", "B"]);
    }

    #[test]
    fn display_uses_minimal_parentheses() {
        let a = || Formula::atom("A");
        let b = || Formula::atom("B");
        let c = || Formula::atom("C");
        assert_eq!(a().negate().or(b()).to_string(), "!A | B");
        assert_eq!(a().implies(b().and(c())).to_string(), "A -> B & C");
        assert_eq!(a().and(b()).negate().to_string(), "!(A & B)");
        assert_eq!(a().or(b()).and(c()).to_string(), "(A | B) & C");
        assert_eq!(a().implies(b()).implies(c()).to_string(), "(A -> B) -> C");
        assert_eq!(a().implies(b().implies(c())).to_string(), "A -> B -> C");
        assert_eq!(a().and(b().and(c())).to_string(), "A & (B & C)");
        assert_eq!(a().negate().negate().to_string(), "!!A");
    }

    #[test]
    fn canonical_interpretation_order() {
        let vocab = [Atom::new("A"), Atom::new("B")];
        let shown: Vec<_> = (0..4)
            .map(|i| Interpretation::from_index(&vocab, i).to_string())
            .collect();
        assert_eq!(shown, ["!A !B", "!A B", "A !B", "A B"]);
    }

    #[test]
    fn eval_requires_full_assignment() {
        let vocab = [Atom::new("A")];
        let i = Interpretation::from_index(&vocab, 1);
        assert_eq!(Formula::atom("A").eval(&i), Some(true));
        assert_eq!(Formula::atom("B").eval(&i), None);
        assert_eq!(Formula::True.eval(&i), Some(true));
    }

    #[test]
    fn identifier_rules() {
        assert!(is_identifier("_x1"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("true"));
    }
}
