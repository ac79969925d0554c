//! Power-set oracles and seeded generators shared by the integration tests.
//! Nothing here calls the library's solver or subset search: formulas are
//! evaluated by direct recursion and every definition is checked over all
//! subsets and all interpretations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use argkb::stratified::Layer;
use argkb::{Atom, FlatKb, Formula, StratifiedKb, SubsetRef, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn f(s: &str) -> Formula {
    argkb::parse_formula(s).unwrap()
}

pub fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

pub fn eval(formula: &Formula, val: &BTreeMap<Atom, bool>) -> bool {
    match formula {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => val[a],
        Formula::Not(x) => !eval(x, val),
        Formula::And(a, b) => eval(a, val) && eval(b, val),
        Formula::Or(a, b) => eval(a, val) || eval(b, val),
        Formula::Implies(a, b) => !eval(a, val) || eval(b, val),
        Formula::Iff(a, b) => eval(a, val) == eval(b, val),
    }
}

fn atoms_of(formula: &Formula, out: &mut BTreeSet<Atom>) {
    match formula {
        Formula::True | Formula::False => {}
        Formula::Atom(a) => {
            out.insert(a.clone());
        }
        Formula::Not(x) => atoms_of(x, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            atoms_of(a, out);
            atoms_of(b, out);
        }
    }
}

/// Every interpretation of a vocabulary, as the set of formulas of a base
/// it satisfies. Subsets of the base are bitmasks.
pub struct Brute {
    pub formulas: Vec<Formula>,
    pub atoms: Vec<Atom>,
    vals: Vec<BTreeMap<Atom, bool>>,
    sat_masks: Vec<u32>,
    consistent: Vec<bool>,
}

impl Brute {
    /// `extra` are formulas (goals) whose atoms must also be interpreted.
    pub fn new(formulas: &[Formula], extra: &[Formula]) -> Brute {
        assert!(formulas.len() <= 12);
        let mut vocab = BTreeSet::new();
        for x in formulas.iter().chain(extra) {
            atoms_of(x, &mut vocab);
        }
        let atoms: Vec<Atom> = vocab.into_iter().collect();
        let n = atoms.len();
        let vals: Vec<BTreeMap<Atom, bool>> = (0..1u64 << n)
            .map(|i| {
                atoms
                    .iter()
                    .enumerate()
                    .map(|(j, a)| (a.clone(), (i >> (n - 1 - j)) & 1 == 1))
                    .collect()
            })
            .collect();
        let sat_masks: Vec<u32> = vals
            .iter()
            .map(|v| {
                formulas
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| eval(x, v))
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let m = formulas.len();
        let consistent = (0..1u32 << m)
            .map(|s| sat_masks.iter().any(|&mask| mask & s == s))
            .collect();
        Brute {
            formulas: formulas.to_vec(),
            atoms,
            vals,
            sat_masks,
            consistent,
        }
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    pub fn consistent(&self, s: u32) -> bool {
        self.consistent[s as usize]
    }

    /// Classical entailment by the subset `s`; the goal must only use
    /// interpreted atoms.
    pub fn entails(&self, s: u32, goal: &Formula) -> bool {
        self.vals
            .iter()
            .zip(&self.sat_masks)
            .all(|(v, &mask)| mask & s != s || eval(goal, v))
    }

    pub fn mcs(&self) -> Vec<u32> {
        (0..=self.full())
            .filter(|&s| {
                self.consistent(s)
                    && (0..self.len()).all(|i| s & 1 << i != 0 || !self.consistent(s | 1 << i))
            })
            .collect()
    }

    pub fn mus(&self) -> Vec<u32> {
        (0..=self.full())
            .filter(|&s| {
                !self.consistent(s)
                    && (0..self.len()).all(|i| s & 1 << i == 0 || self.consistent(s & !(1 << i)))
            })
            .collect()
    }

    pub fn free(&self) -> u32 {
        self.full() & !self.mus().iter().fold(0, |a, s| a | s)
    }

    /// Minimal consistent subsets entailing the goal.
    pub fn supports(&self, goal: &Formula) -> Vec<u32> {
        let ok: Vec<u32> = (0..=self.full())
            .filter(|&s| self.consistent(s) && self.entails(s, goal))
            .collect();
        ok.iter()
            .copied()
            .filter(|&s| !ok.iter().any(|&t| t != s && t & s == t))
            .collect()
    }

    pub fn free_holds(&self, g: &Formula) -> bool {
        self.entails(self.free(), g)
    }

    pub fn universal_holds(&self, g: &Formula) -> bool {
        self.mcs().iter().all(|&s| self.entails(s, g))
    }

    pub fn lex_holds(&self, g: &Formula) -> bool {
        let mcs = self.mcs();
        let best = mcs.iter().map(|s| s.count_ones()).max().unwrap_or(0);
        mcs.iter()
            .filter(|s| s.count_ones() == best)
            .all(|&s| self.entails(s, g))
    }

    pub fn existential_holds(&self, g: &Formula) -> bool {
        self.mcs().iter().any(|&s| self.entails(s, g))
    }

    /// Some argument for the goal and none for its negation, straight from
    /// the definition of an argument.
    pub fn argumentative_holds(&self, g: &Formula) -> bool {
        !self.supports(g).is_empty() && self.supports(&g.clone().negate()).is_empty()
    }

    /// Indices of the interpretations (in canonical order) satisfying `f`.
    pub fn models(&self, f: &Formula) -> BTreeSet<u64> {
        self.vals
            .iter()
            .enumerate()
            .filter(|(_, v)| eval(f, v))
            .map(|(i, _)| i as u64)
            .collect()
    }

    pub fn models_of_subset(&self, s: u32) -> BTreeSet<u64> {
        self.sat_masks
            .iter()
            .enumerate()
            .filter(|(_, &m)| m & s == s)
            .map(|(i, _)| i as u64)
            .collect()
    }
}

pub fn to_ref(s: u32) -> SubsetRef {
    SubsetRef::new((0..32).filter(|i| s & 1 << i != 0))
}

pub fn from_ref(s: &SubsetRef) -> u32 {
    s.iter().fold(0, |m, i| m | 1 << i)
}

/// Stratified definitions over a [`Brute`] of the flattened base.
pub struct BruteStrat {
    pub brute: Brute,
    /// Zero-based layer of each formula.
    pub layer: Vec<usize>,
    pub weights: Vec<Weight>,
}

impl BruteStrat {
    pub fn new(skb: &StratifiedKb, extra: &[Formula]) -> BruteStrat {
        BruteStrat {
            brute: Brute::new(skb.formulas(), extra),
            layer: (0..skb.len()).map(|i| skb.layer_of(i)).collect(),
            weights: skb.layers().iter().map(|l| l.weight).collect(),
        }
    }

    pub fn layers(&self) -> usize {
        self.weights.len()
    }

    pub fn prefix(&self, k: usize) -> u32 {
        (0..self.brute.len())
            .filter(|&i| self.layer[i] < k)
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn pi_level(&self) -> usize {
        (0..=self.layers())
            .filter(|&k| self.brute.consistent(self.prefix(k)))
            .max()
            .unwrap()
    }

    pub fn weight_of_set(&self, s: u32) -> Weight {
        (0..self.brute.len())
            .filter(|i| s & 1 << i != 0)
            .map(|i| self.weights[self.layer[i]])
            .min()
            .unwrap_or(Weight::ONE)
    }

    fn prefix_weight(&self, k: usize) -> Weight {
        if k == 0 {
            Weight::ONE
        } else {
            self.weights[k - 1]
        }
    }

    /// Weight of the goal inside the consistent set `s`, layer by layer.
    pub fn weight_within(&self, s: u32, g: &Formula) -> Option<Weight> {
        (0..=self.layers())
            .find(|&k| self.brute.entails(s & self.prefix(k), g))
            .map(|k| self.prefix_weight(k))
    }

    pub fn pi(&self, g: &Formula) -> Option<Weight> {
        self.weight_within(self.prefix(self.pi_level()), g)
    }

    pub fn ifree(&self) -> u32 {
        self.brute.free() & !self.prefix(self.pi_level())
    }

    pub fn pifree(&self, g: &Formula) -> Option<Weight> {
        self.weight_within(self.prefix(self.pi_level()) | self.ifree(), g)
    }

    /// Subsets whose restriction to every prefix of layers is a maximal
    /// consistent subset of that prefix.
    pub fn preferred(&self) -> Vec<u32> {
        (0..=self.brute.full())
            .filter(|&s| {
                (1..=self.layers()).all(|k| {
                    let p = self.prefix(k);
                    let e = s & p;
                    self.brute.consistent(e)
                        && (0..self.brute.len()).all(|i| {
                            p & 1 << i == 0 || e & 1 << i != 0 || !self.brute.consistent(e | 1 << i)
                        })
                })
            })
            .collect()
    }

    pub fn counts(&self, s: u32) -> Vec<usize> {
        (0..self.layers())
            .map(|k| {
                (0..self.brute.len())
                    .filter(|&i| s & 1 << i != 0 && self.layer[i] == k)
                    .count()
            })
            .collect()
    }

    pub fn lex(&self) -> Vec<u32> {
        let pref = self.preferred();
        let best = pref.iter().map(|&s| self.counts(s)).max();
        pref.into_iter()
            .filter(|&s| Some(self.counts(s)) == best)
            .collect()
    }

    /// The largest, over minimal supports, of the smallest member weight.
    pub fn best_argument(&self, g: &Formula) -> Option<Weight> {
        self.brute
            .supports(g)
            .iter()
            .map(|&s| self.weight_of_set(s))
            .max()
    }

    pub fn argumentative(&self, g: &Formula) -> Option<Weight> {
        let alpha = self.best_argument(g)?;
        match self.best_argument(&g.clone().negate()) {
            Some(beta) if beta >= alpha => None,
            _ => Some(alpha),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const ATOMS: [&str; 6] = ["a", "b", "c", "d", "e", "g"];

pub fn random_formula(rng: &mut ChaCha8Rng, atoms: usize, depth: u32) -> Formula {
    let leaf = |rng: &mut ChaCha8Rng| {
        let x = Formula::atom(ATOMS[rng.gen_range(0..atoms)]);
        if rng.gen_bool(0.4) {
            x.negate()
        } else {
            x
        }
    };
    if depth == 0 || rng.gen_bool(0.35) {
        return leaf(rng);
    }
    let l = random_formula(rng, atoms, depth - 1);
    let r = random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..10) {
        0..=3 => l.or(r),
        4..=6 => l.and(r),
        7..=8 => l.implies(r),
        _ => l.iff(r),
    }
}

pub fn random_formulas(rng: &mut ChaCha8Rng, count: usize, atoms: usize) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 1000 {
        tries += 1;
        let x = random_formula(rng, atoms, 2);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// A flat base of up to `max_formulas` formulas over up to `max_atoms` atoms.
pub fn random_flat(rng: &mut ChaCha8Rng, max_formulas: usize, max_atoms: usize) -> FlatKb {
    let atoms = rng.gen_range(1..=max_atoms);
    let n = rng.gen_range(1..=max_formulas);
    FlatKb::new(random_formulas(rng, n, atoms)).unwrap()
}

pub fn random_goals(rng: &mut ChaCha8Rng, count: usize, atoms: usize) -> Vec<Formula> {
    (0..count).map(|_| random_formula(rng, atoms, 1)).collect()
}

/// Distinct weights, the first 1, drawn from tenths.
pub fn random_weights(rng: &mut ChaCha8Rng, layers: usize) -> Vec<Weight> {
    let mut tenths: Vec<u32> = (1..10).collect();
    tenths.shuffle(rng);
    let mut picked: Vec<u32> = tenths[..layers - 1].to_vec();
    picked.sort_unstable_by(|a, b| b.cmp(a));
    std::iter::once(Weight::ONE)
        .chain(
            picked
                .into_iter()
                .map(|t| Weight::from_millionths(t * 100_000).unwrap()),
        )
        .collect()
}

/// A stratified base of up to three layers.
pub fn random_stratified(
    rng: &mut ChaCha8Rng,
    max_formulas: usize,
    max_atoms: usize,
) -> StratifiedKb {
    let atoms = rng.gen_range(1..=max_atoms);
    let n = rng.gen_range(1..=max_formulas);
    let formulas = random_formulas(rng, n, atoms);
    let layers = rng.gen_range(1..=3.min(formulas.len()));
    let weights = random_weights(rng, layers);
    let mut groups: Vec<Vec<Formula>> = vec![Vec::new(); layers];
    for (i, x) in formulas.into_iter().enumerate() {
        let slot = if i < layers {
            i
        } else {
            rng.gen_range(0..layers)
        };
        groups[slot].push(x);
    }
    StratifiedKb::new(
        groups
            .into_iter()
            .zip(weights)
            .map(|(formulas, weight)| Layer { weight, formulas })
            .collect(),
    )
    .unwrap()
}
