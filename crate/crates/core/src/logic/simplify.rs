//! Canonical simplified DNF for a set of models (Quine–McCluskey prime
//! implicants followed by an essential-first greedy cover).

use std::collections::BTreeSet;

use crate::logic::formula::{Atom, Formula};

/// A product term: `value` gives polarities on the bits not in `free`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Cube {
    free: u64,
    value: u64,
}

impl Cube {
    fn covers(&self, minterm: u64) -> bool {
        minterm & !self.free == self.value
    }

    fn literals(&self, n: usize) -> u32 {
        n as u32 - self.free.count_ones()
    }
}

fn prime_cubes(minterms: &BTreeSet<u64>) -> Vec<Cube> {
    let mut level: BTreeSet<Cube> = minterms
        .iter()
        .map(|&m| Cube { free: 0, value: m })
        .collect();
    let mut primes = BTreeSet::new();
    while !level.is_empty() {
        let cubes: Vec<Cube> = level.iter().copied().collect();
        let mut merged = vec![false; cubes.len()];
        let mut next = BTreeSet::new();
        for i in 0..cubes.len() {
            for j in (i + 1)..cubes.len() {
                let (a, b) = (cubes[i], cubes[j]);
                if a.free != b.free {
                    continue;
                }
                let diff = a.value ^ b.value;
                if diff.count_ones() == 1 {
                    merged[i] = true;
                    merged[j] = true;
                    next.insert(Cube {
                        free: a.free | diff,
                        value: a.value & !diff,
                    });
                }
            }
        }
        for (c, m) in cubes.iter().zip(&merged) {
            if !m {
                primes.insert(*c);
            }
        }
        level = next;
    }
    primes.into_iter().collect()
}

fn cover(primes: &[Cube], minterms: &BTreeSet<u64>, n: usize) -> Vec<Cube> {
    let mut chosen: BTreeSet<Cube> = BTreeSet::new();
    for &m in minterms {
        let hits: Vec<&Cube> = primes.iter().filter(|c| c.covers(m)).collect();
        if hits.len() == 1 {
            chosen.insert(*hits[0]);
        }
    }
    let mut open: BTreeSet<u64> = minterms
        .iter()
        .copied()
        .filter(|&m| !chosen.iter().any(|c| c.covers(m)))
        .collect();
    while !open.is_empty() {
        let best = primes
            .iter()
            .filter(|c| !chosen.contains(c))
            .max_by(|a, b| {
                let ca = open.iter().filter(|&&m| a.covers(m)).count();
                let cb = open.iter().filter(|&&m| b.covers(m)).count();
                ca.cmp(&cb)
                    .then_with(|| b.literals(n).cmp(&a.literals(n)))
                    .then_with(|| b.cmp(a))
            })
            .copied()
            .expect("primes cover every minterm");
        open.retain(|&m| !best.covers(m));
        chosen.insert(best);
    }
    chosen.into_iter().collect()
}

fn term(cube: &Cube, vocab: &[Atom]) -> Formula {
    let n = vocab.len();
    Formula::conjunction(vocab.iter().enumerate().filter_map(|(i, a)| {
        let bit = 1u64 << (n - 1 - i);
        if cube.free & bit != 0 {
            return None;
        }
        let f = Formula::Atom(a.clone());
        Some(if cube.value & bit != 0 { f } else { f.negate() })
    }))
}

/// A small DNF whose models over `vocab` are exactly `models` (canonical
/// interpretation indices). `true` for the full set, `false` for none.
pub fn dnf_from_models(vocab: &[Atom], models: &BTreeSet<u64>) -> Formula {
    let n = vocab.len();
    if models.is_empty() {
        return Formula::False;
    }
    if models.len() as u128 == 1u128 << n {
        return Formula::True;
    }
    let primes = prime_cubes(models);
    let mut cubes = cover(&primes, models, n);
    // Fewer literals first, then by polarity pattern.
    cubes.sort_by(|a, b| {
        a.literals(n)
            .cmp(&b.literals(n))
            .then_with(|| b.value.cmp(&a.value))
            .then_with(|| a.free.cmp(&b.free))
    });
    Formula::disjunction(cubes.iter().map(|c| term(c, vocab)))
}
