mod common;

use std::collections::{BTreeMap, BTreeSet};

use argkb::logic::{entails, enumerate_models, is_satisfiable, to_clauses};
use argkb::{parse_formula, Atom, Formula, Weight};
use common::eval;
use num_rational::Ratio;
use proptest::prelude::*;

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        8 => prop::sample::select(vec!["p", "q", "r", "s"]).prop_map(Formula::atom),
        1 => Just(Formula::True),
        1 => Just(Formula::False),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negate),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.iff(b)),
        ]
    })
}

fn valuations(vocab: &BTreeSet<Atom>) -> Vec<BTreeMap<Atom, bool>> {
    let atoms: Vec<&Atom> = vocab.iter().collect();
    (0..1u32 << atoms.len())
        .map(|bits| {
            atoms
                .iter()
                .enumerate()
                .map(|(i, a)| ((*a).clone(), bits >> i & 1 == 1))
                .collect()
        })
        .collect()
}

fn vocab_of(fs: &[Formula]) -> BTreeSet<Atom> {
    fs.iter().flat_map(Formula::vocabulary).collect()
}

fn truth_table_sat(fs: &[Formula]) -> bool {
    valuations(&vocab_of(fs))
        .iter()
        .any(|v| fs.iter().all(|f| eval(f, v)))
}

proptest! {
    #[test]
    fn print_parse_round_trip(f in formula_strategy()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn sat_agrees_with_truth_table(fs in prop::collection::vec(formula_strategy(), 0..4)) {
        prop_assert_eq!(is_satisfiable(&fs).unwrap(), truth_table_sat(&fs));
    }

    #[test]
    fn entailment_is_refutation(fs in prop::collection::vec(formula_strategy(), 0..4), g in formula_strategy()) {
        let mut with_neg = fs.clone();
        with_neg.push(g.clone().negate());
        prop_assert_eq!(entails(&fs, &g).unwrap(), !is_satisfiable(&with_neg).unwrap());
    }

    #[test]
    fn models_exist_iff_satisfiable(fs in prop::collection::vec(formula_strategy(), 0..4)) {
        let mut vocab = vocab_of(&fs);
        vocab.insert(Atom::new("extra"));
        let models = enumerate_models(&fs, &vocab).unwrap();
        prop_assert_eq!(!models.is_empty(), is_satisfiable(&fs).unwrap());
        for m in &models {
            for f in &fs {
                prop_assert_eq!(f.eval(m), Some(true));
            }
        }
    }

    #[test]
    fn clause_form_preserves_models(f in formula_strategy()) {
        let clauses: Vec<Formula> = to_clauses(&f).unwrap().iter().map(|c| c.to_formula()).collect();
        for v in valuations(&f.vocabulary()) {
            let cnf = clauses.iter().all(|c| eval(c, &v));
            prop_assert_eq!(cnf, eval(&f, &v));
        }
    }

    #[test]
    fn weights_agree_with_rationals(a in 0u32..=1_000_000, b in 0u32..=1_000_000) {
        let (wa, wb) = (Weight::from_millionths(a).unwrap(), Weight::from_millionths(b).unwrap());
        let (ra, rb) = (Ratio::new(a, 1_000_000), Ratio::new(b, 1_000_000));
        prop_assert_eq!(wa.cmp(&wb), ra.cmp(&rb));
        prop_assert_eq!(Ratio::new(wa.min(wb).millionths(), 1_000_000), ra.min(rb));
        prop_assert_eq!(Ratio::new(wa.max(wb).millionths(), 1_000_000), ra.max(rb));
        prop_assert_eq!(wa.to_string().parse::<Weight>().unwrap(), wa);
    }

    #[test]
    fn ratio_floor_agrees_with_rationals(num in 0u64..1000, extra in 0u64..1000) {
        let den = num + extra + 1;
        let got = Weight::from_ratio_floor(num, den).unwrap();
        let exact = Ratio::new(num * 1_000_000, den).floor().to_integer();
        prop_assert_eq!(u64::from(got.millionths()), exact);
    }
}

#[test]
fn weight_bounds() {
    assert_eq!(Weight::from_millionths(0), Some(Weight::ZERO));
    assert_eq!(Weight::from_millionths(1_000_000), Some(Weight::ONE));
    assert_eq!(Weight::from_millionths(1_000_001), None);
    assert!("1.0000001".parse::<Weight>().is_err());
    assert!("-0.5".parse::<Weight>().is_err());
    assert_eq!(
        "0.5".parse::<Weight>().unwrap(),
        "0.500000".parse().unwrap()
    );
}
