mod common;

use argkb::para::{para_resolve, ParaBase};
use argkb::{
    BiWeight, BiWeightedClause, Clause, Error, Limits, StratifiedReasoner, StratifiedRelation,
    Weight,
};
use common::*;
use proptest::prelude::*;

fn grid() -> Vec<Weight> {
    (0..=10)
        .map(|i| Weight::from_millionths(i * 100_000).unwrap())
        .collect()
}

fn clause(s: &str) -> Clause {
    Clause::from_formula(&f(s)).unwrap()
}

#[test]
fn blur_rule() {
    let g = grid();
    for &a in &g {
        for &gamma in &g {
            for &d in g.iter().filter(|&&d| d <= gamma) {
                let p = BiWeightedClause::new(clause("A | B"), a, Weight::ZERO);
                let q = BiWeightedClause::new(clause("!B | C"), gamma, d);
                let r = para_resolve(&p, &q).unwrap().weight;
                assert_eq!(
                    r.certainty > r.counter,
                    a > d && gamma > d,
                    "{a} {gamma} {d}"
                );
            }
        }
    }
}

#[test]
fn rule_is_symmetric_in_its_premises() {
    let g = grid();
    for &a in &g {
        for &b in g.iter().filter(|&&b| b <= a) {
            for &c in &g {
                for &d in g.iter().filter(|&&d| d <= c) {
                    let p = BiWeightedClause::new(clause("A | B"), a, b);
                    let q = BiWeightedClause::new(clause("!B | C"), c, d);
                    assert_eq!(para_resolve(&p, &q).unwrap(), para_resolve(&q, &p).unwrap());
                }
            }
        }
    }
}

#[test]
fn premises_must_clash_once() {
    let e = |s: &str| s.parse::<BiWeightedClause>().unwrap();
    assert_eq!(
        para_resolve(&e("A @ 1 ; 0"), &e("B @ 1 ; 0")).unwrap_err(),
        Error::NoClash
    );
    assert_eq!(
        para_resolve(&e("A | B @ 1 ; 0"), &e("!A | !B @ 1 ; 0")).unwrap_err(),
        Error::MultipleClash
    );
}

#[test]
fn source_weights_agree_with_arguments() {
    let mut rng = rng(301);
    let limits = Limits::default();
    for _ in 0..200 {
        let k = random_stratified(&mut rng, 6, 5);
        let brute = BruteStrat::new(&k, &[]);
        let r = StratifiedReasoner::new(&k);
        let pb = ParaBase::from_stratified(&k, &limits).unwrap();
        for (i, phi) in k.formulas().iter().enumerate() {
            let bw = pb.source_weights()[i];
            let neg = phi.clone().negate();
            assert_eq!(
                bw.certainty,
                brute.best_argument(phi).unwrap_or(Weight::ZERO)
            );
            assert_eq!(
                bw.counter,
                brute.best_argument(&neg).unwrap_or(Weight::ZERO)
            );
            let (holds, weight) = r.decide(phi, StratifiedRelation::Argumentative).unwrap();
            if holds {
                assert_eq!(Some(bw.certainty), weight);
            }
        }
    }
}

/// Every entry is normalized (certainty at least the counter-weight) and no
/// entry is dominated by another one for the same clause.
#[test]
fn bases_are_normalized_frontiers() {
    let mut rng = rng(302);
    let limits = Limits::default();
    for _ in 0..100 {
        let k = random_stratified(&mut rng, 5, 4);
        let pb = ParaBase::from_stratified(&k, &limits).unwrap();
        let sat = match pb.saturate(&limits) {
            Ok(s) => s,
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        for base in [&pb, &sat] {
            for e in base.entries() {
                assert!(e.weight.certainty >= e.weight.counter, "{e}");
                let frontier = base.get(&e.clause);
                assert!(
                    !frontier.iter().any(|o| o.dominates(e.weight)),
                    "{e} dominated"
                );
            }
        }
        for e in pb.entries() {
            let held = sat.get(&e.clause);
            assert!(held.iter().any(|h| *h == e.weight || h.dominates(e.weight)));
        }
    }
}

fn biweight() -> impl Strategy<Value = BiWeight> {
    (0u32..=1_000_000, 0u32..=1_000_000).prop_map(|(a, b)| {
        BiWeight::new(
            Weight::from_millionths(a.max(b)).unwrap(),
            Weight::from_millionths(a.min(b)).unwrap(),
        )
    })
}

fn entry() -> impl Strategy<Value = BiWeightedClause> {
    let lit = prop::sample::select(vec!["p", "!p", "q", "!q", "r", "!r"]);
    (prop::collection::vec(lit, 0..4), biweight()).prop_map(|(lits, w)| {
        let text = if lits.is_empty() {
            "false".to_string()
        } else {
            lits.join(" | ")
        };
        BiWeightedClause {
            clause: clause(&text),
            weight: w,
        }
    })
}

proptest! {
    #[test]
    fn text_round_trip(entries in prop::collection::vec(entry(), 0..12)) {
        let pb = ParaBase::from_entries(entries);
        let back = ParaBase::parse(&pb.to_text()).unwrap();
        prop_assert_eq!(back.entries(), pb.entries());
    }

    #[test]
    fn entry_round_trip(e in entry()) {
        prop_assert_eq!(e.to_string().parse::<BiWeightedClause>().unwrap(), e);
    }
}
