use proptest::prelude::*;

use windex_core::classify::{classify, det_index, weak_det_index};
use windex_core::format::{parse_automaton, parse_regular_tree, serialize_automaton, serialize_regular_tree};
use windex_core::index::{dual_index, index_leq};
use windex_core::patterns::PatternAnalysis;
use windex_core::productivity::{is_trimmed, trim};
use windex_core::random::{random_alternating, random_det, random_trimmed, rng};
use windex_core::semantics::{alt_accepts, bounded_equiv, det_accepts, sample_regular_trees, SamplerParams};
use windex_core::{index_of, Acceptance, DetAutomaton, IndexOrder, IndexPair, State, StateId, TreeAutomaton};

fn small_params(seed: u64) -> SamplerParams {
    SamplerParams::new(seed, 6, &["a".into(), "b".into()], 60).unwrap()
}

fn shifted(a: &TreeAutomaton, by: u32) -> TreeAutomaton {
    let states = a.states().iter().map(|s| State { rank: s.rank + by, ..s.clone() }).collect();
    TreeAutomaton::new(a.alphabet().to_vec(), states, a.initial(), a.transitions().to_vec(), a.acceptance()).unwrap()
}

/// Same automaton with the states listed in a seed-dependent order.
fn permuted(a: &DetAutomaton, seed: u64) -> DetAutomaton {
    use rand::seq::SliceRandom;
    let n = a.num_states();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng(seed));
    let mut pos = vec![0; n];
    for (i, &q) in order.iter().enumerate() {
        pos[q] = i;
    }
    let states = order.iter().map(|&q| (a.name(StateId(q)).to_string(), a.rank(StateId(q)))).collect();
    let table = order
        .iter()
        .map(|&q| (0..a.num_letters()).map(|l| a.succ(StateId(q), l).map(|t| StateId(pos[t.0]))).collect())
        .collect();
    DetAutomaton::new(a.alphabet().to_vec(), states, StateId(pos[a.initial().0]), table).unwrap()
}

fn index_pair() -> impl Strategy<Value = IndexPair> {
    (0u32..2, 0u32..6).prop_map(|(i, w)| IndexPair::new(i, i + w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn automaton_format_round_trips(seed: u64, n in 1usize..6, weak: bool) {
        let acc = if weak { Acceptance::Weak } else { Acceptance::Parity };
        let a = random_alternating(&mut rng(seed), n, 2, 4, 3, acc);
        let b = parse_automaton(&serialize_automaton(&a)).unwrap();
        prop_assert_eq!(serialize_automaton(&a), serialize_automaton(&b));
        prop_assert_eq!(a.num_states(), b.num_states());
        prop_assert_eq!(a.index(), b.index());
    }

    #[test]
    fn tree_format_round_trips(seed: u64) {
        for t in sample_regular_trees(&small_params(seed)).into_iter().take(5) {
            let u = parse_regular_tree(&serialize_regular_tree(&t)).unwrap();
            prop_assert_eq!(serialize_regular_tree(&t), serialize_regular_tree(&u));
        }
    }

    #[test]
    fn index_ignores_even_shifts(seed: u64, n in 1usize..6, k in 0u32..3) {
        let a = random_alternating(&mut rng(seed), n, 2, 4, 2, Acceptance::Weak);
        prop_assert_eq!(index_of(&a), index_of(&shifted(&a, 2 * k)));
    }

    #[test]
    fn dual_index_involution(i in index_pair()) {
        prop_assert_eq!(dual_index(dual_index(i)), i);
        prop_assert_eq!(index_leq(i, dual_index(i)), IndexOrder::Incomparable);
        prop_assert_eq!(index_leq(i, i), IndexOrder::Equal);
    }

    #[test]
    fn dual_automaton_complements(seed: u64, n in 1usize..5, weak: bool) {
        let acc = if weak { Acceptance::Weak } else { Acceptance::Parity };
        let a = random_alternating(&mut rng(seed), n, 2, 3, 3, acc);
        let d = a.dual();
        for t in sample_regular_trees(&small_params(seed)) {
            prop_assert_ne!(alt_accepts(&a, &t).unwrap(), alt_accepts(&d, &t).unwrap());
        }
    }

    #[test]
    fn trim_keeps_the_language(seed: u64, n in 1usize..6) {
        let a = random_det(&mut rng(seed), n, 2, 3);
        match trim(&a) {
            Ok(t) => {
                prop_assert!(is_trimmed(&t));
                prop_assert!(bounded_equiv(&a, &t, &small_params(seed)).unwrap().is_pass());
            }
            Err(_) => {
                for t in sample_regular_trees(&small_params(seed)) {
                    prop_assert!(!det_accepts(&a, &t).unwrap());
                }
            }
        }
    }

    #[test]
    fn relabellings_keep_the_language(seed: u64) {
        let a = random_trimmed(&mut rng(seed), 5, 2, 4);
        let (i, d) = det_index(&a);
        prop_assert!(d.ranks().iter().all(|&r| i.contains(r)));
        prop_assert!(bounded_equiv(&a, &d, &small_params(seed)).unwrap().is_pass());
        if let Some((j, w)) = weak_det_index(&a) {
            prop_assert!(w.is_rank_monotone());
            prop_assert!(w.ranks().iter().all(|&r| j.contains(r)));
            prop_assert!(bounded_equiv(&a, &w, &small_params(seed)).unwrap().is_pass());
        }
    }

    #[test]
    fn witnesses_are_valid(seed: u64) {
        let a = random_trimmed(&mut rng(seed), 6, 2, 3);
        let report = classify(&a).unwrap();
        for e in &report.witnesses {
            prop_assert!(e.witness.is_valid(&report.trimmed), "{}", e.claim);
        }
        let an = PatternAnalysis::new(&report.trimmed);
        for i in [IndexPair::even(1), IndexPair::odd(2), IndexPair::even(2), IndexPair::odd(3)] {
            if let Some(w) = an.find_flower(i) { prop_assert!(w.is_valid(&report.trimmed)); }
            if let Some(w) = an.find_weak_flower(i) { prop_assert!(w.is_valid(&report.trimmed)); }
        }
    }

    #[test]
    fn classification_ignores_state_order(seed: u64, n in 1usize..7) {
        let a = random_det(&mut rng(seed), n, 2, 3);
        let b = permuted(&a, seed ^ 1);
        let (x, y) = (classify(&a).unwrap(), classify(&b).unwrap());
        prop_assert_eq!(x.borel, y.borel);
        prop_assert_eq!(x.det_index, y.det_index);
        prop_assert_eq!(x.weak_det_index, y.weak_det_index);
        prop_assert!(bounded_equiv(&a, &b, &small_params(seed)).unwrap().is_pass());
    }

    #[test]
    fn classification_is_deterministic(seed: u64) {
        let a = random_trimmed(&mut rng(seed), 6, 2, 3);
        let (x, y) = (classify(&a).unwrap(), classify(&a).unwrap());
        prop_assert_eq!(x.render(true), y.render(true));
    }
}
