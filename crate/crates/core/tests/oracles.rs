use windex_core::classify::det_relabel;
use windex_core::game::{brute_force_solve, solve, Condition};
use windex_core::patterns::brute::brute_force_patterns;
use windex_core::patterns::{find_replicated_flower, PatternAnalysis};
use windex_core::random::{random_game, random_trimmed, rng};
use windex_core::semantics::{bounded_equiv, SamplerParams};
use windex_core::transform::{weaken_13, weaken_14};
use windex_core::IndexPair;

#[test]
fn patterns_match_brute_force_on_three_letters_and_rank_four() {
    let mut r = rng(101);
    for k in 0..2000 {
        let a = random_trimmed(&mut r, 5, 3, 4);
        let inv = brute_force_patterns(&a, 5, 1 << 10).unwrap();
        let an = PatternAnalysis::new(&a);
        assert_eq!(an.loop_ranks(), inv.loop_ranks.as_slice(), "{k}");
        assert_eq!(an.replicated_mask(), inv.replicated.as_slice(), "{k}");
        assert_eq!(an.find_split().is_some(), inv.split, "{k}");
        for (&i, &f) in &inv.flower {
            assert_eq!(an.find_flower(i).is_some(), f, "{k} flower {i}");
            assert_eq!(an.find_weak_flower(i).is_some(), inv.weak_flower[&i], "{k} weak flower {i}");
            assert_eq!(an.find_replicated_flower(i, false).is_some(), inv.replicated_flower[&i], "{k} {i}");
            assert_eq!(an.find_replicated_flower(i, true).is_some(), inv.replicated_weak_flower[&i], "{k} {i}");
        }
    }
}

#[test]
fn solvers_match_brute_force_with_rank_five() {
    let mut r = rng(102);
    for k in 0..3000 {
        let condition = if k % 2 == 0 { Condition::Parity } else { Condition::Weak };
        let g = random_game(&mut r, 1 + k % 6, 5, 2, condition);
        let (fast, slow) = (solve(&g), brute_force_solve(&g).unwrap());
        for v in g.positions() {
            assert_eq!(fast.winner(v), slow.winner(v), "{k}");
        }
    }
}

#[test]
fn weakenings_are_sound_on_random_admissible_inputs() {
    let mut r = rng(103);
    let p = SamplerParams::new(5, 7, &["a".into(), "b".into()], 150).unwrap();
    let (mut n13, mut n14) = (0, 0);
    for _ in 0..800 {
        let a = random_trimmed(&mut r, 5, 2, 4);
        if find_replicated_flower(&a, IndexPair::even(1), false).is_none() {
            let (b, _) = weaken_14(&a).unwrap();
            assert!(bounded_equiv(&a, &b, &p).unwrap().is_pass());
            n14 += 1;
        }
        let r01 = det_relabel(&a, 0);
        if r01.iter().all(|&x| x <= 1) {
            let b01 = a.with_ranks(r01);
            if let Ok(b) = weaken_13(&b01) {
                assert!(bounded_equiv(&a, &b, &p).unwrap().is_pass());
                n13 += 1;
            }
        }
    }
    assert!(n13 > 100 && n14 > 100, "{n13} {n14}");
}
