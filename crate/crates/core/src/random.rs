//! Seeded random automata and games for property tests, the acceptance
//! suite and benchmarks.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::automaton::{Acceptance, DetAutomaton, Direction, Mode, Rank, State, StateId, Transition, TreeAutomaton};
use crate::game::{Condition, Game, Player, PosId};
use crate::productivity::{productive_states, trim_with};

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

pub fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Uniform total deterministic automaton with `n` states named `q0…`.
pub fn random_det(rng: &mut impl Rng, n: usize, num_letters: usize, max_rank: Rank) -> DetAutomaton {
    let states = (0..n).map(|i| (format!("q{i}"), rng.random_range(0..=max_rank))).collect();
    let table = (0..n)
        .map(|_| {
            (0..num_letters)
                .map(|_| [StateId(rng.random_range(0..n)), StateId(rng.random_range(0..n))])
                .collect()
        })
        .collect();
    DetAutomaton::new(letters(num_letters), states, StateId(0), table).expect("random automata are well formed")
}

/// Trimmed automaton with a non-empty language, drawn by rejection from
/// [`random_det`] with between 1 and `max_states` states.
pub fn random_trimmed(rng: &mut impl Rng, max_states: usize, num_letters: usize, max_rank: Rank) -> DetAutomaton {
    loop {
        let n = rng.random_range(1..=max_states);
        let a = random_det(rng, n, num_letters, max_rank);
        let info = productive_states(&a);
        if info.nonempty[a.initial().0] {
            return trim_with(&a, &info).expect("non-empty automata trim");
        }
    }
}

/// Deterministic automaton of exactly `n` states in which every state is
/// reachable and non-empty: the first letter runs a chain `q0 → q1 → …`
/// ending in a rank-0 state looping on itself, the rest is uniform.
pub fn random_nonempty(rng: &mut impl Rng, n: usize, num_letters: usize, max_rank: Rank) -> DetAutomaton {
    let mut states: Vec<(String, Rank)> = (0..n).map(|i| (format!("q{i}"), rng.random_range(0..=max_rank))).collect();
    states[n - 1].1 = 0;
    let table = (0..n)
        .map(|q| {
            let next = StateId((q + 1).min(n - 1));
            let mut row = vec![[next, next]];
            row.extend((1..num_letters).map(|_| [StateId(rng.random_range(0..n)), StateId(rng.random_range(0..n))]));
            row
        })
        .collect();
    DetAutomaton::new(letters(num_letters), states, StateId(0), table).expect("random automata are well formed")
}

/// Random game graph; each position gets 0 to `max_out` successors.
pub fn random_game(rng: &mut impl Rng, n: usize, max_rank: Rank, max_out: usize, condition: Condition) -> Game {
    let mut g = Game::new(condition);
    for _ in 0..n {
        let owner = if rng.random_bool(0.5) { Player::Eve } else { Player::Adam };
        g.add_position(owner, rng.random_range(0..=max_rank));
    }
    for v in 0..n {
        let k = rng.random_range(0..=max_out);
        for _ in 0..k {
            g.add_edge(PosId(v), PosId(rng.random_range(0..n)));
        }
    }
    g.set_initial(PosId(0));
    g
}

/// Random alternating automaton; every (state, letter) gets 0 to
/// `max_moves` moves, epsilon moves included.
pub fn random_alternating(
    rng: &mut impl Rng,
    n: usize,
    num_letters: usize,
    max_rank: Rank,
    max_moves: usize,
    acceptance: Acceptance,
) -> TreeAutomaton {
    let states = (0..n)
        .map(|i| State {
            name: format!("q{i}"),
            mode: if rng.random_bool(0.5) { Mode::Existential } else { Mode::Universal },
            rank: rng.random_range(0..=max_rank),
        })
        .collect();
    let mut transitions = Vec::new();
    for q in 0..n {
        for letter in 0..num_letters {
            for _ in 0..rng.random_range(0..=max_moves) {
                let direction = match rng.random_range(0..3) {
                    0 => Direction::Left,
                    1 => Direction::Right,
                    _ => Direction::Epsilon,
                };
                transitions.push(Transition {
                    source: StateId(q),
                    letter,
                    direction,
                    target: StateId(rng.random_range(0..n)),
                });
            }
        }
    }
    TreeAutomaton::new(letters(num_letters), states, StateId(0), transitions, acceptance)
        .expect("random automata are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::productivity::is_trimmed;

    #[test]
    fn generators_are_reproducible() {
        let a = random_det(&mut rng(7), 5, 2, 3);
        let b = random_det(&mut rng(7), 5, 2, 3);
        assert_eq!(a, b);
        let g = random_game(&mut rng(7), 6, 3, 2, Condition::Parity);
        assert_eq!(g, random_game(&mut rng(7), 6, 3, 2, Condition::Parity));
    }

    #[test]
    fn nonempty_samples_keep_every_state() {
        let a = random_nonempty(&mut rng(3), 50, 2, 3);
        let info = productive_states(&a);
        assert!(info.productive.iter().all(|&p| p));
    }

    #[test]
    fn trimmed_samples_are_trimmed() {
        let mut r = rng(1);
        for _ in 0..50 {
            assert!(is_trimmed(&random_trimmed(&mut r, 5, 2, 3)));
        }
    }
}
