//! Finite two-player games under the parity and weak parity conditions.
//!
//! A player who cannot move loses. Under [`Condition::Parity`] Eve wins an
//! infinite play when the highest rank seen infinitely often is even; under
//! [`Condition::Weak`] when the highest rank seen at all is even.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::Rank;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }

    /// The player favoured by a rank of this parity.
    pub fn of_rank(rank: Rank) -> Player {
        if rank.is_multiple_of(2) {
            Player::Eve
        } else {
            Player::Adam
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Eve => "Eve",
            Player::Adam => "Adam",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    Parity,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PosId(pub usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Game {
    owners: Vec<Player>,
    ranks: Vec<Rank>,
    succ: Vec<Vec<PosId>>,
    initial: PosId,
    condition: Option<Condition>,
}

impl Game {
    pub fn new(condition: Condition) -> Self {
        Game { condition: Some(condition), ..Default::default() }
    }

    pub fn add_position(&mut self, owner: Player, rank: Rank) -> PosId {
        self.owners.push(owner);
        self.ranks.push(rank);
        self.succ.push(Vec::new());
        PosId(self.owners.len() - 1)
    }

    /// Edges are numbered per source in insertion order.
    pub fn add_edge(&mut self, from: PosId, to: PosId) {
        assert!(to.0 < self.owners.len(), "edge target does not exist");
        self.succ[from.0].push(to);
    }

    pub fn set_initial(&mut self, v: PosId) {
        self.initial = v;
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }

    pub fn owner(&self, v: PosId) -> Player {
        self.owners[v.0]
    }

    pub fn rank(&self, v: PosId) -> Rank {
        self.ranks[v.0]
    }

    pub fn successors(&self, v: PosId) -> &[PosId] {
        &self.succ[v.0]
    }

    pub fn initial(&self) -> PosId {
        self.initial
    }

    pub fn condition(&self) -> Condition {
        self.condition.unwrap_or(Condition::Parity)
    }

    pub fn with_condition(&self, condition: Condition) -> Game {
        Game { condition: Some(condition), ..self.clone() }
    }

    pub fn positions(&self) -> impl Iterator<Item = PosId> {
        (0..self.len()).map(PosId)
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, succ) in self.succ.iter().enumerate() {
            for w in succ {
                pred[w.0].push(v);
            }
        }
        pred
    }
}

/// Winners and positional strategies. `strategy[v]` is set exactly when the
/// owner of `v` wins from `v` and has a move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<PosId>>,
}

impl Solution {
    pub fn winner(&self, v: PosId) -> Player {
        self.winner[v.0]
    }

    pub fn region(&self, p: Player) -> Vec<PosId> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).map(PosId).collect()
    }

    fn finish(mut winner: Vec<Option<Player>>, mut strategy: Vec<Option<PosId>>, game: &Game) -> Solution {
        let winner: Vec<Player> =
            winner.iter_mut().map(|w| w.take().expect("every position is decided")).collect();
        for v in 0..game.len() {
            if game.owners[v] != winner[v] {
                strategy[v] = None;
            }
        }
        Solution { winner, strategy }
    }
}

pub fn solve(g: &Game) -> Solution {
    match g.condition() {
        Condition::Parity => solve_parity(g),
        Condition::Weak => solve_weak(g),
    }
}

struct Solver<'a> {
    game: &'a Game,
    pred: Vec<Vec<usize>>,
    strategy: Vec<Option<PosId>>,
}

impl<'a> Solver<'a> {
    fn new(game: &'a Game) -> Self {
        Solver { game, pred: game.predecessors(), strategy: vec![None; game.len()] }
    }

    fn first_succ_in(&self, v: usize, set: &[bool]) -> Option<PosId> {
        self.game.succ[v].iter().copied().find(|w| set[w.0])
    }

    /// Positions of `sub` from which `player` forces a visit to `target`
    /// (or an opponent dead end) while staying in `sub`. Attracting moves
    /// are recorded in the strategy table.
    fn attractor(&mut self, player: Player, target: &[bool], sub: &[bool]) -> Vec<bool> {
        let n = self.game.len();
        let mut attr = vec![false; n];
        let mut count = vec![0usize; n];
        let mut queue = Vec::new();
        for v in 0..n {
            if !sub[v] {
                continue;
            }
            count[v] = self.game.succ[v].iter().filter(|w| sub[w.0]).count();
            let vacuous = self.game.owners[v] != player && count[v] == 0;
            if target[v] || vacuous {
                attr[v] = true;
                queue.push(v);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for i in 0..self.pred[u].len() {
                let v = self.pred[u][i];
                if !sub[v] || attr[v] {
                    continue;
                }
                if self.game.owners[v] == player {
                    attr[v] = true;
                    self.strategy[v] = self.first_succ_in(v, &attr);
                    queue.push(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        attr[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        attr
    }

    /// Splits off the positions decided by dead ends; returns the remaining
    /// dead-end-free subgame.
    fn dead_ends(&mut self, winner: &mut [Option<Player>]) -> Vec<bool> {
        let n = self.game.len();
        let all = vec![true; n];
        let none = vec![false; n];
        let eve = self.attractor(Player::Eve, &none, &all);
        let adam = self.attractor(Player::Adam, &none, &all);
        let mut rest = vec![false; n];
        for v in 0..n {
            debug_assert!(!(eve[v] && adam[v]));
            if eve[v] {
                winner[v] = Some(Player::Eve);
            } else if adam[v] {
                winner[v] = Some(Player::Adam);
            } else {
                rest[v] = true;
            }
        }
        rest
    }

    fn zielonka(&mut self, sub: &[bool]) -> [Vec<bool>; 2] {
        let n = self.game.len();
        let Some(d) = (0..n).filter(|&v| sub[v]).map(|v| self.game.ranks[v]).max() else {
            return [vec![false; n], vec![false; n]];
        };
        let alpha = Player::of_rank(d);
        let (a, b) = slot(alpha);
        let top: Vec<bool> = (0..n).map(|v| sub[v] && self.game.ranks[v] == d).collect();
        let attr = self.attractor(alpha, &top, sub);
        let rest: Vec<bool> = (0..n).map(|v| sub[v] && !attr[v]).collect();
        let first = self.zielonka(&rest);
        if !first[b].iter().any(|&x| x) {
            for (v, _) in top.iter().enumerate().filter(|(_, &t)| t) {
                if self.game.owners[v] == alpha {
                    self.strategy[v] = self.first_succ_in(v, sub);
                }
            }
            let mut win = [vec![false; n], vec![false; n]];
            win[a] = sub.to_vec();
            return win;
        }
        let beta_attr = self.attractor(alpha.opponent(), &first[b], sub);
        let rest: Vec<bool> = (0..n).map(|v| sub[v] && !beta_attr[v]).collect();
        let mut second = self.zielonka(&rest);
        for v in 0..n {
            if beta_attr[v] {
                second[b][v] = true;
            }
        }
        second
    }
}

fn slot(p: Player) -> (usize, usize) {
    match p {
        Player::Eve => (0, 1),
        Player::Adam => (1, 0),
    }
}

/// Strong parity condition, by recursive attractor decomposition.
pub fn solve_parity(g: &Game) -> Solution {
    let mut solver = Solver::new(g);
    let mut winner = vec![None; g.len()];
    let rest = solver.dead_ends(&mut winner);
    let [eve, adam] = solver.zielonka(&rest);
    for v in 0..g.len() {
        if eve[v] {
            winner[v] = Some(Player::Eve);
        } else if adam[v] {
            winner[v] = Some(Player::Adam);
        }
    }
    Solution::finish(winner, solver.strategy, g)
}

/// Weak parity condition: repeatedly attract to the highest remaining rank
/// for the player that rank favours, and peel that layer off.
pub fn solve_weak(g: &Game) -> Solution {
    let mut solver = Solver::new(g);
    let mut winner = vec![None; g.len()];
    let mut rest = solver.dead_ends(&mut winner);
    let n = g.len();
    while let Some(d) = (0..n).filter(|&v| rest[v]).map(|v| g.ranks[v]).max() {
        let alpha = Player::of_rank(d);
        let top: Vec<bool> = (0..n).map(|v| rest[v] && g.ranks[v] == d).collect();
        let layer = solver.attractor(alpha, &top, &rest);
        for (v, _) in top.iter().enumerate().filter(|(_, &t)| t) {
            if g.owners[v] == alpha {
                solver.strategy[v] = solver.first_succ_in(v, &rest);
            }
        }
        for v in 0..n {
            if layer[v] {
                winner[v] = Some(alpha);
                rest[v] = false;
            }
        }
    }
    Solution::finish(winner, solver.strategy, g)
}

/// Largest game accepted by [`brute_force_solve`].
pub const BRUTE_FORCE_LIMIT: usize = 12;
const STRATEGY_PAIR_LIMIT: u128 = 50_000_000;

/// Outcome of the play from `start` when both players follow fixed
/// positional choices (`choice[v]` indexes into the successor list).
pub fn play_outcome(g: &Game, choice: &[Option<PosId>], start: PosId) -> Player {
    let mut order: Vec<usize> = Vec::with_capacity(g.len());
    let mut seen_at = vec![usize::MAX; g.len()];
    let mut v = start.0;
    loop {
        if seen_at[v] != usize::MAX {
            let from = match g.condition() {
                Condition::Parity => seen_at[v],
                Condition::Weak => 0,
            };
            let top = order[from..].iter().map(|&u| g.ranks[u]).max().expect("non-empty cycle");
            return Player::of_rank(top);
        }
        seen_at[v] = order.len();
        order.push(v);
        match choice[v] {
            Some(w) => v = w.0,
            None => return g.owners[v].opponent(),
        }
    }
}

/// Exhaustive oracle: enumerates every positional strategy of both players.
/// Positional strategies suffice for both conditions, so Eve wins from `v`
/// iff one of her positional strategies beats every positional reply.
pub fn brute_force_solve(g: &Game) -> Result<Solution> {
    let n = g.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard { size: n, limit: BRUTE_FORCE_LIMIT });
    }
    let owned = |p: Player| -> Vec<usize> {
        (0..n).filter(|&v| g.owners[v] == p && !g.succ[v].is_empty()).collect()
    };
    let eve_pos = owned(Player::Eve);
    let adam_pos = owned(Player::Adam);
    let count = |ps: &[usize]| ps.iter().map(|&v| g.succ[v].len() as u128).product::<u128>();
    let (eve_count, adam_count) = (count(&eve_pos), count(&adam_pos));
    if eve_count * adam_count > STRATEGY_PAIR_LIMIT {
        return Err(Error::BudgetExceeded(STRATEGY_PAIR_LIMIT as usize));
    }
    let decode = |mut code: u128, ps: &[usize], choice: &mut Vec<Option<PosId>>| {
        for &v in ps {
            let k = g.succ[v].len() as u128;
            choice[v] = Some(g.succ[v][(code % k) as usize]);
            code /= k;
        }
    };

    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    // eve_safe[s]: positions won by Eve against every reply to strategy s.
    let mut eve_safe = vec![full; eve_count as usize];
    let mut adam_safe = vec![full; adam_count as usize];
    let mut choice = vec![None; n];
    for e in 0..eve_count {
        decode(e, &eve_pos, &mut choice);
        for a in 0..adam_count {
            decode(a, &adam_pos, &mut choice);
            let mut eve_wins = 0u32;
            for v in 0..n {
                if play_outcome(g, &choice, PosId(v)) == Player::Eve {
                    eve_wins |= 1 << v;
                }
            }
            eve_safe[e as usize] &= eve_wins;
            adam_safe[a as usize] &= !eve_wins & full;
        }
    }
    let eve_region = eve_safe.iter().fold(0, |acc, s| acc | s);
    let adam_region = adam_safe.iter().fold(0, |acc, s| acc | s);
    debug_assert_eq!(eve_region & adam_region, 0, "both players cannot win");
    debug_assert_eq!(eve_region | adam_region, full, "positional determinacy");

    let mut strategy = vec![None; n];
    if let Some(e) = eve_safe.iter().position(|&s| s == eve_region) {
        decode(e as u128, &eve_pos, &mut strategy);
    }
    if let Some(a) = adam_safe.iter().position(|&s| s == adam_region) {
        decode(a as u128, &adam_pos, &mut strategy);
    }
    let winner: Vec<Option<Player>> = (0..n)
        .map(|v| Some(if eve_region >> v & 1 == 1 { Player::Eve } else { Player::Adam }))
        .collect();
    Ok(Solution::finish(winner, strategy, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_game;

    fn single(owner: Player, rank: Rank, condition: Condition) -> Game {
        let mut g = Game::new(condition);
        let v = g.add_position(owner, rank);
        g.add_edge(v, v);
        g
    }

    #[test]
    fn trivial_parity_games() {
        let s = solve_parity(&single(Player::Eve, 0, Condition::Parity));
        assert_eq!(s.winner, vec![Player::Eve]);
        assert_eq!(s.strategy, vec![Some(PosId(0))]);
        let s = solve_parity(&single(Player::Eve, 1, Condition::Parity));
        assert_eq!(s.winner, vec![Player::Adam]);
        assert_eq!(s.strategy, vec![None]);
    }

    #[test]
    fn trivial_weak_games() {
        assert_eq!(solve_weak(&single(Player::Adam, 0, Condition::Weak)).winner, vec![Player::Eve]);
        assert_eq!(solve_weak(&single(Player::Eve, 1, Condition::Weak)).winner, vec![Player::Adam]);
    }

    #[test]
    fn brute_force_matches_trivial_games() {
        for (owner, rank, expect) in [(Player::Eve, 0, Player::Eve), (Player::Eve, 1, Player::Adam)] {
            for c in [Condition::Parity, Condition::Weak] {
                let s = brute_force_solve(&single(owner, rank, c)).unwrap();
                assert_eq!(s.winner, vec![expect]);
            }
        }
    }

    #[test]
    fn dead_end_chain() {
        let g = parse_game(
            "pos a A 0\npos b E 2\npos c E 0\nedge a b\nedge b c\ninit a\ncondition parity\n",
        )
        .unwrap();
        let expected = vec![Player::Adam; 3];
        assert_eq!(brute_force_solve(&g).unwrap().winner, expected);
        assert_eq!(solve_parity(&g).winner, expected);
        assert_eq!(solve_weak(&g.with_condition(Condition::Weak)).winner, expected);
    }

    #[test]
    fn weak_differs_from_parity() {
        // Visiting rank 3 once decides the weak game but not the parity game.
        let g = parse_game(
            "pos a A 3\npos b E 2\nedge a b\nedge b b\ninit a\ncondition weak\n",
        )
        .unwrap();
        assert_eq!(solve_weak(&g).winner, vec![Player::Adam, Player::Eve]);
        assert_eq!(solve_parity(&g.with_condition(Condition::Parity)).winner, vec![Player::Eve; 2]);
    }

    #[test]
    fn size_guard() {
        let mut g = Game::new(Condition::Parity);
        for _ in 0..13 {
            g.add_position(Player::Eve, 0);
        }
        assert!(matches!(brute_force_solve(&g), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn strategy_ties_break_on_lowest_edge() {
        let g = parse_game(
            "pos a E 0\npos b E 0\npos c E 0\nedge a c\nedge a b\nedge b b\nedge c c\ninit a\ncondition parity\n",
        )
        .unwrap();
        let s = solve_parity(&g);
        assert_eq!(s.strategy[0], Some(PosId(2)));
    }
}
