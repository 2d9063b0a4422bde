//! Exact net-score search.
//!
//! Values are relative to the player to move and cover only the coins still on
//! the board, so the memo is keyed on the canonical component multiset alone.
//! A capturing cut keeps the mover, so its continuation is added rather than
//! negated.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::game::{Boundary, CanonicalKey, EdgeRef, Game, GameSpec, Position};

/// Default memo capacity, in entries.
pub const DEFAULT_MEMO_BUDGET: usize = 150_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    /// Optimal net score for the player to move over the remaining coins.
    pub value: i32,
    /// First move in `legal_moves` order achieving `value`; `None` when the
    /// game is over.
    pub best: Option<EdgeRef>,
    /// Canonical keys newly evaluated by this call.
    pub nodes: usize,
}

pub struct Solver {
    memo: HashMap<CanonicalKey, i8>,
    budget: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver::with_budget(DEFAULT_MEMO_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Solver {
        Solver { memo: HashMap::new(), budget }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Value to the mover of cutting `e` in `p`.
    pub fn move_value(&mut self, p: &Position, e: EdgeRef) -> Result<i32, SolverError> {
        let out = p.apply_move(e).expect("move_value called with an illegal move");
        let child = self.value(&out.resulting)?;
        Ok(if out.captured.is_empty() {
            -child
        } else {
            out.captured.len() as i32 + child
        })
    }

    pub fn value(&mut self, p: &Position) -> Result<i32, SolverError> {
        if p.is_terminal() {
            return Ok(0);
        }
        let key = p.canonical_key();
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v as i32);
        }
        let mut best = i32::MIN;
        for e in p.legal_moves() {
            best = best.max(self.move_value(p, e)?);
            if best == p.remaining() as i32 {
                break;
            }
        }
        if self.memo.len() >= self.budget {
            return Err(SolverError::MemoBudgetExceeded { budget: self.budget });
        }
        self.memo.insert(key, best as i8);
        Ok(best)
    }

    pub fn solve(&mut self, p: &Position) -> Result<SolveResult, SolverError> {
        let before = self.memo.len();
        let value = self.value(p)?;
        let mut best = None;
        for e in p.legal_moves() {
            if self.move_value(p, e)? == value {
                best = Some(e);
                break;
            }
        }
        Ok(SolveResult { value, best, nodes: self.memo.len() - before })
    }

    /// A full line of optimal play from `p`, following the tie-break.
    pub fn principal_variation(&mut self, p: &Position) -> Result<Vec<EdgeRef>, SolverError> {
        let mut line = Vec::new();
        let mut cur = p.clone();
        while let Some(e) = self.solve(&cur)?.best {
            line.push(e);
            cur = cur.apply_move(e).expect("best move is legal").resulting;
        }
        Ok(line)
    }

    /// Optimal first-player net score for each board length `1..=n_max`.
    pub fn score_table(
        &mut self,
        game: Game,
        boundary: Boundary,
        n_max: usize,
    ) -> Vec<(usize, Result<i32, SolverError>)> {
        (1..=n_max)
            .map(|n| {
                let spec = GameSpec { game, boundary, n };
                (n, self.value(&Position::initial(&spec)))
            })
            .collect()
    }
}

/// Convenience wrapper with a fresh solver.
pub fn solve(p: &Position) -> Result<SolveResult, SolverError> {
    Solver::new().solve(p)
}

pub fn score_table(game: Game, boundary: Boundary, n_max: usize) -> Vec<(usize, Result<i32, SolverError>)> {
    Solver::new().score_table(game, boundary, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;

    fn initial(game: Game, boundary: Boundary, n: usize) -> Position {
        Position::initial(&GameSpec::new(game, boundary, n).unwrap())
    }

    #[test]
    fn table_rows_small() {
        let mut s = Solver::new();
        assert_eq!(s.solve(&initial(Game::Boxes, Boundary::Closed, 3)).unwrap().value, 3);
        assert_eq!(s.solve(&initial(Game::Boxes, Boundary::Closed, 2)).unwrap().value, -2);
        assert_eq!(s.solve(&initial(Game::Triangles, Boundary::Closed, 2)).unwrap().value, -3);
    }

    #[test]
    fn single_coin() {
        let p = Position::from_components(&[[1u8]]).unwrap();
        let r = solve(&p).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.best, Some(EdgeRef::Leg(0)));
    }

    #[test]
    fn terminal_is_zero() {
        let p = Position::from_components(&[[1u8]]).unwrap();
        let done = p.apply_move(EdgeRef::Leg(0)).unwrap().resulting;
        let r = solve(&done).unwrap();
        assert_eq!((r.value, r.best), (0, None));
    }

    #[test]
    fn score_tables() {
        let rows: Vec<i32> = score_table(Game::Boxes, Boundary::Closed, 4)
            .into_iter()
            .map(|(_, v)| v.unwrap())
            .collect();
        assert_eq!(rows, vec![1, -2, 3, 0]);
        let rows: Vec<i32> = score_table(Game::Triangles, Boundary::Closed, 6)
            .into_iter()
            .map(|(_, v)| v.unwrap())
            .collect();
        assert_eq!(rows, vec![1, -3, 5, 1, 1, 5]);
        assert_eq!(score_table(Game::Boxes, Boundary::Closed, 1)[0].1, Ok(1));
    }

    fn play_out(p: &Position, line: &[EdgeRef]) -> Position {
        line.iter().fold(p.clone(), |q, &e| q.apply_move(e).unwrap().resulting)
    }

    #[test]
    fn principal_variations() {
        let mut s = Solver::new();
        let one = Position::from_components(&[[1u8]]).unwrap();
        assert_eq!(s.principal_variation(&one).unwrap(), vec![EdgeRef::Leg(0)]);

        let pair = Position::from_components(&[[1u8, 1]]).unwrap();
        let pv = s.principal_variation(&pair).unwrap();
        assert_eq!(pv.len(), 3);
        assert_eq!(play_out(&pair, &pv).captured_net(), -2);

        let b2 = initial(Game::Boxes, Boundary::Closed, 2);
        let pv = s.principal_variation(&b2).unwrap();
        assert_eq!(play_out(&b2, &pv).captured_net(), -2);
    }

    #[test]
    fn budget_overflow_fails_fast() {
        let mut s = Solver::with_budget(3);
        let err = s.solve(&initial(Game::Boxes, Boundary::Closed, 6)).unwrap_err();
        assert_eq!(err, SolverError::MemoBudgetExceeded { budget: 3 });
    }

    #[test]
    fn deterministic_best_moves() {
        let p = initial(Game::Triangles, Boundary::Closed, 4);
        let a = Solver::new().solve(&p).unwrap();
        let b = Solver::new().solve(&p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn value_is_mover_relative() {
        let p = Position::from_components(&[[1u8, 1]]).unwrap();
        let mut s = Solver::new();
        assert_eq!(s.value(&p).unwrap(), s.value(&p.clone().with_to_move(Player::B)).unwrap());
    }
}
