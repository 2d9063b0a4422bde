//! Property checks over many positions. Each returns the number of cases
//! checked, or a description of the first failure.

use rand::seq::SliceRandom;

use narrow_core::analysis::{classify_edge_direct, classify_edge_structural, decompose};
use narrow_core::board::{all_edges, BoardState};
use narrow_core::solver::Solver;
use narrow_core::{Boundary, Game, GameSpec, Player, Position};

use crate::oracle::brute_position_value;
use crate::sample::{self, random_board_state, random_live_position, random_position, random_spec, reachable_positions};

pub type SuiteResult = Result<usize, String>;

/// Structural and direct labels of every legal base-graph cut in `p`.
/// Returns the number of cuts compared.
pub fn compare_classifiers(p: &Position) -> SuiteResult {
    let base = decompose(p).base_edges;
    let mut n = 0;
    for e in p.legal_moves().into_iter().filter(|e| base.contains(e)) {
        let s = classify_edge_structural(p, e).map_err(|err| format!("{p}: {err}"))?;
        let d = classify_edge_direct(p, e).map_err(|err| format!("{p}: {err}"))?;
        if s != d {
            return Err(format!("{p} cut {e}: structural {s:?}, direct {d:?}"));
        }
        n += 1;
    }
    Ok(n)
}

/// Exhaustive over closed triangles up to `n_max`, then `samples` random
/// positions from all four variants.
pub fn classifier_equivalence(n_max: usize, samples: usize, seed: u64) -> SuiteResult {
    let mut cuts = 0;
    for n in 1..=n_max {
        let spec = GameSpec::new(Game::Triangles, Boundary::Closed, n).unwrap();
        for p in reachable_positions(&spec) {
            cuts += compare_classifiers(&p)?;
        }
    }
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        cuts += compare_classifiers(&random_position(&mut rng))?;
    }
    Ok(cuts)
}

/// Value and every move value agree between a position and its reflection,
/// each searched by its own solver.
pub fn mirror_invariance(samples: usize, seed: u64) -> SuiteResult {
    let mut rng = sample::rng(seed);
    let (mut left, mut right) = (Solver::new(), Solver::new());
    for _ in 0..samples {
        let p = small_live(&mut rng);
        let q = p.mirror();
        let (a, b) = (left.value(&p).unwrap(), right.value(&q).unwrap());
        if a != b {
            return Err(format!("{p}: value {a}, mirrored {b}"));
        }
        for e in p.legal_moves() {
            let a = left.move_value(&p, e).unwrap();
            let b = right.move_value(&q, p.mirror_edge(e)).unwrap();
            if a != b {
                return Err(format!("{p} cut {e}: {a}, mirrored {b}"));
            }
        }
    }
    Ok(samples)
}

/// Live positions cheap enough to solve thousands of times.
fn small_live(rng: &mut rand::rngs::StdRng) -> Position {
    loop {
        let p = random_live_position(rng);
        if p.string_count() <= 24 {
            return p;
        }
    }
}

/// The memoized solver against the reference search on every component
/// multiset with at most `max_strings` strings, and on each reflection.
pub fn oracle_agreement(max_strings: usize) -> SuiteResult {
    let mut solver = Solver::new();
    let positions = sample::positions_up_to(max_strings);
    for p in &positions {
        let want = brute_position_value(p);
        for q in [p.clone(), p.mirror()] {
            let got = solver.value(&q).unwrap();
            if got != want {
                return Err(format!("{q}: solver {got}, reference {want}"));
            }
        }
    }
    Ok(positions.len())
}

/// Random games to the end, checking every cut.
pub fn playout_conservation(games: usize, seed: u64) -> SuiteResult {
    let mut rng = sample::rng(seed);
    for _ in 0..games {
        let spec = random_spec(&mut rng);
        let mut p = Position::initial(&spec);
        let m = spec.coin_count();
        let strings = spec.string_count();
        if p.string_count() != strings || p.frame_len() != m {
            return Err(format!("{spec}: initial position has the wrong size"));
        }
        let mut tally = [0usize; 2];
        let mut cuts = 0;
        while !p.is_terminal() {
            let moves = p.legal_moves();
            let &e = moves.choose(&mut rng).unwrap();
            let out = p.apply_move(e).unwrap();
            let q = &out.resulting;
            cuts += 1;
            if q.string_count() + 1 != p.string_count() {
                return Err(format!("{p} cut {e}: string count did not drop by one"));
            }
            let newly: Vec<usize> = (0..m).filter(|&c| p.is_live(c) && !q.is_live(c)).collect();
            if newly != out.captured || newly.iter().any(|&c| !e.touches(c)) {
                return Err(format!("{p} cut {e}: captured {:?}, coins that died {newly:?}", out.captured));
            }
            if out.extra_turn != (!out.captured.is_empty() && !q.is_terminal()) {
                return Err(format!("{p} cut {e}: wrong extra-turn flag"));
            }
            let mover_keeps = q.to_move() == p.to_move();
            if mover_keeps != out.extra_turn {
                return Err(format!("{p} cut {e}: turn passed incorrectly"));
            }
            tally[(p.to_move() == Player::B) as usize] += out.captured.len();
            let live = (0..m).filter(|&c| q.is_live(c)).count();
            if q.captured_by(Player::A) != tally[0] || q.captured_by(Player::B) != tally[1] {
                return Err(format!("{q}: owner tally disagrees with captures"));
            }
            if tally[0] + tally[1] + live != m {
                return Err(format!("{q}: coins not conserved"));
            }
            if cuts > strings {
                return Err(format!("{spec}: game did not end after {strings} cuts"));
            }
            p = out.resulting;
        }
        if cuts != strings {
            return Err(format!("{spec}: game ended after {cuts} of {strings} cuts"));
        }
    }
    Ok(games)
}

/// Cutting then reflecting equals reflecting then cutting the reflected string.
pub fn mirror_commutation(samples: usize, seed: u64) -> SuiteResult {
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let p = random_live_position(&mut rng);
        let moves = p.legal_moves();
        let &e = moves.choose(&mut rng).unwrap();
        let a = p.apply_move(e).unwrap();
        let b = p.mirror().apply_move(p.mirror_edge(e)).unwrap();
        let m = p.frame_len();
        let mut mirrored: Vec<usize> = a.captured.iter().map(|&c| m - 1 - c).collect();
        mirrored.sort_unstable();
        let mut captured = b.captured.clone();
        captured.sort_unstable();
        if a.resulting.mirror() != b.resulting || mirrored != captured || a.extra_turn != b.extra_turn {
            return Err(format!("{p} cut {e}: reflection does not commute"));
        }
    }
    Ok(samples)
}

/// Encoding, wire form and primal/dual correspondence on random board states.
pub fn board_round_trips(samples: usize, seed: u64) -> SuiteResult {
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let st = random_board_state(&mut rng);
        let text = st.encode();
        if BoardState::decode(&text).as_ref() != Ok(&st) {
            return Err(format!("{text}: decode does not round-trip"));
        }
        if BoardState::from_wire(&st.wire()).as_ref() != Ok(&st) {
            return Err(format!("{text}: wire form does not round-trip"));
        }
        let p = &st.position;
        if st.board.score(Player::A) != p.captured_by(Player::A) || st.board.score(Player::B) != p.captured_by(Player::B) {
            return Err(format!("{text}: face owners disagree with captures"));
        }
        let undrawn = st.board.undrawn();
        if undrawn.len() != p.string_count() {
            return Err(format!("{text}: {} undrawn edges for {} strings", undrawn.len(), p.string_count()));
        }
        let legal = p.legal_moves();
        for &id in &undrawn {
            let e = st.board.primal_to_dual(id).map_err(|err| err.to_string())?;
            if !legal.contains(&e) {
                return Err(format!("{text}: {id} maps to {e}, which is not a legal cut"));
            }
            let back = st.board.dual_to_primal(e).map_err(|err| err.to_string())?;
            // a leg bundle maps back to its first undrawn edge; anything else exactly
            let bundle = undrawn.iter().filter(|&&o| st.board.primal_to_dual(o) == Ok(e)).count();
            if st.board.primal_to_dual(back) != Ok(e) || (bundle == 1 && back != id) {
                return Err(format!("{text}: {id} -> {e} maps back to {back}"));
            }
        }
        for e in legal {
            st.board.dual_to_primal(e).map_err(|err| format!("{text}: {e}: {err}"))?;
        }
        if st.board.drawn.len() + undrawn.len() != all_edges(&st.spec()).len() {
            return Err(format!("{text}: edge count mismatch"));
        }
    }
    Ok(samples)
}
