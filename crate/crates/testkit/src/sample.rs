//! Deterministic position samplers and enumerators.

use std::collections::{HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use narrow_core::board::BoardState;
use narrow_core::{Boundary, Game, GameSpec, Position};

pub const VARIANTS: [(Game, Boundary); 4] = [
    (Game::Boxes, Boundary::Closed),
    (Game::Boxes, Boundary::Open),
    (Game::Triangles, Boundary::Closed),
    (Game::Triangles, Boundary::Open),
];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A board of one of the four variants: boxes up to 12, triangles up to 7.
pub fn random_spec(rng: &mut StdRng) -> GameSpec {
    let (game, boundary) = VARIANTS[rng.gen_range(0..4)];
    let n = match game {
        Game::Boxes => rng.gen_range(1..=12),
        Game::Triangles => rng.gen_range(1..=7),
    };
    GameSpec::new(game, boundary, n).unwrap()
}

/// A position reached by uniformly random cuts from `spec`'s start, stopping
/// after a uniformly chosen number of cuts.
pub fn random_position_of(rng: &mut StdRng, spec: &GameSpec) -> Position {
    let mut p = Position::initial(spec);
    let cuts = rng.gen_range(0..=spec.string_count());
    for _ in 0..cuts {
        let moves = p.legal_moves();
        let Some(&e) = moves.choose(rng) else { break };
        p = p.apply_move(e).unwrap().resulting;
    }
    p
}

pub fn random_position(rng: &mut StdRng) -> Position {
    let spec = random_spec(rng);
    random_position_of(rng, &spec)
}

pub fn random_live_position(rng: &mut StdRng) -> Position {
    loop {
        let p = random_position(rng);
        if !p.is_terminal() {
            return p;
        }
    }
}

/// A board state reached by random primal edges.
pub fn random_board_state(rng: &mut StdRng) -> BoardState {
    let spec = random_spec(rng);
    let mut st = BoardState::new(spec);
    let cuts = rng.gen_range(0..=spec.string_count());
    for _ in 0..cuts {
        let moves = st.legal_moves();
        let Some(&id) = moves.choose(rng) else { break };
        st.play_primal(id).unwrap();
    }
    st
}

/// Every position reachable from `spec`'s start, one per distinct board
/// (capture history ignored).
pub fn reachable_positions(spec: &GameSpec) -> Vec<Position> {
    let start = Position::initial(spec);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if !seen.insert((p.legs().to_vec(), p.inner_strings().to_vec())) {
            continue;
        }
        for e in p.legal_moves() {
            queue.push_back(p.apply_move(e).unwrap().resulting);
        }
        out.push(p);
    }
    out
}

/// All single components (coin leg counts, every inner string present) with
/// at most `max_strings` strings. Coins carry up to three legs, a lone coin up
/// to four.
pub fn components_up_to(max_strings: usize) -> Vec<Vec<u8>> {
    fn extend(cur: &mut Vec<u8>, strings: usize, max: usize, out: &mut Vec<Vec<u8>>) {
        let k = cur.len();
        let ok = match k {
            0 => false,
            1 => cur[0] >= 1,
            _ => true,
        };
        if ok {
            out.push(cur.clone());
        }
        if k > 0 && strings + 1 > max {
            return;
        }
        let join = if k == 0 { 0 } else { 1 };
        for l in 0..=3u8 {
            let s = strings + join + l as usize;
            if s > max {
                break;
            }
            cur.push(l);
            extend(cur, s, max, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, max_strings, &mut out);
    if max_strings >= 4 {
        out.push(vec![4]);
    }
    out
}

fn strings_in(c: &[u8]) -> usize {
    c.iter().map(|&l| l as usize).sum::<usize>() + c.len() - 1
}

/// Every multiset of components with at most `max_strings` strings in total,
/// laid side by side.
pub fn positions_up_to(max_strings: usize) -> Vec<Position> {
    let comps = components_up_to(max_strings);
    let mut out = Vec::new();
    fn pick(
        comps: &[Vec<u8>],
        from: usize,
        budget: usize,
        cur: &mut Vec<Vec<u8>>,
        out: &mut Vec<Position>,
    ) {
        if !cur.is_empty() {
            out.push(Position::from_components(cur).unwrap());
        }
        for i in from..comps.len() {
            let s = strings_in(&comps[i]);
            if s <= budget {
                cur.push(comps[i].clone());
                pick(comps, i, budget - s, cur, out);
                cur.pop();
            }
        }
    }
    pick(&comps, 0, max_strings, &mut Vec::new(), &mut out);
    out
}

/// Shuffles a list with a fixed seed.
pub fn shuffled<T>(mut v: Vec<T>, seed: u64) -> Vec<T> {
    v.shuffle(&mut rng(seed));
    v
}
