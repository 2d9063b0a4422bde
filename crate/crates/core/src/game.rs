//! Strings-and-Coins model of the narrow boards.
//!
//! A position is kept in the fixed coordinate frame of the original strip:
//! coin `i` is face `i` of the board (left to right, triangles alternating
//! up/down), `Inner(i)` is the string between coins `i` and `i + 1`, and
//! `Leg(i)` is one of the ground strings of coin `i`. Several ground strings on
//! one coin are interchangeable, so they are stored as a multiplicity and a leg
//! cut removes one of them.
//!
//! Components are never stored; they are the maximal runs of live coins joined
//! by uncut inner strings.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GameError;

/// Largest ground multiplicity a coin can carry (open 1x1 boxes).
pub const MAX_LEGS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Game {
    Boxes,
    Triangles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Closed,
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Game::Boxes => "boxes",
            Game::Triangles => "triangles",
        })
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Closed => "closed",
        })
    }
}

impl FromStr for Game {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "boxes" | "b" => Ok(Game::Boxes),
            "triangles" | "t" => Ok(Game::Triangles),
            other => Err(GameError::Parse(format!("unknown game '{other}'"))),
        }
    }
}

impl FromStr for Boundary {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "open" | "o" => Ok(Boundary::Open),
            "closed" | "c" => Ok(Boundary::Closed),
            other => Err(GameError::Parse(format!("unknown boundary '{other}'"))),
        }
    }
}

/// Variant descriptor: which board, which boundary, and its length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameSpec {
    pub game: Game,
    pub boundary: Boundary,
    pub n: usize,
}

impl GameSpec {
    pub fn new(game: Game, boundary: Boundary, n: usize) -> Result<Self, GameError> {
        if n == 0 {
            return Err(GameError::InvalidSpec("board length must be at least 1".into()));
        }
        Ok(GameSpec { game, boundary, n })
    }

    pub fn coin_count(&self) -> usize {
        match self.game {
            Game::Boxes => self.n,
            Game::Triangles => 2 * self.n - 1,
        }
    }

    /// Ground multiplicity of every coin before the first move.
    pub fn initial_legs(&self) -> Vec<u8> {
        let m = self.coin_count();
        match (self.game, self.boundary) {
            (Game::Boxes, Boundary::Closed) => vec![1; m],
            (Game::Boxes, Boundary::Open) => {
                if m == 1 {
                    vec![4]
                } else {
                    let mut legs = vec![2; m];
                    legs[0] = 3;
                    legs[m - 1] = 3;
                    legs
                }
            }
            (Game::Triangles, Boundary::Closed) => {
                (0..m).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect()
            }
            (Game::Triangles, Boundary::Open) => {
                if m == 1 {
                    vec![3]
                } else {
                    let mut legs = vec![1; m];
                    legs[0] = 2;
                    legs[m - 1] = 2;
                    legs
                }
            }
        }
    }

    /// Total number of strings on the starting strip.
    pub fn string_count(&self) -> usize {
        let legs: usize = self.initial_legs().iter().map(|&l| l as usize).sum();
        legs + self.coin_count() - 1
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.game, self.boundary, self.n)
    }
}

impl FromStr for GameSpec {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(GameError::Parse(format!("expected game:boundary:n, got '{s}'")));
        }
        let n = parts[2]
            .parse::<usize>()
            .map_err(|e| GameError::Parse(format!("bad board length '{}': {e}", parts[2])))?;
        GameSpec::new(parts[0].parse()?, parts[1].parse()?, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }

    /// +1 for A, -1 for B.
    pub fn sign(self) -> i32 {
        match self {
            Player::A => 1,
            Player::B => -1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

/// A string to cut, named in the strip's global frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeRef {
    /// One ground string of the given coin.
    Leg(usize),
    /// The string between coin `i` and coin `i + 1`.
    Inner(usize),
}

impl EdgeRef {
    /// Coins the string touches, left to right.
    pub fn coins(self) -> (usize, Option<usize>) {
        match self {
            EdgeRef::Leg(i) => (i, None),
            EdgeRef::Inner(i) => (i, Some(i + 1)),
        }
    }

    pub fn touches(self, coin: usize) -> bool {
        match self {
            EdgeRef::Leg(i) => i == coin,
            EdgeRef::Inner(i) => i == coin || i + 1 == coin,
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRef::Leg(i) => write!(f, "L{i}"),
            EdgeRef::Inner(i) => write!(f, "I{i}"),
        }
    }
}

impl FromStr for EdgeRef {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GameError::Parse(format!("bad string reference '{s}'"));
        let (kind, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "L" | "l" => Ok(EdgeRef::Leg(idx)),
            "I" | "i" => Ok(EdgeRef::Inner(idx)),
            _ => Err(bad()),
        }
    }
}

/// Result of a single cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    /// Coins taken by the mover, left to right.
    pub captured: Vec<usize>,
    /// The mover plays again.
    pub extra_turn: bool,
    pub resulting: Position,
}

/// Opaque memoization key: equal iff the component multisets agree up to
/// reordering and reversing components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalKey {
    Packed(u128),
    Wide(Box<[u8]>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    legs: Vec<u8>,
    inner: Vec<bool>,
    owner: Vec<Option<Player>>,
    to_move: Player,
}

impl Position {
    pub fn initial(spec: &GameSpec) -> Position {
        let m = spec.coin_count();
        Position {
            legs: spec.initial_legs(),
            inner: vec![true; m - 1],
            owner: vec![None; m],
            to_move: Player::A,
        }
    }

    /// Lays the given components side by side in a fresh frame, A to move.
    pub fn from_components<L: AsRef<[u8]>>(components: &[L]) -> Result<Position, GameError> {
        let mut legs = Vec::new();
        let mut inner = Vec::new();
        for comp in components {
            let comp = comp.as_ref();
            if comp.is_empty() {
                return Err(GameError::InvalidPosition("empty component".into()));
            }
            if !legs.is_empty() {
                inner.push(false);
            }
            for (j, &l) in comp.iter().enumerate() {
                if j > 0 {
                    inner.push(true);
                }
                legs.push(l);
            }
        }
        let m = legs.len();
        Position::from_parts(legs, inner, vec![None; m], Player::A)
    }

    /// Builds a position from raw frame data, checking every invariant.
    pub fn from_parts(
        legs: Vec<u8>,
        inner: Vec<bool>,
        owner: Vec<Option<Player>>,
        to_move: Player,
    ) -> Result<Position, GameError> {
        let m = legs.len();
        if owner.len() != m || inner.len() != m.saturating_sub(1) {
            return Err(GameError::InvalidPosition("frame arrays disagree in length".into()));
        }
        let p = Position { legs, inner, owner, to_move };
        for i in 0..m {
            if p.legs[i] > MAX_LEGS {
                return Err(GameError::InvalidPosition(format!("coin {i} has too many legs")));
            }
            if p.owner[i].is_some() {
                if p.legs[i] > 0 || p.has_inner_left(i) || p.has_inner_right(i) {
                    return Err(GameError::InvalidPosition(format!(
                        "captured coin {i} still has strings"
                    )));
                }
            } else if p.degree(i) == 0 {
                return Err(GameError::InvalidPosition(format!("live coin {i} has degree 0")));
            }
        }
        Ok(p)
    }

    /// Size of the coordinate frame, live or not.
    pub fn frame_len(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[u8] {
        &self.legs
    }

    pub fn inner_strings(&self) -> &[bool] {
        &self.inner
    }

    pub fn owners(&self) -> &[Option<Player>] {
        &self.owner
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn with_to_move(mut self, player: Player) -> Position {
        self.to_move = player;
        self
    }

    pub fn is_live(&self, coin: usize) -> bool {
        coin < self.owner.len() && self.owner[coin].is_none()
    }

    pub fn has_inner_left(&self, coin: usize) -> bool {
        coin > 0 && self.inner[coin - 1]
    }

    pub fn has_inner_right(&self, coin: usize) -> bool {
        coin < self.inner.len() && self.inner[coin]
    }

    pub fn degree(&self, coin: usize) -> usize {
        self.legs[coin] as usize
            + self.has_inner_left(coin) as usize
            + self.has_inner_right(coin) as usize
    }

    pub fn remaining(&self) -> usize {
        self.owner.iter().filter(|o| o.is_none()).count()
    }

    pub fn is_terminal(&self) -> bool {
        self.owner.iter().all(Option::is_some)
    }

    pub fn captured_by(&self, player: Player) -> usize {
        self.owner.iter().filter(|&&o| o == Some(player)).count()
    }

    /// Coins captured by A minus coins captured by B.
    pub fn captured_net(&self) -> i32 {
        self.owner.iter().flatten().map(|p| p.sign()).sum()
    }

    /// Number of strings left; the game lasts exactly this many more cuts.
    pub fn string_count(&self) -> usize {
        self.legs.iter().map(|&l| l as usize).sum::<usize>()
            + self.inner.iter().filter(|&&s| s).count()
    }

    /// Coin ranges of the components, left to right.
    pub fn components(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let m = self.frame_len();
        let mut i = 0;
        while i < m {
            if !self.is_live(i) {
                i += 1;
                continue;
            }
            let start = i;
            while self.has_inner_right(i) {
                i += 1;
            }
            out.push(start..i + 1);
            i += 1;
        }
        out
    }

    /// Leg sequences of the components, left to right.
    pub fn component_legs(&self) -> Vec<Vec<u8>> {
        self.components().into_iter().map(|r| self.legs[r].to_vec()).collect()
    }

    pub fn contains_edge(&self, e: EdgeRef) -> bool {
        match e {
            EdgeRef::Leg(i) => i < self.legs.len() && self.legs[i] > 0,
            EdgeRef::Inner(i) => i < self.inner.len() && self.inner[i],
        }
    }

    /// Distinct cuts, component by component; legs before inner strings
    /// within a component, each by index.
    pub fn legal_moves(&self) -> Vec<EdgeRef> {
        let mut moves = Vec::with_capacity(self.string_count());
        for r in self.components() {
            moves.extend(r.clone().filter(|&i| self.legs[i] > 0).map(EdgeRef::Leg));
            moves.extend((r.start..r.end - 1).map(EdgeRef::Inner));
        }
        moves
    }

    pub fn apply_move(&self, e: EdgeRef) -> Result<MoveOutcome, GameError> {
        if !self.contains_edge(e) {
            return Err(GameError::IllegalMove(e));
        }
        let mut next = self.clone();
        match e {
            EdgeRef::Leg(i) => next.legs[i] -= 1,
            EdgeRef::Inner(i) => next.inner[i] = false,
        }
        let mut captured = Vec::new();
        let (a, b) = e.coins();
        for c in std::iter::once(a).chain(b) {
            if next.degree(c) == 0 {
                next.owner[c] = Some(self.to_move);
                captured.push(c);
            }
        }
        let extra_turn = !captured.is_empty() && !next.is_terminal();
        if !extra_turn {
            next.to_move = self.to_move.opponent();
        }
        Ok(MoveOutcome { captured, extra_turn, resulting: next })
    }

    /// Puts back a string that was cut without capturing anything.
    pub fn with_string_restored(&self, e: EdgeRef) -> Result<Position, GameError> {
        let mut p = self.clone();
        match e {
            EdgeRef::Leg(i) if self.is_live(i) && self.legs[i] < MAX_LEGS => p.legs[i] += 1,
            EdgeRef::Inner(i)
                if i + 1 < self.frame_len()
                    && self.is_live(i)
                    && self.is_live(i + 1)
                    && !self.inner[i] =>
            {
                p.inner[i] = true
            }
            _ => return Err(GameError::IllegalMove(e)),
        }
        Ok(p)
    }

    /// Same board with capture credit erased (every taken coin marked as A's).
    pub fn without_history(&self) -> Position {
        let mut p = self.clone();
        for o in p.owner.iter_mut().filter(|o| o.is_some()) {
            *o = Some(Player::A);
        }
        p
    }

    /// Reflection of the whole frame.
    pub fn mirror(&self) -> Position {
        let mut p = self.clone();
        p.legs.reverse();
        p.inner.reverse();
        p.owner.reverse();
        p
    }

    pub fn mirror_edge(&self, e: EdgeRef) -> EdgeRef {
        mirror_edge_in(self.frame_len(), e)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut comps: Vec<Vec<u8>> = self
            .components()
            .into_iter()
            .map(|r| {
                let fwd = &self.legs[r];
                let rev: Vec<u8> = fwd.iter().rev().copied().collect();
                if rev.as_slice() < fwd {
                    rev
                } else {
                    fwd.to_vec()
                }
            })
            .collect();
        comps.sort_unstable();
        let coins: usize = comps.iter().map(Vec::len).sum();
        if coins <= 32 {
            let mut key = 0u128;
            for comp in &comps {
                for (j, &l) in comp.iter().enumerate() {
                    let nibble = l as u128 | if j == 0 { 8 } else { 0 };
                    key = (key << 4) | nibble;
                }
            }
            CanonicalKey::Packed(key)
        } else {
            let mut bytes = Vec::with_capacity(coins);
            for comp in &comps {
                for (j, &l) in comp.iter().enumerate() {
                    bytes.push(l | if j == 0 { 8 } else { 0 });
                }
            }
            CanonicalKey::Wide(bytes.into_boxed_slice())
        }
    }
}

/// Reflects a string reference in a frame of `m` coins.
pub fn mirror_edge_in(m: usize, e: EdgeRef) -> EdgeRef {
    match e {
        EdgeRef::Leg(i) => EdgeRef::Leg(m - 1 - i),
        EdgeRef::Inner(i) => EdgeRef::Inner(m - 2 - i),
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "(empty)");
        }
        for (k, r) in comps.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:[", r.start)?;
            for (j, i) in r.enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.legs[i])?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(game: Game, boundary: Boundary, n: usize) -> GameSpec {
        GameSpec::new(game, boundary, n).unwrap()
    }

    #[test]
    fn initial_closed_boxes() {
        let p = Position::initial(&spec(Game::Boxes, Boundary::Closed, 5));
        assert_eq!(p.component_legs(), vec![vec![1, 1, 1, 1, 1]]);
        assert_eq!(p.inner_strings().iter().filter(|&&s| s).count(), 4);
        assert_eq!(p.captured_net(), 0);
        assert_eq!(p.to_move(), Player::A);
    }

    #[test]
    fn initial_open_triangles() {
        let p = Position::initial(&spec(Game::Triangles, Boundary::Open, 5));
        assert_eq!(p.component_legs(), vec![vec![2, 1, 1, 1, 1, 1, 1, 1, 2]]);
    }

    #[test]
    fn initial_other_variants() {
        let p = Position::initial(&spec(Game::Boxes, Boundary::Closed, 1));
        assert_eq!(p.component_legs(), vec![vec![1]]);
        assert!(p.inner_strings().is_empty());
        let p = Position::initial(&spec(Game::Boxes, Boundary::Open, 4));
        assert_eq!(p.component_legs(), vec![vec![3, 2, 2, 3]]);
        let p = Position::initial(&spec(Game::Boxes, Boundary::Open, 1));
        assert_eq!(p.component_legs(), vec![vec![4]]);
        let p = Position::initial(&spec(Game::Triangles, Boundary::Closed, 3));
        assert_eq!(p.component_legs(), vec![vec![1, 0, 1, 0, 1]]);
    }

    #[test]
    fn zero_length_rejected() {
        assert!(GameSpec::new(Game::Boxes, Boundary::Closed, 0).is_err());
    }

    #[test]
    fn legal_move_counts() {
        let p = Position::initial(&spec(Game::Boxes, Boundary::Closed, 3));
        assert_eq!(p.legal_moves().len(), 5);
        let p = Position::initial(&spec(Game::Boxes, Boundary::Open, 2));
        assert_eq!(p.legal_moves(), vec![EdgeRef::Leg(0), EdgeRef::Leg(1), EdgeRef::Inner(0)]);
        let p = Position::from_components(&[[1u8]]).unwrap();
        assert_eq!(p.legal_moves(), vec![EdgeRef::Leg(0)]);
    }

    #[test]
    fn single_coin_capture_ends_game() {
        let p = Position::from_components(&[[1u8]]).unwrap();
        let out = p.apply_move(EdgeRef::Leg(0)).unwrap();
        assert_eq!(out.captured, vec![0]);
        assert!(!out.extra_turn);
        assert!(out.resulting.is_terminal());
        assert_eq!(out.resulting.captured_net(), 1);
        assert!(out.resulting.legal_moves().is_empty());
    }

    #[test]
    fn inner_cut_splits_without_capture() {
        let p = Position::from_components(&[[1u8, 1]]).unwrap();
        let out = p.apply_move(EdgeRef::Inner(0)).unwrap();
        assert!(out.captured.is_empty());
        assert!(!out.extra_turn);
        assert_eq!(out.resulting.component_legs(), vec![vec![1], vec![1]]);
        assert_eq!(out.resulting.to_move(), Player::B);
    }

    #[test]
    fn inner_cut_takes_far_coin() {
        let p = Position::from_components(&[[1u8, 0]]).unwrap();
        let out = p.apply_move(EdgeRef::Inner(0)).unwrap();
        assert_eq!(out.captured, vec![1]);
        assert!(out.extra_turn);
        assert_eq!(out.resulting.component_legs(), vec![vec![1]]);
        assert_eq!(out.resulting.to_move(), Player::A);
        assert_eq!(out.resulting.captured_net(), 1);
    }

    #[test]
    fn one_cut_takes_two_coins() {
        let p = Position::from_components(&[vec![0u8, 0], vec![1]]).unwrap();
        let out = p.apply_move(EdgeRef::Inner(0)).unwrap();
        assert_eq!(out.captured, vec![0, 1]);
        assert!(out.extra_turn);
    }

    #[test]
    fn illegal_moves_rejected() {
        let p = Position::from_components(&[[1u8, 0]]).unwrap();
        assert!(p.apply_move(EdgeRef::Leg(1)).is_err());
        assert!(p.apply_move(EdgeRef::Inner(1)).is_err());
        assert!(p.apply_move(EdgeRef::Leg(7)).is_err());
    }

    #[test]
    fn degree_zero_coin_rejected() {
        assert!(Position::from_components(&[[0u8]]).is_err());
        assert!(Position::from_components(&[Vec::<u8>::new()]).is_err());
    }

    #[test]
    fn mirror_examples() {
        let p = Position::from_components(&[[1u8, 0, 1]]).unwrap();
        assert_eq!(p.mirror(), p);
        let p = Position::from_components(&[vec![2u8, 1], vec![1]]).unwrap();
        assert_eq!(p.mirror().component_legs(), vec![vec![1], vec![1, 2]]);
        assert_eq!(p.mirror().mirror(), p);
        let p = Position::initial(&spec(Game::Triangles, Boundary::Closed, 4));
        assert_eq!(p.mirror(), p);
    }

    #[test]
    fn mirror_edge_examples() {
        let p = Position::initial(&spec(Game::Boxes, Boundary::Closed, 3));
        assert_eq!(p.mirror_edge(EdgeRef::Leg(0)), EdgeRef::Leg(2));
        assert_eq!(p.mirror_edge(EdgeRef::Leg(1)), EdgeRef::Leg(1));
        let p = Position::initial(&spec(Game::Boxes, Boundary::Closed, 6));
        assert_eq!(p.mirror_edge(EdgeRef::Inner(1)), EdgeRef::Inner(3));
        assert_eq!(p.mirror_edge(EdgeRef::Inner(2)), EdgeRef::Inner(2));
    }

    #[test]
    fn canonical_key_equivalences() {
        let k = |c: &[Vec<u8>]| Position::from_components(c).unwrap().canonical_key();
        assert_eq!(k(&[vec![2, 1]]), k(&[vec![1, 2]]));
        assert_eq!(k(&[vec![1], vec![1, 0]]), k(&[vec![0, 1], vec![1]]));
        assert_ne!(k(&[vec![1, 1]]), k(&[vec![1, 0]]));
        assert_ne!(k(&[vec![1, 1]]), k(&[vec![1], vec![1]]));
    }

    #[test]
    fn wide_keys_for_long_frames() {
        let p = Position::from_components(&[vec![1u8; 40]]).unwrap();
        assert!(matches!(p.canonical_key(), CanonicalKey::Wide(_)));
        assert_eq!(p.canonical_key(), p.mirror().canonical_key());
    }

    #[test]
    fn restore_undoes_quiet_cut() {
        let p = Position::initial(&spec(Game::Triangles, Boundary::Closed, 3));
        for e in p.legal_moves() {
            let out = p.apply_move(e).unwrap();
            if out.captured.is_empty() {
                let back = out.resulting.with_string_restored(e).unwrap();
                assert_eq!(back.with_to_move(Player::A), p);
            }
        }
    }

    #[test]
    fn spec_and_edge_parsing() {
        let s: GameSpec = "triangles:closed:4".parse().unwrap();
        assert_eq!(s, spec(Game::Triangles, Boundary::Closed, 4));
        assert_eq!(s.to_string(), "triangles:closed:4");
        assert!("boxes:closed:0".parse::<GameSpec>().is_err());
        assert_eq!("I3".parse::<EdgeRef>().unwrap(), EdgeRef::Inner(3));
        assert_eq!("L0".parse::<EdgeRef>().unwrap(), EdgeRef::Leg(0));
        assert!("X1".parse::<EdgeRef>().is_err());
    }
}
