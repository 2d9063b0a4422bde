//! Dots view of a strip: primal edge names, the primal/dual correspondence,
//! text encodings and ASCII rendering.
//!
//! Faces are numbered left to right and share their index with the coin of the
//! dual graph. For triangles, up-triangle `i` is face `2i` and down-triangle
//! `i` is face `2i + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::BoardError;
use crate::game::{Boundary, EdgeRef, Game, GameSpec, MoveOutcome, Player, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A primal edge. Boxes use `Top`, `Bottom` and `Vert`; triangles use `Top`
/// (the upper edge of a down-triangle), `Base` (the lower edge of an
/// up-triangle), `Slant` and `Side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimalEdgeId {
    Top(usize),
    Bottom(usize),
    /// Vertical line `i`, left of box `i`. `Vert(0)` and `Vert(n)` are the ends.
    Vert(usize),
    Base(usize),
    /// Slanted edge shared by faces `j` and `j + 1`.
    Slant(usize),
    Side(Side),
}

impl fmt::Display for PrimalEdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimalEdgeId::Top(i) => write!(f, "T{i}"),
            PrimalEdgeId::Bottom(i) | PrimalEdgeId::Base(i) => write!(f, "B{i}"),
            PrimalEdgeId::Vert(i) => write!(f, "V{i}"),
            PrimalEdgeId::Slant(j) => write!(f, "S{j}"),
            PrimalEdgeId::Side(Side::Left) => f.write_str("L"),
            PrimalEdgeId::Side(Side::Right) => f.write_str("R"),
        }
    }
}

impl PrimalEdgeId {
    /// Parses an edge name as written for the given game and checks it exists.
    pub fn parse(spec: &GameSpec, s: &str) -> Result<PrimalEdgeId, BoardError> {
        let bad = || BoardError::NoSuchEdge(s.to_string());
        let id = match (spec.game, s) {
            (Game::Triangles, "L" | "l") => PrimalEdgeId::Side(Side::Left),
            (Game::Triangles, "R" | "r") => PrimalEdgeId::Side(Side::Right),
            _ => {
                let (kind, idx) = s.split_at_checked(1).ok_or_else(bad)?;
                let idx: usize = idx.parse().map_err(|_| bad())?;
                match (spec.game, kind.to_ascii_uppercase().as_str()) {
                    (_, "T") => PrimalEdgeId::Top(idx),
                    (Game::Boxes, "B") => PrimalEdgeId::Bottom(idx),
                    (Game::Boxes, "V") => PrimalEdgeId::Vert(idx),
                    (Game::Triangles, "B") => PrimalEdgeId::Base(idx),
                    (Game::Triangles, "S") => PrimalEdgeId::Slant(idx),
                    _ => return Err(bad()),
                }
            }
        };
        if exists(spec, id) {
            Ok(id)
        } else {
            Err(bad())
        }
    }
}

fn exists(spec: &GameSpec, id: PrimalEdgeId) -> bool {
    let n = spec.n;
    match (spec.game, id) {
        (Game::Boxes, PrimalEdgeId::Top(i) | PrimalEdgeId::Bottom(i)) => i < n,
        (Game::Boxes, PrimalEdgeId::Vert(i)) => i <= n,
        (Game::Triangles, PrimalEdgeId::Top(i)) => i + 1 < n,
        (Game::Triangles, PrimalEdgeId::Base(i)) => i < n,
        (Game::Triangles, PrimalEdgeId::Slant(j)) => j + 2 < 2 * n,
        (Game::Triangles, PrimalEdgeId::Side(_)) => true,
        _ => false,
    }
}

/// Every primal edge of the board, in a fixed order.
pub fn all_edges(spec: &GameSpec) -> Vec<PrimalEdgeId> {
    let n = spec.n;
    match spec.game {
        Game::Boxes => (0..n)
            .map(PrimalEdgeId::Top)
            .chain((0..n).map(PrimalEdgeId::Bottom))
            .chain((0..=n).map(PrimalEdgeId::Vert))
            .collect(),
        Game::Triangles => (0..n - 1)
            .map(PrimalEdgeId::Top)
            .chain((0..n).map(PrimalEdgeId::Base))
            .chain((0..2 * n - 2).map(PrimalEdgeId::Slant))
            .chain([PrimalEdgeId::Side(Side::Left), PrimalEdgeId::Side(Side::Right)])
            .collect(),
    }
}

/// Edges drawn before the first move: top and sides on closed boards.
pub fn initially_drawn(spec: &GameSpec) -> BTreeSet<PrimalEdgeId> {
    if spec.boundary == Boundary::Open {
        return BTreeSet::new();
    }
    all_edges(spec)
        .into_iter()
        .filter(|&id| match id {
            PrimalEdgeId::Top(_) | PrimalEdgeId::Side(_) => true,
            PrimalEdgeId::Vert(i) => i == 0 || i == spec.n,
            _ => false,
        })
        .collect()
}

/// The string an edge stands for, whether or not it has been drawn.
pub fn dual_of(spec: &GameSpec, id: PrimalEdgeId) -> EdgeRef {
    let n = spec.n;
    match id {
        PrimalEdgeId::Top(i) => match spec.game {
            Game::Boxes => EdgeRef::Leg(i),
            Game::Triangles => EdgeRef::Leg(2 * i + 1),
        },
        PrimalEdgeId::Bottom(i) => EdgeRef::Leg(i),
        PrimalEdgeId::Vert(0) => EdgeRef::Leg(0),
        PrimalEdgeId::Vert(i) if i == n => EdgeRef::Leg(n - 1),
        PrimalEdgeId::Vert(i) => EdgeRef::Inner(i - 1),
        PrimalEdgeId::Base(i) => EdgeRef::Leg(2 * i),
        PrimalEdgeId::Slant(j) => EdgeRef::Inner(j),
        PrimalEdgeId::Side(Side::Left) => EdgeRef::Leg(0),
        PrimalEdgeId::Side(Side::Right) => EdgeRef::Leg(2 * n - 2),
    }
}

/// Primal edges drawn as a cut of one of the face's legs, in the order they
/// are chosen: top, then bottom or base, then side.
pub fn leg_edges(spec: &GameSpec, face: usize) -> Vec<PrimalEdgeId> {
    let n = spec.n;
    let mut out = Vec::new();
    match spec.game {
        Game::Boxes => {
            out.push(PrimalEdgeId::Top(face));
            out.push(PrimalEdgeId::Bottom(face));
            if face == 0 {
                out.push(PrimalEdgeId::Vert(0));
            }
            if face + 1 == n {
                out.push(PrimalEdgeId::Vert(n));
            }
        }
        Game::Triangles => {
            if face % 2 == 1 {
                out.push(PrimalEdgeId::Top(face / 2));
            } else {
                out.push(PrimalEdgeId::Base(face / 2));
                if face == 0 {
                    out.push(PrimalEdgeId::Side(Side::Left));
                }
                if face + 2 == 2 * n {
                    out.push(PrimalEdgeId::Side(Side::Right));
                }
            }
        }
    }
    out
}

/// All edges bounding a face.
pub fn face_edges(spec: &GameSpec, face: usize) -> Vec<PrimalEdgeId> {
    let mut out = leg_edges(spec, face);
    let (left, right) = match spec.game {
        Game::Boxes => (Some(PrimalEdgeId::Vert(face)), Some(PrimalEdgeId::Vert(face + 1))),
        Game::Triangles => (
            face.checked_sub(1).map(PrimalEdgeId::Slant),
            (face + 1 < spec.coin_count()).then_some(PrimalEdgeId::Slant(face)),
        ),
    };
    for id in left.into_iter().chain(right) {
        if !out.contains(&id) {
            out.push(id);
        }
    }
    out
}

/// Drawn edges and owned faces of a board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalBoard {
    pub spec: GameSpec,
    pub drawn: BTreeSet<PrimalEdgeId>,
    pub owners: BTreeMap<usize, Player>,
}

impl PrimalBoard {
    pub fn new(spec: GameSpec) -> PrimalBoard {
        PrimalBoard { spec, drawn: initially_drawn(&spec), owners: BTreeMap::new() }
    }

    pub fn is_drawn(&self, id: PrimalEdgeId) -> bool {
        self.drawn.contains(&id)
    }

    pub fn undrawn(&self) -> Vec<PrimalEdgeId> {
        all_edges(&self.spec).into_iter().filter(|id| !self.is_drawn(*id)).collect()
    }

    /// The string cut by drawing `id`.
    pub fn primal_to_dual(&self, id: PrimalEdgeId) -> Result<EdgeRef, BoardError> {
        if !exists(&self.spec, id) {
            return Err(BoardError::NoSuchEdge(id.to_string()));
        }
        if self.is_drawn(id) {
            return Err(BoardError::AlreadyDrawn(id.to_string()));
        }
        Ok(dual_of(&self.spec, id))
    }

    /// The edge drawn for a cut of `e`. Leg cuts pick by [`leg_edges`] order.
    pub fn dual_to_primal(&self, e: EdgeRef) -> Result<PrimalEdgeId, BoardError> {
        let missing = || BoardError::NoSuchEdge(e.to_string());
        match e {
            EdgeRef::Leg(c) if c < self.spec.coin_count() => leg_edges(&self.spec, c)
                .into_iter()
                .find(|id| !self.is_drawn(*id))
                .ok_or_else(missing),
            EdgeRef::Leg(_) => Err(missing()),
            EdgeRef::Inner(j) if j + 1 < self.spec.coin_count() => {
                let id = match self.spec.game {
                    Game::Boxes => PrimalEdgeId::Vert(j + 1),
                    Game::Triangles => PrimalEdgeId::Slant(j),
                };
                if self.is_drawn(id) {
                    Err(BoardError::AlreadyDrawn(id.to_string()))
                } else {
                    Ok(id)
                }
            }
            EdgeRef::Inner(_) => Err(missing()),
        }
    }

    /// The dual position this board shows, with `to_move` to play.
    pub fn position(&self, to_move: Player) -> Result<Position, BoardError> {
        let m = self.spec.coin_count();
        let legs = (0..m)
            .map(|c| leg_edges(&self.spec, c).iter().filter(|id| !self.is_drawn(**id)).count() as u8)
            .collect();
        let inner = (0..m.saturating_sub(1))
            .map(|j| self.dual_to_primal(EdgeRef::Inner(j)).is_ok())
            .collect();
        let owner = (0..m).map(|c| self.owners.get(&c).copied()).collect();
        Position::from_parts(legs, inner, owner, to_move).map_err(|e| BoardError::Inconsistent(e.to_string()))
    }

    /// Faces owned by a player.
    pub fn score(&self, player: Player) -> usize {
        self.owners.values().filter(|&&p| p == player).count()
    }
}

/// Brings `board` up to date with `p`, drawing the primal image of every
/// string cut since. Extra leg cuts take edges in [`leg_edges`] order.
pub fn sync(board: &PrimalBoard, p: &Position) -> Result<PrimalBoard, BoardError> {
    let spec = board.spec;
    let m = spec.coin_count();
    if p.frame_len() != m {
        return Err(BoardError::Inconsistent(format!("position has {} coins, board has {m}", p.frame_len())));
    }
    let mut out = board.clone();
    for j in 0..m.saturating_sub(1) {
        let present = p.inner_strings()[j];
        match (present, board.dual_to_primal(EdgeRef::Inner(j))) {
            (true, Err(_)) => {
                return Err(BoardError::Inconsistent(format!("{} is drawn but still uncut", EdgeRef::Inner(j))))
            }
            (false, Ok(id)) => {
                out.drawn.insert(id);
            }
            _ => {}
        }
    }
    for c in 0..m {
        let undrawn: Vec<_> = leg_edges(&spec, c).into_iter().filter(|id| !board.is_drawn(*id)).collect();
        let keep = p.legs()[c] as usize;
        if undrawn.len() < keep {
            return Err(BoardError::Inconsistent(format!("face {c} has fewer open edges than legs")));
        }
        out.drawn.extend(&undrawn[..undrawn.len() - keep]);
    }
    for c in 0..m {
        match (board.owners.get(&c), p.owners()[c]) {
            (Some(a), Some(b)) if *a != b => {
                return Err(BoardError::Inconsistent(format!("face {c} changed owner")))
            }
            (Some(_), None) => return Err(BoardError::Inconsistent(format!("face {c} is owned but live"))),
            (_, Some(b)) => {
                out.owners.insert(c, b);
            }
            _ => {}
        }
    }
    Ok(out)
}

fn check_board(board: &PrimalBoard) -> Result<(), BoardError> {
    let spec = &board.spec;
    if let Some(id) = initially_drawn(spec).into_iter().find(|id| !board.is_drawn(*id)) {
        return Err(BoardError::Decode(format!("boundary edge {id} must be drawn on a closed board")));
    }
    for c in 0..spec.coin_count() {
        let closed = face_edges(spec, c).iter().all(|id| board.is_drawn(*id));
        if closed != board.owners.contains_key(&c) {
            return Err(BoardError::Decode(format!("face {c} ownership does not match its edges")));
        }
    }
    if let Some(&c) = board.owners.keys().find(|&&c| c >= spec.coin_count()) {
        return Err(BoardError::Decode(format!("no face {c}")));
    }
    Ok(())
}

/// A board together with the dual position it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardState {
    pub board: PrimalBoard,
    pub position: Position,
}

impl BoardState {
    pub fn new(spec: GameSpec) -> BoardState {
        BoardState { board: PrimalBoard::new(spec), position: Position::initial(&spec) }
    }

    pub fn spec(&self) -> GameSpec {
        self.board.spec
    }

    pub fn to_move(&self) -> Player {
        self.position.to_move()
    }

    pub fn is_over(&self) -> bool {
        self.position.is_terminal()
    }

    /// Net score for player A.
    pub fn net_score(&self) -> i32 {
        self.position.captured_net()
    }

    pub fn legal_moves(&self) -> Vec<PrimalEdgeId> {
        if self.is_over() {
            Vec::new()
        } else {
            self.board.undrawn()
        }
    }

    /// Draws a primal edge for the player to move.
    pub fn play_primal(&mut self, id: PrimalEdgeId) -> Result<MoveOutcome, BoardError> {
        let e = self.board.primal_to_dual(id)?;
        let out = self.position.apply_move(e)?;
        self.board.drawn.insert(id);
        for &c in &out.captured {
            self.board.owners.insert(c, self.position.to_move());
        }
        self.position = out.resulting.clone();
        Ok(out)
    }

    /// Cuts a string, drawing its primal image. Returns the edge drawn.
    pub fn play_dual(&mut self, e: EdgeRef) -> Result<(PrimalEdgeId, MoveOutcome), BoardError> {
        let id = self.board.dual_to_primal(e)?;
        let out = self.play_primal(id)?;
        Ok((id, out))
    }

    /// Single-line encoding: `game:boundary:n/drawn/owners/to_move`.
    pub fn encode(&self) -> String {
        format!("{}/{}", encode_board(&self.board), self.to_move())
    }

    pub fn decode(s: &str) -> Result<BoardState, BoardError> {
        let (board, to_move) = s
            .trim()
            .rsplit_once('/')
            .ok_or_else(|| BoardError::Decode(format!("missing player to move in '{s}'")))?;
        let board = decode_board(board)?;
        let to_move = match to_move {
            "A" => Player::A,
            "B" => Player::B,
            other => return Err(BoardError::Decode(format!("bad player '{other}'"))),
        };
        let position = board.position(to_move)?;
        Ok(BoardState { board, position })
    }

    pub fn wire(&self) -> WireState {
        WireState {
            spec: self.spec(),
            drawn: self.board.drawn.iter().map(ToString::to_string).collect(),
            owners: self.board.owners.iter().map(|(&face, &player)| WireOwner { face, player }).collect(),
            to_move: self.to_move(),
            net_score: self.net_score(),
            legal_moves: self.legal_moves().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_wire(w: &WireState) -> Result<BoardState, BoardError> {
        let board = PrimalBoard {
            spec: w.spec,
            drawn: w.drawn.iter().map(|s| PrimalEdgeId::parse(&w.spec, s)).collect::<Result<_, _>>()?,
            owners: w.owners.iter().map(|o| (o.face, o.player)).collect(),
        };
        check_board(&board)?;
        let position = board.position(w.to_move)?;
        let state = BoardState { board, position };
        if state.net_score() != w.net_score {
            return Err(BoardError::Decode("net score does not match the owners".into()));
        }
        Ok(state)
    }
}

/// `game:boundary:n/drawn/owners`, drawn edges sorted, owners as `0A,2B`.
pub fn encode_board(board: &PrimalBoard) -> String {
    let drawn: Vec<String> = board.drawn.iter().map(ToString::to_string).collect();
    let owners: Vec<String> = board.owners.iter().map(|(c, p)| format!("{c}{p}")).collect();
    format!("{}/{}/{}", board.spec, drawn.join(","), owners.join(","))
}

pub fn decode_board(s: &str) -> Result<PrimalBoard, BoardError> {
    let bad = |what: &str| BoardError::Decode(format!("{what} in '{s}'"));
    let parts: Vec<&str> = s.trim().split('/').collect();
    let [spec, drawn, owners] = parts[..] else {
        return Err(bad("expected three '/'-separated fields"));
    };
    let spec: GameSpec = spec.parse().map_err(|e: crate::GameError| BoardError::Decode(e.to_string()))?;
    let mut board = PrimalBoard { spec, drawn: BTreeSet::new(), owners: BTreeMap::new() };
    for name in drawn.split(',').filter(|t| !t.is_empty()) {
        if !board.drawn.insert(PrimalEdgeId::parse(&spec, name)?) {
            return Err(bad("repeated edge"));
        }
    }
    for item in owners.split(',').filter(|t| !t.is_empty()) {
        let (face, player) = item.split_at_checked(item.len() - 1).ok_or_else(|| bad("bad owner"))?;
        let face: usize = face.parse().map_err(|_| bad("bad owner face"))?;
        let player = match player {
            "A" => Player::A,
            "B" => Player::B,
            _ => return Err(bad("bad owner player")),
        };
        if board.owners.insert(face, player).is_some() {
            return Err(bad("repeated owner"));
        }
    }
    check_board(&board)?;
    if encode_board(&board) != s.trim() {
        return Err(bad("not in canonical order"));
    }
    Ok(board)
}

/// Reads a fixture file: one encoded state per line, `#` starts a comment.
pub fn parse_fixtures(text: &str) -> Result<Vec<BoardState>, BoardError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(BoardState::decode)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireOwner {
    pub face: usize,
    pub player: Player,
}

/// Structured state exchanged with clients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireState {
    pub spec: GameSpec,
    pub drawn: Vec<String>,
    pub owners: Vec<WireOwner>,
    pub to_move: Player,
    /// Player A's faces minus player B's.
    pub net_score: i32,
    pub legal_moves: Vec<String>,
}

/// Fixed-width drawing: `+` or `*` dots, drawn edges as lines, owner letters
/// in completed faces.
pub fn render_ascii(board: &PrimalBoard) -> String {
    match board.spec.game {
        Game::Boxes => render_boxes(board),
        Game::Triangles => render_triangles(board),
    }
}

fn owner_char(board: &PrimalBoard, face: usize) -> char {
    match board.owners.get(&face) {
        Some(Player::A) => 'A',
        Some(Player::B) => 'B',
        None => ' ',
    }
}

fn render_boxes(b: &PrimalBoard) -> String {
    let n = b.spec.n;
    let hline = |edge: fn(usize) -> PrimalEdgeId| {
        let mut s = String::from("+");
        for i in 0..n {
            s.push_str(if b.is_drawn(edge(i)) { "---" } else { "   " });
            s.push('+');
        }
        s
    };
    let mut mid = String::new();
    for i in 0..=n {
        mid.push(if b.is_drawn(PrimalEdgeId::Vert(i)) { '|' } else { ' ' });
        if i < n {
            mid.push(' ');
            mid.push(owner_char(b, i));
            mid.push(' ');
        }
    }
    format!("{}\n{}\n{}\n", hline(PrimalEdgeId::Top), mid, hline(PrimalEdgeId::Bottom))
}

fn render_triangles(b: &PrimalBoard) -> String {
    let n = b.spec.n;
    let width = 4 * n + 1;
    let mut top = vec![' '; width];
    let mut mid = vec![' '; width];
    let mut bottom = vec![' '; width];
    let mark = |row: &mut Vec<char>, from: usize, id: PrimalEdgeId| {
        if b.is_drawn(id) {
            row[from..from + 3].fill('-');
        }
    };
    for i in 0..n {
        top[4 * i + 2] = '*';
        if i + 1 < n {
            mark(&mut top, 4 * i + 3, PrimalEdgeId::Top(i));
        }
    }
    for i in 0..=n {
        bottom[4 * i] = '*';
        if i < n {
            mark(&mut bottom, 4 * i + 1, PrimalEdgeId::Base(i));
        }
    }
    let slant = |id: PrimalEdgeId, c: char| if b.is_drawn(id) { c } else { ' ' };
    mid[1] = slant(PrimalEdgeId::Side(Side::Left), '/');
    mid[4 * n - 1] = slant(PrimalEdgeId::Side(Side::Right), '\\');
    for j in 0..2 * n - 2 {
        // slant j is the right side of up-triangle j/2 or the left side of the next one
        let (x, c) = if j % 2 == 0 { (2 * j + 3, '\\') } else { (2 * j + 3, '/') };
        mid[x] = slant(PrimalEdgeId::Slant(j), c);
    }
    for face in 0..b.spec.coin_count() {
        mid[2 * face + 2] = owner_char(b, face);
    }
    let line = |row: Vec<char>| row.into_iter().collect::<String>();
    format!("{}\n{}\n{}\n", line(top), line(mid), line(bottom))
}
