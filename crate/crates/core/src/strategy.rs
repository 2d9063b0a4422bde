//! The first-player agent: a center opening, then quasi-mirroring of the
//! opponent's base-graph cuts, then an exact endgame once the opponent hands
//! over a long run of coins or leaves the mirrored repertoire.
//!
//! The agent always plays as player A. Its decisions depend only on the
//! position, its phase, and the opponent's last turn-ending cut.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, chain_of, classify_edge_direct, classify_edge_structural, decompose, find_double_deals,
    sole_string, ChainCategory, DoubleDealOpportunity, EdgeClass,
};
use crate::error::StrategyError;
use crate::game::{Boundary, EdgeRef, Game, GameSpec, Player, Position};
use crate::solver::Solver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Opening,
    Mirroring,
    Control,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgentMode {
    /// Quasi-mirroring; fails loudly when no rule applies.
    Constructive,
    /// Every cut is the solver's principal move.
    SolverAssisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AgentState {
    pub spec: GameSpec,
    pub phase: Phase,
    pub opp_last_base_move: Option<EdgeRef>,
    pub mode: AgentMode,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnPlan {
    pub cuts: Vec<EdgeRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DoubleDealChoice {
    TakeBoth,
    DoubleDeal,
}

/// The agent plays first.
pub const AGENT: Player = Player::A;

/// Boards the constructive strategy is proven for: closed triangles with
/// `n != 2`, and boxes of either boundary with even `n >= 4`.
pub fn supports(spec: &GameSpec) -> bool {
    match (spec.game, spec.boundary) {
        (Game::Triangles, Boundary::Closed) => spec.n != 2,
        (Game::Boxes, _) => spec.n >= 4 && spec.n.is_multiple_of(2),
        (Game::Triangles, Boundary::Open) => false,
    }
}

/// The opening cut nearest the middle of the strip.
pub fn first_move(spec: &GameSpec) -> Result<EdgeRef, StrategyError> {
    if !supports(spec) {
        return Err(StrategyError::Unsupported(*spec));
    }
    let n = spec.n;
    Ok(match spec.game {
        // odd n: the center coin is an up triangle with a leg
        Game::Triangles if n % 2 == 1 => EdgeRef::Leg(n - 1),
        // even n: the center coin is a down triangle; cut its right string
        Game::Triangles => EdgeRef::Inner(n - 1),
        Game::Boxes => EdgeRef::Inner(n / 2 - 1),
    })
}

impl AgentState {
    pub fn new(spec: GameSpec, mode: AgentMode) -> Result<AgentState, StrategyError> {
        if mode == AgentMode::Constructive && !supports(&spec) {
            return Err(StrategyError::Unsupported(spec));
        }
        Ok(AgentState { spec, phase: Phase::Opening, opp_last_base_move: None, mode })
    }

    /// Records the cut that ended the opponent's turn.
    pub fn observe(mut self, last_cut: EdgeRef) -> AgentState {
        self.opp_last_base_move = Some(last_cut);
        self
    }
}

/// Remark-style double-deal decision: with `v` the solver value of the rest
/// of the board for whoever moves first in it, taking both yields `2 + v` and
/// declining yields `-(2 + v)`. Ties take both.
pub fn double_deal_choice(
    p: &Position,
    opp: &DoubleDealOpportunity,
    solver: &mut Solver,
) -> Result<DoubleDealChoice, StrategyError> {
    let rest = remainder_after_taking(p, opp)?;
    let v = solver.value(&rest)?;
    let take = 2 + v;
    debug_assert!(take.max(-take) >= 0);
    Ok(if take >= -take { DoubleDealChoice::TakeBoth } else { DoubleDealChoice::DoubleDeal })
}

/// The board left once `x` then `y` are cut and the pair is taken.
pub fn remainder_after_taking(
    p: &Position,
    opp: &DoubleDealOpportunity,
) -> Result<Position, StrategyError> {
    let q = p.apply_move(opp.x)?.resulting;
    Ok(q.apply_move(opp.y)?.resulting)
}

fn violation(reason: impl Into<String>) -> StrategyError {
    StrategyError::Violation { reason: reason.into() }
}

/// How the opponent's last cut is answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Response {
    Mirror,
    MirrorChainMiddle,
    Control,
}

fn classify_response(p: &Position, e: EdgeRef) -> Result<Response, StrategyError> {
    let before = p.with_string_restored(e)?;
    let base = decompose(&before).base_edges;
    if let EdgeRef::Leg(i) = e {
        // one strand of a bundle: the weighted leg is still there
        if p.legs()[i] > 0 && base.contains(&e) {
            return Ok(Response::Mirror);
        }
    }
    if !base.contains(&e) {
        return Ok(Response::Control);
    }
    let chain = chain_of(&before, e).ok_or_else(|| violation(format!("{e} has no chain")))?;
    Ok(match chain.category {
        ChainCategory::Long => Response::Control,
        ChainCategory::Medium if chain.middle() == Some(e) => Response::Mirror,
        ChainCategory::Medium => Response::MirrorChainMiddle,
        ChainCategory::Short => match classify_edge_structural(&before, e) {
            Ok(EdgeClass::Good) => Response::Mirror,
            _ => Response::Control,
        },
    })
}

struct TurnBuilder<'a> {
    pos: Position,
    cuts: Vec<EdgeRef>,
    solver: &'a mut Solver,
}

impl TurnBuilder<'_> {
    fn my_move(&self) -> bool {
        !self.pos.is_terminal() && self.pos.to_move() == AGENT
    }

    fn cut(&mut self, e: EdgeRef) -> Result<usize, StrategyError> {
        let out = self.pos.apply_move(e)?;
        self.cuts.push(e);
        self.pos = out.resulting;
        Ok(out.captured.len())
    }

    /// Takes every available coin, leftmost first, skipping coins `keep`
    /// reports as held back.
    fn take_available(&mut self, keep: impl Fn(&Position, usize) -> bool) -> Result<(), StrategyError> {
        while self.my_move() {
            let next = analysis::available_coins(&self.pos)
                .into_iter()
                .find(|&c| !keep(&self.pos, c));
            let Some(c) = next else { break };
            let e = sole_string(&self.pos, c).expect("available coin has one string");
            self.cut(e)?;
        }
        Ok(())
    }

    fn play_solver_line(&mut self) -> Result<(), StrategyError> {
        while self.my_move() {
            let best = self.solver.solve(&self.pos)?.best.expect("non-terminal position has a move");
            self.cut(best)?;
        }
        Ok(())
    }

    fn finish(self) -> TurnPlan {
        TurnPlan { cuts: self.cuts }
    }
}

/// A double-deal whose `y` ends the run: it leads to the ground or to a coin
/// that keeps at least two other strings.
fn terminal_double_deal(p: &Position, c: usize) -> Option<DoubleDealOpportunity> {
    find_double_deals(p).into_iter().find(|o| {
        o.pair.0 == c
            && match o.y {
                EdgeRef::Leg(_) => true,
                EdgeRef::Inner(i) => {
                    let d = o.pair.1;
                    let f = if i == d { d + 1 } else { i };
                    p.degree(f) >= 3
                }
            }
    })
}

/// Plans the agent's whole turn: every cut until the turn passes or the game
/// ends. `p` must have the agent to move.
pub fn take_turn(
    p: &Position,
    state: AgentState,
    solver: &mut Solver,
) -> Result<(TurnPlan, AgentState), StrategyError> {
    if p.is_terminal() || p.to_move() != AGENT {
        return Err(violation("take_turn called when the agent is not to move"));
    }
    let mut turn = TurnBuilder { pos: p.clone(), cuts: Vec::new(), solver };
    let mut next = AgentState { opp_last_base_move: None, ..state };

    if state.mode == AgentMode::SolverAssisted {
        turn.play_solver_line()?;
        next.phase = if turn.pos.is_terminal() { Phase::Control } else { Phase::Mirroring };
        return Ok((turn.finish(), next));
    }

    match state.phase {
        Phase::Opening => {
            turn.cut(first_move(&state.spec)?)?;
            // a one-coin board is over after the opening cut
            next.phase = Phase::Mirroring;
        }
        Phase::Control => turn.play_solver_line()?,
        Phase::Mirroring => {
            let e = state
                .opp_last_base_move
                .ok_or_else(|| violation("no opponent cut recorded"))?;
            let mut response = classify_response(p, e)?;
            if analysis::longest_capturable_run(p) >= 3 {
                response = Response::Control;
            }
            match response {
                Response::Control => {
                    next.phase = Phase::Control;
                    turn.take_available(|q, c| terminal_double_deal(q, c).is_some())?;
                    if turn.my_move() {
                        if let Some(dd) = find_double_deals(&turn.pos).into_iter().next() {
                            match double_deal_choice(&turn.pos, &dd, turn.solver)? {
                                DoubleDealChoice::TakeBoth => {
                                    turn.cut(dd.x)?;
                                    if turn.my_move() && turn.pos.contains_edge(dd.y) {
                                        turn.cut(dd.y)?;
                                    }
                                }
                                DoubleDealChoice::DoubleDeal => {
                                    turn.cut(dd.y)?;
                                }
                            }
                        }
                    }
                    turn.play_solver_line()?;
                }
                Response::Mirror | Response::MirrorChainMiddle => {
                    turn.take_available(|_, _| false)?;
                    if turn.my_move() {
                        let mirrored = p.mirror_edge(e);
                        let target = if response == Response::Mirror {
                            mirrored
                        } else {
                            let chain = chain_of(&turn.pos, mirrored)
                                .filter(|c| c.category == ChainCategory::Medium)
                                .ok_or_else(|| {
                                    violation(format!("mirror of {e} is not in a medium chain"))
                                })?;
                            chain.middle().expect("medium chain has a middle")
                        };
                        if !turn.pos.contains_edge(target) {
                            return Err(violation(format!(
                                "answer {target} to {e} is no longer on the board"
                            )));
                        }
                        if classify_edge_direct(&turn.pos, target)? == EdgeClass::Bad {
                            return Err(violation(format!("answer {target} to {e} is a bad edge")));
                        }
                        if turn.cut(target)? > 0 && turn.my_move() {
                            return Err(violation(format!(
                                "answer {target} to {e} captures and forces another move"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok((turn.finish(), next))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(game: Game, boundary: Boundary, n: usize) -> GameSpec {
        GameSpec::new(game, boundary, n).unwrap()
    }

    #[test]
    fn opening_cuts() {
        assert_eq!(first_move(&spec(Game::Triangles, Boundary::Closed, 5)), Ok(EdgeRef::Leg(4)));
        assert_eq!(first_move(&spec(Game::Triangles, Boundary::Closed, 4)), Ok(EdgeRef::Inner(3)));
        assert_eq!(first_move(&spec(Game::Boxes, Boundary::Closed, 6)), Ok(EdgeRef::Inner(2)));
        assert_eq!(first_move(&spec(Game::Boxes, Boundary::Open, 4)), Ok(EdgeRef::Inner(1)));
        assert_eq!(first_move(&spec(Game::Triangles, Boundary::Closed, 1)), Ok(EdgeRef::Leg(0)));
    }

    #[test]
    fn unsupported_boards_refused() {
        for s in [
            spec(Game::Boxes, Boundary::Closed, 5),
            spec(Game::Boxes, Boundary::Closed, 2),
            spec(Game::Triangles, Boundary::Closed, 2),
            spec(Game::Triangles, Boundary::Open, 5),
        ] {
            assert_eq!(first_move(&s), Err(StrategyError::Unsupported(s)));
            assert!(AgentState::new(s, AgentMode::Constructive).is_err());
            assert!(AgentState::new(s, AgentMode::SolverAssisted).is_ok());
        }
    }

    fn pos(c: &[Vec<u8>]) -> Position {
        Position::from_components(c).unwrap()
    }

    #[test]
    fn double_deal_decisions() {
        let mut s = Solver::new();
        // pair alone: G' empty
        let p = pos(&[vec![1, 0]]);
        let dd = find_double_deals(&p)[0];
        assert_eq!(double_deal_choice(&p, &dd, &mut s), Ok(DoubleDealChoice::TakeBoth));
        // G' = [1,1], v = -2: tie goes to taking
        let p = pos(&[vec![1, 0], vec![1, 1]]);
        let dd = find_double_deals(&p)[0];
        assert_eq!(remainder_after_taking(&p, &dd).unwrap().component_legs(), vec![vec![1, 1]]);
        assert_eq!(double_deal_choice(&p, &dd, &mut s), Ok(DoubleDealChoice::TakeBoth));
        // G' = closed triangles n=2, v = -3
        let p = pos(&[vec![1, 0], vec![1, 0, 1]]);
        let dd = find_double_deals(&p)[0];
        assert_eq!(double_deal_choice(&p, &dd, &mut s), Ok(DoubleDealChoice::DoubleDeal));
    }

    fn after(p: &Position, cuts: &[EdgeRef]) -> Position {
        cuts.iter().fold(p.clone(), |q, &e| q.apply_move(e).unwrap().resulting)
    }

    fn mirroring(sp: GameSpec, last: EdgeRef) -> AgentState {
        AgentState {
            spec: sp,
            phase: Phase::Mirroring,
            opp_last_base_move: Some(last),
            mode: AgentMode::Constructive,
        }
    }

    #[test]
    fn mirrors_a_good_leg() {
        // closed triangles n=5 (9 coins) after the center leg; opponent cuts leg 2
        let sp = spec(Game::Triangles, Boundary::Closed, 5);
        let start = Position::initial(&sp);
        let p = after(&start, &[EdgeRef::Leg(4), EdgeRef::Leg(2)]);
        assert_eq!(p.to_move(), AGENT);
        let mut s = Solver::new();
        let (plan, st) = take_turn(&p, mirroring(sp, EdgeRef::Leg(2)), &mut s).unwrap();
        assert_eq!(plan.cuts, vec![EdgeRef::Leg(6)]);
        assert_eq!(st.phase, Phase::Mirroring);
    }

    #[test]
    fn medium_outer_cut_answered_by_mirror_chain_middle() {
        // two five-coin strips; opponent cuts the outer leg of the left medium chain
        let p0 = pos(&[vec![1, 0, 1, 0, 1], vec![1, 0, 1, 0, 1]]);
        let p = after(&p0, &[EdgeRef::Leg(0)]).with_to_move(AGENT);
        let sp = spec(Game::Triangles, Boundary::Closed, 6);
        let mut s = Solver::new();
        let (plan, st) = take_turn(&p, mirroring(sp, EdgeRef::Leg(0)), &mut s).unwrap();
        // take both freed coins, then the good middle string of the mirror chain
        assert_eq!(plan.cuts, vec![EdgeRef::Inner(0), EdgeRef::Inner(1), EdgeRef::Inner(8)]);
        assert_ne!(plan.cuts[2], p.mirror_edge(EdgeRef::Leg(0)));
        assert_eq!(st.phase, Phase::Mirroring);
    }

    #[test]
    fn opened_long_chain_enters_control() {
        // a length-3 chain [1,0,1] opened at its left leg next to a long remainder
        let p0 = pos(&[vec![1, 0, 1], vec![1, 0, 1, 0, 1]]);
        let p = after(&p0, &[EdgeRef::Leg(0)]).with_to_move(AGENT);
        let sp = spec(Game::Triangles, Boundary::Closed, 4);
        let mut s = Solver::new();
        let (plan, st) = take_turn(&p, mirroring(sp, EdgeRef::Leg(0)), &mut s).unwrap();
        assert_eq!(st.phase, Phase::Control);
        // first capture is coin 0, leaving the two-coin double-deal
        assert_eq!(plan.cuts[0], EdgeRef::Inner(0));
        let dd_choice = {
            let q = after(&p, &plan.cuts[..1]);
            let dd = find_double_deals(&q)[0];
            double_deal_choice(&q, &dd, &mut s).unwrap()
        };
        match dd_choice {
            DoubleDealChoice::DoubleDeal => assert_eq!(plan.cuts, vec![EdgeRef::Inner(0), EdgeRef::Leg(2)]),
            DoubleDealChoice::TakeBoth => assert_eq!(&plan.cuts[1..3], &[EdgeRef::Inner(1), EdgeRef::Leg(2)]),
        }
    }

    #[test]
    fn unmirrorable_cut_is_a_violation() {
        // odd boxes: after the center leg, the opponent's inner(2) mirrors onto inner(3)
        let sp = spec(Game::Boxes, Boundary::Closed, 7);
        let p = after(&Position::initial(&sp), &[EdgeRef::Leg(3), EdgeRef::Inner(2)]);
        let st = AgentState {
            spec: sp,
            phase: Phase::Mirroring,
            opp_last_base_move: Some(EdgeRef::Inner(2)),
            mode: AgentMode::Constructive,
        };
        let err = take_turn(&p, st, &mut Solver::new()).unwrap_err();
        assert!(matches!(err, StrategyError::Violation { .. }), "{err}");
    }

    #[test]
    fn solver_assisted_plays_best_line() {
        let sp = spec(Game::Boxes, Boundary::Closed, 3);
        let p = Position::initial(&sp);
        let mut s = Solver::new();
        let st = AgentState::new(sp, AgentMode::SolverAssisted).unwrap();
        let (plan, _) = take_turn(&p, st, &mut s).unwrap();
        let best = s.solve(&p).unwrap().best.unwrap();
        assert_eq!(plan.cuts[0], best);
    }
}
