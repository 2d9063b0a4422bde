//! Plays the engine's side of a human game on a primal board.

use serde::{Deserialize, Serialize};

use narrow_core::board::{BoardState, PrimalEdgeId};
use narrow_core::solver::Solver;
use narrow_core::strategy::{take_turn, AgentMode, AgentState, AGENT};
use narrow_core::{BoardError, EdgeRef, GameSpec, Player, SolverError, StrategyError};

/// Which side the engine plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EngineRole {
    First,
    Second,
    None,
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("the constructive engine only plays first")]
    ConstructiveSecond,
}

#[derive(Debug, Clone)]
pub struct Engine {
    pub role: EngineRole,
    pub mode: AgentMode,
    agent: Option<AgentState>,
}

impl Engine {
    pub fn new(spec: GameSpec, role: EngineRole, mode: AgentMode) -> Result<Engine, EngineError> {
        let agent = match (role, mode) {
            (EngineRole::None, _) => None,
            (EngineRole::Second, AgentMode::Constructive) => return Err(EngineError::ConstructiveSecond),
            (_, _) => Some(AgentState::new(spec, mode)?),
        };
        Ok(Engine { role, mode, agent })
    }

    pub fn player(&self) -> Option<Player> {
        match self.role {
            EngineRole::First => Some(AGENT),
            EngineRole::Second => Some(AGENT.opponent()),
            EngineRole::None => None,
        }
    }

    pub fn to_move(&self, state: &BoardState) -> bool {
        !state.is_over() && self.player() == Some(state.to_move())
    }

    /// Tells the engine which cut ended the human's turn.
    pub fn observe(&mut self, last_cut: EdgeRef) {
        if let Some(agent) = self.agent.as_mut() {
            *agent = agent.observe(last_cut);
        }
    }

    /// Plays every engine cut until the human is to move or the game ends.
    /// On error the state is left untouched.
    pub fn reply(&mut self, state: &mut BoardState, solver: &mut Solver) -> Result<Vec<PrimalEdgeId>, EngineError> {
        if !self.to_move(state) {
            return Ok(Vec::new());
        }
        let mut next = state.clone();
        let mut drawn = Vec::new();
        if self.mode == AgentMode::Constructive && self.player() == Some(AGENT) {
            let agent = self.agent.expect("constructive engine has agent state");
            let (plan, agent) = take_turn(&next.position, agent, solver)?;
            for e in plan.cuts {
                drawn.push(next.play_dual(e)?.0);
            }
            self.agent = Some(agent);
        } else {
            while self.to_move(&next) {
                let e = solver.solve(&next.position)?.best.expect("live position has a move");
                drawn.push(next.play_dual(e)?.0);
            }
        }
        *state = next;
        Ok(drawn)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MoveError {
    #[error("the game is over")]
    GameOver,
    #[error("it is the engine's turn")]
    NotYourTurn,
    #[error(transparent)]
    Illegal(BoardError),
    #[error("engine failed: {0}")]
    Engine(#[from] EngineError),
}

/// A human-versus-engine game.
#[derive(Debug, Clone)]
pub struct Session {
    pub state: BoardState,
    pub engine: Engine,
}

impl Session {
    /// Sets up the board and lets the engine open if it plays first.
    pub fn start(
        spec: GameSpec,
        role: EngineRole,
        mode: AgentMode,
        solver: &mut Solver,
    ) -> Result<(Session, Vec<PrimalEdgeId>), EngineError> {
        let mut session = Session { state: BoardState::new(spec), engine: Engine::new(spec, role, mode)? };
        let replies = session.engine.reply(&mut session.state, solver)?;
        Ok((session, replies))
    }

    /// Draws `id` for the human, then plays the engine's whole reply. Nothing
    /// changes unless every step succeeds.
    pub fn human_move(&mut self, id: PrimalEdgeId, solver: &mut Solver) -> Result<Vec<PrimalEdgeId>, MoveError> {
        if self.state.is_over() {
            return Err(MoveError::GameOver);
        }
        if self.engine.to_move(&self.state) {
            return Err(MoveError::NotYourTurn);
        }
        let mut next = self.clone();
        let e = next.state.board.primal_to_dual(id).map_err(MoveError::Illegal)?;
        let out = next.state.play_primal(id).map_err(MoveError::Illegal)?;
        if !out.extra_turn {
            next.engine.observe(e);
        }
        let replies = next.engine.reply(&mut next.state, solver)?;
        *self = next;
        Ok(replies)
    }
}
