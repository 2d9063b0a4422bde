use thiserror::Error;

use crate::game::{EdgeRef, GameSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid game spec: {0}")]
    InvalidSpec(String),
    #[error("illegal move {0}")]
    IllegalMove(EdgeRef),
    #[error("invalid position: {0}")]
    InvalidPosition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{0} is not an edge of the base graph")]
    NotBaseEdge(EdgeRef),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("memo table budget of {budget} entries exhausted")]
    MemoBudgetExceeded { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no covered strategy for {0}")]
    Unsupported(GameSpec),
    #[error("strategy violation: {reason}")]
    Violation { reason: String },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{error} (opponent line: {line})")]
    Strategy { error: StrategyError, line: String },
    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("edge {0} is already drawn")]
    AlreadyDrawn(String),
    #[error("edge {0} does not exist on this board")]
    NoSuchEdge(String),
    #[error("board and position disagree: {0}")]
    Inconsistent(String),
    #[error("malformed state encoding: {0}")]
    Decode(String),
    #[error(transparent)]
    Game(#[from] GameError),
}
