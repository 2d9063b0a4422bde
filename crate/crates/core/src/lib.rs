//! Exact play for 1xn Dots-and-Boxes and Dots-and-Triangles, in their
//! Strings-and-Coins form.
//!
//! - [`game`]: positions, cuts, captures, mirroring, canonical keys
//! - [`analysis`]: base graph, chains, good/bad strings, double-deal detection
//! - [`solver`]: memoized exact net-score search
//! - [`strategy`]: the quasi-mirroring first-player agent
//! - [`verifier`]: worst case of the agent against every opponent line
//! - [`board`]: the dots board, edge naming, text and wire encodings

pub mod analysis;
pub mod board;
pub mod error;
pub mod game;
pub mod solver;
pub mod strategy;
pub mod verifier;

pub use error::{AnalysisError, BoardError, GameError, SolverError, StrategyError, VerifyError};
pub use game::{Boundary, CanonicalKey, EdgeRef, Game, GameSpec, MoveOutcome, Player, Position};
