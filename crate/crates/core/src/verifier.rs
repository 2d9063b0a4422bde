//! Worst-case evaluation of the agent.
//!
//! The agent's moves are fixed by its strategy; every opponent cut is
//! branched on. The search is memoized on the exact board (the agent is not
//! symmetric under reordering components) together with the agent's phase.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::analysis::decompose;
use crate::error::{StrategyError, VerifyError};
use crate::game::{EdgeRef, GameSpec, Position};
use crate::solver::Solver;
use crate::strategy::{take_turn, AgentMode, AgentState, Phase, AGENT};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuaranteeReport {
    pub spec: GameSpec,
    pub agent_mode: AgentMode,
    /// Smallest final net score (agent minus opponent) over all opponent play.
    pub worst_net: i32,
    /// Opponent cuts, in order, along one line reaching `worst_net`.
    pub witness_line: Vec<EdgeRef>,
    pub states_visited: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Check the mirroring-phase invariants at every node. Disables history
    /// merging in the memo, so it is slower.
    pub check_invariants: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct NodeKey {
    pos: Position,
    phase: Phase,
}

struct Search<'a> {
    solver: &'a mut Solver,
    memo: HashMap<NodeKey, (i32, Option<EdgeRef>)>,
    options: VerifyOptions,
    path: Vec<EdgeRef>,
}

fn format_line(line: &[EdgeRef]) -> String {
    line.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Search<'_> {
    fn key(&self, p: &Position, phase: Phase) -> NodeKey {
        let pos = if self.options.check_invariants { p.clone() } else { p.without_history() };
        NodeKey { pos, phase }
    }

    fn strategy_error(&self, error: StrategyError) -> VerifyError {
        VerifyError::Strategy { error, line: format_line(&self.path) }
    }

    fn invariant(&self, ok: bool, what: &str) -> Result<(), VerifyError> {
        if ok {
            Ok(())
        } else {
            Err(self.strategy_error(StrategyError::Violation { reason: what.to_string() }))
        }
    }

    /// Agent's net gain from here on, opponent to move.
    fn opponent_node(&mut self, p: &Position, st: AgentState) -> Result<i32, VerifyError> {
        let key = self.key(p, st.phase);
        if let Some(&(v, _)) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.options.check_invariants && st.phase == Phase::Mirroring {
            self.check_mirroring_invariants(p)?;
        }
        let mut worst: Option<(i32, EdgeRef)> = None;
        for e in p.legal_moves() {
            let out = p.apply_move(e)?;
            self.path.push(e);
            let gain = -(out.captured.len() as i32);
            let rest = if out.resulting.is_terminal() {
                0
            } else if out.extra_turn {
                self.opponent_node(&out.resulting, st)?
            } else {
                self.agent_node(&out.resulting, st.observe(e))?
            };
            self.path.pop();
            let v = gain + rest;
            if worst.is_none_or(|(w, _)| v < w) {
                worst = Some((v, e));
            }
        }
        let (v, e) = worst.expect("opponent node is not terminal");
        self.memo.insert(key, (v, Some(e)));
        Ok(v)
    }

    fn agent_node(&mut self, p: &Position, st: AgentState) -> Result<i32, VerifyError> {
        if self.options.check_invariants && st.phase != Phase::Control && st.phase != Phase::Opening {
            self.invariant(p.captured_net() >= -1, "agent net below -1 before the endgame")?;
        }
        let (plan, next) = take_turn(p, st, self.solver).map_err(|e| self.strategy_error(e))?;
        let mut q = p.clone();
        let mut gain = 0;
        for &e in &plan.cuts {
            let out = q.apply_move(e)?;
            gain += out.captured.len() as i32;
            q = out.resulting;
        }
        if q.is_terminal() {
            return Ok(gain);
        }
        if q.to_move() == AGENT {
            return Err(self.strategy_error(StrategyError::Violation {
                reason: "agent turn ended with the agent still to move".into(),
            }));
        }
        let depth = self.path.len();
        self.path.extend_from_slice(&plan.cuts);
        let rest = self.opponent_node(&q, next);
        self.path.truncate(depth);
        Ok(gain + rest?)
    }

    fn check_mirroring_invariants(&self, p: &Position) -> Result<(), VerifyError> {
        let d = decompose(p);
        let mirrored: std::collections::BTreeSet<_> =
            d.base_edges.iter().map(|&e| p.mirror_edge(e)).collect();
        self.invariant(mirrored == d.base_edges, "base graph not symmetric after agent turn")?;
        // pendants matched by an identical mirror-image pendant are harmless
        let m = p.frame_len();
        let unmatched: Vec<usize> = d
            .pendant_coins
            .iter()
            .copied()
            .filter(|&i| {
                let j = m - 1 - i;
                !(d.pendant_coins.contains(&j) && p.legs()[i] == p.legs()[j])
            })
            .collect();
        let left = unmatched.iter().any(|&i| 2 * i + 1 < m);
        let right = unmatched.iter().any(|&i| 2 * i + 1 > m);
        self.invariant(!(left && right), "pendants on both sides of the strip")
    }
}

/// Worst final net score of the first player following the agent.
pub fn guaranteed_score(
    spec: GameSpec,
    mode: AgentMode,
    solver: &mut Solver,
) -> Result<GuaranteeReport, VerifyError> {
    guaranteed_score_with(spec, mode, solver, VerifyOptions::default())
}

pub fn guaranteed_score_with(
    spec: GameSpec,
    mode: AgentMode,
    solver: &mut Solver,
    options: VerifyOptions,
) -> Result<GuaranteeReport, VerifyError> {
    let state = AgentState::new(spec, mode)
        .map_err(|error| VerifyError::Strategy { error, line: String::new() })?;
    let start = Position::initial(&spec);
    let mut search = Search { solver, memo: HashMap::new(), options, path: Vec::new() };
    let worst_net = search.agent_node(&start, state)?;
    let witness_line = witness(&mut search, &start, state)?;
    Ok(GuaranteeReport {
        spec,
        agent_mode: mode,
        worst_net,
        witness_line,
        states_visited: search.memo.len(),
    })
}

fn witness(search: &mut Search<'_>, start: &Position, state: AgentState) -> Result<Vec<EdgeRef>, VerifyError> {
    let mut line = Vec::new();
    let mut p = start.clone();
    let mut st = state;
    loop {
        // agent turn
        let (plan, next) = take_turn(&p, st, search.solver).map_err(|e| search.strategy_error(e))?;
        for &e in &plan.cuts {
            p = p.apply_move(e)?.resulting;
        }
        st = next;
        // opponent turn
        loop {
            if p.is_terminal() {
                return Ok(line);
            }
            let key = search.key(&p, st.phase);
            let e = search.memo.get(&key).and_then(|&(_, e)| e).expect("witness follows memoized nodes");
            line.push(e);
            let out = p.apply_move(e)?;
            p = out.resulting;
            if !out.extra_turn {
                if p.is_terminal() {
                    return Ok(line);
                }
                st = st.observe(e);
                break;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub passed: bool,
    pub trace: Vec<String>,
}

pub const SCENARIOS: [&str; 2] = ["unmirrorable_center", "center_zugzwang"];

/// Replays the two odd-boxes positions where plain mirroring breaks down.
pub fn scenario_check(name: &str, solver: &mut Solver) -> Result<ScenarioReport, VerifyError> {
    let mut trace = Vec::new();
    let passed = match name {
        "unmirrorable_center" => {
            // 1x7 closed boxes after the center leg was cut
            let p = Position::from_components(&[[1u8, 1, 1, 0, 1, 1, 1]])?;
            trace.push(format!("start {p}"));
            let e = EdgeRef::Inner(2);
            let after_e = p.apply_move(e)?;
            trace.push(format!("opponent cuts {e}: {}", after_e.resulting));
            let e_mirror = after_e.resulting.mirror_edge(e);
            let out = after_e.resulting.apply_move(e_mirror)?;
            trace.push(format!(
                "mirror cut {e_mirror} captures {:?}, extra turn {}",
                out.captured, out.extra_turn
            ));
            after_e.captured.is_empty() && out.captured == vec![3] && out.extra_turn
        }
        "center_zugzwang" => {
            let p = Position::from_components(&[[1u8, 0, 1, 0, 1, 0, 1]])?;
            trace.push(format!("start {p}"));
            let e = EdgeRef::Inner(2);
            let out = p.apply_move(e)?;
            trace.push(format!("opponent cuts {e}: {}", out.resulting));
            let r = solver.solve(&out.resulting)?;
            trace.push(format!("value for the player to move: {}", r.value));
            out.captured.is_empty() && r.value < 0
        }
        other => return Err(VerifyError::UnknownScenario(other.to_string())),
    };
    Ok(ScenarioReport { name: name.to_string(), passed, trace })
}
