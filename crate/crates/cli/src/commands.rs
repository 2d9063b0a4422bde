//! Command-line front end. Everything except `solve` timings and `serve`
//! prints deterministic output.

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use narrow_core::analysis::{chains, classify_edge_direct, decompose, find_double_deals};
use narrow_core::board::{render_ascii, BoardState, PrimalEdgeId};
use narrow_core::solver::Solver;
use narrow_core::strategy::AgentMode;
use narrow_core::verifier::{guaranteed_score_with, GuaranteeReport, VerifyOptions};
use narrow_core::{Boundary, Game, GameSpec, VerifyError};

use crate::engine::{EngineRole, MoveError, Session};

#[derive(Debug, Parser)]
#[command(name = "narrow", version, about = "Exact play and strategy checks for 1xn Dots-and-Boxes and Dots-and-Triangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one board and print its value and a principal variation.
    Solve(BoardArgs),
    /// Print optimal first-player scores for n = 1..=N as `n,score` rows.
    Table {
        #[command(flatten)]
        board: BoardArgs,
        /// Also write the rows to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the agent's worst-case score over every opponent line.
    Verify(VerifyArgs),
    /// Show base graph, chains, string labels and double-deals of a state.
    Analyze {
        #[command(flatten)]
        board: BoardArgs,
        /// Encoded state to analyze instead of the initial board.
        #[arg(long)]
        state: Option<String>,
        /// Comma-separated primal edges to draw first.
        #[arg(long, value_delimiter = ',')]
        moves: Vec<String>,
    },
    /// Play against the engine in the terminal.
    Play {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long, value_enum, default_value_t = EngineRole::First)]
        engine: EngineRole,
        #[arg(long, value_enum, default_value_t = ModeArg::SolverAssisted)]
        mode: ModeArg,
    },
    /// Serve games over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameArg {
    Boxes,
    Triangles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Closed,
    Open,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Closed => Boundary::Closed,
            BoundaryArg::Open => Boundary::Open,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Constructive,
    SolverAssisted,
}

impl From<ModeArg> for AgentMode {
    fn from(m: ModeArg) -> AgentMode {
        match m {
            ModeArg::Constructive => AgentMode::Constructive,
            ModeArg::SolverAssisted => AgentMode::SolverAssisted,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BoardArgs {
    #[arg(long, value_enum, default_value_t = GameArg::Boxes)]
    pub game: GameArg,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Closed)]
    pub boundary: BoundaryArg,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
}

impl BoardArgs {
    pub fn spec(&self) -> GameSpec {
        let game = match self.game {
            GameArg::Boxes => Game::Boxes,
            GameArg::Triangles => Game::Triangles,
        };
        GameSpec::new(game, self.boundary.into(), self.n as usize).expect("n >= 1 is enforced by the parser")
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// 1: closed triangles, first player wins. 2: boxes, first player ties.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub theorem: u8,
    /// Board lengths to check.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Boxes boundary; closed triangles ignore it.
    #[arg(long, value_enum, default_value_t = BoundaryArg::Closed)]
    pub boundary: BoundaryArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Constructive)]
    pub mode: ModeArg,
    /// Also check the mirroring invariants at every node.
    #[arg(long)]
    pub check_invariants: bool,
    /// Write a JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit status of a command.
pub type Status = u8;

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Status> {
    match cli.command {
        Command::Solve(board) => solve(&board, out),
        Command::Table { board, out: file } => table(&board, file, out),
        Command::Verify(args) => verify(&args, out),
        Command::Analyze { board, state, moves } => analyze(&board, state.as_deref(), &moves, out),
        Command::Play { board, engine, mode } => {
            let stdin = std::io::stdin();
            play(board.spec(), engine, mode.into(), &mut stdin.lock(), out)
        }
        Command::Serve { port } => {
            crate::service::serve(port)?;
            Ok(0)
        }
    }
}

fn solve(board: &BoardArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let spec = board.spec();
    let mut solver = Solver::new();
    let start = Instant::now();
    let p = narrow_core::Position::initial(&spec);
    let r = solver.solve(&p)?;
    let pv = solver.principal_variation(&p)?;
    let pv: Vec<String> = pv.iter().map(ToString::to_string).collect();
    writeln!(out, "board: {spec}")?;
    writeln!(out, "value: {}", r.value)?;
    writeln!(out, "nodes: {}", r.nodes)?;
    writeln!(out, "line: {}", pv.join(" "))?;
    writeln!(out, "time: {:.3}s", start.elapsed().as_secs_f64())?;
    Ok(0)
}

/// Rows `n,score`; a row whose search ran out of memo space reads `n,error`.
pub fn table_rows(spec: GameSpec) -> Vec<String> {
    let mut solver = Solver::new();
    solver
        .score_table(spec.game, spec.boundary, spec.n)
        .into_iter()
        .map(|(n, v)| match v {
            Ok(v) => format!("{n},{v}"),
            Err(e) => format!("{n},error: {e}"),
        })
        .collect()
}

fn table(board: &BoardArgs, file: Option<PathBuf>, out: &mut dyn Write) -> anyhow::Result<Status> {
    let mut text = String::new();
    let mut failed = false;
    for row in table_rows(board.spec()) {
        failed |= row.contains("error");
        writeln!(out, "{row}")?;
        out.flush()?;
        text.push_str(&row);
        text.push('\n');
    }
    if let Some(path) = file {
        std::fs::write(path, text)?;
    }
    Ok(if failed { 1 } else { 0 })
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    spec: GameSpec,
    outcome: &'static str,
    required: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<GuaranteeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver_value: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let (game, boundary, required) = match args.theorem {
        1 => (Game::Triangles, Boundary::Closed, 1),
        _ => (Game::Boxes, args.boundary.into(), 0),
    };
    let mut solver = Solver::new();
    let options = VerifyOptions { check_invariants: args.check_invariants };
    let mut rows = Vec::new();
    let mut status = 0;
    for &n in &args.n {
        let spec = GameSpec::new(game, boundary, n)?;
        let mut row = VerifyRow { spec, outcome: "", required, report: None, solver_value: None, error: None };
        match guaranteed_score_with(spec, args.mode.into(), &mut solver, options) {
            Ok(r) => {
                let ok = r.worst_net >= required;
                let line: String = r.witness_line.iter().map(|e| format!(" {e}")).collect();
                writeln!(
                    out,
                    "{spec} worst_net={} required>={required} {} states={} witness:{}",
                    r.worst_net,
                    if ok { "ok" } else { "FAILED" },
                    r.states_visited,
                    line
                )?;
                if !ok {
                    status = 1;
                }
                row.outcome = if ok { "ok" } else { "failed" };
                row.report = Some(r);
            }
            Err(VerifyError::Strategy { error: narrow_core::StrategyError::Unsupported(_), .. }) => {
                let v = solver.value(&narrow_core::Position::initial(&spec))?;
                writeln!(out, "{spec} refused: the strategy does not cover this board; solver value {v}")?;
                row.outcome = "refused";
                row.solver_value = Some(v);
                status = 1;
            }
            Err(e) => {
                writeln!(out, "{spec} FAILED: {e}")?;
                row.outcome = "error";
                row.error = Some(e.to_string());
                status = 1;
            }
        }
        out.flush()?;
        rows.push(row);
    }
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_string_pretty(&rows)? + "\n")?;
    }
    Ok(status)
}

fn analyze(board: &BoardArgs, state: Option<&str>, moves: &[String], out: &mut dyn Write) -> anyhow::Result<Status> {
    let mut st = match state {
        Some(s) => BoardState::decode(s)?,
        None => BoardState::new(board.spec()),
    };
    for m in moves {
        let id = PrimalEdgeId::parse(&st.spec(), m)?;
        st.play_primal(id)?;
    }
    let p = &st.position;
    write!(out, "{}", render_ascii(&st.board))?;
    writeln!(out, "state: {}", st.encode())?;
    writeln!(out, "position: {p}")?;
    let d = decompose(p);
    let list = |es: &std::collections::BTreeSet<narrow_core::EdgeRef>| {
        es.iter().map(|e| format!(" {e}")).collect::<String>()
    };
    writeln!(out, "base:{}", list(&d.base_edges))?;
    writeln!(out, "pendant:{}", list(&d.pendant_edges))?;
    for (i, c) in chains(p).iter().enumerate() {
        let es: Vec<String> = c.edges.iter().map(ToString::to_string).collect();
        writeln!(out, "chain {i}: {:?} length {} [{}]", c.category, c.length, es.join(" "))?;
    }
    for e in p.legal_moves() {
        writeln!(out, "{e}: {:?}", classify_edge_direct(p, e)?)?;
    }
    for dd in find_double_deals(p) {
        writeln!(out, "double-deal: take {} then {}, or decline with {} (coins {} {})", dd.x, dd.y, dd.y, dd.pair.0, dd.pair.1)?;
    }
    if !p.is_terminal() {
        let r = Solver::new().solve(p)?;
        let best = r.best.map(|e| st.board.dual_to_primal(e)).transpose()?;
        writeln!(out, "value for {}: {} best {}", p.to_move(), r.value, best.map(|b| b.to_string()).unwrap_or_default())?;
    }
    Ok(0)
}

/// Terminal game loop: one primal edge per input line, `quit` to stop.
pub fn play(
    spec: GameSpec,
    role: EngineRole,
    mode: AgentMode,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> anyhow::Result<Status> {
    let mut solver = Solver::new();
    let (mut session, replies) = Session::start(spec, role, mode, &mut solver)?;
    report_replies(&replies, out)?;
    loop {
        let st = &session.state;
        write!(out, "{}", render_ascii(&st.board))?;
        writeln!(out, "A {} - B {}", st.board.score(narrow_core::Player::A), st.board.score(narrow_core::Player::B))?;
        if st.is_over() {
            writeln!(out, "game over, net score for A: {}", st.net_score())?;
            return Ok(0);
        }
        let legal: Vec<String> = st.legal_moves().iter().map(ToString::to_string).collect();
        writeln!(out, "{} to move; edges: {}", st.to_move(), legal.join(" "))?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 || line.trim() == "quit" {
            return Ok(0);
        }
        let id = match PrimalEdgeId::parse(&st.spec(), line.trim()) {
            Ok(id) => id,
            Err(e) => {
                writeln!(out, "{e}")?;
                continue;
            }
        };
        match session.human_move(id, &mut solver) {
            Ok(replies) => report_replies(&replies, out)?,
            Err(MoveError::Engine(e)) => return Err(e.into()),
            Err(e) => writeln!(out, "{e}")?,
        }
    }
}

fn report_replies(replies: &[PrimalEdgeId], out: &mut dyn Write) -> std::io::Result<()> {
    if !replies.is_empty() {
        let r: Vec<String> = replies.iter().map(ToString::to_string).collect();
        writeln!(out, "engine draws: {}", r.join(" "))?;
    }
    Ok(())
}
