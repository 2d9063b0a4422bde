use narrow_core::solver::Solver;
use narrow_core::strategy::{take_turn, AgentMode, AgentState, AGENT};
use narrow_core::verifier::{guaranteed_score_with, scenario_check, VerifyOptions, SCENARIOS};
use narrow_core::{Boundary, Game, GameSpec, Position, StrategyError, VerifyError};

fn check(game: Game, boundary: Boundary, n: usize, at_least: i32) {
    let spec = GameSpec::new(game, boundary, n).unwrap();
    let mut solver = Solver::new();
    let options = VerifyOptions { check_invariants: true };
    let r = guaranteed_score_with(spec, AgentMode::Constructive, &mut solver, options)
        .unwrap_or_else(|e| panic!("{spec}: {e}"));
    assert!(r.worst_net >= at_least, "{spec}: {r:?}");
}

#[test]
fn closed_triangles_first_player_wins() {
    for n in [1, 3, 4, 5, 6] {
        check(Game::Triangles, Boundary::Closed, n, 1);
    }
}

#[test]
fn even_boxes_first_player_ties() {
    for boundary in [Boundary::Closed, Boundary::Open] {
        for n in [4, 6, 8] {
            check(Game::Boxes, boundary, n, 0);
        }
    }
}

#[test]
fn two_triangles_are_refused_and_lost() {
    let spec = GameSpec::new(Game::Triangles, Boundary::Closed, 2).unwrap();
    let mut solver = Solver::new();
    let err = guaranteed_score_with(spec, AgentMode::Constructive, &mut solver, VerifyOptions::default()).unwrap_err();
    assert!(matches!(err, VerifyError::Strategy { error: StrategyError::Unsupported(_), .. }));
    assert_eq!(solver.value(&Position::initial(&spec)).unwrap(), -3);
}

#[test]
fn scenarios_reproduce() {
    let mut solver = Solver::new();
    for name in SCENARIOS {
        let r = scenario_check(name, &mut solver).unwrap();
        assert!(r.passed, "{name}: {:?}", r.trace);
    }
}

#[test]
fn agent_turns_always_hand_over_the_move() {
    // against a fixed greedy opponent the agent never ends a turn still to move
    let spec = GameSpec::new(Game::Triangles, Boundary::Closed, 5).unwrap();
    let mut solver = Solver::new();
    let mut p = Position::initial(&spec);
    let mut st = AgentState::new(spec, AgentMode::Constructive).unwrap();
    while !p.is_terminal() {
        if p.to_move() == AGENT {
            let (plan, next) = take_turn(&p, st, &mut solver).unwrap();
            for e in plan.cuts {
                p = p.apply_move(e).unwrap().resulting;
            }
            assert!(p.is_terminal() || p.to_move() != AGENT);
            st = next;
        } else {
            let e = p.legal_moves()[0];
            let out = p.apply_move(e).unwrap();
            if !out.extra_turn {
                st = st.observe(e);
            }
            p = out.resulting;
        }
    }
    assert!(p.captured_net() >= 1);
}
