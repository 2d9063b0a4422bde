use proptest::prelude::*;

use narrow_core::analysis::{chains, decompose, find_double_deals, sole_string, ChainCategory};
use narrow_core::solver::Solver;
use narrow_core::{Boundary, EdgeRef, Game, GameSpec, Position};
use narrow_testkit::oracle::brute_position_value;
use narrow_testkit::sample::{positions_up_to, random_position, random_position_of, reachable_positions, rng};
use narrow_testkit::suites;

fn any_position() -> impl Strategy<Value = Position> {
    any::<u64>().prop_map(|seed| random_position(&mut rng(seed)))
}

fn live_position_and_move() -> impl Strategy<Value = (Position, EdgeRef)> {
    (any::<u64>(), any::<prop::sample::Index>()).prop_filter_map("finished board", |(seed, pick)| {
        let p = random_position(&mut rng(seed));
        let moves = p.legal_moves();
        (!moves.is_empty()).then(|| {
            let e = moves[pick.index(moves.len())];
            (p, e)
        })
    })
}

fn closed_triangles_position() -> impl Strategy<Value = Position> {
    (1usize..=7, any::<u64>()).prop_map(|(n, seed)| {
        let spec = GameSpec::new(Game::Triangles, Boundary::Closed, n).unwrap();
        random_position_of(&mut rng(seed), &spec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn structural_matches_direct(p in any_position()) {
        prop_assert!(suites::compare_classifiers(&p).is_ok(), "{:?}", suites::compare_classifiers(&p));
    }

    #[test]
    fn cut_then_reflect_commutes((p, e) in live_position_and_move()) {
        let a = p.apply_move(e).unwrap();
        let b = p.mirror().apply_move(p.mirror_edge(e)).unwrap();
        prop_assert_eq!(a.resulting.mirror(), b.resulting);
        prop_assert_eq!(a.extra_turn, b.extra_turn);
        prop_assert_eq!(a.captured.len(), b.captured.len());
    }

    #[test]
    fn canonical_key_ignores_reflection_and_history(p in any_position()) {
        prop_assert_eq!(p.canonical_key(), p.mirror().canonical_key());
        prop_assert_eq!(p.canonical_key(), p.without_history().canonical_key());
    }

    #[test]
    fn canonical_key_ignores_component_order(p in any_position()) {
        let mut comps = p.component_legs();
        comps.reverse();
        if !comps.is_empty() {
            let q = Position::from_components(&comps).unwrap();
            prop_assert_eq!(p.canonical_key(), q.canonical_key());
        }
    }

    #[test]
    fn double_deals_reflect(p in any_position()) {
        let m = p.frame_len();
        let mut mirrored: Vec<_> = find_double_deals(&p)
            .into_iter()
            .map(|d| (p.mirror_edge(d.x), p.mirror_edge(d.y), (m - 1 - d.pair.0, m - 1 - d.pair.1)))
            .collect();
        let mut direct: Vec<_> = find_double_deals(&p.mirror()).into_iter().map(|d| (d.x, d.y, d.pair)).collect();
        mirrored.sort();
        direct.sort();
        prop_assert_eq!(mirrored, direct);
    }

    #[test]
    fn decomposition_partitions_strings(p in any_position()) {
        let d = decompose(&p);
        prop_assert!(d.base_edges.is_disjoint(&d.pendant_edges));
        let mut all: Vec<EdgeRef> = d.base_edges.iter().chain(&d.pendant_edges).copied().collect();
        all.sort();
        prop_assert_eq!(all, p.legal_moves().into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        let mut chained: Vec<EdgeRef> = chains(&p).into_iter().flat_map(|c| {
            assert_eq!(c.edges.len(), c.length + 1);
            assert_eq!(c.category, ChainCategory::of_length(c.length));
            c.edges
        }).collect();
        chained.sort();
        prop_assert_eq!(chained, d.base_edges.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn triangle_chain_parity(p in closed_triangles_position()) {
        let d = decompose(&p);
        // a lone interior leg is a chain of length zero with no exterior leg
        for c in chains(&p).into_iter().filter(|c| c.length > 0) {
            let exterior = c.edges.iter().filter(|e| d.exterior_legs.contains(e)).count();
            prop_assert_eq!(c.length % 2 == 0, exterior == 1, "{} chain {:?}", p, c.edges);
        }
    }

    #[test]
    fn opening_a_long_chain_gives_away_its_coins(p in closed_triangles_position()) {
        let d = decompose(&p);
        for c in chains(&p).into_iter().filter(|c| c.category == ChainCategory::Long) {
            let EdgeRef::Leg(start) = c.edges[0] else { continue };
            let touched = |e: &EdgeRef| d.pendant_edges.iter().any(|pe| {
                let (a, b) = e.coins();
                pe.touches(a) || b.is_some_and(|b| pe.touches(b))
            });
            if c.edges.iter().any(touched) {
                continue;
            }
            let mut q = p.apply_move(c.edges[0]).unwrap().resulting;
            let mut coin = start;
            let mut taken = 0;
            while let Some(e) = sole_string(&q, coin) {
                let out = q.apply_move(e).unwrap();
                taken += out.captured.len();
                q = out.resulting;
                match e {
                    EdgeRef::Inner(i) if q.is_live(if i == coin { i + 1 } else { i }) => {
                        coin = if i == coin { i + 1 } else { i };
                    }
                    _ => break,
                }
            }
            prop_assert_eq!(taken, c.length, "{} chain {:?}", p, c.edges);
        }
    }

    #[test]
    fn solver_value_is_reflection_invariant((p, e) in live_position_and_move()) {
        prop_assume!(p.string_count() <= 20);
        let mut s = Solver::new();
        let mut t = Solver::new();
        prop_assert_eq!(s.value(&p).unwrap(), t.value(&p.mirror()).unwrap());
        prop_assert_eq!(s.move_value(&p, e).unwrap(), t.move_value(&p.mirror(), p.mirror_edge(e)).unwrap());
    }
}

#[test]
fn classifiers_agree_on_every_small_closed_triangles_position() {
    assert!(suites::classifier_equivalence(4, 0, 0).unwrap() > 0);
}

#[test]
fn classifiers_agree_on_sampled_positions() {
    suites::classifier_equivalence(0, 2_000, 11).unwrap();
}

#[test]
fn solver_matches_reference_on_small_positions() {
    let mut solver = Solver::new();
    for p in positions_up_to(6) {
        assert_eq!(solver.value(&p).unwrap(), brute_position_value(&p), "{p}");
    }
}

#[test]
fn solver_matches_reference_on_whole_small_boards() {
    let mut solver = Solver::new();
    for spec in ["boxes:closed:3", "boxes:open:2", "triangles:closed:2", "triangles:open:2"] {
        let spec: GameSpec = spec.parse().unwrap();
        for p in reachable_positions(&spec) {
            if p.string_count() <= 7 {
                assert_eq!(solver.value(&p).unwrap(), brute_position_value(&p), "{p}");
            }
        }
    }
}

#[test]
fn random_playouts_conserve_coins() {
    suites::playout_conservation(2_000, 21).unwrap();
}

#[test]
fn reflection_commutes_with_cuts() {
    suites::mirror_commutation(1_000, 31).unwrap();
}
