//! Structural analysis of a position: base graph and pendants, the chain
//! partition of the base graph, good/bad strings, and double-dealing
//! opportunities.
//!
//! A component's ground strings are counted per coin: a coin with a bundle of
//! two or three ground strings carries one (weighted) leg. A component whose
//! legs sit on fewer than two coins has no base graph at all.

use std::collections::{BTreeSet, HashSet};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::game::{EdgeRef, Position};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub base_edges: BTreeSet<EdgeRef>,
    pub pendant_edges: BTreeSet<EdgeRef>,
    pub base_coins: BTreeSet<usize>,
    pub pendant_coins: BTreeSet<usize>,
    pub exterior_legs: BTreeSet<EdgeRef>,
    pub interior_legs: BTreeSet<EdgeRef>,
}

impl Decomposition {
    /// True if some pendant string touches one of the coins of `e`.
    pub fn touches_pendant(&self, e: EdgeRef) -> bool {
        let (a, b) = e.coins();
        self.pendant_edges
            .iter()
            .any(|&pe| pe.touches(a) || b.is_some_and(|b| pe.touches(b)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainCategory {
    Short,
    Medium,
    Long,
}

impl ChainCategory {
    pub fn of_length(k: usize) -> ChainCategory {
        match k {
            0 | 1 => ChainCategory::Short,
            2 => ChainCategory::Medium,
            _ => ChainCategory::Long,
        }
    }
}

/// `length + 1` base-graph strings, listed in path order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub edges: Vec<EdgeRef>,
    pub length: usize,
    pub category: ChainCategory,
}

impl Chain {
    fn from_edges(edges: Vec<EdgeRef>) -> Chain {
        let length = edges.len() - 1;
        Chain { edges, length, category: ChainCategory::of_length(length) }
    }

    pub fn contains(&self, e: EdgeRef) -> bool {
        self.edges.contains(&e)
    }

    /// The middle string of a medium chain.
    pub fn middle(&self) -> Option<EdgeRef> {
        (self.category == ChainCategory::Medium).then(|| self.edges[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Good,
    Bad,
}

/// Coin `pair.0` has degree one and hangs by `x` on coin `pair.1`, whose only
/// other string is `y`. Cutting `x` then `y` takes both; cutting `y` alone
/// declines them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleDealOpportunity {
    pub x: EdgeRef,
    pub y: EdgeRef,
    pub pair: (usize, usize),
}

fn leg_coins(p: &Position, r: &Range<usize>) -> Vec<usize> {
    r.clone().filter(|&i| p.legs()[i] > 0).collect()
}

fn component_edges(p: &Position, r: &Range<usize>) -> Vec<EdgeRef> {
    let legs = leg_coins(p, r).into_iter().map(EdgeRef::Leg);
    legs.chain((r.start..r.end - 1).map(EdgeRef::Inner)).collect()
}

pub fn decompose(p: &Position) -> Decomposition {
    let mut d = Decomposition::default();
    for r in p.components() {
        let legs = leg_coins(p, &r);
        if legs.len() < 2 {
            d.pendant_edges.extend(component_edges(p, &r));
            d.pendant_coins.extend(r);
            continue;
        }
        let (a, b) = (legs[0], legs[legs.len() - 1]);
        for e in component_edges(p, &r) {
            let inside = match e {
                EdgeRef::Leg(_) => true,
                EdgeRef::Inner(i) => a <= i && i < b,
            };
            if inside {
                d.base_edges.insert(e);
            } else {
                d.pendant_edges.insert(e);
            }
        }
        d.exterior_legs.insert(EdgeRef::Leg(a));
        d.exterior_legs.insert(EdgeRef::Leg(b));
        d.interior_legs.extend(legs[1..legs.len() - 1].iter().map(|&i| EdgeRef::Leg(i)));
        d.base_coins.extend(a..=b);
        d.pendant_coins.extend(r.clone().filter(|&i| i < a || i > b));
    }
    d
}

/// Chain partition of the base graph, left to right.
///
/// Interior legs are chains of length zero, and so is an exterior leg that
/// is a bundle: its coin has degree three or more, like an interior-leg coin.
/// The inner strings between consecutive leg coins form one chain, extended by
/// the single-strand exterior legs at its ends.
pub fn chains(p: &Position) -> Vec<Chain> {
    let mut out = Vec::new();
    for r in p.components() {
        let legs = leg_coins(p, &r);
        if legs.len() < 2 {
            continue;
        }
        let last = legs.len() - 1;
        let open_end = |k: usize| (k == 0 || k == last) && p.legs()[legs[k]] == 1;
        if !open_end(0) {
            out.push(Chain::from_edges(vec![EdgeRef::Leg(legs[0])]));
        }
        for k in 0..last {
            let (from, to) = (legs[k], legs[k + 1]);
            let mut edges = Vec::new();
            if open_end(k) {
                edges.push(EdgeRef::Leg(from));
            }
            edges.extend((from..to).map(EdgeRef::Inner));
            if open_end(k + 1) {
                edges.push(EdgeRef::Leg(to));
                out.push(Chain::from_edges(edges));
            } else {
                out.push(Chain::from_edges(edges));
                out.push(Chain::from_edges(vec![EdgeRef::Leg(to)]));
            }
        }
    }
    out
}

pub fn chain_of(p: &Position, e: EdgeRef) -> Option<Chain> {
    chains(p).into_iter().find(|c| c.contains(e))
}

/// Good iff the string touches no pendant string and is either in a short
/// chain or the middle of a medium chain. A chain of length zero is good even
/// next to a pendant; on weight-one strips that case never arises. A pendant
/// hanging from a coin with a leg bundle does not count: that coin keeps
/// degree three or more whatever is cut beside it.
pub fn classify_edge_structural(p: &Position, e: EdgeRef) -> Result<EdgeClass, AnalysisError> {
    let d = decompose(p);
    if !d.base_edges.contains(&e) {
        return Err(AnalysisError::NotBaseEdge(e));
    }
    let chain = chain_of(p, e).ok_or(AnalysisError::NotBaseEdge(e))?;
    let shape_ok = match chain.category {
        ChainCategory::Short => true,
        ChainCategory::Medium => chain.middle() == Some(e),
        ChainCategory::Long => false,
    };
    let (a, b) = e.coins();
    let exposed = std::iter::once(a)
        .chain(b)
        .any(|c| p.legs()[c] <= 1 && d.pendant_edges.iter().any(|pe| pe.touches(c)));
    let good = chain.length == 0 || (shape_ok && !exposed);
    Ok(if good { EdgeClass::Good } else { EdgeClass::Bad })
}

/// Bad iff cutting `e` lets the next player reach a double-dealing
/// opportunity, possibly after some captures, that was out of reach before.
pub fn classify_edge_direct(p: &Position, e: EdgeRef) -> Result<EdgeClass, crate::GameError> {
    let before = reachable_double_deals(p);
    let after = p.apply_move(e)?.resulting;
    let created = reachable_double_deals(&after).difference(&before).next().is_some();
    Ok(if created { EdgeClass::Bad } else { EdgeClass::Good })
}

/// Double-dealing opportunities in `p` or in any position reached from it by
/// a run of captures.
pub fn reachable_double_deals(p: &Position) -> BTreeSet<DoubleDealOpportunity> {
    let mut found = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut stack = vec![p.clone()];
    while let Some(q) = stack.pop() {
        if !seen.insert((q.legs().to_vec(), q.inner_strings().to_vec())) {
            continue;
        }
        found.extend(find_double_deals(&q));
        for c in available_coins(&q) {
            let e = sole_string(&q, c).expect("available coin has one string");
            stack.push(q.apply_move(e).expect("sole string is present").resulting);
        }
    }
    found
}

/// Live coins of degree one.
pub fn available_coins(p: &Position) -> Vec<usize> {
    (0..p.frame_len()).filter(|&i| p.is_live(i) && p.degree(i) == 1).collect()
}

/// The single remaining string of a degree-one coin.
pub fn sole_string(p: &Position, coin: usize) -> Option<EdgeRef> {
    if !p.is_live(coin) || p.degree(coin) != 1 {
        return None;
    }
    Some(if p.legs()[coin] == 1 {
        EdgeRef::Leg(coin)
    } else if p.has_inner_left(coin) {
        EdgeRef::Inner(coin - 1)
    } else {
        EdgeRef::Inner(coin)
    })
}

fn other_string(p: &Position, coin: usize, not: EdgeRef) -> Option<EdgeRef> {
    let mut strings = Vec::with_capacity(3);
    if p.legs()[coin] > 0 {
        strings.push(EdgeRef::Leg(coin));
    }
    if p.has_inner_left(coin) {
        strings.push(EdgeRef::Inner(coin - 1));
    }
    if p.has_inner_right(coin) {
        strings.push(EdgeRef::Inner(coin));
    }
    strings.into_iter().find(|&s| s != not)
}

pub fn find_double_deals(p: &Position) -> Vec<DoubleDealOpportunity> {
    let mut out = Vec::new();
    for c in available_coins(p) {
        let Some(x @ EdgeRef::Inner(i)) = sole_string(p, c) else {
            continue;
        };
        let d = if i == c { c + 1 } else { i };
        if p.degree(d) != 2 {
            continue;
        }
        if let Some(y) = other_string(p, d, x) {
            out.push(DoubleDealOpportunity { x, y, pair: (c, d) });
        }
    }
    out
}

/// Longest sequence of coins one player can take in a row starting from a
/// single available coin, ignoring every other capture.
pub fn longest_capturable_run(p: &Position) -> usize {
    available_coins(p)
        .into_iter()
        .map(|start| {
            let mut q = p.clone();
            let mut coin = start;
            let mut taken = 0;
            while let Some(e) = sole_string(&q, coin) {
                let out = match q.apply_move(e) {
                    Ok(out) => out,
                    Err(_) => break,
                };
                taken += out.captured.len();
                q = out.resulting;
                match e {
                    EdgeRef::Inner(i) => {
                        let next = if i == coin { i + 1 } else { i };
                        if !q.is_live(next) {
                            break;
                        }
                        coin = next;
                    }
                    EdgeRef::Leg(_) => break,
                }
            }
            taken
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Boundary, Game, GameSpec};

    fn pos(c: &[Vec<u8>]) -> Position {
        Position::from_components(c).unwrap()
    }

    fn lengths(p: &Position) -> Vec<usize> {
        chains(p).iter().map(|c| c.length).collect()
    }

    #[test]
    fn closed_triangles_start_is_all_base() {
        let p = pos(&[vec![1, 0, 1, 0, 1]]);
        let d = decompose(&p);
        assert!(d.pendant_edges.is_empty());
        assert!(d.pendant_coins.is_empty());
        assert_eq!(d.base_edges.len(), 7);
        assert_eq!(d.interior_legs, BTreeSet::from([EdgeRef::Leg(2)]));
        assert_eq!(lengths(&p), vec![2, 0, 2]);
    }

    #[test]
    fn trailing_coin_is_pendant() {
        let p = pos(&[vec![1, 1, 0]]);
        let d = decompose(&p);
        assert_eq!(
            d.base_edges,
            BTreeSet::from([EdgeRef::Leg(0), EdgeRef::Leg(1), EdgeRef::Inner(0)])
        );
        assert_eq!(d.pendant_edges, BTreeSet::from([EdgeRef::Inner(1)]));
        assert_eq!(d.pendant_coins, BTreeSet::from([2]));
    }

    #[test]
    fn single_leg_component_has_no_base() {
        let p = pos(&[vec![1]]);
        let d = decompose(&p);
        assert!(d.base_edges.is_empty());
        assert_eq!(d.pendant_edges, BTreeSet::from([EdgeRef::Leg(0)]));
        // a bundle of ground strings is still one leg
        let d = decompose(&pos(&[vec![3, 0]]));
        assert!(d.base_edges.is_empty());
    }

    #[test]
    fn two_leg_chains() {
        assert_eq!(lengths(&pos(&[vec![1, 0, 1]])), vec![3]);
        assert_eq!(lengths(&pos(&[vec![1, 0, 0, 0, 1]])), vec![5]);
        assert_eq!(chains(&pos(&[vec![1, 0, 1]]))[0].category, ChainCategory::Long);
    }

    #[test]
    fn chain_example_from_mixed_component() {
        // ext leg, 2-chain, interior leg, 1-chain, interior leg, 4-chain
        let p = pos(&[vec![1, 0, 1, 0, 1, 0, 0, 0, 1]]);
        assert_eq!(lengths(&p), vec![2, 0, 1, 0, 4]);
    }

    #[test]
    fn medium_chain_labels() {
        // ext leg 0, inner 0, inner 1, interior leg at 2, ...
        let p = pos(&[vec![1, 0, 1, 0, 1]]);
        assert_eq!(classify_edge_structural(&p, EdgeRef::Inner(0)), Ok(EdgeClass::Good));
        assert_eq!(classify_edge_structural(&p, EdgeRef::Leg(0)), Ok(EdgeClass::Bad));
        assert_eq!(classify_edge_structural(&p, EdgeRef::Inner(1)), Ok(EdgeClass::Bad));
        assert_eq!(classify_edge_structural(&p, EdgeRef::Leg(2)), Ok(EdgeClass::Good));
    }

    #[test]
    fn pendant_incident_short_chain_is_bad() {
        // boxes: pendant coin 0, ext leg at 1, interior leg at 2, ext leg at 3
        let p = pos(&[vec![0, 1, 1, 1]]);
        assert_eq!(classify_edge_structural(&p, EdgeRef::Leg(1)), Ok(EdgeClass::Bad));
        assert_eq!(classify_edge_structural(&p, EdgeRef::Inner(1)), Ok(EdgeClass::Bad));
        assert_eq!(classify_edge_direct(&p, EdgeRef::Leg(1)), Ok(EdgeClass::Bad));
        assert_eq!(classify_edge_direct(&p, EdgeRef::Inner(1)), Ok(EdgeClass::Bad));
        assert_eq!(
            classify_edge_structural(&p, EdgeRef::Inner(0)),
            Err(AnalysisError::NotBaseEdge(EdgeRef::Inner(0)))
        );
    }

    #[test]
    fn direct_classifier_examples() {
        let p = pos(&[vec![1, 0, 1, 0, 1]]);
        assert_eq!(classify_edge_direct(&p, EdgeRef::Leg(2)), Ok(EdgeClass::Good));
        let long = pos(&[vec![1, 0, 0, 0, 1]]);
        for e in long.legal_moves() {
            assert_eq!(classify_edge_direct(&long, e), Ok(EdgeClass::Bad), "{e}");
        }
        let p = pos(&[vec![1, 1]]);
        assert_eq!(classify_edge_direct(&p, EdgeRef::Inner(0)), Ok(EdgeClass::Good));
    }

    #[test]
    fn double_deal_patterns() {
        let dd = find_double_deals(&pos(&[vec![1, 0]]));
        assert_eq!(
            dd,
            vec![DoubleDealOpportunity { x: EdgeRef::Inner(0), y: EdgeRef::Leg(0), pair: (1, 0) }]
        );
        assert!(find_double_deals(&pos(&[vec![0, 0]])).is_empty());
        let start = Position::initial(&GameSpec::new(Game::Boxes, Boundary::Closed, 3).unwrap());
        assert!(find_double_deals(&start).is_empty());
        // middle coin joined to a shaded coin by y
        let dd = find_double_deals(&pos(&[vec![0, 0, 1, 1]]));
        assert_eq!(dd.len(), 1);
        assert_eq!(dd[0].y, EdgeRef::Inner(1));
    }

    #[test]
    fn capturable_runs() {
        assert_eq!(longest_capturable_run(&pos(&[vec![1, 1]])), 0);
        assert_eq!(longest_capturable_run(&pos(&[vec![1]])), 1);
        assert_eq!(longest_capturable_run(&pos(&[vec![0, 0]])), 2);
        assert_eq!(longest_capturable_run(&pos(&[vec![0, 0, 0, 1, 1]])), 3);
        assert_eq!(longest_capturable_run(&pos(&[vec![1, 0, 0, 0]])), 4);
    }
}
