#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;
use rand::Rng;
use rescurv::{Rational, WeightedGraph};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Random spanning tree plus extra edges; resistances a/b with 1 ≤ a ≤ 9,
/// 1 ≤ b ≤ 4 when `weighted`.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize, weighted: bool) -> WeightedGraph {
    let mut pairs = std::collections::BTreeSet::new();
    for v in 1..n {
        let p = rng.random_range(0..v);
        pairs.insert((p, v));
    }
    for _ in 0..extra {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| {
            let r = weighted.then(|| q(rng.random_range(1..=9), rng.random_range(1..=4)));
            (u, v, r)
        })
        .collect();
    WeightedGraph::new(n, edges).unwrap()
}

fn build(n: usize, parents: &[Index], extra: &[(Index, Index)], weights: &[(i64, i64)], weighted: bool) -> WeightedGraph {
    let mut pairs = std::collections::BTreeSet::new();
    for v in 1..n {
        pairs.insert((parents[v - 1].index(v), v));
    }
    for (a, b) in extra {
        let (a, b) = (a.index(n), b.index(n));
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (u, v))| {
            let (a, b) = weights[i % weights.len()];
            (u, v, weighted.then(|| q(a, b)))
        })
        .collect();
    WeightedGraph::new(n, edges).unwrap()
}

/// Connected graphs on 2..=max_n vertices.
pub fn connected_graph(max_n: usize, weighted: bool) -> impl Strategy<Value = WeightedGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(any::<Index>(), n - 1),
            prop::collection::vec((any::<Index>(), any::<Index>()), 0..=2 * n),
            prop::collection::vec((1i64..=9, 1i64..=4), 1..=8),
        )
            .prop_map(move |(parents, extra, weights)| build(n, &parents, &extra, &weights, weighted))
    })
}

/// Edges whose removal keeps `g` connected.
pub fn non_bridges(g: &WeightedGraph) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .filter(|e| g.delete_edge(e.u, e.v).unwrap().is_connected())
        .map(|e| (e.u, e.v))
        .collect()
}
