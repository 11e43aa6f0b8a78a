//! Brute-force reference implementations shared by the integration tests.
//! They use only the edge list of a graph and plain bitmasks, never the
//! library's own rule code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};
use proptest::prelude::*;
use pzf::{Graph, Rational, VertexSet};

pub fn tree() -> Graph {
    pzf::graph::parse_edge_list("v0 v11\nv0 v12\nv11 v21\nv11 v22\nv12 v23").unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.order()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub fn mask(s: &VertexSet) -> u64 {
    s.as_u64().expect("oracle graphs fit in 64 bits")
}

pub fn set(n: usize, m: u64) -> VertexSet {
    VertexSet::from_bits(n, m)
}

/// Classical closure, one force at a time in the order chosen by `pick`.
pub fn closure_with(adj: &[u64], b: u64, mut pick: impl FnMut(usize) -> usize) -> u64 {
    let mut black = b;
    loop {
        let mut moves = Vec::new();
        for (u, &nu) in adj.iter().enumerate() {
            let white = nu & !black;
            if black >> u & 1 == 1 && white.count_ones() == 1 {
                moves.push(white.trailing_zeros());
            }
        }
        if moves.is_empty() {
            return black;
        }
        black |= 1 << moves[pick(moves.len())];
    }
}

pub fn oracle_is_zfs(adj: &[u64], b: u64) -> bool {
    let full = (1u64 << adj.len()) - 1;
    closure_with(adj, b, |_| 0) == full
}

/// Smallest zero forcing sets by scanning every subset.
pub fn oracle_zero_forcing_number(adj: &[u64]) -> usize {
    let n = adj.len();
    (0u64..1 << n)
        .filter(|&b| oracle_is_zfs(adj, b))
        .map(|b| b.count_ones() as usize)
        .min()
        .unwrap()
}

/// Active forcing pairs `(u, v, F(u -> v))` of one round from `z`.
pub fn active_pairs(adj: &[u64], z: u64) -> Vec<(usize, usize, Rational)> {
    let mut pairs = Vec::new();
    for (u, &nu) in adj.iter().enumerate() {
        if z >> u & 1 == 0 {
            continue;
        }
        let closed = nu | 1 << u;
        if closed & !z == 0 {
            continue;
        }
        let deg = nu.count_ones() as i64;
        let black = (closed & z).count_ones() as i64;
        for v in 0..adj.len() {
            if nu >> v & 1 == 1 && z >> v & 1 == 0 {
                pairs.push((u, v, Rational::new(black.into(), deg.into())));
            }
        }
    }
    pairs
}

/// One-round distribution by enumerating every joint outcome of the
/// independent forcing events.
pub fn event_level_distribution(adj: &[u64], z: u64) -> BTreeMap<u64, Rational> {
    let pairs = active_pairs(adj, z);
    assert!(pairs.len() <= 20, "too many events for enumeration");
    let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
    for outcome in 0u64..1 << pairs.len() {
        let mut p = Rational::one();
        let mut state = z;
        for (i, (_, v, f)) in pairs.iter().enumerate() {
            if outcome >> i & 1 == 1 {
                p *= f;
                state |= 1 << v;
            } else {
                p *= Rational::one() - f;
            }
        }
        if !p.is_zero() {
            *out.entry(state).or_insert_with(Rational::zero) += p;
        }
    }
    out
}

/// Distribution after `k` rounds, by iterating the event-level oracle.
pub fn oracle_layer(adj: &[u64], a: u64, k: usize) -> BTreeMap<u64, Rational> {
    let mut layer = BTreeMap::from([(a, Rational::one())]);
    for _ in 0..k {
        let mut next: BTreeMap<u64, Rational> = BTreeMap::new();
        for (s, p) in &layer {
            for (t, q) in event_level_distribution(adj, *s) {
                *next.entry(t).or_insert_with(Rational::zero) += p * q;
            }
        }
        layer = next;
    }
    layer
}

/// Every black set reachable from `a` with positive probability.
pub fn oracle_reachable(adj: &[u64], a: u64) -> BTreeSet<u64> {
    let mut seen = BTreeSet::from([a]);
    let mut queue = VecDeque::from([a]);
    while let Some(s) = queue.pop_front() {
        for t in event_level_distribution(adj, s).into_keys() {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Vertex pairs `(i, j)` with `i < j`, in lexicographic order.
pub fn edge_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// A connected graph: a random tree on `2..=max_n` vertices plus random
/// extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            (
                Just(n),
                parents,
                prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges = BTreeSet::new();
            for (i, p) in parents.into_iter().enumerate() {
                edges.insert((p, i + 1));
            }
            for ((i, j), keep) in edge_pairs(n).into_iter().zip(extra) {
                if keep {
                    edges.insert((i, j));
                }
            }
            Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap()
        })
}

/// A connected graph with a random vertex subset of it.
pub fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), any::<u64>()).prop_map(move |(g, bits)| {
            let m = if n == 64 { bits } else { bits & ((1 << n) - 1) };
            (g, VertexSet::from_bits(n, m))
        })
    })
}

/// Every connected graph with `2 <= n <= max_n`, up to isomorphism.
pub fn small_graphs(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(|n| pzf::graph::enumerate::connected_graphs(n).unwrap())
        .collect()
}
