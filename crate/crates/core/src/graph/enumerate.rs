//! Brute-force enumeration of small graphs and their symmetries.
//!
//! Everything here is exponential and meant for exhaustive checks at
//! desk scale.

use itertools::Itertools;

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`connected_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 6;

/// Largest order accepted by [`automorphisms`].
pub const MAX_AUTOMORPHISM_ORDER: usize = 9;

#[allow(clippy::needless_range_loop)]
fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            idx[i][j] = k;
            idx[j][i] = k;
            k += 1;
        }
    }
    idx
}

/// One representative of every isomorphism class of connected graphs of
/// order `n`, ordered by their adjacency bitmask. Each representative is
/// the minimum-mask relabeling of its class.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(2..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "graph enumeration supports orders 2..={MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let idx = pair_index(n);
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    // image of each pair index under each permutation
    let perm_maps: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .map(|p| pairs.iter().map(|&(i, j)| idx[p[i]][p[j]]).collect())
        .collect();

    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if !mask_connected(n, mask, &pairs) {
            continue;
        }
        let canonical = perm_maps.iter().all(|map| {
            let mut image = 0u32;
            let mut m = mask;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                image |= 1 << map[b];
                m &= m - 1;
            }
            image >= mask
        });
        if canonical {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            out.push(Graph::from_edges(n, &edges)?);
        }
    }
    Ok(out)
}

fn mask_connected(n: usize, mask: u32, pairs: &[(usize, usize)]) -> bool {
    let mut adj = vec![0u32; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            next |= adj[v];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == (1 << n) - 1
}

/// Every automorphism of `g`, as `perm[v]` = image of `v`. The identity
/// comes first.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > MAX_AUTOMORPHISM_ORDER {
        return Err(Error::InvalidArgument(format!(
            "automorphism search supports orders up to {MAX_AUTOMORPHISM_ORDER}, got {n}"
        )));
    }
    let edges = g.edges();
    Ok((0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|v| g.neighbors(v).len() == g.neighbors(p[v]).len()))
        .filter(|p| edges.iter().all(|&(u, v)| g.is_adjacent(p[u], p[v])))
        .collect())
}

/// Smallest vertex of each orbit of the automorphism group.
pub fn orbit_representatives(g: &Graph) -> Result<Vec<usize>> {
    let autos = automorphisms(g)?;
    Ok((0..g.order())
        .filter(|&v| autos.iter().all(|p| p[v] >= v))
        .collect())
}
