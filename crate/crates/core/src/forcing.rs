//! The classical color change rule: a black vertex with exactly one white
//! neighbor turns that neighbor black.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Fixpoint of the classical rule together with one valid forcing chronology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub final_black: VertexSet,
    /// `(forcer, forced)` pairs in the order they were applied.
    pub forcing_sequence: Vec<(usize, usize)>,
}

impl ClosureResult {
    pub fn to_json(&self, g: &Graph) -> ClosureJson {
        ClosureJson {
            final_black: g.labels_of(&self.final_black),
            forcing_sequence: self
                .forcing_sequence
                .iter()
                .map(|&(u, v)| [g.label(u), g.label(v)])
                .collect(),
            is_zero_forcing: self.final_black.is_full(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClosureJson {
    pub final_black: Vec<String>,
    pub forcing_sequence: Vec<[String; 2]>,
    pub is_zero_forcing: bool,
}

/// Applies the classical rule to a fixpoint by sweeping the black vertices
/// in ascending order until a sweep forces nothing. The final set does not
/// depend on application order.
pub fn ccr_closure(g: &Graph, initial: &VertexSet) -> ClosureResult {
    let mut forcing_sequence = Vec::new();
    let final_black = sweep(g, initial, |u, v| forcing_sequence.push((u, v)));
    ClosureResult {
        final_black,
        forcing_sequence,
    }
}

fn sweep(g: &Graph, initial: &VertexSet, mut on_force: impl FnMut(usize, usize)) -> VertexSet {
    let mut black = initial.clone();
    loop {
        let mut changed = false;
        for u in black.to_vec() {
            let nbr = g.neighbor_set(u);
            if nbr.difference_len(&black) == 1 {
                let v = nbr.first_not_in(&black).expect("one white neighbor");
                black.insert(v);
                on_force(u, v);
                changed = true;
            }
        }
        if !changed {
            return black;
        }
    }
}

/// Closure of `initial` without recording the chronology.
pub fn closure_set(g: &Graph, initial: &VertexSet) -> VertexSet {
    sweep(g, initial, |_, _| {})
}

/// True iff the closure of `b` is every vertex.
pub fn is_zfs(g: &Graph, b: &VertexSet) -> bool {
    closure_set(g, b).is_full()
}

/// True iff some subset of `b` is a zero forcing set.
///
/// Closures are monotone in the starting set, so any superset of a zero
/// forcing set is itself zero forcing; the question therefore reduces to
/// [`is_zfs`] on `b` itself.
pub fn contains_zfs(g: &Graph, b: &VertexSet) -> bool {
    is_zfs(g, b)
}

/// `Z(G)` and the lexicographically least minimum zero forcing set.
pub fn zero_forcing_number(g: &Graph) -> Result<(usize, VertexSet)> {
    search_min_zfs(g, None)
}

/// As [`zero_forcing_number`], skipping every candidate that some supplied
/// automorphism maps to a lexicographically smaller set. The answer is
/// unchanged; each permutation is checked to be an automorphism first.
pub fn zero_forcing_number_with_symmetry(
    g: &Graph,
    automorphisms: &[Vec<usize>],
) -> Result<(usize, VertexSet)> {
    let n = g.order();
    for p in automorphisms {
        let is_perm = p.len() == n && p.iter().copied().sorted().eq(0..n);
        if !is_perm || g.edges().iter().any(|&(u, v)| !g.is_adjacent(p[u], p[v])) {
            return Err(Error::InvalidArgument(format!(
                "{p:?} is not an automorphism of the graph"
            )));
        }
    }
    search_min_zfs(g, Some(automorphisms))
}

fn has_smaller_image(s: &VertexSet, automorphisms: &[Vec<usize>]) -> bool {
    automorphisms.iter().any(|p| {
        let image = VertexSet::from_indices(s.width(), s.iter().map(|v| p[v]));
        image.lex_cmp(s).is_lt()
    })
}

fn search_min_zfs(g: &Graph, automorphisms: Option<&[Vec<usize>]>) -> Result<(usize, VertexSet)> {
    g.check_exact_cap()?;
    let n = g.order();
    for k in 1..=n {
        // candidates with least element `first` form a contiguous block of
        // the lexicographic order, so the first hit in block order is the
        // lexicographically least zero forcing set of size k
        let found = (0..=n - k).into_par_iter().find_map_first(|first| {
            (first + 1..n)
                .combinations(k - 1)
                .map(|rest| VertexSet::from_indices(n, std::iter::once(first).chain(rest)))
                .filter(|s| automorphisms.is_none_or(|a| !has_smaller_image(s, a)))
                .find(|s| is_zfs(g, s))
        });
        if let Some(s) = found {
            return Ok((k, s));
        }
    }
    Err(Error::Internal(
        "the full vertex set failed to be zero forcing".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn tree() -> Graph {
        parse_edge_list("v0 v11\nv0 v12\nv11 v21\nv11 v22\nv12 v23").unwrap()
    }

    #[test]
    fn path_is_forced_from_an_endpoint() {
        let g = Graph::path(4).unwrap();
        let r = ccr_closure(&g, &VertexSet::singleton(4, 0));
        assert!(r.final_black.is_full());
        assert_eq!(r.forcing_sequence, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn cycle_stalls_on_one_vertex() {
        let g = Graph::cycle(4).unwrap();
        let b = VertexSet::singleton(4, 0);
        assert_eq!(ccr_closure(&g, &b).final_black, b);
        assert!(!is_zfs(&g, &b));
        assert!(is_zfs(&g, &VertexSet::from_indices(4, [0, 1])));
    }

    #[test]
    fn tree_zfs_needs_a_deep_leaf() {
        let g = tree();
        let b = g.set_from_labels(&["v0", "v21"]).unwrap();
        assert!(ccr_closure(&g, &b).final_black.is_full());
        assert!(contains_zfs(
            &g,
            &g.set_from_labels(&["v0", "v11", "v21"]).unwrap()
        ));
        assert!(!contains_zfs(
            &g,
            &g.set_from_labels(&["v0", "v11"]).unwrap()
        ));
    }

    #[test]
    fn empty_and_full_sets() {
        let g = Graph::star(3).unwrap();
        assert!(!contains_zfs(&g, &g.empty_set()));
        assert!(is_zfs(&g, &g.full_set()));
        // center plus one leaf leaves two white leaves on the center
        assert!(!contains_zfs(&g, &VertexSet::from_indices(4, [0, 1])));
    }

    #[test]
    fn zero_forcing_numbers_of_families() {
        assert_eq!(zero_forcing_number(&Graph::path(7).unwrap()).unwrap().0, 1);
        let (z, s) = zero_forcing_number(&Graph::cycle(6).unwrap()).unwrap();
        assert_eq!((z, s.to_vec()), (2, vec![0, 1]));
        let (z, s) = zero_forcing_number(&Graph::star(5).unwrap()).unwrap();
        assert_eq!((z, s.to_vec()), (4, vec![1, 2, 3, 4]));
        assert_eq!(
            zero_forcing_number(&Graph::complete(5).unwrap()).unwrap().0,
            4
        );
    }

    #[test]
    fn symmetry_pruning_keeps_the_answer() {
        use crate::graph::enumerate::automorphisms;
        for g in [tree(), Graph::star(4).unwrap(), Graph::cycle(7).unwrap()] {
            let autos = automorphisms(&g).unwrap();
            assert_eq!(
                zero_forcing_number_with_symmetry(&g, &autos).unwrap(),
                zero_forcing_number(&g).unwrap()
            );
        }
        let g = Graph::path(3).unwrap();
        assert!(zero_forcing_number_with_symmetry(&g, &[vec![1, 0, 2]]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::path(31).unwrap();
        assert!(matches!(
            zero_forcing_number(&g),
            Err(Error::CapExceeded { n: 31, cap: 30 })
        ));
    }
}
