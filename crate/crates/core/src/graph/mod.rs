//! Simple connected undirected graphs with dense vertex indices.

mod dot;
mod edge_list;
pub mod enumerate;
mod graph6;

use std::collections::VecDeque;

use crate::error::{Error, Location, Result, EXACT_CAP};
use crate::vertex_set::VertexSet;

pub use dot::emit_dot;
pub use edge_list::parse_edge_list;
pub use graph6::{emit_graph6, parse_graph6};

/// An immutable, simple, connected, undirected graph on vertices `0..n`.
///
/// Construction validates every invariant: no self-loops or repeated edges,
/// at least two vertices, and a single connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    nbr: Vec<VertexSet>,
    closed: Vec<VertexSet>,
    labels: Option<Vec<String>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list over `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Self::build(n, edges.iter().map(|&(u, v)| (u, v, None)), None)
    }

    pub fn from_edges_labeled(
        n: usize,
        edges: &[(usize, usize)],
        labels: Vec<String>,
    ) -> Result<Graph> {
        Self::build(n, edges.iter().map(|&(u, v)| (u, v, None)), Some(labels))
    }

    pub(crate) fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, Option<usize>)>,
        labels: Option<Vec<String>>,
    ) -> Result<Graph> {
        if n < 2 {
            return Err(Error::TooFewVertices { n });
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} labels for {n} vertices",
                    l.len()
                )));
            }
        }
        let name = |v: usize| match &labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        };
        let mut nbr = vec![VertexSet::empty(n); n];
        let mut edge_count = 0;
        for (u, v, line) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    vertex: name(u),
                    at: Location(line),
                });
            }
            if !nbr[u].insert(v) {
                return Err(Error::DuplicateEdge {
                    u: name(u),
                    v: name(v),
                    at: Location(line),
                });
            }
            nbr[v].insert(u);
            edge_count += 1;
        }
        let adj: Vec<Vec<usize>> = nbr.iter().map(VertexSet::to_vec).collect();
        let closed = nbr
            .iter()
            .enumerate()
            .map(|(v, s)| {
                let mut c = s.clone();
                c.insert(v);
                c
            })
            .collect();
        let g = Graph {
            adj,
            nbr,
            closed,
            labels,
            edge_count,
        };
        if let Some(v) = g.first_unreachable() {
            return Err(Error::Disconnected {
                vertex: g.label(v),
                root: g.label(0),
            });
        }
        Ok(g)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let n = self.order();
        let mut seen = VertexSet::singleton(n, 0);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        VertexSet::full(n).first_not_in(&seen)
    }

    /// Path `v1 - v2 - ... - vn`.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges_labeled(n, &edges, numbered(1, n))
    }

    /// Cycle `v1 - v2 - ... - vn - v1`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges_labeled(n, &edges, numbered(1, n))
    }

    /// Star `K_{1,m}` with center `v0` at index 0 and pendants `v1..vm`.
    pub fn star(m: usize) -> Result<Graph> {
        if m < 1 {
            return Err(Error::InvalidArgument(
                "star needs at least 1 pendant".into(),
            ));
        }
        let edges: Vec<_> = (1..=m).map(|i| (0, i)).collect();
        Self::from_edges_labeled(m + 1, &edges, numbered(0, m + 1))
    }

    /// Complete graph on `v1..vn`.
    pub fn complete(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::from_edges_labeled(n, &edges, numbered(1, n))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.nbr[v]
    }

    #[inline]
    pub fn closed_set(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.nbr[u].contains(v)
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed[v].clone())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    /// `N[S]`: `S` together with every neighbor of a member of `S`.
    pub fn closed_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            out.union_with(&self.nbr[v]);
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.width() == self.order() {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                got: s.width(),
                n: self.order(),
            })
        }
    }

    /// Rejects graphs too large for the exact engines.
    pub fn check_exact_cap(&self) -> Result<()> {
        if self.order() > EXACT_CAP {
            Err(Error::CapExceeded {
                n: self.order(),
                cap: EXACT_CAP,
            })
        } else {
            Ok(())
        }
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.order())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// The same graph with external labels dropped.
    pub fn without_labels(&self) -> Graph {
        Graph {
            labels: None,
            ..self.clone()
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of `v`; the decimal index when the graph is unlabeled.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Resolves a label, falling back to a decimal index.
    pub fn vertex_by_label(&self, name: &str) -> Result<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == name) {
                return Ok(i);
            }
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.order() => Ok(i),
            _ => Err(Error::UnknownLabel(name.to_string())),
        }
    }

    pub fn labels_of(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.label(v)).collect()
    }

    /// Builds a vertex set from labels or indices.
    pub fn set_from_labels<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut s = self.empty_set();
        for name in names {
            s.insert(self.vertex_by_label(name.as_ref())?);
        }
        Ok(s)
    }
}

fn numbered(start: usize, count: usize) -> Vec<String> {
    (start..start + count).map(|i| format!("v{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        let s = Graph::star(3).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.degree(0).unwrap(), 3);
        assert_eq!(s.label(0), "v0");

        let c = Graph::cycle(3).unwrap();
        assert_eq!(c, Graph::complete(3).unwrap());

        let p = Graph::path(2).unwrap();
        assert_eq!(p.edges(), vec![(0, 1)]);

        assert!(matches!(
            Graph::path(1),
            Err(Error::TooFewVertices { n: 1 })
        ));
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::star(0).is_err());
    }

    #[test]
    fn neighborhoods() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.closed_neighborhood(0).unwrap().to_vec(), vec![0, 1, 2]);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.closed_neighborhood(0).unwrap().to_vec(), vec![0, 1]);
        for n in 3..8 {
            let c = Graph::cycle(n).unwrap();
            assert!((0..n).all(|v| c.degree(v).unwrap() == 2));
        }
        assert!(matches!(
            k3.degree(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(k3.closed_neighborhood(7).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 0), (1, 2)]),
            Err(Error::SelfLoop { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::from_edges(4, &[(0, 1), (2, 3)]),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn labels_resolve_with_index_fallback() {
        let s = Graph::star(4).unwrap();
        assert_eq!(s.vertex_by_label("v3").unwrap(), 3);
        assert_eq!(s.vertex_by_label("2").unwrap(), 2);
        assert!(s.vertex_by_label("v9").is_err());
        assert!(s.vertex_by_label("5").is_err());
    }
}
