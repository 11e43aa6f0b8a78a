//! Probability that a seed set turns the whole graph black in finite time,
//! and the best seed sets of each size.
//!
//! `T^k` is the set of step-`k` states whose black set contains a zero
//! forcing set, `k0` is the least `k` with `T^k` nonempty, and
//! `P_A(G) = P^(k0)(T^k0)`. Only the single step `k0` is measured.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{contains_zfs, is_zfs, zero_forcing_number};
use crate::graph::{emit_graph6, Graph};
use crate::pccr::successor_support;
use crate::rational::{is_probability, Rational, RationalJson};
use crate::state_space::LayeredSpace;
use crate::vertex_set::{ColorState, VertexSet};

/// Least `k` such that some state reachable in exactly `k` rounds contains a
/// zero forcing set.
///
/// Every state after one round from `Z` lies inside `N[Z]`, and `N[Z]` is
/// itself reached with positive probability. By induction the step-`k`
/// states are the subsets of `N^k[A]` that occur, with `N^k[A]` among them,
/// so it is enough to follow that single maximal branch. It gains a vertex
/// every round on a connected graph, hence `k0 <= n - |A|`.
pub fn least_k_with_zfs(g: &Graph, a: &VertexSet) -> Result<usize> {
    g.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySeed);
    }
    let mut s = a.clone();
    let mut k = 0;
    while !is_zfs(g, &s) {
        s = g.closed_neighborhood_of_set(&s);
        k += 1;
    }
    Ok(k)
}

/// `k0` by explicit breadth-first search over the supports of each round,
/// with no shortcut. Fails once a layer holds more than `budget` states.
pub fn least_k_with_zfs_by_support(g: &Graph, a: &VertexSet, budget: usize) -> Result<usize> {
    g.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySeed);
    }
    let mut layer: BTreeSet<ColorState> = BTreeSet::from([a.clone()]);
    for k in 0.. {
        if layer.iter().any(|s| contains_zfs(g, s)) {
            return Ok(k);
        }
        let mut next = BTreeSet::new();
        for s in &layer {
            next.extend(successor_support(g, s));
            if next.len() > budget {
                return Err(Error::StateBudgetExceeded { budget });
            }
        }
        layer = next;
    }
    unreachable!()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PzfOutcome {
    pub seed: VertexSet,
    /// `None` for the empty seed, where no step ever contains a zero
    /// forcing set.
    pub k0: Option<usize>,
    pub p_a: Rational,
    /// Members of `T^k0` with their step-`k0` probabilities.
    pub t_k0_states: Vec<(ColorState, Rational)>,
}

/// `P_A(G)` with its witnesses.
pub fn p_a(g: &Graph, a: &VertexSet) -> Result<PzfOutcome> {
    g.check_exact_cap()?;
    g.check_set(a)?;
    if a.is_empty() {
        return Ok(PzfOutcome {
            seed: a.clone(),
            k0: None,
            p_a: Rational::zero(),
            t_k0_states: Vec::new(),
        });
    }
    let k0 = least_k_with_zfs(g, a)?;
    let mut space = LayeredSpace::new(g, a.clone())?;
    let t_k0_states: Vec<_> = space
        .expand_to(k0)
        .iter()
        .filter(|(s, _)| contains_zfs(g, s))
        .map(|(s, p)| (s.clone(), p.clone()))
        .collect();
    let p_a: Rational = t_k0_states.iter().map(|(_, p)| p).sum();
    if t_k0_states.is_empty() || !is_probability(&p_a) {
        return Err(Error::Internal(format!("T^{k0} mass out of range")));
    }
    Ok(PzfOutcome {
        seed: a.clone(),
        k0: Some(k0),
        p_a,
        t_k0_states,
    })
}

/// `P^(k)(T^k)` for `k = k0 ..= k0 + extra`. Not part of `P_A`; it shows how
/// the zero-forcing mass keeps growing after the measured step.
pub fn t_mass_sequence(g: &Graph, a: &VertexSet, extra: usize) -> Result<Vec<(usize, Rational)>> {
    g.check_exact_cap()?;
    let k0 = least_k_with_zfs(g, a)?;
    let mut space = LayeredSpace::new(g, a.clone())?;
    Ok((k0..=k0 + extra)
        .map(|k| (k, space.expand_to(k).mass_where(|s| contains_zfs(g, s))))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimumReport {
    pub j: usize,
    pub p_j: Rational,
    /// Every seed of size `j` attaining `p_j`, in lexicographic order.
    pub argmax_seeds: Vec<VertexSet>,
    pub evaluated_count: usize,
}

/// `P_(j)(G)`: the largest `P_A(G)` over seeds of size `j`, for
/// `1 <= j <= Z(G)`, by exhaustive evaluation.
pub fn p_j(g: &Graph, j: usize) -> Result<OptimumReport> {
    g.check_exact_cap()?;
    let (z, _) = zero_forcing_number(g)?;
    if !(1..=z).contains(&j) {
        return Err(Error::JOutOfRange { j, max: z });
    }
    let n = g.order();
    let seeds: Vec<VertexSet> = (0..n)
        .combinations(j)
        .map(|c| VertexSet::from_indices(n, c))
        .collect();
    let values: Vec<Rational> = seeds
        .par_iter()
        .map(|s| p_a(g, s).map(|o| o.p_a))
        .collect::<Result<_>>()?;
    let best = values.iter().max().cloned().expect("at least one seed");
    // combinations are generated in lexicographic order
    let argmax_seeds = seeds
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == best)
        .map(|(s, _)| s.clone())
        .collect();
    Ok(OptimumReport {
        j,
        p_j: best,
        argmax_seeds,
        evaluated_count: seeds.len(),
    })
}

#[derive(Debug, Serialize)]
pub struct PzfJson {
    pub graph: String,
    pub seed: Vec<String>,
    pub k0: Option<usize>,
    #[serde(rename = "p_A")]
    pub p_a: RationalJson,
    pub t_k0: Vec<StateMassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Vec<StepMassJson>>,
}

#[derive(Debug, Serialize)]
pub struct StateMassJson {
    pub state: String,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Serialize)]
pub struct StepMassJson {
    pub k: usize,
    pub mass: RationalJson,
}

impl PzfOutcome {
    pub fn to_json(&self, g: &Graph, diagnostic: Option<&[(usize, Rational)]>) -> PzfJson {
        PzfJson {
            graph: emit_graph6(g),
            seed: g.labels_of(&self.seed),
            k0: self.k0,
            p_a: (&self.p_a).into(),
            t_k0: self
                .t_k0_states
                .iter()
                .map(|(s, p)| StateMassJson {
                    state: s.to_hex(),
                    num: p.numer().to_string(),
                    den: p.denom().to_string(),
                })
                .collect(),
            diagnostic: diagnostic.map(|d| {
                d.iter()
                    .map(|(k, m)| StepMassJson {
                        k: *k,
                        mass: m.into(),
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OptimumJson {
    pub graph: String,
    pub j: usize,
    pub p_j: RationalJson,
    pub argmax_seeds: Vec<Vec<String>>,
    pub evaluated_count: usize,
}

impl OptimumReport {
    pub fn to_json(&self, g: &Graph) -> OptimumJson {
        OptimumJson {
            graph: emit_graph6(g),
            j: self.j,
            p_j: (&self.p_j).into(),
            argmax_seeds: self.argmax_seeds.iter().map(|s| g.labels_of(s)).collect(),
            evaluated_count: self.evaluated_count,
        }
    }
}
