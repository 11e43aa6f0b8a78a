//! Evolution of colored states: layered sample spaces and the absorbing
//! Markov chain on reachable states.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, SparseRow};
use crate::pccr::{step_distribution, StateDistribution};
use crate::rational::{fraction, Rational, RationalJson};
use crate::vertex_set::{ColorState, VertexSet};

/// Layer `k` holds the distribution of the black set after `k` rounds.
///
/// States are keyed by their black set, so histories that reach the same
/// colored graph are merged and their probabilities added.
#[derive(Debug, Clone)]
pub struct LayeredSpace<'g> {
    graph: &'g Graph,
    initial: ColorState,
    layers: Vec<StateDistribution>,
}

impl<'g> LayeredSpace<'g> {
    pub fn new(graph: &'g Graph, initial: ColorState) -> Result<Self> {
        graph.check_exact_cap()?;
        graph.check_set(&initial)?;
        Ok(LayeredSpace {
            graph,
            layers: vec![StateDistribution::point(initial.clone())],
            initial,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn initial(&self) -> &ColorState {
        &self.initial
    }

    /// Index of the last computed layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[StateDistribution] {
        &self.layers
    }

    pub fn layer(&self, k: usize) -> Result<&StateDistribution> {
        self.layers.get(k).ok_or(Error::LayerNotComputed {
            k,
            available: self.depth(),
        })
    }

    /// Appends the next layer: the mixture of one-round successor
    /// distributions weighted by the current layer.
    pub fn expand(&mut self) -> &StateDistribution {
        let last = self.layers.last().expect("layer 0 always exists");
        let graph = self.graph;
        let parts: Vec<Vec<(ColorState, Rational)>> = last
            .iter()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(s, p)| {
                step_distribution(graph, s)
                    .into_entries()
                    .into_iter()
                    .map(|(t, q)| (t, q * p))
                    .collect()
            })
            .collect();
        let next: StateDistribution = parts.into_iter().flatten().collect();
        self.layers.push(next);
        self.layers.last().unwrap()
    }

    /// Expands until layer `k` exists.
    pub fn expand_to(&mut self, k: usize) -> &StateDistribution {
        while self.depth() < k {
            self.expand();
        }
        &self.layers[k]
    }

    /// `P^(k)(W)`: probability that every vertex of `w` is black after `k`
    /// rounds.
    pub fn marginal(&self, k: usize, w: &VertexSet) -> Result<Rational> {
        self.graph.check_set(w)?;
        Ok(self.layer(k)?.marginal(w))
    }

    /// Probability that `w1` or `w2` is entirely black after `k` rounds,
    /// by inclusion-exclusion over the two marginals.
    pub fn union_marginal(&self, k: usize, w1: &VertexSet, w2: &VertexSet) -> Result<Rational> {
        Ok(self.marginal(k, w1)? + self.marginal(k, w2)? - self.marginal(k, &w1.union(w2))?)
    }

    /// One record per state per computed layer.
    pub fn records(&self) -> Vec<LayerRecord> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(k, layer)| {
                layer.iter().map(move |(s, p)| LayerRecord {
                    k,
                    state_bits_hex: s.to_hex(),
                    probability_num: p.numer().to_string(),
                    probability_den: p.denom().to_string(),
                })
            })
            .collect()
    }

    /// First `k` whose support equals the support of layer `k + 1`, expanding
    /// at most to `max_k + 1`.
    pub fn support_stabilizes(&mut self, max_k: usize) -> Option<usize> {
        for k in 0..=max_k {
            self.expand_to(k + 1);
            if self.layers[k].states().eq(self.layers[k + 1].states()) {
                return Some(k);
            }
        }
        None
    }
}

/// JSON-lines layer dump record.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LayerRecord {
    pub k: usize,
    pub state_bits_hex: String,
    pub probability_num: String,
    pub probability_den: String,
}

/// The Markov chain on colored states reachable from an initial state.
#[derive(Debug, Clone)]
pub struct TransitionSystem {
    /// Reachable states in breadth-first order; index 0 is the initial state.
    pub states: Vec<ColorState>,
    index: HashMap<ColorState, usize>,
    /// `transitions[j]` lists `(i, p)`: state `j` moves to state `i` with
    /// probability `p` in one round. Each list sums to one.
    pub transitions: Vec<Vec<(usize, Rational)>>,
    /// Index of the all-black state.
    pub absorbing_index: usize,
}

/// Builds the chain by breadth-first search over one-round supports.
pub fn reachable_states(g: &Graph, initial: &ColorState) -> Result<TransitionSystem> {
    g.check_exact_cap()?;
    g.check_set(initial)?;
    if initial.is_empty() {
        return Err(Error::EmptySeed);
    }
    let mut states = vec![initial.clone()];
    let mut index = HashMap::from([(initial.clone(), 0)]);
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        let dist = step_distribution(g, &states[j]);
        let mut out = Vec::with_capacity(dist.len());
        for (s, p) in dist.into_entries() {
            let i = *index.entry(s.clone()).or_insert_with(|| {
                states.push(s);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            out.push((i, p));
        }
        if transitions.len() <= j {
            transitions.resize(j + 1, Vec::new());
        }
        transitions[j] = out;
    }
    transitions.resize(states.len(), Vec::new());

    let full = g.full_set();
    let absorbing_index = *index
        .get(&full)
        .ok_or_else(|| Error::Internal("all-black state is unreachable".into()))?;
    let ts = TransitionSystem {
        states,
        index,
        transitions,
        absorbing_index,
    };
    ts.validate()?;
    Ok(ts)
}

impl TransitionSystem {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &ColorState) -> Option<usize> {
        self.index.get(s).copied()
    }

    fn validate(&self) -> Result<()> {
        for (j, row) in self.transitions.iter().enumerate() {
            let sum: Rational = row.iter().map(|(_, p)| p).sum();
            if !sum.is_one() {
                return Err(Error::Internal(format!(
                    "outgoing probabilities of state {j} sum to {}",
                    fraction(&sum)
                )));
            }
            let absorbing = matches!(row.as_slice(), [(i, _)] if *i == j);
            if absorbing != (j == self.absorbing_index) {
                return Err(Error::Internal(format!(
                    "state {j} has unexpected absorbing status {absorbing}"
                )));
            }
        }
        Ok(())
    }

    /// One round applied to a probability vector indexed like `states`.
    pub fn step_vector(&self, x: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.len()];
        for (j, row) in self.transitions.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, p) in row {
                y[*i] += &x[j] * p;
            }
        }
        y
    }

    pub fn initial_vector(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.len()];
        x[0] = Rational::one();
        x
    }

    /// Distribution after `k` rounds from the initial state.
    pub fn distribution_after(&self, k: usize) -> StateDistribution {
        let mut x = self.initial_vector();
        for _ in 0..k {
            x = self.step_vector(&x);
        }
        self.states.iter().cloned().zip(x).collect()
    }

    /// Expected number of rounds to absorption from every state, by an exact
    /// solve of `(I - Q) t = 1` on the transient block.
    pub fn expected_steps_all(&self) -> Result<Vec<Rational>> {
        // black sets only grow, so ordering by size makes I - Q upper
        // triangular and the elimination phase a no-op
        let mut transient: Vec<usize> = (0..self.len())
            .filter(|&i| i != self.absorbing_index)
            .collect();
        transient.sort_by_key(|&i| (self.states[i].len(), i));
        let mut pos = vec![usize::MAX; self.len()];
        for (r, &i) in transient.iter().enumerate() {
            pos[i] = r;
        }
        let rows: Vec<SparseRow> = transient
            .iter()
            .map(|&j| {
                let mut row = BTreeMap::from([(pos[j], Rational::one())]);
                for (i, p) in &self.transitions[j] {
                    if *i != self.absorbing_index {
                        *row.entry(pos[*i]).or_insert_with(Rational::zero) -= p;
                    }
                }
                row
            })
            .collect();
        let t = linalg::solve(rows, vec![Rational::one(); transient.len()])
            .ok_or_else(|| Error::Internal("transient block is singular".into()))?;
        Ok((0..self.len())
            .map(|i| {
                if i == self.absorbing_index {
                    Rational::zero()
                } else {
                    t[pos[i]].clone()
                }
            })
            .collect())
    }

    /// Graphviz digraph of the chain with exact edge probabilities.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("digraph chain {\n  node [shape=box];\n");
        for (i, s) in self.states.iter().enumerate() {
            let label = g.labels_of(s).join(",");
            let extra = if i == self.absorbing_index {
                ", peripheries=2"
            } else {
                ""
            };
            writeln!(out, "  s{i} [label=\"{{{label}}}\"{extra}];").unwrap();
        }
        for (j, row) in self.transitions.iter().enumerate() {
            for (i, p) in row {
                writeln!(out, "  s{j} -> s{i} [label=\"{}\"];", fraction(p)).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionReport {
    /// Expected rounds until every vertex is black.
    pub expected_steps: Rational,
    /// `(k, P^(k)(all black))` for `k = 0..` up to confirmation or the cutoff.
    pub step_probabilities: Vec<(usize, Rational)>,
    pub limit_confirmed: bool,
}

impl AbsorptionReport {
    /// First `k` with `P^(k)(all black) >= 1 - epsilon`, if reached.
    pub fn confirmed_at(&self) -> Option<usize> {
        self.limit_confirmed
            .then(|| self.step_probabilities.last().map(|(k, _)| *k))
            .flatten()
    }
}

/// Exact expected absorption time plus an iterated witness that the mass on
/// the all-black state reaches `1 - epsilon` within `max_k` rounds.
pub fn absorption_analysis(
    ts: &TransitionSystem,
    epsilon: &Rational,
    max_k: usize,
) -> Result<AbsorptionReport> {
    if *epsilon <= Rational::zero() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let expected_steps = ts.expected_steps_all()?.swap_remove(0);
    let target = Rational::one() - epsilon;
    let mut x = ts.initial_vector();
    let mut step_probabilities = vec![(0, x[ts.absorbing_index].clone())];
    let mut limit_confirmed = x[ts.absorbing_index] >= target;
    let mut k = 0;
    while !limit_confirmed && k < max_k {
        k += 1;
        x = ts.step_vector(&x);
        let p = x[ts.absorbing_index].clone();
        limit_confirmed = p >= target;
        step_probabilities.push((k, p));
    }
    Ok(AbsorptionReport {
        expected_steps,
        step_probabilities,
        limit_confirmed,
    })
}

#[derive(Debug, Serialize)]
pub struct ChainJson {
    pub graph: String,
    pub seed: Vec<String>,
    pub states: usize,
    pub expected_steps: RationalJson,
    pub limit_confirmed: bool,
    pub confirmed_at: Option<usize>,
    pub step_probabilities: Vec<StepProbabilityJson>,
}

#[derive(Debug, Serialize)]
pub struct StepProbabilityJson {
    pub k: usize,
    pub p: RationalJson,
}

impl AbsorptionReport {
    pub fn to_json(&self, g: &Graph, ts: &TransitionSystem) -> ChainJson {
        ChainJson {
            graph: crate::graph::emit_graph6(g),
            seed: g.labels_of(&ts.states[0]),
            states: ts.len(),
            expected_steps: (&self.expected_steps).into(),
            limit_confirmed: self.limit_confirmed,
            confirmed_at: self.confirmed_at(),
            step_probabilities: self
                .step_probabilities
                .iter()
                .map(|(k, p)| StepProbabilityJson { k: *k, p: p.into() })
                .collect(),
        }
    }
}
