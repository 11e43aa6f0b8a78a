//! The probabilistic color change rule.
//!
//! A black vertex `u` with at least one white neighbor forces each white
//! neighbor independently with probability `|N[u] ∩ Z| / deg(u)`, where `Z`
//! is the black set at the start of the round. Rounds are synchronous:
//! vertices turned black during a round start forcing in the next one.
//!
//! Since distinct white vertices are acted on by disjoint sets of
//! independent events, one round factorizes into independent per-vertex
//! Bernoulli trials with the conversion probabilities as success rates.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::RngCore;

use crate::error::Result;
use crate::graph::Graph;
use crate::rational::{bernoulli_threshold, ratio, Rational};
use crate::vertex_set::{ColorState, VertexSet};

/// `(|N[u] ∩ Z|, deg(u))` when `u` is black and has a white neighbor.
#[inline]
fn forcing_fraction(g: &Graph, z: &VertexSet, u: usize) -> Option<(usize, usize)> {
    if !z.contains(u) {
        return None;
    }
    let closed = g.closed_set(u);
    let black = closed.intersection_len(z);
    (black < closed.len()).then(|| (black, closed.len() - 1))
}

/// `F(u → v)`: zero unless `u` is black, `v` is a white neighbor of `u`,
/// and `N[u]` is not entirely black; then `|N[u] ∩ Z| / deg(u)`.
pub fn forcing_probability(g: &Graph, z: &VertexSet, u: usize, v: usize) -> Result<Rational> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_set(z)?;
    if !g.is_adjacent(u, v) || z.contains(v) {
        return Ok(Rational::zero());
    }
    Ok(match forcing_fraction(g, z, u) {
        Some((c, d)) => ratio(c as i64, d as i64),
        None => Rational::zero(),
    })
}

/// `P(→ v)`: one for black `v`, otherwise `1 - Π (1 - F(u → v))` over the
/// neighbors of `v`.
pub fn conversion_probability(g: &Graph, z: &VertexSet, v: usize) -> Result<Rational> {
    g.check_vertex(v)?;
    g.check_set(z)?;
    Ok(conversion(g, z, v))
}

pub(crate) fn conversion(g: &Graph, z: &VertexSet, v: usize) -> Rational {
    if z.contains(v) {
        return Rational::one();
    }
    let mut fail = Rational::one();
    for &u in g.neighbors(v) {
        if let Some((c, d)) = forcing_fraction(g, z, u) {
            fail *= ratio((d - c) as i64, d as i64);
        }
    }
    Rational::one() - fail
}

/// An exact finite distribution over colored states.
///
/// Zero-probability states are never stored. Iteration is in `ColorState`
/// order, so every derived output is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StateDistribution {
    entries: BTreeMap<ColorState, Rational>,
}

impl StateDistribution {
    pub fn point(state: ColorState) -> Self {
        let mut d = Self::default();
        d.entries.insert(state, Rational::one());
        d
    }

    /// Adds `p` to the mass of `state`.
    pub fn add(&mut self, state: ColorState, p: Rational) {
        if p.is_zero() {
            return;
        }
        match self.entries.get_mut(&state) {
            Some(q) => *q += p,
            None => {
                self.entries.insert(state, p);
            }
        }
    }

    pub fn get(&self, state: &ColorState) -> Option<&Rational> {
        self.entries.get(state)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ColorState, &Rational)> {
        self.entries.iter()
    }

    pub fn states(&self) -> impl Iterator<Item = &ColorState> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.entries.values().sum()
    }

    /// Total mass of states satisfying `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&ColorState) -> bool) -> Rational {
        self.entries
            .iter()
            .filter(|(s, _)| pred(s))
            .map(|(_, p)| p)
            .sum()
    }

    /// Probability that every vertex of `w` is black.
    pub fn marginal(&self, w: &VertexSet) -> Rational {
        self.mass_where(|s| w.is_subset(s))
    }

    pub fn into_entries(self) -> BTreeMap<ColorState, Rational> {
        self.entries
    }
}

impl FromIterator<(ColorState, Rational)> for StateDistribution {
    fn from_iter<I: IntoIterator<Item = (ColorState, Rational)>>(iter: I) -> Self {
        let mut d = Self::default();
        for (s, p) in iter {
            d.add(s, p);
        }
        d
    }
}

/// Per-vertex conversion probabilities of one round from `z`: vertices that
/// turn black surely, and those that turn black with probability in (0, 1).
fn round_plan(g: &Graph, z: &VertexSet) -> (VertexSet, Vec<(usize, Rational)>) {
    let mut sure = z.clone();
    let mut uncertain = Vec::new();
    let frontier = g.closed_neighborhood_of_set(z).difference(z);
    for v in &frontier {
        let p = conversion(g, z, v);
        if p.is_one() {
            sure.insert(v);
        } else if !p.is_zero() {
            uncertain.push((v, p));
        }
    }
    (sure, uncertain)
}

/// `D(Z)`: the exact distribution of the black set after one round.
pub fn step_distribution(g: &Graph, z: &VertexSet) -> StateDistribution {
    let (sure, uncertain) = round_plan(g, z);
    let mut layer = vec![(sure, Rational::one())];
    for (v, p) in &uncertain {
        let q = Rational::one() - p;
        let mut next = Vec::with_capacity(layer.len() * 2);
        for (s, r) in layer {
            let mut hit = s.clone();
            hit.insert(*v);
            next.push((s, &r * &q));
            next.push((hit, r * p));
        }
        layer = next;
    }
    layer.into_iter().collect()
}

/// Draws one successor of `z` without building the distribution.
///
/// Randomness contract: white vertices are visited in ascending order; each
/// one whose conversion probability `p` lies strictly between 0 and 1
/// consumes exactly one `next_u64` draw `x` and turns black iff
/// `x < ceil(p * 2^64)`. Vertices with `p` equal to 0 or 1 consume nothing.
pub fn sample_step<R: RngCore + ?Sized>(g: &Graph, z: &VertexSet, rng: &mut R) -> ColorState {
    RoundSampler::plan(g, z).draw(rng)
}

/// Precomputed Bernoulli thresholds for one round from a fixed state.
#[derive(Debug, Clone)]
pub(crate) struct RoundSampler {
    sure: VertexSet,
    coins: Vec<(usize, u128)>,
}

impl RoundSampler {
    pub(crate) fn plan(g: &Graph, z: &VertexSet) -> Self {
        let (sure, uncertain) = round_plan(g, z);
        let coins = uncertain
            .iter()
            .map(|(v, p)| (*v, bernoulli_threshold(p)))
            .collect();
        RoundSampler { sure, coins }
    }

    pub(crate) fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> ColorState {
        let mut out = self.sure.clone();
        for &(v, t) in &self.coins {
            if (rng.next_u64() as u128) < t {
                out.insert(v);
            }
        }
        out
    }
}

/// Memoizes [`RoundSampler`]s by state for repeated trajectories on small
/// graphs.
#[derive(Debug)]
pub(crate) struct SamplerCache<'g> {
    graph: &'g Graph,
    plans: HashMap<ColorState, RoundSampler>,
    enabled: bool,
}

impl<'g> SamplerCache<'g> {
    /// Caching is skipped above this order, where revisits are rare.
    const MAX_CACHED_ORDER: usize = 24;
    const MAX_ENTRIES: usize = 1 << 16;

    pub(crate) fn new(graph: &'g Graph) -> Self {
        SamplerCache {
            graph,
            plans: HashMap::new(),
            enabled: graph.order() <= Self::MAX_CACHED_ORDER,
        }
    }

    pub(crate) fn step<R: RngCore + ?Sized>(&mut self, z: &ColorState, rng: &mut R) -> ColorState {
        if !self.enabled {
            return sample_step(self.graph, z, rng);
        }
        if let Some(plan) = self.plans.get(z) {
            return plan.draw(rng);
        }
        let plan = RoundSampler::plan(self.graph, z);
        let out = plan.draw(rng);
        if self.plans.len() < Self::MAX_ENTRIES {
            self.plans.insert(z.clone(), plan);
        }
        out
    }
}

/// Every black set reachable from `z` in one round with positive
/// probability, computed without any probabilities.
///
/// A white vertex with a black neighbor turns black with positive
/// probability; it does so surely when one of those neighbors has it as its
/// only white neighbor.
pub fn successor_support(g: &Graph, z: &VertexSet) -> Vec<ColorState> {
    let mut sure = z.clone();
    let mut maybe = Vec::new();
    let frontier = g.closed_neighborhood_of_set(z).difference(z);
    for v in &frontier {
        let forced = g
            .neighbors(v)
            .iter()
            .any(|&u| z.contains(u) && g.neighbor_set(u).difference_len(z) == 1);
        if forced {
            sure.insert(v);
        } else {
            maybe.push(v);
        }
    }
    let mut out = vec![sure];
    for v in maybe {
        let with: Vec<_> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(v);
                t
            })
            .collect();
        out.extend(with);
    }
    out
}

/// Probability-one successor, if the round from `z` is deterministic.
pub fn deterministic_successor(g: &Graph, z: &VertexSet) -> Option<ColorState> {
    let (sure, uncertain) = round_plan(g, z);
    uncertain.is_empty().then_some(sure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tree() -> Graph {
        parse_edge_list("v0 v11\nv0 v12\nv11 v21\nv11 v22\nv12 v23").unwrap()
    }

    #[test]
    fn forcing_probability_cases() {
        let star = Graph::star(3).unwrap();
        let center = VertexSet::singleton(4, 0);
        assert_eq!(
            forcing_probability(&star, &center, 0, 1).unwrap(),
            ratio(1, 3)
        );
        // white forcer
        assert_eq!(forcing_probability(&star, &center, 1, 0).unwrap(), int(0));
        // non-neighbor
        assert_eq!(forcing_probability(&star, &center, 1, 2).unwrap(), int(0));

        let g = tree();
        let z = g.set_from_labels(&["v0", "v11"]).unwrap();
        let (v11, v21) = (
            g.vertex_by_label("v11").unwrap(),
            g.vertex_by_label("v21").unwrap(),
        );
        assert_eq!(forcing_probability(&g, &z, v11, v21).unwrap(), ratio(2, 3));

        let p2 = Graph::path(2).unwrap();
        assert_eq!(
            forcing_probability(&p2, &VertexSet::singleton(2, 0), 0, 1).unwrap(),
            int(1)
        );
        assert!(forcing_probability(&p2, &VertexSet::singleton(2, 0), 0, 2).is_err());
    }

    #[test]
    fn saturated_forcer_is_inactive() {
        let g = Graph::path(3).unwrap();
        let z = VertexSet::from_indices(3, [0, 1]);
        // N[v1] = {v1, v2} is all black
        assert_eq!(forcing_probability(&g, &z, 0, 1).unwrap(), int(0));
        assert_eq!(forcing_probability(&g, &z, 1, 2).unwrap(), int(1));
    }

    #[test]
    fn conversion_probability_cases() {
        let c = Graph::cycle(6).unwrap();
        let z = VertexSet::singleton(6, 0);
        assert_eq!(conversion_probability(&c, &z, 1).unwrap(), ratio(1, 2));
        assert_eq!(conversion_probability(&c, &z, 0).unwrap(), int(1));
        assert_eq!(conversion_probability(&c, &z, 3).unwrap(), int(0));
        let c4 = Graph::cycle(4).unwrap();
        let z = VertexSet::from_indices(4, [0, 2]);
        assert_eq!(conversion_probability(&c4, &z, 1).unwrap(), ratio(3, 4));
    }

    #[test]
    fn step_distribution_examples() {
        let k12 = Graph::star(2).unwrap();
        let d = step_distribution(&k12, &VertexSet::singleton(3, 0));
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|(_, p)| *p == ratio(1, 4)));

        let g = tree();
        let d = step_distribution(&g, &g.set_from_labels(&["v0"]).unwrap());
        let g2 = g.set_from_labels(&["v0", "v11"]).unwrap();
        assert_eq!(d.get(&g2), Some(&ratio(1, 4)));
        assert_eq!(d.total(), int(1));

        let full = g.full_set();
        assert_eq!(step_distribution(&g, &full), StateDistribution::point(full));
    }

    #[test]
    fn sampling_edge_cases() {
        struct Panicky;
        impl RngCore for Panicky {
            fn next_u32(&mut self) -> u32 {
                panic!("no randomness expected")
            }
            fn next_u64(&mut self) -> u64 {
                panic!("no randomness expected")
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {
                panic!("no randomness expected")
            }
        }
        let g = tree();
        assert_eq!(sample_step(&g, &g.full_set(), &mut Panicky), g.full_set());
        let p2 = Graph::path(2).unwrap();
        assert!(sample_step(&p2, &VertexSet::singleton(2, 0), &mut Panicky).is_full());
    }

    #[test]
    fn sampling_frequencies_match_the_distribution() {
        let g = Graph::star(2).unwrap();
        let z = VertexSet::singleton(3, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts: BTreeMap<ColorState, usize> = BTreeMap::new();
        let draws = 100_000;
        for _ in 0..draws {
            *counts.entry(sample_step(&g, &z, &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 4);
        for (s, c) in counts {
            let f = c as f64 / draws as f64;
            assert!((f - 0.25).abs() <= 0.01, "{s:?}: {f}");
        }
    }

    #[test]
    fn deterministic_rounds() {
        let g = tree();
        let z = g.set_from_labels(&["v21"]).unwrap();
        let next = deterministic_successor(&g, &z).unwrap();
        assert_eq!(next, g.set_from_labels(&["v21", "v11"]).unwrap());
        assert!(deterministic_successor(&g, &next).is_none());
    }
}
