mod common;

use common::{adjacency, oracle_is_zfs, oracle_layer, set, small_graphs, tree};
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use pzf::forcing::{contains_zfs, is_zfs};
use pzf::metrics::{least_k_with_zfs, least_k_with_zfs_by_support, p_a, p_j};
use pzf::rational::ratio;
use pzf::state_space::reachable_states;
use pzf::{Graph, Rational, VertexSet};

fn pow(a: i64, e: i64) -> BigInt {
    BigInt::from(a).pow(e as u32)
}

// From the center each leaf turns black with probability 1/m in round one;
// a zero forcing set appears once at most one leaf is still white.
fn star_center(m: i64) -> Rational {
    Rational::new((m - 1).into(), pow(m, m - 1)) + Rational::new(1.into(), pow(m, m))
}

// From a leaf the center is forced first, then each of the other m - 1
// leaves turns black with probability 2/m.
fn star_leaf(m: i64) -> Rational {
    Rational::new(
        BigInt::from((m - 1) * (m - 2)) * pow(2, m - 2),
        pow(m, m - 1),
    ) + Rational::new(pow(2, m - 1), pow(m, m - 1))
}

#[test]
fn cycles_from_one_vertex() {
    for n in 3..=12 {
        let g = Graph::cycle(n).unwrap();
        let o = p_a(&g, &g.set_from_labels(&["v1"]).unwrap()).unwrap();
        assert_eq!(o.p_a, ratio(3, 4), "C_{n}");
        assert_eq!(o.k0, Some(1));
    }
}

#[test]
fn tree_singletons() {
    let g = tree();
    for (seed, p, k0) in [
        ("v0", ratio(4, 9), 2),
        ("v23", ratio(8, 9), 4),
        ("v11", ratio(7, 27), 1),
        ("v21", ratio(8, 9), 2),
    ] {
        let o = p_a(&g, &g.set_from_labels(&[seed]).unwrap()).unwrap();
        assert_eq!((o.p_a, o.k0), (p, Some(k0)), "{seed}");
    }
    let best = p_j(&g, 1).unwrap();
    assert_eq!(best.p_j, ratio(8, 9));
    let names: Vec<_> = best.argmax_seeds.iter().map(|s| g.labels_of(s)).collect();
    assert_eq!(names, [["v21"], ["v22"], ["v23"]]);
}

#[test]
fn star_closed_forms() {
    for m in 3..=8 {
        let g = Graph::star(m).unwrap();
        let center = p_a(&g, &VertexSet::singleton(m + 1, 0)).unwrap().p_a;
        let leaf = p_a(&g, &VertexSet::singleton(m + 1, 1)).unwrap().p_a;
        assert_eq!(center, star_center(m as i64), "m = {m}");
        assert_eq!(leaf, star_leaf(m as i64), "m = {m}");
        assert!(leaf > center);
    }
    let best = p_j(&Graph::star(4).unwrap(), 1).unwrap();
    assert_eq!(best.p_j, star_leaf(4));
    assert!(best.argmax_seeds.iter().all(|s| !s.contains(0)));
    assert_eq!(best.argmax_seeds.len(), 4);
}

#[test]
fn certainty_exactly_for_zero_forcing_seeds() {
    for g in small_graphs(6) {
        let adj = adjacency(&g);
        let n = g.order();
        assert!(p_a(&g, &g.empty_set()).unwrap().p_a.is_zero());
        for bits in 1u64..1 << n {
            let o = p_a(&g, &set(n, bits)).unwrap();
            assert_eq!(
                o.p_a.is_one(),
                oracle_is_zfs(&adj, bits),
                "{:?} {bits:b}",
                g.edges()
            );
            assert!(o.p_a > Rational::zero() && o.p_a <= Rational::one());
        }
    }
}

#[test]
fn k0_matches_the_unshortened_search() {
    for g in small_graphs(6) {
        let n = g.order();
        for bits in 1u64..1 << n {
            let a = set(n, bits);
            assert_eq!(
                least_k_with_zfs(&g, &a).unwrap(),
                least_k_with_zfs_by_support(&g, &a, 1 << 16).unwrap()
            );
        }
    }
}

#[test]
fn p_a_is_the_zero_forcing_mass_of_the_oracle_layer() {
    for g in small_graphs(5) {
        let adj = adjacency(&g);
        let n = g.order();
        for bits in 1u64..1 << n {
            let a = set(n, bits);
            let o = p_a(&g, &a).unwrap();
            let k0 = o.k0.unwrap();
            let mass: Rational = oracle_layer(&adj, bits, k0)
                .into_iter()
                .filter(|(s, _)| oracle_is_zfs(&adj, *s))
                .map(|(_, p)| p)
                .sum();
            assert_eq!(o.p_a, mass);
            let chain: Rational = reachable_states(&g, &a)
                .unwrap()
                .distribution_after(k0)
                .mass_where(|s| contains_zfs(&g, s));
            assert_eq!(o.p_a, chain);
            assert!(o.t_k0_states.iter().all(|(s, _)| is_zfs(&g, s)));
        }
    }
}

/// Every pair `A ⊆ B` of seeds on every connected graph with at most five
/// vertices.
#[test]
fn larger_seeds_never_do_worse() {
    let mut violations = Vec::new();
    for g in small_graphs(5) {
        let n = g.order();
        let values: Vec<Rational> = (0u64..1 << n)
            .map(|b| p_a(&g, &set(n, b)).unwrap().p_a)
            .collect();
        for b in 0u64..1 << n {
            let mut a = b;
            loop {
                if values[a as usize] > values[b as usize] {
                    violations.push(format!(
                        "{} on {:?}: {a:b} -> {}, {b:b} -> {}",
                        pzf::graph::emit_graph6(&g),
                        g.edges(),
                        values[a as usize],
                        values[b as usize]
                    ));
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & b;
            }
        }
    }
    assert!(
        violations.is_empty(),
        "{} violations:\n{}",
        violations.len(),
        violations.join("\n")
    );
}

#[test]
fn best_value_grows_with_seed_size() {
    for g in small_graphs(5) {
        let (z, _) = pzf::forcing::zero_forcing_number(&g).unwrap();
        let best: Vec<_> = (1..=z).map(|j| p_j(&g, j).unwrap().p_j).collect();
        assert!(best.windows(2).all(|w| w[0] <= w[1]), "{:?}", g.edges());
        assert!(best[z - 1].is_one());
    }
}
