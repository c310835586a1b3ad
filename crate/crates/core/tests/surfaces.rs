//! Soundness of the surface pipeline against brute-force oracles on small
//! random graphs.

use nsbpg_core::graph::{blocks, SimpleGraph};
use nsbpg_core::topology::{
    euler_lower_bound_nonorientable, euler_lower_bound_orientable, exact_genus_small, genus_via_blocks, is_planar,
    surface_invariants, trace_faces, EmbeddingScheme, SearchOptions, SurfaceOptions,
};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

fn random_graph(min_n: usize, max_n: usize, p: f64) -> impl Strategy<Value = SimpleGraph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every rotation system (first neighbour fixed) and every sign pattern
/// with a spanning tree held at +1. Returns (genus, crosscap), crosscap 0
/// for planar graphs.
fn brute_force_surfaces(g: &SimpleGraph) -> (usize, usize) {
    let n = g.vertex_count();
    let choices: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            let nb: Vec<usize> = g.neighbors(v).collect();
            if nb.is_empty() {
                return vec![vec![]];
            }
            permutations(&nb[1..])
                .into_iter()
                .map(|mut p| {
                    p.insert(0, nb[0]);
                    p
                })
                .collect()
        })
        .collect();
    let edges = g.edges();
    // BFS tree
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = vec![0];
    while let Some(v) = queue.pop() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push(w);
                let e = edges.iter().position(|&x| x == (v.min(w), v.max(w))).unwrap();
                in_tree[e] = true;
            }
        }
    }
    let free: Vec<usize> = (0..edges.len()).filter(|&e| !in_tree[e]).collect();
    let mut best_orientable = usize::MAX;
    let mut best_nonorientable = usize::MAX;
    let mut idx = vec![0usize; n];
    loop {
        let rots: Vec<Vec<usize>> = (0..n).map(|v| choices[v][idx[v]].clone()).collect();
        for mask in 0u64..(1 << free.len()) {
            let mut signs = vec![1i8; edges.len()];
            for (b, &e) in free.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    signs[e] = -1;
                }
            }
            let scheme = EmbeddingScheme::from_vertex_rotations(g, &rots, Some(signs)).unwrap();
            let t = trace_faces(&scheme).unwrap();
            if t.orientable {
                best_orientable = best_orientable.min(t.euler_genus() / 2);
            } else {
                best_nonorientable = best_nonorientable.min(t.euler_genus());
            }
        }
        let mut v = 0;
        loop {
            if v == n {
                let crosscap = if best_orientable == 0 { 0 } else { best_nonorientable };
                return (best_orientable, crosscap);
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

fn brute_force_cost(g: &SimpleGraph) -> u64 {
    let rot: u64 = (0..g.vertex_count()).map(|v| (1..g.degree(v).max(1) as u64).product::<u64>()).product();
    let cycles = g.edge_count() + 1 - g.vertex_count();
    rot << cycles
}

const BUDGET: u64 = 2_000_000;

fn no_search() -> SurfaceOptions {
    SurfaceOptions { run_search: false, ..SurfaceOptions::default() }
}

fn short_search() -> SurfaceOptions {
    let search = SearchOptions { budget: 300_000, ..SearchOptions::default() };
    SurfaceOptions { search, ..SurfaceOptions::default() }
}

#[test]
fn brute_force_oracle_on_known_graphs() {
    assert_eq!(brute_force_surfaces(&SimpleGraph::complete(4)), (0, 0));
    assert_eq!(brute_force_surfaces(&SimpleGraph::complete(5)), (1, 1));
    assert_eq!(brute_force_surfaces(&SimpleGraph::complete_bipartite(3, 3)), (1, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn invariants_contain_the_brute_force_values(
        g in random_graph(5, 7, 0.6).prop_filter("connected, small search", |g| {
            g.is_connected() && brute_force_cost(g) <= 200_000
        })
    ) {
        let (genus, crosscap) = brute_force_surfaces(&g);
        let inv = surface_invariants(&g, &short_search(), None);
        prop_assert!(inv.genus.lower <= genus && genus <= inv.genus.upper, "genus {} vs {genus}", inv.genus);
        prop_assert!(inv.crosscap.lower <= crosscap && crosscap <= inv.crosscap.upper, "crosscap {} vs {crosscap}", inv.crosscap);
        prop_assert_eq!(is_planar(&g), genus == 0);
    }

    #[test]
    fn genus_adds_over_blocks(g in random_graph(4, 9, 0.35)) {
        let whole = exact_genus_small(&g, BUDGET);
        let d = blocks(&g);
        let parts: Vec<_> = d.block_graphs(&g).iter().map(|b| exact_genus_small(b, BUDGET)).collect();
        prop_assume!(whole.is_exact() && parts.iter().all(|b| b.is_exact()));
        let summed = genus_via_blocks(&parts);
        prop_assert_eq!(whole.value(), summed.value());
        let inv = surface_invariants(&g, &no_search(), None);
        let v = whole.value().unwrap();
        prop_assert!(inv.genus.lower <= v && v <= inv.genus.upper);
    }

    #[test]
    fn euler_bounds_never_exceed_the_genus(g in random_graph(3, 8, 0.7)) {
        let e = exact_genus_small(&g, BUDGET);
        prop_assume!(e.is_exact());
        let exact = e.value().unwrap();
        prop_assert!(euler_lower_bound_orientable(&g) <= exact);
        // nonorientable Euler genus is at most 2γ + 1
        prop_assert!(euler_lower_bound_nonorientable(&g) <= 2 * exact + 1);
    }
}

#[test]
fn two_k5_blocks_share_a_vertex() {
    // K5 and K5 glued at one vertex: genus 2, crosscap 2 (neither block is
    // orientably simple)
    let mut g = SimpleGraph::new(9);
    for (lo, hi) in [(0, 5), (4, 9)] {
        for u in lo..hi {
            for v in u + 1..hi {
                g.add_edge(u, v);
            }
        }
    }
    let inv = surface_invariants(&g, &SurfaceOptions::default(), None);
    assert_eq!(inv.genus.value(), Some(2));
    assert_eq!(inv.crosscap.value(), Some(2));
}
