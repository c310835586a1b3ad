use super::SimpleGraph;

/// Biconnected components as vertex sets of the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex lists, in lexicographic order. An isolated vertex is a
    /// block on its own.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    /// Each block as a graph. Blocks are induced subgraphs, since an edge
    /// between two vertices of a block belongs to that block.
    pub fn block_graphs(&self, g: &SimpleGraph) -> Vec<SimpleGraph> {
        self.blocks.iter().map(|b| g.induced_subgraph(b)).collect()
    }
}

/// Hopcroft–Tarjan low-link decomposition, run on every component.
pub fn blocks(g: &SimpleGraph) -> BlockDecomposition {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut out = Vec::new();
    let mut clock = 0;
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        if adj[root].is_empty() {
            out.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < adj[v].len() {
                top.2 += 1;
                let w = adj[v][idx];
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    edges.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let mut members = Vec::new();
                while let Some((a, b)) = edges.pop() {
                    members.push(a);
                    members.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                members.sort_unstable();
                members.dedup();
                out.push(members);
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    out.sort();
    BlockDecomposition { blocks: out, cut_vertices: (0..n).filter(|&v| is_cut[v]).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_isomorphic_graphs, parse_form, realize};
    use proptest::prelude::*;

    /// Brute-force cut vertices: removal increases the component count.
    fn cut_vertices_oracle(g: &SimpleGraph) -> Vec<usize> {
        let base = g.components().len();
        (0..g.vertex_count())
            .filter(|&v| {
                let rest: Vec<usize> = (0..g.vertex_count()).filter(|&w| w != v).collect();
                g.induced_subgraph(&rest).components().len() > base
            })
            .collect()
    }

    #[test]
    fn cone_over_three_k4() {
        let g = realize(&parse_form("K_1 v 3K_4").unwrap());
        let d = blocks(&g);
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.cut_vertices, vec![0]);
        for b in d.block_graphs(&g) {
            assert!(is_isomorphic_graphs(&b, &SimpleGraph::complete(5)).unwrap());
        }
        // gluing the blocks back at the apex gives the original graph
        let glued = SimpleGraph::join(&[
            SimpleGraph::complete(1),
            SimpleGraph::union(&d.block_graphs(&g).iter().map(|b| b.induced_subgraph(&[1, 2, 3, 4])).collect::<Vec<_>>()),
        ]);
        assert!(is_isomorphic_graphs(&glued, &g).unwrap());
    }

    #[test]
    fn complete_and_cone_over_mixed_union() {
        assert_eq!(blocks(&SimpleGraph::complete(7)).blocks, vec![(0..7).collect::<Vec<_>>()]);
        let g = realize(&parse_form("K_1 v (K_6 u 4K_2)").unwrap());
        let d = blocks(&g);
        let mut sizes: Vec<usize> = d.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 3, 3, 7]);
        assert_eq!(d.cut_vertices, vec![0]);
    }

    #[test]
    fn isolated_vertices_and_bridges() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let d = blocks(&g);
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3], vec![4]]);
        assert_eq!(d.cut_vertices, vec![2]);
    }

    fn random_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..=10).prop_flat_map(|n| {
            prop::collection::vec(prop::bool::weighted(0.3), n * (n - 1) / 2).prop_map(move |bits| {
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
            })
        })
    }

    proptest! {
        #[test]
        fn block_invariants(g in random_graph()) {
            let d = blocks(&g);
            let total: usize = d.block_graphs(&g).iter().map(SimpleGraph::edge_count).sum();
            prop_assert_eq!(total, g.edge_count());
            prop_assert_eq!(&d.cut_vertices, &cut_vertices_oracle(&g));
            for v in 0..g.vertex_count() {
                let count = d.blocks.iter().filter(|b| b.contains(&v)).count();
                if d.cut_vertices.contains(&v) {
                    prop_assert!(count >= 2);
                } else {
                    prop_assert_eq!(count, 1);
                }
            }
            for (i, a) in d.blocks.iter().enumerate() {
                for b in &d.blocks[i + 1..] {
                    prop_assert!(a.iter().filter(|v| b.contains(v)).count() <= 1);
                }
            }
            // each block with 3+ vertices has no cut vertex of its own
            for b in d.block_graphs(&g) {
                if b.vertex_count() >= 3 {
                    prop_assert!(cut_vertices_oracle(&b).is_empty());
                }
            }
        }
    }
}
