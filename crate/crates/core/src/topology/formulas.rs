use super::TopologyError;
use crate::graph::SimpleGraph;

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// `γ(K_n) = ⌈(n-3)(n-4)/12⌉`.
pub fn genus_kn(n: usize) -> Result<usize, TopologyError> {
    if n < 3 {
        return Err(TopologyError::CompleteTooSmall(n));
    }
    let n = n as i64;
    Ok(ceil_div((n - 3) * (n - 4), 12) as usize)
}

/// `γ̄(K_n) = ⌈(n-3)(n-4)/6⌉`, except `γ̄(K_7) = 3`.
pub fn crosscap_kn(n: usize) -> Result<usize, TopologyError> {
    if n < 3 {
        return Err(TopologyError::CompleteTooSmall(n));
    }
    if n == 7 {
        return Ok(3);
    }
    let n = n as i64;
    Ok(ceil_div((n - 3) * (n - 4), 6) as usize)
}

/// `γ(K_{m,n}) = ⌈(m-2)(n-2)/4⌉`.
pub fn genus_kmn(m: usize, n: usize) -> Result<usize, TopologyError> {
    if m < 2 || n < 2 {
        return Err(TopologyError::BipartiteTooSmall(m, n));
    }
    Ok(ceil_div((m as i64 - 2) * (n as i64 - 2), 4) as usize)
}

/// `γ̄(K_{m,n}) = ⌈(m-2)(n-2)/2⌉`.
pub fn crosscap_kmn(m: usize, n: usize) -> Result<usize, TopologyError> {
    if m < 2 || n < 2 {
        return Err(TopologyError::BipartiteTooSmall(m, n));
    }
    Ok(ceil_div((m as i64 - 2) * (n as i64 - 2), 2) as usize)
}

/// Per-component sums of `ceil(e(c-2)/c - v + 2)` where `c` is the
/// girth, i.e. the least Euler genus allowed by `f <= 2e/c`. Forests and
/// components on fewer than 3 vertices contribute 0.
pub fn euler_genus_lower_bound(g: &SimpleGraph, use_girth: bool) -> usize {
    let mut total = 0;
    for comp in g.components() {
        if comp.len() < 3 {
            continue;
        }
        let h = g.induced_subgraph(&comp);
        let Some(girth) = h.girth() else { continue };
        let c = if use_girth { girth as i64 } else { 3 };
        let (v, e) = (h.vertex_count() as i64, h.edge_count() as i64);
        total += ceil_div(e * (c - 2) - c * (v - 2), c).max(0) as usize;
    }
    total
}

/// `γ(Γ) >= ⌈m/6 - n/2 + 1⌉`, summed over components, clamped at 0.
pub fn euler_lower_bound_orientable(g: &SimpleGraph) -> usize {
    let mut total = 0;
    for comp in g.components() {
        if comp.len() < 3 {
            continue;
        }
        let h = g.induced_subgraph(&comp);
        let (n, m) = (h.vertex_count() as i64, h.edge_count() as i64);
        total += ceil_div(m - 3 * n + 6, 6).max(0) as usize;
    }
    total
}

/// Least `k >= 0` with `3f <= 2e` for `f = 2 - k - v + e`, i.e.
/// `⌈e/3 - v + 2⌉`, summed over components.
pub fn euler_lower_bound_nonorientable(g: &SimpleGraph) -> usize {
    euler_genus_lower_bound(g, false)
}

/// `m - n + c`, the number of independent cycles.
pub fn cycle_rank(g: &SimpleGraph) -> usize {
    g.edge_count() + g.components().len() - g.vertex_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_form, realize};

    #[test]
    fn complete_graph_tables() {
        let genus: Vec<usize> = (3..=15).map(|n| genus_kn(n).unwrap()).collect();
        let crosscap: Vec<usize> = (3..=15).map(|n| crosscap_kn(n).unwrap()).collect();
        assert_eq!(genus, vec![0, 0, 1, 1, 1, 2, 3, 4, 5, 6, 8, 10, 11]);
        assert_eq!(crosscap, vec![0, 0, 1, 1, 3, 4, 5, 7, 10, 12, 15, 19, 22]);
        assert!(genus_kn(2).is_err() && crosscap_kn(0).is_err());
    }

    #[test]
    fn bipartite() {
        assert_eq!(genus_kmn(3, 3), Ok(1));
        assert_eq!(genus_kmn(2, 9), Ok(0));
        assert_eq!(crosscap_kmn(3, 3), Ok(1));
        assert_eq!(crosscap_kmn(4, 4), Ok(2));
        assert_eq!(genus_kmn(1, 3), Err(TopologyError::BipartiteTooSmall(1, 3)));
    }

    #[test]
    fn euler_bounds() {
        let g = realize(&parse_form("K_3 v 2K_4").unwrap());
        assert_eq!(euler_lower_bound_orientable(&g), 2);
        assert_eq!(euler_lower_bound_nonorientable(&g), 4);
        let k7 = SimpleGraph::complete(7);
        assert_eq!(euler_lower_bound_orientable(&k7), 1);
        assert_eq!(euler_lower_bound_nonorientable(&k7), 2);
        let k4 = SimpleGraph::complete(4);
        assert_eq!((euler_lower_bound_orientable(&k4), euler_lower_bound_nonorientable(&k4)), (0, 0));
        // girth 4 helps for bipartite graphs
        let k44 = SimpleGraph::complete_bipartite(4, 4);
        assert_eq!(euler_genus_lower_bound(&k44, true), 2);
        assert_eq!(euler_genus_lower_bound(&k44, false), 0);
        assert_eq!(euler_lower_bound_orientable(&SimpleGraph::new(1)), 0);
        assert_eq!(cycle_rank(&k4), 3);
    }
}
