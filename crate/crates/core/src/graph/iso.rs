use super::{GraphError, SimpleGraph};

pub const GRAPH_ISO_CAP: usize = 24;

fn signatures(g: &SimpleGraph) -> Vec<(usize, usize, Vec<usize>)> {
    let tri = g.triangle_counts();
    (0..g.vertex_count())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), tri[v], nd)
        })
        .collect()
}

/// Exact isomorphism test for graphs up to [`GRAPH_ISO_CAP`] vertices.
/// Vertex signatures (degree, triangles through the vertex, sorted
/// neighbour degrees) screen and prune; a backtracking search does the
/// rest. Labels are ignored.
pub fn is_isomorphic_graphs(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool, GraphError> {
    Ok(graph_isomorphism(a, b)?.is_some())
}

/// An isomorphism `a -> b` as a vertex map, if one exists.
pub fn graph_isomorphism(a: &SimpleGraph, b: &SimpleGraph) -> Result<Option<Vec<usize>>, GraphError> {
    let n = a.vertex_count();
    for g in [a, b] {
        if g.vertex_count() > GRAPH_ISO_CAP {
            return Err(GraphError::TooLarge { n: g.vertex_count(), cap: GRAPH_ISO_CAP });
        }
    }
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let sa = signatures(a);
    let sb = signatures(b);
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return Ok(None);
    }

    // visit order: each next vertex has as many placed neighbours as possible
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (a.neighbors(v).filter(|&w| placed[w]).count(), a.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, &sa, &sb, &order, 0, &mut map, &mut used).then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &SimpleGraph,
    b: &SimpleGraph,
    sa: &[(usize, usize, Vec<usize>)],
    sb: &[(usize, usize, Vec<usize>)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.vertex_count() {
        if used[w] || sa[v] != sb[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, sa, sb, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
