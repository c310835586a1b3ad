use super::SimpleGraph;

/// A maximum clique, as a sorted vertex list (Bron–Kerbosch with pivoting).
pub fn max_clique(g: &SimpleGraph) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    expand(g, &mut current, all, Vec::new(), &mut best);
    best.sort_unstable();
    best
}

fn expand(g: &SimpleGraph, current: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, best: &mut Vec<usize>) {
    if p.is_empty() {
        if x.is_empty() && current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + p.len() <= best.len() {
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in candidates {
        current.push(v);
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        expand(g, current, np, nx, best);
        current.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
