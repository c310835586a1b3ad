use std::collections::{BTreeSet, VecDeque};

use crate::graph::{blocks, SimpleGraph};

/// Exact planarity test: every block with 5 or more vertices goes through
/// the Demoucron–Malgrange–Pertuiset path-addition procedure.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let d = blocks(g);
    d.block_graphs(g).iter().all(|b| {
        let (n, m) = (b.vertex_count(), b.edge_count());
        n <= 4 || (m <= 3 * n - 6 && dmp_biconnected(b))
    })
}

/// A fragment of the graph relative to the embedded part `H`: its
/// attachment vertices and a path through it joining two of them.
struct Fragment {
    contacts: BTreeSet<usize>,
    path: Vec<usize>,
}

fn initial_cycle(g: &SimpleGraph) -> Vec<usize> {
    // DFS until the first back edge closes a cycle
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i == adj[v].len() {
            stack.pop();
            continue;
        }
        let w = adj[v][*i];
        *i += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            return cycle;
        }
    }
    unreachable!("a block on 3 or more vertices has a cycle")
}

fn fragments(g: &SimpleGraph, in_h: &[bool], h_edges: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            out.push(Fragment { contacts: BTreeSet::from([u, v]), path: vec![u, v] });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut contacts = BTreeSet::new();
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in g.neighbors(v) {
                if in_h[w] {
                    contacts.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        let path = fragment_path(g, in_h, &comp, &contacts);
        out.push(Fragment { contacts, path });
    }
    out
}

/// A path `a, x1, .., xk, b` through the fragment's interior with `a != b`
/// attachment vertices.
fn fragment_path(g: &SimpleGraph, in_h: &[bool], comp: &[usize], contacts: &BTreeSet<usize>) -> Vec<usize> {
    let a = *contacts.iter().next().expect("biconnected graphs have attached fragments");
    let start = *comp.iter().find(|&&v| g.has_edge(v, a)).expect("a is a contact");
    let mut prev = vec![usize::MAX; g.vertex_count()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if let Some(b) = g.neighbors(v).find(|&w| in_h[w] && w != a) {
            let mut path = vec![b, v];
            let mut x = v;
            while x != start {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for w in g.neighbors(v) {
            if !in_h[w] && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected graph have two contacts")
}

/// Path addition on a biconnected graph.
fn dmp_biconnected(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    let cycle = initial_cycle(g);
    let mut in_h = vec![false; n];
    let mut h_edges = BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        h_edges.insert((v.min(w), v.max(w)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    loop {
        let frags = fragments(g, &in_h, &h_edges);
        if frags.is_empty() {
            return true;
        }
        let face_sets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&k| frag.contacts.is_subset(&face_sets[k])).collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, k) = choice.unwrap();
        let path = &frags[fi].path;
        let face = faces.swap_remove(k);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let interior = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = (0..).map(|t| face[(i + t) % len]).take((j + len - i) % len + 1).collect();
        f1.extend(interior.iter().rev());
        let mut f2: Vec<usize> = (0..).map(|t| face[(j + t) % len]).take((i + len - j) % len + 1).collect();
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in interior {
            in_h[v] = true;
        }
    }
}
