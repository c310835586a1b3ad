//! Simple undirected graphs and the structural tools built on them.

mod blocks;
mod clique;
mod form;
mod iso;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use blocks::{blocks, BlockDecomposition};
pub use clique::max_clique;
pub use form::{parse_form, realize, recognize_structure, FormError, StructuralForm};
pub use iso::{graph_isomorphism, is_isomorphic_graphs, GRAPH_ISO_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
    labels: Option<Vec<String>>,
}

/// On-disk graph format: `{ "n": .., "edges": [[u, v], ..], "labels": [..] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![BTreeSet::new(); n], labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.adj.len();
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    /// Adds `{u, v}`; panics on loops or bad indices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("valid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::LabelCount { expected: self.vertex_count(), got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Self::new(m + n);
        for u in 0..m {
            for v in m..m + n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    /// Disjoint union; the vertices of `parts[i]` follow those of `parts[i-1]`.
    pub fn union(parts: &[SimpleGraph]) -> Self {
        let n = parts.iter().map(SimpleGraph::vertex_count).sum();
        let mut g = Self::new(n);
        let mut offset = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.add_edge(u + offset, v + offset);
            }
            offset += p.vertex_count();
        }
        g
    }

    /// Disjoint union plus every edge between different parts.
    pub fn join(parts: &[SimpleGraph]) -> Self {
        let mut g = Self::union(parts);
        let mut ranges = Vec::new();
        let mut offset = 0;
        for p in parts {
            ranges.push(offset..offset + p.vertex_count());
            offset += p.vertex_count();
        }
        for (i, a) in ranges.iter().enumerate() {
            for b in &ranges[i + 1..] {
                for u in a.clone() {
                    for v in b.clone() {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`. Labels are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Self::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                if pos[w] != usize::MAX && pos[w] > i {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|s| s.len() + 1 == n)
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.vertex_count();
        (0..n).filter(|&v| self.degree(v) + 1 == n).collect()
    }

    /// `Some((a, b))` when the graph is `K_{a,b}` with `a <= b`, both >= 1.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        let n = self.vertex_count();
        if n < 2 || !self.is_connected() {
            return None;
        }
        let mut side = vec![usize::MAX; n];
        side[0] = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if side[w] == usize::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
        let a = side.iter().filter(|&&s| s == 0).count();
        let b = n - a;
        (self.edge_count() == a * b).then_some((a.min(b), a.max(b)))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|v| {
                let nb: Vec<usize> = self.neighbors(v).collect();
                let mut t = 0;
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        if self.has_edge(a, b) {
                            t += 1;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Graphviz rendering: one vertex per line, then one `--` edge per line.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", escape(name));
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", escape(&self.label(v)));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, GraphError> {
        let mut g = Self::new(file.n);
        for &[u, v] in &file.edges {
            g.try_add_edge(u, v)?;
        }
        if let Some(labels) = &file.labels {
            g.set_labels(labels.clone())?;
        }
        Ok(g)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_count_edges() {
        assert_eq!(SimpleGraph::complete(5).edge_count(), 10);
        let cone = SimpleGraph::join(&[
            SimpleGraph::complete(1),
            SimpleGraph::union(&[SimpleGraph::complete(4), SimpleGraph::complete(4), SimpleGraph::complete(4)]),
        ]);
        assert_eq!(cone.vertex_count(), 13);
        assert_eq!(cone.edge_count(), 30);
        let k3_2k4 = SimpleGraph::join(&[
            SimpleGraph::complete(3),
            SimpleGraph::union(&[SimpleGraph::complete(4), SimpleGraph::complete(4)]),
        ]);
        assert_eq!((k3_2k4.vertex_count(), k3_2k4.edge_count()), (11, 39));
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = SimpleGraph::complete_bipartite(3, 4);
        let degrees: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        assert_eq!(degrees, 2 * g.edge_count());
    }

    #[test]
    fn induced_subgraphs() {
        let k5 = SimpleGraph::complete(5);
        assert_eq!(k5.induced_subgraph(&[0, 1, 2, 3, 4]), k5);
        assert_eq!(k5.induced_subgraph(&[1, 3, 4]), SimpleGraph::complete(3));
    }

    #[test]
    fn rejects_loops_and_bad_vertices() {
        let mut g = SimpleGraph::new(3);
        assert_eq!(g.try_add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.try_add_edge(0, 3), Err(GraphError::VertexOutOfRange { .. })));
        assert_eq!(g.try_add_edge(0, 1), Ok(true));
        assert_eq!(g.try_add_edge(1, 0), Ok(false));
    }

    #[test]
    fn cone_universal_vertices() {
        // a cone adds its apex to the universal vertices of the base
        let base = SimpleGraph::join(&[SimpleGraph::complete(2), SimpleGraph::union(&[SimpleGraph::complete(1), SimpleGraph::complete(1)])]);
        let cone = SimpleGraph::join(&[SimpleGraph::complete(1), base.clone()]);
        assert_eq!(cone.universal_vertices().len(), 1 + base.universal_vertices().len());
    }

    #[test]
    fn bipartite_and_girth() {
        assert_eq!(SimpleGraph::complete_bipartite(3, 3).complete_bipartite_parts(), Some((3, 3)));
        assert_eq!(SimpleGraph::complete(3).complete_bipartite_parts(), None);
        assert_eq!(SimpleGraph::cycle(4).complete_bipartite_parts(), Some((2, 2)));
        assert_eq!(SimpleGraph::complete_bipartite(3, 3).girth(), Some(4));
        assert_eq!(SimpleGraph::cycle(7).girth(), Some(7));
        assert_eq!(SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().girth(), None);
    }

    #[test]
    fn json_and_dot() {
        let mut g = SimpleGraph::cycle(3);
        g.set_labels(vec!["e".into(), "a".into(), "b".into()]).unwrap();
        let file = g.to_file();
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(text, r#"{"n":3,"edges":[[0,1],[0,2],[1,2]],"labels":["e","a","b"]}"#);
        let back = SimpleGraph::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);
        let dot = g.to_dot("c3");
        assert!(dot.contains("  0 [label=\"e\"];\n"));
        assert!(dot.contains("  1 -- 2;\n"));
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 3);
    }
}
