//! Power graphs and the normal-subgroup-based power graph `Γ_H(G)`.

use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::group::{Elem, FiniteGroup, GroupError, QuotientGroup, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PowerError {
    #[error("H is trivial")]
    Trivial,
    #[error("H is all of G")]
    Improper,
    #[error("H is not normal in G")]
    NotNormal,
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn element_label(g: &FiniteGroup, x: Elem) -> String {
    if x == g.identity() {
        "e".to_string()
    } else {
        format!("g{x}")
    }
}

/// `P(G)`: distinct elements are adjacent when one is a power of the other.
/// Vertex `i` is element `i`.
pub fn power_graph(g: &FiniteGroup) -> SimpleGraph {
    let n = g.order();
    let cyclic: Vec<Subgroup> = g.elements().map(|x| g.cyclic_subgroup(x)).collect();
    let mut graph = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if cyclic[b].contains(a) || cyclic[a].contains(b) {
                graph.add_edge(a, b);
            }
        }
    }
    graph
        .set_labels(g.elements().map(|x| element_label(g, x)).collect())
        .expect("one label per element");
    graph
}

/// `Γ_H(G)` with its vertex bookkeeping.
///
/// Vertex 0 is the identity; the remaining vertices run through the
/// non-identity cosets in quotient order, each coset in element order.
#[derive(Debug, Clone)]
pub struct NsbpGraph {
    graph: SimpleGraph,
    vertex_element: Vec<Elem>,
    vertex_coset: Vec<usize>,
    h_size: usize,
    quotient: QuotientGroup,
}

impl NsbpGraph {
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// Mutable access, for building deliberately broken instances.
    pub fn graph_mut(&mut self) -> &mut SimpleGraph {
        &mut self.graph
    }

    pub fn into_graph(self) -> SimpleGraph {
        self.graph
    }

    pub fn vertex_element(&self, v: usize) -> Elem {
        self.vertex_element[v]
    }

    pub fn vertex_coset(&self, v: usize) -> usize {
        self.vertex_coset[v]
    }

    pub fn h_size(&self) -> usize {
        self.h_size
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }
}

fn check_h(g: &FiniteGroup, h: &Subgroup) -> Result<(), PowerError> {
    if h.is_trivial() {
        return Err(PowerError::Trivial);
    }
    if h.order() == g.order() {
        return Err(PowerError::Improper);
    }
    if !h.is_normal() {
        return Err(PowerError::NotNormal);
    }
    Ok(())
}

/// Vertex layout shared by both constructions.
fn layout(g: &FiniteGroup, q: &QuotientGroup) -> (Vec<Elem>, Vec<usize>) {
    let e_coset = q.coset_of(g.identity());
    let mut elements = vec![g.identity()];
    let mut cosets = vec![e_coset];
    for c in q.group().elements().filter(|&c| c != e_coset) {
        for x in q.coset_members(c) {
            elements.push(x);
            cosets.push(c);
        }
    }
    (elements, cosets)
}

fn assemble(
    h: &Subgroup,
    q: QuotientGroup,
    elements: Vec<Elem>,
    cosets: Vec<usize>,
    adjacent: impl Fn(usize, usize) -> bool,
) -> NsbpGraph {
    let n = elements.len();
    let mut graph = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if adjacent(a, b) {
                graph.add_edge(a, b);
            }
        }
    }
    let labels = (0..n)
        .map(|v| if v == 0 { "e".to_string() } else { format!("g{}@c{}", elements[v], cosets[v]) })
        .collect();
    graph.set_labels(labels).expect("one label per vertex");
    NsbpGraph { graph, vertex_element: elements, vertex_coset: cosets, h_size: h.order(), quotient: q }
}

/// Builds `Γ_H(G)` through the quotient: two vertices are adjacent when
/// their cosets coincide or are adjacent in `P(G/H)`.
pub fn nsb_power_graph(g: &FiniteGroup, h: &Subgroup) -> Result<NsbpGraph, PowerError> {
    check_h(g, h)?;
    let q = g.quotient(h)?;
    let (elements, cosets) = layout(g, &q);
    let qg = q.group();
    let cyclic: Vec<Subgroup> = qg.elements().map(|c| qg.cyclic_subgroup(c)).collect();
    let c = cosets.clone();
    Ok(assemble(h, q, elements, cosets, move |a, b| {
        let (x, y) = (c[a], c[b]);
        x == y || cyclic[x].contains(y) || cyclic[y].contains(x)
    }))
}

/// Builds `Γ_H(G)` straight from the definition: `x ~ y` iff
/// `xH = y^m H` or `yH = x^n H` for some positive `m`, `n`, tested as
/// `x^-1 y^m ∈ H`. Kept as an independent check on [`nsb_power_graph`].
pub fn nsb_power_graph_by_definition(g: &FiniteGroup, h: &Subgroup) -> Result<NsbpGraph, PowerError> {
    check_h(g, h)?;
    let q = g.quotient(h)?;
    let (elements, cosets) = layout(g, &q);
    let reaches = |x: Elem, y: Elem| {
        let xi = g.inv(x);
        let mut p = y;
        for _ in 0..g.element_order(y) {
            if h.contains(g.mul(xi, p)) {
                return true;
            }
            p = g.mul(p, y);
        }
        false
    };
    let el = elements.clone();
    Ok(assemble(h, q, elements, cosets, move |a, b| reaches(el[a], el[b]) || reaches(el[b], el[a])))
}

/// Checks the coset structure of `Γ_H(G)`: the identity vertex is
/// universal, each coset is a clique, adjacency between two cosets is all
/// or nothing, and it agrees with an independently built `P(G/H)`.
pub fn validate_coset_adjacency(nsbp: &NsbpGraph) -> bool {
    let g = nsbp.graph();
    let n = g.vertex_count();
    if g.degree(0) + 1 != n {
        return false;
    }
    let pq = power_graph(nsbp.quotient().group());
    for a in 1..n {
        for b in a + 1..n {
            let (x, y) = (nsbp.vertex_coset(a), nsbp.vertex_coset(b));
            let want = x == y || pq.has_edge(x, y);
            if g.has_edge(a, b) != want {
                return false;
            }
        }
    }
    // all-or-nothing between cosets, stated directly
    let k = nsbp.quotient().group().order();
    let mut seen: Vec<Vec<Option<bool>>> = vec![vec![None; k]; k];
    for a in 1..n {
        for b in 1..n {
            if a == b {
                continue;
            }
            let (x, y) = (nsbp.vertex_coset(a), nsbp.vertex_coset(b));
            let e = g.has_edge(a, b);
            match seen[x][y] {
                None => seen[x][y] = Some(e),
                Some(prev) if prev != e => return false,
                _ => {}
            }
        }
    }
    true
}

pub fn is_complete_nsbp(nsbp: &NsbpGraph) -> bool {
    nsbp.graph().is_complete()
}
