use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::TopologyError;
use crate::graph::SimpleGraph;

/// A general embedding scheme: a cyclic order of the incident edges at
/// every vertex plus a sign on every edge. Edges are referred to by their
/// index in `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingScheme {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotations: Vec<Vec<usize>>,
    signs: Vec<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Orientable(usize),
    Nonorientable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceTrace {
    pub faces: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub surface: Surface,
}

impl FaceTrace {
    pub fn euler_genus(&self) -> usize {
        (2 - self.euler_characteristic) as usize
    }

    pub fn claim(&self) -> Claim {
        match self.surface {
            Surface::Orientable(g) => Claim { orientable: true, value: g },
            Surface::Nonorientable(k) => Claim { orientable: false, value: k },
        }
    }
}

impl EmbeddingScheme {
    /// Validates and builds a scheme over an explicit edge list.
    pub fn from_parts(
        n: usize,
        edges: Vec<(usize, usize)>,
        rotations: Vec<Vec<usize>>,
        signs: Vec<i8>,
    ) -> Result<Self, TopologyError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v || !seen.insert((u.min(v), u.max(v))) {
                return Err(TopologyError::BadGraph(format!("edge ({u}, {v})")));
            }
        }
        if rotations.len() != n {
            return Err(TopologyError::RotationCount { expected: n, got: rotations.len() });
        }
        if signs.len() != edges.len() {
            return Err(TopologyError::SignCount { expected: edges.len(), got: signs.len() });
        }
        if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(TopologyError::BadSign(s.into()));
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != incident[v] {
                return Err(TopologyError::MalformedRotation(v));
            }
        }
        Ok(Self { n, edges, rotations, signs })
    }

    /// Builds a scheme over `g.edges()` from cyclic neighbour orders.
    pub fn from_vertex_rotations(
        g: &SimpleGraph,
        neighbour_rotations: &[Vec<usize>],
        signs: Option<Vec<i8>>,
    ) -> Result<Self, TopologyError> {
        let edges = g.edges();
        let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut rotations = Vec::with_capacity(neighbour_rotations.len());
        for (v, rot) in neighbour_rotations.iter().enumerate() {
            let mut r = Vec::with_capacity(rot.len());
            for &w in rot {
                let e = *index.get(&(v.min(w), v.max(w))).ok_or(TopologyError::MalformedRotation(v))?;
                r.push(e);
            }
            rotations.push(r);
        }
        let signs = signs.unwrap_or_else(|| vec![1; edges.len()]);
        Self::from_parts(g.vertex_count(), edges, rotations, signs)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, &self.edges).expect("validated at construction")
    }

    /// True when every cycle carries an even number of negative edges,
    /// found by propagating vertex flips along a spanning forest.
    pub fn is_orientable(&self) -> bool {
        let mut flip = vec![0i8; self.n];
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for s in 0..self.n {
            if flip[s] != 0 {
                continue;
            }
            flip[s] = 1;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &adj[v] {
                    if flip[w] == 0 {
                        flip[w] = flip[v] * self.signs[e];
                        queue.push_back(w);
                    }
                }
            }
        }
        self.edges.iter().zip(&self.signs).all(|(&(u, v), &s)| flip[u] * flip[v] * s == 1)
    }

    pub fn to_certificate(&self, claim: Claim) -> Certificate {
        Certificate {
            graph: CertificateGraph { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() },
            rotations: self.rotations.clone(),
            signs: self.signs.clone(),
            claim,
        }
    }
}

/// Precomputed dart tables for repeated face counting.
pub(crate) struct Darts {
    head: Vec<usize>,
    /// Dart leaving `tail` along the edge at each rotation slot, per vertex.
    out: Vec<Vec<usize>>,
}

impl Darts {
    /// Dart `2e` runs from `edges[e].0` to `edges[e].1`; `2e + 1` back.
    pub(crate) fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut head = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            head.push(v);
            head.push(u);
        }
        Self { head, out: vec![Vec::new(); n] }
    }

    fn out_dart(edges: &[(usize, usize)], v: usize, e: usize) -> usize {
        2 * e + usize::from(edges[e].0 != v)
    }

    /// Face count of the scheme with `rotations`, tracing all 4m
    /// (dart, sign) states: every face is met once in each direction.
    pub(crate) fn count_faces(
        &mut self,
        edges: &[(usize, usize)],
        rotations: &[Vec<usize>],
        signs: &[i8],
        pos: &mut [usize],
        seen: &mut Vec<bool>,
    ) -> usize {
        self.fill(edges, rotations, pos);
        let m2 = self.head.len();
        seen.clear();
        seen.resize(2 * m2, false);
        let mut orbits = 0;
        for start in 0..2 * m2 {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut state = start;
            loop {
                seen[state] = true;
                let (d, neg) = (state >> 1, state & 1 == 1);
                let w = self.head[d];
                let rev = d ^ 1;
                let flipped = neg ^ (signs[d >> 1] < 0);
                let rot = &self.out[w];
                let k = rot.len();
                let p = pos[rev];
                let next = if flipped { rot[(p + k - 1) % k] } else { rot[(p + 1) % k] };
                state = (next << 1) | usize::from(flipped);
                if state == start {
                    break;
                }
            }
        }
        debug_assert_eq!(orbits % 2, 0);
        orbits / 2
    }

    /// Face count with every sign positive, tracing 2m darts.
    pub(crate) fn count_faces_orientable(
        &mut self,
        edges: &[(usize, usize)],
        rotations: &[Vec<usize>],
        pos: &mut [usize],
        seen: &mut Vec<bool>,
    ) -> usize {
        self.fill(edges, rotations, pos);
        let m2 = self.head.len();
        seen.clear();
        seen.resize(m2, false);
        let mut faces = 0;
        for start in 0..m2 {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            loop {
                seen[d] = true;
                let w = self.head[d];
                let rot = &self.out[w];
                d = rot[(pos[d ^ 1] + 1) % rot.len()];
                if d == start {
                    break;
                }
            }
        }
        faces
    }

    fn fill(&mut self, edges: &[(usize, usize)], rotations: &[Vec<usize>], pos: &mut [usize]) {
        for (v, rot) in rotations.iter().enumerate() {
            let out = &mut self.out[v];
            out.clear();
            for (i, &e) in rot.iter().enumerate() {
                let d = Self::out_dart(edges, v, e);
                out.push(d);
                pos[d] = i;
            }
        }
    }
}

/// Traces the faces of `scheme` and reads off the surface.
pub fn trace_faces(scheme: &EmbeddingScheme) -> Result<FaceTrace, TopologyError> {
    let g = scheme.graph();
    if !g.is_connected() {
        return Err(TopologyError::Disconnected);
    }
    let (v, e) = (scheme.n as i64, scheme.edges.len() as i64);
    let faces = if scheme.edges.is_empty() {
        1
    } else {
        let mut darts = Darts::new(scheme.n, &scheme.edges);
        let mut pos = vec![0; 2 * scheme.edges.len()];
        darts.count_faces(&scheme.edges, &scheme.rotations, &scheme.signs, &mut pos, &mut Vec::new())
    };
    let chi = v - e + faces as i64;
    let orientable = scheme.is_orientable();
    let surface = if orientable {
        Surface::Orientable(((2 - chi) / 2) as usize)
    } else {
        Surface::Nonorientable((2 - chi) as usize)
    };
    Ok(FaceTrace { faces, euler_characteristic: chi, orientable, surface })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateGraph {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub orientable: bool,
    pub value: usize,
}

/// Embedding certificate file: the graph, rotations as edge indices,
/// edge signs, and the claimed surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: CertificateGraph,
    pub rotations: Vec<Vec<usize>>,
    pub signs: Vec<i8>,
    pub claim: Claim,
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Self, TopologyError> {
        serde_json::from_str(text).map_err(|e| TopologyError::Json(e.to_string()))
    }

    /// Compact JSON with a trailing newline; `from_json` reads it back
    /// unchanged.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn scheme(&self) -> Result<EmbeddingScheme, TopologyError> {
        EmbeddingScheme::from_parts(
            self.graph.n,
            self.graph.edges.iter().map(|&[u, v]| (u, v)).collect(),
            self.rotations.clone(),
            self.signs.clone(),
        )
    }

    pub fn graph(&self) -> Result<SimpleGraph, TopologyError> {
        Ok(self.scheme()?.graph())
    }
}

/// True iff face tracing reproduces the certificate's claim exactly.
/// The certificate must describe `g` itself (same vertices, same edge set).
pub fn verify_certificate(g: &SimpleGraph, cert: &Certificate) -> Result<bool, TopologyError> {
    let scheme = cert.scheme()?;
    let mut edges: Vec<(usize, usize)> = scheme.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    if scheme.n != g.vertex_count() || edges != g.edges() {
        return Err(TopologyError::GraphMismatch);
    }
    Ok(trace_faces(&scheme)?.claim() == cert.claim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k4_planar() -> EmbeddingScheme {
        // 0 in the middle of triangle 1-2-3
        let rot = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        EmbeddingScheme::from_vertex_rotations(&SimpleGraph::complete(4), &rot, None).unwrap()
    }

    /// K5 on the torus: vertex i sees i+1, i+2, i+4, i+3 (mod 5) in order.
    fn k5_torus() -> EmbeddingScheme {
        let rot: Vec<Vec<usize>> = (0..5).map(|i| [1, 2, 4, 3].iter().map(|k| (i + k) % 5).collect()).collect();
        EmbeddingScheme::from_vertex_rotations(&SimpleGraph::complete(5), &rot, None).unwrap()
    }

    #[test]
    fn tetrahedron() {
        let t = trace_faces(&k4_planar()).unwrap();
        assert_eq!((t.faces, t.euler_characteristic, t.surface), (4, 2, Surface::Orientable(0)));
    }

    #[test]
    fn k5_on_the_torus() {
        let t = trace_faces(&k5_torus()).unwrap();
        assert_eq!((t.faces, t.euler_characteristic, t.surface), (5, 0, Surface::Orientable(1)));
        let cert = k5_torus().to_certificate(t.claim());
        let g = SimpleGraph::complete(5);
        assert_eq!(verify_certificate(&g, &cert), Ok(true));
        let mut wrong = cert.clone();
        wrong.claim.value = 0;
        assert_eq!(verify_certificate(&g, &wrong), Ok(false));
        assert_eq!(verify_certificate(&SimpleGraph::complete(4), &cert), Err(TopologyError::GraphMismatch));
    }

    #[test]
    fn one_twisted_edge_on_k4() {
        // one negative edge turns the tetrahedron's rotation into a
        // nonorientable embedding
        let mut s = k4_planar();
        s.signs[0] = -1;
        let t = trace_faces(&s).unwrap();
        assert!(!t.orientable);
        assert_eq!(t.euler_genus() as i64, 2 - t.euler_characteristic);
        assert!(matches!(t.surface, Surface::Nonorientable(k) if k >= 1));
        // flipping a vertex (reverse rotation, negate incident signs) is an
        // equivalent scheme
        let mut s2 = k4_planar();
        s2.rotations[0].reverse();
        for (i, &(u, v)) in s2.edges.clone().iter().enumerate() {
            if u == 0 || v == 0 {
                s2.signs[i] = -1;
            }
        }
        let t2 = trace_faces(&s2).unwrap();
        assert_eq!(t2.surface, Surface::Orientable(0));
    }

    #[test]
    fn malformed_schemes() {
        let g = SimpleGraph::complete(3);
        let bad = EmbeddingScheme::from_vertex_rotations(&g, &[vec![1], vec![0, 2], vec![0, 1]], None);
        assert_eq!(bad, Err(TopologyError::MalformedRotation(0)));
        let bad = EmbeddingScheme::from_parts(3, g.edges(), vec![vec![0, 1], vec![0, 2], vec![1, 2]], vec![1, 2, 1]);
        assert_eq!(bad, Err(TopologyError::BadSign(2)));
        let bad = EmbeddingScheme::from_parts(3, g.edges(), vec![vec![0, 1], vec![0, 2]], vec![1, 1, 1]);
        assert!(matches!(bad, Err(TopologyError::RotationCount { .. })));
        let two = SimpleGraph::new(2);
        let s = EmbeddingScheme::from_vertex_rotations(&two, &[vec![], vec![]], None).unwrap();
        assert_eq!(trace_faces(&s), Err(TopologyError::Disconnected));
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = k5_torus().to_certificate(Claim { orientable: true, value: 1 });
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        assert!(text.starts_with(r#"{"graph":{"n":5,"edges":[[0,1],"#));
        assert!(Certificate::from_json("{}").is_err());
    }

    fn random_scheme(n: usize, p: f64, twist: bool, seed: u64) -> Option<EmbeddingScheme> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = SimpleGraph::new(n);
        for i in 1..n {
            let j = rng.gen_range(0..i);
            g.add_edge(i, j);
        }
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let rot: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut r: Vec<usize> = g.neighbors(v).collect();
                r.shuffle(&mut rng);
                r
            })
            .collect();
        let signs = (0..g.edge_count()).map(|_| if twist && rng.gen_bool(0.3) { -1 } else { 1 }).collect();
        EmbeddingScheme::from_vertex_rotations(&g, &rot, Some(signs)).ok()
    }

    proptest! {
        #[test]
        fn traced_surfaces_are_consistent(n in 2usize..9, p in 0.1f64..0.9, twist: bool, seed: u64) {
            let s = random_scheme(n, p, twist, seed).unwrap();
            let t = trace_faces(&s).unwrap();
            prop_assert!(t.euler_characteristic <= 2);
            if t.orientable {
                prop_assert_eq!(t.euler_characteristic % 2, 0);
                // the 2m-dart count agrees when all signs are positive
                if s.signs.iter().all(|&x| x == 1) {
                    let mut darts = Darts::new(s.n, &s.edges);
                    let mut pos = vec![0; 2 * s.edges.len()];
                    let f = darts.count_faces_orientable(&s.edges, &s.rotations, &mut pos, &mut Vec::new());
                    prop_assert_eq!(f, t.faces);
                }
            } else {
                prop_assert!(t.euler_characteristic <= 1);
            }
            let cert = s.to_certificate(t.claim());
            prop_assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert.clone());
            prop_assert!(verify_certificate(&s.graph(), &cert).unwrap());
        }
    }
}
