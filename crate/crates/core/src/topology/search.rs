use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embedding::{trace_faces, Claim, Darts, EmbeddingScheme, FaceTrace};
use crate::graph::SimpleGraph;

/// Default number of annealing moves.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Total number of proposed moves over all restarts.
    pub budget: u64,
    pub seed: u64,
    pub initial_temperature: f64,
    /// Multiplier applied to the temperature every `sweep` moves.
    pub cooling: f64,
    /// Moves per temperature step; 0 means `2m`.
    pub sweep: u64,
    /// Moves without a new best energy before a restart.
    pub plateau: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_SEARCH_BUDGET, seed: 0, initial_temperature: 1.0, cooling: 0.95, sweep: 1000, plateau: 200_000 }
    }
}

enum Move {
    Flip(usize),
    Swap(usize, usize, usize),
    Shift(usize, usize, usize),
}

struct State {
    edges: Vec<(usize, usize)>,
    rotations: Vec<Vec<usize>>,
    signs: Vec<i8>,
    darts: Darts,
    pos: Vec<usize>,
    seen: Vec<bool>,
    orientable_only: bool,
    target_faces: usize,
}

impl State {
    fn faces(&mut self) -> usize {
        if self.orientable_only {
            self.darts.count_faces_orientable(&self.edges, &self.rotations, &mut self.pos, &mut self.seen)
        } else {
            self.darts.count_faces(&self.edges, &self.rotations, &self.signs, &mut self.pos, &mut self.seen)
        }
    }

    fn energy(&mut self, scheme_orientable: impl Fn(&[(usize, usize)], &[i8]) -> bool) -> u64 {
        let f = self.faces();
        let short = self.target_faces.saturating_sub(f) as u64;
        if self.orientable_only {
            short
        } else {
            short + u64::from(scheme_orientable(&self.edges, &self.signs))
        }
    }

    fn randomize(&mut self, rng: &mut ChaCha8Rng) {
        for r in &mut self.rotations {
            r.shuffle(rng);
        }
        if !self.orientable_only {
            for s in &mut self.signs {
                *s = if rng.gen_bool(0.5) { 1 } else { -1 };
            }
        }
    }
}

fn signs_orientable(n: usize, edges: &[(usize, usize)], signs: &[i8]) -> bool {
    // union-find with parity
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![0u8; n];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (r, p) = find(parent, parity, parent[x]);
        parity[x] ^= p;
        parent[x] = r;
        (r, parity[x])
    }
    for (&(u, v), &s) in edges.iter().zip(signs) {
        let want = u8::from(s < 0);
        let (ru, pu) = find(&mut parent, &mut parity, u);
        let (rv, pv) = find(&mut parent, &mut parity, v);
        if ru == rv {
            if pu ^ pv != want {
                return false;
            }
        } else {
            parent[ru] = rv;
            parity[ru] = pu ^ pv ^ want;
        }
    }
    true
}

/// Seeded simulated annealing for an embedding on a given surface.
///
/// Moves either swap two neighbouring entries of one rotation, move one
/// rotation entry to an arbitrary position, or, for nonorientable targets,
/// flip one edge sign. The energy is the number of
/// faces still missing, plus one while a nonorientable target is traced
/// as orientable. On success the returned scheme has been checked by
/// [`trace_faces`]; it may realise a smaller value than asked for.
pub fn search_embedding(g: &SimpleGraph, target: Claim, opts: &SearchOptions) -> Option<(EmbeddingScheme, FaceTrace)> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n == 0 || !g.is_connected() {
        return None;
    }
    let euler_genus = if target.orientable { 2 * target.value } else { target.value };
    if !target.orientable && target.value == 0 {
        return None;
    }
    let target_faces = (2 + m).checked_sub(n + euler_genus).filter(|&f| f >= 1)?;
    let edges = g.edges();
    let mut rotations = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        rotations[u].push(i);
        rotations[v].push(i);
    }
    let mut st = State {
        darts: Darts::new(n, &edges),
        pos: vec![0; 2 * m],
        seen: Vec::new(),
        signs: vec![1; m],
        edges,
        rotations,
        orientable_only: target.orientable,
        target_faces,
    };
    let movable: Vec<usize> = (0..n).filter(|&v| st.rotations[v].len() >= 3).collect();
    let orient = |e: &[(usize, usize)], s: &[i8]| signs_orientable(n, e, s);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sweep = if opts.sweep > 0 { opts.sweep } else { (2 * m).max(1) as u64 };
    let mut used = 0u64;

    while used < opts.budget {
        st.randomize(&mut rng);
        let mut energy = st.energy(orient);
        let mut best = energy;
        let mut since_best = 0u64;
        let mut temp = opts.initial_temperature;
        while used < opts.budget {
            if energy == 0 {
                let scheme = EmbeddingScheme::from_parts(n, st.edges.clone(), st.rotations.clone(), st.signs.clone())
                    .expect("moves preserve validity");
                let trace = trace_faces(&scheme).expect("connected");
                let ok = if target.orientable {
                    trace.orientable && trace.euler_genus() <= euler_genus
                } else {
                    !trace.orientable && trace.euler_genus() <= euler_genus
                };
                assert!(ok, "annealing energy disagrees with face tracing");
                return Some((scheme, trace));
            }
            used += 1;
            if used.is_multiple_of(sweep) {
                temp *= opts.cooling;
            }
            let flip = !target.orientable && (movable.is_empty() || rng.gen_bool(0.25));
            let mv = if flip {
                let e = rng.gen_range(0..m);
                st.signs[e] = -st.signs[e];
                Move::Flip(e)
            } else if movable.is_empty() {
                break;
            } else {
                let v = movable[rng.gen_range(0..movable.len())];
                let k = st.rotations[v].len();
                let i = rng.gen_range(0..k);
                if rng.gen_bool(0.5) {
                    let j = (i + 1) % k;
                    st.rotations[v].swap(i, j);
                    Move::Swap(v, i, j)
                } else {
                    let j = rng.gen_range(0..k);
                    let x = st.rotations[v].remove(i);
                    st.rotations[v].insert(j, x);
                    Move::Shift(v, i, j)
                }
            };
            let new_energy = st.energy(orient);
            let accept = new_energy <= energy || rng.gen::<f64>() < (-((new_energy - energy) as f64) / temp).exp();
            if accept {
                energy = new_energy;
            } else {
                match mv {
                    Move::Flip(e) => st.signs[e] = -st.signs[e],
                    Move::Swap(v, i, j) => st.rotations[v].swap(i, j),
                    Move::Shift(v, i, j) => {
                        let x = st.rotations[v].remove(j);
                        st.rotations[v].insert(i, x);
                    }
                }
            }
            if energy < best {
                best = energy;
                since_best = 0;
            } else {
                since_best += 1;
                if since_best >= opts.plateau {
                    break;
                }
            }
        }
    }
    None
}
