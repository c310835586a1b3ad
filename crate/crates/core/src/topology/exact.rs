use super::estimate::{GenusEstimate, Provenance};
use super::formulas::{cycle_rank, euler_genus_lower_bound};
use crate::graph::SimpleGraph;

/// Default node budget for [`exact_genus_small`].
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000_000;

/// Orientable genus by branch and bound over rotation systems.
///
/// For each candidate genus `t`, starting at the Euler bound, the search
/// looks for a rotation system with `2 - 2t - n + m` faces. Rotations are
/// fixed one successor at a time, vertices in order of decreasing degree;
/// a branch is cut when the faces already closed plus the open darts
/// divided by the girth cannot reach the target. `budget` caps the number
/// of successor assignments; when it runs out the result is `Bounds`.
pub fn exact_genus_small(g: &SimpleGraph, budget: u64) -> GenusEstimate {
    let mut lower = 0;
    let mut upper = 0;
    let mut lower_by = Provenance::ExhaustiveSearch;
    let mut upper_by = Provenance::ExhaustiveSearch;
    let mut nodes_left = budget;
    for comp in g.components() {
        let h = g.induced_subgraph(&comp);
        let e = component_genus(&h, &mut nodes_left);
        lower += e.lower;
        upper += e.upper;
        if !e.is_exact() {
            lower_by = e.lower_by;
            upper_by = e.upper_by;
        }
    }
    GenusEstimate::bounds(lower, lower_by, upper, upper_by)
}

fn component_genus(g: &SimpleGraph, nodes_left: &mut u64) -> GenusEstimate {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let Some(girth) = g.girth() else {
        return GenusEstimate::exact(0, Provenance::ExhaustiveSearch);
    };
    let euler = euler_genus_lower_bound(g, true).div_ceil(2);
    let beta = cycle_rank(g);
    let mut search = Bnb::new(g, girth);
    let mut t = euler;
    while t <= beta / 2 {
        let target = 2 + m - n - 2 * t;
        search.reset(target, *nodes_left);
        let found = search.run();
        *nodes_left = nodes_left.saturating_sub(search.nodes);
        if found {
            return GenusEstimate::exact(t, Provenance::ExhaustiveSearch);
        }
        if search.aborted {
            let (lower_by, lower) =
                if t > euler { (Provenance::ExhaustiveSearch, t) } else { (Provenance::EulerBound, euler) };
            let (upper_by, upper) = match search.best_faces {
                Some(f) => (Provenance::ExhaustiveSearch, (2 + m - n - f) / 2),
                None => (Provenance::CycleRank, beta / 2),
            };
            return GenusEstimate::bounds(lower, lower_by, upper.max(lower), upper_by);
        }
        t += 1;
    }
    unreachable!("some rotation system has at most one face per independent cycle pair")
}

struct Bnb {
    order: Vec<usize>,
    nbrs: Vec<Vec<usize>>,
    dart: Vec<Vec<usize>>,
    succ: Vec<usize>,
    girth: usize,
    closed: usize,
    closed_darts: usize,
    target: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
    best_faces: Option<usize>,
}

const NONE: usize = usize::MAX;

impl Bnb {
    fn new(g: &SimpleGraph, girth: usize) -> Self {
        let n = g.vertex_count();
        let mut dart = vec![vec![NONE; n]; n];
        for (i, (u, v)) in g.edges().into_iter().enumerate() {
            dart[u][v] = 2 * i;
            dart[v][u] = 2 * i + 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        Self {
            order,
            nbrs: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            dart,
            succ: vec![NONE; 2 * g.edge_count()],
            girth,
            closed: 0,
            closed_darts: 0,
            target: 0,
            nodes: 0,
            budget: 0,
            aborted: false,
            best_faces: None,
        }
    }

    fn reset(&mut self, target: usize, budget: u64) {
        self.target = target;
        self.budget = budget;
        self.nodes = 0;
        self.aborted = false;
    }

    fn run(&mut self) -> bool {
        let mut rot = Vec::new();
        let mut used = vec![false; self.nbrs.len()];
        self.vertex(0, &mut rot, &mut used)
    }

    /// Sets `succ[d] = s`; returns the length of the face this closes, if any.
    fn set(&mut self, d: usize, s: usize) -> Option<usize> {
        self.succ[d] = s;
        let mut x = s;
        let mut len = 1;
        while x != d {
            x = self.succ[x];
            if x == NONE {
                return None;
            }
            len += 1;
        }
        self.closed += 1;
        self.closed_darts += len;
        Some(len)
    }

    fn unset(&mut self, d: usize, closed: Option<usize>) {
        self.succ[d] = NONE;
        if let Some(len) = closed {
            self.closed -= 1;
            self.closed_darts -= len;
        }
    }

    fn hopeless(&self) -> bool {
        self.closed + (self.succ.len() - self.closed_darts) / self.girth < self.target
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
        }
        self.aborted
    }

    fn vertex(&mut self, vi: usize, rot: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if vi == self.order.len() {
            self.best_faces = Some(self.best_faces.map_or(self.closed, |b| b.max(self.closed)));
            return self.closed >= self.target;
        }
        let v = self.order[vi];
        let first = self.nbrs[v][0];
        let saved = std::mem::take(rot);
        rot.push(first);
        used[first] = true;
        let found = self.extend(vi, rot, used);
        used[first] = false;
        *rot = saved;
        found
    }

    fn extend(&mut self, vi: usize, rot: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = self.order[vi];
        let k = self.nbrs[v].len();
        if rot.len() == k {
            // close the rotation: last neighbour is followed by the first
            if self.tick() {
                return false;
            }
            let d = self.dart[rot[k - 1]][v];
            let c = self.set(d, self.dart[v][rot[0]]);
            let mut found = false;
            if !self.hopeless() {
                for &w in &self.nbrs[v] {
                    used[w] = false;
                }
                let mut next = Vec::new();
                found = self.vertex(vi + 1, &mut next, used);
                for &w in &self.nbrs[v] {
                    used[w] = true;
                }
            }
            self.unset(d, c);
            return found;
        }
        let prev = *rot.last().unwrap();
        for idx in 0..k {
            let w = self.nbrs[v][idx];
            if used[w] {
                continue;
            }
            if self.tick() {
                return false;
            }
            let d = self.dart[prev][v];
            let c = self.set(d, self.dart[v][w]);
            if !self.hopeless() {
                used[w] = true;
                rot.push(w);
                let found = self.extend(vi, rot, used);
                rot.pop();
                used[w] = false;
                if found {
                    self.unset(d, c);
                    return true;
                }
            }
            self.unset(d, c);
            if self.aborted {
                return false;
            }
        }
        false
    }
}
